import io

import pytest

from transmean import cli, mean as mean_mod
from transmean.laws import (
    LAWS, GenConfig, case_rng, check_oracle_agreement, gen_seq, run_laws,
)
from transmean.seqalg import seq_print


def _summaries(cfg):
    return [r.summary() for r in run_laws(cfg)]


def test_all_laws_pass_small():
    reports = run_laws(GenConfig(seed=3, case_count=60))
    assert [r.name for r in reports] == list(LAWS)
    for r in reports:
        assert r.passed, [str(f) for f in r.failures[:3]]


def test_deterministic():
    cfg = GenConfig(seed=9, case_count=25)
    assert _summaries(cfg) == _summaries(cfg)
    assert [seq_print(gen_seq(cfg, i)) for i in range(20)] == \
        [seq_print(gen_seq(cfg, i)) for i in range(20)]


def test_case_independence():
    # case i draws only from (seed, law, i): a longer run extends a shorter one
    short = GenConfig(seed=4, case_count=5)
    long = GenConfig(seed=4, case_count=50)
    assert [seq_print(gen_seq(short, i)) for i in range(5)] == \
        [seq_print(gen_seq(long, i)) for i in range(5)]
    assert case_rng(short, "axioms", 3).random() == case_rng(long, "axioms", 3).random()


def test_zero_cases_vacuous():
    for r in run_laws(GenConfig(case_count=0)):
        assert r.passed and r.cases == 0
        assert r.summary().endswith("PASS cases=0 failures=0")


def test_oracle_agreement_small():
    r = check_oracle_agreement(GenConfig(seed=2, case_count=30, ordinal_degree_cap=3))
    assert r.passed, [str(f) for f in r.failures[:3]]


@pytest.fixture
def fresh_cache():
    mean_mod._upper.cache_clear()
    yield
    mean_mod._upper.cache_clear()


def _first_atom(piece):
    while hasattr(piece, "parts"):
        piece = piece.parts[0]
    return piece


MUTANTS = {
    # Osc upper mean taken as the midpoint
    "osc_midpoint": ("_osc_upper", lambda s: (s.lo + s.hi) / 2),
    # indecomposable pieces judged by their first atom instead of the last
    "first_atom": ("_last_atom", _first_atom),
}


@pytest.mark.parametrize("mutant", sorted(MUTANTS))
def test_mutations_are_caught(mutant, monkeypatch, fresh_cache):
    name, fake = MUTANTS[mutant]
    monkeypatch.setattr(mean_mod, name, fake)
    out = io.StringIO()
    code = cli.main(["laws", "run", "--seed", "42", "--cases", "100",
                     "--format", "lines"], out=out)
    lines = out.getvalue().splitlines()
    assert code == 1
    assert any(" FAIL " in line for line in lines)


def test_mutation_in_division_is_caught(monkeypatch, fresh_cache):
    real = mean_mod._block_value

    def skewed(s, strict):
        v = real(s, strict)
        return type(v)(v.value + 1, v.len) if v.value < 0 else v
    monkeypatch.setattr(mean_mod, "_block_value", skewed)
    rep = LAWS["division"](GenConfig(seed=42, case_count=200))
    assert not rep.passed
