import subprocess
import sys

import pytest

from golden_cli import HERE, load, run

TRANSCRIPTS = [t for t in load() if not t.slow]


@pytest.mark.parametrize("t", TRANSCRIPTS, ids=[t.command for t in TRANSCRIPTS])
def test_golden(t):
    stdout, code = run(t)
    assert stdout == t.stdout
    assert code == t.code


def test_golden_file_has_entries():
    assert len(load()) >= 20


def test_sum_error_cites_sum(capsys):
    from transmean import cli
    code = cli.main(["capture", "verify", str(HERE / "data" / "short.space")])
    assert code == 2
    assert "sum to 5/6" in capsys.readouterr().err


def test_parse_error_has_position(capsys):
    from transmean import cli
    assert cli.main(["mean", "const(1;w"]) == 2
    assert "position 9" in capsys.readouterr().err


def test_repeatable_output():
    argv = ["capture", "slln", "data/three.space", "--samples", "500",
            "--trials", "3", "--seed", "11"]
    first = subprocess.run([sys.executable, "-m", "transmean", *argv], cwd=HERE,
                           capture_output=True, text=True)
    second = subprocess.run([sys.executable, "-m", "transmean", *argv], cwd=HERE,
                            capture_output=True, text=True)
    assert first.stdout == second.stdout and first.returncode == second.returncode
    assert first.stdout.startswith("slln samples=500 trials=3 seed=11\n")


def test_console_script_exit_codes():
    ok = subprocess.run(["transmean", "ord", "add", "1", "w"],
                        capture_output=True, text=True)
    assert (ok.stdout, ok.returncode) == ("w\n", 0)
    bad = subprocess.run(["transmean", "divide", "const(1; w+1)", "w"],
                         capture_output=True, text=True)
    assert (bad.stdout, bad.returncode) == ("NotDivisible\n", 1)


def test_lines_format_mean():
    from golden_cli import Transcript
    t = Transcript('transmean mean "osc(0,1)" --widths 20 --format lines', "", 0, False)
    stdout, code = run(t)
    assert code == 0
    assert stdout.splitlines()[:3] == ["upper=2/3", "lower=1/3", "mean=none"]
    assert stdout.splitlines()[3].startswith("oracle_lower=0.333")
