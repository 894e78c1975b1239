from itertools import product

from hypothesis import given, strategies as st
import pytest

from transmean.ordinal import (
    OMEGA, ONE, ZERO, Ordinal, ParseError, Underflow, ZeroDivisor, ZeroOrdinal,
    absorbs, is_indecomposable, left_divide, left_subtract, omega_pow, ord_add,
    ord_cmp, ord_mul, ord_parse, ord_print, standard_decomposition,
)

import ordinal_oracle as oracle

P = ord_parse


# -- examples -----------------------------------------------------------------

@pytest.mark.parametrize("a, b, expected", [
    ("w", "w", "equal"),
    ("w*2 + 3", "w^2", "less"),
    ("w^w", "w^5*9 + w", "greater"),
    ("w", "w+1", "less"),
])
def test_cmp(a, b, expected):
    assert ord_cmp(P(a), P(b)) == expected


@pytest.mark.parametrize("a, b, expected", [
    ("1", "w", "w"),
    ("w", "1", "w + 1"),
    ("w^2*3 + w", "w^2", "w^2*4"),
])
def test_add(a, b, expected):
    assert str(ord_add(P(a), P(b))) == expected


@pytest.mark.parametrize("a, b, expected", [
    ("w", "2", "w*2"),
    ("2", "w", "w"),
    ("w*2 + 1", "w", "w^2"),
    ("w + 1", "w + 1", "w^2 + w + 1"),
    ("w^2 + 3", "5", "w^2*5 + 3"),
])
def test_mul(a, b, expected):
    assert str(ord_mul(P(a), P(b))) == expected


def test_omega_pow():
    assert omega_pow(0) == ONE
    assert omega_pow(1) == OMEGA
    assert omega_pow(OMEGA) == P("w^w")


@pytest.mark.parametrize("text, expected", [
    ("w^2", True), ("w*2", False), ("1", True), ("0", False), ("w^w", True),
    ("w + 1", False),
])
def test_is_indecomposable(text, expected):
    assert is_indecomposable(P(text)) is expected


def test_standard_decomposition():
    assert standard_decomposition(P("w^2*3 + w*2 + 5")) == (2, 3, P("w*2 + 5"))
    assert standard_decomposition(7) == (ZERO, 7, ZERO)
    assert standard_decomposition(P("w^w")) == (OMEGA, 1, ZERO)
    with pytest.raises(ZeroOrdinal):
        standard_decomposition(0)


def test_left_subtract():
    assert left_subtract(OMEGA, P("w*2")) == OMEGA
    assert left_subtract(3, OMEGA) == OMEGA
    assert left_subtract(OMEGA, P("w+5")) == 5
    with pytest.raises(Underflow):
        left_subtract(P("w+1"), OMEGA)


def test_left_divide():
    assert left_divide(OMEGA, P("w^2")) == (OMEGA, ZERO)
    assert left_divide(OMEGA, P("w*2 + 3")) == (2, 3)
    assert left_divide(2, 5) == (2, 1)
    with pytest.raises(ZeroDivisor):
        left_divide(0, 5)


def test_absorbs():
    assert absorbs(3, OMEGA)
    assert not absorbs(OMEGA, OMEGA)
    assert absorbs(P("w*5 + 9"), P("w^2"))


@pytest.mark.parametrize("text, canonical", [
    ("w^2*3 + w*2 + 5", "w^2*3 + w*2 + 5"),
    ("w^(w+1)", "w^(w + 1)"),
    ("0", "0"),
    ("1 + w", "w"),
    ("w^w", "w^w"),
    ("w^w^2", "w^(w^2)"),
    ("  w *  3 ", "w*3"),
])
def test_parse_print(text, canonical):
    assert ord_print(P(text)) == canonical


@pytest.mark.parametrize("bad", ["", "w^", "w*", "x", "w + ", "3 3", "w^(w", "-1"])
def test_parse_errors_carry_position(bad):
    with pytest.raises(ParseError) as info:
        P(bad)
    assert 0 <= info.value.pos <= len(bad)


def test_int_interop_and_hash():
    assert P("5") == 5 and hash(P("5")) == hash(5)
    assert OMEGA > 10**9
    assert 1 + OMEGA == OMEGA
    assert int(P("7")) == 7
    with pytest.raises(ValueError):
        int(OMEGA)
    with pytest.raises(AttributeError):
        OMEGA.terms = ()


# -- properties ----------------------------------------------------------------

def ordinals(max_leaves=8):
    small = st.builds(lambda n: Ordinal.coerce(n), st.integers(0, 6))

    def extend(children):
        return st.builds(
            lambda e, c, rest: ord_add(Ordinal(((e, c),)), rest),
            children, st.integers(1, 4), children)
    return st.recursive(small, extend, max_leaves=max_leaves)


@given(ordinals(), ordinals(), ordinals())
def test_add_mul_associative(a, b, c):
    assert ord_add(ord_add(a, b), c) == ord_add(a, ord_add(b, c))
    assert ord_mul(ord_mul(a, b), c) == ord_mul(a, ord_mul(b, c))


@given(ordinals(), ordinals(), ordinals())
def test_left_distributive(a, b, c):
    assert ord_mul(a, ord_add(b, c)) == ord_add(ord_mul(a, b), ord_mul(a, c))


@given(ordinals(), ordinals())
def test_division_and_subtraction_laws(a, lam):
    if not a.is_zero():
        alpha, rho = left_divide(a, lam)
        assert ord_add(ord_mul(a, alpha), rho) == lam and rho < a
    lo, hi = sorted([a, lam])
    assert ord_add(lo, left_subtract(lo, hi)) == hi


@given(ordinals(), ordinals())
def test_order_is_compatible_with_addition(a, b):
    assert ord_add(a, b) >= b
    if not b.is_zero():
        assert ord_add(a, b) > a


@given(ordinals())
def test_print_parse_roundtrip(a):
    assert ord_parse(ord_print(a)) == a


# -- exhaustive agreement with the explicit-order oracle ------------------------

def _to_ordinal(word):
    return Ordinal(tuple((Ordinal.coerce(e), c) for e, c in oracle.to_cnf(word)))


DOMAIN = oracle.domain(2, 4)
ORDS = [_to_ordinal(w) for w in DOMAIN]


def test_oracle_agreement_add_mul_cmp():
    mismatches = []
    for (wa, a), (wb, b) in product(zip(DOMAIN, ORDS), repeat=2):
        if ord_add(a, b) != _to_ordinal(oracle.add(wa, wb)):
            mismatches.append(("add", a, b))
        if ord_mul(a, b) != _to_ordinal(oracle.mul(wa, wb)):
            mismatches.append(("mul", a, b))
        expect = ("less" if oracle.less(wa, wb)
                  else "greater" if oracle.less(wb, wa) else "equal")
        if ord_cmp(a, b) != expect:
            mismatches.append(("cmp", a, b))
    assert mismatches == []


def test_indecomposable_exhaustive():
    for wa, a in zip(DOMAIN, ORDS):
        smaller = [wb for wb in DOMAIN if wb and oracle.less(wb, wa)]
        splits = any(oracle.add(b, c) == wa for b in smaller for c in smaller)
        assert is_indecomposable(a) == (bool(wa) and not splits), a
