"""Exact upper, lower and true means, and block division.

The upper mean follows the transfinite recursion over standard decompositions:
finite sequences average their values, decomposable sequences average their
``n`` equal indecomposable pieces (the short remainder is ignored), and an
indecomposable piece of length ``w^sigma`` is decided by its final atom, since
everything before that atom is absorbed.

>>> from transmean.seqalg import seq_parse
>>> str(upper_mean(seq_parse("osc(0,1)"))), str(lower_mean(seq_parse("osc(0,1)")))
('2/3', '1/3')
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
import logging

from .ordinal import (
    ONE, Ordinal, left_divide, left_subtract, omega_pow, ord_mul,
    standard_decomposition,
)
from .seqalg import (
    Concat, Const, Osc, RepFin, RepOmega, SeqError, UnsplittableAtom,
    _join, _split, _split_periodic, concat, is_numeric, iter_runs, negate,
    normalize, split, values,
)

__all__ = [
    "MeanPair", "upper_mean", "lower_mean", "mean", "mean_pair", "divide",
    "truncation_oracle", "NotDivisible", "UnsupportedDivision",
    "BlockHasNoMean", "BudgetExceeded", "LabelSequenceError",
]

log = logging.getLogger(__name__)


class LabelSequenceError(TypeError):
    """Raised when a mean is requested of a sequence over outcome labels."""


class NotDivisible(SeqError, ArithmeticError):
    pass


class UnsupportedDivision(SeqError):
    pass


class BlockHasNoMean(SeqError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class MeanPair:
    lower: Fraction
    upper: Fraction

    @property
    def mean(self):
        """The common value, or ``None`` when the sequence has no mean."""
        return self.upper if self.lower == self.upper else None

    @property
    def has_mean(self):
        return self.lower == self.upper


def _osc_upper(s):
    lo, hi = min(s.lo, s.hi), max(s.lo, s.hi)
    return (2 * hi + lo) / 3


def _check_numeric(v):
    if isinstance(v, str):
        raise LabelSequenceError(
            "sequence ranges over labels; map it to numbers first")
    return v


def upper_mean(s):
    """Exact upper mean of a numeric sequence."""
    return _upper(s)


@lru_cache(maxsize=65536)
def _upper(s):
    L = s.length
    if L.is_finite():
        total = Fraction(0)
        for value, count in iter_runs(s):
            total += _check_numeric(value) * count
        return total / int(L)
    sigma, n, rho = standard_decomposition(L)
    block = omega_pow(sigma)
    total = Fraction(0)
    rest = s
    for i in range(n):
        if i == n - 1 and rho.is_zero():
            piece = rest
        else:
            piece, rest = split(rest, block)
        total += _upper_indecomposable(piece)
    return total / n


def _last_atom(s):
    while isinstance(s, Concat):
        s = s.parts[-1]
    return s


def _upper_indecomposable(piece):
    atom = _last_atom(piece)
    if atom.length != piece.length:
        raise AssertionError(
            f"final atom of length {atom.length} does not fill {piece.length}")
    if isinstance(atom, Const):
        return _check_numeric(atom.value)
    if isinstance(atom, Osc):
        _check_numeric(atom.lo)
        _check_numeric(atom.hi)
        return _osc_upper(atom)
    if isinstance(atom, RepOmega):
        return _upper(atom.body)
    raise AssertionError(f"unexpected final atom {type(atom).__name__}")


def lower_mean(s):
    if not is_numeric(s):
        _check_numeric(next(v for v in values(s) if isinstance(v, str)))
    return -_upper(negate(s))


def mean_pair(s):
    return MeanPair(lower_mean(s), upper_mean(s))


def mean(s):
    """The mean of ``s``, or ``None`` when upper and lower means differ."""
    return mean_pair(s).mean


# -- block division -----------------------------------------------------------

def divide(s, b, strict=False, max_period=64):
    """The sequence of upper means of consecutive ``b``-blocks of ``s``.

    With ``strict=True`` every block must have a true mean, otherwise
    :class:`BlockHasNoMean` is raised.
    """
    b = Ordinal.coerce(b)
    if b.is_zero():
        raise NotDivisible("division by the zero ordinal")
    alpha, rho = left_divide(b, s.length)
    if not rho.is_zero():
        raise NotDivisible(f"{b} does not divide {s.length}")
    try:
        out = _divide(s, b, strict, max_period)
    except RecursionError:
        raise UnsupportedDivision(f"no finite block structure for {b}") from None
    except UnsplittableAtom as exc:
        raise UnsupportedDivision(str(exc)) from None
    if out.length != alpha:
        raise AssertionError(f"quotient length {out.length} != {alpha}")
    return normalize(out)


def _block_value(s, strict):
    up = upper_mean(s)
    if strict and lower_mean(s) != up:
        raise BlockHasNoMean(f"block {s} has no mean")
    return Const(up, ONE)


def _divides(b, lam):
    return left_divide(b, lam)[1].is_zero()


def _divide(s, b, strict, bound):
    L = s.length
    if b == ONE:
        return s
    if isinstance(s, Const):
        # every block of a constant is that constant, labels included
        return Const(s.value, left_divide(b, L)[0])
    if b == L:
        return _block_value(s, strict)
    if isinstance(s, (RepFin, RepOmega)):
        body = s.body
        if _divides(b, body.length):
            inner = _divide(body, b, strict, bound)
            return RepFin(inner, s.count) if isinstance(s, RepFin) \
                else RepOmega(inner)
        if isinstance(s, RepFin):
            return _divide_parts([body] * s.count, b, strict, bound)
        for i in range(2, bound + 1):
            unrolled = ord_mul(body.length, i)
            if _divides(b, unrolled):
                return RepOmega(_divide(_join([body] * i), b, strict, bound))
        raise UnsupportedDivision(
            f"no period of {body.length} within {bound} copies is a multiple of {b}")
    if isinstance(s, Concat):
        return _divide_parts(list(s.parts), b, strict, bound)
    raise UnsupportedDivision(f"cannot divide {type(s).__name__} of length {L} by {b}")


def _divide_parts(parts, b, strict, bound):
    out = []
    parts = list(parts)
    while parts:
        p = parts.pop(0)
        q, r = left_divide(b, p.length)
        if r.is_zero():
            out.append(_divide(p, b, strict, bound))
            continue
        if not q.is_zero():
            head, p = _split(p, ord_mul(b, q))
            out.append(_divide(head, b, strict, bound))
        # the block straddling the end of p
        need = left_subtract(r, b)
        if not parts:
            raise AssertionError("divisible total with a ragged last part")
        rest = _join(parts)
        if need == rest.length:
            fill, parts = rest, []
        else:
            fill, tail = _split_periodic(rest, need)
            parts = [tail]
        out.append(_block_value(concat([p, fill]), strict))
    return _join(out)


# -- numeric cross-check --------------------------------------------------------

def truncation_oracle(s, widths, budget=5_000_000):
    """Numerically bracket ``(lower_mean(s), upper_mean(s))``.

    Independent of the exact evaluator's final-atom rule: every indecomposable
    piece of length ``w^(d+1)`` is unrolled into ``widths[d]`` consecutive
    ``w^d``-blocks (``widths[0]`` counts value runs at the bottom level), running
    averages of the block estimates are formed, and the extreme averages over
    the second half of the window are returned.  Returns ``(lo, hi)`` as
    Fractions.
    """
    widths = [int(w) for w in widths]
    sigma = s.length.degree
    if not sigma.is_finite() or int(sigma) > len(widths):
        raise ValueError(f"need finite degree <= {len(widths)}, got {sigma}")
    state = {"cost": 0, "budget": budget, "memo": {}}
    return _oracle(s, widths, state)


def _spend(state, amount):
    state["cost"] += amount
    if state["cost"] > state["budget"]:
        raise BudgetExceeded(f"oracle cost exceeded {state['budget']}")


def _oracle(s, widths, state):
    memo = state["memo"]
    key = s
    if key in memo:
        return memo[key]
    L = s.length
    if L.is_finite():
        total = Fraction(0)
        for value, count in iter_runs(s):
            total += value * count
        _spend(state, 1)
        res = (total / int(L),) * 2
    else:
        sigma, n, rho = standard_decomposition(L)
        block = omega_pow(sigma)
        lo = hi = Fraction(0)
        rest = s
        for i in range(n):
            if i == n - 1 and rho.is_zero():
                piece = rest
            else:
                piece, rest = split(rest, block)
            plo, phi = _oracle_piece(piece, int(sigma), widths, state)
            lo += plo
            hi += phi
        res = (lo / n, hi / n)
    memo[key] = res
    return res


def _tail_extremes(blocks_lo, blocks_hi, weights=None):
    """Extremes of running averages over the second half of the window.

    The first quarter of the blocks is treated as burn-in and left out of the
    averages: a limsup of running averages ignores any finite initial stretch,
    and dropping it removes the O(1/width) bias of a transient prefix.
    Sums are kept as integers over a common denominator (run weights can be
    astronomically large), and only the two extreme averages are made exact.
    """
    n = len(blocks_hi)
    j0, k0 = n // 4, n // 2
    weights = weights or [1] * n
    den = lcm(*(v.denominator for v in blocks_lo + blocks_hi))
    tot_lo = tot_hi = count = 0
    best_lo = best_hi = None
    for k in range(j0, n):
        w = weights[k]
        tot_lo += blocks_lo[k].numerator * (den // blocks_lo[k].denominator) * w
        tot_hi += blocks_hi[k].numerator * (den // blocks_hi[k].denominator) * w
        count += w
        if k >= k0:
            # int / int is correctly rounded even for huge operands
            a_lo, a_hi = tot_lo / count, tot_hi / count
            if best_lo is None or a_lo < best_lo[0]:
                best_lo = (a_lo, tot_lo, count)
            if best_hi is None or a_hi > best_hi[0]:
                best_hi = (a_hi, tot_hi, count)
    return (Fraction(best_lo[1], best_lo[2] * den),
            Fraction(best_hi[1], best_hi[2] * den))


def _oracle_piece(piece, sigma, widths, state):
    if isinstance(piece, Const):
        return piece.value, piece.value
    width = widths[sigma - 1]
    if sigma == 1:
        vals, counts = [], []
        for value, n in iter_runs(piece):
            if n is None:
                # constant tail: running averages converge to it
                return value, value
            vals.append(value)
            counts.append(n)
            _spend(state, 1)
            if len(vals) >= width:
                break
        return _tail_extremes(vals, vals, counts)
    sub = omega_pow(sigma - 1)
    rest = piece
    blocks_lo, blocks_hi = [], []
    for k in range(width):
        if isinstance(rest, Const):
            blo = bhi = rest.value
        else:
            blk, rest = split(rest, sub)
            blo, bhi = _oracle(blk, widths, state)
        blocks_lo.append(blo)
        blocks_hi.append(bhi)
        _spend(state, 1)
    return _tail_extremes(blocks_lo, blocks_hi)
