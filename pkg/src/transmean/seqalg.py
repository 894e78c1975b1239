"""Symbolic bounded transfinite sequences.

A sequence is a tree built from five node kinds:

``Const(value, len)``
    the constant sequence of length ``len``;
``Concat(parts)``
    concatenation of two or more sequences;
``RepFin(body, count)``
    ``body`` repeated a finite number of times;
``RepOmega(body)``
    ``body`` repeated omega times;
``Osc(lo, hi)``
    an omega-sequence alternating ``lo`` and ``hi`` in runs of length 1, 2, 4, 8, ...

Values are :class:`fractions.Fraction` (or plain strings when a sequence ranges
over outcome labels).  Every node is an immutable, hashable value.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import islice
from numbers import Rational
import operator

from ._text import ParseError, Scanner
from .ordinal import (
    OMEGA, ONE, ZERO, Ordinal, left_divide, left_subtract, ord_add, ord_mul,
    _parse_sum,
)

__all__ = [
    "Const", "Concat", "RepFin", "RepOmega", "Osc", "SeqExpr",
    "SeqError", "EmptyList", "OutOfRange", "UnsplittableAtom", "MissingValue",
    "LengthMismatch", "Unalignable",
    "length", "concat", "split", "prefix", "map_values", "negate", "zip_affine",
    "value_range", "values", "materialize_prefix", "iter_runs", "normalize",
    "seq_parse", "seq_print", "format_value", "is_numeric",
]


class SeqError(Exception):
    pass


class EmptyList(SeqError, ValueError):
    pass


class OutOfRange(SeqError, IndexError):
    pass


class UnsplittableAtom(SeqError):
    pass


class MissingValue(SeqError, KeyError):
    pass


class LengthMismatch(SeqError, ValueError):
    pass


class Unalignable(SeqError):
    pass


def _value(v):
    if isinstance(v, str):
        return v
    if isinstance(v, Rational) and not isinstance(v, bool):
        return Fraction(v)
    raise TypeError(f"sequence values must be rationals or labels, got {v!r}")


def _node_hash(self):
    # nodes are immutable trees; hashing walks the tree, so remember it
    d = self.__dict__
    h = d.get("_hash")
    if h is None:
        h = hash((type(self).__name__,)
                 + tuple(d[name] for name in self.__dataclass_fields__))
        d["_hash"] = h
    return h


class SeqExpr:
    """Common base of the node classes."""

    __slots__ = ()

    @property
    def length(self):
        raise NotImplementedError

    def __str__(self):
        return seq_print(self)

    def __add__(self, other):
        return zip_affine(self, other, 1, 1)

    def __sub__(self, other):
        return zip_affine(self, other, 1, -1)

    def __neg__(self):
        return negate(self)


@dataclass(frozen=True)
class Const(SeqExpr):
    __hash__ = _node_hash
    value: object
    len: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "value", _value(self.value))
        object.__setattr__(self, "len", Ordinal.coerce(self.len))
        if self.len.is_zero():
            raise ValueError("sequences have nonzero length")

    @property
    def length(self):
        return self.len


@dataclass(frozen=True)
class Concat(SeqExpr):
    __hash__ = _node_hash
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) < 2:
            raise ValueError("Concat needs at least two parts")

    @cached_property
    def length(self):
        total = ZERO
        for p in self.parts:
            total = ord_add(total, p.length)
        return total


@dataclass(frozen=True)
class RepFin(SeqExpr):
    __hash__ = _node_hash
    body: SeqExpr
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise ValueError("RepFin count must be at least 2")

    @cached_property
    def length(self):
        return ord_mul(self.body.length, self.count)


@dataclass(frozen=True)
class RepOmega(SeqExpr):
    __hash__ = _node_hash
    body: SeqExpr

    @cached_property
    def length(self):
        return ord_mul(self.body.length, OMEGA)


@dataclass(frozen=True)
class Osc(SeqExpr):
    __hash__ = _node_hash
    lo: object
    hi: object

    def __post_init__(self):
        object.__setattr__(self, "lo", _value(self.lo))
        object.__setattr__(self, "hi", _value(self.hi))

    @property
    def length(self):
        return OMEGA


def length(s):
    return s.length


def is_numeric(s):
    return all(not isinstance(v, str) for v in values(s))


def values(s):
    """The finite set of values taken by ``s``."""
    out = set()
    _collect_values(s, out)
    return out


def _collect_values(s, out):
    if isinstance(s, Const):
        out.add(s.value)
    elif isinstance(s, Osc):
        out.update((s.lo, s.hi))
    elif isinstance(s, Concat):
        for p in s.parts:
            _collect_values(p, out)
    else:
        _collect_values(s.body, out)


def value_range(s):
    vals = values(s)
    if any(isinstance(v, str) for v in vals):
        raise TypeError("value_range needs a numeric sequence")
    return min(vals), max(vals)


# -- construction and normal form ---------------------------------------------

def _flat_parts(parts):
    for p in parts:
        if isinstance(p, Concat):
            yield from _flat_parts(p.parts)
        else:
            yield p


def _join(parts):
    """Concatenate without merging; flattens nested Concat."""
    parts = list(_flat_parts(parts))
    if not parts:
        raise EmptyList("cannot concatenate an empty list")
    return parts[0] if len(parts) == 1 else Concat(tuple(parts))


def _repeat(body, k):
    if k == 1:
        return body
    if isinstance(body, Const):
        return Const(body.value, ord_mul(body.len, k))
    return RepFin(body, k)


def concat(parts):
    """Concatenate, flattening nested Concat and merging equal adjacent Const."""
    merged = []
    for p in _flat_parts(parts):
        last = merged[-1] if merged else None
        if (isinstance(p, Const) and isinstance(last, Const)
                and last.value == p.value):
            merged[-1] = Const(p.value, ord_add(last.len, p.len))
        else:
            merged.append(p)
    return _join(merged)


def normalize(s):
    """Bottom-up normal form.

    Flattens concatenations, merges adjacent equal constants, and collapses
    repetitions of constants (and ``Osc(v, v)``) into a single ``Const``.
    """
    if isinstance(s, Const):
        return s
    if isinstance(s, Osc):
        return Const(s.lo, OMEGA) if s.lo == s.hi else s
    if isinstance(s, Concat):
        return concat([normalize(p) for p in s.parts])
    body = normalize(s.body)
    if isinstance(s, RepFin):
        if isinstance(body, Const):
            return Const(body.value, ord_mul(body.len, s.count))
        return RepFin(body, s.count)
    if isinstance(body, Const):
        return Const(body.value, ord_mul(body.len, OMEGA))
    return RepOmega(body)


# -- splitting ----------------------------------------------------------------

def split(s, xi):
    """Cut ``s`` into an initial segment of length ``xi`` and the rest."""
    xi = Ordinal.coerce(xi)
    if xi.is_zero() or not xi < s.length:
        raise OutOfRange(f"cut {xi} outside (0, {s.length})")
    return _split(s, xi)


def _split(s, xi):
    if isinstance(s, Const):
        return Const(s.value, xi), Const(s.value, left_subtract(xi, s.len))
    if isinstance(s, Osc):
        raise UnsplittableAtom(f"cut at {xi} falls inside an oscillating atom")
    if isinstance(s, Concat):
        acc = ZERO
        for i, p in enumerate(s.parts):
            end = ord_add(acc, p.length)
            if xi < end:
                local = left_subtract(acc, xi)
                if local.is_zero():
                    return _join(s.parts[:i]), _join(s.parts[i:])
                head, tail = _split(p, local)
                return (_join(s.parts[:i] + (head,)),
                        _join((tail,) + s.parts[i + 1:]))
            if xi == end:
                return _join(s.parts[:i + 1]), _join(s.parts[i + 1:])
            acc = end
        raise AssertionError("cut beyond the end of a concatenation")
    body = s.body
    q, r = left_divide(body.length, xi)
    q = int(q)
    head = [_repeat(body, q)] if q else []
    tail = []
    if not r.is_zero():
        bh, bt = _split(body, r)
        head.append(bh)
        tail.append(bt)
    if isinstance(s, RepFin):
        rest = s.count - q - (0 if r.is_zero() else 1)
        if rest:
            tail.append(_repeat(body, rest))
    else:
        tail.append(s)
    return _join(head), _join(tail)


def prefix(s, xi):
    """Initial segment of length ``xi``; unlike :func:`split`, finite prefixes
    of oscillating atoms are allowed."""
    xi = Ordinal.coerce(xi)
    if xi == s.length:
        return s
    if xi.is_zero() or not xi < s.length:
        raise OutOfRange(f"prefix length {xi} outside (0, {s.length}]")
    return _prefix(s, xi)


def _prefix(s, xi):
    if isinstance(s, Osc):
        runs = []
        left = int(xi)
        for value, count in _osc_runs(s):
            take = min(left, count)
            runs.append(Const(value, take))
            left -= take
            if not left:
                return _join(runs)
    if isinstance(s, Concat):
        acc = ZERO
        for i, p in enumerate(s.parts):
            end = ord_add(acc, p.length)
            if not end < xi:
                local = left_subtract(acc, xi)
                if local == p.length:
                    return _join(s.parts[:i + 1])
                return _join(s.parts[:i] + (_prefix(p, local),))
            acc = end
    if isinstance(s, (RepFin, RepOmega)):
        q, r = left_divide(s.body.length, xi)
        head = [_repeat(s.body, int(q))] if q else []
        if not r.is_zero():
            head.append(_prefix(s.body, r))
        return _join(head)
    return split(s, xi)[0]


# -- reading values -----------------------------------------------------------

def _osc_runs(s):
    n = 1
    flip = False
    while True:
        yield (s.hi if flip else s.lo), n
        n *= 2
        flip = not flip


def iter_runs(s):
    """Yield ``(value, count)`` runs covering the first omega positions of ``s``.

    ``count`` is ``None`` for a run that never ends.  Iteration stops at the
    first position that is not reachable by finitely many steps.
    """
    for value, count in _runs(s):
        yield value, count
        if count is None:
            return


def _runs(s):
    # yields runs; a part of infinite length never returns control
    if isinstance(s, Const):
        yield s.value, (int(s.len) if s.len.is_finite() else None)
    elif isinstance(s, Osc):
        yield from _osc_runs(s)
    elif isinstance(s, Concat):
        for p in s.parts:
            yield from _runs(p)
            if not p.length.is_finite():
                return
    elif isinstance(s, RepFin):
        if not s.body.length.is_finite():
            yield from _runs(s.body)
            return
        for _ in range(s.count):
            yield from _runs(s.body)
    else:
        if not s.body.length.is_finite():
            yield from _runs(s.body)
            return
        while True:
            yield from _runs(s.body)


def _iter_values(s):
    for value, count in iter_runs(s):
        if count is None:
            while True:
                yield value
        for _ in range(count):
            yield value


def materialize_prefix(s, n):
    """The first ``n`` values of ``s``, or fewer if a limit position comes first."""
    if n < 1:
        raise ValueError("n must be positive")
    return list(islice(_iter_values(s), n))


# -- pointwise operations -----------------------------------------------------

def map_values(s, f):
    """Relabel every value of ``s`` through ``f`` (a mapping or a callable).

    The node structure is preserved exactly.
    """
    if callable(f) and not hasattr(f, "__getitem__"):
        fn = f
    else:
        def fn(v):
            try:
                return f[v]
            except KeyError:
                raise MissingValue(v) from None
    return _map(s, fn, {})


def _map(s, fn, memo):
    hit = memo.get(id(s))
    if hit is not None:
        return hit
    if isinstance(s, Const):
        out = Const(fn(s.value), s.len)
    elif isinstance(s, Osc):
        out = Osc(fn(s.lo), fn(s.hi))
    elif isinstance(s, Concat):
        out = Concat(tuple(_map(p, fn, memo) for p in s.parts))
    elif isinstance(s, RepFin):
        out = RepFin(_map(s.body, fn, memo), s.count)
    else:
        out = RepOmega(_map(s.body, fn, memo))
    memo[id(s)] = out
    return out


def negate(s):
    return map_values(s, operator.neg)


def zip_affine(r, s, ca, cb, max_period=64):
    """The pointwise sequence ``ca*r + cb*s``, found by structural alignment.

    Raises :class:`LengthMismatch` for unequal lengths and :class:`Unalignable`
    when no common refinement is found (for example an ``Osc`` against a
    differently positioned ``Osc``, or two periodic parts whose periods have no
    common multiple below ``max_period`` repetitions).
    """
    ca, cb = Fraction(ca), Fraction(cb)
    if r.length != s.length:
        raise LengthMismatch(f"{r.length} != {s.length}")
    try:
        out = _zip(r, s, ca, cb, max_period, 0)
    except UnsplittableAtom as exc:
        raise Unalignable(str(exc)) from None
    return normalize(out)


_MAX_ZIP_DEPTH = 200


def _affine_map(s, a, c):
    return _map(s, lambda v: a * v + c, {})


def _zip(r, s, ca, cb, bound, depth):
    if depth > _MAX_ZIP_DEPTH:
        raise Unalignable("alignment recursion too deep")
    if isinstance(r, Const):
        return _affine_map(s, cb, ca * r.value)
    if isinstance(s, Const):
        return _affine_map(r, ca, cb * s.value)
    if isinstance(r, RepFin) and isinstance(s, RepFin) and r.count == s.count \
            and r.body.length == s.body.length:
        return RepFin(_zip(r.body, s.body, ca, cb, bound, depth + 1), r.count)
    if isinstance(r, (Concat, RepFin)):
        return _zip_parts(r, s, ca, cb, bound, depth)
    if isinstance(s, (Concat, RepFin)):
        return _zip_parts(s, r, cb, ca, bound, depth)
    if isinstance(r, Osc) and isinstance(s, Osc):
        return Osc(ca * r.lo + cb * s.lo, ca * r.hi + cb * s.hi)
    if isinstance(r, RepOmega) and isinstance(s, RepOmega):
        a, b = r.body, s.body
        if a.length == b.length:
            return RepOmega(_zip(a, b, ca, cb, bound, depth + 1))
        for i in range(1, bound + 1):
            la = ord_mul(a.length, i)
            for j in range(1, bound + 1):
                lb = ord_mul(b.length, j)
                if lb == la:
                    return RepOmega(_zip(_unroll(a, i), _unroll(b, j),
                                         ca, cb, bound, depth + 1))
                if la < lb:
                    break
        raise Unalignable(f"no common period for {a.length} and {b.length}")
    raise Unalignable(f"cannot align {type(r).__name__} with {type(s).__name__}")


def _unroll(body, k):
    return body if k == 1 else _join([body] * k)


def _parts_of(s):
    if isinstance(s, RepFin):
        return [s.body] * s.count
    return list(s.parts)


def _zip_parts(r, s, ca, cb, bound, depth):
    out = []
    rest = s
    parts = _parts_of(r)
    for i, p in enumerate(parts):
        if i == len(parts) - 1:
            piece = rest
        else:
            piece, rest = _split_periodic(rest, p.length)
        out.append(_zip(p, piece, ca, cb, bound, depth + 1))
    return _join(out)


def _split_periodic(s, xi):
    """Like split, but the suffix of an omega-repetition is re-expressed as a
    rotated repetition so that alignment can keep recursing."""
    if isinstance(s, RepOmega):
        q, r = left_divide(s.body.length, xi)
        if not r.is_zero():
            head, tail = _split(s.body, r)
            pre = [_repeat(s.body, int(q))] if q else []
            return _join(pre + [head]), RepOmega(_join([tail, head]))
    return _split(s, xi)


# -- text ---------------------------------------------------------------------

def format_value(v):
    if isinstance(v, str):
        return v
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def seq_print(s):
    if isinstance(s, Const):
        return f"const({format_value(s.value)};{s.len})"
    if isinstance(s, Osc):
        return f"osc({format_value(s.lo)},{format_value(s.hi)})"
    if isinstance(s, Concat):
        return "cat(" + ", ".join(seq_print(p) for p in s.parts) + ")"
    if isinstance(s, RepFin):
        return f"rep({seq_print(s.body)};{s.count})"
    return f"repw({seq_print(s.body)})"


_KEYWORDS = ("const", "cat", "repw", "rep", "osc")


def seq_parse(text, labels=False):
    """Parse the sequence grammar, e.g. ``"cat(const(1;3), const(0;w))"``.

    With ``labels=True`` bare identifiers are accepted as values.
    """
    sc = Scanner(text)
    s = _parse_seq(sc, labels)
    sc.end()
    return s


def _parse_seq(sc, labels):
    start = sc.pos
    name = sc.ident() if sc.at_ident() else ""
    if name not in _KEYWORDS:
        sc.pos = start
        sc.error("expected one of const, cat, rep, repw, osc")
    sc.expect("(")
    if name == "const":
        v = _parse_value(sc, labels)
        sc.expect(";")
        n = _parse_sum(sc)
        if n.is_zero():
            sc.error("constant sequences need nonzero length")
        out = Const(v, n)
    elif name == "osc":
        lo = _parse_value(sc, labels)
        sc.expect(",")
        out = Osc(lo, _parse_value(sc, labels))
    elif name == "cat":
        parts = [_parse_seq(sc, labels)]
        while sc.accept(","):
            parts.append(_parse_seq(sc, labels))
        if len(parts) < 2:
            sc.error("cat needs at least two parts")
        out = Concat(tuple(parts))
    elif name == "rep":
        body = _parse_seq(sc, labels)
        sc.expect(";")
        k = sc.natural()
        if k < 1:
            sc.error("repeat count must be positive")
        out = _repeat(body, k)
    else:
        out = RepOmega(_parse_seq(sc, labels))
    sc.expect(")")
    return out


def _parse_value(sc, labels):
    if labels and sc.at_ident():
        return sc.ident()
    neg = sc.accept("-")
    num = sc.natural()
    den = 1
    if sc.accept("/"):
        den = sc.natural()
        if den == 0:
            sc.error("zero denominator")
    v = Fraction(num, den)
    return -v if neg else v
