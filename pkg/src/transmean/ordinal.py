"""Ordinals below epsilon-zero in Cantor normal form.

An :class:`Ordinal` is an immutable, hashable tuple of ``(exponent, coefficient)``
terms with strictly decreasing exponents (themselves ordinals) and positive
integer coefficients.  The empty tuple is zero.

>>> w = Ordinal.parse("w")
>>> str(1 + w), str(w + 1)
('w', 'w + 1')
>>> str(Ordinal.parse("w*2 + 1") * w)
'w^2'
"""

from functools import total_ordering
from numbers import Integral

from ._text import ParseError, Scanner

__all__ = [
    "Ordinal", "ZERO", "ONE", "OMEGA",
    "OrdinalError", "ZeroOrdinal", "Underflow", "ZeroDivisor", "ParseError",
    "ord_cmp", "ord_add", "ord_mul", "omega_pow", "is_indecomposable",
    "standard_decomposition", "left_subtract", "left_divide", "absorbs",
    "ord_parse", "ord_print",
]


class OrdinalError(ArithmeticError):
    pass


class ZeroOrdinal(OrdinalError):
    pass


class Underflow(OrdinalError):
    pass


class ZeroDivisor(OrdinalError, ZeroDivisionError):
    pass


@total_ordering
class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        terms = tuple(terms)
        for i, (e, c) in enumerate(terms):
            if not isinstance(e, Ordinal) or not isinstance(c, Integral) or c < 1:
                raise ValueError(f"bad CNF term {(e, c)!r}")
            if i and not _cmp(terms[i - 1][0], e) > 0:
                raise ValueError("CNF exponents must strictly decrease")
        object.__setattr__(self, "terms", tuple((e, int(c)) for e, c in terms))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    @classmethod
    def _make(cls, terms):
        """Trusted constructor for terms already in canonical form."""
        self = object.__new__(cls)
        object.__setattr__(self, "terms", tuple(terms))
        object.__setattr__(self, "_hash", None)
        return self

    @classmethod
    def coerce(cls, value):
        if type(value) is Ordinal:
            return value
        if type(value) is int:
            if value < 0:
                raise ValueError("ordinals are non-negative")
            return _finite(value)
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, Integral) and not isinstance(value, bool):
            if value < 0:
                raise ValueError("ordinals are non-negative")
            return _finite(int(value))
        if isinstance(value, str):
            return ord_parse(value)
        raise TypeError(f"cannot interpret {value!r} as an ordinal")

    @classmethod
    def parse(cls, text):
        return ord_parse(text)

    # -- structure -------------------------------------------------------

    @property
    def degree(self):
        """Leading exponent (0 for zero and for finite ordinals)."""
        return self.terms[0][0] if self.terms else ZERO

    @property
    def leading_coefficient(self):
        return self.terms[0][1] if self.terms else 0

    def is_zero(self):
        return not self.terms

    def is_finite(self):
        return not self.terms or self.terms[0][0].is_zero()

    def is_limit(self):
        """Nonzero with no finite tail term."""
        return bool(self.terms) and not self.terms[-1][0].is_zero()

    def is_successor(self):
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def finite_part(self):
        """The trailing natural number n in ``lambda + n``."""
        if self.terms and self.terms[-1][0].is_zero():
            return self.terms[-1][1]
        return 0

    def __int__(self):
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def __index__(self):
        return int(self)

    def __bool__(self):
        return bool(self.terms)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Integral) and not isinstance(other, bool):
            other = _finite(int(other)) if other >= 0 else None
            if other is None:
                return False
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other):
        try:
            other = Ordinal.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return _cmp(self, other) < 0

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.is_finite():
                h = hash(int(self))
            else:
                h = hash(self.terms)
            object.__setattr__(self, "_hash", h)
        return h

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        try:
            return ord_add(self, Ordinal.coerce(other))
        except TypeError:
            return NotImplemented

    def __radd__(self, other):
        try:
            return ord_add(Ordinal.coerce(other), self)
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        try:
            return ord_mul(self, Ordinal.coerce(other))
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return ord_mul(Ordinal.coerce(other), self)
        except TypeError:
            return NotImplemented

    def __str__(self):
        return ord_print(self)

    def __repr__(self):
        return f"Ordinal({ord_print(self)!r})"

    def __reduce__(self):
        return (ord_parse, (ord_print(self),))


def _finite(n):
    if n == 0:
        return ZERO
    if n < len(_SMALL):
        return _SMALL[n]
    return Ordinal._make(((ZERO, n),))


def _cmp(a, b):
    if a is b:
        return 0
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


ZERO = Ordinal()
_SMALL = [ZERO] + [Ordinal(((ZERO, n),)) for n in range(1, 64)]
ONE = _SMALL[1]
OMEGA = Ordinal(((ONE, 1),))


def ord_cmp(a, b):
    """Return ``"less"``, ``"equal"`` or ``"greater"``."""
    c = _cmp(Ordinal.coerce(a), Ordinal.coerce(b))
    return ("less", "equal", "greater")[c + 1]


def ord_add(a, b):
    a, b = Ordinal.coerce(a), Ordinal.coerce(b)
    if not b.terms:
        return a
    if not a.terms:
        return b
    e, c = b.terms[0]
    head = []
    for ea, ca in a.terms:
        k = _cmp(ea, e)
        if k > 0:
            head.append((ea, ca))
        elif k == 0:
            return Ordinal._make(head + [(e, ca + c)] + list(b.terms[1:]))
        else:
            break
    return Ordinal._make(head + list(b.terms))


def ord_mul(a, b):
    a, b = Ordinal.coerce(a), Ordinal.coerce(b)
    if not a.terms or not b.terms:
        return ZERO
    lead_e, lead_c = a.terms[0]
    result = ZERO
    for f, d in b.terms:
        if f.is_zero():
            # a * d: only the leading coefficient is scaled
            piece = Ordinal._make([(lead_e, lead_c * d)] + list(a.terms[1:]))
        else:
            piece = Ordinal._make([(ord_add(lead_e, f), d)])
        result = ord_add(result, piece)
    return result


def omega_pow(e):
    """The indecomposable ordinal w^e."""
    return Ordinal._make(((Ordinal.coerce(e), 1),))


def is_indecomposable(a):
    a = Ordinal.coerce(a)
    return len(a.terms) == 1 and a.terms[0][1] == 1


def standard_decomposition(a):
    """Split ``a = w^sigma * n + rho`` with ``rho < w^sigma``.

    Returns ``(sigma, n, rho)``.
    """
    a = Ordinal.coerce(a)
    if not a.terms:
        raise ZeroOrdinal("zero has no standard decomposition")
    sigma, n = a.terms[0]
    return sigma, n, Ordinal._make(a.terms[1:])


def left_subtract(b, a):
    """The unique ``g`` with ``b + g == a``; requires ``b <= a``."""
    b, a = Ordinal.coerce(b), Ordinal.coerce(a)
    for i, (ea, ca) in enumerate(a.terms):
        if i >= len(b.terms):
            return Ordinal._make(a.terms[i:])
        eb, cb = b.terms[i]
        k = _cmp(eb, ea)
        if k < 0:
            return Ordinal._make(a.terms[i:])
        if k > 0:
            break
        if cb < ca:
            return Ordinal._make([(ea, ca - cb)] + list(a.terms[i + 1:]))
        if cb > ca:
            break
    else:
        if len(b.terms) == len(a.terms):
            return ZERO
    raise Underflow(f"{b} > {a}")


def left_divide(b, lam):
    """Left division: ``lam == b * alpha + rho`` with ``rho < b``.

    Returns ``(alpha, rho)``.  The result is checked against the division law
    before it is returned.
    """
    b, lam = Ordinal.coerce(b), Ordinal.coerce(lam)
    if not b.terms:
        raise ZeroDivisor("division by the zero ordinal")
    e, c = b.terms[0]
    alpha = ZERO
    rest = lam
    while rest.terms and not rest < b:
        f, d = rest.terms[0]
        k = _cmp(f, e)
        if k > 0:
            # b * w^g == w^(e + g) == w^f
            g = left_subtract(e, f)
            alpha = ord_add(alpha, Ordinal._make(((g, d),)))
            rest = Ordinal._make(rest.terms[1:])
            continue
        # k == 0 here, because rest >= b forces f >= e
        q = d // c
        if ord_mul(b, q) > rest:
            q -= 1
        alpha = ord_add(alpha, q)
        rest = left_subtract(ord_mul(b, q), rest)
        break
    if ord_add(ord_mul(b, alpha), rest) != lam or not rest < b:
        raise AssertionError(f"left division law violated for {b} | {lam}")
    return alpha, rest


def absorbs(b, a):
    """True iff ``b + a == a``."""
    b, a = Ordinal.coerce(b), Ordinal.coerce(a)
    return ord_add(b, a) == a


# -- text ---------------------------------------------------------------------

def ord_print(a):
    a = Ordinal.coerce(a)
    if not a.terms:
        return "0"
    out = []
    for e, c in a.terms:
        if e.is_zero():
            out.append(str(c))
            continue
        if e == ONE:
            s = "w"
        elif e.is_finite():
            s = f"w^{int(e)}"
        elif e == OMEGA:
            s = "w^w"
        else:
            s = f"w^({ord_print(e)})"
        if c != 1:
            s += f"*{c}"
        out.append(s)
    return " + ".join(out)


def ord_parse(text):
    """Parse an ordinal expression such as ``"w^2*3 + w*2 + 5"``.

    Non-canonical sums are evaluated, so ``"1 + w"`` gives ``w``.
    """
    sc = Scanner(text)
    value = _parse_sum(sc)
    sc.end()
    return value


def _parse_sum(sc):
    value = _parse_term(sc)
    while sc.accept("+"):
        value = ord_add(value, _parse_term(sc))
    return value


def _parse_term(sc):
    ch = sc.peek()
    if ch.isdigit():
        return _finite(sc.natural())
    if ch != "w":
        sc.error("expected 'w' or a natural number")
    sc.pos += 1
    exponent = _parse_exponent(sc)
    coeff = 1
    if sc.accept("*"):
        coeff = sc.natural()
    if coeff == 0:
        return ZERO
    return Ordinal(((exponent, coeff),))


def _parse_exponent(sc):
    if not sc.accept("^"):
        return ONE
    if sc.accept("("):
        exponent = _parse_sum(sc)
        sc.expect(")")
        return exponent
    if sc.peek() == "w":
        # bare tower such as w^w or w^w^2, read right-associatively
        sc.pos += 1
        return Ordinal(((_parse_exponent(sc), 1),))
    return _finite(sc.natural())
