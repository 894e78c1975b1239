"""Seeded generators and executable law checks for the transfinite mean.

Each ``check_*`` function runs ``cfg.case_count`` independent cases and returns
a :class:`LawReport`.  A case draws all of its randomness from
``(cfg.seed, law name, case index)``, so any failure can be replayed alone with
:func:`case_rng`.  Law violations are recorded, never raised.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import random

from .mean import (
    UnsupportedDivision, divide, lower_mean, mean, truncation_oracle,
    upper_mean,
)
from .ordinal import (
    OMEGA, ONE, ZERO, Ordinal, absorbs, left_divide, left_subtract, omega_pow,
    ord_add, ord_mul, standard_decomposition,
)
from .seqalg import (
    Concat, Const, Osc, RepFin, RepOmega, Unalignable, concat, map_values,
    materialize_prefix, split, value_range, zip_affine,
)

__all__ = [
    "GenConfig", "LawReport", "Failure", "case_rng", "gen_ordinal", "gen_seq",
    "gen_aligned_pair", "revalue", "check_domination", "check_axioms",
    "check_subadditivity_linearity", "check_division", "check_excision",
    "check_uniform_limit", "check_oracle_agreement", "run_laws", "LAWS",
]

DEFAULT_POOL = tuple(Fraction(v) for v in ("-2", "-1", "0", "1/3", "1/2", "1", "2"))


@dataclass(frozen=True)
class GenConfig:
    seed: int = 42
    max_depth: int = 3
    max_parts: int = 3
    value_pool: tuple = DEFAULT_POOL
    ordinal_degree_cap: int = 2
    case_count: int = 100
    osc_probability: float = 0.15
    # limsup-axiom oracle: run on every ``oracle_every``-th case
    oracle_every: int = 25
    oracle_widths: tuple = (3000, 300, 60, 20)
    tolerance: Fraction = Fraction(1, 50)

    def __post_init__(self):
        for name in ("max_depth", "max_parts", "ordinal_degree_cap", "oracle_every"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if self.case_count < 0:
            raise ValueError("case_count must be non-negative")
        if not self.value_pool:
            raise ValueError("value_pool must be nonempty")


@dataclass
class Failure:
    law: str
    index: int
    seed: int
    detail: str

    def __str__(self):
        return f"{self.law}[seed={self.seed} case={self.index}]: {self.detail}"


@dataclass
class LawReport:
    name: str
    cases: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def summary(self):
        verdict = "PASS" if self.passed else "FAIL"
        return (f"LAW {self.name} {verdict} cases={self.cases} "
                f"failures={len(self.failures)}")

    def fail(self, law, index, seed, detail):
        self.failures.append(Failure(law, index, seed, detail))


def case_rng(cfg, law, index):
    return random.Random(f"{cfg.seed}:{law}:{index}")


# -- generators ---------------------------------------------------------------

def gen_ordinal(rng, degree, min_one=True, max_coeff=3):
    """Random ordinal below ``w^(degree+1)`` with finite exponents."""
    terms = []
    for e in range(degree, -1, -1):
        c = rng.randint(0, max_coeff)
        if c:
            terms.append((Ordinal.coerce(e), c))
    a = Ordinal(terms)
    if min_one and a.is_zero():
        return ONE
    return a


def _value(rng, cfg):
    return rng.choice(cfg.value_pool)


def _gen(rng, cfg, depth, degree, allow_osc=True):
    kinds = ["const"]
    if depth > 0:
        kinds += ["cat", "cat", "rep"]
        if degree >= 1:
            kinds += ["repw", "repw"]
    if allow_osc and degree >= 1 and rng.random() < cfg.osc_probability:
        return Osc(_value(rng, cfg), _value(rng, cfg))
    kind = rng.choice(kinds)
    if kind == "const":
        return Const(_value(rng, cfg), gen_ordinal(rng, rng.randint(0, degree)))
    if kind == "cat":
        n = rng.randint(2, max(2, cfg.max_parts))
        return Concat(tuple(_gen(rng, cfg, depth - 1, degree, allow_osc)
                            for _ in range(n)))
    if kind == "rep":
        return RepFin(_gen(rng, cfg, depth - 1, degree, allow_osc), rng.randint(2, 3))
    return RepOmega(_gen(rng, cfg, depth - 1, degree - 1, allow_osc))


def gen_seq(cfg, i, law="seq", degree=None, allow_osc=True, infinite=False):
    """Deterministic random sequence for case ``i``; length < w^(degree+1)."""
    rng = case_rng(cfg, law, i)
    return _gen_seq(rng, cfg, degree, allow_osc, infinite)


def _gen_seq(rng, cfg, degree=None, allow_osc=True, infinite=False):
    degree = cfg.ordinal_degree_cap if degree is None else degree
    s = _gen(rng, cfg, cfg.max_depth, degree, allow_osc)
    if infinite and s.length.is_finite():
        s = RepOmega(s) if degree >= 1 else s
    return s


def revalue(s, rng, pool):
    """Same skeleton as ``s`` with fresh values drawn from ``pool``."""
    if isinstance(s, Const):
        return Const(rng.choice(pool), s.len)
    if isinstance(s, Osc):
        return Osc(rng.choice(pool), rng.choice(pool))
    if isinstance(s, Concat):
        return Concat(tuple(revalue(p, rng, pool) for p in s.parts))
    if isinstance(s, RepFin):
        return RepFin(revalue(s.body, rng, pool), s.count)
    return RepOmega(revalue(s.body, rng, pool))


def gen_aligned_pair(cfg, i, law="pair", allow_osc=True):
    """Two sequences sharing one skeleton, so ``zip_affine`` always succeeds."""
    rng = case_rng(cfg, law, i)
    s = _gen_seq(rng, cfg, allow_osc=allow_osc)
    return revalue(s, rng, cfg.value_pool), revalue(s, rng, cfg.value_pool)


# -- laws ---------------------------------------------------------------------

def _run_cases(cfg, name, case, *args):
    """Run ``case`` for every index; an exception counts as a failure."""
    rep = LawReport(name)
    for i in range(cfg.case_count):
        rep.cases += 1
        try:
            case(cfg, rep, case_rng(cfg, name, i), i, *args)
        except Exception as exc:
            rep.fail("crash", i, cfg.seed, f"{type(exc).__name__}: {exc}")
    return rep


def check_domination(cfg):
    """Prefixing a sequence with an absorbed one leaves both means unchanged."""
    return _run_cases(cfg, "domination", _domination_case)


def _domination_case(cfg, rep, rng, i):
    s = _gen_seq(rng, cfg, degree=max(1, cfg.ordinal_degree_cap), infinite=True)
    e = int(s.length.degree)
    r = _gen(rng, cfg, cfg.max_depth, e - 1)
    if not absorbs(r.length, s.length):
        rep.fail("domination", i, cfg.seed,
                 f"generator broke absorption: {r.length} + {s.length}")
        return
    joined = Concat((r, s))
    for name, fn in (("upper", upper_mean), ("lower", lower_mean)):
        lhs, rhs = fn(joined), fn(s)
        if lhs != rhs:
            rep.fail("domination", i, cfg.seed,
                     f"{name}({r} + {s}) = {lhs} != {rhs}")


def _decompose(s):
    """Standard decomposition pieces and remainder (or None)."""
    sigma, n, rho = standard_decomposition(s.length)
    block = omega_pow(sigma)
    pieces = []
    rest = s
    for k in range(n):
        if k == n - 1 and rho.is_zero():
            pieces.append(rest)
            rest = None
        else:
            piece, rest = split(rest, block)
            pieces.append(piece)
    return pieces, rest


def check_axioms(cfg):
    """Length-one identity, commutation, equal-length averaging, remainder
    folding, value bounds, and the limsup axiom against the numeric oracle.

    The oracle check is containment in general; on sequences of length below
    ``w^2`` (where the oracle sees thousands of runs) it is also two-sided.
    """
    return _run_cases(cfg, "axioms", _axioms_case)


def _axioms_case(cfg, rep, rng, i):
    v = _value(rng, cfg)
    if upper_mean(Const(v, ONE)) != v:
        rep.fail("identity", i, cfg.seed, f"M(const({v};1)) != {v}")

    r, s = _gen_seq(rng, cfg), _gen_seq(rng, cfg)
    for name, fn in (("upper", upper_mean), ("lower", lower_mean)):
        a, b = fn(Concat((r, s))), fn(Concat((s, r)))
        if a != b:
            rep.fail("commutation", i, cfg.seed,
                     f"{name}: {a} != {b} for r={r} s={s}")

    n = rng.randint(2, 4)
    parts = [revalue(s, rng, cfg.value_pool) for _ in range(n)]
    whole = upper_mean(Concat(tuple(parts)))
    avg = sum(upper_mean(p) for p in parts) / n
    if whole != avg:
        rep.fail("averaging", i, cfg.seed, f"{whole} != {avg} over {n} parts of {s}")

    pieces, rem = _decompose(r)
    if rem is not None:
        folded = upper_mean(Concat((rem, pieces[0])))
        folded += sum(upper_mean(p) for p in pieces[1:])
        folded /= len(pieces)
        if folded != upper_mean(r):
            rep.fail("remainder_fold", i, cfg.seed,
                     f"{folded} != {upper_mean(r)} for {r}")

    lo, hi = value_range(s)
    if not lo <= lower_mean(s) <= upper_mean(s) <= hi:
        rep.fail("bounds", i, cfg.seed, f"means of {s} outside [{lo}, {hi}]")

    if i % cfg.oracle_every == 0:
        tol = cfg.tolerance
        t = _gen_seq(rng, cfg, degree=min(cfg.ordinal_degree_cap, len(cfg.oracle_widths)))
        olo, ohi = truncation_oracle(t, cfg.oracle_widths)
        if not (olo - tol <= lower_mean(t) and upper_mean(t) <= ohi + tol):
            rep.fail("limsup_oracle", i, cfg.seed,
                     f"({lower_mean(t)}, {upper_mean(t)}) outside "
                     f"[{float(olo)}, {float(ohi)}] +- {tol} for {t}")
        u = _gen_seq(rng, cfg, degree=1, infinite=True)
        olo, ohi = truncation_oracle(u, cfg.oracle_widths)
        if abs(olo - lower_mean(u)) > tol or abs(ohi - upper_mean(u)) > tol:
            rep.fail("limsup_oracle_tight", i, cfg.seed,
                     f"({lower_mean(u)}, {upper_mean(u)}) vs oracle "
                     f"[{float(olo)}, {float(ohi)}] for {u}")


def check_subadditivity_linearity(cfg):
    """Subadditivity, monotonicity, affine equivariance, and linearity of the
    mean where it exists, over structurally aligned pairs."""
    return _run_cases(cfg, "subadditivity_linearity", _subadditivity_linearity_case)


def _subadditivity_linearity_case(cfg, rep, rng, i):
    pool = cfg.value_pool
    nonneg = tuple(v for v in pool if v >= 0) or (Fraction(0),)
    skeleton = _gen_seq(rng, cfg, allow_osc=rng.random() < 0.5)
    r, s = revalue(skeleton, rng, pool), revalue(skeleton, rng, pool)
    try:
        total = zip_affine(r, s, 1, 1)
        bump = zip_affine(r, revalue(skeleton, rng, nonneg), 1, 1)
    except Unalignable as exc:
        rep.fail("alignment", i, cfg.seed, f"aligned pair did not zip: {exc}")
        return
    ur, us = upper_mean(r), upper_mean(s)
    if upper_mean(total) > ur + us:
        rep.fail("subadditivity", i, cfg.seed,
                 f"{upper_mean(total)} > {ur} + {us} for r={r} s={s}")
    if upper_mean(r) > upper_mean(bump):
        rep.fail("monotonicity", i, cfg.seed, f"adding a nonnegative sequence lowered {r}")

    a, b = rng.choice(pool), rng.choice(pool)
    shifted = map_values(r, lambda x: a * x + b)
    want = a * (ur if a >= 0 else lower_mean(r)) + b
    if upper_mean(shifted) != want:
        rep.fail("affine", i, cfg.seed, f"M({a}*r + {b}) = {upper_mean(shifted)} != {want}")

    mr, ms = mean(r), mean(s)
    if mr is not None and ms is not None:
        combo = mean(zip_affine(r, s, a, b))
        if combo != a * mr + b * ms:
            rep.fail("linearity", i, cfg.seed,
                     f"M({a}r + {b}s) = {combo} != {a * mr + b * ms}")


def _block_candidates(degree):
    out = [Ordinal.coerce(2), Ordinal.coerce(3)]
    for j in range(1, degree + 1):
        for m in (1, 2):
            out.append(ord_mul(omega_pow(j), m))
    out.append(ord_add(OMEGA, ONE))
    return out


def _pointwise_equal(x, y):
    if x.length != y.length:
        return False
    try:
        diff = zip_affine(x, y, 1, -1)
        return value_range(diff) == (0, 0)
    except Unalignable:
        return (upper_mean(x) == upper_mean(y) and lower_mean(x) == lower_mean(y)
                and materialize_prefix(x, 64) == materialize_prefix(y, 64))


def check_division(cfg):
    """Division composes, ``(s/b)/a == s/(b*a)``, and preserves the upper mean.

    Cases where a division is structurally unsupported are counted as skipped.
    """
    return _run_cases(cfg, "division", _division_case)


def _division_case(cfg, rep, rng, i):
    s = _gen_seq(rng, cfg)
    L = s.length
    cands = [c for c in _block_candidates(cfg.ordinal_degree_cap)
             if not L < c and left_divide(c, L)[1].is_zero()]
    if not cands:
        rep.skipped += 1
        return
    beta = rng.choice(cands)
    q = left_divide(beta, L)[0]
    alphas = [c for c in _block_candidates(cfg.ordinal_degree_cap) + [ONE, q]
              if not q < c and left_divide(c, q)[1].is_zero()]
    alpha = rng.choice(alphas)
    try:
        sb = divide(s, beta)
        lhs = divide(sb, alpha)
        rhs = divide(s, ord_mul(beta, alpha))
    except UnsupportedDivision:
        rep.skipped += 1
        return
    if not _pointwise_equal(lhs, rhs):
        rep.fail("composition", i, cfg.seed,
                 f"({s}/{beta})/{alpha} = {lhs} but /{ord_mul(beta, alpha)} = {rhs}")
    if upper_mean(sb) != upper_mean(s):
        rep.fail("mean_preservation", i, cfg.seed,
                 f"M({s}/{beta}) = {upper_mean(sb)} != {upper_mean(s)}")
    # blockwise division of a concatenation of divisible parts
    parts = [s, revalue(s, rng, cfg.value_pool)]
    try:
        joint = divide(Concat(tuple(parts)), beta)
        apart = concat([divide(p, beta) for p in parts])
    except UnsupportedDivision:
        return
    if not _pointwise_equal(joint, apart):
        rep.fail("concat_observation", i, cfg.seed,
                 f"divide(cat) = {joint} != cat(divide) = {apart}")


def _insertion_points(L, rng):
    e = int(L.degree)
    cands = {ZERO}
    for j in range(1, e + 1):
        for k in range(1, 4):
            p = ord_mul(omega_pow(j), k)
            if p < L:
                cands.add(p)
    picked = rng.sample(sorted(cands), k=min(len(cands), rng.randint(0, 3)))
    return sorted(picked)


def excise_insert(s, points, intruders):
    """Insert ``intruders[i]`` in front of position ``points[i]`` of ``s``."""
    out = []
    rest = s
    consumed = ZERO
    for p, block in zip(points, intruders):
        if p > consumed:
            head, rest = split(rest, left_subtract(consumed, p))
            out.append(head)
            consumed = p
        out.append(block)
    out.append(rest)
    return out[0] if len(out) == 1 else Concat(tuple(out))


def check_excision(cfg):
    """Removing a sparse, absorbed set of entries leaves the means unchanged."""
    return _run_cases(cfg, "excision", _excision_case)


def _excision_case(cfg, rep, rng, i):
    s = _gen_seq(rng, cfg, degree=max(1, cfg.ordinal_degree_cap), infinite=True)
    L = s.length
    e = int(L.degree)
    points = _insertion_points(L, rng)
    intruders = []
    for _ in points:
        if e >= 2 and rng.random() < 0.3:
            block = Osc(_value(rng, cfg), _value(rng, cfg)) if rng.random() < 0.5 \
                else Const(_value(rng, cfg), OMEGA)
        else:
            block = Const(_value(rng, cfg), rng.randint(1, 3))
        intruders.append(block)
    t = excise_insert(s, points, intruders)
    excised = ZERO
    for block in intruders:
        excised = ord_add(excised, block.length)
    if not absorbs(excised, L):
        rep.fail("excision", i, cfg.seed, f"generator broke absorption {excised} + {L}")
        return
    for name, fn in (("upper", upper_mean), ("lower", lower_mean)):
        if fn(t) != fn(s):
            rep.fail("excision", i, cfg.seed,
                     f"{name}: {fn(t)} != {fn(s)} for s={s} t={t}")


UNIFORM_SCHEDULE = (1, 2, 3, 4, 8, 16, 32, 64)


def check_uniform_limit(cfg, schedule=UNIFORM_SCHEDULE):
    """Means follow uniformly convergent sequences.

    For ``eps = 1/k`` along the schedule: shifting by ``eps`` moves the mean by
    exactly ``eps``, and an aligned perturbation ``s + eps*r`` keeps a mean
    within ``eps * sup|r|`` of ``M(s)``.
    """
    return _run_cases(cfg, "uniform_limit", _uniform_limit_case, schedule)


def _uniform_limit_case(cfg, rep, rng, i, schedule):
    s = _gen_seq(rng, cfg, allow_osc=False)
    base = mean(s)
    if base is None:
        rep.fail("uniform_limit", i, cfg.seed, f"oscillation-free {s} has no mean")
        return
    r = revalue(s, rng, cfg.value_pool)
    lo, hi = value_range(r)
    size = max(abs(lo), abs(hi))
    for k in schedule:
        eps = Fraction(1, k)
        mk = mean(map_values(s, lambda x: x + eps))
        if mk != base + eps:
            rep.fail("uniform_limit", i, cfg.seed, f"k={k}: M(s + 1/k) = {mk}, M(s) = {base}")
            return
        mk = mean(zip_affine(s, r, 1, eps))
        if mk is None or abs(mk - base) > eps * size:
            rep.fail("uniform_limit", i, cfg.seed,
                     f"k={k}: M(s + r/k) = {mk} too far from {base} for r={r}")
            return


LAWS = {
    "domination": check_domination,
    "axioms": check_axioms,
    "subadditivity_linearity": check_subadditivity_linearity,
    "division": check_division,
    "excision": check_excision,
    "uniform_limit": check_uniform_limit,
}


def run_laws(cfg, names=None):
    return [LAWS[name](cfg) for name in (names or LAWS)]


def check_oracle_agreement(cfg):
    """Compare exact means with the truncation oracle on fresh sequences.

    Sequences have length below ``w^(cfg.ordinal_degree_cap + 1)``; a case
    fails unless ``(lower, upper)`` lies inside the oracle interval widened by
    ``cfg.tolerance`` on both sides.
    """
    return _run_cases(cfg, "oracle_agreement", _oracle_agreement_case)


def _oracle_agreement_case(cfg, rep, rng, i):
    s = gen_seq(cfg, i, law=rep.name)
    tol = cfg.tolerance
    olo, ohi = truncation_oracle(s, cfg.oracle_widths)
    lo, up = lower_mean(s), upper_mean(s)
    if not (olo - tol <= lo and up <= ohi + tol):
        rep.fail(rep.name, i, cfg.seed,
                 f"({lo}, {up}) outside [{float(olo)}, {float(ohi)}] "
                 f"+- {tol} for {s}")
