"""Capturing sequences for finite probability spaces.

A sequence ``x`` of outcomes *captures* an event ``A`` at resolution ``b`` when
the ``b``-block means of the indicator sequence ``Ax`` are constantly ``m(A)``.
For a finite space with rational masses an explicit periodic sequence does
this: repeat a pattern in which each outcome occurs in proportion to its mass.

>>> space = parse_space('''
... outcome a 1/2
... outcome b 1/3
... outcome c 1/6
... event ac a c
... ''')
>>> print(build_capture(space, 1))
repw(cat(const(a;3), const(b;2), const(c;1)))
>>> report = verify_capture(space, build_capture(space, 1), "w")
>>> [line for line in report.lines() if " ac " in line]
['EVENT ac m=2/3 M=2/3 PASS']
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm, sqrt
import re

from .mean import divide, mean_pair
from .ordinal import Ordinal, omega_pow
from .seqalg import (
    Const, RepOmega, SeqError, concat, format_value, map_values, normalize,
    values,
)

__all__ = [
    "ProbSpace", "SpaceError", "UnknownLabel", "NotNull", "DegenerateSpace",
    "parse_space", "read_space", "random_space", "build_capture",
    "indicator_sequence", "verify_capture", "CaptureReport", "EventResult",
    "null_robustness_check", "slln_trial", "SllnReport",
]


class SpaceError(ValueError):
    """A malformed probability space (bad file, bad masses, bad events)."""


class UnknownLabel(SeqError, KeyError):
    pass


class NotNull(ValueError):
    pass


class DegenerateSpace(Warning):
    """Some outcome has mass 1; the capturing sequence is constant."""


_LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class ProbSpace:
    """A finite probability space with rational masses.

    ``events`` maps names to frozensets of outcome labels; every subset of the
    outcomes is measurable, the named ones are just the ones worth reporting.
    """
    outcomes: tuple
    mass: dict
    events: dict = field(default_factory=dict)

    def __post_init__(self):
        outcomes = tuple(self.outcomes)
        if not outcomes:
            raise SpaceError("a space needs at least one outcome")
        if len(set(outcomes)) != len(outcomes):
            dup = next(o for o in outcomes if outcomes.count(o) > 1)
            raise SpaceError(f"duplicate outcome label {dup!r}")
        for o in outcomes:
            if not isinstance(o, str) or not _LABEL.match(o):
                raise SpaceError(f"outcome label {o!r} is not an identifier")
        mass = {}
        for o in outcomes:
            if o not in self.mass:
                raise SpaceError(f"no mass given for outcome {o!r}")
            m = Fraction(self.mass[o])
            if not 0 <= m <= 1:
                raise SpaceError(f"mass of {o!r} is {format_value(m)}, outside [0,1]")
            mass[o] = m
        extra = set(self.mass) - set(outcomes)
        if extra:
            raise SpaceError(f"mass given for undeclared outcome {sorted(extra)[0]!r}")
        total = sum(mass.values())
        if total != 1:
            raise SpaceError(f"masses sum to {format_value(total)}, not 1")
        events = {}
        for name, members in self.events.items():
            members = frozenset(members)
            unknown = members - set(outcomes)
            if unknown:
                raise SpaceError(
                    f"event {name!r} uses undeclared outcome {sorted(unknown)[0]!r}")
            events[name] = members
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(self, "mass", mass)
        object.__setattr__(self, "events", events)

    def measure(self, event):
        event = self._members(event)
        return sum((self.mass[o] for o in event), Fraction(0))

    def complement(self, event):
        return frozenset(self.outcomes) - self._members(event)

    def all_events(self):
        """Every subset of the outcomes, smallest first."""
        for k in range(len(self.outcomes) + 1):
            for combo in combinations(self.outcomes, k):
                yield frozenset(combo)

    def event_name(self, members):
        """The declared name of ``members`` if any, otherwise set notation."""
        members = frozenset(members)
        for name, ev in self.events.items():
            if ev == members:
                return name
        return "{" + ",".join(o for o in self.outcomes if o in members) + "}"

    def _members(self, event):
        if isinstance(event, str):
            if event not in self.events:
                raise SpaceError(f"no event named {event!r}")
            return self.events[event]
        event = frozenset(event)
        unknown = event - set(self.outcomes)
        if unknown:
            raise UnknownLabel(sorted(unknown)[0])
        return event

    def __hash__(self):
        return hash((self.outcomes, tuple(self.mass[o] for o in self.outcomes)))


def parse_space(text):
    """Parse the line-oriented space format.

    ::

        # comments run to end of line
        outcome <label> <p/q>
        event <name> <label> [<label> ...]
    """
    outcomes, mass, events = [], {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        kind = words[0]
        if kind == "outcome":
            if len(words) != 3:
                raise SpaceError(f"line {lineno}: expected 'outcome <label> <p/q>'")
            label = words[1]
            if label in mass:
                raise SpaceError(f"line {lineno}: duplicate outcome label {label!r}")
            if not _LABEL.match(label):
                raise SpaceError(f"line {lineno}: bad outcome label {label!r}")
            try:
                m = Fraction(words[2])
            except (ValueError, ZeroDivisionError):
                raise SpaceError(f"line {lineno}: bad mass {words[2]!r}") from None
            outcomes.append(label)
            mass[label] = m
        elif kind == "event":
            if len(words) < 3:
                raise SpaceError(
                    f"line {lineno}: expected 'event <name> <label> [<label> ...]'")
            name = words[1]
            if name in events:
                raise SpaceError(f"line {lineno}: duplicate event name {name!r}")
            events[name] = words[2:]
        else:
            raise SpaceError(f"line {lineno}: unknown directive {kind!r}")
    return ProbSpace(tuple(outcomes), mass, events)


def read_space(path):
    with open(path, encoding="utf-8") as fh:
        return parse_space(fh.read())


def random_space(rng, max_outcomes=5, max_denominator=12):
    """A random rational space; ``rng`` is a :class:`random.Random`."""
    n = rng.randint(1, max_outcomes)
    den = rng.randint(1, max_denominator)
    # cut 0..den at n-1 points (repeats allowed, giving zero masses)
    cuts = sorted(rng.randint(0, den) for _ in range(n - 1))
    bounds = [0] + cuts + [den]
    labels = [chr(ord("a") + i) for i in range(n)]
    mass = {o: Fraction(bounds[i + 1] - bounds[i], den)
            for i, o in enumerate(labels)}
    return ProbSpace(tuple(labels), mass)


# -- construction ---------------------------------------------------------------

def build_capture(space, depth):
    """An explicit capturing sequence of length ``w^depth``.

    The base pattern has length ``N`` (the common denominator of the masses)
    and lists each outcome ``N * mass`` times in declared order; it is then
    wrapped in ``depth`` omega-repetitions.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    N = lcm(*(m.denominator for m in space.mass.values()))
    pattern = concat([Const(o, Ordinal.coerce(int(space.mass[o] * N)))
                      for o in space.outcomes if space.mass[o]])
    s = pattern
    for _ in range(depth):
        s = RepOmega(s)
    return normalize(s)


def indicator_sequence(x, event, space=None):
    """The 0/1 sequence marking positions of ``x`` that fall in ``event``."""
    members = frozenset(space._members(event) if space is not None else event)
    if space is not None:
        known = set(space.outcomes)
        for v in values(x):
            if v not in known:
                raise UnknownLabel(v)
    one, zero = Fraction(1), Fraction(0)
    return map_values(x, lambda v: one if v in members else zero)


# -- verification ---------------------------------------------------------------

@dataclass(frozen=True)
class EventResult:
    name: str
    members: frozenset
    m: Fraction
    lower: Fraction
    upper: Fraction
    divided: object
    passed: bool

    @property
    def M(self):
        """The mean of the indicator sequence, or ``None``."""
        return self.upper if self.lower == self.upper else None

    def line(self):
        M = "none" if self.M is None else format_value(self.M)
        verdict = "PASS" if self.passed else "FAIL"
        return f"EVENT {self.name} m={format_value(self.m)} M={M} {verdict}"


@dataclass(frozen=True)
class CaptureReport:
    resolution: Ordinal
    events: tuple
    complement_failures: tuple = ()

    @property
    def passed(self):
        return all(e.passed for e in self.events) and not self.complement_failures

    def lines(self):
        out = [e.line() for e in self.events]
        for a, b in self.complement_failures:
            out.append(f"COMPLEMENT {a} {b} FAIL")
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _check_event(space, x, members, resolution, name):
    ind = indicator_sequence(x, members)
    pair = mean_pair(ind)
    m = space.measure(members)
    divided = normalize(divide(ind, resolution))
    ok = (pair.lower == pair.upper == m
          and isinstance(divided, Const) and divided.value == m)
    return EventResult(name, members, m, pair.lower, pair.upper, divided, ok)


def verify_capture(space, x, resolution, all_events=False):
    """Check that ``x`` captures the events of ``space`` at ``resolution``.

    Checked events: the declared ones and their complements, every singleton,
    the empty event and the whole space (or every subset with
    ``all_events=True``).  Each passes when its indicator sequence has mean
    ``m(A)`` and dividing it by ``resolution`` leaves a constant ``m(A)``.
    Raises :class:`~transmean.mean.NotDivisible` if ``resolution`` does not
    divide the length of ``x``.
    """
    resolution = Ordinal.coerce(resolution)
    for v in values(x):
        if v not in space.mass:
            raise UnknownLabel(v)
    everything = frozenset(space.outcomes)
    if all_events:
        todo = list(space.all_events())
    else:
        todo = [frozenset(), everything]
        todo += [frozenset([o]) for o in space.outcomes]
        for ev in space.events.values():
            todo += [ev, everything - ev]
    seen, results = set(), []
    for members in todo:
        if members in seen:
            continue
        seen.add(members)
        results.append(_check_event(space, x, members, resolution,
                                    space.event_name(members)))
    by_members = {r.members: r for r in results}
    bad = []
    for r in results:
        other = by_members.get(everything - r.members)
        if other is None or r.M is None or other.M is None:
            continue
        if r.M + other.M != 1:
            bad.append((r.name, other.name))
    return CaptureReport(resolution, tuple(results), tuple(bad))


def null_robustness_check(space, x, event, nullset):
    """True iff perturbing ``event`` by the null set leaves its mean at ``m(A)``.

    The perturbed event is the symmetric difference ``event ^ nullset``.
    """
    event = space._members(event)
    nullset = space._members(nullset)
    if space.measure(nullset) != 0:
        raise NotNull(f"{space.event_name(nullset)} has mass "
                      f"{format_value(space.measure(nullset))}")
    m = space.measure(event)
    base = mean_pair(indicator_sequence(x, event, space))
    moved = mean_pair(indicator_sequence(x, event ^ nullset, space))
    return base.mean == moved.mean == m


# -- strong-law sampling --------------------------------------------------------

@dataclass(frozen=True)
class SllnReport:
    samples: int
    trials: int
    seed: int
    max_deviation: float
    sigma: float
    exceedances: tuple

    @property
    def bound(self):
        return 3 * self.sigma

    @property
    def degenerate(self):
        """With a single sample, exceedances are reported but not failed."""
        return self.samples == 1

    @property
    def passed(self):
        return self.degenerate or not self.exceedances

    def fields(self):
        return [
            ("samples", str(self.samples)),
            ("trials", str(self.trials)),
            ("seed", str(self.seed)),
            ("max_deviation", f"{self.max_deviation:.6f}"),
            ("sigma", f"{self.sigma:.6f}"),
            ("max_bound", f"{self.bound:.6f}"),
            ("exceedances", str(len(self.exceedances))),
            ("verdict", "PASS" if self.passed else "FAIL"),
        ]

    def lines(self):
        out = [f"{k}={v}" for k, v in self.fields()]
        for trial, name, dev, bound in self.exceedances:
            out.append(f"EXCEED trial={trial} event={name} "
                       f"deviation={dev:.6f} bound={bound:.6f}")
        return out


def slln_trial(space, samples, trials, seed):
    """Sample i.i.d. outcomes and compare event frequencies with their masses.

    Every event (every subset of outcomes) is checked in every trial; an event
    is flagged when its deviation reaches ``3*sqrt(m(1-m)/samples)`` (for a
    zero bound, any nonzero deviation is flagged).  Each trial draws from its
    own generator spawned from ``seed``, so results do not depend on trial
    order.
    """
    import numpy as np

    if samples < 1:
        raise ValueError("samples must be at least 1")
    probs = np.array([float(space.mass[o]) for o in space.outcomes])
    probs /= probs.sum()
    events = list(space.all_events())
    index = {o: i for i, o in enumerate(space.outcomes)}
    masks = np.zeros((len(events), len(space.outcomes)), dtype=np.int64)
    for j, ev in enumerate(events):
        for o in ev:
            masks[j, index[o]] = 1
    m = np.array([float(space.measure(ev)) for ev in events])
    bounds = 3 * np.sqrt(m * (1 - m) / samples)
    exact_zero = np.array([space.measure(ev) in (0, 1) for ev in events])
    sigma = float(np.max(np.sqrt(m * (1 - m) / samples)))

    worst = 0.0
    flagged = []
    for t, child in enumerate(np.random.SeedSequence(seed).spawn(trials)):
        rng = np.random.default_rng(child)
        counts = np.bincount(rng.choice(len(probs), size=samples, p=probs),
                             minlength=len(probs))
        freq = masks @ counts / samples
        dev = np.abs(freq - m)
        worst = max(worst, float(dev.max()))
        for j in np.flatnonzero(np.where(exact_zero, dev > 0, dev >= bounds)):
            flagged.append((t, space.event_name(events[j]),
                            float(dev[j]), float(bounds[j])))
    return SllnReport(samples, trials, seed, worst, sigma, tuple(flagged))
