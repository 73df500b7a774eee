"""Residue classes, finite systems of them, and their covering functions.

A system ``{a_1(n_1), ..., a_k(n_k)}`` with integer weights ``lam_s`` has the
covering function

    w(x) = sum of lam_s over all s with x = a_s (mod n_s)

which is periodic modulo N = lcm(n_1, ..., n_k). Everything that needs the
whole function over one period goes through :func:`profile`, which refuses
when N exceeds a caller-supplied cap.
"""

from __future__ import annotations

import math
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .arith import divisors, euler_phi, lcm_all
from .errors import InvalidModulusError, PeriodTooLargeError

DEFAULT_CAP = 10**7

# Profiles whose |values| could exceed this are built with Python ints.
_INT64_HEADROOM = 1 << 62


@dataclass(frozen=True, order=True)
class ResidueClass:
    """The class ``residue (mod modulus)``, always stored normalized."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidModulusError(f"modulus must be >= 1, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(
                f"residue {self.residue} not normalized for modulus {self.modulus}; "
                "use make_class()"
            )

    def __contains__(self, x):
        return (x - self.residue) % self.modulus == 0

    def __str__(self):
        return f"{self.residue}({self.modulus})"


def make_class(a, n):
    """Return the residue class ``a (mod n)`` with residue reduced into ``[0, n)``."""
    a = operator.index(a)
    n = operator.index(n)
    if n < 1:
        raise InvalidModulusError(f"modulus must be >= 1, got {n}")
    return ResidueClass(a % n, n)


_CLASS_RE = re.compile(r"\s*(-?\d+)\s*\(\s*(\d+)\s*\)\s*")


@dataclass(frozen=True)
class ResidueSystem:
    """An ordered, nonempty sequence of residue classes with optional weights."""

    classes: tuple[ResidueClass, ...]
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        classes = tuple(self.classes)
        if not classes:
            raise ValueError("a residue system needs at least one class")
        for c in classes:
            if not isinstance(c, ResidueClass):
                raise TypeError(f"expected ResidueClass, got {type(c).__name__}")
        object.__setattr__(self, "classes", classes)
        if self.weights is not None:
            weights = tuple(operator.index(w) for w in self.weights)
            if len(weights) != len(classes):
                raise ValueError(
                    f"{len(weights)} weights given for {len(classes)} classes"
                )
            object.__setattr__(self, "weights", weights)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], weights: Sequence[int] | None = None):
        return cls(tuple(make_class(a, n) for a, n in pairs),
                   None if weights is None else tuple(weights))

    @classmethod
    def parse(cls, text: str, weights: Sequence[int] | None = None):
        """Parse ``"1(2), 2(4), 0(12)"`` (braces optional)."""
        body = text.strip().strip("{}")
        pairs = []
        for chunk in body.split(","):
            if not chunk.strip():
                continue
            match = _CLASS_RE.fullmatch(chunk)
            if match is None:
                raise ValueError(f"cannot parse residue class {chunk.strip()!r}")
            pairs.append((int(match.group(1)), int(match.group(2))))
        return cls.from_pairs(pairs, weights)

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __str__(self):
        body = ", ".join(str(c) for c in self.classes)
        if self.weights is None:
            return "{" + body + "}"
        return "{" + body + "} weights " + str(list(self.weights))

    @property
    def k(self):
        return len(self.classes)

    @property
    def moduli(self):
        return tuple(c.modulus for c in self.classes)

    @property
    def residues(self):
        return tuple(c.residue for c in self.classes)

    @property
    def lam(self):
        """Weights with the unit default filled in."""
        return self.weights if self.weights is not None else (1,) * len(self.classes)

    @property
    def has_unit_weights(self):
        return self.weights is None or all(w == 1 for w in self.weights)

    @property
    def has_distinct_moduli(self):
        return len(set(self.moduli)) == len(self.classes)

    @cached_property
    def lcm(self):
        return lcm_all(self.moduli)

    def as_set(self):
        return frozenset(self.classes)

    def unweighted(self):
        return ResidueSystem(self.classes)


@dataclass(frozen=True, eq=False)
class Profile:
    """Covering-function values ``w(0), ..., w(N-1)`` over one period."""

    period: int
    values: np.ndarray

    def __post_init__(self):
        if len(self.values) != self.period:
            raise ValueError(f"{len(self.values)} values for period {self.period}")

    def __len__(self):
        return self.period

    def __getitem__(self, x):
        return int(self.values[x % self.period])

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return self.period == other.period and np.array_equal(self.values, other.values)

    __hash__ = None

    def tolist(self):
        return [int(v) for v in self.values]

    def mean(self):
        return Fraction(int(self.values.sum()), self.period)


def system_lcm(system: ResidueSystem) -> int:
    return system.lcm


def multiplicity(system: ResidueSystem, x: int) -> int:
    """Weighted number of classes of ``system`` containing ``x``; any N allowed."""
    total = 0
    for c, lam in zip(system.classes, system.lam):
        if (x - c.residue) % c.modulus == 0:
            total += lam
    return total


def _check_cap(period, cap):
    if cap is not None and period > cap:
        raise PeriodTooLargeError(period, cap)


@lru_cache(maxsize=256)
def _evaluate(system: ResidueSystem, length: int) -> np.ndarray:
    """w(0..length-1) as a read-only array; ``length`` must be a multiple of N."""
    lam = system.lam
    if sum(abs(w) for w in lam) < _INT64_HEADROOM:
        out = _kernels.fill_profile(
            np.array(system.residues, dtype=np.int64),
            np.array(system.moduli, dtype=np.int64),
            np.array(lam, dtype=np.int64),
            length,
        )
    else:
        out = np.zeros(length, dtype=object)
        out[:] = 0
        for c, w in zip(system.classes, lam):
            out[c.residue::c.modulus] += w
    out.flags.writeable = False
    return out


def profile(system: ResidueSystem, cap: int | None = DEFAULT_CAP) -> Profile:
    """Dense covering function over one period ``[0, N)``."""
    period = system.lcm
    _check_cap(period, cap)
    return Profile(period, _evaluate(system, period))


def mean_value(system: ResidueSystem) -> Fraction:
    """Average of w over a period, i.e. the sum of lam_s / n_s."""
    return sum((Fraction(w, n) for w, n in zip(system.lam, system.moduli)), Fraction(0))


def _spread(values):
    if values.dtype == object:
        return math.gcd(*(int(v - values[0]) for v in values))
    return _kernels.spread_gcd(values)


def range_and_spread(system: ResidueSystem, cap: int | None = DEFAULT_CAP):
    """Return ``(range of w, g)`` where g is the gcd of all ``w(x) - w(0)``.

    ``g == 0`` exactly when w is constant. For m >= 1 the range lies in a
    single residue class mod m iff ``m | g``.
    """
    values = profile(system, cap).values
    return frozenset(int(v) for v in np.unique(values)), int(_spread(values))


def _has_period(values, p, m):
    if values.dtype == object:
        n = len(values)
        for x in range(n):
            diff = values[(x + p) % n] - values[x]
            if (diff != 0) if m == 0 else (diff % m != 0):
                return False
        return True
    return _kernels.has_period(values, p, m)


def minimal_period(system: ResidueSystem, m: int = 0, cap: int | None = DEFAULT_CAP) -> int:
    """Smallest n0 >= 1 with w(x + n0) = w(x) (mod m) for all x.

    ``m = 0`` asks for exact equality; negative m is treated as ``|m|``. The
    answer always divides N, so only divisors of N are tried.
    """
    m = abs(operator.index(m))
    if m == 1:
        return 1
    prof = profile(system, cap)
    if m > 2 * sum(abs(w) for w in system.lam):
        # every |w(y) - w(x)| is below m, so congruence is equality
        m = 0
    for p in divisors(prof.period):
        if _has_period(prof.values, p, m):
            return p
    raise AssertionError("N itself is always a period")  # pragma: no cover


def maximal_moduli(system: ResidueSystem):
    """Moduli n_t with no s != t such that n_t | n_s, plus a distinctness flag.

    A repeated modulus divides its twin, so repeated top moduli drop out.
    Returns ``(sorted tuple, flag)``.
    """
    mods = system.moduli
    top = []
    for t, nt in enumerate(mods):
        if not any(ns % nt == 0 for s, ns in enumerate(mods) if s != t):
            top.append(nt)
    top.sort()
    return tuple(top), len(set(top)) == len(top)


def constancy_window_size(system: ResidueSystem) -> int:
    """Size of S = {r / n_s : 0 <= r < n_s} as a set of rationals.

    A fraction r/n in lowest terms j/e has e | n, so S is partitioned by
    reduced denominator e over the union of divisors of the moduli, each e
    contributing phi(e) elements.
    """
    denominators = set()
    for n in set(system.moduli):
        denominators.update(divisors(n))
    return sum(euler_phi(e) for e in denominators)


def is_cover(system: ResidueSystem, cap: int | None = DEFAULT_CAP) -> bool:
    """True iff every integer lies in some class (weights are ignored)."""
    values = profile(system.unweighted(), cap).values
    return bool(values.min() >= 1)
