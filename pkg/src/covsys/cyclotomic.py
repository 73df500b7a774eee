"""Exact arithmetic in Z[zeta_d] and the exponential sums of covering systems.

Elements are integer coordinate vectors in the power basis
``1, z, ..., z^(phi(d)-1)`` of ``Z[zeta_d]``, fully reduced modulo the d-th
cyclotomic polynomial. Because the ring of integers of Q(zeta_d) is Z[zeta_d]
with exactly this basis, an element is divisible by a rational integer m in
the ring of algebraic integers iff m divides every coordinate.

No floating point is used anywhere in this module.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import factorint
from sympy import mobius

from . import _kernels
from .arith import divisors, euler_phi
from .errors import InvalidFrequencyError, OrderMismatchError
from .residue import DEFAULT_CAP, ResidueSystem, profile


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients lowest degree first, no trailing zeros."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [operator.index(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPolynomial(out)

    def __neg__(self):
        return IntPolynomial(-v for v in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(other * v for v in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    out[i + j] += u * v
        return IntPolynomial(out)

    __rmul__ = __mul__

    def divmod_monic(self, divisor):
        """Quotient and remainder by a monic divisor."""
        dc = divisor.coeffs
        if not dc or dc[-1] != 1:
            raise ValueError("divisor must be monic")
        deg = len(dc) - 1
        rem = list(self.coeffs)
        if len(rem) <= deg:
            return IntPolynomial(), self
        quot = [0] * (len(rem) - deg)
        for i in range(len(rem) - 1, deg - 1, -1):
            c = rem[i]
            if c:
                quot[i - deg] = c
                base = i - deg
                for j in range(deg):
                    if dc[j]:
                        rem[base + j] -= c * dc[j]
                rem[i] = 0
        return IntPolynomial(quot), IntPolynomial(rem[:deg])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            mag = abs(c)
            body = str(mag) if (mag != 1 or i == 0) else ""
            if body and mono:
                body += "*"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body + mono))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out


def _mul_binomial(p, e):
    """p * (x^e - 1)."""
    out = [0] * (len(p) + e)
    for i, v in enumerate(p):
        out[i + e] += v
        out[i] -= v
    return out


def _div_binomial(p, e):
    """p / (x^e - 1), exact."""
    n = len(p) - e
    q = [0] * n
    for i in range(n):
        q[i] = -p[i] + (q[i - e] if i >= e else 0)
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(d: int) -> IntPolynomial:
    """The d-th cyclotomic polynomial, monic of degree phi(d).

    Built from ``prod_{e | r} (x^e - 1)^mu(r/e)`` on the squarefree kernel r of
    d, then ``Phi_d(x) = Phi_r(x^(d/r))``.
    """
    d = operator.index(d)
    if d < 1:
        raise ValueError(f"cyclotomic order must be >= 1, got {d}")
    rad = math.prod(factorint(d))
    num, den = [1], []
    for e in divisors(rad):
        mu = mobius(rad // e)
        if mu == 1:
            num = _mul_binomial(num, e)
        elif mu == -1:
            den.append(e)
    for e in den:
        num = _div_binomial(num, e)
    stretch = d // rad
    coeffs = [0] * ((len(num) - 1) * stretch + 1)
    for i, c in enumerate(num):
        coeffs[i * stretch] = c
    return IntPolynomial(coeffs)


@lru_cache(maxsize=512)
def _reduction_data(d):
    poly = cyclotomic_poly(d).coeffs
    deg = len(poly) - 1
    low = [(j, c) for j, c in enumerate(poly[:deg]) if c]
    arr = np.array(poly, dtype=np.int64)
    nz = np.array([j for j, _ in low], dtype=np.int64)
    return deg, low, arr, nz


def _reduce(vec, d):
    """Coordinates of ``sum vec[j] z^j`` in the power basis of Z[zeta_d]."""
    deg, low, arr, nz = _reduction_data(d)
    if len(vec) <= deg:
        return tuple(int(v) for v in vec) + (0,) * (deg - len(vec))
    if isinstance(vec, np.ndarray) and vec.dtype == np.int64:
        fits = True
    else:
        fits = max(abs(int(v)) for v in vec) <= _kernels.SAFE_BOUND
    if fits:
        out, ok = _kernels.reduce_monic(np.asarray(vec, dtype=np.int64), arr, nz)
        if ok:
            return tuple(int(v) for v in out)
    v = [int(x) for x in vec]
    for i in range(len(v) - 1, deg - 1, -1):
        c = v[i]
        if c:
            base = i - deg
            for j, pj in low:
                v[base + j] -= c * pj
            v[i] = 0
    return tuple(v[:deg])


@dataclass(frozen=True, eq=False)
class CyclotomicElement:
    """An element of Z[zeta_d] in reduced power-basis coordinates."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"cyclotomic order must be >= 1, got {self.order}")
        coeffs = tuple(operator.index(c) for c in self.coeffs)
        if len(coeffs) != euler_phi(self.order):
            raise ValueError(
                f"order {self.order} needs {euler_phi(self.order)} coordinates, "
                f"got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_vector(cls, order, vec):
        """Reduce an arbitrary coefficient vector in powers of zeta_order."""
        return cls(order, _reduce(vec, order))

    @classmethod
    def from_int(cls, order, n):
        return cls.from_vector(order, [n])

    @classmethod
    def zero(cls, order):
        return cls(order, (0,) * euler_phi(order))

    @classmethod
    def one(cls, order):
        return cls.from_int(order, 1)

    def is_zero(self):
        return not any(self.coeffs)

    def lift(self, order):
        """Same number viewed in Z[zeta_order]; needs ``self.order | order``."""
        if order % self.order:
            raise OrderMismatchError(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        vec = [0] * ((len(self.coeffs) - 1) * step + 1)
        for j, c in enumerate(self.coeffs):
            vec[j * step] = c
        return CyclotomicElement.from_vector(order, vec)

    def _coerce(self, other):
        if isinstance(other, int):
            return CyclotomicElement.from_int(self.order, other)
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        if other.order != self.order:
            raise OrderMismatchError(
                f"orders differ ({self.order} vs {other.order}); lift to a common order first"
            )
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    if v:
                        out[i + j] += u * v
        return CyclotomicElement.from_vector(self.order, out)

    __rmul__ = __mul__

    def scale(self, c):
        c = operator.index(c)
        return CyclotomicElement(self.order, tuple(c * a for a in self.coeffs))

    def __pow__(self, e):
        e = operator.index(e)
        if e < 0:
            raise ValueError("negative powers are not supported")
        result, base = CyclotomicElement.one(self.order), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicElement.from_int(self.order, other)
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        common = math.lcm(self.order, other.order)
        return self.lift(common).coeffs == other.lift(common).coeffs

    __hash__ = None

    def __repr__(self):
        return f"CyclotomicElement(order={self.order}, coeffs={list(self.coeffs)})"

    def __str__(self):
        return str(IntPolynomial(self.coeffs)).replace("x", "z")


def cyc_arith(lhs: CyclotomicElement, rhs: CyclotomicElement, op: str) -> CyclotomicElement:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown ring operation {op!r}")


def cyc_scale(x: CyclotomicElement, c: int) -> CyclotomicElement:
    return x.scale(c)


def from_root(d: int, e: int) -> CyclotomicElement:
    """zeta_d ** e."""
    d = operator.index(d)
    if d < 1:
        raise ValueError(f"cyclotomic order must be >= 1, got {d}")
    vec = [0] * d
    vec[e % d] = 1
    return CyclotomicElement.from_vector(d, vec)


def divisible_by_integer(x: CyclotomicElement, m: int) -> bool:
    """Whether x / m is an algebraic integer (m = 0: whether x = 0)."""
    m = operator.index(m)
    if m < 0:
        raise ValueError(f"divisor must be nonnegative, got {m}")
    if m == 0:
        return x.is_zero()
    return all(c % m == 0 for c in x.coeffs)


def normalize_frequency(c: int, d: int, period: int):
    """Reduce alpha = c/d to lowest terms with 0 < c < d and check alpha*N integral."""
    c, d = operator.index(c), operator.index(d)
    if d < 1:
        raise InvalidFrequencyError(f"frequency denominator must be >= 1, got {d}")
    g = math.gcd(c, d)
    c, d = c // g, d // g
    if d == 1:
        raise InvalidFrequencyError(f"alpha = {c} is an integer")
    if period % d:
        raise InvalidFrequencyError(f"alpha = {c}/{d} has alpha*N not integral for N = {period}")
    return c % d, d


def exp_sum(system: ResidueSystem, c: int, d: int) -> CyclotomicElement:
    """Sum of lam_s * (N/n_s) * zeta^(c*a_s) over classes with alpha*n_s integral.

    Here alpha = c/d in lowest terms and zeta is a primitive root of unity of
    order equal to the reduced denominator; the result lives in that ring.
    """
    N = system.lcm
    c, d = normalize_frequency(c, d, N)
    vec = [0] * d
    for cls, lam in zip(system.classes, system.lam):
        if cls.modulus % d == 0:
            vec[(c * cls.residue) % d] += lam * (N // cls.modulus)
    return CyclotomicElement.from_vector(d, vec)


def fourier_sum(system: ResidueSystem, c: int, d: int, cap: int | None = DEFAULT_CAP) -> CyclotomicElement:
    """sum_{r<N} w(r) zeta^(c r), computed from the dense profile."""
    N = system.lcm
    c, d = normalize_frequency(c, d, N)
    values = profile(system, cap).values
    if values.dtype == object or N * int(np.abs(values).max()) > _kernels.SAFE_BOUND:
        folded = [0] * d
        for r, w in enumerate(values):
            folded[r % d] += int(w)
    else:
        folded = values.reshape(N // d, d).sum(axis=0)
    vec = np.zeros(d, dtype=object) if not isinstance(folded, np.ndarray) else np.zeros(d, dtype=np.int64)
    for j in range(d):
        vec[(c * j) % d] = folded[j]
    return CyclotomicElement.from_vector(d, vec)


def fourier_identity_check(system: ResidueSystem, c: int, d: int, cap: int | None = DEFAULT_CAP) -> bool:
    """Whether the dense Fourier sum of w equals :func:`exp_sum` exactly."""
    return fourier_sum(system, c, d, cap) == exp_sum(system, c, d)


def valid_frequencies(period: int):
    """Every reduced c/d with d | N, d > 1 and 0 < c < d, as ``(c, d)`` pairs."""
    for d in divisors(period):
        if d == 1:
            continue
        for c in range(1, d):
            if math.gcd(c, d) == 1:
                yield c, d
