"""Integer helpers shared across modules (factorization is delegated to sympy)."""

import math
from functools import lru_cache, reduce

from sympy import divisors as _sympy_divisors
from sympy import factorint


def lcm_all(numbers):
    return reduce(math.lcm, numbers, 1)


@lru_cache(maxsize=4096)
def divisors(n):
    """Positive divisors of ``n`` in increasing order."""
    if n < 1:
        raise ValueError(f"divisors() needs a positive integer, got {n}")
    return tuple(int(d) for d in _sympy_divisors(n))


@lru_cache(maxsize=4096)
def euler_phi(n):
    if n < 1:
        raise ValueError(f"euler_phi() needs a positive integer, got {n}")
    result = n
    for p in factorint(n):
        result -= result // p
    return int(result)


def smallest_prime_factor(n):
    if n < 2:
        raise ValueError(f"{n} has no prime factor")
    return int(min(factorint(n)))


def divides(m, z):
    """``m | z`` with the convention that 0 divides only 0."""
    m = abs(m)
    if m == 0:
        return z == 0
    return z % m == 0
