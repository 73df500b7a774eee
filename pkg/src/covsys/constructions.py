"""Known covers and reproducible random systems.

Random generation uses a fixed, documented generator so that any run can be
replayed bit-for-bit on another machine or in another language:

* ``splitmix64``: state += 0x9E3779B97F4A7C15, then the output mix
  ``z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) *
  0x94D049BB133111EB; z ^= z >> 31`` (all mod 2**64).
* ``Xoshiro256``: xoshiro256** whose four state words are the first four
  splitmix64 outputs from the 64-bit seed.
* ``below(n)``: draw u64 values, reject those >= 2**64 - (2**64 mod n), and
  return the survivor mod n.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

from .errors import ConstructionError
from .residue import DEFAULT_CAP, ResidueSystem, is_cover, make_class

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def splitmix64(seed):
    """Infinite splitmix64 stream from ``seed``."""
    state = seed & MASK64
    while True:
        state = (state + GOLDEN_GAMMA) & MASK64
        yield mix64(state)


def derive_seed(seed, index):
    """The ``index``-th splitmix64 output of ``seed``, in O(1)."""
    return mix64((seed + (index + 1) * GOLDEN_GAMMA) & MASK64)


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256:
    """xoshiro256** seeded through splitmix64."""

    def __init__(self, seed):
        stream = splitmix64(operator.index(seed))
        self.s = [next(stream) for _ in range(4)]

    def next_u64(self):
        s = self.s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def below(self, n):
        """Uniform integer in ``[0, n)``."""
        if n < 1:
            raise ValueError(f"below() needs n >= 1, got {n}")
        if n > 1 << 64:
            raise ValueError("below() supports n <= 2**64")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def randint(self, lo, hi):
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def sample(self, seq, k):
        """k distinct elements by a partial Fisher-Yates shuffle."""
        items = list(seq)
        if k > len(items):
            raise ValueError(f"cannot sample {k} from {len(items)} items")
        for i in range(k):
            j = i + self.below(len(items) - i)
            items[i], items[j] = items[j], items[i]
        return items[:k]


@dataclass(frozen=True)
class GeneratorSpec:
    seed: int
    class_count: int
    modulus_pool: tuple[int, ...]
    distinct_moduli: bool = False

    def __post_init__(self):
        pool = tuple(sorted(set(operator.index(n) for n in self.modulus_pool)))
        if not pool:
            raise ValueError("modulus pool is empty")
        if pool[0] < 2:
            raise ValueError(f"pool moduli must be >= 2, got {pool[0]}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.class_count < 1:
            raise ValueError("class_count must be positive")
        if self.distinct_moduli and self.class_count > len(pool):
            raise ValueError(
                f"cannot draw {self.class_count} distinct moduli from a pool of {len(pool)}"
            )
        object.__setattr__(self, "modulus_pool", pool)


def random_system(spec: GeneratorSpec) -> ResidueSystem:
    """Deterministic random system: moduli from the pool, uniform residues."""
    rng = Xoshiro256(spec.seed)
    return random_system_from(rng, spec.class_count, spec.modulus_pool, spec.distinct_moduli)


def random_system_from(rng, class_count, pool, distinct=False, weights=None):
    if distinct:
        moduli = rng.sample(pool, class_count)
    else:
        moduli = [rng.choice(pool) for _ in range(class_count)]
    pairs = [(rng.below(n), n) for n in moduli]
    return ResidueSystem.from_pairs(pairs, weights)


def erdos_cover(n: int, cap: int | None = DEFAULT_CAP) -> ResidueSystem:
    """Cover with distinct moduli for odd n >= 3.

    Classes ``2^(s-1) (mod 2^s)`` for s = 1..n-1 and ``2^(n-1) i (mod 2^(i-1) n)``
    for i = 1..n. The result is checked by brute force whenever its period
    2^(n-1) n fits under ``cap``.
    """
    n = operator.index(n)
    if n < 3 or n % 2 == 0:
        raise ValueError(f"erdos_cover needs an odd n >= 3, got {n}")
    pairs = [(2 ** (s - 1), 2**s) for s in range(1, n)]
    pairs += [(2 ** (n - 1) * i, 2 ** (i - 1) * n) for i in range(1, n + 1)]
    system = ResidueSystem.from_pairs(pairs)
    if not system.has_distinct_moduli:
        raise ConstructionError(f"erdos_cover({n}) produced repeated moduli")
    if system.lcm != 2 ** (n - 1) * n:
        raise ConstructionError(f"erdos_cover({n}) has unexpected lcm {system.lcm}")
    if (cap is None or system.lcm <= cap) and not is_cover(system, cap):
        raise ConstructionError(f"erdos_cover({n}) failed to cover Z")
    return system


def classic_cover() -> ResidueSystem:
    """{0(2), 0(3), 1(4), 5(6), 7(12)}, the smallest distinct-moduli cover."""
    system = ResidueSystem.from_pairs([(0, 2), (0, 3), (1, 4), (5, 6), (7, 12)])
    if not (system.has_distinct_moduli and is_cover(system)):
        raise ConstructionError("classic cover failed verification")
    return system


def split_cover(rng, class_count, pool):
    """Random exact cover (w = 1 everywhere) obtained by splitting classes.

    Starts from 0(1) and repeatedly replaces some a(n) by the p classes
    a + j n (p n), j < p, while the new modulus stays inside ``pool``.
    Stops early when nothing can be split; returns None if it never split.
    """
    pool_set = set(pool)
    classes = [(0, 1)]
    while len(classes) < class_count:
        options = []
        for idx, (a, n) in enumerate(classes):
            for p in (2, 3, 5, 7):
                if n * p in pool_set and len(classes) - 1 + p <= class_count:
                    options.append((idx, p))
        if not options:
            break
        idx, p = rng.choice(options)
        a, n = classes.pop(idx)
        classes.extend((a + j * n, n * p) for j in range(p))
    if len(classes) < 2:
        return None
    order = rng.sample(range(len(classes)), len(classes))
    return ResidueSystem.from_pairs([classes[i] for i in order])
