"""Hot integer kernels, compiled with numba when available.

Every kernel exists twice: a numba ``@njit`` version and a pure numpy
version with identical semantics. The active set is chosen once at import:

    COVSYS_KERNELS=numba   (default when numba imports)
    COVSYS_KERNELS=numpy   (force the fallback)

All kernels work on ``int64`` arrays. Callers are responsible for keeping
inputs small enough that no intermediate can overflow; the cyclotomic
reduction kernel additionally checks its own bound and reports failure so the
caller can redo the work with Python integers.
"""

import os
from types import SimpleNamespace

import numpy as np

# Magnitude ceiling kept by the reduction kernel; sums of two such values stay
# inside int64.
SAFE_BOUND = 1 << 61


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def _np_fill_profile(residues, moduli, weights, length):
    out = np.zeros(length, dtype=np.int64)
    for a, n, lam in zip(residues.tolist(), moduli.tolist(), weights.tolist()):
        if lam:
            out[a::n] += lam
    return out


def _np_gcd_reduce(values):
    if values.size == 0:
        return 0
    return int(np.gcd.reduce(np.abs(values)))


def _np_spread_gcd(values):
    return _np_gcd_reduce(values - values[0])


def _np_has_period(values, p, m):
    n = values.size
    if p % n == 0:
        return True
    shifted = np.roll(values, -p)
    if m == 0:
        return bool(np.array_equal(shifted, values))
    return not np.any((shifted - values) % m)


def _np_reduce_monic(vec, poly, nz):
    """Remainder of ``vec`` modulo the monic ``poly``; (remainder, ok)."""
    v = vec.copy()
    deg = poly.size - 1
    if v.size <= deg:
        return v, True
    hmax = int(np.abs(poly[nz]).max()) if nz.size else 1
    limit = SAFE_BOUND // max(hmax, 1)
    low = poly[nz]
    for i in range(v.size - 1, deg - 1, -1):
        c = int(v[i])
        if c == 0:
            continue
        if abs(c) > limit:
            return v[:deg], False
        idx = nz + (i - deg)
        v[idx] -= c * low
        v[i] = 0
        if np.abs(v[idx]).max() > SAFE_BOUND:
            return v[:deg], False
    return v[:deg], True


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

try:
    import numba
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on the environment
    HAVE_NUMBA = False


if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_fill_profile(residues, moduli, weights, length):
        out = np.zeros(length, dtype=np.int64)
        for s in range(residues.size):
            lam = weights[s]
            if lam == 0:
                continue
            n = moduli[s]
            for x in range(residues[s], length, n):
                out[x] += lam
        return out

    @njit(cache=True)
    def _nb_gcd(a, b):
        if a < 0:
            a = -a
        if b < 0:
            b = -b
        while b:
            a, b = b, a % b
        return a

    @njit(cache=True)
    def _nb_gcd_reduce(values):
        g = 0
        for i in range(values.size):
            g = _nb_gcd(g, values[i])
            if g == 1:
                break
        return g

    @njit(cache=True)
    def _nb_spread_gcd(values):
        g = 0
        if values.size == 0:
            return 0
        w0 = values[0]
        for i in range(1, values.size):
            g = _nb_gcd(g, values[i] - w0)
            if g == 1:
                break
        return g

    @njit(cache=True)
    def _nb_has_period(values, p, m):
        n = values.size
        p = p % n
        if p == 0:
            return True
        for x in range(n):
            y = x + p
            if y >= n:
                y -= n
            diff = values[y] - values[x]
            if m == 0:
                if diff != 0:
                    return False
            elif diff % m != 0:
                return False
        return True

    @njit(cache=True)
    def _nb_reduce_monic_impl(v, poly, nz, limit):
        deg = poly.size - 1
        for i in range(v.size - 1, deg - 1, -1):
            c = v[i]
            if c == 0:
                continue
            if c > limit or -c > limit:
                return False
            base = i - deg
            for j in nz:
                t = v[base + j] - c * poly[j]
                if t > SAFE_BOUND or -t > SAFE_BOUND:
                    return False
                v[base + j] = t
            v[i] = 0
        return True

    def _nb_reduce_monic(vec, poly, nz):
        v = vec.copy()
        deg = poly.size - 1
        if v.size <= deg:
            return v, True
        hmax = int(np.abs(poly[nz]).max()) if nz.size else 1
        ok = _nb_reduce_monic_impl(v, poly, nz, SAFE_BOUND // max(hmax, 1))
        return v[:deg], bool(ok)

    numba_impl = SimpleNamespace(
        name="numba",
        fill_profile=_nb_fill_profile,
        gcd_reduce=lambda values: int(_nb_gcd_reduce(values)),
        spread_gcd=lambda values: int(_nb_spread_gcd(values)),
        has_period=lambda values, p, m: bool(_nb_has_period(values, p, m)),
        reduce_monic=_nb_reduce_monic,
    )
else:  # pragma: no cover
    numba = None
    numba_impl = None


numpy_impl = SimpleNamespace(
    name="numpy",
    fill_profile=_np_fill_profile,
    gcd_reduce=_np_gcd_reduce,
    spread_gcd=_np_spread_gcd,
    has_period=_np_has_period,
    reduce_monic=_np_reduce_monic,
)


def _select():
    wanted = os.environ.get("COVSYS_KERNELS", "").strip().lower()
    if wanted == "numpy" or not HAVE_NUMBA:
        return numpy_impl
    if wanted not in ("", "numba"):
        raise ImportError(f"COVSYS_KERNELS must be 'numba' or 'numpy', got {wanted!r}")
    return numba_impl


active = _select()
BACKEND = active.name

fill_profile = active.fill_profile
gcd_reduce = active.gcd_reduce
spread_gcd = active.spread_gcd
has_period = active.has_period
reduce_monic = active.reduce_monic


def warm_up():
    """Trigger compilation of every kernel on tiny inputs."""
    z = np.zeros(1, dtype=np.int64)
    v = fill_profile(z, np.ones(1, dtype=np.int64), np.ones(1, dtype=np.int64), 2)
    spread_gcd(v)
    gcd_reduce(v)
    has_period(v, 1, 0)
    has_period(v, 1, 2)
    reduce_monic(np.arange(3, dtype=np.int64), np.array([1, 1], dtype=np.int64),
                 np.array([0], dtype=np.int64))
