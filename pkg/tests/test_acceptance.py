"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line through ``record_criterion``; the lines
are printed together at the end of the pytest run.
"""

import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from covsys import (
    CyclotomicElement,
    ResidueSystem,
    Verdict,
    check_corollary_1_2,
    check_theorem_1_2,
    check_theorem_1_3,
    constancy_window_size,
    cyclotomic_poly,
    divisible_by_integer,
    erdos_cover,
    exp_sum,
    fourier_identity_check,
    from_root,
    is_cover,
    mean_value,
    minimal_period,
    profile,
    range_and_spread,
)
from covsys.constructions import Xoshiro256, derive_seed, random_system_from
from covsys.cyclotomic import IntPolynomial, valid_frequencies
from covsys.fuzz import fuzz_case, run_fuzz
from covsys.residue import _evaluate

pytestmark = pytest.mark.acceptance

SEED = 20240601


def test_ac1_erdos_construction(record_criterion):
    _evaluate.cache_clear()  # time cold profiles, not ones cached by earlier tests
    start = time.perf_counter()
    failures = []
    for n in (3, 5, 7, 9):
        s = erdos_cover(n)
        N = 2 ** (n - 1) * n
        values, g = range_and_spread(s)
        rep = check_corollary_1_2(s)
        ok = (s.lcm == N and s.has_distinct_moduli and is_cover(s) and len(profile(s).values) == N
              and rep.verdict is Verdict.CONSISTENT and g == 1 and {v % 2 for v in values} == {0, 1})
        if not ok:
            failures.append(n)
    elapsed = time.perf_counter() - start
    passed = not failures and elapsed < 1.0
    record_criterion("AC1 Erdos construction n in {3,5,7,9}", passed,
                     f"failures={failures} runtime={elapsed:.3f}s (< 1 s)")
    assert passed


def test_ac2_fixture_exactness(record_criterion, fixture_system):
    s = fixture_system
    values, g = range_and_spread(s)
    checks = {
        "profile": profile(s).tolist() == [1, 2, 2, 1, 1, 1, 1, 2, 1, 1, 2, 1],
        "mean": mean_value(s) == Fraction(4, 3),
        "range": values == {1, 2},
        "g": g == 1,
        "period": minimal_period(s, 0) == 12,
        "window": constancy_window_size(s) == 12,
        "exp_sum(1/12)": exp_sum(s, 1, 12) == 1,
        "exp_sum(1/2)": exp_sum(s, 1, 2) == 0,
        "fourier": fourier_identity_check(s, 1, 12) and fourier_identity_check(s, 1, 2),
    }
    bad = [k for k, v in checks.items() if not v]
    record_criterion("AC2 fixture exactness", not bad, f"mismatches={bad}")
    assert not bad


def test_ac3_theorem_1_1_fuzz(record_criterion):
    summary = run_fuzz("1.1", SEED, 10_000, k_max=5, pool=range(2, 13), mod_range=range(2, 14))
    falsified = len(summary.falsified)
    passed = falsified == 0 and summary.verdicts[Verdict.CONSISTENT] >= 100 and summary.skipped_over_cap == 0
    record_criterion("AC3 Theorem 1.1 fuzz (10000 systems, m in 2..13)", passed,
                     f"FALSIFIED={falsified} hypothesis-satisfied runs={summary.consistent} "
                     f"systems with hypothesis={summary.systems_with_hypothesis}")
    assert passed


def distinct_moduli_systems(moduli, k_max):
    out = []
    for k in range(1, k_max + 1):
        for mods in itertools.combinations(moduli, k):
            for residues in itertools.product(*(range(n) for n in mods)):
                out.append(ResidueSystem.from_pairs(zip(residues, mods)))
    return out


def test_ac4_theorem_1_2_exhaustive(record_criterion):
    start = time.perf_counter()
    systems = distinct_moduli_systems((2, 3, 4, 6), 3)
    falsified = satisfied = nonequal_satisfied = 0
    uniqueness_bad = 0
    for A, B in itertools.product(systems, repeat=2):
        N = math.lcm(A.lcm, B.lcm)
        same = A.as_set() == B.as_set()
        for m in range(1, 25):
            if N % m == 0:
                continue
            rep = check_theorem_1_2(A, B, m)
            falsified += rep.verdict is Verdict.FALSIFIED
            satisfied += rep.hypothesis_satisfied
            nonequal_satisfied += rep.hypothesis_satisfied and not same
            if m > N and rep.hypothesis_satisfied != same:
                uniqueness_bad += 1
    elapsed = time.perf_counter() - start
    passed = falsified == 0 and uniqueness_bad == 0 and elapsed < 60
    record_criterion("AC4 Theorem 1.2 exhaustive oracle", passed,
                     f"systems={len(systems)} FALSIFIED={falsified} hypothesis-satisfied={satisfied} "
                     f"(A!=B: {nonequal_satisfied}) uniqueness violations={uniqueness_bad} "
                     f"runtime={elapsed:.1f}s (< 60 s)")
    assert passed


def test_ac5_theorem_1_3_worked_case(record_criterion):
    s = ResidueSystem.from_pairs([(0, 2), (1, 2), (0, 3), (1, 3), (2, 3)], (3, 3, -2, -2, -2))
    rep0 = check_theorem_1_3(s, 0)
    ctx = rep0.details["context"]
    got = [(r.d, r.weighted_sum, (len(r.index_set), len(r.residues), r.min_ratio, r.smallest_prime), r.chain)
           for r in ctx.records]
    expected = [(2, 18, (2, 2, 2, 2), True), (3, -12, (3, 3, 3, 3), True)]
    rep2 = check_theorem_1_3(s, 2)
    passed = (ctx.n0 == 1 and got == expected and rep0.verdict is Verdict.CONSISTENT
              and rep2.verdict is Verdict.CONSISTENT
              and all(r.branch_a for r in rep2.details["context"].records))
    record_criterion("AC5 Theorem 1.3 worked case", passed, f"n0={ctx.n0} records={got}")
    assert passed


def test_ac6_cyclotomic_kernel(record_criterion):
    one = IntPolynomial((1,))
    product_ok = True
    for d in range(1, 201):
        prod = one
        for e in range(1, d + 1):
            if d % e == 0:
                prod = prod * cyclotomic_poly(e)
        product_ok &= prod == IntPolynomial.monomial(d) - one
    constant_ok = True
    for d in range(2, 31):
        acc = CyclotomicElement.one(d)
        for r in range(1, d):
            acc = acc * (1 - from_root(d, r))
        constant_ok &= acc == d
    checks = {
        "prod Phi_e = x^d - 1 (d <= 200)": product_ok,
        "Phi_12": str(cyclotomic_poly(12)) == "x^4 - x^2 + 1",
        "Phi_105 has -2": -2 in cyclotomic_poly(105).coeffs,
        "prod (1 - z^r) = d (d <= 30)": constant_ok,
        "1 - z_4 not divisible by 2": divisible_by_integer(1 - from_root(4, 1), 2) is False,
    }
    bad = [k for k, v in checks.items() if not v]
    record_criterion("AC6 cyclotomic kernel", not bad, f"failures={bad}")
    assert not bad


def seeded_system(index, pool, k_max=5, weighted=False, distinct=False):
    rng = Xoshiro256(derive_seed(SEED, index))
    k = rng.randint(1, min(k_max, len(pool)) if distinct else k_max)
    weights = tuple(rng.randint(-3, 3) for _ in range(k)) if weighted else None
    return random_system_from(rng, k, pool, distinct=distinct, weights=weights)


def test_ac7_fourier_identity(record_criterion):
    # N is rejection-sampled into [101, 2000] so 100 distinct frequencies exist
    pool = tuple(range(2, 41))
    systems, index = [], 0
    while len(systems) < 500:
        s = seeded_system(index, pool, weighted=index % 2 == 1)
        index += 1
        if 100 < s.lcm <= 2000:
            systems.append(s)
    failures = sampled = 0
    for i, s in enumerate(systems):
        freqs = list(valid_frequencies(s.lcm))
        rng = Xoshiro256(derive_seed(SEED + 7, i))
        for c, d in rng.sample(freqs, 100):
            sampled += 1
            failures += not fourier_identity_check(s, c, d)
    passed = failures == 0 and sampled == 50_000
    record_criterion("AC7 Fourier identity (500 systems, 100 frequencies each)", passed,
                     f"checks={sampled} failures={failures}")
    assert passed


def longest_cyclic_run(values):
    v = np.asarray(values)
    if (v == v[0]).all():
        return len(v)
    # rotate so the array starts at a value change; runs are then non-wrapping
    start = int(np.flatnonzero(v != np.roll(v, 1))[0])
    v = np.roll(v, -start)
    edges = np.flatnonzero(np.diff(v)) + 1
    bounds = np.concatenate(([0], edges, [len(v)]))
    return int(np.diff(bounds).max())


def test_ac8_period_and_constancy_window(record_criterion):
    pool = tuple(range(2, 13))
    period_bad = 0
    for i in range(1000):
        s = seeded_system(i, pool, distinct=True)
        period_bad += minimal_period(s, 0) != s.lcm

    window_bad = near = constant = 0
    wide_pool = tuple(range(2, 31))
    for i in range(1000):
        s = seeded_system(10_000 + i, wide_pool, k_max=4, weighted=i % 2 == 1)
        values = profile(s).values
        window = constancy_window_size(s)
        run = longest_cyclic_run(values)
        is_constant = run == len(values)
        constant += is_constant
        near += (not is_constant) and run >= window - 1
        if run >= window and not is_constant:
            window_bad += 1
    passed = period_bad == 0 and window_bad == 0
    record_criterion("AC8 minimal period = N and constancy window", passed,
                     f"period violations={period_bad}/1000 window violations={window_bad}/1000 "
                     f"(constant={constant}, non-constant runs within 1 of |S|={near})")
    assert passed


def frequencies_for(N, rng, exhaustive_limit=420):
    if N <= exhaustive_limit:
        return list(valid_frequencies(N))
    out = []
    for d in range(2, N + 1):
        if N % d:
            continue
        units = [c for c in range(1, d) if math.gcd(c, d) == 1]
        picks = {1, d - 1} | set(rng.sample(units, min(4, len(units))))
        out.extend((c, d) for c in sorted(picks))
    return out


def test_ac9_congruence_invariant(record_criterion):
    violations = checked = systems_hit = nonconstant_hit = 0
    for theorem in ("1.1", "1.3"):
        for i in range(1500):
            _, (s,) = fuzz_case(theorem, SEED, i, 5, range(2, 13))
            _, g = range_and_spread(s)
            mods = [m for m in range(2, 14) if g == 0 or g % m == 0]
            if not mods:
                continue
            systems_hit += 1
            nonconstant_hit += g != 0
            rng = Xoshiro256(derive_seed(SEED + 9, i))
            for c, d in frequencies_for(s.lcm, rng):
                x = exp_sum(s, c, d)
                for m in mods:
                    checked += 1
                    violations += not divisible_by_integer(x, m)
    passed = violations == 0 and nonconstant_hit > 0
    record_criterion("AC9 congruence invariant (m | g => m | exp_sum)", passed,
                     f"systems with m | g: {systems_hit} (non-constant w: {nonconstant_hit}) "
                     f"divisibility checks={checked} violations={violations}")
    assert passed
