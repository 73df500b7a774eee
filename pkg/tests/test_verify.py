import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covsys import (
    ResidueSystem,
    Verdict,
    check_corollary_1_1,
    check_corollary_1_2,
    check_theorem_1_1,
    check_theorem_1_2,
    check_theorem_1_3,
    power_sum_evidence,
)
from covsys.verify import Item, VerdictReport, theorem_1_3_context

P = ResidueSystem.parse


def test_verdict_is_derived_from_hypothesis_and_items():
    ok = Item("x", "y", "z", True)
    bad = Item("x", "y", "z", False)
    assert VerdictReport("t", True, "", (ok,)).verdict is Verdict.CONSISTENT
    assert VerdictReport("t", True, "", (ok, bad)).verdict is Verdict.FALSIFIED
    assert VerdictReport("t", False, "", (bad,)).verdict is Verdict.VACUOUS
    assert VerdictReport("t", True, "", ()).verdict is Verdict.CONSISTENT


# -- Theorem 1.1 ---------------------------------------------------------------

def test_t11_duplicate_pair():
    rep = check_theorem_1_1(P("0(2), 0(2)"), 2)
    assert rep.hypothesis_satisfied
    assert [i.witness for i in rep.items] == [2, 1]
    assert rep.verdict is Verdict.CONSISTENT


def test_t11_fixture_not_in_class(fixture_system):
    rep = check_theorem_1_1(fixture_system, 2)
    assert not rep.hypothesis_satisfied
    assert rep.details["g"] == 1
    assert rep.verdict is Verdict.VACUOUS


def test_t11_exact_cover_large_m():
    rep = check_theorem_1_1(P("0(2), 1(4), 3(4)"), 100)
    assert rep.hypothesis_satisfied
    assert [i.witness for i in rep.items] == [2, 3, 2]
    assert rep.verdict is Verdict.CONSISTENT


def test_t11_skips_t_with_m_nt_dividing_n():
    # w = 2 on evens, 0 on odds; m = 2, N = 4: m * 2 | 4 so t=1 is exempt
    rep = check_theorem_1_1(P("0(2), 0(4), 2(4)"), 2)
    assert rep.hypothesis_satisfied
    assert [i.subject.split()[0] for i in rep.items] == ["t=2", "t=3"]
    assert rep.verdict is Verdict.CONSISTENT


def test_t11_preconditions(fixture_system):
    with pytest.raises(ValueError):
        check_theorem_1_1(P("0(2)"), 2)
    with pytest.raises(ValueError):
        check_theorem_1_1(ResidueSystem(fixture_system.classes, (1, 1, 1, 1, 2)), 2)
    with pytest.raises(ValueError):
        check_theorem_1_1(fixture_system, 0)


def test_t11_agrees_with_corollary_for_constant_w():
    for text in ("0(2), 1(4), 3(4)", "0(2), 1(2)", "0(3), 1(3), 2(3), 0(1)", "0(2), 1(6), 3(6), 5(6)"):
        s = P(text)
        big = check_theorem_1_1(s, s.lcm + 1)
        cor = check_corollary_1_1(s)
        assert big.verdict is cor.verdict is Verdict.CONSISTENT
        assert [i.witness for i in big.items] == [i.witness for i in cor.items[:-1]]


# -- Corollary 1.1 -------------------------------------------------------------

def test_c11_examples(fixture_system):
    rep = check_corollary_1_1(P("0(2), 1(4), 3(4)"))
    assert rep.verdict is Verdict.CONSISTENT
    assert rep.items[-1].observed == "4, 4"
    assert check_corollary_1_1(P("0(2), 1(2)")).verdict is Verdict.CONSISTENT
    assert check_corollary_1_1(fixture_system).verdict is Verdict.VACUOUS


# -- Corollary 1.2 -------------------------------------------------------------

def test_c12_examples(fixture_system):
    rep = check_corollary_1_2(fixture_system)
    assert rep.verdict is Verdict.CONSISTENT
    assert rep.details["g"] == 1
    parity = rep.items[1].witness
    assert parity["w_even"] % 2 == 0 and parity["w_odd"] % 2 == 1
    assert check_corollary_1_2(P("0(2), 0(2)")).verdict is Verdict.VACUOUS
    rep = check_corollary_1_2(P("0(2), 1(3)"))
    assert rep.verdict is Verdict.CONSISTENT
    assert rep.details["g"] == 1


def test_c12_exhaustive_small():
    classes = [(a, n) for n in (2, 3, 4, 6) for a in range(n)]
    for k in (2, 3):
        for combo in itertools.combinations_with_replacement(classes, k):
            assert check_corollary_1_2(ResidueSystem.from_pairs(combo)).verdict is not Verdict.FALSIFIED


# -- Theorem 1.2 ---------------------------------------------------------------

def test_t12_identical():
    A = P("0(2), 1(4)")
    rep = check_theorem_1_2(A, P("1(4), 0(2)"), 8)
    assert rep.hypothesis_satisfied
    assert rep.verdict is Verdict.CONSISTENT
    trace = [i.subject for i in rep.items[1:]]
    assert trace == ["match d=4", "match d=2"]


@pytest.mark.parametrize("m", [3, 5, 6, 7, 8, 9, 24])
def test_t12_differ_by_one(m):
    rep = check_theorem_1_2(P("0(2), 1(4)"), P("0(2), 3(4)"), m)
    assert rep.details["diff_gcd"] == 1
    assert rep.verdict is Verdict.VACUOUS


def test_t12_m_dividing_n_is_vacuous():
    rep = check_theorem_1_2(P("0(2), 1(4)"), P("0(2), 1(4)"), 2)
    assert rep.verdict is Verdict.VACUOUS


def test_t12_trace_reports_mismatch_and_leftover():
    rep = check_theorem_1_2(P("0(2), 1(4)"), P("0(2), 3(4)"), 5)
    assert [i.passed for i in rep.items] == [False, False]
    rep = check_theorem_1_2(P("0(2), 1(4)"), P("1(4)"), 5)
    assert rep.items[-1].subject == "leftover"


def test_t12_rejects_repeated_moduli():
    with pytest.raises(ValueError):
        check_theorem_1_2(P("0(2), 1(2)"), P("0(2)"), 3)


def test_t12_uniqueness_large_m():
    # Znam/Stein: equal covering functions force equal systems
    classes = [(a, n) for n in (2, 3, 4) for a in range(n)]
    systems = []
    for k in (1, 2):
        for combo in itertools.combinations(classes, k):
            if len({n for _, n in combo}) == k:
                systems.append(ResidueSystem.from_pairs(combo))
    for A, B in itertools.product(systems, repeat=2):
        rep = check_theorem_1_2(A, B, 10**6)
        assert rep.verdict is not Verdict.FALSIFIED
        assert rep.hypothesis_satisfied == (A.as_set() == B.as_set())


# -- Theorem 1.3 ---------------------------------------------------------------

WEIGHTED = ResidueSystem.from_pairs([(0, 2), (1, 2), (0, 3), (1, 3), (2, 3)], (3, 3, -2, -2, -2))


def test_t13_worked_case_m0():
    rep = check_theorem_1_3(WEIGHTED, 0)
    ctx = rep.details["context"]
    assert ctx.n0 == 1
    assert ctx.candidates == (2, 3)
    d2, d3 = ctx.records
    assert (d2.weighted_sum, d2.branch_a, d2.chain) == (18, False, True)
    assert (len(d2.index_set), len(d2.residues), d2.min_ratio, d2.smallest_prime) == (2, 2, 2, 2)
    assert (d3.weighted_sum, d3.branch_a, d3.chain) == (-12, False, True)
    assert (len(d3.index_set), len(d3.residues), d3.min_ratio, d3.smallest_prime) == (3, 3, 3, 3)
    assert rep.verdict is Verdict.CONSISTENT


def test_t13_worked_case_m2():
    rep = check_theorem_1_3(WEIGHTED, 2)
    ctx = rep.details["context"]
    assert ctx.n0 == 1
    assert all(r.branch_a for r in ctx.records)
    assert rep.verdict is Verdict.CONSISTENT


def test_t13_fixture_is_vacuously_consistent(fixture_system):
    rep = check_theorem_1_3(fixture_system, 0)
    assert rep.details["context"].n0 == 12
    assert rep.items == ()
    assert rep.verdict is Verdict.CONSISTENT


def test_t13_index_zero_only_minimum():
    # every class lies in I(2): the minimum comes from n0 = 1 alone
    ctx = theorem_1_3_context(P("0(2), 1(2)"), 0)
    assert ctx.n0 == 1
    (rec,) = ctx.records
    assert (rec.d, rec.index_set, rec.min_ratio, rec.chain) == (2, (1, 2), 2, True)


def test_t13_negative_m_is_abs():
    assert check_theorem_1_3(WEIGHTED, -2).details["m"] == 2


weighted_systems = st.lists(
    st.tuples(st.integers(0, 40), st.integers(1, 12), st.integers(-3, 3)), min_size=2, max_size=5)


@settings(max_examples=200, deadline=None)
@given(weighted_systems, st.integers(0, 8))
def test_t13_never_falsified_and_evidence_holds(rows, m):
    s = ResidueSystem.from_pairs([(a, n) for a, n, _ in rows], [w for *_, w in rows])
    rep = check_theorem_1_3(s, m)
    assert rep.verdict is Verdict.CONSISTENT
    assert all(e.passed for e in rep.evidence)
    for rec in rep.details["context"].records:
        assert isinstance(rec.weighted_sum, int)
        assert rep.details["context"].n0 % rec.d != 0


# -- power sums ----------------------------------------------------------------

def test_power_sum_example():
    rep = power_sum_evidence({1, 3}, {1: 1, 3: 1}, 4, 2)
    u = rep.details["u"]
    assert u == [[0, 0], [-2, 0], [0, 0], [2, 0]]
    assert rep.verdict is Verdict.CONSISTENT


def test_power_sum_zero_and_unit_modulus():
    assert power_sum_evidence({0, 2, 5}, {}, 7, 3).verdict is Verdict.CONSISTENT
    assert power_sum_evidence({1, 2}, {1: 5, 2: -7}, 9, 1).verdict is Verdict.CONSISTENT


def test_power_sum_rejects_bad_residue():
    with pytest.raises(ValueError):
        power_sum_evidence({4}, {4: 1}, 4, 2)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 16).flatmap(lambda d: st.tuples(
    st.just(d),
    st.dictionaries(st.integers(0, d - 1), st.integers(-6, 6), max_size=4),
    st.integers(0, 6))))
def test_power_sum_implication(case):
    d, coeffs, m = case
    rep = power_sum_evidence(set(coeffs), coeffs, d, m)
    assert rep.verdict is not Verdict.FALSIFIED
    if rep.hypothesis_satisfied:
        total = rep.details["u_d"]
        assert (total == 0) if m == 0 else total % m == 0


def test_power_sum_sequence_is_periodic():
    from covsys.cyclotomic import CyclotomicElement

    d, coeffs = 6, {1: 2, 4: -3, 5: 1}

    def u(n):
        vec = [0] * d
        for r, c in coeffs.items():
            vec[(r * n) % d] += c
        return CyclotomicElement.from_vector(d, vec)

    for n in range(0, 13):
        assert u(n + d) == u(n)


def test_reports_serialize(fixture_system):
    for rep in (check_theorem_1_1(fixture_system, 3), check_corollary_1_2(fixture_system),
                check_theorem_1_3(WEIGHTED, 0),
                check_theorem_1_2(P("0(2)"), P("0(2)"), 3)):
        text = json.dumps(rep.to_dict())
        assert json.loads(text)["verdict"] == rep.verdict.value
        assert rep.theorem in rep.render()
