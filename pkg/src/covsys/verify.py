"""Mechanical hypothesis/conclusion checks for the covering-function theorems.

Each checker evaluates a theorem's hypothesis on a concrete input and, item by
item, its conclusion. The verdict is three-valued:

* ``consistent``: hypothesis holds and every conclusion item passes;
* ``hypothesis-not-satisfied``: nothing to check (not an error);
* ``FALSIFIED``: hypothesis holds but some item fails. For a correct
  implementation of a correct theorem this never happens.

Indices in reports are 1-based, matching the usual ``s = 1..k`` notation.
"""

from __future__ import annotations

import math
import operator
from dataclasses import asdict, dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from . import _kernels
from .arith import divides, divisors, smallest_prime_factor
from .cyclotomic import CyclotomicElement, divisible_by_integer, exp_sum
from .errors import PeriodTooLargeError
from .residue import (
    DEFAULT_CAP,
    ResidueSystem,
    _evaluate,
    maximal_moduli,
    minimal_period,
    profile,
    range_and_spread,
)


class Verdict(str, Enum):
    CONSISTENT = "consistent"
    VACUOUS = "hypothesis-not-satisfied"
    FALSIFIED = "FALSIFIED"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Item:
    """One conclusion (or evidence) record."""

    subject: str
    expected: str
    observed: str
    passed: bool
    witness: object = None


@dataclass(frozen=True)
class VerdictReport:
    theorem: str
    hypothesis_satisfied: bool
    hypothesis_detail: str
    items: tuple[Item, ...] = ()
    evidence: tuple[Item, ...] = ()
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> Verdict:
        if not self.hypothesis_satisfied:
            return Verdict.VACUOUS
        if all(item.passed for item in self.items):
            return Verdict.CONSISTENT
        return Verdict.FALSIFIED

    @property
    def failed_items(self):
        return [item for item in self.items if not item.passed]

    def to_dict(self):
        return {
            "theorem": self.theorem,
            "verdict": self.verdict.value,
            "hypothesis_satisfied": self.hypothesis_satisfied,
            "hypothesis_detail": self.hypothesis_detail,
            "items": [asdict(i) for i in self.items],
            "evidence": [asdict(i) for i in self.evidence],
            "details": _jsonable(self.details),
        }

    def render(self):
        lines = [f"Theorem {self.theorem}: {self.verdict.value}",
                 f"  hypothesis: {'holds' if self.hypothesis_satisfied else 'fails'}"
                 f" ({self.hypothesis_detail})"]
        for item in self.items:
            mark = "ok " if item.passed else "BAD"
            lines.append(f"  [{mark}] {item.subject}: expected {item.expected}; observed {item.observed}")
        for item in self.evidence:
            mark = "ok " if item.passed else "-- "
            lines.append(f"  (evidence {mark}) {item.subject}: {item.expected}; observed {item.observed}")
        return "\n".join(lines)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        seq = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in seq]
    if hasattr(obj, "__dataclass_fields__"):
        return _jsonable(asdict(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def _require_multi(system: ResidueSystem, unit=True):
    if system.k <= 1:
        raise ValueError("theorem checks need k > 1 classes")
    if unit and not system.has_unit_weights:
        raise ValueError("this check is stated for unit weights only")


def _require_positive(m):
    m = operator.index(m)
    if m < 1:
        raise ValueError(f"modulus m must be a positive integer, got {m}")
    return m


def _divisibility_witness(moduli, t):
    nt = moduli[t]
    for s, ns in enumerate(moduli):
        if s != t and ns % nt == 0:
            return s
    return None


def _witness_item(system, t):
    mods = system.moduli
    s = _divisibility_witness(mods, t)
    return Item(
        subject=f"t={t + 1} {system.classes[t]}",
        expected="n_t | n_s for some s != t",
        observed="none" if s is None else f"s={s + 1} {system.classes[s]}",
        passed=s is not None,
        witness=None if s is None else s + 1,
    )


def check_theorem_1_1(system: ResidueSystem, m: int, cap: int | None = DEFAULT_CAP) -> VerdictReport:
    """Range of w inside a residue class mod m forces divisibility witnesses.

    For each t with ``m * n_t`` not dividing N there must be s != t with
    ``n_t | n_s``. When the hypothesis holds, the exponential sum at
    alpha = 1/n_t is recorded as evidence for each t without a witness.
    """
    _require_multi(system)
    m = _require_positive(m)
    values, g = range_and_spread(system, cap)
    N = system.lcm
    hyp = divides(m, g)
    detail = f"range {sorted(values)}, spread g={g}; {'m | g' if hyp else 'm does not divide g'} (m={m})"
    items = [_witness_item(system, t) for t, nt in enumerate(system.moduli) if N % (m * nt)]
    evidence = []
    if hyp:
        for t, nt in enumerate(system.moduli):
            if nt > 1 and _divisibility_witness(system.moduli, t) is None:
                e = exp_sum(system, 1, nt)
                evidence.append(Item(
                    subject=f"alpha=1/{nt}",
                    expected=f"{m} divides the exponential sum",
                    observed=str(e),
                    passed=divisible_by_integer(e, m),
                ))
    return VerdictReport("1.1", hyp, detail, tuple(items), tuple(evidence),
                         {"m": m, "N": N, "g": g, "range": values})


def check_corollary_1_1(system: ResidueSystem, cap: int | None = DEFAULT_CAP) -> VerdictReport:
    """Constant w: every modulus divides another; the two largest coincide."""
    _require_multi(system)
    values, g = range_and_spread(system, cap)
    hyp = g == 0
    detail = f"w constant = {min(values)}" if hyp else f"w not constant (range {sorted(values)})"
    items = [_witness_item(system, t) for t in range(system.k)]
    top = sorted(system.moduli)[-2:]
    items.append(Item(
        subject="largest moduli",
        expected="n_k = n_(k-1) after sorting",
        observed=f"{top[0]}, {top[1]}",
        passed=top[0] == top[1],
    ))
    return VerdictReport("c1.1", hyp, detail, tuple(items), (), {"g": g, "range": values})


def check_corollary_1_2(system: ResidueSystem, cap: int | None = DEFAULT_CAP) -> VerdictReport:
    """Distinct divisibility-maximal moduli: w(Z) lies in no class other than Z."""
    _require_multi(system)
    top, distinct = maximal_moduli(system)
    hyp = bool(top) and distinct
    detail = f"maximal moduli {list(top)}, distinct={distinct}"
    values = profile(system, cap).values
    _, g = range_and_spread(system, cap)
    even = np.flatnonzero(values % 2 == 0)
    odd = np.flatnonzero(values % 2 != 0)
    parity = None
    if even.size and odd.size:
        xe, xo = int(even[0]), int(odd[0])
        parity = {"x_even": xe, "w_even": int(values[xe]), "x_odd": xo, "w_odd": int(values[xo])}
    items = (
        Item("range spread", "g = 1", f"g = {g}", g == 1, g),
        Item("parity", "w takes both parities",
             "none" if parity is None else
             f"w({parity['x_even']})={parity['w_even']}, w({parity['x_odd']})={parity['w_odd']}",
             parity is not None, parity),
    )
    return VerdictReport("c1.2", hyp, detail, items, (), {"g": g, "maximal_moduli": top})


@lru_cache(maxsize=4096)
def _theorem_1_2_core(A: ResidueSystem, B: ResidueSystem, cap):
    N = math.lcm(A.lcm, B.lcm)
    if cap is not None and N > cap:
        raise PeriodTooLargeError(N, cap)
    wa, wb = _evaluate(A, N), _evaluate(B, N)
    if wa.dtype == object or wb.dtype == object:
        G = math.gcd(*(int(x) - int(y) for x, y in zip(wa, wb)))
    else:
        G = _kernels.gcd_reduce(wa - wb)
    return N, int(G), _match_trace(A, B)


def _match_trace(A, B):
    """Strip equal top classes from both systems, largest modulus first."""
    a = sorted(A.classes, key=lambda c: -c.modulus)
    b = sorted(B.classes, key=lambda c: -c.modulus)
    steps = []
    while a and b:
        d = max(a[0].modulus, b[0].modulus)
        ok = a[0] == b[0]
        steps.append(Item(
            subject=f"match d={d}",
            expected=f"both systems contain the same class mod {d}",
            observed=f"A: {a[0]}, B: {b[0]}",
            passed=ok,
        ))
        if not ok:
            return tuple(steps)
        a.pop(0)
        b.pop(0)
    if a or b:
        rest = a or b
        steps.append(Item(
            subject="leftover",
            expected="k = l",
            observed=f"unmatched {', '.join(str(c) for c in rest)}",
            passed=False,
        ))
    return tuple(steps)


def check_theorem_1_2(A: ResidueSystem, B: ResidueSystem, m: int, cap: int | None = DEFAULT_CAP) -> VerdictReport:
    """w_A = w_B (mod m) with m not dividing N forces A = B."""
    for name, sys_ in (("A", A), ("B", B)):
        if not sys_.has_distinct_moduli:
            raise ValueError(f"system {name} must have distinct moduli")
        if not sys_.has_unit_weights:
            raise ValueError(f"system {name} must have unit weights")
    m = _require_positive(m)
    N, G, trace = _theorem_1_2_core(A, B, cap)
    congruent = divides(m, G)
    hyp = congruent and N % m != 0
    detail = (f"N={N}, gcd of w_A - w_B is {G}; "
              f"{'congruent' if congruent else 'not congruent'} mod {m}; "
              f"m {'does not divide' if N % m else 'divides'} N")
    same = A.as_set() == B.as_set()
    items = (Item("A = B", "identical sets of residue classes",
                  "identical" if same else "different", same),) + trace
    return VerdictReport("1.2", hyp, detail, items, (), {"m": m, "N": N, "diff_gcd": G})


@dataclass(frozen=True)
class DivisorRecord:
    d: int
    index_set: tuple[int, ...]
    residues: tuple[int, ...]
    min_ratio: int
    smallest_prime: int
    weighted_sum: int
    branch_a: bool
    chain: bool


@dataclass(frozen=True)
class Theorem13Context:
    n0: int
    records: tuple[DivisorRecord, ...]

    @property
    def candidates(self):
        return tuple(r.d for r in self.records)


def theorem_1_3_context(system: ResidueSystem, m: int, cap: int | None = DEFAULT_CAP) -> Theorem13Context:
    m = abs(operator.index(m))
    n0 = minimal_period(system, m, cap)
    N = system.lcm
    mods, res, lam = system.moduli, system.residues, system.lam
    cands = sorted({d for n in set(mods) for d in divisors(n) if n0 % d})
    records = []
    for d in cands:
        inside = tuple(s for s in range(system.k) if mods[s] % d == 0)
        residues = tuple(sorted({res[s] % d for s in inside}))
        ratios = [d // math.gcd(d, n0)]
        ratios += [d // math.gcd(d, mods[s]) for s in range(system.k) if s not in inside]
        total = 0
        for s in inside:
            assert N % mods[s] == 0
            total += lam[s] * (N // mods[s])
        low = min(ratios)
        p = smallest_prime_factor(d)
        records.append(DivisorRecord(
            d=d,
            index_set=tuple(s + 1 for s in inside),
            residues=residues,
            min_ratio=low,
            smallest_prime=p,
            weighted_sum=total,
            branch_a=divides(m, total),
            chain=len(inside) >= len(residues) >= low >= p,
        ))
    return Theorem13Context(n0, tuple(records))


def check_theorem_1_3(system: ResidueSystem, m: int, cap: int | None = DEFAULT_CAP,
                      evidence: bool = True) -> VerdictReport:
    """Weighted refinement: for each d not dividing the period n0 with I(d)
    nonempty, either m divides N * sum_{I(d)} lam_s/n_s or the chain
    |I(d)| >= |{a_s mod d}| >= min d/(d, n_s) >= p(d) holds.

    ``m = 0`` means the weighted sum must vanish exactly.
    """
    _require_multi(system, unit=False)
    m = abs(operator.index(m))
    ctx = theorem_1_3_context(system, m, cap)
    items, notes = [], []
    for rec in ctx.records:
        chain = f"{len(rec.index_set)} >= {len(rec.residues)} >= {rec.min_ratio} >= {rec.smallest_prime}"
        items.append(Item(
            subject=f"d={rec.d}",
            expected=f"{m} | {rec.weighted_sum} or chain",
            observed=f"branch A {'holds' if rec.branch_a else 'fails'}; "
                     f"chain {chain} {'holds' if rec.chain else 'fails'}",
            passed=rec.branch_a or rec.chain,
            witness={"weighted_sum": rec.weighted_sum, "chain": chain},
        ))
        if evidence and len(rec.residues) < rec.min_ratio:
            coeffs = _power_sum_coefficients(system, rec)
            rep = power_sum_evidence(rec.residues, coeffs, rec.d, m)
            notes.append(Item(
                subject=f"power sums d={rec.d}",
                expected=f"u_1..u_{len(rec.residues)} divisible by {m} (forced), hence u_d",
                observed=rep.verdict.value,
                passed=rep.verdict is Verdict.CONSISTENT,
            ))
    detail = f"minimal period n0={ctx.n0} mod {m}; {len(ctx.records)} candidate d"
    return VerdictReport("1.3", True, detail, tuple(items), tuple(notes),
                         {"m": m, "N": system.lcm, "context": ctx})


def _power_sum_coefficients(system, rec):
    N = system.lcm
    coeffs = {r: 0 for r in rec.residues}
    for s1 in rec.index_set:
        c = system.classes[s1 - 1]
        coeffs[c.residue % rec.d] += system.lam[s1 - 1] * (N // c.modulus)
    return coeffs


def power_sum_evidence(residues, coefficients, d: int, m: int) -> VerdictReport:
    """Check the linear-recurrence step for u_n = sum_r c_r zeta_d^(r n).

    Hypothesis: m divides u_1, ..., u_|R|. Conclusion: m divides every u_n
    for n <= d, in particular u_d = sum of c_r.
    """
    d = operator.index(d)
    m = abs(operator.index(m))
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    R = sorted(set(residues))
    for r in R:
        if not 0 <= r < d:
            raise ValueError(f"residue {r} outside [0, {d})")
    c = {r: operator.index(coefficients.get(r, 0)) for r in R}

    def u(n):
        vec = [0] * d
        for r in R:
            vec[(r * n) % d] += c[r]
        return CyclotomicElement.from_vector(d, vec)

    seq = [u(n) for n in range(1, d + 1)]
    premise = [divisible_by_integer(x, m) for x in seq[:len(R)]]
    hyp = all(premise)
    items = tuple(
        Item(f"u_{n}", f"divisible by {m}", str(seq[n - 1]), divisible_by_integer(seq[n - 1], m))
        for n in range(len(R) + 1, d + 1)
    )
    detail = f"|R|={len(R)}; u_1..u_{len(R)} " + ("all divisible" if hyp else "not all divisible") + f" by {m}"
    return VerdictReport("power-sum", hyp, detail, items, (),
                         {"u": [list(x.coeffs) for x in seq], "u_d": sum(c.values())})
