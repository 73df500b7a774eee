"""Seeded fuzzing of the theorem checkers.

Case ``i`` of a run with seed ``S`` is generated from its own generator
seeded with ``derive_seed(S, i)``, so a single case can be replayed without
regenerating the ones before it.

Single-system cases cycle through four families chosen by the case's own
generator: unrestricted random, distinct-moduli random, a random system
repeated r >= 2 times (range inside 0 mod r), and a random exact cover
built by class splitting (w = 1). The last two make the hypotheses of
Theorem 1.1 and Corollary 1.1 hold often enough for the checks to bite.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .constructions import Xoshiro256, derive_seed, random_system_from, split_cover
from .document import SystemDocument
from .errors import PeriodTooLargeError
from .residue import DEFAULT_CAP, ResidueSystem
from .verify import (
    Verdict,
    check_corollary_1_1,
    check_corollary_1_2,
    check_theorem_1_1,
    check_theorem_1_2,
    check_theorem_1_3,
)

THEOREMS = ("1.1", "1.2", "1.3", "c1.1", "c1.2")
FAMILIES = ("random", "distinct", "replicated", "split")


def parse_range(text: str):
    """``"2..12"`` -> range(2, 13); ``"2,3,5"`` -> (2, 3, 5); ``"7"`` -> (7,)."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return tuple(range(lo, hi + 1))
    return tuple(int(v) for v in text.split(",") if v.strip())


def single_case(rng: Xoshiro256, k_max: int, pool, weighted=False):
    pool = tuple(pool)
    family = FAMILIES[rng.below(len(FAMILIES))]
    k = rng.randint(2, k_max)
    system = None
    if family == "distinct" and k <= len(pool):
        system = random_system_from(rng, k, pool, distinct=True)
    elif family == "replicated":
        base_k = rng.randint(1, k // 2)
        reps = k // base_k
        base = random_system_from(rng, base_k, pool)
        system = ResidueSystem(base.classes * reps)
    elif family == "split":
        system = split_cover(rng, k, pool)
    if system is None:
        family = "random"
        system = random_system_from(rng, k, pool)
    if weighted:
        system = ResidueSystem(system.classes, tuple(rng.randint(-3, 3) for _ in system.classes))
    return family, system


def pair_case(rng: Xoshiro256, k_max: int, pool):
    pool = tuple(pool)
    k = rng.randint(1, min(k_max, len(pool)))
    A = random_system_from(rng, k, pool, distinct=True)
    kind = rng.below(3)
    if kind == 0:
        order = rng.sample(range(k), k)
        B = ResidueSystem(tuple(A.classes[i] for i in order))
        return "same", A, B
    if kind == 1:
        pairs = [(c.residue, c.modulus) for c in A.classes]
        i = rng.below(k)
        a, n = pairs[i]
        pairs[i] = (a + 1 + rng.below(n - 1), n) if n > 1 else (a, n)
        return "perturbed", A, ResidueSystem.from_pairs(pairs)
    l = rng.randint(1, min(k_max, len(pool)))
    return "independent", A, random_system_from(rng, l, pool, distinct=True)


def fuzz_case(theorem: str, seed: int, index: int, k_max: int, pool):
    """Return ``(family, systems)`` for case ``index`` of a run."""
    rng = Xoshiro256(derive_seed(seed, index))
    if theorem == "1.2":
        family, A, B = pair_case(rng, k_max, pool)
        return family, (A, B)
    family, system = single_case(rng, k_max, pool, weighted=theorem == "1.3")
    return family, (system,)


def _reports(theorem, systems, mods, cap):
    if theorem == "1.1":
        for m in mods:
            yield m, check_theorem_1_1(systems[0], m, cap)
    elif theorem == "1.2":
        for m in mods:
            yield m, check_theorem_1_2(systems[0], systems[1], m, cap)
    elif theorem == "1.3":
        for m in mods:
            yield m, check_theorem_1_3(systems[0], m, cap)
    elif theorem == "c1.1":
        yield None, check_corollary_1_1(systems[0], cap)
    elif theorem == "c1.2":
        yield None, check_corollary_1_2(systems[0], cap)
    else:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")


@dataclass
class FuzzSummary:
    theorem: str
    seed: int
    count: int
    runs: int = 0
    verdicts: Counter = field(default_factory=Counter)
    families: Counter = field(default_factory=Counter)
    systems_with_hypothesis: int = 0
    skipped_over_cap: int = 0
    falsified: list = field(default_factory=list)

    @property
    def consistent(self):
        return self.verdicts[Verdict.CONSISTENT]

    @property
    def vacuous(self):
        return self.verdicts[Verdict.VACUOUS]

    def to_dict(self):
        return {
            "theorem": self.theorem,
            "seed": self.seed,
            "count": self.count,
            "runs": self.runs,
            "consistent": self.consistent,
            "vacuous": self.vacuous,
            "falsified": len(self.falsified),
            "systems_with_hypothesis": self.systems_with_hypothesis,
            "skipped_over_cap": self.skipped_over_cap,
            "families": dict(sorted(self.families.items())),
        }


def run_fuzz(theorem: str, seed: int, count: int, k_max: int = 5, pool=range(2, 13),
             mod_range=range(2, 14), cap: int | None = DEFAULT_CAP, on_report=None) -> FuzzSummary:
    """Run ``count`` generated cases through one checker.

    ``on_report(index, m, systems, report)`` is called for every report, in
    case order.
    """
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")
    if k_max < 2:
        raise ValueError("k must be at least 2")
    pool = tuple(sorted(set(pool)))
    mods = tuple(mod_range)
    summary = FuzzSummary(theorem, seed, count)
    for index in range(count):
        family, systems = fuzz_case(theorem, seed, index, k_max, pool)
        summary.families[family] += 1
        any_hyp = False
        try:
            for m, report in _reports(theorem, systems, mods, cap):
                summary.runs += 1
                summary.verdicts[report.verdict] += 1
                any_hyp |= report.hypothesis_satisfied
                if on_report is not None:
                    on_report(index, m, systems, report)
                if report.verdict is Verdict.FALSIFIED:
                    summary.falsified.append({
                        "index": index,
                        "theorem": theorem,
                        "m": m,
                        "systems": [SystemDocument.from_system(s).to_json() for s in systems],
                        "report": report.to_dict(),
                    })
        except PeriodTooLargeError:
            summary.skipped_over_cap += 1
        summary.systems_with_hypothesis += any_hyp
    return summary
