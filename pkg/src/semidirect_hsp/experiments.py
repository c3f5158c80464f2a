"""Seeded Monte-Carlo and exact-enumeration checks of the solver's success rates."""
from __future__ import annotations

import itertools
import json
import math
import os
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, SolverFailure
from .group import GroupSpec
from .oracle import make_keyed_oracle, make_oracle
from .qsim import RoundOutcome, slope_from
from .solver import DEFAULT_K, decide, solve_2pr, solve_general
from .subgroups import (
    ExplicitSet,
    SubgroupDesc,
    TwoGen,
    format_subgroup,
    subgroup_elements,
)

__all__ = [
    "ExperimentReport",
    "success_bound",
    "success_bound_exact",
    "cyclic_error_bound",
    "decision_rule_error_exact",
    "trial_rng",
    "default_seed",
    "estimate_success",
    "query_scaling",
]

SEED_ENV = "SEMIDIRECT_HSP_SEED"
FAILURE_KINDS = (
    "wrong-h",
    "wrong-family",
    "wrong-intersection",
    "wrong-subgroup",
    "all-rounds-failed",
    "inconsistent-samples",
    "verification",
)


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "20061105"))


def success_bound_exact(p: int, k: int) -> Fraction:
    """``1 - (2^k p - p + 1) / p^k`` as an exact fraction."""
    if p < 3 or k < 1:
        raise DomainError("need an odd prime p and k >= 1")
    return 1 - Fraction(2**k * p - p + 1, p**k)


def success_bound(p: int, k: int) -> float:
    return float(success_bound_exact(p, k))


def cyclic_error_bound(p: int, k: int) -> Fraction:
    """Claimed chance of wrongly declaring a two-generator subgroup when ``H`` is cyclic."""
    if p < 3 or k < 1:
        raise DomainError("need an odd prime p and k >= 1")
    return Fraction(2**k - 1, p ** (k - 1))


def decision_rule_error_exact(p: int, k: int) -> dict[str, Fraction]:
    """Outcome probabilities of :func:`decide` over all ``p^(2k)`` round tuples.

    Each round's ``(c, d)`` is uniform on ``Z_p x Z_p``, which is the exact
    post-measurement law when the hidden subgroup is cyclic.
    """
    if p**(2 * k) > 5**8:
        raise DomainError("enumeration too large")
    outcomes = [RoundOutcome(c, d, slope_from(c, d, p), 0) for c in range(p) for d in range(p)]
    counts = Counter()
    for combo in itertools.product(outcomes, repeat=k):
        verdict = decide(list(combo), 0, 1)
        if verdict is None:
            counts["all-rounds-failed"] += 1
        elif isinstance(verdict, TwoGen):
            counts["incorrect"] += 1
        else:
            counts["correct"] += 1
    total = p ** (2 * k)
    return {key: Fraction(counts[key], total) for key in ("correct", "incorrect", "all-rounds-failed")}


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Counter-based stream for one trial, fixed by ``(seed, trial)`` alone."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(trial,))))


@dataclass
class ExperimentReport:
    group: list[int]
    hidden: str
    solver: str
    k: int
    trials: int
    seed: int
    successes: int
    empirical_success: float
    bound: float
    sigma: float
    failures: dict[str, int]
    queries: dict[str, float]
    keyed_oracle: bool = False
    wall_clock_s: float = field(default=0.0, compare=False)

    @property
    def passes_bound(self) -> bool:
        return self.empirical_success >= self.bound - 3 * self.sigma

    def to_dict(self, timing: bool = False) -> dict:
        out = asdict(self)
        if not timing:
            out.pop("wall_clock_s")
        return out

    def to_json(self, timing: bool = False, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(timing), indent=indent, sort_keys=True)

    def to_csv_row(self) -> list[str]:
        d = self.to_dict()
        return [str(d[key]) for key in sorted(d) if not isinstance(d[key], (dict, list))]


def _classify(result, truth: SubgroupDesc, truth_set: frozenset, spec: GroupSpec) -> str | None:
    if result.elements(spec) == truth_set:
        return None
    got = result.descriptor
    if got is None or isinstance(truth, ExplicitSet):
        return "wrong-subgroup"
    if (got.t, getattr(got, "s", 0)) != (truth.t, getattr(truth, "s", 0)):
        return "wrong-intersection"
    if isinstance(got, TwoGen) and isinstance(truth, TwoGen):
        return "wrong-h"
    return "wrong-family"


def estimate_success(
    spec: GroupSpec,
    H: SubgroupDesc,
    k: int = DEFAULT_K,
    trials: int = 10_000,
    seed: int | None = None,
    keyed: bool = False,
) -> ExperimentReport:
    """Run the solver ``trials`` times on a fixed hidden subgroup and tally the outcomes."""
    if trials < 1:
        raise DomainError("trials must be >= 1")
    seed = default_seed() if seed is None else seed
    oracle = make_keyed_oracle(spec, H, seed) if keyed else make_oracle(spec, H)
    canonical = spec.canonical_params() is not None
    truth_set = subgroup_elements(H, spec)
    failures = Counter({kind: 0 for kind in FAILURE_KINDS})
    queries = []
    start = time.perf_counter()
    for i in range(trials):
        rng = trial_rng(seed, i)
        oracle.reset()
        try:
            if canonical:
                result = solve_2pr(spec, oracle, k, rng)
            else:
                result = solve_general(spec, oracle, k, rng)
        except SolverFailure as exc:
            failures[exc.reason] += 1
            queries.append(oracle.queries)
            continue
        queries.append(result.queries)
        kind = _classify(result, H, truth_set, spec)
        if kind:
            failures[kind] += 1
    elapsed = time.perf_counter() - start
    successes = trials - sum(failures.values())
    bound = success_bound(spec.p, k)
    q = np.array(queries, dtype=float)
    return ExperimentReport(
        group=[spec.N, spec.p, spec.phi11],
        hidden=format_subgroup(H),
        solver="2pr" if canonical else "general",
        k=k,
        trials=trials,
        seed=seed,
        successes=successes,
        empirical_success=successes / trials,
        bound=bound,
        sigma=math.sqrt(bound * (1 - bound) / trials),
        failures=dict(failures),
        queries={"mean": float(q.mean()), "min": float(q.min()), "max": float(q.max())},
        keyed_oracle=keyed,
        wall_clock_s=elapsed,
    )


def query_scaling(
    cases: list[tuple[GroupSpec, SubgroupDesc]], k: int = DEFAULT_K, trials: int = 20, seed: int | None = None
) -> list[dict]:
    """Mean queries per solve and their ratio to ``k + log2 N`` for each case."""
    seed = default_seed() if seed is None else seed
    rows = []
    for spec, H in cases:
        oracle = make_oracle(spec, H)
        counts = []
        for i in range(trials):
            oracle.reset()
            solve_general(spec, oracle, k, trial_rng(seed, i))
            counts.append(oracle.queries)
        mean = float(np.mean(counts))
        scale = k + math.log2(spec.N)
        rows.append({"N": spec.N, "p": spec.p, "phi11": spec.phi11, "hidden": format_subgroup(H),
                     "k": k, "mean_queries": mean, "ratio": mean / scale})
    return rows
