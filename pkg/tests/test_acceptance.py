"""Acceptance checks. Each prints one PASS/FAIL line, then asserts."""
import time
from math import gcd

import numpy as np
import pytest

from semidirect_hsp.decomposition import check_hypothesis
from semidirect_hsp.experiments import (
    cyclic_error_bound,
    decision_rule_error_exact,
    estimate_success,
    query_scaling,
    success_bound,
    trial_rng,
)
from semidirect_hsp.errors import SolverFailure
from semidirect_hsp.group import IDENTITY, canonical_spec, validate_spec
from semidirect_hsp.modmath import order_p_elements
from semidirect_hsp.oracle import make_oracle
from semidirect_hsp.qsim import post_collapse_distribution, slope_from
from semidirect_hsp.solver import solve_general
from semidirect_hsp.subgroups import (
    CyclicX,
    ExplicitSet,
    TwoGen,
    enumerate_subgroups,
    subgroup_elements,
    subgroup_lattice_bruteforce,
)

SEED = 20061105
DIST_TOL = 1e-9


@pytest.fixture
def report(capsys):
    def emit(name, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        assert ok, detail

    return emit


def test_criterion_01_subgroup_classification(report):
    start = time.perf_counter()
    results = []
    for p, r, t0 in [(3, 1, 1), (3, 2, 1), (5, 1, 1), (3, 2, 0)]:
        G = canonical_spec(p, r, t0)
        got = {subgroup_elements(d, G) for d in enumerate_subgroups(G)}
        results.append(got == subgroup_lattice_bruteforce(G))
    elapsed = time.perf_counter() - start
    report("1 subgroup classification", all(results) and elapsed < 30, f"{results}, {elapsed:.2f}s")


def _order_by_iteration(g, N, p, phi):
    a, b = g
    x, y, n = a, b, 1
    while (x, y) != (0, 0):
        x, y = (x + pow(phi, y, N) * a) % N, (y + b) % p
        n += 1
    return n


def test_criterion_02_order_formulas(report):
    mismatches = 0
    for r in (2, 3):
        G = canonical_spec(3, r)
        for g in G.elements():
            mismatches += G.element_order(g) != _order_by_iteration(g, G.N, G.p, G.phi11)
    report("2 order formulas", mismatches == 0, f"{mismatches} mismatches over Z_18 and Z_54")


def test_criterion_03_order_p_units(report):
    bad = []
    for p, r in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)]:
        m = 2 * p**r
        scan = {u for u in range(1, m) if gcd(u, m) == 1 and pow(u, p, m) == 1 and u != 1}
        if order_p_elements(p, r) != scan:
            bad.append((p, r))
    report("3 order-p units", not bad, f"mismatches {bad}")


def test_criterion_04_post_qft_distribution(report):
    worst = 0.0
    for p in (3, 5, 7):
        G = canonical_spec(p, 2)
        for t in (0, 1):
            for s in (1, 2):
                dist = post_collapse_distribution(G, t, s, CyclicX(t, s))
                worst = max(worst, float(np.abs(dist - 1 / p**2).max()))
                for h in range(p):
                    dist = post_collapse_distribution(G, t, s, TwoGen(t, s, h))
                    want = np.array([[1 / p if (c * h + d) % p == 0 else 0.0 for d in range(p)] for c in range(p)])
                    worst = max(worst, float(np.abs(dist - want).max()))
    report("4 post-QFT distribution", worst <= DIST_TOL, f"max abs deviation {worst:.2e}")


def test_criterion_05_single_round_recovery(report):
    worst, wrong = 0.0, 0
    for p in (3, 5, 7):
        G = canonical_spec(p, 2)
        for t in (0, 1):
            for s in (1, 2):
                for h in range(p):
                    dist = post_collapse_distribution(G, t, s, TwoGen(t, s, h))
                    worst = max(worst, abs(dist[1:, :].sum() - (1 - 1 / p)))
                    for c, d in zip(*np.nonzero(dist > 1e-12)):
                        if c and slope_from(int(c), int(d), p) != h:
                            wrong += 1
    ok = worst < 1e-12 and wrong == 0
    report("5 single-round h recovery", ok, f"|P(c!=0) - (1-1/p)| <= {worst:.1e}, wrong slopes {wrong}")


def test_criterion_06_total_success_bound(report):
    start = time.perf_counter()
    lines, ok = [], True
    cases = {3: (canonical_spec(3, 2), [CyclicX(1, 1), TwoGen(0, 1, 2)]),
             5: (canonical_spec(5, 2), [CyclicX(1, 1), TwoGen(0, 1, 2)])}
    for p, k in [(3, 4), (3, 6), (5, 3)]:
        G, hidden = cases[p]
        for H in hidden:
            rep = estimate_success(G, H, k=k, trials=10_000, seed=SEED)
            floor = success_bound(p, k) - 3 * rep.sigma
            ok &= rep.empirical_success >= floor
            lines.append(f"p={p} k={k} {H}: {rep.empirical_success:.4f} >= {floor:.4f}")
    elapsed = time.perf_counter() - start
    report("6 total success bound", ok and elapsed < 120, "; ".join(lines) + f"; {elapsed:.1f}s")


def test_criterion_07_cyclic_error_claim(report):
    lines, ok = [], True
    for k in (2, 3):
        exact = decision_rule_error_exact(3, k)["incorrect"]
        bound = cyclic_error_bound(3, k)
        ok &= exact <= bound
        lines.append(f"k={k} exact {exact} vs claimed {bound}")
    report("7 cyclic-case error", ok, "; ".join(lines))


def test_criterion_08_end_to_end(report):
    start = time.perf_counter()
    worst, lines = 1.0, []
    for phi in (31, 16):
        G = validate_spec(45, 3, phi)
        lattice = subgroup_lattice_bruteforce(G)
        for H in lattice:
            oracle = make_oracle(G, ExplicitSet(H))
            hits = 0
            for i in range(50):
                oracle.reset()
                try:
                    hits += solve_general(G, oracle, 8, trial_rng(SEED + phi, i)).elements(G) == H
                except SolverFailure:
                    pass
            worst = min(worst, hits / 50)
        lines.append(f"(45,3,{phi}): {len(lattice)} subgroups")
    elapsed = time.perf_counter() - start
    ok = worst >= 0.95 and elapsed < 300
    report("8 end-to-end", ok, "; ".join(lines) + f"; worst rate {worst:.2f}; {elapsed:.1f}s")


def test_criterion_09_twist_trivial_off_p_part(report):
    checked, bad = 0, []
    for N in (18, 45, 63, 90):
        if not check_hypothesis(N, 3):
            continue
        r = 0
        while N % 3 ** (r + 1) == 0:
            r += 1
        m0 = N // 3**r
        for phi in range(2, N):
            if gcd(phi, N) == 1 and pow(phi, 3, N) == 1:
                validate_spec(N, 3, phi)
                checked += 1
                if phi % m0 != 1:
                    bad.append((N, phi))
    report("9 twist trivial off the p-part", checked > 0 and not bad, f"{checked} twists checked, failures {bad}")


def test_criterion_10_query_scaling(report):
    specs = [(18, 7), (54, 19), (45, 31), (135, 91)]
    lines, ok = [], True
    for name, make_h in [("trivial", lambda G: frozenset({IDENTITY})), ("whole", lambda G: frozenset(G.elements()))]:
        cases = []
        for N, phi in specs:
            G = validate_spec(N, 3, phi)
            cases.append((G, ExplicitSet(make_h(G))))
        rows = query_scaling(cases, k=8, trials=20, seed=SEED)
        ratios = [row["ratio"] for row in rows]
        spread = max(ratios) / min(ratios)
        ok &= spread <= 2
        lines.append(f"{name}: queries/(k+log2 N) " + ",".join(f"{x:.2f}" for x in ratios) + f" spread {spread:.2f}")
    report("10 query scaling", ok, "; ".join(lines))
