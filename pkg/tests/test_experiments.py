import json
import math
from fractions import Fraction

import pytest

from semidirect_hsp.errors import DomainError
from semidirect_hsp.experiments import (
    SEED_ENV,
    cyclic_error_bound,
    decision_rule_error_exact,
    default_seed,
    estimate_success,
    query_scaling,
    success_bound,
    success_bound_exact,
    trial_rng,
)
from semidirect_hsp.group import canonical_spec, validate_spec
from semidirect_hsp.subgroups import CyclicX, ExplicitSet, TwoGen


def test_success_bound_values():
    assert success_bound_exact(3, 5) == 1 - Fraction(94, 243)
    assert abs(success_bound(3, 5) - 0.613169) < 1e-6
    assert success_bound_exact(5, 4) == Fraction(549, 625)
    assert abs(success_bound(5, 4) - 0.8784) < 1e-12


@pytest.mark.parametrize("p", [3, 5, 7])
def test_success_bound_monotone(p):
    vals = [success_bound_exact(p, k) for k in range(1, 21)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1
    for k in range(1, 21):
        assert abs(success_bound(p, k) - (1 - (2**k * p - p + 1) / p**k)) < 1e-12


def test_cyclic_error_bound_values():
    assert cyclic_error_bound(3, 3) == Fraction(7, 9)
    assert cyclic_error_bound(5, 2) == Fraction(3, 5)


def test_bounds_reject_bad_input():
    with pytest.raises(DomainError):
        success_bound(2, 3)
    with pytest.raises(DomainError):
        cyclic_error_bound(3, 0)


def _closed_form_error(p, k):
    # rounds independent, h-slope uniform on survivors; TwoGen verdict iff all
    # survivors share one slope and at least one survives
    q = Fraction(1, p)
    return p * ((q + (1 - q) * q) ** k - q**k)


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("k", [2, 3, 4])
def test_exact_decision_error_within_bound(p, k):
    exact = decision_rule_error_exact(p, k)
    assert sum(exact.values()) == 1
    assert exact["all-rounds-failed"] == Fraction(1, p**k)
    assert exact["incorrect"] == _closed_form_error(p, k)
    assert exact["incorrect"] <= cyclic_error_bound(p, k)


def test_closed_form_within_bound_for_larger_k():
    for p in (3, 5, 7):
        for k in range(1, 25):
            assert _closed_form_error(p, k) <= cyclic_error_bound(p, k)


def test_exact_error_p3_k3():
    assert decision_rule_error_exact(3, 3)["incorrect"] == Fraction(98, 243)


def test_trial_rng_is_counter_based():
    a = trial_rng(5, 3).random(4)
    b = trial_rng(5, 3).random(4)
    c = trial_rng(5, 4).random(4)
    assert (a == b).all() and not (a == c).all()


def test_default_seed_env(monkeypatch):
    monkeypatch.setenv(SEED_ENV, "77")
    assert default_seed() == 77


def test_report_is_deterministic():
    G = canonical_spec(3, 2)
    r1 = estimate_success(G, CyclicX(0, 1), k=4, trials=200, seed=3)
    r2 = estimate_success(G, CyclicX(0, 1), k=4, trials=200, seed=3)
    assert r1.to_json() == r2.to_json()
    d = json.loads(r1.to_json())
    assert d["trials"] == 200 and 0 <= d["empirical_success"] <= 1
    assert "wall_clock_s" not in d
    assert sum(d["failures"].values()) == 200 - d["successes"]
    assert r1.to_csv_row()


def test_twogen_failures_are_rare():
    G = canonical_spec(3, 2)
    r = estimate_success(G, TwoGen(0, 1, 2), k=5, trials=1000, seed=1)
    assert r.failures["wrong-h"] == r.failures["wrong-family"] == 0
    assert r.empirical_success > 0.99


def test_keyed_oracle_matches_plain():
    G = canonical_spec(3, 2)
    a = estimate_success(G, CyclicX(1, 1), k=4, trials=300, seed=2)
    b = estimate_success(G, CyclicX(1, 1), k=4, trials=300, seed=2, keyed=True)
    assert a.successes == b.successes and a.failures == b.failures


def test_trials_zero_rejected():
    with pytest.raises(DomainError):
        estimate_success(canonical_spec(3, 1), CyclicX(0, 0), trials=0)


def test_general_spec_uses_general_solver():
    G = validate_spec(45, 3, 31)
    r = estimate_success(G, ExplicitSet(frozenset(G.elements())), k=6, trials=20, seed=0)
    assert r.solver == "general" and r.successes == 20


def test_query_scaling_rows():
    rows = query_scaling([(canonical_spec(3, 2), CyclicX(1, 1))], k=6, trials=5, seed=1)
    assert rows[0]["N"] == 18 and rows[0]["mean_queries"] > 6
    assert rows[0]["ratio"] == pytest.approx(rows[0]["mean_queries"] / (6 + math.log2(18)))
