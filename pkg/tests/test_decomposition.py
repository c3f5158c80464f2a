import itertools
from math import gcd

import numpy as np
import pytest

from semidirect_hsp.decomposition import (
    check_hypothesis,
    decompose,
    hypothesis_violations,
    locate_k,
    map_element,
    product_mul,
    split_subgroup,
    unmap_element,
)
from semidirect_hsp.errors import DomainError, TheoryViolation
from semidirect_hsp.group import Element, GroupSpec, validate_spec
from semidirect_hsp.subgroups import closure, subgroup_lattice_bruteforce


def order3_units(n):
    return [a for a in range(2, n) if gcd(a, n) == 1 and pow(a, 3, n) == 1]


def test_locate_k_examples():
    assert locate_k(45, 3) == (0, 2)
    assert locate_k(18, 3) == (1, 2)
    with pytest.raises(DomainError):
        locate_k(20, 3)
    # 15 = 3 * 5 meets the hypothesis but 9 does not divide it: no order-3 unit exists
    assert check_hypothesis(15, 3)
    assert order3_units(15) == []
    with pytest.raises(DomainError, match="no order-3 unit"):
        locate_k(15, 3)


def test_check_hypothesis_examples():
    assert check_hypothesis(45, 3)
    assert not check_hypothesis(35, 3) and hypothesis_violations(35, 3) == [7]
    assert check_hypothesis(18, 3)
    assert hypothesis_violations(63, 3) == [7]


@pytest.mark.parametrize(
    "spec, m0, inner",
    [((45, 3, 31), 5, (9, 3, 4)), ((45, 3, 16), 5, (9, 3, 7)), ((18, 3, 7), 2, (9, 3, 7))],
)
def test_decompose_examples(spec, m0, inner):
    dec = decompose(validate_spec(*spec))
    assert dec.coprime_modulus == m0
    s = dec.semidirect_spec
    assert (s.N, s.p, s.phi11) == inner
    assert pow(s.phi11, 3, s.N) == 1 and s.phi11 != 1
    assert dec.to_dict()["M0"] == m0


def test_decompose_rejects():
    with pytest.raises(DomainError, match="divides q - 1"):
        decompose(validate_spec(63, 3, 4))
    with pytest.raises(DomainError, match="direct product"):
        decompose(validate_spec(45, 3, 1))


def test_decompose_loud_on_theory_violation(monkeypatch):
    import semidirect_hsp.decomposition as mod

    # 4 has order 3 mod 63 but acts nontrivially mod 7; only reachable if the hypothesis check is bypassed
    monkeypatch.setattr(mod, "hypothesis_violations", lambda N, p: [])
    with pytest.raises(TheoryViolation):
        mod.decompose(GroupSpec(63, 3, 4))


@pytest.mark.parametrize("N", [18, 45, 63, 90])
def test_componentwise_action(N):
    fac_p = 9
    m0 = N // fac_p
    for phi in order3_units(N):
        for alpha in range(3):
            twist = pow(phi, alpha, N)
            assert all(a * twist % N % fac_p == 0 for a in range(0, N, fac_p))
            assert all(a * twist % N % m0 == 0 for a in range(0, N, m0))


@pytest.mark.parametrize("N", [18, 45, 63, 90, 135])
def test_twist_trivial_off_p_part(N):
    m0 = N // 3 ** next(e for e in range(10, 0, -1) if N % 3**e == 0)
    units = order3_units(N)
    assert units
    if check_hypothesis(N, 3):
        assert all(phi % m0 == 1 % m0 for phi in units)
        for phi in units:
            assert decompose(validate_spec(N, 3, phi)).coprime_modulus == m0
    else:
        assert any(phi % m0 != 1 for phi in units)


def test_map_element_examples():
    dec = decompose(validate_spec(45, 3, 31))
    assert map_element(dec, Element(0, 0)) == (0, (0, 0))
    assert map_element(dec, Element(5, 0)) == (0, (5, 0))
    assert unmap_element(dec, 0, Element(5, 0)) == (5, 0)


@pytest.mark.parametrize("spec", [(45, 3, 31), (45, 3, 16), (18, 3, 13), (90, 3, 61), (135, 3, 91)], ids=str)
def test_map_element_is_isomorphism(spec):
    G = validate_spec(*spec)
    dec = decompose(G)
    images = {map_element(dec, g) for g in G.elements()}
    assert len(images) == G.order
    for g in G.elements():
        assert unmap_element(dec, *map_element(dec, g)) == g
    pairs = itertools.product(G.elements(), repeat=2)
    if G.order > 200:
        rng = np.random.default_rng(0)
        elems = list(G.elements())
        pairs = [(elems[i], elems[j]) for i, j in rng.integers(0, G.order, (5000, 2))]
    for g, h in pairs:
        assert map_element(dec, G.mul(g, h)) == product_mul(dec, map_element(dec, g), map_element(dec, h))


def test_split_subgroup_examples():
    G = validate_spec(45, 3, 31)
    dec = decompose(G)
    e = Element(0, 0)
    assert split_subgroup(dec, [(0, e)]) == ({0}, {e})
    whole = [map_element(dec, g) for g in G.elements()]
    h0, h1 = split_subgroup(dec, whole)
    assert h0 == set(range(5)) and h1 == set(dec.semidirect_spec.elements())
    H = [map_element(dec, g) for g in closure([Element(9, 0)], G)]
    h0, h1 = split_subgroup(dec, H)
    assert h0 == set(range(5)) and h1 == {e}
    with pytest.raises(TheoryViolation):
        split_subgroup(dec, [(0, e), (1, Element(3, 0))])


@pytest.mark.parametrize("phi", [31, 16])
def test_split_subgroup_roundtrip(phi):
    G = validate_spec(45, 3, phi)
    dec = decompose(G)
    subgroups = subgroup_lattice_bruteforce(G)
    assert len(subgroups) == 20
    for H in subgroups:
        image = {map_element(dec, g) for g in H}
        h0, h1 = split_subgroup(dec, image)
        assert {(c, g) for c in h0 for g in h1} == image
