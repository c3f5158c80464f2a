from math import gcd, prod

import pytest
from hypothesis import given, strategies as st

from semidirect_hsp.errors import DomainError
from semidirect_hsp.modmath import (
    crt_combine,
    crt_split,
    euler_phi,
    factorize,
    mod_inverse,
    multiplicative_order,
    order_p_elements,
    order_p_elements_bruteforce,
)


def order_by_powering(a, m):
    x, d = a % m, 1
    while x != 1:
        x = x * a % m
        d += 1
    return d


@pytest.mark.parametrize(
    "n, expected",
    [(18, ((2, 1), (3, 2))), (45, ((3, 2), (5, 1))), (126, ((2, 1), (3, 2), (7, 1))), (97, ((97, 1),))],
)
def test_factorize_examples(n, expected):
    assert factorize(n).factors == expected


@given(st.integers(2, 10**6))
def test_factorize_product(n):
    fac = factorize(n)
    assert prod(q**e for q, e in fac.factors) == n
    assert list(fac.primes) == sorted(set(fac.primes))
    assert all(all(q % d for d in range(2, int(q**0.5) + 1)) for q in fac.primes)


def test_factorize_rejects():
    with pytest.raises(DomainError):
        factorize(1)
    with pytest.raises(DomainError):
        factorize(2**31 + 1)


@pytest.mark.parametrize("n, expected", [(18, 6), (1, 1), (45, 24)])
def test_euler_phi_examples(n, expected):
    assert euler_phi(n) == expected


@given(st.integers(1, 3000))
def test_euler_phi_counts_units(n):
    assert euler_phi(n) == sum(1 for a in range(n) if gcd(a, n) == 1)


def test_multiplicative_order_examples():
    # 7, 49 = 13, 91 = 1 (mod 18)
    assert [pow(7, i, 18) for i in (1, 2, 3)] == [7, 13, 1]
    assert multiplicative_order(7, 18) == 3
    assert multiplicative_order(1, 18) == 1
    assert multiplicative_order(31, 45) == order_by_powering(31, 45) == 3
    with pytest.raises(DomainError):
        multiplicative_order(3, 18)


@given(st.integers(2, 2000), st.integers(0, 10**6))
def test_order_divides_phi(m, a):
    if gcd(a, m) != 1:
        return
    d = multiplicative_order(a, m)
    assert d == order_by_powering(a, m)
    assert euler_phi(m) % d == 0


@pytest.mark.parametrize("p, r", [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2), (11, 2)])
def test_order_p_elements_match_scan(p, r):
    assert order_p_elements(p, r) == order_p_elements_bruteforce(p, r)


def test_order_p_elements_examples():
    assert order_p_elements(3, 2) == {7, 13}
    # r = 1: the unit group of Z_2p has order p - 1, so nothing has order p
    assert order_p_elements(3, 1) == set()
    assert order_p_elements(5, 1) == set()
    assert order_p_elements_bruteforce(5, 1) == set()
    with pytest.raises(DomainError):
        order_p_elements(2, 3)


def test_mod_inverse_examples():
    assert mod_inverse(2, 5) == 3
    assert mod_inverse(1, 17) == 1
    assert mod_inverse(7, 18) == 13 and 7 * 13 % 18 == 1
    with pytest.raises(DomainError):
        mod_inverse(6, 18)


def test_crt_examples():
    assert crt_split(31, 9, 5) == (4, 1)
    assert crt_combine(0, 0, 9, 5) == 0
    with pytest.raises(DomainError):
        crt_split(4, 6, 4)


@pytest.mark.parametrize("m1, m2", [(9, 5), (2, 9), (27, 5), (8, 15)])
def test_crt_roundtrip(m1, m2):
    for x in range(m1 * m2):
        assert crt_combine(*crt_split(x, m1, m2), m1, m2) == x
