"""Splitting ``Z_N x| Z_p`` into a cyclic factor times a small semi-direct product.

When ``p`` divides no ``q - 1`` over the primes ``q`` of ``N``, the twist is trivial
on every prime-power component except the ``p``-part, so with
``M0 = N / p**r_k`` the CRT map

    (a, b)  ->  (a mod M0, (a mod p**r_k, b))

is an isomorphism onto ``Z_M0 x (Z_{p^r_k} x|_psi Z_p)``. Because ``M0`` is coprime
to the order of the second factor, every subgroup splits as a product.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .errors import DomainError, TheoryViolation
from .group import Element, GroupSpec, validate_spec
from .modmath import crt_combine, factorize, multiplicative_order

__all__ = [
    "DecomposedSpec",
    "locate_k",
    "check_hypothesis",
    "hypothesis_violations",
    "decompose",
    "map_element",
    "unmap_element",
    "split_subgroup",
]


@dataclass(frozen=True)
class DecomposedSpec:
    spec: GroupSpec
    coprime_modulus: int
    semidirect_spec: GroupSpec
    k_index: int
    r_k: int

    @property
    def prime_power(self) -> int:
        return self.semidirect_spec.N

    def to_dict(self) -> dict:
        inner = self.semidirect_spec
        return {
            "N": self.spec.N,
            "p": self.spec.p,
            "phi11": self.spec.phi11,
            "factorization": [list(f) for f in factorize(self.spec.N).factors],
            "k_index": self.k_index,
            "r_k": self.r_k,
            "M0": self.coprime_modulus,
            "inner": [inner.N, inner.p, inner.phi11],
            "hypothesis": check_hypothesis(self.spec.N, self.spec.p),
        }


def hypothesis_violations(N: int, p: int) -> list[int]:
    """Prime factors ``q`` of ``N`` with ``p | q - 1``."""
    return [q for q in factorize(N).primes if (q - 1) % p == 0]


def check_hypothesis(N: int, p: int) -> bool:
    return not hypothesis_violations(N, p)


def locate_k(N: int, p: int) -> tuple[int, int]:
    """Position of ``p`` among the prime factors of ``N`` (0-based) and its exponent.

    Raises when ``p`` does not divide ``N``, and when ``p**2`` does not divide ``N``
    while the hypothesis holds, since then no unit of order ``p`` exists mod ``N``
    and a nontrivial twist is impossible.
    """
    fac = factorize(N)
    if N % p:
        raise DomainError(f"p = {p} does not divide N = {N}")
    k = fac.primes.index(p)
    r_k = fac.factors[k][1]
    if r_k < 2 and check_hypothesis(N, p):
        raise DomainError(
            f"p^2 does not divide N = {N} and p divides no q-1: no order-{p} unit exists"
        )
    return k, r_k


def decompose(spec: GroupSpec) -> DecomposedSpec:
    N, p, phi = spec.N, spec.p, spec.phi11
    bad = hypothesis_violations(N, p)
    if bad:
        raise DomainError(f"p = {p} divides q - 1 for prime factor(s) {bad} of N = {N}")
    if spec.is_direct:
        raise DomainError("phi11 = 1: direct product, nothing to decompose")
    k, r_k = locate_k(N, p)
    q = p**r_k
    m0 = N // q
    if gcd(m0, p) != 1 or m0 * q != N:
        raise TheoryViolation(f"bad split N = {m0} * {q}")
    if phi % m0 != 1 % m0:
        raise TheoryViolation(
            f"phi11 = {phi} acts nontrivially modulo M0 = {m0} although p divides no q-1"
        )
    psi = phi % q
    if psi == 1 or multiplicative_order(psi, q) != p:
        raise TheoryViolation(f"twist {psi} on Z_{q} does not have order {p}")
    return DecomposedSpec(spec, m0, validate_spec(q, p, psi), k, r_k)


def map_element(dec: DecomposedSpec, g) -> tuple[int, Element]:
    a, b = g
    return a % dec.coprime_modulus, Element(a % dec.prime_power, b)


def unmap_element(dec: DecomposedSpec, c0: int, inner) -> Element:
    a = crt_combine(c0, inner[0], dec.coprime_modulus, dec.prime_power)
    return Element(a, inner[1])


def product_mul(dec: DecomposedSpec, u, v) -> tuple[int, Element]:
    """Multiplication in ``Z_M0 x (inner group)``, componentwise."""
    return (u[0] + v[0]) % dec.coprime_modulus, dec.semidirect_spec.mul(u[1], v[1])


def split_subgroup(
    dec: DecomposedSpec, H: Iterable[tuple[int, Element]]
) -> tuple[frozenset, frozenset]:
    """Project a subgroup of the product onto its two factors and check ``H = H0 x H1``."""
    if gcd(dec.coprime_modulus, dec.semidirect_spec.order) != 1:
        raise DomainError("factor orders are not coprime")
    H = frozenset((int(c), Element(*g)) for c, g in H)
    h0 = frozenset(c for c, _ in H)
    h1 = frozenset(g for _, g in H)
    if len(H) != len(h0) * len(h1) or any((c, g) not in H for c in h0 for g in h1):
        raise TheoryViolation("subgroup of the coprime product is not a product of projections")
    return h0, h1
