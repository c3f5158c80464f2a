"""Exact modular arithmetic on machine-sized integers.

Everything here works on plain Python ints, so overflow cannot happen; the
``MAX_MODULUS`` ceiling exists to keep trial division and brute-force scans
at desk scale and is enforced wherever a modulus enters the package.
"""
from __future__ import annotations

from math import gcd, isqrt
from typing import NamedTuple

from .errors import DomainError

MAX_MODULUS = 2**31

__all__ = [
    "MAX_MODULUS",
    "Factorization",
    "factorize",
    "is_prime",
    "euler_phi",
    "multiplicative_order",
    "units",
    "order_p_elements",
    "order_p_elements_bruteforce",
    "mod_inverse",
    "crt_split",
    "crt_combine",
]


class Factorization(NamedTuple):
    """Prime-power factors of ``n`` in ascending prime order."""

    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.factors)

    def exponent(self, q: int) -> int:
        for prime, e in self.factors:
            if prime == q:
                return e
        return 0

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{q}^{e}" if e > 1 else str(q) for q, e in self.factors)


def _check_modulus(n: int, name: str = "N") -> None:
    if n > MAX_MODULUS:
        raise DomainError(f"{name}={n} exceeds the supported ceiling 2^31")


def factorize(n: int) -> Factorization:
    """Factor ``n`` by deterministic trial division.

    >>> factorize(126).factors
    ((2, 1), (3, 2), (7, 1))
    """
    if n < 2:
        raise DomainError(f"cannot factor {n}: need n >= 2")
    _check_modulus(n)
    factors = []
    m = n
    q = 2
    while q * q <= m:
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            factors.append((q, e))
        q += 1 if q == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % q for q in range(3, isqrt(n) + 1, 2))


def euler_phi(n: int) -> int:
    """Count of units modulo ``n``; ``euler_phi(1) == 1``."""
    if n < 1:
        raise DomainError(f"euler_phi needs n >= 1, got {n}")
    if n == 1:
        return 1
    out = 1
    for q, e in factorize(n).factors:
        out *= q ** (e - 1) * (q - 1)
    return out


def multiplicative_order(a: int, m: int) -> int:
    """Smallest ``d >= 1`` with ``a**d == 1 (mod m)``.

    Walks the divisors of ``euler_phi(m)`` instead of powering one step at a time.
    """
    if m < 2:
        raise DomainError(f"modulus must be >= 2, got {m}")
    a %= m
    if gcd(a, m) != 1:
        raise DomainError(f"{a} is not a unit modulo {m}")
    order = euler_phi(m)
    for q, e in factorize(order).factors if order > 1 else ():
        for _ in range(e):
            if pow(a, order // q, m) == 1:
                order //= q
            else:
                break
    return order


def units(m: int) -> list[int]:
    return [a for a in range(1, m) if gcd(a, m) == 1] if m > 1 else [0]


def order_p_elements(p: int, r: int) -> set[int]:
    """Units of multiplicative order exactly ``p`` modulo ``2 p**r``.

    For ``r >= 2`` these are ``2 i p**(r-1) + 1`` for ``i = 1..p-1``. For ``r == 1``
    the unit group has order ``p - 1`` and there are none; the closed-form
    candidates are then not even units, so the set is empty.
    """
    if p == 2 or not is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    m = 2 * p**r
    _check_modulus(m, "2p^r")
    if r == 1:
        return set()
    g = 2 * p ** (r - 1) + 1
    out = {pow(g, i, m) for i in range(1, p)}
    if out != {(2 * i * p ** (r - 1) + 1) % m for i in range(1, p)}:
        raise AssertionError("power form and linear form of order-p units disagree")
    for alpha in out:
        if multiplicative_order(alpha, m) != p:
            raise AssertionError(f"{alpha} does not have order {p} mod {m}")
    return out


def order_p_elements_bruteforce(p: int, r: int) -> set[int]:
    """Scan every unit of Z_{2p^r}; the oracle for :func:`order_p_elements`."""
    m = 2 * p**r
    out = set()
    for a in units(m):
        x, d = a, 1
        while x != 1:
            x = x * a % m
            d += 1
        if d == p:
            out.add(a)
    return out


def mod_inverse(a: int, m: int) -> int:
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    if m == 1:
        return 0
    try:
        return pow(a, -1, m)
    except ValueError:
        raise DomainError(f"{a} is not invertible modulo {m}") from None


def crt_split(a: int, m1: int, m2: int) -> tuple[int, int]:
    if gcd(m1, m2) != 1:
        raise DomainError(f"moduli {m1} and {m2} are not coprime")
    return a % m1, a % m2


def crt_combine(a1: int, a2: int, m1: int, m2: int) -> int:
    """Unique ``a`` in ``[0, m1*m2)`` with ``a = a1 (mod m1)`` and ``a = a2 (mod m2)``."""
    if gcd(m1, m2) != 1:
        raise DomainError(f"moduli {m1} and {m2} are not coprime")
    # a = a1 + m1 * t with m1 * t = a2 - a1 (mod m2)
    t = (a2 - a1) * mod_inverse(m1, m2) % m2
    return (a1 + m1 * t) % (m1 * m2)
