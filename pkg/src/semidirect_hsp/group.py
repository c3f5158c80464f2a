"""Normal-form arithmetic in the semi-direct product Z_N x|_phi Z_p.

Elements are pairs ``(a, b)`` standing for ``x**a * y**b`` with ``0 <= a < N`` and
``0 <= b < p``. The twist is fixed by one integer ``phi11``: conjugating ``x`` by
``y`` multiplies the exponent by ``phi11``, so

    (a1, b1) * (a2, b2) = (a1 + phi11**b1 * a2 mod N, b1 + b2 mod p).

``phi11 == 1`` gives the direct product.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, NamedTuple

import numpy as np

from .errors import DomainError
from .modmath import MAX_MODULUS, is_prime, multiplicative_order

__all__ = [
    "Element",
    "GroupSpec",
    "validate_spec",
    "canonical_phi",
    "canonical_spec",
    "pow_closed_form_2pr",
    "element_order_bruteforce",
    "parse_element",
    "format_element",
]


class Element(NamedTuple):
    """``x**a * y**b``; tuple order is the lexicographic order used for coset labels."""

    a: int
    b: int

    def __str__(self) -> str:
        return format_element(self)


IDENTITY = Element(0, 0)


@dataclass(frozen=True)
class GroupSpec:
    """Parameters ``(N, p, phi11)`` of the group; build with :func:`validate_spec`."""

    N: int
    p: int
    phi11: int
    _phi_pow: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # phi11**b mod N for b in [0, p); mul reads this table
        object.__setattr__(
            self, "_phi_pow", tuple(pow(self.phi11, b, self.N) for b in range(self.p))
        )

    # -- basic structure -------------------------------------------------

    @property
    def order(self) -> int:
        return self.N * self.p

    @property
    def is_direct(self) -> bool:
        return self.phi11 % self.N == 1 % self.N

    @property
    def identity(self) -> Element:
        return IDENTITY

    @property
    def x(self) -> Element:
        return Element(1 % self.N, 0)

    @property
    def y(self) -> Element:
        return Element(0, 1 % self.p)

    def phi_power(self, b: int) -> int:
        return self._phi_pow[b % self.p]

    def phi_table(self) -> np.ndarray:
        return np.array(self._phi_pow, dtype=np.int64)

    def elements(self) -> Iterator[Element]:
        for a in range(self.N):
            for b in range(self.p):
                yield Element(a, b)

    def index(self, g: Element) -> int:
        """Position of ``g`` in the flat ``a * p + b`` layout used by array code."""
        return g.a * self.p + g.b

    def element_at(self, idx: int) -> Element:
        return Element(*divmod(idx, self.p))

    def is_valid(self, g) -> bool:
        return 0 <= g[0] < self.N and 0 <= g[1] < self.p

    def element(self, a: int, b: int = 0) -> Element:
        return Element(a % self.N, b % self.p)

    def canonical_params(self) -> tuple[int, int, int] | None:
        """``(p, r, t0)`` if this is the canonical group on ``Z_{2**t0 p**r}``, else None."""
        n, t0 = self.N, 0
        if n % 2 == 0:
            n //= 2
            t0 = 1
        r = 0
        while n % self.p == 0:
            n //= self.p
            r += 1
        if n != 1 or r == 0:
            return None
        if self.phi11 != canonical_phi(self.p, r, t0):
            return None
        return self.p, r, t0

    # -- arithmetic ------------------------------------------------------

    def mul(self, g1: Element, g2: Element) -> Element:
        return Element(
            (g1[0] + self._phi_pow[g1[1]] * g2[0]) % self.N, (g1[1] + g2[1]) % self.p
        )

    def inv(self, g: Element) -> Element:
        # (a, b)^-1 = (-phi^{-b} a, -b) and phi^{-b} = phi^{p-b}
        nb = (-g[1]) % self.p
        return Element((-self._phi_pow[nb] * g[0]) % self.N, nb)

    def pow(self, g: Element, k: int) -> Element:
        if k < 0:
            g, k = self.inv(g), -k
        result = IDENTITY
        base = Element(*g)
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def mul_arrays(self, a1, b1, a2, b2) -> tuple[np.ndarray, np.ndarray]:
        """Vectorised :meth:`mul` over broadcastable integer arrays."""
        table = self.phi_table()
        a1, b1, a2, b2 = (np.asarray(v, dtype=np.int64) for v in (a1, b1, a2, b2))
        return (a1 + table[b1] * a2) % self.N, (b1 + b2) % self.p

    def inv_arrays(self, a, b) -> tuple[np.ndarray, np.ndarray]:
        table = self.phi_table()
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        nb = (-b) % self.p
        return (-table[nb] * a) % self.N, nb

    def element_order(self, g: Element) -> int:
        """Order of ``g``.

        Canonical groups use the closed form below. Otherwise, for ``b != 0`` the
        ``p``-th power lands in ``<x>`` as ``x**(a*S)`` with ``S`` the geometric sum
        of ``phi11**(j*b)``, and the order is ``p`` times the order of that power.
        """
        a, b = g
        params = self.canonical_params()
        if params is not None:
            p, r, t0 = params
            n = self.N
            if a % p**r == 0 and b != 0:
                return 2**t0 * p ** (r + 1) // gcd(a, n)
            return n // gcd(a, n)
        if b == 0:
            return self.N // gcd(a, self.N)
        geometric = sum(self._phi_pow[j * b % self.p] for j in range(self.p))
        return self.p * (self.N // gcd(a * geometric % self.N, self.N))


def canonical_phi(p: int, r: int, t0: int = 1) -> int:
    """Reference twist ``1 + 2**t0 * p**(r-1)`` on ``Z_{2**t0 p**r}``.

    With ``r == 1`` there is no unit of order ``p`` and the canonical group is the
    direct product, so 1 is returned.
    """
    if r == 1:
        return 1
    return (1 + 2**t0 * p ** (r - 1)) % (2**t0 * p**r)


def canonical_spec(p: int, r: int, t0: int = 1) -> GroupSpec:
    if t0 not in (0, 1):
        raise DomainError(f"t0 must be 0 or 1, got {t0}")
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    return validate_spec(2**t0 * p**r, p, canonical_phi(p, r, t0))


def validate_spec(N: int, p: int, phi11: int) -> GroupSpec:
    """Check that ``phi11`` defines a semi-direct product and return the spec."""
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    if N * p > MAX_MODULUS:
        raise DomainError(f"group order N*p = {N * p} exceeds the supported ceiling 2^31")
    if not is_prime(p):
        raise DomainError(f"p = {p} is not prime")
    if not 1 <= phi11 < N:
        raise DomainError(f"phi11 = {phi11} must lie in [1, {N})")
    if gcd(phi11, N) != 1:
        raise DomainError(f"phi11 = {phi11} is not a unit modulo {N}")
    if pow(phi11, p, N) != 1:
        raise DomainError(f"phi11^p = {pow(phi11, p, N)} != 1 (mod {N})")
    order = multiplicative_order(phi11, N)
    if order not in (1, p):
        raise DomainError(f"phi11 = {phi11} has order {order} modulo {N}, not 1 or {p}")
    return GroupSpec(N, p, phi11)


def pow_closed_form_2pr(a: int, b: int, k: int, p: int, r: int) -> Element:
    """``(x**a y**b)**k`` in the canonical group on ``Z_{2 p**r}``, without multiplying."""
    if p == 2 or not is_prime(p) or r < 2:
        raise DomainError("closed form needs an odd prime p and r >= 2")
    if k < 0:
        raise DomainError("closed form is stated for k >= 0")
    n = 2 * p**r
    return Element(a * k * ((k - 1) * b * p ** (r - 1) + 1) % n, b * k % p)


def element_order_bruteforce(g: Element, spec: GroupSpec) -> int:
    d, h = 1, Element(*g)
    while h != IDENTITY:
        h = spec.mul(h, g)
        d += 1
    return d


_TOKEN = re.compile(r"^([xy])(?:\^(-?\d+))?$")
_TUPLE = re.compile(r"^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")


def parse_element(text: str, spec: GroupSpec | None = None) -> Element:
    """Read ``"x^a*y^b"`` (either factor optional, ``e`` for identity) or ``"(a,b)"``."""
    s = text.strip().replace(" ", "")
    m = _TUPLE.match(s)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
    elif s in ("e", "1"):
        a, b = 0, 0
    else:
        a = b = 0
        seen = ""
        for part in s.split("*"):
            t = _TOKEN.match(part)
            if not t or t.group(1) in seen or (t.group(1) == "x" and "y" in seen):
                raise DomainError(f"cannot parse element {text!r}")
            seen += t.group(1)
            e = int(t.group(2)) if t.group(2) is not None else 1
            if t.group(1) == "x":
                a = e
            else:
                b = e
    if spec is not None:
        return spec.element(a, b)
    if a < 0 or b < 0:
        raise DomainError(f"negative exponent in {text!r} needs a spec to reduce")
    return Element(a, b)


def format_element(g, style: str = "word") -> str:
    if style == "tuple":
        return f"({g[0]},{g[1]})"
    return f"x^{g[0]}*y^{g[1]}"
