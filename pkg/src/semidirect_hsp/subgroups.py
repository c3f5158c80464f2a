"""Subgroups of the canonical groups on ``Z_{2**t0 p**r}``.

Every subgroup ``H`` is pinned down by ``H & <x> = <x**(2**t * p**s)>`` and, when
``H`` leaves ``<x>``, by a single slope ``h``:

* ``C(t,s)``   ``<x**(2^t p^s)>``
* ``T(t,s,h)`` ``<x**(2^t p^s), x**(h 2^t p^(s-1)) * y>`` for ``1 <= s <= r``
* ``Y(t)``     ``<x**(2^t), y>``, the ``s = 0`` member of the previous family
* ``E{...}``   any explicit element set, used by the brute-force side.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

import numpy as np

from .errors import DomainError
from .group import IDENTITY, Element, GroupSpec, canonical_phi, format_element
from .modmath import mod_inverse

__all__ = [
    "CyclicX",
    "TwoGen",
    "YJoin",
    "ExplicitSet",
    "SubgroupDesc",
    "require_canonical",
    "closure",
    "cyclic_elements",
    "enumerate_subgroups",
    "subgroup_lattice_bruteforce",
    "membership",
    "subgroup_elements",
    "coset_label",
    "coset_labels",
    "isomorphism_psi",
    "parse_subgroup",
    "format_subgroup",
]

DEFAULT_MAX_ORDER = 10**6


@dataclass(frozen=True)
class CyclicX:
    t: int
    s: int

    def step(self, p: int) -> int:
        return 2**self.t * p**self.s

    def generators(self, spec: GroupSpec) -> list[Element]:
        return [spec.element(self.step(spec.p), 0)]

    def __str__(self) -> str:
        return f"C({self.t},{self.s})"


@dataclass(frozen=True)
class TwoGen:
    t: int
    s: int
    h: int

    def __post_init__(self):
        if self.s < 1:
            raise DomainError("two-generator family needs s >= 1; use YJoin for s = 0")

    def step(self, p: int) -> int:
        return 2**self.t * p**self.s

    def shift(self, p: int) -> int:
        """Exponent of ``x`` in the second generator."""
        return (self.h % p) * 2**self.t * p ** (self.s - 1)

    def generators(self, spec: GroupSpec) -> list[Element]:
        return [spec.element(self.step(spec.p), 0), spec.element(self.shift(spec.p), 1)]

    def __str__(self) -> str:
        return f"T({self.t},{self.s},{self.h})"


@dataclass(frozen=True)
class YJoin:
    t: int

    def generators(self, spec: GroupSpec) -> list[Element]:
        return [spec.element(2**self.t, 0), spec.y]

    def __str__(self) -> str:
        return f"Y({self.t})"


@dataclass(frozen=True)
class ExplicitSet:
    elements: frozenset

    def generators(self, spec: GroupSpec) -> list[Element]:
        return generating_set(self.elements, spec)

    def __str__(self) -> str:
        return format_subgroup(self)


SubgroupDesc = Union[CyclicX, TwoGen, YJoin, ExplicitSet]


def explicit_subgroup(elements: Iterable, spec: GroupSpec) -> ExplicitSet:
    """Wrap an element set, rejecting anything that is not a subgroup."""
    elems = frozenset(Element(*g) for g in elements)
    if IDENTITY not in elems:
        raise DomainError("element set lacks the identity")
    for g in elems:
        if not spec.is_valid(g):
            raise DomainError(f"{g} is not in normal form for {spec}")
        if spec.inv(g) not in elems:
            raise DomainError(f"element set is not closed under inverse at {g}")
    for g in elems:
        for h in elems:
            if spec.mul(g, h) not in elems:
                raise DomainError(f"element set is not closed under mul at {g}*{h}")
    return ExplicitSet(elems)


def require_canonical(spec: GroupSpec) -> tuple[int, int, int]:
    params = spec.canonical_params()
    if params is None:
        raise DomainError(
            f"{spec} is not a canonical group (N = 2^t0 p^r with phi11 = 1 + 2^t0 p^(r-1))"
        )
    return params


# -- closure and brute force -----------------------------------------------


def closure(gens: Iterable, spec: GroupSpec, max_order: int = DEFAULT_MAX_ORDER) -> frozenset:
    """Subgroup generated by ``gens``, by breadth-first right multiplication.

    In a finite group the monoid generated by a set is already a group, so
    inverses are never taken explicitly.
    """
    if spec.order > max_order:
        raise DomainError(f"|G| = {spec.order} exceeds the closure bound {max_order}")
    gens = [Element(*g) for g in gens]
    gens = [g for g in gens if g != IDENTITY]
    seen = {IDENTITY}
    queue = deque([IDENTITY])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = spec.mul(g, s)
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return frozenset(seen)


def generating_set(elements: Iterable, spec: GroupSpec) -> list[Element]:
    """Greedy generators: keep each element not already in the span of the previous ones."""
    gens: list[Element] = []
    span = frozenset([IDENTITY])
    for g in sorted(elements, key=lambda g: (-spec.element_order(g), g)):
        if g not in span:
            gens.append(g)
            span = closure(gens, spec)
    return gens


def subgroup_lattice_bruteforce(spec: GroupSpec, max_order: int = 5000) -> set[frozenset]:
    """All subgroups, found by closing cyclic subgroups under pairwise joins.

    Independent of the classification: it only uses ``mul``.
    """
    if spec.order > max_order:
        raise DomainError(f"|G| = {spec.order} is too large for lattice search")
    found: dict[frozenset, tuple[Element, ...]] = {}
    for g in spec.elements():
        found.setdefault(closure([g], spec), (g,))
    frontier = list(found.items())
    while frontier:
        new = []
        current = list(found.items())
        for h1, g1 in frontier:
            for h2, g2 in current:
                if h1 <= h2 or h2 <= h1:
                    continue
                gens = g1 + g2
                joined = closure(gens, spec)
                if joined not in found:
                    found[joined] = gens
                    new.append((joined, gens))
        frontier = new
    return set(found)


# -- classification ----------------------------------------------------------


def cyclic_elements(g: Element, spec: GroupSpec, check: bool = False) -> list[Element]:
    """``[x**(a i) y**(b i) for i in range(|g|)]``, which is ``<g>`` as a set.

    ``check=True`` compares with :func:`closure`.
    """
    require_canonical(spec)
    a, b = g
    n = spec.element_order(Element(a, b))
    out = [Element(a * i % spec.N, b * i % spec.p) for i in range(n)]
    if check and frozenset(out) != closure([g], spec):
        raise AssertionError(f"power list of {g} differs from <{g}>")
    return out


def enumerate_subgroups(spec: GroupSpec) -> list[SubgroupDesc]:
    """Every subgroup of a canonical group, once each."""
    p, r, t0 = require_canonical(spec)
    descs: list[SubgroupDesc] = []
    for t in range(t0 + 1):
        descs.extend(CyclicX(t, s) for s in range(r + 1))
        descs.extend(TwoGen(t, s, h) for s in range(1, r + 1) for h in range(p))
        descs.append(YJoin(t))
    unique, seen = [], set()
    for d in descs:
        key = subgroup_elements(d, spec)
        if key not in seen:
            seen.add(key)
            unique.append(d)
    return unique


def membership(H: SubgroupDesc, g, spec: GroupSpec) -> bool:
    a, b = g
    p = spec.p
    if isinstance(H, CyclicX):
        return b == 0 and a % H.step(p) == 0
    if isinstance(H, TwoGen):
        return (a - H.shift(p) * b) % H.step(p) == 0
    if isinstance(H, YJoin):
        return a % 2**H.t == 0
    return Element(a, b) in H.elements


def _membership_mask(H: SubgroupDesc, spec: GroupSpec) -> np.ndarray:
    a = np.arange(spec.N, dtype=np.int64)[:, None]
    b = np.arange(spec.p, dtype=np.int64)[None, :]
    p = spec.p
    if isinstance(H, CyclicX):
        mask = (b == 0) & (a % H.step(p) == 0)
    elif isinstance(H, TwoGen):
        mask = (a - H.shift(p) * b) % H.step(p) == 0
    elif isinstance(H, YJoin):
        mask = (a % 2**H.t == 0) & (b >= 0)
    else:
        mask = np.zeros((spec.N, p), dtype=bool)
        for g in H.elements:
            mask[g[0], g[1]] = True
    return np.broadcast_to(mask, (spec.N, p))


def subgroup_elements(H: SubgroupDesc, spec: GroupSpec) -> frozenset:
    if isinstance(H, ExplicitSet):
        return H.elements
    a_idx, b_idx = np.nonzero(_membership_mask(H, spec))
    return frozenset(Element(int(a), int(b)) for a, b in zip(a_idx, b_idx))


def coset_labels(H: SubgroupDesc, spec: GroupSpec) -> np.ndarray:
    """Flat array (index ``a*p + b``) of the minimal element index of each left coset ``gH``."""
    mask = _membership_mask(H, spec)
    ha, hb = np.nonzero(mask)
    n = spec.order
    idx = np.arange(n)
    ga, gb = idx // spec.p, idx % spec.p
    labels = np.full(n, -1, dtype=np.int64)
    for i in range(n):
        if labels[i] >= 0:
            continue
        ca, cb = spec.mul_arrays(ga[i], gb[i], ha, hb)
        members = ca * spec.p + cb
        labels[members] = members.min()
    return labels


def coset_label(H: SubgroupDesc, g, spec: GroupSpec) -> Element:
    """Lexicographically smallest element of the left coset ``gH``."""
    ha, hb = np.nonzero(_membership_mask(H, spec))
    ca, cb = spec.mul_arrays(g[0], g[1], ha, hb)
    return spec.element_at(int((ca * spec.p + cb).min()))


def isomorphism_psi(i: int, g, spec_from: GroupSpec, spec_to: GroupSpec) -> Element:
    """Map ``x**a y**b`` to ``x**a y**(b / i)`` from the canonical twist to its ``i``-th power."""
    p, r, t0 = require_canonical(spec_from)
    if r < 2:
        raise DomainError("the direct product has no nontrivial twists to map between")
    if not 1 <= i < p:
        raise DomainError(f"i must lie in [1, {p}), got {i}")
    if (spec_to.N, spec_to.p) != (spec_from.N, p) or spec_to.phi11 != pow(
        canonical_phi(p, r, t0), i, spec_from.N
    ):
        raise DomainError(f"target spec is not the {i}-th power twist of {spec_from}")
    return Element(g[0], g[1] * mod_inverse(i, p) % p)


# -- text form -----------------------------------------------------------------

_DESC = re.compile(r"^\s*([CTY])\(\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?(?:,\s*(-?\d+)\s*)?\)\s*$")


def format_subgroup(H: SubgroupDesc) -> str:
    if isinstance(H, ExplicitSet):
        body = ",".join(format_element(g, "tuple") for g in sorted(H.elements))
        return "E{" + body + "}"
    return str(H)


def parse_subgroup(text: str, spec: GroupSpec | None = None) -> SubgroupDesc:
    """Inverse of :func:`format_subgroup`; ``E{...}`` needs ``spec`` for the closure check."""
    s = text.strip()
    if s.startswith("E{") and s.endswith("}"):
        pairs = re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", s[2:-1])
        elems = [Element(int(a), int(b)) for a, b in pairs]
        if spec is None:
            return ExplicitSet(frozenset(elems))
        return explicit_subgroup(elems, spec)
    m = _DESC.match(s)
    if not m:
        raise DomainError(f"cannot parse subgroup descriptor {text!r}")
    kind = m.group(1)
    nums = [int(v) for v in m.group(2, 3, 4) if v is not None]
    arity = {"C": 2, "T": 3, "Y": 1}[kind]
    if len(nums) != arity:
        raise DomainError(f"{kind}(...) takes {arity} integers, got {text!r}")
    if kind == "C":
        desc: SubgroupDesc = CyclicX(*nums)
    elif kind == "T":
        t, s_, h = nums
        desc = TwoGen(t, s_, h % spec.p if spec is not None else h)
    else:
        desc = YJoin(*nums)
    if spec is not None:
        _check_desc_range(desc, spec)
    return desc


def _check_desc_range(desc: SubgroupDesc, spec: GroupSpec) -> None:
    p, r, t0 = require_canonical(spec)
    if not 0 <= desc.t <= t0:
        raise DomainError(f"t = {desc.t} out of range for t0 = {t0}")
    if isinstance(desc, (CyclicX, TwoGen)) and not 0 <= desc.s <= r:
        raise DomainError(f"s = {desc.s} out of range [0, {r}]")
    if isinstance(desc, TwoGen) and not 0 <= desc.h < p:
        raise DomainError(f"h = {desc.h} out of range [0, {p})")
