"""Hiding functions: labels constant exactly on the left cosets of a subgroup.

Labels are integers. The plain constructor uses the flat index (``a*p + b``) of
the lexicographically smallest coset member, so a label decodes back to that
element. :func:`make_keyed_oracle` scrambles them with a seeded permutation.

Every oracle counts its queries. A superposition query (one call to
:meth:`HidingOracle.superposition`, however many basis states it touches)
counts once, as does every classical evaluation.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .group import Element, GroupSpec
from .subgroups import (
    ExplicitSet,
    SubgroupDesc,
    _check_desc_range,
    _membership_mask,
    closure,
    coset_labels,
    subgroup_elements,
)

__all__ = [
    "HidingOracle",
    "PulledBackOracle",
    "make_oracle",
    "make_keyed_oracle",
    "verify_hiding",
]

EXHAUSTIVE_LIMIT = 1000
SAMPLED_PAIRS = 100_000


@dataclass
class HidingOracle:
    spec: GroupSpec
    hidden: SubgroupDesc
    table: np.ndarray
    keyed: bool = False
    queries: int = field(default=0, compare=False)

    @property
    def size(self) -> int:
        return self.spec.order

    def superposition(self, indices) -> np.ndarray:
        """Labels of a whole batch of basis states, charged as one query."""
        self.queries += 1
        return self.table[np.asarray(indices, dtype=np.int64)]

    def query_index(self, idx: int) -> int:
        self.queries += 1
        return int(self.table[idx])

    def __call__(self, g) -> int:
        return self.query_index(self.spec.index(Element(*g)))

    def label_of(self, g) -> int:
        """Label without charging a query; for analysis and tests only."""
        return int(self.table[self.spec.index(Element(*g))])

    def coset_rep(self, g) -> Element:
        if self.keyed:
            raise DomainError("keyed oracle labels do not decode to coset representatives")
        return self.spec.element_at(self.label_of(g))

    def reset(self) -> None:
        self.queries = 0


@dataclass
class PulledBackOracle:
    """``f`` composed with an injective homomorphism given as an index table."""

    base: HidingOracle | "PulledBackOracle"
    index_map: np.ndarray

    @property
    def size(self) -> int:
        return len(self.index_map)

    @property
    def queries(self) -> int:
        return self.base.queries

    def superposition(self, indices) -> np.ndarray:
        return self.base.superposition(self.index_map[np.asarray(indices, dtype=np.int64)])

    def query_index(self, idx: int) -> int:
        return self.base.query_index(int(self.index_map[idx]))


def _validate_hidden(spec: GroupSpec, H: SubgroupDesc) -> None:
    if isinstance(H, ExplicitSet):
        if any(not spec.is_valid(g) for g in H.elements):
            raise DomainError("hidden set has elements outside the group")
        if closure(H.elements, spec) != H.elements:
            raise DomainError("hidden set is not a subgroup")
    else:
        _check_desc_range(H, spec)


def make_oracle(spec: GroupSpec, H: SubgroupDesc) -> HidingOracle:
    _validate_hidden(spec, H)
    return HidingOracle(spec, H, coset_labels(H, spec))


def make_keyed_oracle(spec: GroupSpec, H: SubgroupDesc, key: int) -> HidingOracle:
    """Same cosets as :func:`make_oracle`, labels passed through a keyed permutation."""
    base = make_oracle(spec, H)
    perm = np.random.default_rng(key).permutation(spec.order)
    return HidingOracle(spec, H, perm[base.table], keyed=True)


def verify_hiding(oracle: HidingOracle, rng: np.random.Generator | None = None) -> bool:
    """Check ``f(g1) == f(g2)  <=>  g1^-1 g2 in H`` on all pairs, or on a random sample.

    Exhaustive up to ``EXHAUSTIVE_LIMIT`` elements; beyond that ``SAMPLED_PAIRS``
    random pairs, half of them drawn inside a common coset so that both sides of
    the equivalence get exercised.
    """
    spec = oracle.spec
    n = spec.order
    if n > 10**6:
        raise DomainError(f"|G| = {n} too large to verify")
    member = _membership_mask(oracle.hidden, spec).reshape(-1)
    table = oracle.table
    idx = np.arange(n)
    a, b = idx // spec.p, idx % spec.p
    if n <= EXHAUSTIVE_LIMIT:
        ia, ib = spec.inv_arrays(a, b)
        qa, qb = spec.mul_arrays(ia[:, None], ib[:, None], a[None, :], b[None, :])
        same_coset = member[qa * spec.p + qb]
        same_label = table[:, None] == table[None, :]
        return bool(np.array_equal(same_coset, same_label))
    rng = rng or np.random.default_rng(0)
    half = SAMPLED_PAIRS // 2
    i = rng.integers(0, n, SAMPLED_PAIRS)
    j = rng.integers(0, n, SAMPLED_PAIRS)
    h_elems = np.array(sorted(spec.index(g) for g in subgroup_elements(oracle.hidden, spec)))
    hj = h_elems[rng.integers(0, len(h_elems), half)]
    ja, jb = spec.mul_arrays(a[i[:half]], b[i[:half]], hj // spec.p, hj % spec.p)
    j[:half] = ja * spec.p + jb
    ia, ib = spec.inv_arrays(a[i], b[i])
    qa, qb = spec.mul_arrays(ia, ib, a[j], b[j])
    return bool(np.array_equal(member[qa * spec.p + qb], table[i] == table[j]))
