"""Dense state-vector simulation of the Fourier-sampling steps.

The label register is never stored as amplitudes. Measuring it first and
then discarding it leaves a uniform superposition over the basis states that
share the observed label, so the simulator samples the label from its exact
weight and continues with that collapsed state.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Protocol

import numpy as np

from .errors import DomainError, SolverFailure
from .group import GroupSpec
from .subgroups import SubgroupDesc, require_canonical

__all__ = [
    "QState",
    "RoundOutcome",
    "qft",
    "qft_p",
    "dft_matrix",
    "measure",
    "grid_indices",
    "run_round",
    "collapsed_states",
    "post_collapse_distribution",
    "distribution_records",
    "abelian_hsp_cyclic",
    "default_num_samples",
]

NORM_TOL = 1e-9


class SuperpositionOracle(Protocol):
    def superposition(self, indices) -> np.ndarray: ...

    def query_index(self, idx: int) -> int: ...


@dataclass
class QState:
    """Amplitudes shaped ``dims``, one axis per register."""

    dims: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        self.amps = np.asarray(self.amps, dtype=np.complex128).reshape(self.dims)
        if abs(self.norm() - 1.0) > NORM_TOL:
            raise DomainError(f"state norm {self.norm():.12f} is not 1")

    @classmethod
    def basis(cls, dims, index) -> "QState":
        amps = np.zeros(dims, dtype=np.complex128)
        amps[tuple(index)] = 1.0
        return cls(tuple(dims), amps)

    @classmethod
    def uniform_over(cls, mask: np.ndarray) -> "QState":
        """Equal real amplitudes on the ``True`` entries of ``mask``."""
        mask = np.asarray(mask, dtype=bool)
        count = int(mask.sum())
        if count == 0:
            raise DomainError("empty support")
        return cls(mask.shape, mask / np.sqrt(count))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


def dft_matrix(n: int) -> np.ndarray:
    """``F[k, l] = exp(2 pi i k l / n) / sqrt(n)``, built entry by entry."""
    k = np.arange(n)
    return np.exp(2j * np.pi * np.outer(k, k) / n) / np.sqrt(n)


def qft(state: QState, register: int) -> QState:
    """Apply the Fourier transform ``|l> -> n^-1/2 sum_k e^{2 pi i k l / n} |k>`` to one register."""
    if not 0 <= register < len(state.dims):
        raise DomainError(f"no register {register} in a {len(state.dims)}-register state")
    # numpy's inverse FFT has the +i sign convention; "ortho" gives the 1/sqrt(n)
    return QState(state.dims, np.fft.ifft(state.amps, axis=register, norm="ortho"))


def qft_p(state: QState, register: int, p: int) -> QState:
    if state.dims[register] != p:
        raise DomainError(f"register {register} has size {state.dims[register]}, expected {p}")
    return qft(state, register)


def _sample_index(probs: np.ndarray, rng: np.random.Generator) -> int:
    cdf = np.cumsum(probs.reshape(-1))
    i = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    return min(i, cdf.size - 1)


def _sample_cdf(cdf: list[float], rng: np.random.Generator) -> int:
    return min(bisect_right(cdf, rng.random() * cdf[-1]), len(cdf) - 1)


def measure(state: QState, rng: np.random.Generator) -> tuple[int, ...]:
    """Measure every register; returns the outcome index tuple."""
    return tuple(int(v) for v in np.unravel_index(_sample_index(state.probabilities(), rng), state.dims))


def _fourier_probabilities(mask: np.ndarray) -> np.ndarray:
    state = QState.uniform_over(mask)
    for axis in range(mask.ndim):
        state = qft(state, axis)
    return state.probabilities()


@dataclass(frozen=True)
class _MeasurementModel:
    """Label weights and, per label, the Fourier-sampling law of the collapsed state."""

    shape: tuple[int, ...]
    label_cdf: list[float]
    masks: list[np.ndarray]
    fourier_cdfs: list[list[float]]


def _build_model(shape: tuple[int, ...], labels: np.ndarray) -> _MeasurementModel:
    values, counts = np.unique(labels, return_counts=True)
    masks, cdfs = [], []
    for v in values:
        mask = labels == v
        masks.append(mask)
        cdfs.append(np.cumsum(_fourier_probabilities(mask).reshape(-1)).tolist())
    return _MeasurementModel(shape, np.cumsum(counts).astype(float).tolist(), masks, cdfs)


@lru_cache(maxsize=512)
def _cached_model(shape: tuple[int, ...], label_bytes: bytes) -> _MeasurementModel:
    return _build_model(shape, np.frombuffer(label_bytes, dtype=np.int64).reshape(shape))


def _collapse_and_sample(labels: np.ndarray, rng: np.random.Generator):
    """Measure the label register, then Fourier-sample the collapsed state.

    Returns the outcome index tuple and the collapsed support mask.
    """
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    if labels.size <= 4096:
        model = _cached_model(labels.shape, labels.tobytes())
    else:
        model = _build_model(labels.shape, labels)
    j = _sample_cdf(model.label_cdf, rng)
    flat = _sample_cdf(model.fourier_cdfs[j], rng)
    return tuple(int(v) for v in np.unravel_index(flat, model.shape)), model.masks[j]


# -- the two-register round ---------------------------------------------------


@dataclass(frozen=True)
class RoundOutcome:
    c_tilde: int
    d_tilde: int
    h_tilde: int | None
    a0: int

    @property
    def survived(self) -> bool:
        return self.h_tilde is not None


def slope_from(c: int, d: int, p: int) -> int | None:
    """``-c^(p-2) d mod p``, the slope solving ``c h + d = 0``; None when ``c == 0``."""
    if c % p == 0:
        return None
    return (-pow(c, p - 2, p) * d) % p


def grid_indices(spec: GroupSpec, t: int, s: int) -> np.ndarray:
    """Flat indices of ``x**(a 2^t p^(s-1)) y**b`` for ``a, b`` in ``Z_p``, shape ``(p, p)``."""
    if s < 1:
        raise DomainError("the grid needs s >= 1")
    p = spec.p
    u = 2**t * p ** (s - 1)
    a = np.arange(p)[:, None]
    b = np.arange(p)[None, :]
    return (a * u % spec.N) * p + b


def run_round(spec: GroupSpec, t: int, s: int, oracle: SuperpositionOracle, rng) -> RoundOutcome:
    """One pass of: prepare the grid state, measure labels, Fourier transform, measure."""
    require_canonical(spec)
    p = spec.p
    labels = oracle.superposition(grid_indices(spec, t, s))
    (c, d), mask = _collapse_and_sample(labels, rng)
    rows, cols = np.nonzero(mask)
    first = np.lexsort((rows, cols))[0]
    return RoundOutcome(c, d, slope_from(c, d, p), int(rows[first]))


def collapsed_states(spec: GroupSpec, t: int, s: int, H: SubgroupDesc):
    """Every label outcome of the grid state: ``(probability, a0, post-QFT state)``.

    Analysis mode: the labels come straight from the coset table of ``H``.
    """
    from .oracle import make_oracle

    require_canonical(spec)
    p = spec.p
    labels = make_oracle(spec, H).table[grid_indices(spec, t, s)]
    out = []
    for value in np.unique(labels):
        mask = labels == value
        state = QState.uniform_over(mask)
        state = qft_p(qft_p(state, 0, p), 1, p)
        rows, cols = np.nonzero(mask)
        first = np.lexsort((rows, cols))[0]
        out.append((mask.sum() / p**2, int(rows[first]), state))
    return out


def post_collapse_distribution(spec: GroupSpec, t: int, s: int, H: SubgroupDesc) -> np.ndarray:
    """Exact ``(p, p)`` array of ``P(c, d)`` after step four, averaged over label outcomes."""
    p = spec.p
    dist = np.zeros((p, p))
    for weight, _, state in collapsed_states(spec, t, s, H):
        dist += weight * state.probabilities()
    return dist


def distribution_records(dist: np.ndarray) -> list[list]:
    """JSON-friendly ``[c, d, probability]`` rows."""
    p = dist.shape[0]
    return [[c, d, float(dist[c, d])] for c in range(p) for d in range(p)]


# -- abelian stage on a cyclic group ----------------------------------------------


def default_num_samples(m: int) -> int:
    return max(1, (m - 1).bit_length()) + 8


def abelian_hsp_cyclic(
    m: int,
    oracle_on_x: SuperpositionOracle,
    rng: np.random.Generator,
    num_samples: int | None = None,
    max_batches: int = 3,
) -> int:
    """Index ``d`` of the hidden subgroup ``<d>`` of ``Z_m``.

    Each sample lies in the multiples of ``m/d``, so ``gcd(m, samples) = m/d`` unless
    all samples miss some prime of ``d``; with ``n`` samples that happens with
    probability at most ``log2(m) * 2**-n``. The candidate is confirmed classically
    with ``f(d) == f(0)``. A wrong candidate always divides the true ``d`` and
    therefore fails this check, in which case another batch of samples is drawn.
    """
    if m < 1:
        raise DomainError(f"cyclic group order must be positive, got {m}")
    if m == 1:
        return 1
    if m > 10**6:
        raise DomainError(f"Z_{m} is too large for dense simulation")
    n = default_num_samples(m) if num_samples is None else num_samples
    domain = np.arange(m)
    g = m
    for _ in range(max_batches):
        for _ in range(n):
            (k,), _mask = _collapse_and_sample(oracle_on_x.superposition(domain), rng)
            g = gcd(g, k)
        d = m // g
        if oracle_on_x.query_index(d % m) == oracle_on_x.query_index(0):
            return d
    raise SolverFailure(f"no consistent subgroup of Z_{m} after {max_batches} batches", "inconsistent-samples")

