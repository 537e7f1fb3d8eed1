"""Seeded joint homodyne records drawn from a Gaussian state.

Each requested observable is a linear form c . q of the quadratures. The listed
forms are sampled jointly from N(M mean, M cov M^T) with M stacking the
coefficient vectors. Random numbers come from numpy's PCG64; per-task seeds are
derived with ``derive_seed`` so that a scan gives the same records whether its
grid points run serially or in parallel.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

from .gaussian import EIGEN_TOL, GaussianState, InvalidParameter, InvalidState

DEFAULT_SHOTS = 500_000


@dataclass(frozen=True, eq=False)
class SampleSet:
    labels: tuple[str, ...]
    data: np.ndarray
    seed: int
    n_shots: int

    def __post_init__(self) -> None:
        if self.data.shape != (self.n_shots, len(self.labels)):
            raise ValueError(
                f"data shape {self.data.shape} does not match "
                f"({self.n_shots}, {len(self.labels)})"
            )

    def column(self, label: str) -> np.ndarray:
        return self.data[:, self.labels.index(label)]


def derive_seed(base_seed: int, tag: str = "", *indices: int) -> int:
    """64-bit seed for one task, mixing the base seed, a text tag and integer indices."""
    key = (zlib.crc32(tag.encode()),) + tuple(int(i) for i in indices)
    ss = np.random.SeedSequence(int(base_seed) % 2**64, spawn_key=key)
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def projected_moments(state: GaussianState, observables) -> tuple[np.ndarray, np.ndarray]:
    m = np.atleast_2d(np.asarray(observables, dtype=float))
    if m.shape[1] != state.mean.size:
        raise InvalidParameter(
            f"observables have length {m.shape[1]}, expected {state.mean.size}"
        )
    cov = m @ state.cov @ m.T
    return m @ state.mean, 0.5 * (cov + cov.T)


def covariance_factor(cov: np.ndarray) -> np.ndarray:
    """Matrix L with L L^T = cov, tolerant of rank deficiency.

    Eigenvalues in [-1e-10, 0) are clamped to zero; anything more negative means
    the covariance is indefinite and is rejected.
    """
    w, u = np.linalg.eigh(cov)
    if w.size and w.min() < -EIGEN_TOL:
        raise InvalidState(f"projected covariance is indefinite (eigenvalue {w.min():.3e})")
    return u * np.sqrt(np.clip(w, 0.0, None))


def sample_observables(
    state: GaussianState,
    observables,
    n_shots: int = DEFAULT_SHOTS,
    seed: int = 0,
    labels=None,
) -> SampleSet:
    """Draw ``n_shots`` joint outcomes of the listed observables.

    Identical coefficient vectors are sampled once and copied, so repeated
    observables give bit-identical columns.
    """
    if n_shots < 1:
        raise InvalidParameter(f"n_shots must be positive, got {n_shots}")
    m = np.atleast_2d(np.asarray(observables, dtype=float))
    if labels is None:
        labels = tuple(f"o{i}" for i in range(m.shape[0]))
    labels = tuple(labels)
    if len(labels) != m.shape[0]:
        raise InvalidParameter(f"{len(labels)} labels for {m.shape[0]} observables")

    unique, inverse = np.unique(m, axis=0, return_inverse=True)
    mean, cov = projected_moments(state, unique)
    factor = covariance_factor(cov)
    rng = np.random.Generator(np.random.PCG64(seed))
    z = rng.standard_normal((n_shots, unique.shape[0]))
    draws = z @ factor.T + mean
    data = draws[:, np.asarray(inverse).reshape(-1)]
    data.setflags(write=False)
    return SampleSet(labels=labels, data=data, seed=int(seed), n_shots=int(n_shots))
