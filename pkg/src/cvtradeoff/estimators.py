"""RMS approximation errors and standard deviations, sampled and exact."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .gaussian import GaussianState, linear_combination_variance
from .sampler import SampleSet


@dataclass(frozen=True)
class ErrorStats:
    eps_a: float
    eps_b: float
    sigma_a: float
    sigma_b: float
    # None for exact values, otherwise (n_shots, seed) of the record used.
    mc: Optional[tuple[int, int]] = None

    @property
    def is_analytic(self) -> bool:
        return self.mc is None

    def as_array(self) -> np.ndarray:
        return np.array([self.eps_a, self.eps_b, self.sigma_a, self.sigma_b])


def _column(x) -> np.ndarray:
    a = np.asarray(x, dtype=float)
    if a.ndim != 1:
        raise ValueError(f"expected a 1-d column, got shape {a.shape}")
    if a.size == 0:
        raise ValueError("empty input")
    return a


def rms_error(samples_c, samples_a) -> float:
    """sqrt(<(C - A)^2>) with no mean subtraction."""
    c, a = _column(samples_c), _column(samples_a)
    if c.shape != a.shape:
        raise ValueError(f"length mismatch: {c.size} vs {a.size}")
    d = c - a
    return math.sqrt(float(np.mean(d * d)))


def std_dev(samples) -> float:
    """Population (1/n) standard deviation."""
    return float(np.std(_column(samples)))


def analytic_stats(state: GaussianState, obs_a, obs_b, obs_c, obs_d) -> ErrorStats:
    obs_a, obs_b, obs_c, obs_d = (np.asarray(o, dtype=float) for o in (obs_a, obs_b, obs_c, obs_d))
    diff_a, diff_b = obs_c - obs_a, obs_d - obs_b
    var_a = linear_combination_variance(state, diff_a)
    var_b = linear_combination_variance(state, diff_b)
    # For a nonzero mean the raw second moment adds the squared mean of C - A.
    return ErrorStats(
        eps_a=math.sqrt(var_a + float(diff_a @ state.mean) ** 2),
        eps_b=math.sqrt(var_b + float(diff_b @ state.mean) ** 2),
        sigma_a=math.sqrt(linear_combination_variance(state, obs_a)),
        sigma_b=math.sqrt(linear_combination_variance(state, obs_b)),
    )


def sampled_stats(samples: SampleSet, a="A", b="B", c="C", d="D") -> ErrorStats:
    """Statistics from a record holding columns for A, B, C and D."""
    col = samples.column
    return ErrorStats(
        eps_a=rms_error(col(c), col(a)),
        eps_b=rms_error(col(d), col(b)),
        sigma_a=std_dev(col(a)),
        sigma_b=std_dev(col(b)),
        mc=(samples.n_shots, samples.seed),
    )


def standard_errors(exact: ErrorStats, n_shots: int) -> ErrorStats:
    """Large-n standard errors of the sampled statistics around ``exact``.

    For a zero-mean Gaussian column of RMS value s, both the raw RMS and the
    population standard deviation have standard error s / sqrt(2 n).
    """
    k = 1.0 / math.sqrt(2.0 * n_shots)
    return ErrorStats(
        eps_a=exact.eps_a * k,
        eps_b=exact.eps_b * k,
        sigma_a=exact.sigma_a * k,
        sigma_b=exact.sigma_b * k,
    )


def mean_and_spread(runs: list[ErrorStats]) -> tuple[ErrorStats, ErrorStats]:
    """Average of repeated estimates and their population standard deviation."""
    arr = np.array([r.as_array() for r in runs])
    m, s = arr.mean(axis=0), arr.std(axis=0)
    first = runs[0].mc
    return ErrorStats(*map(float, m), mc=first), ErrorStats(*map(float, s))
