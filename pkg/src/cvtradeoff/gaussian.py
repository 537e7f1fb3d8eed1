"""Gaussian states described by first and second quadrature moments.

Quadratures follow x = (a + a^dag)/2, p = (a - a^dag)/2i, so [x, p] = i/2 and
the vacuum variance is 1/4. Vectors and matrices use xpxp ordering
(x1, p1, x2, p2, ...). States are immutable; every operation returns a new one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

VACUUM_VARIANCE = 0.25

SYMMETRY_TOL = 1e-12
EIGEN_TOL = 1e-10


class InvalidState(ValueError):
    """Raised for malformed or unphysical Gaussian moments."""


class InvalidParameter(ValueError):
    """Raised for out-of-range operation parameters."""


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form, one [[0, 1], [-1, 0]] block per mode."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Zero-or-displaced Gaussian state given by its mean and covariance.

    ``cov`` must be symmetric, positive semidefinite and satisfy
    ``cov + (i/4) Omega >= 0``; construction raises ``InvalidState`` otherwise.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self) -> None:
        mean = _readonly(self.mean)
        cov = _readonly(self.cov)
        if mean.ndim != 1 or mean.size == 0 or mean.size % 2:
            raise InvalidState(f"mean must be a vector of even length, got shape {mean.shape}")
        if cov.shape != (mean.size, mean.size):
            raise InvalidState(
                f"cov shape {cov.shape} does not match mean length {mean.size}"
            )
        if not np.all(np.isfinite(cov)) or not np.all(np.isfinite(mean)):
            raise InvalidState("moments must be finite")
        if np.max(np.abs(cov - cov.T)) > SYMMETRY_TOL:
            raise InvalidState("covariance matrix is not symmetric")
        cov = _readonly(0.5 * (cov + cov.T))
        if np.linalg.eigvalsh(cov).min() < -EIGEN_TOL:
            raise InvalidState("covariance matrix is not positive semidefinite")
        n = mean.size // 2
        if np.linalg.eigvalsh(cov + 0.25j * symplectic_form(n)).min() < -EIGEN_TOL:
            raise InvalidState("covariance matrix violates the uncertainty principle")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def n_modes(self) -> int:
        return self.mean.size // 2

    def purity(self) -> float:
        """1/sqrt(det(4 cov)); equal to 1 for pure states."""
        return 1.0 / math.sqrt(np.linalg.det(4.0 * self.cov))

    def allclose(self, other: GaussianState, atol: float = 1e-12) -> bool:
        return (
            self.n_modes == other.n_modes
            and np.allclose(self.mean, other.mean, rtol=0, atol=atol)
            and np.allclose(self.cov, other.cov, rtol=0, atol=atol)
        )

    def reduced(self, modes) -> GaussianState:
        """Marginal state on ``modes`` (partial trace over the rest)."""
        idx = []
        for m in modes:
            _check_mode(self, m)
            idx += [2 * m, 2 * m + 1]
        return GaussianState(self.mean[idx], self.cov[np.ix_(idx, idx)])

    def transformed(self, symplectic: np.ndarray) -> GaussianState:
        """Apply a linear map q -> S q to the quadratures."""
        return GaussianState(symplectic @ self.mean, symplectic @ self.cov @ symplectic.T)


@dataclass(frozen=True)
class Pure:
    """Pure two-mode squeezing with parameter ``r``."""

    r: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r) and self.r >= 0):
            raise InvalidParameter(f"squeezing parameter must be finite and >= 0, got {self.r}")

    def joint_variances(self) -> tuple[float, float]:
        return (
            VACUUM_VARIANCE * math.exp(-2 * self.r),
            VACUUM_VARIANCE * math.exp(2 * self.r),
        )


@dataclass(frozen=True)
class Impure:
    """Independent squeezing / antisqueezing levels in dB on the joint quadratures.

    The squeezed and antisqueezed combinations are conjugate, so a physical state
    needs ``antisqueezing_db >= -squeezing_db``.
    """

    squeezing_db: float
    antisqueezing_db: float

    def __post_init__(self) -> None:
        sq, anti = self.squeezing_db, self.antisqueezing_db
        if not (math.isfinite(sq) and math.isfinite(anti)):
            raise InvalidParameter("dB levels must be finite")
        if sq > 0:
            raise InvalidParameter(f"squeezing_db must be <= 0, got {sq}")
        if anti < 0:
            raise InvalidParameter(f"antisqueezing_db must be >= 0, got {anti}")
        if anti + sq < -1e-12:
            raise InvalidParameter(
                f"antisqueezing {anti} dB below squeezing {-sq} dB is unphysical"
            )

    def joint_variances(self) -> tuple[float, float]:
        return (
            VACUUM_VARIANCE * 10 ** (self.squeezing_db / 10),
            VACUUM_VARIANCE * 10 ** (self.antisqueezing_db / 10),
        )


SqueezingSpec = Union[Pure, Impure]


def r_from_db(db: float) -> float:
    """Squeezing parameter giving a joint-quadrature level of ``-|db|`` dB."""
    return math.log(10) * abs(db) / 20


def vacuum(n_modes: int) -> GaussianState:
    if n_modes < 1:
        raise InvalidParameter(f"n_modes must be >= 1, got {n_modes}")
    return GaussianState(np.zeros(2 * n_modes), VACUUM_VARIANCE * np.eye(2 * n_modes))


def epr_state(spec: SqueezingSpec) -> GaussianState:
    """Two-mode EPR state with x1 + x2 and p1 - p2 squeezed.

    With squeezed/antisqueezed joint variances ``v_minus``/``v_plus`` each single
    quadrature has variance (v_plus + v_minus)/2, which for ``Pure(r)`` is
    cosh(2r)/4.
    """
    v_minus, v_plus = spec.joint_variances()
    single = 0.5 * (v_plus + v_minus)
    corr = 0.5 * (v_plus - v_minus)
    cov = np.array(
        [
            [single, 0.0, -corr, 0.0],
            [0.0, single, 0.0, corr],
            [-corr, 0.0, single, 0.0],
            [0.0, corr, 0.0, single],
        ]
    )
    return GaussianState(np.zeros(4), cov)


def tensor(*states: GaussianState) -> GaussianState:
    """Product state; modes are concatenated in argument order."""
    mean = np.concatenate([s.mean for s in states])
    size = mean.size
    cov = np.zeros((size, size))
    i = 0
    for s in states:
        k = s.mean.size
        cov[i : i + k, i : i + k] = s.cov
        i += k
    return GaussianState(mean, cov)


def _check_mode(state: GaussianState, mode: int) -> None:
    if not (0 <= mode < state.n_modes):
        raise InvalidParameter(f"mode {mode} out of range for {state.n_modes}-mode state")


def rotation_matrix(n_modes: int, mode: int, theta: float) -> np.ndarray:
    s = np.eye(2 * n_modes)
    c, sn = math.cos(theta), math.sin(theta)
    s[2 * mode : 2 * mode + 2, 2 * mode : 2 * mode + 2] = [[c, -sn], [sn, c]]
    return s


def beamsplitter_matrix(n_modes: int, mode_a: int, mode_b: int, T: float) -> np.ndarray:
    """Symplectic of a beamsplitter with transmission ``T`` between two modes.

    a' = sqrt(T) a + sqrt(1-T) b,  b' = -sqrt(1-T) a + sqrt(T) b, per quadrature.
    """
    if mode_a == mode_b:
        raise InvalidParameter("beamsplitter needs two distinct modes")
    t, rf = math.sqrt(T), math.sqrt(1.0 - T)
    s = np.eye(2 * n_modes)
    for q in (0, 1):
        ia, ib = 2 * mode_a + q, 2 * mode_b + q
        s[ia, ia], s[ia, ib] = t, rf
        s[ib, ia], s[ib, ib] = -rf, t
    return s


def _check_transmission(T: float) -> None:
    if not (0.0 <= T <= 1.0):
        raise InvalidParameter(f"transmission must lie in [0, 1], got {T}")


def phase_rotate(state: GaussianState, mode: int, theta: float) -> GaussianState:
    """Rotate one mode's quadratures by ``theta`` radians.

    x' = x cos(theta) - p sin(theta), p' = x sin(theta) + p cos(theta).
    """
    _check_mode(state, mode)
    return state.transformed(rotation_matrix(state.n_modes, mode, theta))


def beamsplitter(state: GaussianState, mode_a: int, mode_b: int, T: float) -> GaussianState:
    _check_mode(state, mode_a)
    _check_mode(state, mode_b)
    _check_transmission(T)
    return state.transformed(beamsplitter_matrix(state.n_modes, mode_a, mode_b, T))


def pure_loss(state: GaussianState, mode: int, T: float) -> GaussianState:
    """Mix ``mode`` with a fresh vacuum on a beamsplitter and discard the vacuum port."""
    _check_mode(state, mode)
    _check_transmission(T)
    n = state.n_modes
    mixed = beamsplitter(tensor(state, vacuum(1)), mode, n, T)
    return mixed.reduced(range(n))


def quadrature(n_modes: int, mode: int, which: str) -> np.ndarray:
    """Coefficient vector selecting x or p of one mode."""
    if which not in ("x", "p"):
        raise InvalidParameter(f"quadrature must be 'x' or 'p', got {which!r}")
    if not (0 <= mode < n_modes):
        raise InvalidParameter(f"mode {mode} out of range for {n_modes} modes")
    v = np.zeros(2 * n_modes)
    v[2 * mode + (which == "p")] = 1.0
    return v


def linear_combination_variance(state: GaussianState, coeffs) -> float:
    """Variance of sum_i coeffs[i] q_i; tiny negative round-off is clamped to 0."""
    c = np.asarray(coeffs, dtype=float)
    if c.shape != state.mean.shape:
        raise InvalidParameter(
            f"coefficient vector has shape {c.shape}, expected {state.mean.shape}"
        )
    v = float(c @ state.cov @ c)
    if v < 0:
        if v < -SYMMETRY_TOL:
            raise InvalidState(f"negative variance {v}")
        v = 0.0
    return v
