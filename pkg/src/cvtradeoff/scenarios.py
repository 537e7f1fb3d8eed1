"""The three joint-measurement configurations, scanned over a phase or loss grid.

* Error-free: A = C = x1, B = p1, D = p2 after rotating mode 2 by theta.
* Nonzero error: C = x1 after loss T on mode 1, D = p2, targets the pre-loss
  x1 and p1. The loss ancilla is kept as an explicit third mode so that x1 and
  its lossy copy can be sampled jointly.
* Mixed state: the lossy signal is the state under test; A = C = x1', B = p1',
  D = p2.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy.optimize import brentq

from . import relations
from .estimators import ErrorStats, analytic_stats, mean_and_spread, sampled_stats
from .gaussian import (
    GaussianState,
    Impure,
    InvalidParameter,
    Pure,
    SqueezingSpec,
    beamsplitter_matrix,
    epr_state,
    phase_rotate,
    pure_loss,
    quadrature,
    r_from_db,
    tensor,
    vacuum,
)
from .relations import C_AB, TradeoffPoint
from .sampler import DEFAULT_SHOTS, derive_seed, sample_observables

DEFAULT_SPEC = Impure(-2.9, 3.9)
DEFAULT_THETA_GRID = tuple(float(t) for t in range(0, 361, 30))
DEFAULT_T_GRID = tuple(round(0.1 * i, 10) for i in range(11))
DEFAULT_REPEATS = 10


class Mode(str, enum.Enum):
    ANALYTIC = "analytic"
    MC = "mc"
    BOTH = "both"


def _check_grid(grid, lo, hi, name):
    g = tuple(float(v) for v in grid)
    if not g:
        raise InvalidParameter(f"{name} grid is empty")
    if any(b <= a for a, b in zip(g, g[1:])):
        raise InvalidParameter(f"{name} grid must be strictly increasing")
    if g[0] < lo or g[-1] > hi:
        raise InvalidParameter(f"{name} grid must lie in [{lo}, {hi}]")
    return g


@dataclass(frozen=True)
class ErrorFree:
    theta_grid: tuple = DEFAULT_THETA_GRID  # degrees
    tag = "error-free"
    parameter = "theta_deg"

    def __post_init__(self):
        object.__setattr__(self, "theta_grid", _check_grid(self.theta_grid, 0.0, 360.0, "theta"))

    @property
    def grid(self):
        return self.theta_grid


@dataclass(frozen=True)
class NonzeroError:
    t_grid: tuple = DEFAULT_T_GRID
    tag = "nonzero"
    parameter = "T"

    def __post_init__(self):
        object.__setattr__(self, "t_grid", _check_grid(self.t_grid, 0.0, 1.0, "T"))

    @property
    def grid(self):
        return self.t_grid


@dataclass(frozen=True)
class MixedState:
    t_grid: tuple = DEFAULT_T_GRID
    tag = "mixed"
    parameter = "T"

    def __post_init__(self):
        object.__setattr__(self, "t_grid", _check_grid(self.t_grid, 0.0, 1.0, "T"))

    @property
    def grid(self):
        return self.t_grid


Scenario = Union[ErrorFree, NonzeroError, MixedState]


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: Scenario
    spec: SqueezingSpec = DEFAULT_SPEC
    n_shots: int = DEFAULT_SHOTS
    seed: int = 0
    mode: Mode = Mode.ANALYTIC
    repeats: int = DEFAULT_REPEATS

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.n_shots < 2:
            raise InvalidParameter(f"n_shots must be >= 2, got {self.n_shots}")
        if self.repeats < 1:
            raise InvalidParameter(f"repeats must be >= 1, got {self.repeats}")


@dataclass(frozen=True)
class ScenarioPoint:
    parameter: float
    analytic: TradeoffPoint
    mc: Optional[TradeoffPoint] = None
    mc_spread: Optional[ErrorStats] = None
    mc_runs: tuple = ()


@dataclass(frozen=True)
class ScenarioResult:
    config: ScenarioConfig
    points: tuple
    seeds: tuple = field(default=())  # one tuple of per-repeat seeds per grid point

    @property
    def parameters(self) -> np.ndarray:
        return np.array([p.parameter for p in self.points])

    def column(self, name: str, source: str = "analytic") -> np.ndarray:
        return np.array([getattr(getattr(p, source), name) for p in self.points])


@dataclass(frozen=True)
class Measurement:
    """A state together with the coefficient vectors of A, B, C and D on it."""

    state: GaussianState
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    def analytic(self) -> ErrorStats:
        return analytic_stats(self.state, self.a, self.b, self.c, self.d)

    def sampled(self, n_shots: int, seed: int) -> ErrorStats:
        rec = sample_observables(
            self.state, [self.a, self.b, self.c, self.d], n_shots, seed, labels="ABCD"
        )
        return sampled_stats(rec)


def error_free_measurement(spec: SqueezingSpec, theta_deg: float) -> Measurement:
    state = phase_rotate(epr_state(spec), 1, math.radians(theta_deg))
    x1, p1, p2 = quadrature(2, 0, "x"), quadrature(2, 0, "p"), quadrature(2, 1, "p")
    return Measurement(state, a=x1, b=p1, c=x1, d=p2)


def nonzero_error_measurement(spec: SqueezingSpec, T: float) -> Measurement:
    # Modes: signal, meter, loss vacuum. Observables after the beamsplitter are
    # pulled back to the pre-loss frame: c . (S q) = (S^T c) . q.
    state = tensor(epr_state(spec), vacuum(1))
    s = beamsplitter_matrix(3, 0, 2, T)
    x1, p1, p2 = quadrature(3, 0, "x"), quadrature(3, 0, "p"), quadrature(3, 1, "p")
    return Measurement(state, a=x1, b=p1, c=s.T @ x1, d=p2)


def mixed_state_measurement(spec: SqueezingSpec, T: float) -> Measurement:
    state = pure_loss(epr_state(spec), 0, T)
    x1, p1, p2 = quadrature(2, 0, "x"), quadrature(2, 0, "p"), quadrature(2, 1, "p")
    return Measurement(state, a=x1, b=p1, c=x1, d=p2)


_BUILDERS = {
    ErrorFree: error_free_measurement,
    NonzeroError: nonzero_error_measurement,
    MixedState: mixed_state_measurement,
}


def measurement_for(scenario: Scenario, spec: SqueezingSpec, value: float) -> Measurement:
    return _BUILDERS[type(scenario)](spec, value)


def _evaluate_point(config: ScenarioConfig, index: int, value: float):
    meas = measurement_for(config.scenario, config.spec, value)
    assert not np.any(meas.state.mean), "scenario states are zero-mean"
    exact = meas.analytic()
    point = ScenarioPoint(value, TradeoffPoint.from_stats(exact))
    if config.mode is Mode.ANALYTIC:
        return point, ()
    seeds = tuple(
        derive_seed(config.seed, config.scenario.tag, index, rep) for rep in range(config.repeats)
    )
    runs = tuple(meas.sampled(config.n_shots, s) for s in seeds)
    avg, spread = mean_and_spread(list(runs))
    mc = TradeoffPoint.from_stats(avg)
    return ScenarioPoint(value, point.analytic, mc, spread, runs), seeds


def run(config: ScenarioConfig, workers: int = 1) -> ScenarioResult:
    """Evaluate every grid point; ``workers`` > 1 evaluates points in threads.

    Seeds depend only on (base seed, scenario tag, grid index, repeat), so the
    worker count never changes the result.
    """
    grid = config.scenario.grid
    tasks = list(enumerate(grid))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(lambda t: _evaluate_point(config, *t), tasks))
    else:
        out = [_evaluate_point(config, i, v) for i, v in tasks]
    return ScenarioResult(config, tuple(p for p, _ in out), tuple(s for _, s in out))


def _run_checked(config, kind, workers):
    if not isinstance(config.scenario, kind):
        raise InvalidParameter(
            f"expected a {kind.__name__} scenario, got {type(config.scenario).__name__}"
        )
    return run(config, workers)


def run_error_free(config: ScenarioConfig, workers: int = 1) -> ScenarioResult:
    return _run_checked(config, ErrorFree, workers)


def run_nonzero_error(config: ScenarioConfig, workers: int = 1) -> ScenarioResult:
    return _run_checked(config, NonzeroError, workers)


def run_mixed_state(config: ScenarioConfig, workers: int = 1) -> ScenarioResult:
    return _run_checked(config, MixedState, workers)


def heisenberg_product(spec: SqueezingSpec, T: float) -> float:
    return TradeoffPoint.from_stats(nonzero_error_measurement(spec, T).analytic()).lhs_heisenberg


def heisenberg_threshold(spec: SqueezingSpec = DEFAULT_SPEC, c_ab: float = C_AB) -> Optional[float]:
    """Transmission above which the nonzero-error scan violates eps_a * eps_b >= c_ab.

    The product falls monotonically in T and reaches 0 at T = 1; returns None
    when it is already below c_ab at T = 0.
    """
    f = lambda t: heisenberg_product(spec, t) - c_ab  # noqa: E731
    if f(0.0) <= 0:
        return None
    return brentq(f, 0.0, 1.0, xtol=1e-14)


def signal_deviations(spec: SqueezingSpec) -> tuple[float, float]:
    """sigma(x1), sigma(p1) of the signal mode before any loss."""
    cov = epr_state(spec).cov
    return math.sqrt(cov[0, 0]), math.sqrt(cov[1, 1])


def pure_counterpart(spec: SqueezingSpec) -> Pure:
    """Pure state with the same squeezing level (antisqueezing set to match)."""
    if isinstance(spec, Pure):
        return spec
    return Pure(r_from_db(spec.squeezing_db))


@dataclass(frozen=True)
class BoundsPlane:
    curves: dict  # (relation, variant) -> (eps_a, eps_b)
    points: dict  # series name -> list of (parameter, eps_a, eps_b)
    deviations: dict  # variant -> (sigma_a, sigma_b)


def assemble_bounds_plane(
    spec: SqueezingSpec = DEFAULT_SPEC,
    eps_a_grid=None,
    t_grid=DEFAULT_T_GRID,
    c_ab: float = C_AB,
) -> BoundsPlane:
    """Bound curves in the (eps_a, eps_b) plane with the scenario points overlaid.

    Curves are emitted for two sets of deviations: ``state`` uses the signal
    deviations of ``spec`` itself, ``pure`` those of the pure state with the
    same squeezing level.
    """
    if eps_a_grid is None:
        eps_a_grid = np.linspace(0.0, 1.0, 201)
    eps_a_grid = np.asarray(eps_a_grid, dtype=float)
    deviations = {"state": signal_deviations(spec), "pure": signal_deviations(pure_counterpart(spec))}
    curves = {("heisenberg", "any"): relations.heisenberg_bound_curve(eps_a_grid, c_ab)}
    for variant, (sa, sb) in deviations.items():
        curves[("ozawa", variant)] = relations.ozawa_bound_curve(eps_a_grid, sa, sb, c_ab)
        curves[("branciard", variant)] = relations.branciard_bound_curve(eps_a_grid, sa, sb, c_ab)

    def series(scenario):
        res = run(ScenarioConfig(scenario, spec=spec))
        return [(p.parameter, p.analytic.eps_a, p.analytic.eps_b) for p in res.points]

    points = {
        "error-free": series(ErrorFree((0.0,))),
        "nonzero": series(NonzeroError(t_grid)),
        "mixed": series(MixedState(t_grid)),
    }
    return BoundsPlane(curves, points, deviations)
