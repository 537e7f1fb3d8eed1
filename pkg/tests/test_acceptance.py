"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal summary.
"""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from cvtradeoff.estimators import ErrorStats, standard_errors
from cvtradeoff.gaussian import Impure, Pure
from cvtradeoff.relations import (
    C_AB,
    branciard_bound_curve,
    branciard_lhs,
    heisenberg_bound_curve,
    ozawa_bound_curve,
    ozawa_lhs,
)
from cvtradeoff.scenarios import (
    DEFAULT_T_GRID,
    DEFAULT_THETA_GRID,
    ErrorFree,
    MixedState,
    Mode,
    NonzeroError,
    ScenarioConfig,
    heisenberg_threshold,
    run,
    signal_deviations,
)

EXPERIMENT = Impure(-2.9, 3.9)
# sqrt(2 * 10**(-0.29) / 4), mpmath at 30 digits.
EPS_B_EXPERIMENT = 0.506389861663602451484310542779


@pytest.fixture
def record(request):
    name = request.node.name

    def _record(ok: bool, detail: str):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        assert ok, detail

    return _record


def analytic(scenario, spec=EXPERIMENT):
    return run(ScenarioConfig(scenario, spec=spec))


def test_1_error_free_identity(record):
    worst = 0.0
    ok = True
    for spec in (EXPERIMENT, Pure(0.0), Pure(0.5)):
        res = analytic(ErrorFree(DEFAULT_THETA_GRID), spec)
        eps_a = res.column("eps_a")
        h = res.column("lhs_heisenberg")
        ok &= bool(np.all(eps_a == 0.0) and np.all(h == 0.0) and np.all(h < 0.25))
        worst = max(worst, float(h.max()))
    record(ok, f"eps_a == 0 and lhs_heisenberg == 0 at every theta (max lhs {worst})")


def test_2_error_free_bound_formula(record):
    worst = 0.0
    min_lhs = math.inf
    for r in np.round(np.arange(0, 1.01, 0.1), 10):
        p = analytic(ErrorFree((0.0,)), Pure(r)).points[0].analytic
        expected = math.sqrt(1 + math.exp(-4 * r)) / 4
        worst = max(worst, abs(p.lhs_ozawa - expected), abs(p.lhs_branciard - expected))
        min_lhs = min(min_lhs, p.lhs_ozawa, p.lhs_branciard)
    record(
        worst <= 1e-12 and min_lhs >= 0.25,
        f"max |lhs - sqrt(1+e^-4r)/4| = {worst:.2e} (tol 1e-12), min lhs = {min_lhs:.6f} >= 0.25",
    )


def test_3_experimental_operating_point(record):
    start = time.perf_counter()
    cfg = ScenarioConfig(ErrorFree((0.0,)), spec=EXPERIMENT, n_shots=500_000, repeats=1,
                         mode=Mode.BOTH, seed=2019)
    p = run(cfg).points[0]
    elapsed = time.perf_counter() - start
    exact = p.analytic.eps_b
    rel = abs(p.mc.eps_b - exact) / exact
    ok = abs(exact - EPS_B_EXPERIMENT) <= 1e-12 and rel <= 0.015 and elapsed < 5.0
    record(
        ok,
        f"analytic eps_b = {exact:.6f} (expected {EPS_B_EXPERIMENT:.6f}), "
        f"MC eps_b = {p.mc.eps_b:.6f} (rel {rel:.2%} <= 1.5%), {elapsed:.2f} s < 5 s",
    )


def test_4_violation_threshold(record):
    t_star = heisenberg_threshold(EXPERIMENT)
    res = analytic(NonzeroError(DEFAULT_T_GRID))
    h = res.column("lhs_heisenberg")
    t = res.parameters
    above = t > t_star
    at_02 = h[np.isclose(t, 0.2)][0]
    ok = (
        0.25 <= t_star <= 0.35
        and bool(np.all(h[above] < 0.25))
        and bool(np.all(h[~above] >= 0.25))
        and at_02 >= 0.25
    )
    record(ok, f"T* = {t_star:.6f} in [0.25, 0.35]; grid split consistent; lhs(T=0.2) = {at_02:.6f} >= 0.25")


def test_5_universal_validity(record):
    rng = np.random.default_rng(20190501)
    n = 10_000
    worst_oz = worst_br = math.inf
    worst_gap = -math.inf
    for _ in range(n):
        if rng.random() < 0.5:
            spec = Pure(rng.uniform(0, 2.5))
        else:
            sq = rng.uniform(0, 12)
            spec = Impure(-sq, sq + rng.uniform(0, 12))
        kind = rng.integers(3)
        if kind == 0:
            scenario = ErrorFree((rng.uniform(0, 360),))
        elif kind == 1:
            scenario = NonzeroError((rng.uniform(0, 1),))
        else:
            scenario = MixedState((rng.uniform(0, 1),))
        p = analytic(scenario, spec).points[0].analytic
        worst_oz = min(worst_oz, p.lhs_ozawa)
        worst_br = min(worst_br, p.lhs_branciard)
        worst_gap = max(worst_gap, p.lhs_branciard - p.lhs_ozawa)
    ok = worst_oz >= 0.25 - 1e-9 and worst_br >= 0.25 - 1e-9 and worst_gap <= 1e-12
    record(
        ok,
        f"{n} random configs: min ozawa {worst_oz:.6f}, min branciard {worst_br:.6f}, "
        f"max (branciard - ozawa) {worst_gap:.2e}",
    )


def test_6_scenario_consistency(record):
    ef = analytic(ErrorFree((0.0,))).points[0].analytic
    nz = analytic(NonzeroError((1.0,))).points[0].analytic
    mixed = analytic(MixedState(DEFAULT_T_GRID))
    mx = mixed.points[-1].analytic
    fields = ("eps_a", "eps_b", "sigma_a", "sigma_b", "lhs_heisenberg", "lhs_ozawa", "lhs_branciard")
    diff = max(abs(getattr(a, f) - getattr(ef, f)) for a in (nz, mx) for f in fields)
    lhs = mixed.column("lhs_ozawa")
    ok = diff <= 1e-12 and int(np.argmin(lhs)) == len(lhs) - 1
    record(ok, f"max deviation of T=1 points from theta=0 point {diff:.2e} (tol 1e-12); "
               f"mixed-state LHS minimal at T = {mixed.parameters[np.argmin(lhs)]}")


def test_7_monte_carlo_oracle(record):
    n, repeats = 500_000, 10
    start = time.perf_counter()
    worst = 0.0
    checked = 0
    for seed, scenario in enumerate(
        (ErrorFree(DEFAULT_THETA_GRID), NonzeroError(DEFAULT_T_GRID), MixedState(DEFAULT_T_GRID))
    ):
        res = run(ScenarioConfig(scenario, spec=EXPERIMENT, n_shots=n, repeats=repeats,
                                 mode=Mode.MC, seed=seed))
        for p in res.points:
            a = p.analytic
            exact = ErrorStats(a.eps_a, a.eps_b, a.sigma_a, a.sigma_b)
            se = standard_errors(exact, n).as_array()
            for est in p.mc_runs:
                dev = np.abs(est.as_array() - exact.as_array())
                # A zero standard error (eps_a with C = A) demands an exact zero.
                z = np.divide(dev, se, out=np.where(dev > 0, np.inf, 0.0), where=se > 0)
                worst = max(worst, float(z.max()))
                checked += 4
    elapsed = time.perf_counter() - start
    record(
        worst <= 5.0 and elapsed < 120.0,
        f"{checked} MC statistics, worst deviation {worst:.2f} standard errors (tol 5); "
        f"{elapsed:.1f} s < 120 s",
    )


def test_8_bound_curve_consistency(record):
    grid = np.linspace(0, 1.5, 301)
    sigmas = [signal_deviations(EXPERIMENT), signal_deviations(Pure(0.33387)), (0.5, 0.5), (0.4, 1.3)]
    worst_oz = worst_br = 0.0
    for sa, sb in sigmas:
        x, y = ozawa_bound_curve(grid, sa, sb)
        m = y > 0
        worst_oz = max(worst_oz, float(np.max(np.abs(ozawa_lhs(x[m], y[m], sa, sb) - C_AB))))
        x, y = branciard_bound_curve(grid, sa, sb)
        m = y > 0
        worst_br = max(worst_br, float(np.max(np.abs(branciard_lhs(x[m], y[m], sa, sb) - C_AB))))
    hx, _ = heisenberg_bound_curve(grid)
    ok = worst_oz <= 1e-9 and worst_br <= 1e-9 and 0.0 not in hx and len(hx) == len(grid) - 1
    record(ok, f"max |lhs - 1/4| on curves: ozawa {worst_oz:.2e}, branciard {worst_br:.2e} "
               f"(tol 1e-9); heisenberg curve omits eps_a = 0")
