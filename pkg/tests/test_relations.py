import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from cvtradeoff.relations import (
    C_AB,
    InvalidRegime,
    TradeoffPoint,
    branciard_bound_curve,
    branciard_lhs,
    heisenberg_bound_curve,
    heisenberg_lhs,
    ozawa_bound_curve,
    ozawa_lhs,
)

SIGMA_X1_R_EXP = 0.554830163003027696119001712016  # sqrt(cosh(0.66774)/4)
SIGMA_EXP = 0.609053599824801463633855356542  # impure -2.9/3.9 dB signal deviation

nonneg = st.floats(0, 5)


@st.composite
def valid_tuples(draw, c=C_AB):
    sa = draw(st.floats(0.01, 5))
    sb = draw(st.floats(c / sa, c / sa + 5))
    return draw(nonneg), draw(nonneg), sa, sb


def test_c_ab():
    assert C_AB == 0.25


class TestHeisenberg:
    def test_zero_error(self):
        assert heisenberg_lhs(0.0, 0.5064) == 0.0

    def test_product(self):
        assert heisenberg_lhs(0.5, 0.5) == 0.25


class TestOzawa:
    def test_reduces_without_eps_a(self):
        assert ozawa_lhs(0.0, 0.3, 0.7, 0.9) == pytest.approx(0.7 * 0.3)

    def test_halves(self):
        assert ozawa_lhs(0.5, 0.5, 0.5, 0.5) == 0.75

    def test_error_free_operating_point(self):
        r = 0.33387
        sigma = math.sqrt(math.cosh(2 * r) / 4)
        eps_b = math.exp(-r) / math.sqrt(2)
        assert ozawa_lhs(0.0, eps_b, sigma, sigma) == pytest.approx(
            math.sqrt(1 + math.exp(-1.33548)) / 4, rel=1e-12
        )


class TestBranciard:
    def test_matches_ozawa_on_axis(self):
        assert branciard_lhs(0.0, 0.4, 0.6, 0.6) == pytest.approx(ozawa_lhs(0.0, 0.4, 0.6, 0.6))

    def test_minimum_uncertainty(self):
        ea, eb, sa, sb = 0.3, 0.2, 0.5, 0.5
        assert branciard_lhs(ea, eb, sa, sb) == pytest.approx(math.hypot(ea * sb, sa * eb))

    def test_invalid_regime(self):
        with pytest.raises(InvalidRegime):
            branciard_lhs(0.1, 0.1, 0.4, 0.4)

    def test_tiny_negative_gap_clamped(self):
        sa = math.sqrt(0.25 - 1e-14)
        assert branciard_lhs(0.1, 0.1, sa, 0.5) > 0

    def test_clamp_flag(self):
        val = branciard_lhs(0.1, 0.1, 0.49, 0.5, clamp=True)
        assert val == pytest.approx(math.hypot(0.1 * 0.5, 0.49 * 0.1))

    @settings(max_examples=10_000, deadline=None)
    @given(valid_tuples())
    def test_tighter_than_ozawa(self, t):
        assert branciard_lhs(*t) <= ozawa_lhs(*t) + 1e-12


class TestTradeoffPoint:
    def test_flags(self):
        p = TradeoffPoint.evaluate(0.0, 0.5064, 0.609, 0.609)
        assert not p.heisenberg_satisfied
        assert p.ozawa_satisfied and p.branciard_satisfied
        assert p.lhs_ozawa == pytest.approx(p.lhs_branciard)


class TestHeisenbergCurve:
    def test_values(self):
        x, y = heisenberg_bound_curve([0.25, 0.5])
        np.testing.assert_allclose(y, [1.0, 0.5])

    def test_drops_zero(self):
        x, y = heisenberg_bound_curve([0.0, 0.1, 1.0])
        assert 0.0 not in x
        assert len(x) == 2

    def test_monotone(self):
        _, y = heisenberg_bound_curve(np.linspace(0.01, 10, 200))
        assert np.all(np.diff(y) < 0)


class TestOzawaCurve:
    def test_axis(self):
        _, y = ozawa_bound_curve([0.0], 0.6, 0.7)
        assert y[0] == pytest.approx(C_AB / 0.6)

    def test_zero_crossing(self):
        _, y = ozawa_bound_curve([C_AB / 0.7, 2.0], 0.6, 0.7)
        assert y[0] == pytest.approx(0.0, abs=1e-15)
        assert y[1] == 0.0

    def test_operating_point_axis(self):
        _, y = ozawa_bound_curve([0.0], SIGMA_X1_R_EXP, SIGMA_X1_R_EXP)
        assert y[0] == pytest.approx(0.25 / SIGMA_X1_R_EXP, rel=1e-12)

    def test_on_curve(self):
        sa, sb = SIGMA_EXP, SIGMA_EXP
        x, y = ozawa_bound_curve(np.linspace(0, C_AB / sb, 50, endpoint=False), sa, sb)
        np.testing.assert_allclose(ozawa_lhs(x, y, sa, sb), C_AB, atol=1e-12)


class TestBranciardCurve:
    def test_axis(self):
        _, y = branciard_bound_curve([0.0], 0.6, 0.7)
        assert y[0] == pytest.approx(C_AB / 0.6)

    def test_zero_crossing(self):
        _, y = branciard_bound_curve([C_AB / 0.7, 0.55, 3.0], 0.6, 0.7)
        assert y[0] == pytest.approx(0.0, abs=1e-15)
        assert np.all(y[1:] == 0.0)

    @pytest.mark.parametrize("sa, sb", [(SIGMA_EXP, SIGMA_EXP), (0.5, 0.5), (0.4, 1.2)])
    def test_root_oracle(self, sa, sb):
        """Compare against bisection of the LHS itself, which is increasing in eps_b."""
        xs = np.linspace(0, C_AB / sb, 25, endpoint=False)
        _, ys = branciard_bound_curve(xs, sa, sb)
        for x, y in zip(xs, ys):
            ref = brentq(lambda e: branciard_lhs(x, e, sa, sb) - C_AB, 0.0, 10.0, xtol=1e-15)
            assert y == pytest.approx(ref, abs=1e-10)

    @settings(max_examples=300, deadline=None)
    @given(valid_tuples())
    def test_points_on_curve(self, t):
        _, _, sa, sb = t
        x, y = branciard_bound_curve(np.linspace(0, 2, 41), sa, sb)
        inside = y > 0
        np.testing.assert_allclose(branciard_lhs(x[inside], y[inside], sa, sb), C_AB, atol=1e-9)
        assert np.all(np.diff(y) <= 1e-15)
        # The tighter relation excludes more of the plane, so its boundary lies higher.
        _, yo = ozawa_bound_curve(x, sa, sb)
        assert np.all(yo <= y + 1e-12)
        assert np.all(np.diff(yo) <= 1e-15)

    def test_invalid(self):
        with pytest.raises(InvalidRegime):
            branciard_bound_curve([0.1], 0.3, 0.3)
