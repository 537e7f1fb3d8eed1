"""Heisenberg, Ozawa and Branciard error-tradeoff relations and their bound curves.

Each relation reads LHS >= c_ab with c_ab = |<[A, B]>|/2, which is 1/4 for the
x and p quadratures of one mode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gaussian import VACUUM_VARIANCE

C_AB = VACUUM_VARIANCE

REGIME_TOL = 1e-12


class InvalidRegime(ValueError):
    """sigma_a^2 sigma_b^2 < c_ab^2, so the Branciard relation is undefined."""


def heisenberg_lhs(eps_a, eps_b):
    return eps_a * eps_b


def ozawa_lhs(eps_a, eps_b, sigma_a, sigma_b):
    return eps_a * eps_b + eps_a * sigma_b + sigma_a * eps_b


def _branciard_k(sigma_a, sigma_b, c_ab, clamp=False):
    gap = np.asarray(sigma_a) ** 2 * np.asarray(sigma_b) ** 2 - c_ab**2
    if not clamp and np.any(gap < -REGIME_TOL):
        raise InvalidRegime(
            f"sigma_a^2 sigma_b^2 - c_ab^2 = {np.min(gap):.3e} < 0; relation undefined"
        )
    return np.sqrt(np.clip(gap, 0.0, None))


def branciard_lhs(eps_a, eps_b, sigma_a, sigma_b, c_ab=C_AB, clamp=False):
    """Branciard left-hand side.

    ``clamp=True`` treats a negative sigma_a^2 sigma_b^2 - c_ab^2 as 0 instead of
    raising; sampled deviations of a minimum-uncertainty state need this.
    """
    k = _branciard_k(sigma_a, sigma_b, c_ab, clamp)
    val = np.sqrt(
        eps_a**2 * sigma_b**2 + sigma_a**2 * eps_b**2 + 2 * eps_a * eps_b * k
    )
    return float(val) if np.ndim(val) == 0 else val


@dataclass(frozen=True)
class TradeoffPoint:
    eps_a: float
    eps_b: float
    sigma_a: float
    sigma_b: float
    c_ab: float
    lhs_heisenberg: float
    lhs_ozawa: float
    lhs_branciard: float

    @classmethod
    def evaluate(cls, eps_a, eps_b, sigma_a, sigma_b, c_ab=C_AB, clamp=False) -> TradeoffPoint:
        return cls(
            eps_a=float(eps_a),
            eps_b=float(eps_b),
            sigma_a=float(sigma_a),
            sigma_b=float(sigma_b),
            c_ab=float(c_ab),
            lhs_heisenberg=float(heisenberg_lhs(eps_a, eps_b)),
            lhs_ozawa=float(ozawa_lhs(eps_a, eps_b, sigma_a, sigma_b)),
            lhs_branciard=float(branciard_lhs(eps_a, eps_b, sigma_a, sigma_b, c_ab, clamp)),
        )

    @classmethod
    def from_stats(cls, stats, c_ab=C_AB) -> TradeoffPoint:
        """Point for an ``ErrorStats``; sampled stats use the clamped Branciard form."""
        return cls.evaluate(
            stats.eps_a, stats.eps_b, stats.sigma_a, stats.sigma_b, c_ab,
            clamp=not stats.is_analytic,
        )

    @property
    def heisenberg_satisfied(self) -> bool:
        return self.lhs_heisenberg >= self.c_ab

    @property
    def ozawa_satisfied(self) -> bool:
        return self.lhs_ozawa >= self.c_ab

    @property
    def branciard_satisfied(self) -> bool:
        return self.lhs_branciard >= self.c_ab


def _grid(eps_a_grid) -> np.ndarray:
    g = np.asarray(eps_a_grid, dtype=float)
    if np.any(g < 0):
        raise ValueError("eps_a values must be nonnegative")
    return g


def heisenberg_bound_curve(eps_a_grid, c_ab=C_AB) -> tuple[np.ndarray, np.ndarray]:
    """eps_b = c_ab / eps_a. The bound diverges at eps_a = 0, so those samples are dropped."""
    g = _grid(eps_a_grid)
    g = g[g > 0]
    return g, c_ab / g


def ozawa_bound_curve(eps_a_grid, sigma_a, sigma_b, c_ab=C_AB) -> tuple[np.ndarray, np.ndarray]:
    if sigma_a <= 0 or sigma_b <= 0:
        raise ValueError("standard deviations must be positive")
    g = _grid(eps_a_grid)
    return g, np.maximum(0.0, (c_ab - g * sigma_b) / (g + sigma_a))


def branciard_bound_curve(
    eps_a_grid, sigma_a, sigma_b, c_ab=C_AB
) -> tuple[np.ndarray, np.ndarray]:
    """Smallest eps_b meeting the Branciard relation at equality for each eps_a.

    Solves sigma_a^2 y^2 + 2 x k y + (x^2 sigma_b^2 - c^2) = 0 with
    k = sqrt(sigma_a^2 sigma_b^2 - c^2). The discriminant reduces to
    4 c^2 (sigma_a^2 - x^2), so the larger root is
    (c sqrt(sigma_a^2 - x^2) - x k) / sigma_a^2. Once x >= c / sigma_b both
    roots are nonpositive and the curve sits at 0.
    """
    if sigma_a <= 0 or sigma_b <= 0:
        raise ValueError("standard deviations must be positive")
    k = float(_branciard_k(sigma_a, sigma_b, c_ab))
    x = _grid(eps_a_grid)
    inside = x < c_ab / sigma_b
    xi = np.where(inside, x, 0.0)
    root = (c_ab * np.sqrt(np.clip(sigma_a**2 - xi**2, 0.0, None)) - xi * k) / sigma_a**2
    return x, np.where(inside, np.maximum(root, 0.0), 0.0)
