"""Error-tradeoff uncertainty relations tested on a simulated continuous-variable EPR state."""

__version__ = "0.1.0"

from .gaussian import (  # noqa: E402
    GaussianState,
    Impure,
    Pure,
    epr_state,
    linear_combination_variance,
    phase_rotate,
    pure_loss,
    vacuum,
)
from .relations import C_AB, TradeoffPoint  # noqa: E402
from .scenarios import (  # noqa: E402
    ErrorFree,
    MixedState,
    NonzeroError,
    ScenarioConfig,
    run,
)

__all__ = [
    "C_AB",
    "ErrorFree",
    "GaussianState",
    "Impure",
    "MixedState",
    "NonzeroError",
    "Pure",
    "ScenarioConfig",
    "TradeoffPoint",
    "epr_state",
    "linear_combination_variance",
    "phase_rotate",
    "pure_loss",
    "run",
    "vacuum",
]
