"""Density-matrix simulation of deterministic teleportation of a path-encoded qubit."""

from .hilbert import DensityMatrix, Operator, PureState, apply_on, fidelity_pure, partial_trace, tensor_product
from .protocol import SIX_STATES, InputQubit, NoiseModel, monte_carlo_run, run_teleport
from .source import SourceModel, chsh_S, werner_state

__version__ = "0.1.0"

__all__ = [
    "DensityMatrix",
    "InputQubit",
    "NoiseModel",
    "Operator",
    "SIX_STATES",
    "PureState",
    "SourceModel",
    "apply_on",
    "chsh_S",
    "fidelity_pure",
    "monte_carlo_run",
    "partial_trace",
    "run_teleport",
    "tensor_product",
    "werner_state",
]
