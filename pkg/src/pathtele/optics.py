"""Optical elements as operators on polarization and path qubits.

Path qubit: |0> and |1> are the two spatial modes. Polarization: H -> |0>,
V -> |1>. Angles are radians throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import H as HADAMARD
from .hilbert import I2, X, Y, Z, Composite, Operator, PureState


def _unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return value


@dataclass(frozen=True)
class BeamSplitterParams:
    theta: float
    phi: float = 0.0

    @property
    def reflection(self) -> float:
        return float(np.cos(self.theta) ** 2)

    @property
    def transmission(self) -> float:
        return 1.0 - self.reflection

    @classmethod
    def from_reflectivity(cls, eta: float, phi: float = 0.0) -> "BeamSplitterParams":
        return cls(float(np.arccos(np.sqrt(_unit_interval("eta", eta)))), phi)


@dataclass(frozen=True)
class VisibilityModel:
    V: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "V", _unit_interval("visibility", self.V))

    def channel(self) -> Operator:
        return path_dephasing_channel(self.V)


def beam_splitter_unitary(params: BeamSplitterParams) -> Operator:
    c, s = np.cos(params.theta), np.sin(params.theta)
    return Operator(np.exp(0.5j * params.phi) * np.array([[c, 1j * s], [1j * s, c]]))


def phase_shifter(phase: float) -> Operator:
    """Delay on spatial mode 1 relative to mode 0."""
    return Operator(np.diag([1.0, np.exp(1j * phase)]))


def encoder_unitary(eta: float, phase: float) -> Operator:
    """Variable beam splitter plus phase shifter taking |0> to the encoded path qubit.

    The beam splitter's i on the transmitted arm is cancelled by the phase
    shifter, so |0> maps to sqrt(eta)|0> + e^{i phase} sqrt(1 - eta)|1>.
    """
    eta = _unit_interval("eta", eta)
    # cos(theta), sin(theta) taken straight from eta so eta in {0, 1} stays exact
    c, s = np.sqrt(eta), np.sqrt(1 - eta)
    bs = Operator(np.array([[c, 1j * s], [1j * s, c]]))
    return bs.then(phase_shifter(phase - np.pi / 2))


def path_encode(eta: float, phase: float = 0.0, label: str = "Apath") -> PureState:
    eta = _unit_interval("eta", eta)
    amps = np.array([np.sqrt(eta), np.exp(1j * phase) * np.sqrt(1 - eta)])
    return PureState(amps, (label,))


def pbs_cnot_unitary() -> Operator:
    """PBS as a CNOT: polarization (first qubit) controls the path (second)."""
    u = np.zeros((4, 4))
    for pol in (0, 1):
        for path in (0, 1):
            u[2 * pol + (path ^ pol), 2 * pol + path] = 1
    return Operator(u)


def hwp_unitary(angle: float) -> Operator:
    """Half-wave plate with fast axis at ``angle`` from H."""
    c, s = np.cos(2 * angle), np.sin(2 * angle)
    return Operator(np.array([[c, s], [s, -c]]))


def path_dephasing_channel(V: float) -> Operator:
    """Phase damping that multiplies the path coherence by exactly V."""
    V = _unit_interval("visibility", V)
    return Operator(
        np.array([np.sqrt((1 + V) / 2) * I2, np.sqrt((1 - V) / 2) * Z]), kind="kraus", coherence=V
    )


def hadamard_path(V: float) -> Composite:
    """Single-photon-interference Hadamard: dephasing at visibility V, then H."""
    return Composite((path_dephasing_channel(V), Operator(HADAMARD)))


def depolarizing_channel(strength: float) -> Operator:
    """rho -> (1 - s) rho + s I/2."""
    s = _unit_interval("depolarizing strength", strength)
    return Operator(
        np.array(
            [np.sqrt(1 - 3 * s / 4) * I2, np.sqrt(s / 4) * X, np.sqrt(s / 4) * Y, np.sqrt(s / 4) * Z]
        ),
        kind="kraus",
    )
