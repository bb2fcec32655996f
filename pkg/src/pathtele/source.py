"""Polarization-entangled pair source with isotropic (Werner) noise."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .hilbert import X, Z, DensityMatrix, PureState, maximally_mixed

SOURCE_LABELS = ("Apol", "Bpol")
TSIRELSON = 2 * np.sqrt(2)


class ChshAngles(NamedTuple):
    """Analyzer (polarizer) angles in radians."""

    a: float = 0.0
    a_prime: float = np.pi / 4
    b: float = np.pi / 8
    b_prime: float = 3 * np.pi / 8


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return value


def phi_plus(labels: tuple[str, str] = SOURCE_LABELS) -> PureState:
    return PureState(np.array([1, 0, 0, 1]) / np.sqrt(2), labels)


def werner_state(p: float, labels: tuple[str, str] = SOURCE_LABELS) -> DensityMatrix:
    p = _check_unit("werner_p", p)
    bell = phi_plus(labels).density().entries
    if p == 1.0:
        return DensityMatrix(bell, labels)
    if p == 0.0:
        return maximally_mixed(labels)
    return DensityMatrix(p * bell + (1 - p) * np.eye(4) / 4, labels)


def werner_p_for_chsh(s_value: float) -> float:
    """Werner weight whose default-angle CHSH value equals ``s_value``."""
    return _check_unit("werner_p", s_value / TSIRELSON)


@dataclass(frozen=True)
class SourceModel:
    werner_p: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "werner_p", _check_unit("werner_p", self.werner_p))

    def density(self, labels: tuple[str, str] = SOURCE_LABELS) -> DensityMatrix:
        return werner_state(self.werner_p, labels)

    @classmethod
    def from_chsh(cls, s_value: float) -> "SourceModel":
        return cls(werner_p_for_chsh(s_value))


def _analyzer_projectors(angle: float) -> tuple[np.ndarray, np.ndarray]:
    # A polarizer at angle t passes cos t|H> + sin t|V>.
    v = np.array([np.cos(angle), np.sin(angle)], dtype=complex)
    plus = np.outer(v, v.conj())
    return plus, np.eye(2) - plus


def _two_qubit(rho: DensityMatrix) -> np.ndarray:
    if rho.n_qubits != 2:
        raise ValueError(f"expected a two-qubit state, got {rho.n_qubits} qubits")
    return rho.entries


def joint_probabilities(rho: DensityMatrix, angle_a: float, angle_b: float) -> np.ndarray:
    """2x2 table P[i, j] of (pass/block) outcomes for analyzers at the given angles."""
    r = _two_qubit(rho)
    pa, pb = _analyzer_projectors(angle_a), _analyzer_projectors(angle_b)
    return np.array(
        [[np.real(np.trace(np.kron(pa[i], pb[j]) @ r)) for j in range(2)] for i in range(2)]
    )


def correlation(rho: DensityMatrix, angle_a: float, angle_b: float) -> float:
    p = joint_probabilities(rho, angle_a, angle_b)
    return float(p[0, 0] + p[1, 1] - p[0, 1] - p[1, 0])


def chsh_correlations(rho: DensityMatrix, angles: ChshAngles = ChshAngles()) -> dict[str, float]:
    a, ap, b, bp = angles
    return {
        "E(a,b)": correlation(rho, a, b),
        "E(a,b')": correlation(rho, a, bp),
        "E(a',b)": correlation(rho, ap, b),
        "E(a',b')": correlation(rho, ap, bp),
    }


def chsh_S(rho: DensityMatrix, angles: ChshAngles = ChshAngles()) -> float:
    e = chsh_correlations(rho, ChshAngles(*angles))
    return abs(e["E(a,b)"] - e["E(a,b')"] + e["E(a',b)"] + e["E(a',b')"])


_BASES = {"HV": 0.0, "DA": np.pi / 4}


def basis_visibility(rho: DensityMatrix, basis: str = "HV") -> float:
    """(correlated - anticorrelated) / (correlated + anticorrelated) coincidences."""
    key = basis.replace("/", "").upper()
    if key == "AD":
        key = "DA"
    if key not in _BASES:
        raise ValueError(f"unknown basis {basis!r}; use H/V or D/A")
    angle = _BASES[key]
    p = joint_probabilities(rho, angle, angle)
    corr, anti = p[0, 0] + p[1, 1], p[0, 1] + p[1, 0]
    return float((corr - anti) / (corr + anti))


def pauli_correlations(rho: DensityMatrix) -> dict[str, float]:
    """<XX> and <ZZ>; handy for checking the Bell-state structure of a source."""
    r = _two_qubit(rho)
    return {
        "XX": float(np.real(np.trace(np.kron(X, X) @ r))),
        "ZZ": float(np.real(np.trace(np.kron(Z, Z) @ r))),
    }
