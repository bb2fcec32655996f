"""Single-qubit Stokes tomography from exact probabilities or counts."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Mapping, NamedTuple

import numpy as np

from .hilbert import I2, X, Y, Z, DensityMatrix, PureState

# basis -> (plus ket, minus ket); R = (H + iV)/sqrt2 sits at s2 = +1
BASIS_KETS = {
    "HV": (np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)),
    "DA": (np.array([1, 1], dtype=complex) / np.sqrt(2), np.array([1, -1], dtype=complex) / np.sqrt(2)),
    "RL": (np.array([1, 1j]) / np.sqrt(2), np.array([1, -1j]) / np.sqrt(2)),
}
BASIS_DETECTORS = {"HV": ("H", "V"), "DA": ("D", "A"), "RL": ("R", "L")}
DETECTORS = ("H", "V", "D", "A", "R", "L")


def normalize_basis(basis: str) -> str:
    key = basis.replace("/", "").upper()
    key = {"AD": "DA", "LR": "RL", "VH": "HV"}.get(key, key)
    if key not in BASIS_KETS:
        raise ValueError(f"unknown basis {basis!r}; use H/V, D/A or R/L")
    return key


def projective_probabilities(rho: DensityMatrix, basis: str) -> tuple[float, float]:
    if rho.n_qubits != 1:
        raise ValueError("projective_probabilities needs a single-qubit state")
    plus, minus = BASIS_KETS[normalize_basis(basis)]
    p_plus = float(np.real(np.vdot(plus, rho.entries @ plus)))
    p_minus = float(np.real(np.vdot(minus, rho.entries @ minus)))
    return p_plus, p_minus


class StokesVector(NamedTuple):
    s1: float  # D - A
    s2: float  # R - L
    s3: float  # H - V

    def norm(self) -> float:
        return float(np.sqrt(self.s1 ** 2 + self.s2 ** 2 + self.s3 ** 2))


def stokes_from_probabilities(probs: Mapping[str, tuple[float, float]]) -> StokesVector:
    """Stokes vector from (p_plus, p_minus) pairs keyed by basis."""
    pairs = {normalize_basis(k): v for k, v in probs.items()}
    missing = set(BASIS_KETS) - set(pairs)
    if missing:
        raise ValueError(f"missing bases: {sorted(missing)}")
    for key, (pp, pm) in pairs.items():
        if abs(pp + pm - 1) > 1e-9:
            raise ValueError(f"{key} probabilities sum to {pp + pm}, not 1")
    return StokesVector(
        pairs["DA"][0] - pairs["DA"][1],
        pairs["RL"][0] - pairs["RL"][1],
        pairs["HV"][0] - pairs["HV"][1],
    )


def stokes_of(rho: DensityMatrix) -> StokesVector:
    return stokes_from_probabilities({b: projective_probabilities(rho, b) for b in BASIS_KETS})


class Reconstruction(NamedTuple):
    rho: DensityMatrix
    clipped: bool


def reconstruct_density(s: StokesVector, label: str = "Bpol") -> Reconstruction:
    vec = np.array(s, dtype=float)
    r = np.linalg.norm(vec)
    clipped = bool(r > 1)
    if clipped:
        vec = vec / r
    rho = (I2 + vec[0] * X + vec[1] * Y + vec[2] * Z) / 2
    return Reconstruction(DensityMatrix(rho, (label,)), clipped)


def bloch_vector(target: PureState) -> np.ndarray:
    return np.array(stokes_of(target.density()))


@dataclass
class CountsRecord:
    """Per-detector coincidence tallies of one sampled run."""

    counts: dict[str, int] = field(default_factory=lambda: dict.fromkeys(DETECTORS, 0))
    branch_counts: dict[str, int] = field(default_factory=dict)
    seed: int = 0
    n_events: int = 0
    generator: str = ""

    def __post_init__(self):
        unknown = set(self.counts) - set(DETECTORS)
        if unknown:
            raise ValueError(f"unknown detectors: {sorted(unknown)}")
        self.counts = {d: int(self.counts.get(d, 0)) for d in DETECTORS}
        if any(c < 0 for c in self.counts.values()):
            raise ValueError("counts must be nonnegative")

    def basis_total(self, basis: str) -> int:
        plus, minus = BASIS_DETECTORS[normalize_basis(basis)]
        return self.counts[plus] + self.counts[minus]

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def estimate_from_counts(counts: CountsRecord) -> tuple[StokesVector, tuple[float, float, float]]:
    """Plug-in Stokes estimate with binomial standard errors 2 sqrt(p(1-p)/n)."""
    values, errors = {}, {}
    for basis, (plus, minus) in BASIS_DETECTORS.items():
        n = counts.counts[plus] + counts.counts[minus]
        if n < 1:
            raise ValueError(f"no counts in the {basis} basis")
        p = counts.counts[plus] / n
        values[basis] = 2 * p - 1
        errors[basis] = 2 * np.sqrt(p * (1 - p) / n)
    s = StokesVector(values["DA"], values["RL"], values["HV"])
    return s, (float(errors["DA"]), float(errors["RL"]), float(errors["HV"]))


def fidelity_from_stokes(
    target: PureState, s: StokesVector, se: tuple[float, float, float] = (0.0, 0.0, 0.0)
) -> tuple[float, float]:
    """Linear fidelity estimate (1 + t.s)/2 against a pure target, with propagated SE.

    Uses the unclipped Stokes vector so the estimator stays unbiased; the
    value is clamped to [0, 1].
    """
    t = bloch_vector(target)
    f = 0.5 * (1 + float(t @ np.asarray(s, dtype=float)))
    err = 0.5 * float(np.sqrt(np.sum((t * np.asarray(se)) ** 2)))
    return min(1.0, max(0.0, f)), err
