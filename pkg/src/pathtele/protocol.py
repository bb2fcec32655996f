"""Teleportation of a path-encoded qubit onto the remote photon's polarization.

Pipeline: Werner pair on (Apol, Bpol) with Alice's photon in path mode 0,
variable beam splitter encodes (eta, phase) on Apath, Alice's two-DOF Bell
measurement (path coherence limited by the interferometer visibility, PBS
CNOT from polarization to path, HWP Hadamard on polarization), then Bob's
Pauli feed-forward.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import optics
from .hilbert import (
    I2,
    X,
    Z,
    DensityMatrix,
    Operator,
    PureState,
    apply_on,
    basis_state,
    fidelity_pure,
    partial_trace,
    reorder,
    tensor_product,
)
from .source import SourceModel
from .tomography import BASIS_DETECTORS, BASIS_KETS, CountsRecord, normalize_basis

LABELS = ("Apol", "Apath", "Bpol")
BRANCH_TOL = 1e-14
GENERATOR_ID = f"numpy-{np.__version__}/PCG64"


@dataclass(frozen=True)
class InputQubit:
    eta: float
    phase: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must lie in [0, 1], got {self.eta}")

    @property
    def alpha(self) -> complex:
        return complex(np.sqrt(self.eta))

    @property
    def beta(self) -> complex:
        return complex(np.exp(1j * self.phase) * np.sqrt(1 - self.eta))

    def ket(self, label: str = "Bpol") -> PureState:
        return PureState(np.array([self.alpha, self.beta]), (label,))


SIX_STATES: dict[str, InputQubit] = {
    "phi1": InputQubit(1.0, 0.0),  # |0>
    "phi2": InputQubit(0.0, 0.0),  # |1>
    "phi3": InputQubit(0.5, 0.0),  # |+>
    "phi4": InputQubit(0.5, np.pi),  # |->
    "phi5": InputQubit(0.5, np.pi / 2),  # |R>
    "phi6": InputQubit(0.5, -np.pi / 2),  # |L>
}


@dataclass(frozen=True)
class NoiseModel:
    werner_p: float = 1.0
    path_visibility: float = 1.0
    path1_depolarizing: float = 0.0

    def __post_init__(self):
        for name in ("werner_p", "path_visibility", "path1_depolarizing"):
            v = float(getattr(self, name))
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
            object.__setattr__(self, name, v)

    @property
    def is_ideal(self) -> bool:
        return (self.werner_p, self.path_visibility, self.path1_depolarizing) == (1.0, 1.0, 0.0)


class BsmOutcome(NamedTuple):
    pol_bit: int  # 0 = H, 1 = V
    path_bit: int

    @property
    def tag(self) -> str:
        return "HV"[self.pol_bit] + str(self.path_bit)


OUTCOMES = (BsmOutcome(0, 0), BsmOutcome(1, 0), BsmOutcome(0, 1), BsmOutcome(1, 1))


class Branch(NamedTuple):
    outcome: BsmOutcome
    prob: float
    bob: Optional[DensityMatrix]  # None when the branch has zero probability


@dataclass(frozen=True)
class TeleportResult:
    branch_probs: tuple[float, ...]
    branch_states: tuple[Optional[DensityMatrix], ...]
    corrected_branch_states: tuple[Optional[DensityMatrix], ...]
    branch_fidelities: tuple[Optional[float], ...]
    corrected_state: DensityMatrix
    fidelity: float


def build_joint_state(qubit: InputQubit, source: SourceModel = SourceModel()) -> DensityMatrix:
    pair = source.density(("Apol", "Bpol"))
    path0 = basis_state([0], ("Apath",)).density()
    joint = reorder(tensor_product(pair, path0), LABELS)
    return apply_on(optics.encoder_unitary(qubit.eta, qubit.phase), ["Apath"], joint)


def bsm_evolve(state: DensityMatrix, V: float = 1.0) -> DensityMatrix:
    """Alice's Bell measurement optics, up to (not including) detection."""
    if state.labels != LABELS:
        raise ValueError(f"expected labels {LABELS}, got {state.labels}")
    state = apply_on(optics.path_dephasing_channel(V), ["Apath"], state)
    state = apply_on(optics.pbs_cnot_unitary(), ["Apol", "Apath"], state)
    return apply_on(optics.hwp_unitary(np.pi / 8), ["Apol"], state)


def bsm_branches(state: DensityMatrix) -> list[Branch]:
    if state.labels != LABELS:
        raise ValueError(f"expected labels {LABELS}, got {state.labels}")
    rho = state.entries.reshape(2, 2, 2, 2, 2, 2)
    branches = []
    for outcome in OUTCOMES:
        block = rho[outcome.pol_bit, outcome.path_bit, :, outcome.pol_bit, outcome.path_bit, :]
        prob = float(np.real(np.trace(block)))
        if prob < BRANCH_TOL:
            branches.append(Branch(outcome, 0.0, None))
        else:
            branches.append(Branch(outcome, prob, DensityMatrix(block / prob, ("Bpol",))))
    return branches


def correction_unitary(outcome: BsmOutcome) -> Operator:
    """Bob's feed-forward: Z if Alice saw V, then X if she saw path 1."""
    u = I2
    if outcome.pol_bit:
        u = Z @ u
    if outcome.path_bit:
        u = X @ u
    return Operator(u)


def run_teleport(qubit: InputQubit, noise: NoiseModel = NoiseModel()) -> TeleportResult:
    joint = build_joint_state(qubit, SourceModel(noise.werner_p))
    branches = bsm_branches(bsm_evolve(joint, noise.path_visibility))
    target = qubit.ket()
    depol = noise.path1_depolarizing * (1 - qubit.eta)
    corrected, fids = [], []
    avg = np.zeros((2, 2), dtype=complex)
    for br in branches:
        if br.bob is None:
            corrected.append(None)
            fids.append(None)
            continue
        bob = apply_on(correction_unitary(br.outcome), ["Bpol"], br.bob)
        if depol > 0:
            bob = apply_on(optics.depolarizing_channel(depol), ["Bpol"], bob)
        corrected.append(bob)
        fids.append(fidelity_pure(target, bob))
        avg += br.prob * bob.entries
    avg_state = DensityMatrix(avg / sum(br.prob for br in branches), ("Bpol",))
    return TeleportResult(
        branch_probs=tuple(br.prob for br in branches),
        branch_states=tuple(br.bob for br in branches),
        corrected_branch_states=tuple(corrected),
        branch_fidelities=tuple(fids),
        corrected_state=avg_state,
        fidelity=fidelity_pure(target, avg_state),
    )


def bob_marginal(qubit: InputQubit, noise: NoiseModel = NoiseModel()) -> DensityMatrix:
    """Bob's state before any classical information arrives."""
    joint = build_joint_state(qubit, SourceModel(noise.werner_p))
    return partial_trace(bsm_evolve(joint, noise.path_visibility), ["Bpol"])


def _event_bases(analysis_basis: str, n_events: int) -> tuple[list[str], np.ndarray]:
    if analysis_basis.lower() == "all":
        bases = list(BASIS_KETS)
        sizes = [n_events // 3 + (i < n_events % 3) for i in range(3)]
    else:
        bases = [normalize_basis(analysis_basis)]
        sizes = [n_events]
    return bases, np.repeat(np.arange(len(bases)), sizes)


def monte_carlo_run(
    qubit: InputQubit,
    noise: NoiseModel,
    n_events: int,
    seed: int,
    analysis_basis: str = "all",
) -> CountsRecord:
    """Sample coincidence events: BSM outcome, feed-forward, then Bob's analyzer.

    ``analysis_basis`` is H/V, D/A, R/L, or ``"all"`` to split the events as
    evenly as possible over the three bases (H/V first).
    """
    if n_events < 1:
        raise ValueError(f"n_events must be >= 1, got {n_events}")
    result = run_teleport(qubit, noise)
    bases, event_basis = _event_bases(analysis_basis, n_events)
    # p_plus[outcome, basis] for Bob's corrected photon
    p_plus = np.zeros((len(OUTCOMES), len(bases)))
    for i, bob in enumerate(result.corrected_branch_states):
        for j, basis in enumerate(bases):
            if bob is not None:
                ket = BASIS_KETS[basis][0]
                p_plus[i, j] = np.clip(np.real(np.vdot(ket, bob.entries @ ket)), 0.0, 1.0)

    rng = np.random.Generator(np.random.PCG64(seed))
    probs = np.asarray(result.branch_probs)
    outcomes = rng.choice(len(OUTCOMES), size=n_events, p=probs / probs.sum())
    clicks_plus = rng.random(n_events) < p_plus[outcomes, event_basis]

    counts = {}
    for j, basis in enumerate(bases):
        in_basis = event_basis == j
        plus, minus = BASIS_DETECTORS[basis]
        counts[plus] = int(np.count_nonzero(clicks_plus & in_basis))
        counts[minus] = int(np.count_nonzero(in_basis)) - counts[plus]
    branch_counts = {
        o.tag: int(c) for o, c in zip(OUTCOMES, np.bincount(outcomes, minlength=len(OUTCOMES)))
    }
    return CountsRecord(
        counts=counts,
        branch_counts=branch_counts,
        seed=int(seed),
        n_events=int(n_events),
        generator=GENERATOR_ID,
    )
