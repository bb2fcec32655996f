"""Dense linear algebra for a handful of labelled qubits.

States carry an ordered tuple of subsystem labels; basis index bit ``k``
(most significant first) belongs to ``labels[k]``. Everything here is small
(at most 4 qubits), so operators are embedded as full matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

MAX_QUBITS = 4

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


class LabelError(ValueError):
    """Raised when subsystem labels overlap, are missing or unknown."""


def _check_labels(labels: Sequence[str], dim: int) -> tuple[str, ...]:
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise LabelError(f"duplicate labels: {labels}")
    if not 1 <= len(labels) <= MAX_QUBITS:
        raise LabelError(f"need 1..{MAX_QUBITS} labels, got {len(labels)}")
    if dim != 2 ** len(labels):
        raise ValueError(f"dimension {dim} does not match {len(labels)} labels")
    return labels


@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "labels", _check_labels(self.labels, amps.size))

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> "PureState":
        nrm = self.norm()
        if nrm == 0:
            raise ValueError("cannot normalize the zero vector")
        return PureState(self.amplitudes / nrm, self.labels)

    def density(self) -> "DensityMatrix":
        a = self.amplitudes
        return DensityMatrix(np.outer(a, a.conj()), self.labels)

    def with_labels(self, labels: Sequence[str]) -> "PureState":
        return PureState(self.amplitudes, labels)


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        rho = np.asarray(self.entries, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValueError(f"density matrix must be square, got {rho.shape}")
        rho = rho.copy()
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)
        object.__setattr__(self, "labels", _check_labels(self.labels, rho.shape[0]))

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    def trace(self) -> float:
        return float(np.real(np.trace(self.entries)))

    def eigenvalues(self) -> np.ndarray:
        herm = (self.entries + self.entries.conj().T) / 2
        return np.linalg.eigvalsh(herm)

    def check(self, tol: float = 1e-12, psd_slack: float = 1e-10) -> "DensityMatrix":
        """Raise ValueError unless Hermitian, unit trace and PSD (with slack)."""
        rho = self.entries
        if np.max(np.abs(rho - rho.conj().T)) > tol:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1) > tol:
            raise ValueError(f"trace {np.trace(rho)} != 1")
        if self.eigenvalues().min() < -psd_slack:
            raise ValueError("density matrix has negative eigenvalues")
        return self

    def is_valid(self, tol: float = 1e-12, psd_slack: float = 1e-10) -> bool:
        try:
            self.check(tol, psd_slack)
        except ValueError:
            return False
        return True

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))


State = Union[PureState, DensityMatrix]


@dataclass(frozen=True)
class Operator:
    """A unitary (``entries`` is d x d) or a Kraus set (``entries`` is k x d x d).

    A single-qubit Kraus set may also carry ``coherence``: it then is pure
    dephasing in the computational basis, and ``apply_on`` scales the
    off-diagonal entries by that factor instead of summing Kraus terms, so
    populations come out bit-exact.
    """

    entries: np.ndarray
    kind: str = "unitary"
    coherence: Optional[float] = None

    def __post_init__(self):
        ops = np.asarray(self.entries, dtype=complex)
        if self.kind == "unitary":
            if ops.ndim != 2:
                raise ValueError("unitary entries must be a matrix")
        elif self.kind == "kraus":
            if ops.ndim == 2:
                ops = ops[np.newaxis]
            if ops.ndim != 3:
                raise ValueError("kraus entries must be a stack of matrices")
        else:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        d = ops.shape[-1]
        if ops.shape[-2] != d or d & (d - 1) or d < 2:
            raise ValueError(f"operator shape {ops.shape} is not 2^k square")
        if self.coherence is not None and (self.kind != "kraus" or d != 2):
            raise ValueError("coherence shortcut is only for single-qubit Kraus sets")
        ops = ops.copy()
        ops.setflags(write=False)
        object.__setattr__(self, "entries", ops)

    @property
    def arity(self) -> int:
        return int(self.entries.shape[-1]).bit_length() - 1

    @property
    def kraus_ops(self) -> np.ndarray:
        return self.entries if self.kind == "kraus" else self.entries[np.newaxis]

    def dagger(self) -> "Operator":
        if self.kind != "unitary":
            raise TypeError("only unitaries have an inverse here")
        return Operator(self.entries.conj().T)

    def is_unitary(self, tol: float = 1e-12) -> bool:
        if self.kind != "unitary":
            return False
        u = self.entries
        return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)

    def is_trace_preserving(self, tol: float = 1e-12) -> bool:
        ks = self.kraus_ops
        total = sum(k.conj().T @ k for k in ks)
        return bool(np.max(np.abs(total - np.eye(ks.shape[-1]))) <= tol)

    def then(self, other: "Operator") -> "Operator":
        """Channel applying ``self`` first and ``other`` second."""
        if self.kind == other.kind == "unitary":
            return Operator(other.entries @ self.entries)
        ks = [b @ a for b in other.kraus_ops for a in self.kraus_ops]
        return Operator(np.array(ks), kind="kraus")


def basis_state(bits: Sequence[int], labels: Sequence[str]) -> PureState:
    index = 0
    for b in bits:
        index = 2 * index + int(b)
    amps = np.zeros(2 ** len(bits), dtype=complex)
    amps[index] = 1
    return PureState(amps, labels)


def maximally_mixed(labels: Sequence[str]) -> DensityMatrix:
    d = 2 ** len(labels)
    return DensityMatrix(np.eye(d) / d, labels)


def tensor_product(a: State, b: State) -> State:
    if type(a) is not type(b):
        raise TypeError("tensor_product needs two states of the same kind")
    overlap = set(a.labels) & set(b.labels)
    if overlap:
        raise LabelError(f"labels overlap: {sorted(overlap)}")
    labels = a.labels + b.labels
    if isinstance(a, PureState):
        return PureState(np.kron(a.amplitudes, b.amplitudes), labels)
    return DensityMatrix(np.kron(a.entries, b.entries), labels)


def _label_indices(labels: Sequence[str], wanted: Sequence[str]) -> list[int]:
    idx = []
    for w in wanted:
        if w not in labels:
            raise LabelError(f"unknown label {w!r}; have {tuple(labels)}")
        idx.append(labels.index(w))
    if len(set(idx)) != len(idx):
        raise LabelError(f"repeated target labels: {tuple(wanted)}")
    return idx


def embed(matrix: np.ndarray, targets: Sequence[int], n: int) -> np.ndarray:
    """Full 2^n matrix acting as ``matrix`` on qubits ``targets`` (in that order)."""
    k = len(targets)
    rest = [q for q in range(n) if q not in targets]
    full = np.kron(matrix, np.eye(2 ** (n - k)))
    order = list(targets) + rest
    inv = [order.index(q) for q in range(n)]
    full = full.reshape((2,) * (2 * n)).transpose(inv + [n + i for i in inv])
    return full.reshape(2 ** n, 2 ** n)


@dataclass(frozen=True)
class Composite:
    """Operators applied one after another on the same targets."""

    steps: tuple[Operator, ...]

    def __post_init__(self):
        if not self.steps or len({op.arity for op in self.steps}) != 1:
            raise ValueError("composite needs steps of one common arity")

    @property
    def arity(self) -> int:
        return self.steps[0].arity

    def as_operator(self) -> Operator:
        out = self.steps[0]
        for op in self.steps[1:]:
            out = out.then(op)
        return out


def _scale_coherences(rho: np.ndarray, qubit: int, n: int, factor: float) -> np.ndarray:
    t = rho.reshape((2,) * (2 * n)).copy()
    for r, c in ((0, 1), (1, 0)):
        idx = [slice(None)] * (2 * n)
        idx[qubit], idx[n + qubit] = r, c
        t[tuple(idx)] *= factor
    return t.reshape(rho.shape)


def apply_on(op: Union[Operator, Composite], targets: Sequence[str], state: State) -> State:
    targets = tuple(targets)
    if isinstance(op, Composite):
        for step in op.steps:
            state = apply_on(step, targets, state)
        return state
    if op.arity != len(targets):
        raise ValueError(f"operator acts on {op.arity} qubits, got targets {targets}")
    idx = _label_indices(state.labels, targets)
    n = state.n_qubits
    if isinstance(state, PureState):
        if op.kind != "unitary":
            raise TypeError("a Kraus set cannot act on a pure state")
        return PureState(embed(op.entries, idx, n) @ state.amplitudes, state.labels)
    rho = state.entries
    if op.coherence is not None:
        return DensityMatrix(_scale_coherences(rho, idx[0], n, op.coherence), state.labels)
    out = np.zeros_like(rho)
    for k in op.kraus_ops:
        full = embed(k, idx, n)
        out = out + full @ rho @ full.conj().T
    return DensityMatrix(out, state.labels)


def reorder(state: State, labels: Sequence[str]) -> State:
    """Permute tensor factors so the state's labels read ``labels``."""
    labels = tuple(labels)
    if sorted(labels) != sorted(state.labels):
        raise LabelError(f"cannot reorder {state.labels} to {labels}")
    perm = _label_indices(state.labels, labels)
    n = state.n_qubits
    if isinstance(state, PureState):
        amps = state.amplitudes.reshape((2,) * n).transpose(perm)
        return PureState(amps.reshape(-1), labels)
    rho = state.entries.reshape((2,) * (2 * n)).transpose(perm + [n + p for p in perm])
    return DensityMatrix(rho.reshape(2 ** n, 2 ** n), labels)


def partial_trace(rho: DensityMatrix, keep: Sequence[str]) -> DensityMatrix:
    keep = tuple(keep)
    if not keep:
        raise LabelError("keep must name at least one subsystem")
    idx = _label_indices(rho.labels, keep)
    idx_sorted = sorted(idx)
    n = rho.n_qubits
    letters = "abcdefghijklmnop"
    row = list(letters[:n])
    col = [letters[n + q] if q in idx else letters[q] for q in range(n)]
    out = "".join(row[q] for q in idx_sorted) + "".join(col[q] for q in idx_sorted)
    subscripts = "".join(row) + "".join(col) + "->" + out
    m = 2 ** len(keep)
    reduced = np.einsum(subscripts, rho.entries.reshape((2,) * (2 * n))).reshape(m, m)
    return DensityMatrix(reduced, tuple(rho.labels[q] for q in idx_sorted))


def fidelity_pure(target: PureState, rho: DensityMatrix) -> float:
    """<psi|rho|psi>, clamped to [0, 1]."""
    psi = target.amplitudes
    if psi.size != rho.entries.shape[0]:
        raise ValueError(f"dimension mismatch: {psi.size} vs {rho.entries.shape[0]}")
    f = np.vdot(psi, rho.entries @ psi)
    if abs(f.imag) > 1e-10:
        raise ValueError(f"fidelity has imaginary part {f.imag}")
    return float(min(1.0, max(0.0, f.real)))


def fix_global_phase(amplitudes: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate so the first non-negligible amplitude is real and positive."""
    amps = np.asarray(amplitudes, dtype=complex)
    nz = np.flatnonzero(np.abs(amps) > tol)
    if nz.size == 0:
        return amps.copy()
    lead = amps[nz[0]]
    return amps * (abs(lead) / lead)


def random_pure(labels: Sequence[str], rng: np.random.Generator) -> PureState:
    d = 2 ** len(labels)
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return PureState(v, labels).normalize()


def random_density(labels: Sequence[str], rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Ginibre-ensemble mixed state."""
    d = 2 ** len(labels)
    g = rng.normal(size=(d, rank or d)) + 1j * rng.normal(size=(d, rank or d))
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.trace(rho), labels)


def random_unitary(n_qubits: int, rng: np.random.Generator) -> Operator:
    d = 2 ** n_qubits
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return Operator(q)
