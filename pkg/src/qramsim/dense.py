"""Brute-force density-matrix state for small-qubit oracle runs.

Qubit ``q`` is bit ``q`` of the computational-basis index counting from
the right (the least-significant bit is qubit 0), matching the bit
convention of the diagonal-entry rule in the analytics.  ``tensor``
appends the new qubits above the existing ones, so chained pair states
keep their qubit labels.  States are treated as immutable: every
operation returns a new ``DenseState``.  Validation use only; the
default cap is 10 qubits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .noise import KrausSet

__all__ = [
    "DenseState",
    "MeasurementRecord",
    "apply_gate",
    "apply_channel",
    "measure",
    "discard",
    "symmetrize_antidiagonal",
    "ghz_fidelity",
    "GATES",
]

DEFAULT_QUBIT_CAP = 10

_I2 = np.eye(2, dtype=complex)
GATES = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2.0),
}

_KET = {
    ("Z", +1): np.array([1.0, 0.0], dtype=complex),
    ("Z", -1): np.array([0.0, 1.0], dtype=complex),
    ("X", +1): np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0),
    ("X", -1): np.array([1.0, -1.0], dtype=complex) / math.sqrt(2.0),
}


@dataclass(frozen=True)
class MeasurementRecord:
    qubit: int
    basis: str
    outcome: int
    probability: float


@dataclass(frozen=True)
class DenseState:
    """A density operator over ``n_qubits`` qubits."""

    n_qubits: int
    matrix: np.ndarray

    @classmethod
    def computational(cls, bits: str | list[int]) -> "DenseState":
        """Pure basis state from an index bitstring, e.g. ``"010"`` = |010>.

        The string reads like a binary literal: its last character is
        qubit 0.
        """
        bits = [int(b) for b in bits]
        n = len(bits)
        idx = 0
        for b in bits:
            idx = (idx << 1) | b
        mat = np.zeros((2**n, 2**n), dtype=complex)
        mat[idx, idx] = 1.0
        return cls(n, mat)

    @classmethod
    def from_pure(cls, amplitudes: np.ndarray) -> "DenseState":
        v = np.asarray(amplitudes, dtype=complex)
        n = int(round(math.log2(v.size)))
        if 2**n != v.size:
            raise ValueError("amplitude vector length must be a power of two")
        v = v / np.linalg.norm(v)
        return cls(n, np.outer(v, v.conj()))

    @classmethod
    def bell_pair(cls) -> "DenseState":
        """The two-qubit state (|00> + |11>)/sqrt(2)."""
        v = np.zeros(4, dtype=complex)
        v[0] = v[3] = 1.0
        return cls.from_pure(v)

    @classmethod
    def ghz(cls, n: int) -> "DenseState":
        v = np.zeros(2**n, dtype=complex)
        v[0] = v[-1] = 1.0
        return cls.from_pure(v)

    def tensor(self, other: "DenseState") -> "DenseState":
        """Append ``other``'s qubits above this state's (they get the
        next qubit numbers)."""
        return DenseState(self.n_qubits + other.n_qubits,
                          np.kron(other.matrix, self.matrix))

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def validate(self, atol: float = 1e-12, min_eig: float = -1e-10) -> None:
        """Raise if trace, hermiticity or positivity are violated."""
        if abs(np.trace(self.matrix) - 1.0) > atol:
            raise ValueError(f"trace deviates from 1 by {np.trace(self.matrix) - 1.0}")
        if np.abs(self.matrix - self.matrix.conj().T).max() > atol:
            raise ValueError("state is not Hermitian")
        eig = np.linalg.eigvalsh(self.matrix)
        if eig.min() < min_eig:
            raise ValueError(f"negative eigenvalue {eig.min()}")


def _check_targets(state: DenseState, targets: tuple[int, ...]) -> None:
    if len(set(targets)) != len(targets):
        raise ValueError(f"targets must be distinct, got {targets}")
    for q in targets:
        if not (0 <= q < state.n_qubits):
            raise ValueError(f"qubit index {q} out of range for {state.n_qubits} qubits")


def _single_qubit_conj(mat: np.ndarray, K: np.ndarray, q: int, n: int) -> np.ndarray:
    """K rho K^dag with K acting on qubit q (bit q from the right)."""
    ax = n - 1 - q
    t = mat.reshape((2,) * (2 * n))
    t = np.moveaxis(np.tensordot(K, t, axes=([1], [ax])), 0, ax)
    t = np.moveaxis(np.tensordot(K.conj(), t, axes=([1], [n + ax])), 0, n + ax)
    return t.reshape(mat.shape)


def _cnot_unitary_apply(mat: np.ndarray, control: int, target: int, n: int) -> np.ndarray:
    t = mat.reshape((2,) * (2 * n))
    U = np.zeros((2, 2, 2, 2), dtype=complex)  # (c', t', c, t)
    U[0, 0, 0, 0] = U[0, 1, 0, 1] = U[1, 1, 1, 0] = U[1, 0, 1, 1] = 1.0
    for off in (0, n):  # row side, then column side (conjugate is real)
        c, tg = n - 1 - control + off, n - 1 - target + off
        t = np.tensordot(U, t, axes=([2, 3], [c, tg]))
        t = np.moveaxis(t, (0, 1), (c, tg))
    return t.reshape(mat.shape)


def apply_gate(state: DenseState, gate: str, targets: tuple[int, ...] | list[int]) -> DenseState:
    """Apply a named unitary (X, Z, H or CNOT) to the given qubits."""
    targets = tuple(targets)
    _check_targets(state, targets)
    if gate == "CNOT":
        if len(targets) != 2:
            raise ValueError("CNOT takes (control, target)")
        mat = _cnot_unitary_apply(state.matrix, targets[0], targets[1], state.n_qubits)
    else:
        if gate not in GATES:
            raise ValueError(f"unknown gate {gate!r}")
        if len(targets) != 1:
            raise ValueError(f"{gate} takes a single target")
        mat = _single_qubit_conj(state.matrix, GATES[gate], targets[0], state.n_qubits)
    return DenseState(state.n_qubits, mat)


def apply_channel(state: DenseState, kraus: KrausSet, target: int) -> DenseState:
    """Apply ``rho -> sum_i K_i rho K_i^dag`` on one qubit."""
    _check_targets(state, (target,))
    out = np.zeros_like(state.matrix)
    for K in kraus.operators:
        out += _single_qubit_conj(state.matrix, K, target, state.n_qubits)
    return DenseState(state.n_qubits, out)


def _projector_branch(state: DenseState, qubit: int, basis: str, outcome: int):
    v = _KET[(basis, outcome)]
    P = np.outer(v, v.conj())
    mat = _single_qubit_conj(state.matrix, P, qubit, state.n_qubits)
    prob = float(np.trace(mat).real)
    return prob, mat


def measure(
    state: DenseState,
    qubit: int,
    basis: str,
    rng: np.random.Generator | None = None,
    forced: int | None = None,
) -> tuple[MeasurementRecord, DenseState]:
    """Projective measurement of one qubit in the X or Z basis.

    The measured qubit is kept (projected) in the returned state; use
    :func:`discard` to drop it.  Outcome selection is either sampled from
    ``rng`` or forced to +1/-1; forcing a zero-probability branch raises.
    """
    if basis not in ("X", "Z"):
        raise ValueError(f"basis must be 'X' or 'Z', got {basis!r}")
    _check_targets(state, (qubit,))
    p_plus, mat_plus = _projector_branch(state, qubit, basis, +1)
    if forced is not None:
        outcome = int(forced)
        if outcome not in (+1, -1):
            raise ValueError("forced outcome must be +1 or -1")
        prob = p_plus if outcome == +1 else 1.0 - p_plus
        if prob < 1e-12:
            raise ValueError(f"forced outcome {outcome} has zero probability")
    else:
        if rng is None:
            raise ValueError("measure() needs either an rng or a forced outcome")
        outcome = +1 if rng.random() < p_plus else -1
        prob = p_plus if outcome == +1 else 1.0 - p_plus
    if outcome == +1:
        mat = mat_plus / p_plus
    else:
        _, mat_minus = _projector_branch(state, qubit, basis, -1)
        mat = mat_minus / (1.0 - p_plus)
    rec = MeasurementRecord(qubit=qubit, basis=basis, outcome=outcome, probability=prob)
    return rec, DenseState(state.n_qubits, mat)


def discard(state: DenseState, qubit: int) -> DenseState:
    """Partial trace over one qubit; higher qubit labels shift down by one."""
    _check_targets(state, (qubit,))
    n = state.n_qubits
    ax = n - 1 - qubit
    t = state.matrix.reshape((2,) * (2 * n))
    t = np.trace(t, axis1=ax, axis2=n + ax)
    return DenseState(n - 1, t.reshape(2 ** (n - 1), 2 ** (n - 1)))


def symmetrize_antidiagonal(state: DenseState) -> DenseState:
    """Average the state with its transpose along the anti-diagonal.

    Equivalent to randomizing which side of a correction is applied; leaves
    the GHZ fidelity unchanged while restoring the bit-flip symmetry broken
    by amplitude damping.
    """
    J = np.fliplr(np.eye(state.matrix.shape[0]))
    flipped = J @ state.matrix.T @ J
    return DenseState(state.n_qubits, (state.matrix + flipped) / 2.0)


def ghz_fidelity(state: DenseState) -> float:
    """Overlap of the state with the n-qubit GHZ state."""
    d = state.matrix.shape[0]
    val = (state.matrix[0, 0] + state.matrix[-1, -1]
           + state.matrix[0, -1] + state.matrix[-1, 0]) / 2.0
    assert d >= 2
    return float(val.real)
