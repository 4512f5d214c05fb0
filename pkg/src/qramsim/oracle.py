"""Protocol-level oracle runs on the dense density-matrix simulator.

These functions execute the entanglement-transfer and GHZ-linking building
blocks with every noise channel in place, enumerating measurement branches
exactly (corrections applied per branch, branches summed), so the results
are deterministic and free of Monte Carlo error.  They exist to validate
the closed-form layer analytics and to adjudicate between variant printed
factors; nothing in the production pipeline depends on them.
"""

from __future__ import annotations

import numpy as np

from .dense import (
    DenseState,
    apply_channel,
    apply_gate,
    discard,
    ghz_fidelity,
    symmetrize_antidiagonal,
    DEFAULT_QUBIT_CAP,
    _projector_branch,
)
from .noise import (
    NoiseParams,
    cnot_error_kraus,
    damping_for_idle,
    dephasing_for_idle,
)

__all__ = [
    "pair_state",
    "run_transfer_block_oracle",
    "run_link_oracle",
    "apply_idle_decoherence",
    "ghz_fidelity",
]

LINK_MODES = ("two_step", "ts_probabilistic", "ts_deterministic")


def pair_state(mu: float, nu: float) -> DenseState:
    """Two-qubit state with diagonal (1-mu, mu, mu, 1-mu)/2 and corners nu/2."""
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = (1.0 - mu) / 2.0
    m[1, 1] = m[2, 2] = mu / 2.0
    m[0, 3] = m[3, 0] = nu / 2.0
    return DenseState(2, m)


def _noisy_cnot(state: DenseState, control: int, target: int, p: float) -> DenseState:
    state = apply_gate(state, "CNOT", (control, target))
    if p > 0.0:
        err = cnot_error_kraus(p)
        state = apply_channel(state, err, control)
        state = apply_channel(state, err, target)
    return state


def _branches(state: DenseState, qubit: int, basis: str):
    """Unnormalized post-measurement matrices for outcomes +1 and -1."""
    _, mat_plus = _projector_branch(state, qubit, basis, +1)
    _, mat_minus = _projector_branch(state, qubit, basis, -1)
    return (DenseState(state.n_qubits, mat_plus),
            DenseState(state.n_qubits, mat_minus))


def _idle(state: DenseState, qubit: int, dt: float, T1: float, T2: float) -> DenseState:
    if dt == 0.0:
        return state
    state = apply_channel(state, dephasing_for_idle(dt, T2), qubit)
    state = apply_channel(state, damping_for_idle(dt, T1), qubit)
    return state


def run_transfer_block_oracle(
    params: NoiseParams,
    times: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0),
) -> DenseState:
    """Full-matrix run of the pair-creation-and-transfer block.

    ``times`` are the idle durations (t_eL, t_eR, t_nL, t_nR): electron idling
    before the transfer CNOTs and nuclear idling after them.  Returns the
    2-qubit nuclear state, corrections randomized (symmetrized).
    """
    t_eL, t_eR, t_nL, t_nR = times
    # qubits: 0 = eL, 1 = eR, 2 = nL, 3 = nR
    state = DenseState.bell_pair().tensor(DenseState.computational("00"))
    state = _idle(state, 0, t_eL, params.T1_e, params.T2_e)
    state = _idle(state, 1, t_eR, params.T1_e, params.T2_e)
    state = _noisy_cnot(state, 0, 2, params.p_e)
    state = _noisy_cnot(state, 1, 3, params.p_e)
    # X-measure both electrons; phase correction on nL when the outcome
    # parity is odd, then randomize the correction side.
    acc = np.zeros((4, 4), dtype=complex)
    for s1, b1 in enumerate(_branches(state, 0, "X")):
        for s2, b2 in enumerate(_branches(b1, 1, "X")):
            reduced = discard(discard(b2, 1), 0)
            if (s1 + s2) % 2 == 1:
                reduced = apply_gate(reduced, "Z", (0,))
            acc += reduced.matrix
    nuc = symmetrize_antidiagonal(DenseState(2, acc))
    nuc = _idle(nuc, 0, t_nL, params.T1_n, params.T2_n)
    nuc = _idle(nuc, 1, t_nR, params.T1_n, params.T2_n)
    return symmetrize_antidiagonal(nuc)


def _merge_two_step(state: DenseState, even_pair: DenseState,
                    next_pair: DenseState, p_n: float) -> DenseState:
    """Consume an electron pair to splice the next nuclear pair onto ``state``."""
    m = state.n_qubits
    state = state.tensor(even_pair).tensor(next_pair)
    e_a, e_b, n_a, n_b = m, m + 1, m + 2, m + 3
    state = _noisy_cnot(state, m - 1, e_a, p_n)
    state = _noisy_cnot(state, n_a, e_b, p_n)
    acc = np.zeros_like(state.matrix)
    for m1, b1 in enumerate(_branches(state, e_a, "Z")):
        for m2, b2 in enumerate(_branches(b1, e_b, "Z")):
            if (m1 + m2) % 2 == 1:
                b2 = apply_gate(b2, "X", (n_a,))
                b2 = apply_gate(b2, "X", (n_b,))
            acc += b2.matrix
    out = DenseState(state.n_qubits, acc)
    out = discard(discard(out, e_b), e_a)
    return symmetrize_antidiagonal(out)


def _merge_probabilistic(state: DenseState, next_pair: DenseState) -> DenseState:
    """Photon-mediated link: join the next pair and measure out its near qubit."""
    m = state.n_qubits
    state = state.tensor(next_pair)
    state = apply_gate(state, "CNOT", (m - 1, m))
    acc = np.zeros_like(state.matrix)
    for m1, b1 in enumerate(_branches(state, m, "Z")):
        if m1 == 1:
            b1 = apply_gate(b1, "X", (m + 1,))
        acc += b1.matrix
    out = discard(DenseState(state.n_qubits, acc), m)
    return symmetrize_antidiagonal(out)


def _merge_deterministic(state: DenseState, next_pair: DenseState,
                         p_e: float, p_n: float) -> DenseState:
    """Deterministic link through a nuclear ancilla that replaces the endpoint."""
    m = state.n_qubits
    state = state.tensor(DenseState.computational("0")).tensor(next_pair)
    anc, new_l, new_r = m, m + 1, m + 2
    state = _noisy_cnot(state, m - 1, anc, p_e)
    acc = np.zeros_like(state.matrix)
    for s, b in enumerate(_branches(state, m - 1, "X")):
        if s == 1:
            b = apply_gate(b, "Z", (anc,))
        acc += b.matrix
    state = symmetrize_antidiagonal(discard(DenseState(state.n_qubits, acc), m - 1))
    anc, new_l, new_r = anc - 1, new_l - 1, new_r - 1
    state = _noisy_cnot(state, anc, new_l, p_n)
    acc = np.zeros_like(state.matrix)
    for m1, b1 in enumerate(_branches(state, new_l, "Z")):
        if m1 == 1:
            b1 = apply_gate(b1, "X", (new_r,))
        acc += b1.matrix
    out = discard(DenseState(state.n_qubits, acc), new_l)
    return symmetrize_antidiagonal(out)


def apply_idle_decoherence(state: DenseState, idle) -> DenseState:
    """Apply per-qubit idle intervals ``idle[q] = [(dt, T1, T2), ...]``."""
    for q, intervals in enumerate(idle):
        for (dt, T1, T2) in intervals:
            state = _idle(state, q, dt, T1, T2)
    return symmetrize_antidiagonal(state)


def run_link_oracle(
    pair_states: list[DenseState],
    mode: str,
    params: NoiseParams,
    times=None,
    qubit_cap: int = DEFAULT_QUBIT_CAP,
) -> DenseState:
    """Merge a chain of two-qubit pair states into one GHZ-form state.

    ``two_step`` expects alternating transferred/electron pairs (odd count)
    and consumes every second pair with noisy nuclear CNOTs; the ts modes
    merge adjacent pairs node by node.  ``times``, when given, lists final
    per-qubit idle intervals applied after linking.
    """
    if mode not in LINK_MODES:
        raise ValueError(f"unknown link mode {mode!r}")
    if not pair_states:
        raise ValueError("need at least one pair")
    if mode == "two_step" and len(pair_states) % 2 == 0:
        raise ValueError("two_step linking needs an odd number of pairs")

    peak = {"two_step": 4, "ts_probabilistic": 2, "ts_deterministic": 3}[mode]
    n_final = len(pair_states) + 1
    if n_final + peak - 2 > qubit_cap:
        raise ValueError(
            f"{n_final}-qubit chain exceeds the {qubit_cap}-qubit oracle cap")

    state = pair_states[0]
    if mode == "two_step":
        for j in range(1, len(pair_states), 2):
            state = _merge_two_step(state, pair_states[j], pair_states[j + 1],
                                    params.p_n)
    elif mode == "ts_probabilistic":
        for pair in pair_states[1:]:
            state = _merge_probabilistic(state, pair)
    else:
        for pair in pair_states[1:]:
            state = _merge_deterministic(state, pair, params.p_e, params.p_n)

    if times is not None:
        state = apply_idle_decoherence(state, times)
    return state
