"""Closed-form reconstruction of GHZ-relevant density-matrix entries.

A distributed layer state is tracked through three scalars (``GhzCorner``):
the first and last diagonal entries and the corner coherence, all in the
convention of entries of ``2 rho`` so that the noiseless values are 1.
Interior diagonal entries are never tracked; they feed back into the GHZ
entries only at second order in the small noise parameters.  This file is
pure scalar algebra over the chain description (``LinkChain``) produced by
the event simulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

from .noise import (
    NoiseParams,
    deterministic_link_offdiag_factor,
    eps,
    eps_bar,
    f_factor,
    g_factor,
    h_factor,
    h_tilde_factor,
    two_step_link_offdiag_factor,
)

__all__ = [
    "PairParams",
    "GhzCorner",
    "CnotEvent",
    "IdleInterval",
    "LinkChain",
    "ValidityWarning",
    "FirstOrderValidityWarning",
    "pair_after_transfer",
    "pair_electron_only",
    "diag_entry",
    "neighbor_entry",
    "link_noiseless",
    "apply_cnot_noise",
    "apply_final_decoherence",
    "ghz_fidelity",
    "validity_warning",
    "TWO_STEP_EVEN_LINK",
    "TS_DETERMINISTIC",
]

TWO_STEP_EVEN_LINK = "two_step_even_link"
TS_DETERMINISTIC = "ts_deterministic"


@dataclass(frozen=True)
class PairParams:
    """The two scalars describing a noisy distributed pair.

    ``mu`` is the weight leaked into the anti-correlated diagonal blocks,
    ``nu`` the remaining corner coherence; a perfect pair is (0, 1).
    """

    mu: float
    nu: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.mu <= 1.0):
            raise ValueError(f"mu must lie in [0, 1], got {self.mu}")
        if abs(self.nu) > 1.0 - self.mu + 1e-12:
            raise ValueError(f"|nu| <= 1 - mu violated: mu={self.mu}, nu={self.nu}")


@dataclass(frozen=True)
class IdleInterval:
    """One custody window of a qubit in a given memory (duration, T1, T2)."""

    duration: float
    T1: float
    T2: float


@dataclass(frozen=True)
class CnotEvent:
    """A noisy linking event attributed to one chain position."""

    node: int
    kind: str
    p: float

    def __post_init__(self) -> None:
        if self.kind not in (TWO_STEP_EVEN_LINK, TS_DETERMINISTIC):
            raise ValueError(f"unknown CNOT event kind {self.kind!r}")


@dataclass(frozen=True)
class LinkChain:
    """Everything the analytics needs about one distributed layer.

    ``pairs`` has one entry per link of the n-node chain; ``final_idle``
    has one interval list per final qubit (chain order, leftmost first).
    """

    pairs: tuple[PairParams, ...]
    cnot_events: tuple[CnotEvent, ...] = ()
    final_idle: tuple[tuple[IdleInterval, ...], ...] = ()

    def __post_init__(self) -> None:
        if not self.pairs:
            raise ValueError("a chain needs at least one pair")
        if self.final_idle and len(self.final_idle) != self.n_qubits:
            raise ValueError(
                f"final_idle must have {self.n_qubits} entries, "
                f"got {len(self.final_idle)}")
        for ev in self.cnot_events:
            if not (0 <= ev.node <= self.n_qubits):
                raise ValueError(f"event node {ev.node} outside chain")

    @property
    def n_qubits(self) -> int:
        return len(self.pairs) + 1


@dataclass(frozen=True)
class GhzCorner:
    """GHZ-relevant entries of a layer state, in entries-of-2-rho convention.

    ``cnot_diag_applied`` records the accumulated diagonal CNOT factor so
    that late neighbor-term corrections can be threaded consistently
    regardless of the order the noise maps are applied in.
    """

    n_qubits: int
    rho00: float
    rho11: float
    rho01: float
    cnot_diag_applied: float = 1.0

    def __post_init__(self) -> None:
        for name in ("rho00", "rho11"):
            v = getattr(self, name)
            if not (-1e-12 <= v <= 1.0 + 1e-9):
                raise ValueError(f"{name} out of range: {v}")
        bound = math.sqrt(max(self.rho00 * self.rho11, 0.0)) + 1e-12
        if abs(self.rho01) > bound:
            raise ValueError(
                f"corner coherence {self.rho01} exceeds sqrt(rho00*rho11)={bound}")


class FirstOrderValidityWarning(UserWarning):
    """Category for truncation-validity notices emitted during estimation."""


@dataclass(frozen=True)
class ValidityWarning:
    """Raised-order terms may matter: n_qubits * max_eps exceeded one."""

    n_qubits: int
    max_eps: float

    @property
    def product(self) -> float:
        return self.n_qubits * self.max_eps


def pair_after_transfer(
    t_eL: float, t_eR: float, t_nL: float, t_nR: float, params: NoiseParams
) -> PairParams:
    """Pair parameters after creation, transfer CNOTs and both idle phases.

    Electron idling (first phase) enters through T1_e/T2_e, nuclear idling
    (second phase) through T1_n/T2_n; each transfer CNOT errs with p_e.
    """
    e1_eL, e1_eR = eps(t_eL, params.T1_e), eps(t_eR, params.T1_e)
    e1_nL, e1_nR = eps(t_nL, params.T1_n), eps(t_nR, params.T1_n)
    pe = params.p_e
    mu = (1.0
          - f_factor(e1_eL, e1_eR) * (1.0 - pe) ** 2 * g_factor(e1_nL, e1_nR)
          - e1_nL * e1_nR) / 2.0
    nu = (eps_bar(t_eL, params.T2_e) * eps_bar(t_eR, params.T2_e)
          * eps_bar(t_nL, params.T2_n) * eps_bar(t_nR, params.T2_n)
          * math.sqrt(eps_bar(t_eL, params.T1_e) * eps_bar(t_eR, params.T1_e)
                      * eps_bar(t_nL, params.T1_n) * eps_bar(t_nR, params.T1_n))
          * (1.0 - pe) ** 4)
    return PairParams(mu=mu, nu=nu)


def pair_electron_only(
    t_eL: float, t_eR: float, t2_eL: float, t2_eR: float, params: NoiseParams
) -> PairParams:
    """Pair parameters for an electron-only pair idling over two phases.

    No CNOT error enters (creation is heralded); all times use the electron
    memory constants.  The second-phase cross term enters with a plus sign
    by convention; the dense oracle run in ``oracle_validate`` reports its
    (second-order) deviation from the exact channel composition.
    """
    e1_L, e1_R = eps(t_eL, params.T1_e), eps(t_eR, params.T1_e)
    e1_L2, e1_R2 = eps(t2_eL, params.T1_e), eps(t2_eR, params.T1_e)
    mu = (1.0
          - f_factor(e1_L, e1_R) * g_factor(e1_L2, e1_R2)
          + e1_L2 * e1_R2) / 2.0
    nu = (eps_bar(t_eL, params.T2_e) * eps_bar(t_eR, params.T2_e)
          * eps_bar(t2_eL, params.T2_e) * eps_bar(t2_eR, params.T2_e)
          * math.sqrt(eps_bar(t_eL, params.T1_e) * eps_bar(t_eR, params.T1_e)
                      * eps_bar(t2_eL, params.T1_e) * eps_bar(t2_eR, params.T1_e)))
    return PairParams(mu=mu, nu=min(nu, 1.0 - mu))


def diag_entry(pairs: Sequence[PairParams], bits: Sequence[int]) -> float:
    """Diagonal entry (of 2 rho) for the given qubit values.

    ``bits[0]`` is the first chain qubit counting from the right of the
    binary index; link j contributes ``1 - mu_j`` when its two qubit values
    agree and ``mu_j`` when they differ.
    """
    if len(bits) != len(pairs) + 1:
        raise ValueError(
            f"need {len(pairs) + 1} bits for {len(pairs)} pairs, got {len(bits)}")
    out = 1.0
    for j, pp in enumerate(pairs):
        out *= pp.mu if (bits[j] ^ bits[j + 1]) else (1.0 - pp.mu)
    return out


def neighbor_entry(pairs: Sequence[PairParams], j: int) -> float:
    """Diagonal entry with only qubit ``j`` (1-based) flipped."""
    n = len(pairs) + 1
    if not (1 <= j <= n):
        raise ValueError(f"qubit index {j} outside 1..{n}")
    bits = [0] * n
    bits[j - 1] = 1
    return diag_entry(pairs, bits)


def link_noiseless(pairs: Sequence[PairParams]) -> GhzCorner:
    """Corner entries after linking the chain with perfect operations."""
    pairs = tuple(pairs)
    if not pairs:
        raise ValueError("need at least one pair")
    diag = 1.0
    corner = 1.0
    for pp in pairs:
        diag *= 1.0 - pp.mu
        corner *= pp.nu
    return GhzCorner(n_qubits=len(pairs) + 1, rho00=diag, rho11=diag,
                     rho01=corner)


def apply_cnot_noise(corner: GhzCorner, chain: LinkChain) -> GhzCorner:
    """Multiply in the diagonal and corner factors of every linking event."""
    d = 1.0
    c = 1.0
    for ev in chain.cnot_events:
        if ev.kind == TWO_STEP_EVEN_LINK:
            d *= h_factor(ev.p)
            c *= two_step_link_offdiag_factor(ev.p)
        elif ev.kind == TS_DETERMINISTIC:
            d *= h_tilde_factor(ev.p)
            c *= deterministic_link_offdiag_factor(ev.p)
        else:  # pragma: no cover - guarded by CnotEvent
            raise ValueError(f"unknown event kind {ev.kind!r}")
    return GhzCorner(
        n_qubits=corner.n_qubits,
        rho00=corner.rho00 * d,
        rho11=corner.rho11 * d,
        rho01=corner.rho01 * c,
        cnot_diag_applied=corner.cnot_diag_applied * d,
    )


def _interval_decays(intervals: Sequence[IdleInterval]) -> tuple[float, float]:
    """Accumulated (damping, dephasing) survival of one qubit's custody."""
    eb1 = 1.0
    eb2 = 1.0
    for iv in intervals:
        eb1 *= eps_bar(iv.duration, iv.T1)
        eb2 *= eps_bar(iv.duration, iv.T2)
    return eb1, eb2


def apply_final_decoherence(corner: GhzCorner, chain: LinkChain) -> GhzCorner:
    """Fold the post-linking memory idling into the corner entries.

    Dephasing and the square-root damping penalty multiply the coherence;
    damping drains the all-ones entry and feeds the all-zeros entry through
    single-flip neighbor terms, scaled by whatever diagonal CNOT factor has
    been applied so far (this is what makes the two noise maps commute).
    """
    if len(chain.final_idle) != chain.n_qubits:
        raise ValueError("chain has no per-qubit idle data")
    rho00 = corner.rho00
    rho11 = corner.rho11
    rho01 = corner.rho01
    for j in range(1, chain.n_qubits + 1):
        eb1, eb2 = _interval_decays(chain.final_idle[j - 1])
        rho01 *= eb2 * math.sqrt(eb1)
        rho11 *= eb1
        rho00 += (1.0 - eb1) * neighbor_entry(chain.pairs, j) * corner.cnot_diag_applied
    return GhzCorner(
        n_qubits=corner.n_qubits,
        rho00=rho00,
        rho11=rho11,
        rho01=rho01,
        cnot_diag_applied=corner.cnot_diag_applied,
    )


def ghz_fidelity(corner: GhzCorner) -> float:
    """Overlap with the ideal GHZ state: (rho00 + rho11 + 2 rho01) / 4."""
    return (corner.rho00 + corner.rho11 + 2.0 * corner.rho01) / 4.0


def validity_warning(n_qubits: int, max_eps: float) -> ValidityWarning | None:
    """Warn when first-order truncation stops being trustworthy.

    The neglected terms stay controlled while ``n_qubits * max_eps <= 1``
    (threshold inclusive); beyond that a structured warning is returned.
    """
    if n_qubits * max_eps > 1.0:
        return ValidityWarning(n_qubits=n_qubits, max_eps=max_eps)
    return None
