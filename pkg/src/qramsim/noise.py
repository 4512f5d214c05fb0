"""Scalar noise algebra: decay factors, gate-error factors and Kraus channels.

Everything downstream (closed-form layer analytics and the brute-force
density-matrix oracle) is built on the handful of scalar functions defined
here, so their conventions are the single source of truth:

* ``eps(dt, T) = 1 - exp(-dt/T)`` is the decay probability of a memory with
  characteristic time ``T`` after idling for ``dt``.
* A dephasing channel driven by idling for ``dt`` uses channel probability
  ``eps(dt, T2) / 2`` so that coherences shrink by exactly ``exp(-dt/T2)``.
* An amplitude-damping channel driven by idling uses probability
  ``eps(dt, T1)`` directly.
* A noisy CNOT is an ideal CNOT followed by one depolarizing channel on the
  control and one on the target.  The depolarizing channel used there maps
  ``rho -> (1-p) rho + p I/2`` ("replace by the maximally mixed state with
  probability p"), which equals the Pauli-form channel at parameter ``3p/4``.
  This convention is what makes the closed-form pair and linking factors
  below exact; see ``cnot_error_kraus``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "NoiseParams",
    "KrausSet",
    "eps",
    "eps_bar",
    "f_factor",
    "g_factor",
    "h_factor",
    "h_tilde_factor",
    "two_step_link_offdiag_factor",
    "deterministic_link_offdiag_factor",
    "kraus_set",
    "dephasing_for_idle",
    "damping_for_idle",
    "cnot_error_kraus",
    "NUCLEAR_TIME_RATIO",
]

# Nuclear spins are taken to hold coherence 100x longer than electron spins.
NUCLEAR_TIME_RATIO = 100.0

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _check_probability(p: float, name: str = "p") -> None:
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {p}")


def eps(dt: float, T: float) -> float:
    """Decay probability ``1 - exp(-dt/T)`` accumulated over an idle window.

    ``T`` may be ``math.inf`` for a noiseless memory.
    """
    if T <= 0:
        raise ValueError(f"characteristic time must be positive, got {T}")
    if dt < 0:
        raise ValueError(f"idle duration must be non-negative, got {dt}")
    if math.isinf(T):
        return 0.0
    return -math.expm1(-dt / T)


def eps_bar(dt: float, T: float) -> float:
    """Survival factor ``exp(-dt/T)``; complement of :func:`eps`."""
    if T <= 0:
        raise ValueError(f"characteristic time must be positive, got {T}")
    if dt < 0:
        raise ValueError(f"idle duration must be non-negative, got {dt}")
    if math.isinf(T):
        return 1.0
    return math.exp(-dt / T)


def f_factor(e1: float, e2: float) -> float:
    """Even-parity survival of two one-way decays: ``1 - e1 - e2 + 2 e1 e2``."""
    return 1.0 - e1 - e2 + 2.0 * e1 * e2


def g_factor(e1: float, e2: float) -> float:
    """No-decay survival of two one-way decays: ``(1-e1)(1-e2)``."""
    return (1.0 - e1) * (1.0 - e2)


def h_factor(p: float) -> float:
    """Diagonal damage of one even-link pair of noisy nuclear CNOTs."""
    return (1.0 - p / 2.0) ** 2 - p * (1.0 - p / 2.0)


def h_tilde_factor(p: float) -> float:
    """Diagonal damage of one deterministic linking node (two noisy CNOTs)."""
    return (1.0 - p) ** 2 + (p / 2.0) * (1.0 - p / 2.0)


def two_step_link_offdiag_factor(p: float) -> float:
    """Corner-coherence factor per even link of the two-step scheme.

    ``(1-p)^2 (1 - p + p^2/2)``; exact for the CNOT error model used here
    (verified against the dense oracle, see ``oracle_validate``).
    """
    return (1.0 - p) ** 2 * (1.0 - p + p * p / 2.0)


def deterministic_link_offdiag_factor(p: float) -> float:
    """Corner-coherence factor per deterministic linking node."""
    return (1.0 - p) ** 3 * (1.0 - p / 2.0)


@dataclass(frozen=True)
class NoiseParams:
    """Physical error rates of one node type.

    Times are seconds; nuclear memories default to 100x the electron times.
    ``p_link`` is the success probability of a probabilistic linking gate
    and is bound to ``eta`` unless set explicitly.
    """

    T1_e: float = 2.0
    T2_e: float = 0.1
    T1_n: float | None = None
    T2_n: float | None = None
    p_e: float = 0.0
    p_n: float = 0.0
    eta: float = 1.0
    p_link: float | None = None

    def __post_init__(self) -> None:
        if self.T1_n is None:
            object.__setattr__(self, "T1_n", NUCLEAR_TIME_RATIO * self.T1_e)
        if self.T2_n is None:
            object.__setattr__(self, "T2_n", NUCLEAR_TIME_RATIO * self.T2_e)
        if self.p_link is None:
            object.__setattr__(self, "p_link", self.eta)
        for name in ("T1_e", "T2_e", "T1_n", "T2_n"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("p_e", "p_n", "eta", "p_link"):
            _check_probability(getattr(self, name), name)


@dataclass(frozen=True)
class KrausSet:
    """A single-qubit channel as an explicit list of 2x2 Kraus operators."""

    label: str
    p: float
    operators: tuple[np.ndarray, ...] = field(repr=False)

    def completeness_defect(self) -> float:
        """Max-abs deviation of ``sum K^dag K`` from the identity."""
        acc = sum(K.conj().T @ K for K in self.operators)
        return float(np.abs(acc - _I2).max())


def kraus_set(kind: str, p: float) -> KrausSet:
    """Build one of the three standard channels.

    ``dephasing``     {sqrt(1-p) I, sqrt(p) Z}
    ``damping``       {|0><0| + sqrt(1-p) |1><1|, sqrt(p) |0><1|}
    ``depolarizing``  {sqrt(1-p) I, sqrt(p/3) X, sqrt(p/3) Y, sqrt(p/3) Z}
    """
    _check_probability(p)
    if kind == "dephasing":
        ops = (math.sqrt(1.0 - p) * _I2, math.sqrt(p) * _Z)
    elif kind == "damping":
        k0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - p)]], dtype=complex)
        k1 = np.array([[0.0, math.sqrt(p)], [0.0, 0.0]], dtype=complex)
        ops = (k0, k1)
    elif kind == "depolarizing":
        ops = (
            math.sqrt(1.0 - p) * _I2,
            math.sqrt(p / 3.0) * _X,
            math.sqrt(p / 3.0) * _Y,
            math.sqrt(p / 3.0) * _Z,
        )
    else:
        raise ValueError(f"unknown channel kind: {kind!r}")
    return KrausSet(label=kind, p=p, operators=ops)


def dephasing_for_idle(dt: float, T2: float) -> KrausSet:
    """Dephasing accumulated over an idle window; coherence factor exp(-dt/T2)."""
    return kraus_set("dephasing", eps(dt, T2) / 2.0)


def damping_for_idle(dt: float, T1: float) -> KrausSet:
    """Amplitude damping accumulated over an idle window."""
    return kraus_set("damping", eps(dt, T1))


def cnot_error_kraus(p: float) -> KrausSet:
    """Depolarizing channel applied to each qubit of a noisy CNOT.

    Maps ``rho -> (1-p) rho + p I/2``, i.e. the Pauli-form set at ``3p/4``.
    """
    _check_probability(p)
    return kraus_set("depolarizing", 0.75 * p)
