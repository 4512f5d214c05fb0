"""Tree-level figures of merit: per-layer fidelities, their product, timing.

A full access tree is good exactly when every layer's GHZ state is good,
so the tree (access) fidelity is the product of per-layer fidelities.
Monte Carlo summaries aggregate independent seeded runs of the event
simulation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .analytics import (
    FirstOrderValidityWarning,
    LinkChain,
    apply_cnot_noise,
    apply_final_decoherence,
    ghz_fidelity,
    link_noiseless,
    validity_warning,
)
from .noise import NoiseParams, eps
from .protocol import (
    PlacementStrategy,
    QramRunResult,
    TimingModel,
    simulate_qram,
)

__all__ = [
    "QramEstimate",
    "MonteCarloSummary",
    "RunConfig",
    "layer_fidelity",
    "qram_fidelity",
    "estimate_run",
    "monte_carlo",
]


@dataclass(frozen=True)
class QramEstimate:
    per_layer_fidelity: tuple[float, ...]
    tree_fidelity: float
    query_time: float

    def __post_init__(self) -> None:
        prod = 1.0
        for f in self.per_layer_fidelity:
            if not (-1e-12 <= f <= 1.0 + 1e-12):
                raise ValueError(f"layer fidelity out of range: {f}")
            prod *= f
        if abs(prod - self.tree_fidelity) > 1e-12:
            raise ValueError("tree fidelity is not the product of the layers")


@dataclass(frozen=True)
class MonteCarloSummary:
    n_sims: int
    mean_fidelity: float
    stderr_fidelity: float
    mean_query_time: float
    stderr_query_time: float


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce one simulation run (minus the seed)."""

    protocol: str
    n_layers: int
    params: NoiseParams
    timing: TimingModel = field(default_factory=TimingModel)
    placement: PlacementStrategy = field(default_factory=PlacementStrategy)
    extend_with_qc_link: bool = True
    reset_policy: str = "single_round"


def layer_fidelity(chain: LinkChain | None, params: NoiseParams) -> float:
    """Closed-form fidelity of one layer's distributed state.

    Composes the analytics pipeline: noiseless linking of the pair
    parameters, CNOT-noise factors, then post-linking memory decoherence.
    A missing chain (single-node layer without extension) is perfect.
    """
    if chain is None:
        return 1.0
    corner = link_noiseless(chain.pairs)
    corner = apply_cnot_noise(corner, chain)
    corner = apply_final_decoherence(corner, chain)
    return ghz_fidelity(corner)


def qram_fidelity(per_layer: list[float] | tuple[float, ...]) -> float:
    """Product of per-layer fidelities."""
    if len(per_layer) == 0:
        raise ValueError("need at least one layer fidelity")
    out = 1.0
    for f in per_layer:
        out *= f
    return out


def max_chain_eps(chain: LinkChain | None) -> float:
    """Largest scalar noise parameter appearing in one chain."""
    if chain is None:
        return 0.0
    out = 0.0
    for pp in chain.pairs:
        out = max(out, pp.mu, 1.0 - pp.nu)
    for ev in chain.cnot_events:
        out = max(out, ev.p)
    for intervals in chain.final_idle:
        for iv in intervals:
            out = max(out, eps(iv.duration, iv.T1), eps(iv.duration, iv.T2))
    return out


def estimate_run(result: QramRunResult, params: NoiseParams) -> QramEstimate:
    """Layer fidelities and their product for one simulated run."""
    for chain in result.chains:
        if chain is None:
            continue
        note = validity_warning(chain.n_qubits, max_chain_eps(chain))
        if note is not None:
            warnings.warn(
                f"first-order truncation marginal: {note.n_qubits} qubits "
                f"x eps {note.max_eps:.3g} = {note.product:.3g} > 1",
                category=FirstOrderValidityWarning, stacklevel=2)
    fids = tuple(layer_fidelity(chain, params) for chain in result.chains)
    tree = qram_fidelity(fids) if fids else 1.0
    return QramEstimate(per_layer_fidelity=fids, tree_fidelity=tree,
                        query_time=result.query_time)


def run_once(config: RunConfig, seed: int) -> QramEstimate:
    result = simulate_qram(
        config.protocol, config.n_layers, config.params, config.timing,
        config.placement, seed=seed,
        extend_with_qc_link=config.extend_with_qc_link,
        reset_policy=config.reset_policy)
    return estimate_run(result, config.params)


def monte_carlo(config: RunConfig, n_sims: int = 100,
                base_seed: int = 0) -> MonteCarloSummary:
    """Aggregate ``n_sims`` runs seeded ``base_seed .. base_seed+n_sims-1``.

    Standard errors are the sample standard deviation over the runs divided
    by ``sqrt(n_sims)``.
    """
    if n_sims < 2:
        raise ValueError("n_sims must be >= 2 for a standard error")
    fids = np.empty(n_sims)
    times = np.empty(n_sims)
    for i in range(n_sims):
        est = run_once(config, base_seed + i)
        fids[i] = est.tree_fidelity
        times[i] = est.query_time
    return MonteCarloSummary(
        n_sims=n_sims,
        mean_fidelity=float(fids.mean()),
        stderr_fidelity=float(fids.std(ddof=1) / math.sqrt(n_sims)),
        mean_query_time=float(times.mean()),
        stderr_query_time=float(times.std(ddof=1) / math.sqrt(n_sims)),
    )
