"""Discrete-event simulation of GHZ distribution across QRAM layers.

The simulation is noiseless at the state level: it only decides *when*
heralded attempts succeed and which noisy operations ran, and emits both a
raw event record (`LayerRecord`) and the derived `LinkChain` consumed by
the closed-form analytics.  Two protocols are covered:

* ``td`` - the two-step scheme: transferred pairs on odd links, electron
  pairs on even links consumed by deterministic nuclear CNOTs, all in two
  layer-wide barrier steps.
* ``ts`` - node-by-node linking in binary-tree order with probabilistic
  photon-mediated merges and optionally deterministic (nuclear) nodes.

On a failed probabilistic merge both fragments are destroyed and every
constituent link re-enters pair generation.  The default accounting
(``reset_policy="single_round"``) regenerates all links of the segment in
one parallel round and re-links level by level, modeling pipelined
regeneration; ``"full_rebuild"`` recurses the whole construction, which
makes query times grow steeply with p_link < 1 (kept for comparison).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .analytics import (
    TS_DETERMINISTIC,
    TWO_STEP_EVEN_LINK,
    CnotEvent,
    IdleInterval,
    LinkChain,
    PairParams,
    pair_after_transfer,
    pair_electron_only,
)
from .noise import NoiseParams

__all__ = [
    "TimingModel",
    "PlacementStrategy",
    "CustodyInterval",
    "LinkRecord",
    "LayerRecord",
    "QramRunResult",
    "attempt_cycle_duration",
    "sample_heralded_success",
    "simulate_layer_td",
    "simulate_layer_ts",
    "simulate_qram",
    "RESET_POLICIES",
]

RESET_POLICIES = ("single_round", "full_rebuild")

ELECTRON = "electron"
NUCLEAR = "nuclear"


@dataclass(frozen=True)
class TimingModel:
    """Gate and communication durations, seconds (velocity in m/s)."""

    single_qubit_gate: float = 32e-9
    qubit_init: float = 5e-6
    nuclear_cnot: float = 16e-6
    electronic_cnot: float = 29e-9
    photon_spin_interaction: float = 0.1e-9
    light_velocity: float = 2e8
    cavity_distance: float = 10e-6
    measurement: float = 0.0

    def __post_init__(self) -> None:
        for name in ("single_qubit_gate", "qubit_init", "nuclear_cnot",
                     "electronic_cnot", "photon_spin_interaction",
                     "cavity_distance", "measurement"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.light_velocity <= 0:
            raise ValueError("light_velocity must be positive")


@dataclass(frozen=True)
class PlacementStrategy:
    """Where deterministic linking nodes go in the ts protocol.

    ``random`` makes each merge node deterministic with probability
    ``param``; ``top_layers`` makes every merge at distribution level
    ``param + 2`` and above deterministic, i.e. roughly a fraction
    ``2**-(param+1)`` of the nodes, concentrated at the top of the
    linking tree.
    """

    kind: str = "random"
    param: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("random", "top_layers"):
            raise ValueError(f"unknown placement kind {self.kind!r}")
        if self.kind == "random" and not (0.0 <= self.param <= 1.0):
            raise ValueError("random placement needs a fraction in [0, 1]")
        if self.kind == "top_layers":
            if self.param < 1 or self.param != int(self.param):
                raise ValueError("top_layers placement needs an integer offset >= 1")


@dataclass(frozen=True)
class CustodyInterval:
    start: float
    end: float
    memory: str

    @property
    def duration(self) -> float:
        return self.end - self.start


@dataclass(frozen=True)
class LinkRecord:
    """One surviving pair: creation completion and its two custody windows."""

    index: int
    created_at: float
    left_window: CustodyInterval
    right_window: CustodyInterval


@dataclass(frozen=True)
class LayerRecord:
    """Raw per-layer event record (the noise ledger entry for one layer)."""

    layer_index: int
    layer_size: int
    links: tuple[LinkRecord, ...]
    member_custody: tuple[tuple[CustodyInterval, ...], ...]
    cnot_events: tuple[CnotEvent, ...]
    completion_time: float


@dataclass(frozen=True)
class QramRunResult:
    n_layers: int
    chains: tuple[LinkChain | None, ...]
    records: tuple[LayerRecord, ...]
    query_time: float
    seed: int


def attempt_cycle_duration(timing: TimingModel) -> float:
    """Duration of one heralded pair-generation attempt.

    Qubit initialization, two photon-spin interactions, photon transit and
    the classical herald return over the cavity distance.
    """
    transit = timing.cavity_distance / timing.light_velocity
    return timing.qubit_init + 2.0 * timing.photon_spin_interaction + 2.0 * transit


def sample_heralded_success(p: float, rng: np.random.Generator) -> int:
    """Number of attempts until the first heralded success (geometric, >= 1)."""
    if not (0.0 < p <= 1.0):
        raise ValueError(f"success probability must be in (0, 1], got {p}")
    return int(rng.geometric(p))


def _power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


# ---------------------------------------------------------------------------
# two-step protocol
# ---------------------------------------------------------------------------

def simulate_layer_td(
    layer_size: int,
    params: NoiseParams,
    timing: TimingModel,
    rng: np.random.Generator,
    overlap_steps: bool = False,
) -> tuple[LinkChain, LayerRecord]:
    """Simulate one layer of the two-step scheme.

    Step 1 generates pairs on all odd links in parallel and transfers them
    at a layer-wide barrier; step 2 generates the even-link pairs and
    splices everything with nuclear CNOTs at a second barrier.  With
    ``overlap_steps`` the even-link generation starts at time zero instead
    of after the transfers (the even electrons then idle longer).
    """
    if not _power_of_two(layer_size) or layer_size < 2:
        raise ValueError(f"layer size must be a power of two >= 2, got {layer_size}")
    c = attempt_cycle_duration(timing)
    transfer_delta = (timing.electronic_cnot + timing.measurement
                      + timing.single_qubit_gate)
    splice_delta = (timing.nuclear_cnot + timing.measurement
                    + timing.single_qubit_gate)
    n_links = layer_size - 1
    odd_links = list(range(1, n_links + 1, 2))
    even_links = list(range(2, n_links + 1, 2))

    ready_odd = {l: sample_heralded_success(params.eta, rng) * c for l in odd_links}
    barrier1 = max(ready_odd.values())
    transfer_done = barrier1 + transfer_delta

    if even_links:
        even_start = 0.0 if overlap_steps else transfer_done
        ready_even = {l: even_start + sample_heralded_success(params.eta, rng) * c
                      for l in even_links}
        barrier2 = max(transfer_done, max(ready_even.values()))
        completion = barrier2 + splice_delta
    else:
        ready_even = {}
        barrier2 = transfer_done
        completion = transfer_done

    nuclear_wait = barrier2 - transfer_done

    def has_splice_cnot(node: int) -> bool:
        return 2 <= node <= layer_size - 1

    pairs: list[PairParams] = []
    link_records: list[LinkRecord] = []
    for l in range(1, n_links + 1):
        if l % 2 == 1:
            t_e = barrier1 - ready_odd[l]
            t_nL = nuclear_wait if has_splice_cnot(l) else 0.0
            t_nR = nuclear_wait if has_splice_cnot(l + 1) else 0.0
            pairs.append(pair_after_transfer(t_e, t_e, t_nL, t_nR, params))
            link_records.append(LinkRecord(
                index=l, created_at=ready_odd[l],
                left_window=CustodyInterval(ready_odd[l], barrier1, ELECTRON),
                right_window=CustodyInterval(ready_odd[l], barrier1, ELECTRON)))
        else:
            wait = barrier2 - ready_even[l]
            pairs.append(pair_electron_only(wait, wait, 0.0, 0.0, params))
            link_records.append(LinkRecord(
                index=l, created_at=ready_even[l],
                left_window=CustodyInterval(ready_even[l], barrier2, ELECTRON),
                right_window=CustodyInterval(ready_even[l], barrier2, ELECTRON)))

    events = tuple(CnotEvent(node=l, kind=TWO_STEP_EVEN_LINK, p=params.p_n)
                   for l in even_links)

    final_idle: list[tuple[IdleInterval, ...]] = []
    custody: list[tuple[CustodyInterval, ...]] = []
    for node in range(1, layer_size + 1):
        if has_splice_cnot(node):
            final_idle.append(())
            custody.append((CustodyInterval(transfer_done, barrier2, NUCLEAR),
                            CustodyInterval(completion, completion, NUCLEAR)))
        else:
            dur = completion - transfer_done
            final_idle.append((IdleInterval(dur, params.T1_n, params.T2_n),))
            custody.append((CustodyInterval(transfer_done, completion, NUCLEAR),))

    chain = LinkChain(pairs=tuple(pairs), cnot_events=events,
                      final_idle=tuple(final_idle))
    record = LayerRecord(
        layer_index=0, layer_size=layer_size, links=tuple(link_records),
        member_custody=tuple(custody), cnot_events=events,
        completion_time=completion)
    return chain, record


# ---------------------------------------------------------------------------
# binary-tree (ts) protocol
# ---------------------------------------------------------------------------

@dataclass
class _MergeTree:
    lo: int
    hi: int
    mid: int | None = None
    level: int = 0
    left: "_MergeTree | None" = None
    right: "_MergeTree | None" = None
    by_level: dict[int, list[int]] = field(default_factory=dict)

    @property
    def n_links(self) -> int:
        return self.hi - self.lo


def _build_merge_tree(lo: int, hi: int) -> _MergeTree:
    n = hi - lo
    if n == 1:
        return _MergeTree(lo=lo, hi=hi)
    mid = lo + n // 2
    left = _build_merge_tree(lo, mid)
    right = _build_merge_tree(mid, hi)
    node = _MergeTree(lo=lo, hi=hi, mid=mid, level=math.ceil(math.log2(n)),
                      left=left, right=right)
    for child in (left, right):
        for lv, mids in child.by_level.items():
            node.by_level.setdefault(lv, []).extend(mids)
        if child.mid is not None:
            node.by_level.setdefault(child.level, []).append(child.mid)
    return node


def _iter_merges(tree: _MergeTree):
    if tree.mid is None:
        return
    yield tree
    yield from _iter_merges(tree.left)
    yield from _iter_merges(tree.right)


def _assign_placement(
    tree: _MergeTree, placement: PlacementStrategy, rng: np.random.Generator
) -> dict[int, bool]:
    det: dict[int, bool] = {}
    for node in _iter_merges(tree):
        if placement.kind == "top_layers":
            det[node.mid] = node.level >= int(placement.param) + 2
        else:
            det[node.mid] = bool(rng.random() < placement.param)
    return det


class _TsBuilder:
    def __init__(self, params: NoiseParams, timing: TimingModel,
                 det: dict[int, bool], rng: np.random.Generator,
                 reset_policy: str):
        self.params = params
        self.rng = rng
        self.det = det
        self.policy = reset_policy
        self.cycle = attempt_cycle_duration(timing)
        self.merge_prob_dur = (2.0 * timing.photon_spin_interaction
                               + 2.0 * timing.cavity_distance / timing.light_velocity
                               + timing.measurement + timing.single_qubit_gate)
        self.merge_det_dur = (timing.electronic_cnot + timing.nuclear_cnot
                              + 2.0 * timing.measurement
                              + 2.0 * timing.single_qubit_gate)
        self.rebuilds = 0

    def epr(self, t0: float) -> float:
        return t0 + sample_heralded_success(self.params.eta, self.rng) * self.cycle

    def build(self, node: _MergeTree, t0: float):
        """Returns (ready, created: {link: t}, merges: {boundary: t_done})."""
        if node.mid is None:
            t = self.epr(t0)
            return t, {node.lo: t}, {}
        t_l, created_l, merges_l = self.build(node.left, t0)
        t_r, created_r, merges_r = self.build(node.right, t0)
        t = max(t_l, t_r)
        created = {**created_l, **created_r}
        merges = {**merges_l, **merges_r}
        if self.det[node.mid]:
            t += self.merge_det_dur
            merges[node.mid] = t
            return t, created, merges
        while True:
            t += self.merge_prob_dur
            if self.rng.random() < self.params.p_link:
                merges[node.mid] = t
                return t, created, merges
            self.rebuilds += 1
            if self.policy == "full_rebuild":
                t_l, created_l, merges_l = self.build(node.left, t)
                t_r, created_r, merges_r = self.build(node.right, t)
                t = max(t_l, t_r)
                created.update(created_l)
                created.update(created_r)
                merges.update(merges_l)
                merges.update(merges_r)
            else:
                # one parallel regeneration round, then a non-cascading
                # level-by-level relink sweep of the segment interior
                ks = self.rng.geometric(self.params.eta, size=node.n_links)
                for i, l in enumerate(range(node.lo, node.hi)):
                    created[l] = t + ks[i] * self.cycle
                t = t + ks.max() * self.cycle
                for lv in sorted(node.by_level):
                    mids = node.by_level[lv]
                    dur = (self.merge_det_dur if any(self.det[m] for m in mids)
                           else self.merge_prob_dur)
                    t += dur
                    for m in mids:
                        merges[m] = t


def simulate_layer_ts(
    layer_size: int,
    params: NoiseParams,
    timing: TimingModel,
    placement: PlacementStrategy,
    rng: np.random.Generator,
    reset_policy: str = "single_round",
) -> tuple[LinkChain, LayerRecord]:
    """Simulate one layer of the binary-tree stochastic scheme."""
    if not _power_of_two(layer_size) or layer_size < 2:
        raise ValueError(f"layer size must be a power of two >= 2, got {layer_size}")
    if reset_policy not in RESET_POLICIES:
        raise ValueError(f"unknown reset policy {reset_policy!r}")
    n_links = layer_size - 1
    tree = _build_merge_tree(0, n_links)
    det = _assign_placement(tree, placement, rng) if n_links > 1 else {}
    builder = _TsBuilder(params, timing, det, rng, reset_policy)
    completion, created, merges = builder.build(tree, 0.0)

    def touch(node_idx: int) -> float:
        if 1 <= node_idx <= n_links - 1:
            return merges[node_idx]
        if n_links == 1:
            return created[0] if node_idx == 0 else created[n_links - 1]
        return merges[1] if node_idx == 0 else merges[n_links - 1]

    pairs: list[PairParams] = []
    link_records: list[LinkRecord] = []
    for l in range(n_links):
        t_left = touch(l) - created[l]
        t_right = touch(l + 1) - created[l]
        pairs.append(pair_electron_only(t_left, t_right, 0.0, 0.0, params))
        link_records.append(LinkRecord(
            index=l, created_at=created[l],
            left_window=CustodyInterval(created[l], touch(l), ELECTRON),
            right_window=CustodyInterval(created[l], touch(l + 1), ELECTRON)))

    events = tuple(CnotEvent(node=b, kind=TS_DETERMINISTIC, p=params.p_n)
                   for b in sorted(merges) if det.get(b, False))

    final_idle: list[tuple[IdleInterval, ...]] = []
    custody: list[tuple[CustodyInterval, ...]] = []
    for node_idx in range(layer_size):
        start = touch(node_idx)
        memory = NUCLEAR if det.get(node_idx, False) else ELECTRON
        T1 = params.T1_n if memory == NUCLEAR else params.T1_e
        T2 = params.T2_n if memory == NUCLEAR else params.T2_e
        final_idle.append((IdleInterval(completion - start, T1, T2),))
        custody.append((CustodyInterval(start, completion, memory),))

    chain = LinkChain(pairs=tuple(pairs), cnot_events=events,
                      final_idle=tuple(final_idle))
    record = LayerRecord(
        layer_index=0, layer_size=layer_size, links=tuple(link_records),
        member_custody=tuple(custody), cnot_events=events,
        completion_time=completion)
    return chain, record


# ---------------------------------------------------------------------------
# whole-tree runs
# ---------------------------------------------------------------------------

def _extend_chain(
    chain: LinkChain | None,
    completion: float,
    protocol: str,
    params: NoiseParams,
    timing: TimingModel,
    rng: np.random.Generator,
) -> tuple[LinkChain, float]:
    """Append the pair that links the layer to the address register."""
    c = attempt_cycle_duration(timing)
    ext_wait = sample_heralded_success(params.eta, rng) * c
    if protocol == "td":
        ext_pair = pair_after_transfer(0.0, 0.0, 0.0, 0.0, params)
        ext_dur = ext_wait + (timing.electronic_cnot + timing.measurement
                              + timing.single_qubit_gate)
        memory_T = (params.T1_n, params.T2_n)
    else:
        ext_pair = pair_electron_only(0.0, 0.0, 0.0, 0.0, params)
        ext_dur = ext_wait + (timing.measurement + timing.single_qubit_gate
                              + 2.0 * timing.photon_spin_interaction)
        memory_T = (params.T1_e, params.T2_e)
    if chain is None:
        return (LinkChain(pairs=(ext_pair,), final_idle=((), ())),
                completion + ext_dur)

    def extra_for(intervals: tuple[IdleInterval, ...]) -> IdleInterval:
        # keep idling in whatever memory the qubit already rests in
        if intervals:
            return IdleInterval(ext_dur, intervals[-1].T1, intervals[-1].T2)
        return IdleInterval(ext_dur, *memory_T)

    final_idle = tuple(iv + (extra_for(iv),)
                       for iv in chain.final_idle) + ((),)
    return (LinkChain(pairs=chain.pairs + (ext_pair,),
                      cnot_events=chain.cnot_events,
                      final_idle=final_idle),
            completion + ext_dur)


def simulate_qram(
    protocol: str,
    n_layers: int,
    params: NoiseParams,
    timing: TimingModel | None = None,
    placement: PlacementStrategy | None = None,
    seed: int = 0,
    extend_with_qc_link: bool = True,
    reset_policy: str = "single_round",
) -> QramRunResult:
    """Distribute GHZ states for a QRAM addressing ``2**n_layers`` cells.

    Switch layer k (k = 1 .. n_layers-1) hosts ``2**(k-1)`` nodes; layer 1
    is a single node and only contributes its address-register pair.  The
    query time is the slowest layer's completion, extension included.
    """
    if protocol not in ("td", "ts"):
        raise ValueError(f"protocol must be 'td' or 'ts', got {protocol!r}")
    if n_layers < 1:
        raise ValueError("n_layers must be >= 1")
    timing = timing or TimingModel()
    placement = placement or PlacementStrategy()
    rng = np.random.default_rng(seed)

    chains: list[LinkChain | None] = []
    records: list[LayerRecord] = []
    query_time = 0.0
    for k in range(1, n_layers):
        size = 2 ** (k - 1)
        if size < 2:
            chain, completion = None, 0.0
            record = LayerRecord(layer_index=k, layer_size=size, links=(),
                                 member_custody=((),), cnot_events=(),
                                 completion_time=0.0)
        elif protocol == "td":
            chain, record = simulate_layer_td(size, params, timing, rng)
            completion = record.completion_time
        else:
            chain, record = simulate_layer_ts(size, params, timing, placement,
                                              rng, reset_policy)
            completion = record.completion_time
        if extend_with_qc_link:
            chain, completion = _extend_chain(chain, completion, protocol,
                                              params, timing, rng)
        record = replace(record, layer_index=k, completion_time=completion)
        chains.append(chain)
        records.append(record)
        query_time = max(query_time, completion)

    if n_layers == 1 and extend_with_qc_link:
        chain, completion = _extend_chain(None, 0.0, protocol, params, timing, rng)
        chains.append(chain)
        records.append(LayerRecord(layer_index=1, layer_size=1, links=(),
                                   member_custody=((),), cnot_events=(),
                                   completion_time=completion))
        query_time = max(query_time, completion)

    return QramRunResult(n_layers=n_layers, chains=tuple(chains),
                         records=tuple(records), query_time=query_time,
                         seed=seed)
