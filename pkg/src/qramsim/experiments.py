"""Sweep configuration, deterministic CSV emission and oracle validation."""

from __future__ import annotations

import json
import math
import multiprocessing
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import oracle
from .analytics import (
    TS_DETERMINISTIC,
    TWO_STEP_EVEN_LINK,
    CnotEvent,
    IdleInterval,
    LinkChain,
    PairParams,
    apply_cnot_noise,
    apply_final_decoherence,
    ghz_fidelity,
    link_noiseless,
    pair_after_transfer,
)
from .noise import NoiseParams, eps_bar, f_factor
from .oracle import pair_state, run_link_oracle, run_transfer_block_oracle
from .protocol import PlacementStrategy, TimingModel
from .qram import MonteCarloSummary, RunConfig, monte_carlo

__all__ = [
    "ConfigError",
    "SweepConfig",
    "load_config",
    "grid_points",
    "run_sweep",
    "write_rows_csv",
    "oracle_validate",
    "CSV_COLUMNS",
    "SCHEMA_LINE",
]


class ConfigError(ValueError):
    """Invalid or unknown sweep-configuration content."""


SCHEMA_LINE = "#schema=1"
CSV_COLUMNS = (
    "protocol", "layers", "eta", "p_link", "T1_e", "T2_e", "T1_n", "T2_n",
    "p_e", "p_n", "placement", "placement_param", "extend", "reset_policy",
    "n_sims", "base_seed",
    "mean_fidelity", "stderr_fidelity", "mean_query_time", "stderr_query_time",
)

_CONFIG_KEYS = {
    "protocol": str,
    "layers": list,
    "eta": list,
    "p_link": (list, type(None)),
    "T1_e": list,
    "T2_e": list,
    "cnot_error": list,
    "placement": dict,
    "n_sims": int,
    "base_seed": int,
    "extend_with_qc_link": bool,
    "output_path": str,
    "reset_policy": str,
    "max_grid_points": int,
}
_REQUIRED_KEYS = ("protocol", "layers", "eta", "T1_e", "T2_e", "cnot_error",
                  "n_sims", "base_seed", "output_path")


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: the cross product of every list-valued field below."""

    protocol: str
    layers: tuple[int, ...]
    eta: tuple[float, ...]
    T1_e: tuple[float, ...]
    T2_e: tuple[float, ...]
    cnot_error: tuple[float, ...]
    n_sims: int
    base_seed: int
    output_path: str
    p_link: tuple[float, ...] | None = None
    placement_kind: str = "random"
    placement_param: tuple[float, ...] = (0.0,)
    extend_with_qc_link: bool = True
    reset_policy: str = "single_round"
    max_grid_points: int = 4096

    def __post_init__(self) -> None:
        if self.protocol not in ("td", "ts"):
            raise ConfigError(f"protocol must be 'td' or 'ts', got {self.protocol!r}")
        for name in ("layers", "eta", "T1_e", "T2_e", "cnot_error",
                     "placement_param"):
            if len(getattr(self, name)) == 0:
                raise ConfigError(f"{name} must be a non-empty list")
        if self.p_link is not None and len(self.p_link) == 0:
            raise ConfigError("p_link, when given, must be a non-empty list")
        if any(n < 1 for n in self.layers):
            raise ConfigError("layer counts must be >= 1")
        if self.n_sims < 2:
            raise ConfigError("n_sims must be >= 2")
        n_points = len(self.grid())
        if n_points > self.max_grid_points:
            raise ConfigError(
                f"grid has {n_points} points, exceeding the cap "
                f"{self.max_grid_points}")

    def grid(self) -> list[tuple]:
        """Grid points in deterministic (row-major) order."""
        p_links: tuple[float | None, ...] = (
            (None,) if self.p_link is None else self.p_link)
        points = []
        for n in self.layers:
            for eta in self.eta:
                for pl in p_links:
                    for T1 in self.T1_e:
                        for T2 in self.T2_e:
                            for pc in self.cnot_error:
                                for pp in self.placement_param:
                                    points.append((n, eta, pl, T1, T2, pc, pp))
        return points


def load_config(path: str | Path) -> SweepConfig:
    """Parse and validate a JSON sweep configuration; unknown keys error."""
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    return config_from_dict(raw)


def config_from_dict(raw: dict) -> SweepConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(raw) - set(_CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    missing = [k for k in _REQUIRED_KEYS if k not in raw]
    if missing:
        raise ConfigError(f"missing config keys: {missing}")
    for key, typ in _CONFIG_KEYS.items():
        if key in raw and not isinstance(raw[key], typ):
            raise ConfigError(f"config key {key!r} has the wrong type")
    placement = raw.get("placement", {"kind": "random", "param": 0.0})
    if set(placement) - {"kind", "param"}:
        raise ConfigError("placement takes only 'kind' and 'param'")
    param = placement.get("param", 0.0)
    params = tuple(param) if isinstance(param, list) else (param,)
    kwargs = dict(
        protocol=raw["protocol"],
        layers=tuple(raw["layers"]),
        eta=tuple(raw["eta"]),
        T1_e=tuple(raw["T1_e"]),
        T2_e=tuple(raw["T2_e"]),
        cnot_error=tuple(raw["cnot_error"]),
        n_sims=raw["n_sims"],
        base_seed=raw["base_seed"],
        output_path=raw["output_path"],
        p_link=tuple(raw["p_link"]) if raw.get("p_link") is not None else None,
        placement_kind=placement.get("kind", "random"),
        placement_param=params,
        extend_with_qc_link=raw.get("extend_with_qc_link", True),
        reset_policy=raw.get("reset_policy", "single_round"),
        max_grid_points=raw.get("max_grid_points", 4096),
    )
    try:
        return SweepConfig(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def grid_points(config: SweepConfig) -> list[tuple]:
    return config.grid()


def _evaluate_point(args) -> tuple:
    config, point = args
    n, eta, p_link, T1, T2, pc, pp = point
    params = NoiseParams(T1_e=T1, T2_e=T2, p_e=pc, p_n=pc, eta=eta,
                         p_link=p_link)
    run = RunConfig(
        protocol=config.protocol,
        n_layers=n,
        params=params,
        timing=TimingModel(),
        placement=PlacementStrategy(kind=config.placement_kind, param=pp),
        extend_with_qc_link=config.extend_with_qc_link,
        reset_policy=config.reset_policy,
    )
    summary = monte_carlo(run, n_sims=config.n_sims, base_seed=config.base_seed)
    return point, params, summary


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _row(config: SweepConfig, point, params: NoiseParams,
         summary: MonteCarloSummary) -> dict:
    n, eta, p_link, T1, T2, pc, pp = point
    return {
        "protocol": config.protocol,
        "layers": n,
        "eta": eta,
        "p_link": params.p_link,
        "T1_e": params.T1_e,
        "T2_e": params.T2_e,
        "T1_n": params.T1_n,
        "T2_n": params.T2_n,
        "p_e": params.p_e,
        "p_n": params.p_n,
        "placement": config.placement_kind,
        "placement_param": float(pp),
        "extend": config.extend_with_qc_link,
        "reset_policy": config.reset_policy,
        "n_sims": summary.n_sims,
        "base_seed": config.base_seed,
        "mean_fidelity": summary.mean_fidelity,
        "stderr_fidelity": summary.stderr_fidelity,
        "mean_query_time": summary.mean_query_time,
        "stderr_query_time": summary.stderr_query_time,
    }


def write_rows_csv(rows: list[dict], path: str | Path) -> None:
    """Write rows with the fixed schema-1 column order, byte-deterministic."""
    lines = [SCHEMA_LINE, ",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in CSV_COLUMNS))
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text("\n".join(lines) + "\n")


def write_rows_json(rows: list[dict], path: str | Path) -> None:
    payload = {"schema": 1, "rows": rows}
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n")


def run_sweep(config: SweepConfig, workers: int = 1,
              json_mirror: bool = False) -> list[dict]:
    """Evaluate the whole grid and write the output file(s).

    Rows are always written in grid order, whatever the completion order of
    the worker pool, so output bytes depend only on the configuration.
    """
    jobs = [(config, point) for point in config.grid()]
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            results = pool.map(_evaluate_point, jobs)
    else:
        results = [_evaluate_point(job) for job in jobs]
    rows = [_row(config, point, params, summary)
            for point, params, summary in results]
    write_rows_csv(rows, config.output_path)
    if json_mirror:
        write_rows_json(rows, Path(config.output_path).with_suffix(".json"))
    return rows


# ---------------------------------------------------------------------------
# oracle validation
# ---------------------------------------------------------------------------

def _time_for_eps(e: float, T: float) -> float:
    """Idle duration giving decay probability ``e`` on a memory with time T."""
    return -T * math.log1p(-e)


def pair_matrix(pp: PairParams) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = (1.0 - pp.mu) / 2.0
    m[1, 1] = m[2, 2] = pp.mu / 2.0
    m[0, 3] = m[3, 0] = pp.nu / 2.0
    return m


def _memory_times_for(e1: float, e2: float) -> tuple[float, float, float]:
    """Idle duration and (T1, T2) realizing damping e1 and dephasing e2 exactly."""
    if e1 == 0.0 and e2 == 0.0:
        return 0.0, 1.0, 1.0
    if e1 > 0.0:
        t = _time_for_eps(e1, 1.0)
        T2 = t / _time_for_eps(e2, 1.0) if e2 > 0.0 else math.inf
        return t, 1.0, T2
    return _time_for_eps(e2, 1.0), math.inf, 1.0


def transfer_grid_max_dev(eps_values=(0.0, 0.01, 0.1),
                          pe_values=(0.0, 0.01)) -> tuple[float, int]:
    """Max entrywise oracle-vs-formula deviation over the transfer grid.

    The electron and nuclear sides each scan all (damping, dephasing)
    probability pairs from ``eps_values``; idle durations and memory times
    are chosen to realize them exactly.
    """
    worst = 0.0
    runs = 0
    for e1_e in eps_values:
        for e2_e in eps_values:
            for e1_n in eps_values:
                for e2_n in eps_values:
                    for pe in pe_values:
                        t_e, T1_e, T2_e = _memory_times_for(e1_e, e2_e)
                        t_n, T1_n, T2_n = _memory_times_for(e1_n, e2_n)
                        params = NoiseParams(T1_e=T1_e, T2_e=T2_e, T1_n=T1_n,
                                             T2_n=T2_n, p_e=pe)
                        state = run_transfer_block_oracle(
                            params, (t_e, t_e, t_n, t_n))
                        pp = pair_after_transfer(t_e, t_e, t_n, t_n, params)
                        dev = float(np.abs(state.matrix - pair_matrix(pp)).max())
                        worst = max(worst, dev)
                        runs += 1
    return worst, runs


@dataclass(frozen=True)
class LinkingCase:
    """One oracle-vs-analytics linking instance at a given noise scale."""

    name: str
    mode: str
    n_qubits: int
    pairs: tuple[PairParams, ...]
    cnot_events: tuple[CnotEvent, ...]
    idle_eps: tuple[float, ...]
    params: NoiseParams

    def chain(self) -> LinkChain:
        idle = tuple(
            (IdleInterval(_time_for_eps(e, 1.0), 1.0, 1.0),) if e > 0 else ()
            for e in self.idle_eps)
        return LinkChain(pairs=self.pairs, cnot_events=self.cnot_events,
                         final_idle=idle)

    def analytic_fidelity(self) -> float:
        chain = self.chain()
        corner = link_noiseless(chain.pairs)
        corner = apply_cnot_noise(corner, chain)
        corner = apply_final_decoherence(corner, chain)
        return ghz_fidelity(corner)

    def oracle_fidelity(self) -> float:
        states = [pair_state(pp.mu, pp.nu) for pp in self.pairs]
        times = [[(_time_for_eps(e, 1.0), 1.0, 1.0)] if e > 0 else []
                 for e in self.idle_eps]
        final = run_link_oracle(states, self.mode, self.params, times=times)
        return oracle.ghz_fidelity(final)


def linking_cases(scale: float) -> list[LinkingCase]:
    """Mixed-noise 3-5 qubit instances; every small parameter is linear in scale."""
    s = scale

    def pairs_of(*mu_nu):
        return tuple(PairParams(mu=m * s, nu=1.0 - v * s) for m, v in mu_nu)

    cases = [
        LinkingCase(
            name="two_step_n4", mode="two_step", n_qubits=4,
            pairs=pairs_of((0.6, 0.9), (0.4, 0.7), (0.5, 1.0)),
            cnot_events=(CnotEvent(node=2, kind=TWO_STEP_EVEN_LINK, p=s),),
            idle_eps=(0.4 * s, 0.3 * s, 0.2 * s, 0.5 * s),
            params=NoiseParams(p_n=s),
        ),
        LinkingCase(
            name="ts_prob_n3", mode="ts_probabilistic", n_qubits=3,
            pairs=pairs_of((0.7, 0.8), (0.5, 0.6)),
            cnot_events=(),
            idle_eps=(0.5 * s, 0.4 * s, 0.3 * s),
            params=NoiseParams(),
        ),
        LinkingCase(
            name="ts_prob_n5", mode="ts_probabilistic", n_qubits=5,
            pairs=pairs_of((0.5, 0.7), (0.4, 0.9), (0.45, 0.65), (0.3, 0.8)),
            cnot_events=(),
            idle_eps=(0.2 * s, 0.5 * s, 0.3 * s, 0.4 * s, 0.25 * s),
            params=NoiseParams(),
        ),
        LinkingCase(
            name="ts_det_n3", mode="ts_deterministic", n_qubits=3,
            pairs=pairs_of((0.6, 0.8), (0.5, 0.9)),
            cnot_events=(CnotEvent(node=1, kind=TS_DETERMINISTIC, p=s),),
            idle_eps=(0.4 * s, 0.3 * s, 0.5 * s),
            params=NoiseParams(p_e=s, p_n=s),
        ),
        LinkingCase(
            name="ts_det_n4", mode="ts_deterministic", n_qubits=4,
            pairs=pairs_of((0.5, 0.6), (0.4, 0.8), (0.6, 0.7)),
            cnot_events=(CnotEvent(node=1, kind=TS_DETERMINISTIC, p=s),
                         CnotEvent(node=2, kind=TS_DETERMINISTIC, p=s)),
            idle_eps=(0.3 * s, 0.4 * s, 0.2 * s, 0.5 * s),
            params=NoiseParams(p_e=s, p_n=s),
        ),
    ]
    return cases


def two_step_offdiag_adjudication(p: float = 0.01) -> dict:
    """Which candidate corner factor matches the channel model for even links.

    Two closed forms circulate for the even-link coherence penalty; the
    shipped one is (1-p)^2 (1-p+p^2/2), the rival replaces the last factor
    with f(p, p).  The dense oracle picks the winner.
    """
    pairs = [pair_state(0.0, 1.0)] * 3
    state = run_link_oracle(pairs, "two_step", NoiseParams(p_n=p))
    oracle_factor = float(2.0 * state.matrix[0, -1].real)
    shipped = (1.0 - p) ** 2 * (1.0 - p + p * p / 2.0)
    f_product = (1.0 - p) ** 2 * f_factor(p, p)
    selected = ("shipped" if abs(oracle_factor - shipped)
                <= abs(oracle_factor - f_product) else "f_product")
    return {
        "p": p,
        "oracle_factor": oracle_factor,
        "shipped_form": shipped,
        "shipped_abs_dev": abs(oracle_factor - shipped),
        "f_product_form": f_product,
        "f_product_abs_dev": abs(oracle_factor - f_product),
        "selected": selected,
    }


def electron_pair_sign_adjudication(e: float = 0.01) -> dict:
    """Second-idle-phase cross-term sign of the electron-only pair.

    The shipped formula adds the cross term; the oracle-exact channel
    composition sits between the two sign variants (either is second
    order), so both are reported.
    """
    T = 1.0
    t = _time_for_eps(e, T)
    params = NoiseParams(T1_e=T, T2_e=1e12)
    # two damping phases on both qubits; exact composition known in closed form
    e_tot = 1.0 - eps_bar(t, T) ** 2
    mu_exact = (1.0 - f_factor(e_tot, e_tot)) / 2.0
    mu_plus = (1.0 - f_factor(e, e) * (1.0 - e) ** 2 + e * e) / 2.0
    mu_minus = (1.0 - f_factor(e, e) * (1.0 - e) ** 2 - e * e) / 2.0
    closer = ("minus" if abs(mu_exact - mu_minus) <= abs(mu_exact - mu_plus)
              else "plus")
    return {
        "eps": e,
        "exact_mu": mu_exact,
        "plus_variant_mu": mu_plus,
        "minus_variant_mu": mu_minus,
        "implemented": "plus",
        "closer_to_channel_model": closer,
    }


def oracle_validate() -> dict:
    """Machine-readable oracle-vs-analytics validation report."""
    report: dict = {"schema": 1}

    noiseless = []
    state = run_transfer_block_oracle(NoiseParams())
    dev = float(np.abs(state.matrix - pair_matrix(PairParams(0.0, 1.0))).max())
    noiseless.append({"name": "transfer_block", "max_abs_dev": dev})
    for mode, k in (("two_step", 3), ("ts_probabilistic", 3),
                    ("ts_deterministic", 2)):
        pairs = [pair_state(0.0, 1.0)] * k
        final = run_link_oracle(pairs, mode, NoiseParams())
        noiseless.append({"name": f"link_{mode}",
                          "delta_f": abs(1.0 - oracle.ghz_fidelity(final))})
    report["noiseless"] = noiseless

    worst, runs = transfer_grid_max_dev()
    report["transfer_grid"] = {"max_entrywise_dev": worst, "runs": runs}

    linking = []
    for case, case_half in zip(linking_cases(0.05), linking_cases(0.025)):
        gap = abs(case.oracle_fidelity() - case.analytic_fidelity())
        gap_half = abs(case_half.oracle_fidelity()
                       - case_half.analytic_fidelity())
        linking.append({
            "name": case.name,
            "n_qubits": case.n_qubits,
            "delta_f": gap,
            "delta_f_half_eps": gap_half,
            "ratio": (gap / gap_half) if gap_half > 0 else math.inf,
        })
    report["linking"] = linking

    report["adjudications"] = {
        "two_step_offdiag_factor": two_step_offdiag_adjudication(),
        "electron_pair_mu_sign": electron_pair_sign_adjudication(),
    }

    report["summary"] = {
        "transfer_grid_ok": worst < 1e-9,
        "noiseless_ok": all(c.get("max_abs_dev", c.get("delta_f", 1.0)) < 1e-12
                            for c in noiseless),
        "linking_quadratic": all(c["ratio"] >= 3.5 for c in linking),
    }
    return report
