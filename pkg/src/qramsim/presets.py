"""Shipped sweep presets: one ready-made grid per standard result figure."""

from __future__ import annotations

from .experiments import SweepConfig, config_from_dict

__all__ = ["PRESETS", "preset_config", "preset_dict"]

_LAYERS = list(range(2, 13))
_ETAS = [0.5, 0.6, 0.7, 0.8, 0.9]


def _base(**overrides) -> dict:
    cfg = {
        "protocol": "td",
        "layers": _LAYERS,
        "eta": _ETAS,
        "T1_e": [2.0],
        "T2_e": [0.1],
        "cnot_error": [0.0],
        "placement": {"kind": "random", "param": 0.0},
        "n_sims": 100,
        "base_seed": 1,
        "extend_with_qc_link": True,
        "output_path": "out/sweep.csv",
    }
    cfg.update(overrides)
    return cfg


PRESETS: dict[str, dict] = {
    # per-layer fidelity decay under dephasing+damping only
    "fig6": _base(T1_e=[0.02], T2_e=[0.01],
                  output_path="out/fig6.csv"),
    # query-time scaling of the two-step scheme
    "fig7": _base(output_path="out/fig7.csv"),
    # dephasing sweep at two coherence times
    "fig8": _base(T2_e=[0.01, 0.1], output_path="out/fig8.csv"),
    # CNOT-error sweep at fixed efficiency
    "fig9": _base(eta=[0.9], cnot_error=[0.0, 1e-5, 1e-4, 1e-3, 1e-2],
                  output_path="out/fig9.csv"),
    # stochastic scheme, random deterministic-node placement: query times
    "fig10": _base(protocol="ts", eta=[0.5],
                   placement={"kind": "random",
                              "param": [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]},
                   output_path="out/fig10.csv"),
    # stochastic scheme, top-of-tree deterministic placement: query times
    "fig11": _base(protocol="ts", eta=[0.5],
                   placement={"kind": "top_layers", "param": [2, 3, 4, 5]},
                   output_path="out/fig11.csv"),
    # fully probabilistic baseline fidelities
    "fig12": _base(protocol="ts", T2_e=[1.0], output_path="out/fig12.csv"),
    # stochastic-vs-two-step comparison pair
    "fig13": _base(protocol="ts", output_path="out/fig13.csv"),
    "fig13td": _base(output_path="out/fig13td.csv"),
    # hybrid placements under varying CNOT error (plus two-step baseline)
    "fig14": _base(protocol="ts", T2_e=[1.0],
                   cnot_error=[1e-2, 1e-3, 1e-4],
                   placement={"kind": "top_layers", "param": 3},
                   output_path="out/fig14.csv"),
    "fig14td": _base(eta=[0.5], T2_e=[1.0], cnot_error=[1e-2, 1e-3, 1e-4],
                     output_path="out/fig14td.csv"),
    # extended grids
    "appF-times-random": _base(protocol="ts", eta=[0.5, 0.7, 0.9],
                               placement={"kind": "random",
                                          "param": [0.0, 0.1, 0.25, 0.5]},
                               output_path="out/appF-times-random.csv"),
    "appF-times-top": _base(protocol="ts", eta=[0.5, 0.7, 0.9],
                            placement={"kind": "top_layers",
                                       "param": [2, 3, 4, 5]},
                            output_path="out/appF-times-top.csv"),
    "appF-fid-prob": _base(protocol="ts", T2_e=[0.01, 0.1, 1.0],
                           output_path="out/appF-fid-prob.csv"),
    "appF-fid-hybrid-1e2": _base(protocol="ts", eta=[0.5, 0.7, 0.9],
                                 T2_e=[0.01, 0.1, 1.0], cnot_error=[1e-2],
                                 placement={"kind": "top_layers",
                                            "param": [1, 2, 3, 4]},
                                 output_path="out/appF-fid-hybrid-1e2.csv"),
    "appF-fid-hybrid-1e3": _base(protocol="ts", eta=[0.5, 0.7, 0.9],
                                 T2_e=[0.01, 0.1, 1.0], cnot_error=[1e-3],
                                 placement={"kind": "top_layers",
                                            "param": [1, 2, 3, 4]},
                                 output_path="out/appF-fid-hybrid-1e3.csv"),
    "appF-fid-hybrid-1e4": _base(protocol="ts", eta=[0.5, 0.7, 0.9],
                                 T2_e=[0.01, 0.1, 1.0], cnot_error=[1e-4],
                                 placement={"kind": "top_layers",
                                            "param": [1, 2, 3, 4]},
                                 output_path="out/appF-fid-hybrid-1e4.csv"),
}


def preset_dict(name: str) -> dict:
    if name not in PRESETS:
        raise KeyError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}")
    return dict(PRESETS[name])


def preset_config(name: str) -> SweepConfig:
    return config_from_dict(preset_dict(name))
