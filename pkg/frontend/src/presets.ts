/** Figure presets matching the shipped sweep configs. */

import { FigureKind, FigureSpec, SeriesKey } from "./figure.js";

function spec(kind: FigureKind, seriesKey: SeriesKey,
              yScale: "linear" | "log", title: string): FigureSpec {
  return { kind, seriesKey, yScale, title };
}

export const FIGURE_PRESETS: Record<string, FigureSpec> = {
  // generic kinds
  fidelity_vs_layers: spec("fidelity_vs_layers", "eta", "log",
                           "Tree fidelity vs memory depth"),
  querytime_vs_layers: spec("querytime_vs_layers", "eta", "linear",
                            "Query time vs memory depth"),
  ts_vs_td: spec("ts_vs_td", "eta", "linear",
                 "Stochastic scheme vs two-step baseline"),
  // named figure layouts
  fig6: spec("fidelity_vs_layers", "eta", "log",
             "Two-step fidelity, dephasing and damping only"),
  fig7: spec("querytime_vs_layers", "eta", "linear", "Two-step query times"),
  fig8: spec("fidelity_vs_layers", "eta", "log",
             "Two-step fidelity at two dephasing times"),
  fig9: spec("fidelity_vs_layers", "p_e", "linear",
             "Two-step fidelity vs CNOT error"),
  fig10: spec("querytime_vs_layers", "placement_param", "linear",
              "Stochastic query times, random placement"),
  fig11: spec("querytime_vs_layers", "placement_param", "linear",
              "Stochastic query times, top-layer placement"),
  fig12: spec("fidelity_vs_layers", "eta", "log",
              "Fully probabilistic fidelity"),
  fig13: spec("ts_vs_td", "eta", "linear",
              "Stochastic vs two-step fidelity"),
  fig14: spec("ts_vs_td", "eta", "linear",
              "Hybrid placement vs two-step baseline"),
};

export function presetSpec(name: string): FigureSpec {
  const preset = FIGURE_PRESETS[name];
  if (!preset) {
    const names = Object.keys(FIGURE_PRESETS).sort().join(", ");
    throw new Error(`unknown figure preset '${name}'; available: ${names}`);
  }
  return preset;
}
