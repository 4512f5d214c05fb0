/** Figure assembly: sweep rows in, one SVG string out. */

import { SweepRow, distinct } from "./csv.js";
import { Scale, extent, linearScale, logScale } from "./scale.js";
import { document as svgDocument, el, num, text } from "./svg.js";

export type FigureKind = "fidelity_vs_layers" | "querytime_vs_layers" | "ts_vs_td";
export type SeriesKey = "eta" | "p_e" | "placement_param";

export interface FigureSpec {
  kind: FigureKind;
  seriesKey: SeriesKey;
  /** Axis scale for the dependent quantity. */
  yScale: "linear" | "log";
  title?: string;
}

export class FigureError extends Error {}

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { left: 78, right: 190, top: 44, bottom: 56 };

const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
];
const DASHES = ["", "7,4", "2,3", "9,3,2,3"];

interface Point {
  x: number;
  y: number;
  err: number;
}

interface Series {
  label: string;
  color: string;
  dash: string;
  points: Point[];
}

const SERIES_LABEL: Record<SeriesKey, string> = {
  eta: "efficiency",
  p_e: "CNOT error",
  placement_param: "placement",
};

function valueColumns(kind: FigureKind): { y: keyof SweepRow; err: keyof SweepRow; label: string } {
  if (kind === "querytime_vs_layers") {
    return { y: "mean_query_time", err: "stderr_query_time", label: "query time (s)" };
  }
  return { y: "mean_fidelity", err: "stderr_fidelity", label: "tree fidelity" };
}

function fmt(v: number): string {
  if (v !== 0 && (Math.abs(v) < 1e-2 || Math.abs(v) >= 1e4)) {
    return v.toExponential(0).replace("e+", "e");
  }
  return String(Number(v.toPrecision(6)));
}

/** Group rows into plot series: one per series-key value and style variant. */
export function buildSeries(rows: SweepRow[], spec: FigureSpec, dashOffset = 0,
                            labelSuffix = ""): Series[] {
  const cols = valueColumns(spec.kind);
  const keyValues = distinct(rows, spec.seriesKey);
  // a second swept memory time splits each series into line-style variants
  const styleValues = distinct(rows, "T2_e");
  const splitByStyle = styleValues.length > 1;
  const out: Series[] = [];
  keyValues.forEach((kv, ki) => {
    styleValues.forEach((sv, si) => {
      const subset = rows.filter(
        (r) => r[spec.seriesKey] === kv && r.T2_e === sv);
      if (subset.length === 0) return;
      const points = subset
        .map((r) => ({ x: r.layers, y: r[cols.y] as number, err: r[cols.err] as number }))
        .sort((a, b) => a.x - b.x);
      let label = `${SERIES_LABEL[spec.seriesKey]} ${fmt(kv as number)}`;
      if (splitByStyle) label += `, T2=${fmt(sv)}s`;
      out.push({
        label: label + labelSuffix,
        color: PALETTE[ki % PALETTE.length],
        dash: DASHES[(si + dashOffset) % DASHES.length],
        points,
      });
    });
  });
  return out;
}

function axisPart(xs: Scale, ys: Scale, yLabel: string, title: string): string[] {
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  const parts: string[] = [];
  parts.push(el("rect", { x: x0, y: y1, width: x1 - x0, height: y0 - y1,
                          fill: "none", stroke: "#333", "stroke-width": 1 }));
  for (const t of xs.ticks()) {
    const px = xs(t);
    parts.push(el("line", { x1: px, y1: y0, x2: px, y2: y0 + 5,
                            stroke: "#333", "stroke-width": 1 }));
    parts.push(text("text", { x: px, y: y0 + 20, "text-anchor": "middle",
                              "font-size": 12 }, fmt(t)));
  }
  for (const t of ys.ticks()) {
    const py = ys(t);
    parts.push(el("line", { x1: x0 - 5, y1: py, x2: x0, y2: py,
                            stroke: "#333", "stroke-width": 1 }));
    parts.push(el("line", { x1: x0, y1: py, x2: x1, y2: py,
                            stroke: "#ddd", "stroke-width": 0.5 }));
    parts.push(text("text", { x: x0 - 9, y: py + 4, "text-anchor": "end",
                              "font-size": 12 }, fmt(t)));
  }
  parts.push(text("text", { x: (x0 + x1) / 2, y: HEIGHT - 14,
                            "text-anchor": "middle", "font-size": 14 },
                  "memory layers"));
  parts.push(text("text", {
    x: 20, y: (y0 + y1) / 2, "text-anchor": "middle", "font-size": 14,
    transform: `rotate(-90 20 ${num((y0 + y1) / 2)})`,
  }, yLabel));
  if (title) {
    parts.push(text("text", { x: (x0 + x1) / 2, y: 24, "text-anchor": "middle",
                              "font-size": 16 }, title));
  }
  return parts;
}

function seriesPart(series: Series[], xs: Scale, ys: Scale): string[] {
  const parts: string[] = [];
  const inDomain = (p: Point) =>
    ys.kind !== "log" || p.y > 0;
  for (const s of series) {
    const pts = s.points.filter(inDomain);
    if (pts.length === 0) continue;
    const path = pts.map((p) => `${num(xs(p.x))},${num(ys(p.y))}`).join(" ");
    const attrs: Record<string, string | number> = {
      points: path, fill: "none", stroke: s.color, "stroke-width": 1.6,
    };
    if (s.dash) attrs["stroke-dasharray"] = s.dash;
    parts.push(el("polyline", attrs));
    for (const p of pts) {
      const px = xs(p.x);
      parts.push(el("circle", { cx: px, cy: ys(p.y), r: 2.6, fill: s.color }));
      if (p.err > 0) {
        const lo = p.y - p.err;
        const hi = p.y + p.err;
        if (ys.kind === "log" && lo <= 0) continue;
        parts.push(el("line", { x1: px, y1: ys(lo), x2: px, y2: ys(hi),
                                stroke: s.color, "stroke-width": 1 }));
        for (const e of [lo, hi]) {
          parts.push(el("line", { x1: px - 3, y1: ys(e), x2: px + 3, y2: ys(e),
                                  stroke: s.color, "stroke-width": 1 }));
        }
      }
    }
  }
  return parts;
}

function legendPart(series: Series[]): string[] {
  const parts: string[] = [];
  const lx = WIDTH - MARGIN.right + 14;
  series.forEach((s, i) => {
    const ly = MARGIN.top + 14 + i * 18;
    const attrs: Record<string, string | number> = {
      x1: lx, y1: ly, x2: lx + 26, y2: ly, stroke: s.color, "stroke-width": 1.6,
    };
    if (s.dash) attrs["stroke-dasharray"] = s.dash;
    parts.push(el("line", attrs));
    parts.push(text("text", { x: lx + 32, y: ly + 4, "font-size": 11 }, s.label));
  });
  return parts;
}

/** Render one figure to an SVG string. */
export function render(spec: FigureSpec, rows: SweepRow[],
                       baselineRows?: SweepRow[]): string {
  if (rows.length === 0) {
    throw new FigureError("no rows to plot");
  }
  let series = buildSeries(rows, spec);
  if (spec.kind === "ts_vs_td") {
    if (!baselineRows || baselineRows.length === 0) {
      throw new FigureError("ts_vs_td needs a baseline dataset");
    }
    const base = buildSeries(baselineRows, spec, 1, " (two-step)")
      .map((s) => ({ ...s, color: "#000000" }));
    series = series.concat(base);
  }
  const cols = valueColumns(spec.kind);
  const allPoints = series.flatMap((s) => s.points);
  const xdom = extent(allPoints.map((p) => p.x), 0.02);
  const xs = linearScale(xdom, [MARGIN.left, WIDTH - MARGIN.right]);
  let ys: Scale;
  if (spec.yScale === "log") {
    const positive = allPoints.map((p) => p.y).filter((y) => y > 0);
    if (positive.length === 0) {
      throw new FigureError("log scale requested but no positive values");
    }
    const lo = Math.min(...positive);
    const hi = Math.max(...positive);
    ys = logScale([lo * 0.9, Math.max(hi * 1.05, lo * 1.1)],
                  [HEIGHT - MARGIN.bottom, MARGIN.top]);
  } else {
    ys = linearScale(extent(allPoints.map((p) => p.y)),
                     [HEIGHT - MARGIN.bottom, MARGIN.top]);
  }
  const body = [
    ...axisPart(xs, ys, cols.label, spec.title ?? ""),
    ...seriesPart(series, xs, ys),
    ...legendPart(series),
  ];
  return svgDocument(WIDTH, HEIGHT, body);
}
