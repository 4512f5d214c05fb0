/** Headless figure regeneration from sweep CSVs.
 *
 *   plot --preset fig8 --in out/fig8.csv --out fig8.svg
 *   plot --preset fig14 --in ts.csv --baseline td.csv --out fig14.svg
 *   plot --spec myfigure.json
 *
 * A spec file carries {kind, seriesKey, yScale, title, input, baseline?,
 * output}.  Rendering is pure: the same inputs produce identical bytes.
 */

import { mkdirSync, readFileSync, writeFileSync } from "fs";
import { dirname } from "path";

import { CsvError, parseSweepCsv, SweepRow } from "./csv.js";
import { FigureError, FigureSpec, render } from "./figure.js";
import { presetSpec } from "./presets.js";

interface FileSpec extends FigureSpec {
  input: string;
  baseline?: string;
  output: string;
}

function parseArgs(argv: string[]): Map<string, string> {
  const out = new Map<string, string>();
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (!arg.startsWith("--")) continue;
    const value = argv[i + 1];
    if (value === undefined || value.startsWith("--")) {
      throw new Error(`flag ${arg} needs a value`);
    }
    out.set(arg.slice(2), value);
    i++;
  }
  return out;
}

function loadSpec(args: Map<string, string>): FileSpec {
  if (args.has("spec")) {
    const raw = JSON.parse(readFileSync(args.get("spec")!, "utf8"));
    for (const key of ["kind", "seriesKey", "input", "output"]) {
      if (!(key in raw)) throw new Error(`spec file missing '${key}'`);
    }
    return {
      kind: raw.kind,
      seriesKey: raw.seriesKey,
      yScale: raw.yScale ?? "linear",
      title: raw.title,
      input: raw.input,
      baseline: raw.baseline,
      output: raw.output,
    };
  }
  const name = args.get("preset");
  if (!name) throw new Error("need --spec <file> or --preset <name>");
  const input = args.get("in");
  const output = args.get("out");
  if (!input || !output) throw new Error("--preset needs --in and --out");
  return { ...presetSpec(name), input, baseline: args.get("baseline"), output };
}

function readRows(path: string): SweepRow[] {
  return parseSweepCsv(readFileSync(path, "utf8"));
}

export function runPlot(argv: string[]): string {
  const spec = loadSpec(parseArgs(argv));
  const rows = readRows(spec.input);
  const baseline = spec.baseline ? readRows(spec.baseline) : undefined;
  const svg = render(spec, rows, baseline);
  mkdirSync(dirname(spec.output) || ".", { recursive: true });
  writeFileSync(spec.output, svg);
  return spec.output;
}

export function main(argv: string[]): number {
  const [command, ...rest] = argv;
  if (command !== "plot") {
    console.error("usage: plot --preset <name> --in <csv> --out <svg> " +
                  "[--baseline <csv>] | plot --spec <json>");
    return 2;
  }
  try {
    const path = runPlot(rest);
    console.log(`wrote ${path}`);
    return 0;
  } catch (err) {
    if (err instanceof CsvError || err instanceof FigureError) {
      console.error(`figure error: ${(err as Error).message}`);
      return 2;
    }
    if (err instanceof Error && "code" in err) {
      console.error(`io error: ${err.message}`);
      return 3;
    }
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
}

const invokedDirectly = process.argv[1]?.endsWith("cli.js");
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
