import { writeFileSync } from 'fs';

import { seriesChecksum } from './checksum.js';
import { column, numericColumn, readCsv, CsvTable } from './csv.js';
import { renderSvg, Scene, Series } from './svg.js';

// Matplotlib's default red and blue, matching the reference figures:
// red is the binomial valuation curve, blue the carry-count curve.
export const RED = '#d62728';
export const BLUE = '#1f77b4';
const GRAY = '#7f7f7f';
const PALETTE = [BLUE, RED, '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b'];

export type Preset = 'figure1' | 'density' | 'chain';

export interface PlotJob {
  inputCsv: string;
  output: string;
  preset: Preset;
  title?: string;
}

export interface RenderResult {
  output: string;
  /** sha256 per plotted column, over the raw CSV cells. */
  checksums: Record<string, string>;
}

interface BuiltScene {
  scene: Scene;
  checksums: Record<string, string>;
}

function figure1Scene(table: CsvTable, title: string): BuiltScene {
  const m = numericColumn(table, 'm');
  const columns = ['nu_binom', 'kappa', 'nu_binom_smooth', 'kappa_smooth'];
  const cells = Object.fromEntries(columns.map((name) => [name, column(table, name)]));
  const values = Object.fromEntries(columns.map((name) => [name, numericColumn(table, name)]));
  const series: Series[] = [
    { label: 'nu_binom (raw)', x: m, y: values.nu_binom, color: RED, width: 1, opacity: 0.2 },
    { label: 'kappa (raw)', x: m, y: values.kappa, color: BLUE, width: 1, opacity: 0.2 },
    { label: 'nu_binom (smoothed)', x: m, y: values.nu_binom_smooth, color: RED, width: 2.5, opacity: 1 },
    { label: 'kappa (smoothed)', x: m, y: values.kappa_smooth, color: BLUE, width: 2.5, opacity: 1 },
  ];
  return {
    scene: { title, xLabel: 'm', yLabel: 'valuation', series },
    checksums: Object.fromEntries(columns.map((name) => [name, seriesChecksum(cells[name])])),
  };
}

function densityScene(table: CsvTable, title: string): BuiltScene {
  const kinds = column(table, 'kind');
  const cs = numericColumn(table, 'c');
  const fracCells = column(table, 'fraction');
  const fractions = numericColumn(table, 'fraction');
  const unique = [...new Set(kinds)];
  const series: Series[] = unique.map((kind, i) => {
    const idx = kinds.map((k, j) => (k === kind ? j : -1)).filter((j) => j >= 0);
    return {
      label: kind,
      x: idx.map((j) => cs[j]),
      y: idx.map((j) => fractions[j]),
      color: PALETTE[i % PALETTE.length],
      width: 2,
      opacity: 1,
    };
  });
  return {
    scene: { title, xLabel: 'c', yLabel: 'fraction of m', series },
    checksums: { fraction: seriesChecksum(fracCells) },
  };
}

function chainScene(table: CsvTable, title: string): BuiltScene {
  const L = numericColumn(table, 'L');
  const exactCells = column(table, 'exact_tail');
  const tiltedCells = column(table, 'tilted_bound');
  const series: Series[] = [
    { label: 'exact tail', x: L, y: numericColumn(table, 'exact_tail'), color: BLUE, width: 2, opacity: 1 },
    { label: 'tilted bound', x: L, y: numericColumn(table, 'tilted_bound'), color: RED, width: 2, opacity: 1 },
  ];
  const checksums: Record<string, string> = {
    exact_tail: seriesChecksum(exactCells),
    tilted_bound: seriesChecksum(tiltedCells),
  };
  const chernoffCells = column(table, 'chernoff_bound');
  const present = chernoffCells
    .map((cell, i) => (cell === '' ? -1 : i))
    .filter((i) => i >= 0);
  if (present.length > 0) {
    series.push({
      label: 'chernoff bound',
      x: present.map((i) => L[i]),
      y: present.map((i) => Number(chernoffCells[i])),
      color: GRAY,
      width: 1.5,
      opacity: 1,
      dash: '6 4',
    });
    checksums.chernoff_bound = seriesChecksum(present.map((i) => chernoffCells[i]));
  }
  return {
    scene: { title, xLabel: 'L', yLabel: 'P(S_L <= sL)', series, logY: true },
    checksums,
  };
}

/** Render one CSV into one SVG; returns the per-series data checksums. */
export function render(job: PlotJob): RenderResult {
  const table = readCsv(job.inputCsv);
  const title = job.title ?? `${job.preset}: ${job.inputCsv}`;
  let built: BuiltScene;
  if (job.preset === 'figure1') {
    built = figure1Scene(table, title);
  } else if (job.preset === 'density') {
    built = densityScene(table, title);
  } else if (job.preset === 'chain') {
    built = chainScene(table, title);
  } else {
    throw new Error(`unknown preset '${job.preset}'`);
  }
  writeFileSync(job.output, renderSvg(built.scene), 'utf8');
  return { output: job.output, checksums: built.checksums };
}
