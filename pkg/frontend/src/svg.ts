/** Minimal deterministic SVG line charts: fixed size, fonts, and formatting. */

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: string;
  width: number;
  opacity: number;
  dash?: string;
}

export interface Scene {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  logY?: boolean;
}

export const WIDTH = 960;
export const HEIGHT = 540;
const MARGIN = { top: 48, right: 32, bottom: 52, left: 72 };
const FONT = 'Helvetica, Arial, sans-serif';

function fmtTick(v: number): string {
  if (v !== 0 && (Math.abs(v) >= 1e5 || Math.abs(v) < 1e-3)) {
    return v.toExponential(2);
  }
  return v
    .toFixed(3)
    .replace(/0+$/, '')
    .replace(/\.$/, '');
}

function px(v: number): string {
  return v.toFixed(2);
}

interface Extent {
  min: number;
  max: number;
}

function extent(values: number[]): Extent {
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  if (!(min <= max)) {
    throw new Error('cannot compute an extent of an empty series');
  }
  if (min === max) {
    min -= 0.5;
    max += 0.5;
  }
  return { min, max };
}

export function renderSvg(scene: Scene): string {
  if (scene.series.length === 0) {
    throw new Error('nothing to plot: no series');
  }
  const transformY = scene.logY
    ? (v: number): number => Math.log10(Math.max(v, 1e-300))
    : (v: number): number => v;
  const xs = scene.series.flatMap((s) => s.x);
  const ys = scene.series.flatMap((s) => s.y.map(transformY));
  const xDomain = extent(xs);
  const yDomain = extent(ys);
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (v: number): number =>
    MARGIN.left + ((v - xDomain.min) / (xDomain.max - xDomain.min)) * plotW;
  const sy = (v: number): number =>
    MARGIN.top + plotH - ((transformY(v) - yDomain.min) / (yDomain.max - yDomain.min)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="28" font-family="${FONT}" font-size="18" text-anchor="middle">${scene.title}</text>`,
  );

  // axes with 6 evenly spaced ticks on each side
  const axisColor = '#444444';
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top + plotH}" x2="${MARGIN.left + plotW}" y2="${MARGIN.top + plotH}" stroke="${axisColor}"/>`,
  );
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${MARGIN.top + plotH}" stroke="${axisColor}"/>`,
  );
  for (let i = 0; i <= 5; i++) {
    const xv = xDomain.min + ((xDomain.max - xDomain.min) * i) / 5;
    const xp = px(MARGIN.left + (plotW * i) / 5);
    parts.push(
      `<line x1="${xp}" y1="${MARGIN.top + plotH}" x2="${xp}" y2="${MARGIN.top + plotH + 5}" stroke="${axisColor}"/>`,
    );
    parts.push(
      `<text x="${xp}" y="${MARGIN.top + plotH + 20}" font-family="${FONT}" font-size="12" text-anchor="middle">${fmtTick(xv)}</text>`,
    );
    const yv = yDomain.min + ((yDomain.max - yDomain.min) * i) / 5;
    const yp = px(MARGIN.top + plotH - (plotH * i) / 5);
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${yp}" x2="${MARGIN.left}" y2="${yp}" stroke="${axisColor}"/>`,
    );
    const label = scene.logY ? `1e${fmtTick(yv)}` : fmtTick(yv);
    parts.push(
      `<text x="${MARGIN.left - 9}" y="${yp}" font-family="${FONT}" font-size="12" text-anchor="end" dominant-baseline="middle">${label}</text>`,
    );
  }
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 12}" font-family="${FONT}" font-size="14" text-anchor="middle">${scene.xLabel}</text>`,
  );
  parts.push(
    `<text x="20" y="${MARGIN.top + plotH / 2}" font-family="${FONT}" font-size="14" text-anchor="middle" transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">${scene.yLabel}</text>`,
  );

  for (const s of scene.series) {
    if (s.x.length !== s.y.length) {
      throw new Error(`series '${s.label}': x and y lengths differ`);
    }
    const pts = s.x.map((xv, i) => `${px(sx(xv))},${px(sy(s.y[i]))}`).join(' ');
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : '';
    parts.push(
      `<polyline fill="none" stroke="${s.color}" stroke-width="${s.width}" stroke-opacity="${s.opacity}"${dash} points="${pts}"/>`,
    );
  }

  // legend, top-right, one row per series
  scene.series.forEach((s, i) => {
    const y = MARGIN.top + 8 + i * 18;
    const x0 = MARGIN.left + plotW - 190;
    parts.push(
      `<line x1="${x0}" y1="${y}" x2="${x0 + 26}" y2="${y}" stroke="${s.color}" stroke-width="${s.width}" stroke-opacity="${s.opacity}"/>`,
    );
    parts.push(
      `<text x="${x0 + 32}" y="${y + 4}" font-family="${FONT}" font-size="12">${s.label}</text>`,
    );
  });

  parts.push('</svg>');
  return parts.join('\n') + '\n';
}
