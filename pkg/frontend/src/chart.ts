/**
 * Grouped bar chart of monthly heating/cooling per alternative, rendered as
 * a self-contained SVG string. Pure function of the payload, so tests can
 * assert bar geometry without a browser.
 */
import { compact } from "./format.js";
import type { RunResult } from "./types.js";

const MONTHS = ["J", "F", "M", "A", "M", "J", "J", "A", "S", "O", "N", "D"];

export interface ChartOptions {
  width?: number;
  height?: number;
}

const SERIES_COLORS: ReadonlyArray<readonly [string, string]> = [
  ["#c0392b", "#2980b9"], // baseline: heating red, cooling blue
  ["#e67e22", "#16a085"],
  ["#8e44ad", "#27ae60"],
  ["#d35400", "#2c3e50"],
];

export function monthlyLoadsChart(
  results: RunResult[],
  options: ChartOptions = {},
): string {
  const width = options.width ?? 720;
  const height = options.height ?? 240;
  const margin = { left: 42, right: 8, top: 12, bottom: 22 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;

  let peak = 0;
  for (const result of results) {
    for (const row of result.monthly) {
      peak = Math.max(peak, row.heating_kwh, row.cooling_kwh);
    }
  }
  if (peak === 0) peak = 1;

  const groups = 12;
  const groupW = plotW / groups;
  const barsPerGroup = results.length * 2;
  const barW = (groupW * 0.82) / Math.max(barsPerGroup, 1);

  const bars: string[] = [];
  results.forEach((result, ri) => {
    const [heatColor, coolColor] =
      SERIES_COLORS[ri % SERIES_COLORS.length]!;
    result.monthly.forEach((row, mi) => {
      const x0 = margin.left + mi * groupW + groupW * 0.09;
      const pairs: Array<[number, string, string]> = [
        [row.heating_kwh, heatColor, "heating"],
        [row.cooling_kwh, coolColor, "cooling"],
      ];
      pairs.forEach(([value, color, kind], pi) => {
        const h = (value / peak) * plotH;
        const x = x0 + (ri * 2 + pi) * barW;
        const y = margin.top + plotH - h;
        bars.push(
          `<rect class="bar" data-run="${ri}" data-month="${mi + 1}" ` +
            `data-kind="${kind}" data-value="${String(value)}" ` +
            `x="${x.toFixed(2)}" y="${y.toFixed(2)}" ` +
            `width="${barW.toFixed(2)}" height="${h.toFixed(2)}" ` +
            `fill="${color}"><title>${result.label} ${kind} m${mi + 1}: ` +
            `${String(value)} kWh</title></rect>`,
        );
      });
    });
  });

  const labels = MONTHS.map((m, i) => {
    const x = margin.left + i * groupW + groupW / 2;
    return `<text x="${x.toFixed(2)}" y="${height - 6}" text-anchor="middle" font-size="10">${m}</text>`;
  });

  const axis = [
    `<line x1="${margin.left}" y1="${margin.top}" x2="${margin.left}" ` +
      `y2="${margin.top + plotH}" stroke="#555"/>`,
    `<line x1="${margin.left}" y1="${margin.top + plotH}" ` +
      `x2="${margin.left + plotW}" y2="${margin.top + plotH}" stroke="#555"/>`,
    `<text x="4" y="${margin.top + 8}" font-size="10">${compact(peak)} kWh</text>`,
  ];

  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
    `width="${width}" height="${height}" role="img">` +
    axis.join("") +
    bars.join("") +
    labels.join("") +
    `</svg>`
  );
}
