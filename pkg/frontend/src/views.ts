/**
 * Pure HTML renderers for result cards and tables. Every number shown is
 * the verbatim decimal form of the engine payload value; the lifetime line
 * is the one client-side recombination (EE + years x OE) and is recomputed
 * live as the years input changes.
 */
import { monthlyLoadsChart } from "./chart.js";
import { escapeHtml, verbatim } from "./format.js";
import { lifetimeTotalBtu } from "./lifetime.js";
import type { AggregationLevel, RunResult } from "./types.js";

export function eeTable(result: RunResult, level: AggregationLevel): string {
  if (level === "building") {
    return (
      `<table class="ee" data-level="building"><tbody>` +
      `<tr><th>total MJ</th><td data-value="${String(result.ee.total_mj)}">` +
      `${verbatim(result.ee.total_mj)}</td></tr>` +
      `<tr><th>total Btu</th><td data-value="${String(result.ee.total_btu)}">` +
      `${verbatim(result.ee.total_btu)}</td></tr>` +
      `<tr><th>embodied water L</th><td data-value="${String(result.ee.ew_liters)}">` +
      `${verbatim(result.ee.ew_liters)}</td></tr>` +
      `</tbody></table>`
    );
  }
  const table = result.ee[level];
  const rows = Object.entries(table)
    .sort(([a], [b]) => a.localeCompare(b))
    .map(
      ([key, mj]) =>
        `<tr><th>${escapeHtml(key)}</th>` +
        `<td data-value="${String(mj)}">${verbatim(mj)}</td></tr>`,
    );
  return (
    `<table class="ee" data-level="${level}"><tbody>` +
    rows.join("") +
    `</tbody></table>`
  );
}

export function monthlyTable(result: RunResult): string {
  const rows = result.monthly.map(
    (row) =>
      `<tr><td>${row.month}</td>` +
      `<td data-value="${String(row.heating_kwh)}">${verbatim(row.heating_kwh)}</td>` +
      `<td data-value="${String(row.cooling_kwh)}">${verbatim(row.cooling_kwh)}</td></tr>`,
  );
  return (
    `<table class="monthly"><thead><tr><th>month</th><th>heating kWh</th>` +
    `<th>cooling kWh</th></tr></thead><tbody>` +
    rows.join("") +
    `</tbody></table>`
  );
}

export function lifetimeLine(result: RunResult, years: number): string {
  const total = lifetimeTotalBtu(
    result.ee.total_btu,
    result.annual.operating_btu,
    years,
  );
  return (
    `<p class="lifetime" data-years="${years}" data-value="${String(total)}">` +
    `lifetime over ${years} years: <strong>${verbatim(total)}</strong> Btu</p>`
  );
}

export function resultCard(
  result: RunResult,
  years: number,
  level: AggregationLevel,
): string {
  const warnings = result.warnings.length
    ? `<ul class="warnings">` +
      result.warnings.map((w) => `<li>${escapeHtml(w)}</li>`).join("") +
      `</ul>`
    : "";
  return (
    `<section class="result-card" data-label="${escapeHtml(result.label)}">` +
    `<h3>${escapeHtml(result.label)}</h3>` +
    `<p class="annual">annual heating ` +
    `<span data-value="${String(result.annual.heating_kwh)}">${verbatim(result.annual.heating_kwh)}</span> kWh, ` +
    `cooling <span data-value="${String(result.annual.cooling_kwh)}">${verbatim(result.annual.cooling_kwh)}</span> kWh</p>` +
    monthlyTable(result) +
    eeTable(result, level) +
    lifetimeLine(result, years) +
    warnings +
    `</section>`
  );
}

/** Side-by-side cards plus one shared chart for the selected results. */
export function comparisonView(
  results: RunResult[],
  years: number,
  level: AggregationLevel,
): string {
  if (results.length === 0) {
    return `<p class="placeholder">no results yet: configure and run</p>`;
  }
  const cards = results.map((r) => resultCard(r, years, level)).join("");
  return (
    `<div class="comparison">` +
    monthlyLoadsChart(results) +
    `<div class="columns" style="display:flex;gap:1rem">${cards}</div>` +
    `</div>`
  );
}
