/**
 * Value rendering. Displayed numbers must equal the engine payload exactly,
 * so the default path is the verbatim decimal form of the json value; the
 * compact form is only used for axis ticks where the exact value is also
 * available in the adjacent table.
 */

export function verbatim(value: number): string {
  return String(value);
}

export function compact(value: number): string {
  if (!Number.isFinite(value)) return String(value);
  const abs = Math.abs(value);
  if (abs >= 1e9) return `${(value / 1e9).toFixed(2)}e9`;
  if (abs >= 1e6) return `${(value / 1e6).toFixed(2)}M`;
  if (abs >= 1e4) return `${(value / 1e3).toFixed(1)}k`;
  return value.toFixed(abs >= 100 ? 0 : 1);
}

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}
