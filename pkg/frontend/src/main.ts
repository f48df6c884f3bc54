/**
 * Browser wiring: choose model + climate, draft alternatives, run, compare,
 * iterate. All engine state lives server-side; this file only moves the
 * session state between form controls and the pure renderers.
 */
import { EngineClient, UnresolvedMaterialsError } from "./api.js";
import { SessionState } from "./state.js";
import { comparisonView } from "./views.js";
import type { AggregationLevel, PlanDraft } from "./types.js";

const client = new EngineClient("");
const session = new SessionState();

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function setBanner(text: string, kind: "error" | "info" | "" = ""): void {
  const banner = el<HTMLDivElement>("banner");
  banner.textContent = text;
  banner.dataset.kind = kind;
  banner.style.display = text ? "block" : "none";
}

function renderHistory(): void {
  const years = Number(el<HTMLInputElement>("years").value);
  const level = el<HTMLSelectElement>("level").value as AggregationLevel;
  const latest = session.latest();
  el<HTMLDivElement>("results").innerHTML = comparisonView(
    latest ? latest.results : [],
    years,
    level,
  );
  const count = session.history.length;
  el<HTMLSpanElement>("history-count").textContent =
    count ? `${count} run${count > 1 ? "s" : ""} this session` : "";
}

function draftsFromEditor(): PlanDraft[] {
  const raw = el<HTMLTextAreaElement>("plans").value.trim();
  if (!raw) return [];
  const parsed = JSON.parse(raw) as PlanDraft[];
  if (!Array.isArray(parsed)) throw new Error("plans must be a json list");
  return parsed;
}

async function populatePickers(): Promise<void> {
  const [models, weather, materials] = await Promise.all([
    client.models(),
    client.weather(),
    client.materialNames(),
  ]);
  el<HTMLSelectElement>("model").innerHTML = models
    .map((m) => `<option value="${m.id}">${m.name}</option>`)
    .join("");
  el<HTMLSelectElement>("weather").innerHTML = weather
    .map((w) => `<option value="${w.id}">${w.name}</option>`)
    .join("");
  el<HTMLDataListElement>("materials").innerHTML = materials
    .map((name) => `<option value="${name}"></option>`)
    .join("");
}

async function configureAndRun(): Promise<void> {
  setBanner("");
  session.selectModel(el<HTMLSelectElement>("model").value, []);
  session.selectWeather(el<HTMLSelectElement>("weather").value);
  try {
    session.drafts = draftsFromEditor();
  } catch (err) {
    setBanner(`plan editor: ${(err as Error).message}`, "error");
    return;
  }
  const problems = session.validateDrafts();
  if (problems.length) {
    setBanner(problems.join("; "), "error");
    return;
  }
  const requestId = session.beginRun();
  if (requestId === null) {
    setBanner("a run is already in flight", "info");
    return;
  }
  const alpha = Number(el<HTMLInputElement>("alpha").value);
  const protocol = el<HTMLSelectElement>("protocol").value as
    | "hourly"
    | "alt-days";
  setBanner("running...", "info");
  try {
    const response = await client.run(
      session.modelId!,
      session.weatherId!,
      { alpha, protocol },
      session.drafts,
      Number(el<HTMLInputElement>("years").value),
    );
    if (session.completeRun(requestId, response.results)) {
      setBanner("");
      renderHistory();
    }
  } catch (err) {
    session.failRun(requestId);
    if (err instanceof UnresolvedMaterialsError) {
      setBanner(`missing materials: ${err.missing.join(", ")}`, "error");
    } else {
      setBanner(`run failed (retry is safe): ${(err as Error).message}`, "error");
    }
  }
}

export function boot(): void {
  el<HTMLButtonElement>("run").addEventListener("click", () => {
    void configureAndRun();
  });
  el<HTMLInputElement>("years").addEventListener("input", renderHistory);
  el<HTMLSelectElement>("level").addEventListener("change", renderHistory);
  populatePickers().catch((err) =>
    setBanner(`cannot reach engine: ${(err as Error).message}`, "error"),
  );
  renderHistory();
}

if (typeof document !== "undefined" && document.getElementById("run")) {
  boot();
}
