/**
 * Session state for the iterative comparison loop.
 *
 * History is append-only within a session: every completed run lands at the
 * end and is never mutated, so earlier alternatives stay comparable. Only
 * one run request is in flight at a time; responses that belong to an
 * older request id than the latest submission are discarded.
 */
import type {
  PlanDraft,
  RunResult,
  SettingsForm,
} from "./types.js";

export interface HistoryEntry {
  requestId: number;
  results: RunResult[];
}

export class SessionState {
  modelId: string | null = null;
  weatherId: string | null = null;
  settings: SettingsForm = {};
  years = 100;
  drafts: PlanDraft[] = [];
  /** Construction ids of the selected model; used to validate drafts. */
  constructionIds: string[] = [];
  readonly history: HistoryEntry[] = [];

  private nextRequestId = 1;
  private inFlightId: number | null = null;

  selectModel(modelId: string, constructionIds: string[]): void {
    this.modelId = modelId;
    this.constructionIds = [...constructionIds];
  }

  selectWeather(weatherId: string): void {
    this.weatherId = weatherId;
  }

  /** Problems that must be fixed before a submission is allowed. */
  validateDrafts(): string[] {
    const problems: string[] = [];
    const seen = new Set<string>();
    for (const draft of this.drafts) {
      if (!draft.label.trim()) {
        problems.push("every alternative needs a label");
      } else if (seen.has(draft.label)) {
        problems.push(`duplicate label "${draft.label}"`);
      }
      seen.add(draft.label);
      for (const sub of draft.substitutions) {
        if (
          this.constructionIds.length > 0 &&
          !this.constructionIds.includes(sub.construction_id)
        ) {
          problems.push(
            `"${draft.label}": construction "${sub.construction_id}" is not in the model`,
          );
        }
        if (sub.layers.length === 0) {
          problems.push(`"${draft.label}": ${sub.construction_id} has no layers`);
        }
        for (const layer of sub.layers) {
          if (!(layer.thickness_m > 0)) {
            problems.push(
              `"${draft.label}": layer "${layer.material}" needs thickness > 0`,
            );
          }
        }
      }
    }
    if (!this.modelId) problems.push("pick a model");
    if (!this.weatherId) problems.push("pick a climate");
    return problems;
  }

  /** Reserve a request id; only one submission may be outstanding. */
  beginRun(): number | null {
    if (this.inFlightId !== null) return null;
    const id = this.nextRequestId++;
    this.inFlightId = id;
    return id;
  }

  /** Append results unless a newer submission has superseded this one. */
  completeRun(requestId: number, results: RunResult[]): boolean {
    if (this.inFlightId !== requestId) {
      return false; // stale response: discard
    }
    this.inFlightId = null;
    this.history.push({ requestId, results });
    return true;
  }

  failRun(requestId: number): void {
    if (this.inFlightId === requestId) {
      this.inFlightId = null;
    }
  }

  get busy(): boolean {
    return this.inFlightId !== null;
  }

  latest(): HistoryEntry | null {
    return this.history.length > 0
      ? this.history[this.history.length - 1]!
      : null;
  }
}
