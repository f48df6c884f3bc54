/**
 * Typed client for the engine HTTP API. The fetch function is injectable
 * so tests drive the client without a network.
 */
import type { PlanDraft, RunsResponse, SettingsForm } from "./types.js";

export interface ModelInfo {
  id: string;
  name: string;
}

export interface WeatherInfo {
  id: string;
  name: string;
}

export class UnresolvedMaterialsError extends Error {
  constructor(public missing: string[]) {
    super(`unresolved materials: ${missing.join(", ")}`);
  }
}

export class InvalidRequestError extends Error {}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown>; text(): Promise<string> }>;

export class EngineClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async getJson(path: string): Promise<unknown> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`);
    if (resp.status !== 200) {
      throw new InvalidRequestError(`GET ${path} -> ${resp.status}`);
    }
    return resp.json();
  }

  async models(): Promise<ModelInfo[]> {
    const body = (await this.getJson("/models")) as { models: ModelInfo[] };
    return body.models;
  }

  async weather(): Promise<WeatherInfo[]> {
    const body = (await this.getJson("/weather")) as { weather: WeatherInfo[] };
    return body.weather;
  }

  async materialNames(): Promise<string[]> {
    const body = (await this.getJson("/materials")) as { names: string[] };
    return body.names;
  }

  async run(
    modelId: string,
    weatherId: string,
    settings: SettingsForm,
    plans: PlanDraft[],
    years?: number,
  ): Promise<RunsResponse> {
    const payload: Record<string, unknown> = {
      model_id: modelId,
      weather_id: weatherId,
      settings,
      plans,
    };
    if (years !== undefined) payload.years = years;
    const resp = await this.fetchFn(`${this.baseUrl}/runs`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
    if (resp.status === 422) {
      const body = (await resp.json()) as { missing?: string[] };
      throw new UnresolvedMaterialsError(body.missing ?? []);
    }
    if (resp.status !== 200) {
      const text = await resp.text();
      throw new InvalidRequestError(`POST /runs -> ${resp.status}: ${text}`);
    }
    return (await resp.json()) as RunsResponse;
  }
}
