import { describe, expect, it } from "vitest";

import {
  EngineClient,
  InvalidRequestError,
  UnresolvedMaterialsError,
  type FetchLike,
} from "../src/api.js";
import { samplePayload } from "./payload.js";

function fakeFetch(
  handler: (url: string, init?: Parameters<FetchLike>[1]) => {
    status: number;
    body: unknown;
  },
): FetchLike {
  return async (url, init) => {
    const { status, body } = handler(url, init);
    return {
      status,
      json: async () => body,
      text: async () => JSON.stringify(body),
    };
  };
}

describe("EngineClient", () => {
  it("lists models and weather", async () => {
    const client = new EngineClient(
      "http://engine",
      fakeFetch((url) => {
        if (url.endsWith("/models")) {
          return { status: 200, body: { models: [{ id: "m1", name: "m1" }] } };
        }
        if (url.endsWith("/weather")) {
          return { status: 200, body: { weather: [{ id: "w1", name: "w1" }] } };
        }
        return { status: 404, body: {} };
      }),
    );
    expect(await client.models()).toEqual([{ id: "m1", name: "m1" }]);
    expect(await client.weather()).toEqual([{ id: "w1", name: "w1" }]);
  });

  it("posts the run body the engine expects", async () => {
    let captured: unknown = null;
    const client = new EngineClient(
      "http://engine",
      fakeFetch((url, init) => {
        if (url.endsWith("/runs") && init?.method === "POST") {
          captured = JSON.parse(init.body!);
          return {
            status: 200,
            body: { id: "abc", results: [samplePayload("baseline")] },
          };
        }
        return { status: 404, body: {} };
      }),
    );
    const plans = [
      {
        label: "alt",
        substitutions: [
          {
            construction_id: "con-extwall",
            layers: [{ material: "Brick, Common", thickness_m: 0.2 }],
          },
        ],
      },
    ];
    const response = await client.run("m1", "w1", { alpha: 0.45 }, plans, 100);
    expect(response.results[0]!.label).toBe("baseline");
    expect(captured).toEqual({
      model_id: "m1",
      weather_id: "w1",
      settings: { alpha: 0.45 },
      plans,
      years: 100,
    });
  });

  it("raises the missing-materials list on 422", async () => {
    const client = new EngineClient(
      "http://engine",
      fakeFetch(() => ({
        status: 422,
        body: { error: "unresolved materials", missing: ["Unobtainium"] },
      })),
    );
    await expect(client.run("m", "w", {}, [])).rejects.toThrowError(
      UnresolvedMaterialsError,
    );
    try {
      await client.run("m", "w", {}, []);
    } catch (err) {
      expect((err as UnresolvedMaterialsError).missing).toEqual(["Unobtainium"]);
    }
  });

  it("surfaces other failures as invalid requests", async () => {
    const client = new EngineClient(
      "http://engine",
      fakeFetch(() => ({ status: 400, body: { error: "unknown model" } })),
    );
    await expect(client.run("m", "w", {}, [])).rejects.toThrowError(
      InvalidRequestError,
    );
  });
});
