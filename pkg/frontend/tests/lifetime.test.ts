import { describe, expect, it } from "vitest";

import { lifetimeTotalBtu } from "../src/lifetime.js";

describe("lifetimeTotalBtu", () => {
  it("reproduces the reference 100-year total", () => {
    // 2.369e9 + 100 * 6.044e7 = 8.413e9 Btu
    expect(lifetimeTotalBtu(2.369e9, 6.044e7, 100)).toBeCloseTo(8.413e9, -5);
  });

  it("equals embodied energy alone at zero years", () => {
    expect(lifetimeTotalBtu(5.5e8, 9.9e7, 0)).toBe(5.5e8);
  });

  it("is linear in years", () => {
    const one = lifetimeTotalBtu(1e9, 2e7, 1);
    const ten = lifetimeTotalBtu(1e9, 2e7, 10);
    expect(ten - 1e9).toBeCloseTo(10 * (one - 1e9), 6);
  });

  it("rejects negative or non-finite years", () => {
    expect(() => lifetimeTotalBtu(1, 1, -1)).toThrow(RangeError);
    expect(() => lifetimeTotalBtu(1, 1, Number.NaN)).toThrow(RangeError);
  });
});
