import { describe, expect, it } from "vitest";

import type { Advisory } from "../src/api.js";
import { GreedyBot, UniformRandomBot, mulberry32 } from "../src/bot.js";

describe("mulberry32", () => {
  it("is deterministic per seed", () => {
    const a = mulberry32(42);
    const b = mulberry32(42);
    for (let i = 0; i < 100; i++) expect(a()).toBe(b());
  });

  it("differs across seeds", () => {
    expect(mulberry32(1)()).not.toBe(mulberry32(2)());
  });

  it("stays in [0, 1)", () => {
    const next = mulberry32(7);
    for (let i = 0; i < 1000; i++) {
      const x = next();
      expect(x).toBeGreaterThanOrEqual(0);
      expect(x).toBeLessThan(1);
    }
  });
});

describe("UniformRandomBot", () => {
  it("respects the angle ranges", () => {
    const bot = new UniformRandomBot(3);
    for (let i = 0; i < 200; i++) {
      expect(bot.choose("alpha")).toBeLessThanOrEqual(Math.PI);
      expect(bot.choose("beta")).toBeLessThanOrEqual(2 * Math.PI);
    }
  });

  it("replays identically for a fixed seed", () => {
    const a = new UniformRandomBot(11);
    const b = new UniformRandomBot(11);
    const seqA = Array.from({ length: 20 }, () => a.choose("beta"));
    const seqB = Array.from({ length: 20 }, () => b.choose("beta"));
    expect(seqA).toEqual(seqB);
  });
});

describe("GreedyBot", () => {
  it("picks the argmax of its advisory slice", () => {
    const advisory: Advisory = {
      player: "bob",
      free: "beta",
      axis: [0, 1, 2, 3],
      sigma: [0.4, 0.55, 0.35, 0.5],
    };
    expect(new GreedyBot(0).choose("beta", advisory)).toBe(1);
  });

  it("falls back to a uniform pick without a matching slice", () => {
    const bot = new GreedyBot(5);
    const pick = bot.choose("alpha", {
      player: "bob",
      free: "beta",
      axis: [0, 1],
      sigma: [0.5, 0.5],
    });
    expect(pick).toBeGreaterThanOrEqual(0);
    expect(pick).toBeLessThanOrEqual(Math.PI);
  });
});
