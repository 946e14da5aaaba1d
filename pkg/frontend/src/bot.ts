/** Bot opponents.
 *
 * The uniform-random bot picks its angle uniformly over the allowed range
 * (the strategy whose average makes the game fair); the greedy bot scans the
 * service-provided advisory slice and picks the argmax of its own win
 * density.  Both are deterministic for a fixed seed.
 */

import type { Advisory } from "./api.js";

/** Small deterministic PRNG (mulberry32); good enough for bot choices. */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export interface Bot {
  readonly name: string;
  /** Pick a value for the angle this bot controls. */
  choose(angle: "alpha" | "beta", advisory: Advisory | null): number;
}

export class UniformRandomBot implements Bot {
  readonly name = "uniform-random";
  private readonly next: () => number;

  constructor(seed: number) {
    this.next = mulberry32(seed);
  }

  choose(angle: "alpha" | "beta", _advisory: Advisory | null = null): number {
    const limit = angle === "alpha" ? Math.PI : 2 * Math.PI;
    return this.next() * limit;
  }
}

export class GreedyBot implements Bot {
  readonly name = "greedy";
  private readonly next: () => number;

  constructor(seed: number) {
    this.next = mulberry32(seed);
  }

  /** Argmax of the advisory slice; falls back to uniform without one. */
  choose(angle: "alpha" | "beta", advisory: Advisory | null): number {
    const limit = angle === "alpha" ? Math.PI : 2 * Math.PI;
    if (
      !advisory ||
      !advisory.axis ||
      !Array.isArray(advisory.sigma) ||
      advisory.free !== angle
    ) {
      return this.next() * limit;
    }
    let best = 0;
    for (let k = 1; k < advisory.sigma.length; k++) {
      if (advisory.sigma[k] > advisory.sigma[best]) best = k;
    }
    return advisory.axis[best];
  }
}
