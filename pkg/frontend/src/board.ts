/** Strategy board model built from a served heatmap document.
 *
 * The board never computes a win density itself: cell values, axes and zone
 * thresholds are taken verbatim from the service response, and the cursor
 * just looks up the nearest served grid cell.
 */

import type { HeatmapDoc } from "./api.js";
import { zoneIndex } from "./zones.js";

export interface BoardCell {
  i: number; // alpha index
  j: number; // beta index
  alpha: number;
  beta: number;
  value: number;
  zone: number;
}

export interface CursorReading {
  alpha: number;
  beta: number;
  sigma: number;
  zone: number;
}

export class StrategyBoard {
  readonly cells: BoardCell[];
  readonly zones: number[];

  constructor(private readonly doc: HeatmapDoc) {
    this.zones = doc.zones;
    this.cells = [];
    for (let i = 0; i < doc.alphas.length; i++) {
      for (let j = 0; j < doc.betas.length; j++) {
        const value = doc.values[i][j];
        this.cells.push({
          i,
          j,
          alpha: doc.alphas[i],
          beta: doc.betas[j],
          value,
          zone: zoneIndex(value, doc.zones),
        });
      }
    }
  }

  get alphas(): number[] {
    return this.doc.alphas;
  }

  get betas(): number[] {
    return this.doc.betas;
  }

  cell(i: number, j: number): BoardCell {
    return this.cells[i * this.doc.betas.length + j];
  }

  /** Served value/zone under an arbitrary (alpha, beta) cursor position. */
  hover(alpha: number, beta: number): CursorReading {
    const i = nearestIndex(this.doc.alphas, alpha);
    const j = nearestIndex(this.doc.betas, beta);
    const cell = this.cell(i, j);
    return {
      alpha: cell.alpha,
      beta: cell.beta,
      sigma: cell.value,
      zone: cell.zone,
    };
  }

  /** Spread of served values; a near-uniform board means a near-fair game. */
  valueRange(): { min: number; max: number } {
    let min = Infinity;
    let max = -Infinity;
    for (const cell of this.cells) {
      if (cell.value < min) min = cell.value;
      if (cell.value > max) max = cell.value;
    }
    return { min, max };
  }
}

/** Parse the service's CSV heatmap into (alpha, beta, value) rows. */
export function parseHeatmapCsv(
  text: string,
): { alpha: number; beta: number; value: number }[] {
  const lines = text.trim().split("\n");
  if (lines[0] !== "alpha,beta,value") {
    throw new Error(`unexpected CSV header: ${lines[0]}`);
  }
  return lines.slice(1).map((line) => {
    const [alpha, beta, value] = line.split(",").map(Number);
    return { alpha, beta, value };
  });
}

function nearestIndex(axis: number[], target: number): number {
  let best = 0;
  let bestDist = Infinity;
  for (let k = 0; k < axis.length; k++) {
    const dist = Math.abs(axis[k] - target);
    if (dist < bestDist) {
      best = k;
      bestDist = dist;
    }
  }
  return best;
}
