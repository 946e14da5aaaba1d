/** Zone binning for the strategy boards.
 *
 * The thresholds always come from the service sidecar; this module only maps
 * a served value onto a served threshold list.  Values outside the binning
 * clamp to the outermost zones, mirroring the service's own convention.
 */

export function zoneIndex(value: number, thresholds: number[]): number {
  if (thresholds.length < 2) {
    throw new Error("zone thresholds need at least two entries");
  }
  let idx = 0;
  while (idx + 1 < thresholds.length && value >= thresholds[idx + 1]) {
    idx += 1;
  }
  // idx now points at the last threshold <= value (or 0 if below all).
  return Math.min(idx, thresholds.length - 2);
}

export function zoneCount(thresholds: number[]): number {
  return thresholds.length - 1;
}

/** Grayscale CSS color for a zone, dark = low probability. */
export function zoneColor(zone: number, thresholds: number[]): string {
  const n = zoneCount(thresholds);
  const level = Math.round((255 * zone) / Math.max(1, n - 1));
  return `rgb(${level}, ${level}, ${level})`;
}
