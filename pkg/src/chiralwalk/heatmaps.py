"""Strategy-space heatmaps and their CSV/JSON export.

Grids are uniform over the Bloch rectangle [0, pi] x [0, 2*pi].  Zone
thresholds reproduce the published gray-scale binning for each map; the CSV
carries (alpha, beta, value) rows at 17 significant digits and the JSON
sidecar carries the thresholds and run parameters.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import ensemble as ens
from .games import win_density_grid
from .walk import HADAMARD, RIGHT_HALF_LINE, BlochAngles, CoinParams

# Seven-zone binning for the asymptotic Pi_L / Pi_R maps.
SEVEN_ZONES = (0.29, 0.34, 0.39, 0.45, 0.52, 0.60, 0.65, 0.71)
# Three-zone binning for the two-measurement map.
P2T_ZONES = (0.39, 0.45, 0.52, 0.60)
# Seven-zone binning for the half-line decoherence map.
HALFLINE_ZONES = (0.738, 0.746, 0.755, 0.763, 0.771, 0.780, 0.789, 0.797)

PI_LEFT = "pi-left"
PI_RIGHT = "pi-right"
P2T = "p2T"
HALFLINE = "halfline"
KINDS = (PI_LEFT, PI_RIGHT, P2T, HALFLINE)


def zones_for(which: str, m: int = 1) -> tuple[float, ...]:
    if which == PI_LEFT or which == PI_RIGHT:
        return SEVEN_ZONES if m == 1 else P2T_ZONES
    if which == P2T:
        return P2T_ZONES
    if which == HALFLINE:
        return HALFLINE_ZONES
    raise ValueError(f"unknown heatmap kind {which!r}")


def zone_index(value: float, thresholds: tuple[float, ...]) -> int:
    """0-based zone of ``value``; values outside the binning clamp to the ends."""
    return int(np.clip(np.searchsorted(thresholds, value, side="right") - 1,
                       0, len(thresholds) - 2))


@dataclass
class HeatmapGrid:
    which: str
    alphas: np.ndarray
    betas: np.ndarray
    values: np.ndarray  # shape (len(alphas), len(betas))
    zones: tuple[float, ...]
    params: dict

    def csv_text(self) -> str:
        lines = ["alpha,beta,value"]
        for i, alpha in enumerate(self.alphas):
            for j, beta in enumerate(self.betas):
                lines.append(f"{alpha:.17g},{beta:.17g},{self.values[i, j]:.17g}")
        return "\n".join(lines) + "\n"

    def sidecar(self) -> dict:
        return {
            "which": self.which,
            "zones": list(self.zones),
            "grid": [len(self.alphas), len(self.betas)],
            "alpha_range": [0.0, math.pi],
            "beta_range": [0.0, 2.0 * math.pi],
            "params": self.params,
        }

    def to_json(self) -> str:
        doc = self.sidecar()
        doc["alphas"] = self.alphas.tolist()
        doc["betas"] = self.betas.tolist()
        doc["values"] = self.values.tolist()
        return json.dumps(doc)


def _axes(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n < 2:
        raise ValueError("grid must have at least 2 points per axis")
    return np.linspace(0.0, math.pi, n), np.linspace(0.0, 2.0 * math.pi, n)


def strategy_heatmap(which: str, n: int = 201, m: int | None = None) -> HeatmapGrid:
    """Closed-form maps: asymptotic Pi_L / Pi_R (optionally pushed through the
    measurement chain via ``m``) and the two-measurement P_R(2T) map."""
    alphas, betas = _axes(n)
    if which == PI_LEFT:
        mm = 1 if m is None else m
        values = win_density_grid(alphas, betas, mm, role="alice")
    elif which == PI_RIGHT:
        mm = 1 if m is None else m
        values = win_density_grid(alphas, betas, mm, role="bob")
    elif which == P2T:
        mm = 2 if m is None else m
        values = win_density_grid(alphas, betas, mm, role="bob")
    else:
        raise ValueError(f"{which!r} is not a closed-form heatmap")
    return HeatmapGrid(
        which=which,
        alphas=alphas,
        betas=betas,
        values=values,
        zones=zones_for(which, mm),
        params={"m": mm, "grid": n},
    )


def halfline_heatmap(
    n: int = 11,
    r: float = 0.3,
    steps: int = 3000,
    trajectories: int = 100,
    master_seed: int = 0,
    coin: CoinParams = HADAMARD,
) -> HeatmapGrid:
    """Asymptotic Pi_L of the half-line-decohered walk over initial conditions.

    Each grid point runs its own ensemble with a substream keyed by the grid
    position, so the map is deterministic for a fixed master seed.
    """
    alphas, betas = _axes(n)
    values = np.empty((n, n))
    for i, alpha in enumerate(alphas):
        for j, beta in enumerate(betas):
            result = ens.run_ensemble(
                ens.EnsembleConfig(
                    r=r,
                    coin=coin,
                    angles=BlochAngles(float(alpha), float(beta)),
                    steps=steps,
                    trajectories=trajectories,
                    region=RIGHT_HALF_LINE,
                    master_seed=int(
                        np.random.SeedSequence(
                            entropy=master_seed, spawn_key=(i, j)
                        ).generate_state(1)[0]
                    ),
                )
            )
            values[i, j] = result.pi_left
    return HeatmapGrid(
        which=HALFLINE,
        alphas=alphas,
        betas=betas,
        values=values,
        zones=HALFLINE_ZONES,
        params={
            "r": r,
            "steps": steps,
            "trajectories": trajectories,
            "master_seed": master_seed,
            "theta": coin.theta,
            "grid": n,
        },
    )
