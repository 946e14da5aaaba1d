"""Monte Carlo ensembles of broken-link walks.

Each trajectory resamples its link mask independently every step, evolves
with the locally modified maps, and the GCD and interference term are
averaged over trajectories at equal times.  Full-line breakage drives the
averaged GCD to the interference-free master equation (fixed point 1/2,
independent of the break probability and the coin bias); restricting the
breakage to the right half-line preserves a nontrivial interference term and
with it a dependence on the initial condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .gcd import GcdPair, tail_mean
from .rng import substream
from .walk import (
    FULL_LINE,
    HADAMARD,
    HALFLINE_BOUNDARY,
    RIGHT_HALF_LINE,
    BlochAngles,
    CoinParams,
    SpinorField,
)


@dataclass(frozen=True)
class EnsembleConfig:
    r: float
    coin: CoinParams = HADAMARD
    angles: BlochAngles = BlochAngles(math.pi / 4, 0.0)
    steps: int = 2000
    trajectories: int = 100
    region: str = FULL_LINE
    master_seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"break probability must lie in [0, 1], got {self.r}")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.trajectories < 1:
            raise ValueError("trajectories must be >= 1")
        if self.region not in (FULL_LINE, RIGHT_HALF_LINE):
            raise ValueError(f"unknown region {self.region!r}")


@dataclass(frozen=True)
class LinkWeights:
    """Per-site probabilities of the four local link situations."""

    r0: float
    r1: float
    r2: float
    r3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.r0, self.r1, self.r2, self.r3])


def link_weights(r: float) -> LinkWeights:
    """``r0 = (1-r)^2``, ``r1 = r2 = r (1-r)``, ``r3 = r^2``; they sum to 1."""
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"break probability must lie in [0, 1], got {r}")
    return LinkWeights((1.0 - r) ** 2, r * (1.0 - r), r * (1.0 - r), r * r)


@dataclass(frozen=True)
class ReducedDensity:
    """2x2 chirality density matrix [[P_L, Q], [Q*, P_R]]."""

    matrix: np.ndarray

    @property
    def p_left(self) -> float:
        return float(self.matrix[0, 0].real)

    @property
    def p_right(self) -> float:
        return float(self.matrix[1, 1].real)

    @property
    def q(self) -> complex:
        return complex(self.matrix[0, 1])

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def reduced_density(state: SpinorField) -> ReducedDensity:
    """Partial trace over position of the pure-state density matrix."""
    pl = np.sum(np.abs(state.a) ** 2)
    pr = np.sum(np.abs(state.b) ** 2)
    q = np.sum(state.a * np.conj(state.b))
    return ReducedDensity(
        np.array([[pl, q], [np.conj(q), pr]], dtype=np.complex128)
    )


def averaged_master_step(gcd: GcdPair, coin: CoinParams = HADAMARD) -> GcdPair:
    """One step of the interference-free master equation for the averaged GCD.

    Just the doubly stochastic coin matrix; no dependence on the break
    probability, and fixed point (1/2, 1/2) for any theta with sin(2 theta) != 0.
    """
    c2 = math.cos(coin.theta) ** 2
    s2 = math.sin(coin.theta) ** 2
    return GcdPair(
        c2 * gcd.p_left + s2 * gcd.p_right,
        s2 * gcd.p_left + c2 * gcd.p_right,
    )


@dataclass
class EnsembleResult:
    """Ensemble-averaged time series plus tail-averaged asymptotic estimates."""

    config: EnsembleConfig
    p_left: np.ndarray  # shape (steps + 1,)
    p_right: np.ndarray
    q: np.ndarray  # complex, shape (steps + 1,)
    pi_left: float
    re_q0: float
    pi_left_stderr: float

    def csv_rows(self):
        for t in range(self.p_left.size):
            yield (t, self.p_left[t], self.p_right[t],
                   self.q[t].real, self.q[t].imag)


def run_ensemble(config: EnsembleConfig) -> EnsembleResult:
    """Evolve ``trajectories`` independent masked walks and average.

    Trajectory ``j`` draws its masks from ``substream(master_seed, j)``; at
    step ``t`` it consumes one uniform per eligible link (ids ``-(t+1)..t``,
    restricted to ids >= 0 in half-line mode) in increasing link order.  This
    matches ``sample_link_mask`` draw-for-draw, so a single trajectory can be
    replayed through ``step_with_links``.  Amplitude updates are batched over
    trajectories; the result is independent of any parallel scheduling.
    """
    steps, ntraj = config.steps, config.trajectories
    c = math.cos(config.coin.theta)
    s = math.sin(config.coin.theta)
    halfline = config.region == RIGHT_HALF_LINE

    n = 2 * steps + 3
    origin = steps + 1
    a = np.zeros((ntraj, n), dtype=np.complex128)
    b = np.zeros((ntraj, n), dtype=np.complex128)
    a0, b0 = config.angles.spinor()
    a[:, origin] = a0
    b[:, origin] = b0

    rngs = [substream(config.master_seed, j) for j in range(ntraj)]

    pl = np.empty((steps + 1, ntraj))
    pr = np.empty((steps + 1, ntraj))
    qq = np.empty((steps + 1, ntraj), dtype=np.complex128)

    def record(t: int, lo: int, hi: int) -> None:
        asl = a[:, lo : hi + 1]
        bsl = b[:, lo : hi + 1]
        pl[t] = np.sum(np.abs(asl) ** 2, axis=1)
        pr[t] = np.sum(np.abs(bsl) ** 2, axis=1)
        qq[t] = np.sum(asl * np.conj(bsl), axis=1)

    record(0, origin, origin)

    for t in range(steps):
        lo = origin - (t + 1)  # array index of site -(t+1)
        hi = origin + (t + 1)
        width = hi - lo + 1  # sites -(t+1)..(t+1)
        nids = width - 1  # link ids -(t+1)..t
        brk = np.zeros((ntraj, nids), dtype=bool)
        if config.r > 0.0:
            if halfline:
                # Only ids >= HALFLINE_BOUNDARY are sampled; eligible ids
                # occupy the trailing slots of the id range -(t+1)..t.
                n_elig = t - max(-(t + 1), HALFLINE_BOUNDARY) + 1
                if n_elig > 0:
                    for j, rng in enumerate(rngs):
                        brk[j, nids - n_elig :] = rng.random(n_elig) < config.r
            else:
                for j, rng in enumerate(rngs):
                    brk[j] = rng.random(nids) < config.r

        # right link of site i (new window) is link id i; the rightmost site
        # has no sampled right link, the leftmost no sampled left link.
        pad = np.zeros((ntraj, 1), dtype=bool)
        right_broken = np.concatenate([brk, pad], axis=1)
        left_broken = np.concatenate([pad, brk], axis=1)

        a_c = a[:, lo : hi + 1]
        b_c = b[:, lo : hi + 1]
        a_r = a[:, lo + 1 : hi + 2]
        b_r = b[:, lo + 1 : hi + 2]
        a_l = a[:, lo - 1 : hi]
        b_l = b[:, lo - 1 : hi]

        a_new = np.where(right_broken, a_c * s - b_c * c, a_r * c + b_r * s)
        b_new = np.where(left_broken, a_c * c + b_c * s, a_l * s - b_l * c)
        a[:, lo : hi + 1] = a_new
        b[:, lo : hi + 1] = b_new
        record(t + 1, lo, hi)

    mean_pl = pl.mean(axis=1)
    mean_pr = pr.mean(axis=1)
    mean_q = qq.mean(axis=1)
    tail = max(1, int(round((steps + 1) * 0.1)))
    per_traj_tail = pl[-tail:].mean(axis=0)
    stderr = float(per_traj_tail.std(ddof=1) / math.sqrt(ntraj)) if ntraj > 1 else 0.0
    return EnsembleResult(
        config=config,
        p_left=mean_pl,
        p_right=mean_pr,
        q=mean_q,
        pi_left=tail_mean(mean_pl),
        re_q0=tail_mean(mean_q.real),
        pi_left_stderr=stderr,
    )


@dataclass(frozen=True)
class SweepRow:
    r: float
    pi_left: float
    re_q0: float
    stderr: float


def halfline_r_sweep(
    rs,
    coin: CoinParams = HADAMARD,
    angles: BlochAngles = BlochAngles(math.pi / 4, 0.0),
    steps: int = 2000,
    trajectories: int = 100,
    master_seed: int = 0,
) -> list[SweepRow]:
    """Asymptotic ``Pi_L`` of the half-line-decohered walk per break probability."""
    rows = []
    for i, r in enumerate(rs):
        result = run_ensemble(
            EnsembleConfig(
                r=float(r),
                coin=coin,
                angles=angles,
                steps=steps,
                trajectories=trajectories,
                region=RIGHT_HALF_LINE,
                master_seed=master_seed + i,
            )
        )
        rows.append(
            SweepRow(float(r), result.pi_left, result.re_q0, result.pi_left_stderr)
        )
    return rows
