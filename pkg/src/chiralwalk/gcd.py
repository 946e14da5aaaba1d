"""Global chirality distribution (GCD) and its closed-form asymptotics.

The GCD is the pair of total left/right chirality probabilities summed over
all positions.  For the unitary walk it obeys an exact one-step recursion
driven by the interference term ``Q(t) = sum_k a_k b_k*``; the stationary
solution, and the Hadamard-coin closed forms for ``Q0`` and the asymptotic
pair, are evaluated here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .walk import HADAMARD, BlochAngles, CoinParams, SpinorField

_SUM_ATOL = 1e-9
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class GcdPair:
    """(P_L, P_R): probabilities of left and right chirality, summing to 1."""

    p_left: float
    p_right: float

    def __post_init__(self) -> None:
        if not (-_SUM_ATOL <= self.p_left <= 1.0 + _SUM_ATOL):
            raise ValueError(f"p_left out of [0, 1]: {self.p_left}")
        if not (-_SUM_ATOL <= self.p_right <= 1.0 + _SUM_ATOL):
            raise ValueError(f"p_right out of [0, 1]: {self.p_right}")
        if abs(self.p_left + self.p_right - 1.0) > _SUM_ATOL:
            raise ValueError(
                f"probabilities must sum to 1, got {self.p_left + self.p_right}"
            )

    def as_array(self) -> np.ndarray:
        return np.array([self.p_left, self.p_right])


@dataclass(frozen=True)
class Interference:
    """Position-summed coherence between the chirality components."""

    q: complex

    @property
    def re(self) -> float:
        return self.q.real


def gcd_of_state(state: SpinorField) -> GcdPair:
    pl = float(np.sum(np.abs(state.a) ** 2))
    pr = float(np.sum(np.abs(state.b) ** 2))
    return GcdPair(pl, pr)


def interference_of_state(state: SpinorField) -> Interference:
    return Interference(complex(np.sum(state.a * np.conj(state.b))))


def propagate_gcd(
    gcd: GcdPair, q_t: Interference, coin: CoinParams = HADAMARD
) -> GcdPair:
    """One step of the exact GCD recursion for the unitary walk.

    The 2x2 doubly stochastic coin matrix plus the interference correction
    ``Re(Q) sin(2 theta) (+1, -1)``.
    """
    c2 = math.cos(coin.theta) ** 2
    s2 = math.sin(coin.theta) ** 2
    corr = q_t.re * math.sin(2.0 * coin.theta)
    return GcdPair(
        c2 * gcd.p_left + s2 * gcd.p_right + corr,
        s2 * gcd.p_left + c2 * gcd.p_right - corr,
    )


def stationary_gcd(q0: Interference, coin: CoinParams = HADAMARD) -> GcdPair:
    """Stationary GCD ``(1 +- 2 Re(Q0) / tan(theta)) / 2``; rejects theta = 0."""
    if coin.theta == 0.0:
        raise ValueError("stationary GCD is undefined for theta = 0")
    shift = q0.re / math.tan(coin.theta)
    return GcdPair(0.5 + shift, 0.5 - shift)


def q0_hadamard(angles: BlochAngles) -> Interference:
    """Closed-form asymptotic interference for the Hadamard coin."""
    two_a = 2.0 * angles.alpha
    q = (
        0.5
        * (1.0 - _INV_SQRT2)
        * (
            math.cos(two_a)
            + math.sin(two_a)
            * (math.cos(angles.beta) - 1j * math.sqrt(2.0) * math.sin(angles.beta))
        )
    )
    return Interference(q)


def pi_hadamard(angles: BlochAngles) -> GcdPair:
    """Closed-form asymptotic GCD for the Hadamard coin."""
    two_a = 2.0 * angles.alpha
    shift = (1.0 - _INV_SQRT2) * (
        math.cos(two_a) + math.cos(angles.beta) * math.sin(two_a)
    )
    return GcdPair(0.5 * (1.0 + shift), 0.5 * (1.0 - shift))


def pi_left_values(alphas: np.ndarray, betas: np.ndarray) -> np.ndarray:
    """Vectorized asymptotic ``Pi_L`` on the outer grid ``alphas x betas``."""
    a, b = np.meshgrid(alphas, betas, indexing="ij")
    shift = (1.0 - _INV_SQRT2) * (np.cos(2.0 * a) + np.cos(b) * np.sin(2.0 * a))
    return 0.5 * (1.0 + shift)


def tail_mean(series: np.ndarray, fraction: float = 0.1) -> float:
    """Mean over the final ``fraction`` of a time series.

    The GCD oscillates while converging; averaging the tail suppresses the
    residual oscillation without biasing the limit.
    """
    n = max(1, int(round(len(series) * fraction)))
    return float(np.mean(series[-n:]))
