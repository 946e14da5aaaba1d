"""Coined walk on the integer line.

The walker state is a two-component complex amplitude field over lattice
sites.  One time step is either the homogeneous unitary map or a locally
modified map when links between neighboring sites are broken: amplitude can
never cross a broken link, so the outgoing flux at an affected site is
diverted into the opposite chirality component on the same site.
"""

from __future__ import annotations

import cmath
import csv
import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

# Tolerance constants shared across the package.
NORM_ATOL = 1e-12
TRACE_ATOL = 1e-12
PSD_ATOL = 1e-10

# Lowest link identifier eligible for breakage in right-half-line mode.  The
# link between sites 0 and 1 carries identifier 0; link (-1, 0) is excluded.
HALFLINE_BOUNDARY = 0

FULL_LINE = "full-line"
RIGHT_HALF_LINE = "right-half-line"
NO_REGION = "none"
_REGIONS = (FULL_LINE, RIGHT_HALF_LINE, NO_REGION)


@dataclass(frozen=True)
class CoinParams:
    """Bias of the coin toss; ``theta = pi/4`` is the unbiased (Hadamard) coin."""

    theta: float = math.pi / 4

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= math.pi / 2:
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")


HADAMARD = CoinParams()


@dataclass(frozen=True)
class BlochAngles:
    """Initial-condition point on the Bloch sphere.

    ``alpha`` in [0, pi] sets the chirality weights, ``beta`` in [0, 2*pi]
    the relative phase: the induced spinor is ``(cos(alpha), e^{i beta} sin(alpha))``.
    """

    alpha: float
    beta: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= math.pi:
            raise ValueError(f"alpha must lie in [0, pi], got {self.alpha}")
        if not 0.0 <= self.beta <= 2.0 * math.pi:
            raise ValueError(f"beta must lie in [0, 2*pi], got {self.beta}")

    def spinor(self) -> tuple[complex, complex]:
        return (
            complex(math.cos(self.alpha)),
            cmath.exp(1j * self.beta) * math.sin(self.alpha),
        )


class SiteLinkState(Enum):
    """The four situations that can arise at a site given its adjacent links."""

    BOTH_INTACT = "both-intact"
    LEFT_BROKEN = "left-broken"
    RIGHT_BROKEN = "right-broken"
    ISOLATED = "isolated"


@dataclass(frozen=True)
class LinkMask:
    """Set of broken links for one time step.

    A link is identified by the lesser of its two endpoint site indices, so
    link ``k`` connects sites ``k`` and ``k + 1``.
    """

    broken: frozenset[int]
    region: str = NO_REGION

    def __post_init__(self) -> None:
        if self.region not in _REGIONS:
            raise ValueError(f"unknown region {self.region!r}")
        if self.region == RIGHT_HALF_LINE and any(
            k < HALFLINE_BOUNDARY for k in self.broken
        ):
            raise ValueError("half-line mask contains links left of the boundary")


EMPTY_MASK = LinkMask(frozenset())


@dataclass
class SpinorField:
    """Walker wavefunction: per-site amplitude pairs over a finite window.

    ``a[i]`` / ``b[i]`` are the left/right chirality amplitudes of site
    ``offset + i``.  Amplitudes outside the window are exactly zero; after
    ``t`` steps from a localized start the support stays inside ``[-t, t]``.
    """

    a: np.ndarray
    b: np.ndarray
    offset: int
    time: int = 0

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + self.a.size)

    def amplitude(self, k: int) -> tuple[complex, complex]:
        i = k - self.offset
        if 0 <= i < self.a.size:
            return (complex(self.a[i]), complex(self.b[i]))
        return (0j, 0j)

    def norm(self) -> float:
        return float(np.sum(np.abs(self.a) ** 2 + np.abs(self.b) ** 2))

    def amplitudes(self) -> dict[int, tuple[complex, complex]]:
        """Site -> (a_k, b_k) for every site in the active window."""
        return {
            int(k): (complex(ak), complex(bk))
            for k, ak, bk in zip(self.sites, self.a, self.b)
        }

    def copy(self) -> "SpinorField":
        return SpinorField(self.a.copy(), self.b.copy(), self.offset, self.time)

    def dump_csv(self, path: str) -> None:
        """Debug dump: one row per site with real/imaginary parts."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["site", "re_a", "im_a", "re_b", "im_b"])
            for k, ak, bk in zip(self.sites, self.a, self.b):
                writer.writerow(
                    [int(k), ak.real, ak.imag, bk.real, bk.imag]
                )

    def to_json(self) -> str:
        rows = [
            {"site": int(k), "re_a": ak.real, "im_a": ak.imag,
             "re_b": bk.real, "im_b": bk.imag}
            for k, ak, bk in zip(self.sites, self.a, self.b)
        ]
        return json.dumps({"time": self.time, "amplitudes": rows})


def init_state(angles: BlochAngles) -> SpinorField:
    """Walker sharply localized at the origin with the given chirality."""
    a0, b0 = angles.spinor()
    return SpinorField(
        np.array([a0], dtype=np.complex128),
        np.array([b0], dtype=np.complex128),
        offset=0,
        time=0,
    )


def step_unitary(state: SpinorField, coin: CoinParams = HADAMARD) -> SpinorField:
    """One step of the homogeneous unitary map.

    ``a_k(t+1) = a_{k+1} cos(theta) + b_{k+1} sin(theta)``,
    ``b_k(t+1) = a_{k-1} sin(theta) - b_{k-1} cos(theta)``.
    """
    c = math.cos(coin.theta)
    s = math.sin(coin.theta)
    n = state.a.size
    a_new = np.zeros(n + 2, dtype=np.complex128)
    b_new = np.zeros(n + 2, dtype=np.complex128)
    a_new[:n] = state.a * c + state.b * s
    b_new[2:] = state.a * s - state.b * c
    return SpinorField(a_new, b_new, state.offset - 1, state.time + 1)


def classify_site(mask: LinkMask, k: int) -> SiteLinkState:
    """Which of the four local evolution cases applies at site ``k``."""
    left = (k - 1) in mask.broken
    right = k in mask.broken
    if left and right:
        return SiteLinkState.ISOLATED
    if left:
        return SiteLinkState.LEFT_BROKEN
    if right:
        return SiteLinkState.RIGHT_BROKEN
    return SiteLinkState.BOTH_INTACT


def step_with_links(
    state: SpinorField, coin: CoinParams, mask: LinkMask
) -> SpinorField:
    """One step with the per-site map selected by the adjacent link states.

    Coin first, then the conditional shift with broken links acting as local
    chirality exchangers: a post-coin mover that cannot cross its link stays
    on the site and lands in the opposite chirality component.  This keeps
    the total probability flux conserved exactly for every mask and every
    coin bias, and reduces to the familiar per-site maps at ``theta = pi/4``.
    """
    c = math.cos(coin.theta)
    s = math.sin(coin.theta)
    n = state.a.size
    # Old amplitudes aligned to the new window [offset-1, offset+n].
    a_c = np.zeros(n + 2, dtype=np.complex128)
    b_c = np.zeros(n + 2, dtype=np.complex128)
    a_c[1:-1] = state.a
    b_c[1:-1] = state.b
    a_r = np.roll(a_c, -1)
    b_r = np.roll(b_c, -1)
    a_l = np.roll(a_c, 1)
    b_l = np.roll(b_c, 1)
    a_r[-1] = b_r[-1] = a_l[0] = b_l[0] = 0.0

    sites = np.arange(state.offset - 1, state.offset + n + 1)
    broken_ids = np.fromiter(mask.broken, dtype=np.int64, count=len(mask.broken))
    right_broken = np.isin(sites, broken_ids)
    left_broken = np.isin(sites - 1, broken_ids)

    # Post-coin components: (c a + s b) moves left, (s a - c b) moves right.
    a_new = np.where(right_broken, a_c * s - b_c * c, a_r * c + b_r * s)
    b_new = np.where(left_broken, a_c * c + b_c * s, a_l * s - b_l * c)
    return SpinorField(a_new, b_new, state.offset - 1, state.time + 1)


def sample_link_mask(
    rng: np.random.Generator,
    r: float,
    lo: int,
    hi: int,
    region: str = FULL_LINE,
) -> LinkMask:
    """Break each eligible link in ``[lo, hi]`` independently with probability ``r``.

    In right-half-line mode only links with identifier >= ``HALFLINE_BOUNDARY``
    are eligible.  One uniform draw is consumed per eligible link, in
    increasing link order, so the stream can be replayed externally.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"break probability must lie in [0, 1], got {r}")
    ids = np.arange(lo, hi + 1)
    if region == RIGHT_HALF_LINE:
        ids = ids[ids >= HALFLINE_BOUNDARY]
    elif region not in (FULL_LINE, NO_REGION):
        raise ValueError(f"unknown region {region!r}")
    draws = rng.random(ids.size)
    return LinkMask(frozenset(int(k) for k in ids[draws < r]), region)


def eligible_links(state: SpinorField) -> tuple[int, int]:
    """Link-id range whose breakage can affect the next step of ``state``.

    Links strictly outside the active window touch only zero-amplitude sites
    and are dynamically irrelevant, so they are never sampled.
    """
    return state.offset - 1, state.offset + state.a.size - 1


def position_distribution(state: SpinorField) -> dict[int, float]:
    """Site occupation probabilities ``|a_k|^2 + |b_k|^2`` (zeros dropped)."""
    probs = np.abs(state.a) ** 2 + np.abs(state.b) ** 2
    return {
        int(k): float(p) for k, p in zip(state.sites, probs) if p > 0.0
    }
