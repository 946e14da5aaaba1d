"""Periodic joint position-and-chirality measurement and its Markov chain.

Measuring both observables every ``T`` steps collapses the walker onto
``|L>|0>`` or ``|R>|0>`` (the measured position is re-centered, which leaves
the chirality dynamics unchanged).  Over many measurement epochs the GCD
follows an exact two-state Markov chain whose matrix, for the Hadamard coin
and asymptotic ``T``, has entries ``p = 1 - 1/(2 sqrt 2)`` and ``q = 1 - p``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .gcd import GcdPair, gcd_of_state
from .walk import (
    HADAMARD,
    BlochAngles,
    CoinParams,
    SpinorField,
    init_state,
    step_unitary,
)


@dataclass(frozen=True)
class MeasurementRecord:
    outcome: str  # "L" or "R"
    site: int
    step: int


@dataclass(frozen=True)
class MarkovMatrix:
    """Doubly stochastic 2x2 chain matrix [[p, q], [q, p]]."""

    p: float
    q: float

    def __post_init__(self) -> None:
        if abs(self.p + self.q - 1.0) > 1e-12:
            raise ValueError("p + q must equal 1")

    def as_array(self) -> np.ndarray:
        return np.array([[self.p, self.q], [self.q, self.p]])


def markov_matrix_hadamard() -> MarkovMatrix:
    q = 1.0 / (2.0 * math.sqrt(2.0))
    return MarkovMatrix(1.0 - q, q)


def chain_distribution(m: int, initial: GcdPair) -> GcdPair:
    """GCD after ``m`` measurements, from the closed-form chain solution.

    ``p_m = (1 + (2p - 1)^(m-1)) / 2`` and ``q_m = (1 - (1 - 2q)^(m-1)) / 2``
    applied to the initial asymptotic pair.
    """
    if m < 1:
        raise ValueError(f"measurement count must be >= 1, got {m}")
    mat = markov_matrix_hadamard()
    lam = (2.0 * mat.p - 1.0) ** (m - 1)
    p_m = 0.5 * (1.0 + lam)
    q_m = 0.5 * (1.0 - lam)
    return GcdPair(
        p_m * initial.p_left + q_m * initial.p_right,
        q_m * initial.p_left + p_m * initial.p_right,
    )


def evolve_unitary(
    state: SpinorField, steps: int, coin: CoinParams = HADAMARD
) -> SpinorField:
    for _ in range(steps):
        state = step_unitary(state, coin)
    return state


class _CollapseSampler:
    """Inverse-CDF sampler over the joint (site, chirality) outcomes."""

    def __init__(self, state: SpinorField):
        probs = np.concatenate([np.abs(state.a) ** 2, np.abs(state.b) ** 2])
        self._cdf = np.cumsum(probs / probs.sum())
        self._n = state.a.size
        self._offset = state.offset

    def sample(self, rng: np.random.Generator) -> tuple[str, int]:
        idx = int(np.searchsorted(self._cdf, rng.random(), side="right"))
        idx = min(idx, 2 * self._n - 1)
        if idx < self._n:
            return "L", self._offset + idx
        return "R", self._offset + idx - self._n


def _eigenstate(outcome: str) -> SpinorField:
    a = np.array([1.0 if outcome == "L" else 0.0], dtype=np.complex128)
    b = np.array([0.0 if outcome == "L" else 1.0], dtype=np.complex128)
    return SpinorField(a, b, offset=0, time=0)


def measure_and_collapse(
    state: SpinorField, rng: np.random.Generator
) -> tuple[MeasurementRecord, SpinorField]:
    """Jointly measure position and chirality; collapse and re-center.

    The post-measurement state is the chirality eigenstate at the origin with
    the time counter reset: each inter-measurement epoch is an independent
    walk, and the translation to the origin does not affect the chirality
    dynamics.
    """
    outcome, site = _CollapseSampler(state).sample(rng)
    record = MeasurementRecord(outcome=outcome, site=site, step=state.time)
    return record, _eigenstate(outcome)


@dataclass
class ProtocolResult:
    frequencies: GcdPair
    final_outcomes: list[str]
    ledger: list[dict] = field(default_factory=list)

    def ledger_jsonl(self) -> str:
        return "\n".join(json.dumps(row) for row in self.ledger)


def simulate_protocol(
    angles: BlochAngles,
    T: int = 2000,
    m: int = 1,
    trials: int = 1,
    rng: np.random.Generator | None = None,
    coin: CoinParams = HADAMARD,
) -> ProtocolResult:
    """Run the full measurement protocol ``trials`` times.

    Each trial evolves ``T`` unitary steps, measures, collapses, and repeats
    for ``m`` epochs.  Because every epoch starts from one of three states
    (the initial condition, ``|L>|0>`` or ``|R>|0>``), the ``T``-step
    evolution of each is computed once and reused; the sampling itself is
    per-trial and consumes the stream in trial order.
    """
    if m < 1:
        raise ValueError(f"measurement count must be >= 1, got {m}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if rng is None:
        rng = np.random.default_rng()

    samplers: dict[str, _CollapseSampler] = {}

    def sampler_for(key: str) -> _CollapseSampler:
        if key not in samplers:
            start = init_state(angles) if key == "init" else _eigenstate(key)
            samplers[key] = _CollapseSampler(evolve_unitary(start, T, coin))
        return samplers[key]

    ledger: list[dict] = []
    final_outcomes: list[str] = []
    for trial in range(trials):
        key = "init"
        for epoch in range(1, m + 1):
            outcome, site = sampler_for(key).sample(rng)
            ledger.append(
                {"trial": trial, "epoch": epoch, "outcome": outcome, "site": site}
            )
            key = outcome
        final_outcomes.append(key)

    n_left = sum(1 for o in final_outcomes if o == "L")
    freq = GcdPair(n_left / trials, 1.0 - n_left / trials)
    return ProtocolResult(frequencies=freq, final_outcomes=final_outcomes, ledger=ledger)


def write_ledger(path: str, result: ProtocolResult) -> None:
    """One JSON object per measurement event."""
    with open(path, "w") as fh:
        fh.write(result.ledger_jsonl() + "\n")
