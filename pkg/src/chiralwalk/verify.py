"""Named self-verification suites, runnable from the CLI.

Each suite cross-checks an implementation path against an independent
oracle (brute-force wavefunction evolution, explicit matrix powers,
quadrature identities) and returns a machine-readable report.
"""

from __future__ import annotations

import math

import numpy as np

from . import ensemble as ens
from .games import winning_probability
from .gcd import gcd_of_state, interference_of_state, propagate_gcd
from .measurement import chain_distribution, markov_matrix_hadamard
from .rng import substream
from .walk import (
    BlochAngles,
    CoinParams,
    init_state,
    sample_link_mask,
    step_unitary,
    step_with_links,
    eligible_links,
)
from .gcd import GcdPair


def _check(name: str, passed: bool, detail: str = "") -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def verify_master_equation(seed: int = 0) -> list[dict]:
    """Per-step GCD from wavefunction evolution vs the exact recursion."""
    rng = substream(seed, 0)
    checks = []
    for case in range(5):
        angles = BlochAngles(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
        coin = CoinParams(rng.uniform(0, math.pi / 2))
        state = init_state(angles)
        worst = 0.0
        for _ in range(200):
            predicted = propagate_gcd(gcd_of_state(state), interference_of_state(state), coin)
            state = step_unitary(state, coin)
            actual = gcd_of_state(state)
            worst = max(worst, abs(actual.p_left - predicted.p_left),
                        abs(actual.p_right - predicted.p_right))
        checks.append(
            _check(f"case-{case}", worst < 1e-12, f"max per-step deviation {worst:.3e}")
        )
    return checks


def verify_markov_closed_form() -> list[dict]:
    """Chain solution vs explicit matrix powers, and the m -> inf limit."""
    mat = markov_matrix_hadamard().as_array()
    initial = GcdPair(0.8, 0.2)
    checks = []
    worst = 0.0
    v = initial.as_array()
    for m in range(1, 51):
        closed = chain_distribution(m, initial).as_array()
        worst = max(worst, float(np.max(np.abs(closed - v))))
        v = mat @ v
    checks.append(_check("matrix-power", worst < 1e-12, f"max deviation {worst:.3e}"))
    limit = chain_distribution(64, GcdPair(1.0, 0.0)).as_array()
    dev = float(np.max(np.abs(limit - 0.5)))
    checks.append(_check("limit-half", dev < 1e-12, f"deviation from 1/2: {dev:.3e}"))
    return checks


def verify_norm_conservation(seed: int = 0) -> list[dict]:
    """Norm preserved to 1e-12 by every map, random states and masks."""
    rng = substream(seed, 1)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 40))
        a = rng.normal(size=n) + 1j * rng.normal(size=n)
        b = rng.normal(size=n) + 1j * rng.normal(size=n)
        norm = math.sqrt(float(np.sum(np.abs(a) ** 2 + np.abs(b) ** 2)))
        from .walk import SpinorField

        state = SpinorField(a / norm, b / norm, offset=int(rng.integers(-5, 5)))
        coin = CoinParams(rng.uniform(0, math.pi / 2))
        lo, hi = eligible_links(state)
        mask = sample_link_mask(rng, rng.uniform(0, 1), lo, hi)
        new = step_with_links(state, coin, mask)
        worst = max(worst, abs(new.norm() - 1.0))
    return [_check("norm", worst < 1e-12, f"max norm drift {worst:.3e}")]


def verify_game_fairness() -> list[dict]:
    """Strategy-averaged win probability is exactly 1/2 for several m."""
    checks = []
    for m in (1, 2, 3, 5):
        summary = winning_probability(m, resolution=257)
        dev = abs(summary.pi_alice - 0.5)
        checks.append(_check(f"m={m}", dev < 1e-10, f"|pi_A - 1/2| = {dev:.3e}"))
    return checks


def verify_link_weights() -> list[dict]:
    rng = substream(7, 0)
    worst = 0.0
    for _ in range(1000):
        w = ens.link_weights(float(rng.random()))
        worst = max(worst, abs(float(np.sum(w.as_array())) - 1.0))
    return [_check("normalization", worst < 1e-15, f"max deviation {worst:.3e}")]


SUITES = {
    "master-equation": verify_master_equation,
    "markov-closed-form": verify_markov_closed_form,
    "norm-conservation": verify_norm_conservation,
    "game-fairness": verify_game_fairness,
    "link-weights": verify_link_weights,
}


def run_suite(name: str) -> dict:
    if name not in SUITES:
        raise KeyError(name)
    checks = SUITES[name]()
    return {
        "suite": name,
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }
