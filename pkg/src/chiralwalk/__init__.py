"""Discrete-time quantum walk on the line: chirality dynamics, decoherence
ensembles, and coin-flipping games."""

from .walk import (
    BlochAngles,
    CoinParams,
    HADAMARD,
    LinkMask,
    SiteLinkState,
    SpinorField,
    classify_site,
    init_state,
    position_distribution,
    sample_link_mask,
    step_unitary,
    step_with_links,
)
from .gcd import (
    GcdPair,
    Interference,
    gcd_of_state,
    interference_of_state,
    pi_hadamard,
    propagate_gcd,
    q0_hadamard,
    stationary_gcd,
)
from .measurement import (
    MarkovMatrix,
    MeasurementRecord,
    chain_distribution,
    markov_matrix_hadamard,
    measure_and_collapse,
    simulate_protocol,
)
from .ensemble import (
    EnsembleConfig,
    EnsembleResult,
    LinkWeights,
    ReducedDensity,
    averaged_master_step,
    halfline_r_sweep,
    link_weights,
    reduced_density,
    run_ensemble,
)
from .games import (
    GameRules,
    PayoffSummary,
    RoundOutcome,
    Strategy,
    play_round,
    win_density,
    winning_probability,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
