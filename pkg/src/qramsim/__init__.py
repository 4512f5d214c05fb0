"""qramsim: noisy GHZ-state distribution for network-based quantum RAM.

Layer states are simulated event-wise (timing only), reconstructed in
closed form from the recorded noise windows, and validated against a
brute-force density-matrix oracle at small qubit counts.
"""

from .analytics import (
    CnotEvent,
    GhzCorner,
    IdleInterval,
    LinkChain,
    PairParams,
    apply_cnot_noise,
    apply_final_decoherence,
    diag_entry,
    ghz_fidelity,
    link_noiseless,
    pair_after_transfer,
    pair_electron_only,
    validity_warning,
)
from .dense import DenseState, MeasurementRecord, apply_channel, apply_gate, measure
from .noise import (
    KrausSet,
    NoiseParams,
    eps,
    eps_bar,
    f_factor,
    g_factor,
    h_factor,
    h_tilde_factor,
    kraus_set,
)
from .oracle import pair_state, run_link_oracle, run_transfer_block_oracle
from .protocol import (
    PlacementStrategy,
    QramRunResult,
    TimingModel,
    attempt_cycle_duration,
    sample_heralded_success,
    simulate_layer_td,
    simulate_layer_ts,
    simulate_qram,
)
from .qram import (
    MonteCarloSummary,
    QramEstimate,
    RunConfig,
    layer_fidelity,
    monte_carlo,
    qram_fidelity,
)

__version__ = "0.1.0"
