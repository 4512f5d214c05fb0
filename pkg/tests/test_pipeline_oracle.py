"""End-to-end check: simulated layer chains against the dense oracle.

The event simulation emits a chain (pair parameters, linking events, idle
windows); the scalar pipeline turns it into a fidelity.  Feeding the same
chain into the brute-force density-matrix oracle must agree to the stated
first-order truncation bound, and never from below.
"""

import numpy as np
import pytest

from qramsim.analytics import TS_DETERMINISTIC, TWO_STEP_EVEN_LINK, LinkChain
from qramsim.noise import NoiseParams
from qramsim.oracle import ghz_fidelity as dense_fidelity
from qramsim.oracle import pair_state, run_link_oracle
from qramsim.protocol import (
    PlacementStrategy,
    TimingModel,
    simulate_layer_td,
    simulate_layer_ts,
)
from qramsim.qram import layer_fidelity

# memory times short enough that idle decoherence is actually visible
TIMING = TimingModel()


def oracle_fidelity_of_chain(chain: LinkChain, params: NoiseParams,
                             mode: str) -> float:
    states = [pair_state(pp.mu, pp.nu) for pp in chain.pairs]
    times = [[(iv.duration, iv.T1, iv.T2) for iv in intervals]
             for intervals in chain.final_idle]
    final = run_link_oracle(states, mode, params, times=times)
    return dense_fidelity(final)


def check(chain, params, mode, bound=2e-3):
    analytic = layer_fidelity(chain, params)
    oracle = oracle_fidelity_of_chain(chain, params, mode)
    assert analytic <= oracle + 1e-9
    assert abs(analytic - oracle) <= bound


def test_td_layer_against_oracle():
    params = NoiseParams(T1_e=5e-4, T2_e=2e-4, p_e=0.01, p_n=0.01, eta=0.6)
    for seed in range(4):
        chain, _ = simulate_layer_td(4, params, TIMING,
                                     np.random.default_rng(seed))
        assert [e.kind for e in chain.cnot_events] == [TWO_STEP_EVEN_LINK]
        check(chain, params, "two_step")


def test_ts_probabilistic_layer_against_oracle():
    params = NoiseParams(T1_e=5e-4, T2_e=2e-4, eta=0.6, p_link=0.6)
    for seed in range(4):
        chain, _ = simulate_layer_ts(4, params, TIMING,
                                     PlacementStrategy("random", 0.0),
                                     np.random.default_rng(seed))
        assert chain.cnot_events == ()
        check(chain, params, "ts_probabilistic")


def test_ts_deterministic_layer_against_oracle():
    # an offset of 1 never reaches the 2-level linking tree of a 4-node
    # layer, so force every merge deterministic through a random placement
    params = NoiseParams(T1_e=5e-4, T2_e=2e-4, p_e=0.01, p_n=0.01,
                         eta=0.8, p_link=0.8)
    for seed in range(4):
        chain, _ = simulate_layer_ts(4, params, TIMING,
                                     PlacementStrategy("random", 1.0),
                                     np.random.default_rng(seed))
        assert {e.kind for e in chain.cnot_events} == {TS_DETERMINISTIC}
        assert len(chain.cnot_events) == 2
        check(chain, params, "ts_deterministic")


@pytest.mark.parametrize("size", [8])
def test_larger_td_layer_against_oracle(size):
    params = NoiseParams(T1_e=1e-3, T2_e=5e-4, p_e=0.005, p_n=0.005, eta=0.7)
    chain, _ = simulate_layer_td(size, params, TIMING,
                                 np.random.default_rng(7))
    check(chain, params, "two_step", bound=5e-3)
