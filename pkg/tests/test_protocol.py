import math

import numpy as np
import pytest

from qramsim.analytics import TS_DETERMINISTIC, TWO_STEP_EVEN_LINK
from qramsim.noise import NoiseParams
from qramsim.protocol import (
    PlacementStrategy,
    TimingModel,
    attempt_cycle_duration,
    sample_heralded_success,
    simulate_layer_td,
    simulate_layer_ts,
    simulate_qram,
)

TIMING = TimingModel()
CYCLE = attempt_cycle_duration(TIMING)


class TestTiming:
    def test_default_cycle(self):
        assert CYCLE == pytest.approx(5.0002001e-6, rel=1e-12)

    def test_default_table_values(self):
        t = TimingModel()
        assert t.single_qubit_gate == 32e-9
        assert t.qubit_init == 5e-6
        assert t.nuclear_cnot == 16e-6
        assert t.electronic_cnot == 29e-9
        assert t.photon_spin_interaction == 0.1e-9
        assert t.light_velocity == 2e8
        assert t.cavity_distance == 10e-6
        assert t.measurement == 0.0

    def test_zero_init_and_distance(self):
        t = TimingModel(qubit_init=0.0, cavity_distance=0.0)
        assert attempt_cycle_duration(t) == pytest.approx(0.2e-9)

    def test_transit_linear_in_distance(self):
        t1 = TimingModel()
        t2 = TimingModel(cavity_distance=2 * t1.cavity_distance)
        base = TimingModel(cavity_distance=0.0)
        d1 = attempt_cycle_duration(t1) - attempt_cycle_duration(base)
        d2 = attempt_cycle_duration(t2) - attempt_cycle_duration(base)
        assert d2 == pytest.approx(2 * d1)

    def test_validation(self):
        with pytest.raises(ValueError):
            TimingModel(nuclear_cnot=-1.0)
        with pytest.raises(ValueError):
            TimingModel(light_velocity=0.0)


class TestHeraldedSampling:
    def test_certain_success(self):
        rng = np.random.default_rng(0)
        assert all(sample_heralded_success(1.0, rng) == 1 for _ in range(50))

    def test_zero_probability_rejected(self):
        with pytest.raises(ValueError):
            sample_heralded_success(0.0, np.random.default_rng(0))

    def test_geometric_mean(self):
        rng = np.random.default_rng(123)
        ks = [sample_heralded_success(0.5, rng) for _ in range(100_000)]
        assert np.mean(ks) == pytest.approx(2.0, abs=0.05)

    def test_seed_determinism(self):
        a = [sample_heralded_success(0.3, np.random.default_rng(7)) for _ in range(20)]
        b = [sample_heralded_success(0.3, np.random.default_rng(7)) for _ in range(20)]
        assert a == b


class TestTdLayer:
    def test_single_link_layer(self):
        params = NoiseParams(eta=1.0)
        chain, rec = simulate_layer_td(2, params, TIMING, np.random.default_rng(0))
        expect = CYCLE + TIMING.electronic_cnot + TIMING.single_qubit_gate
        assert rec.completion_time == pytest.approx(expect, rel=1e-12)
        assert len(chain.pairs) == 1
        assert len(rec.links) == 1
        assert chain.cnot_events == ()

    def test_lockstep_at_unit_efficiency(self):
        params = NoiseParams(eta=1.0, T1_e=1.0, T2_e=0.5)
        chain, rec = simulate_layer_td(16, params, TIMING, np.random.default_rng(1))
        # mirror symmetry of the whole chain, and all interior odd links equal
        assert chain.pairs == tuple(reversed(chain.pairs))
        interior_odd = chain.pairs[2:-2:2]
        assert all(p == interior_odd[0] for p in interior_odd)
        even_pairs = chain.pairs[1::2]
        assert all(p == even_pairs[0] for p in even_pairs)
        # endpoints idle over the whole splice step, interior nodes not at all
        assert chain.final_idle[0] == chain.final_idle[-1]
        assert all(iv == () for iv in chain.final_idle[1:-1])

    def test_even_event_count(self):
        params = NoiseParams(eta=0.8)
        for size in (4, 8, 32):
            chain, _ = simulate_layer_td(size, params, TIMING,
                                         np.random.default_rng(3))
            events = [e for e in chain.cnot_events
                      if e.kind == TWO_STEP_EVEN_LINK]
            assert len(events) == (size - 1) // 2
            assert [e.node for e in events] == list(range(2, size, 2))

    def test_mean_completion_tracks_order_statistics(self):
        eta, size, n = 0.9, 256, 150
        params = NoiseParams(eta=eta)
        rng = np.random.default_rng(11)
        sim_means = np.mean([
            simulate_layer_td(size, params, TIMING, rng)[1].completion_time
            for _ in range(n)])
        # independent brute-force oracle for the two max-of-geometrics steps
        mc = np.random.default_rng(999)
        n_odd, n_even = 128, 127
        direct = np.mean([
            mc.geometric(eta, size=n_odd).max() + mc.geometric(eta, size=n_even).max()
            for _ in range(20_000)])
        expect = (direct * CYCLE + TIMING.electronic_cnot + TIMING.nuclear_cnot
                  + 2 * TIMING.single_qubit_gate)
        assert sim_means == pytest.approx(expect, rel=0.02)

    def test_size_validation(self):
        with pytest.raises(ValueError):
            simulate_layer_td(3, NoiseParams(), TIMING, np.random.default_rng(0))

    def test_overlapped_steps_finish_no_later(self):
        params = NoiseParams(eta=0.5)
        seq = np.mean([simulate_layer_td(
            32, params, TIMING, np.random.default_rng(s))[1].completion_time
            for s in range(80)])
        ovl = np.mean([simulate_layer_td(
            32, params, TIMING, np.random.default_rng(s),
            overlap_steps=True)[1].completion_time for s in range(80)])
        assert ovl < seq

    def test_ledger_chronology(self):
        params = NoiseParams(eta=0.6, T1_e=1.0, T2_e=0.5)
        chain, rec = simulate_layer_td(32, params, TIMING, np.random.default_rng(5))
        for link in rec.links:
            for w in (link.left_window, link.right_window):
                assert w.start == pytest.approx(link.created_at)
                assert w.end >= w.start
                assert w.end <= rec.completion_time
        for intervals in rec.member_custody:
            ends = [iv.end for iv in intervals]
            starts = [iv.start for iv in intervals]
            assert all(e >= s for s, e in zip(starts, ends))
            assert all(e <= rec.completion_time + 1e-15 for e in ends)
        assert len(chain.final_idle) == 32


class TestTsLayer:
    def test_failure_free_schedule(self):
        params = NoiseParams(eta=1.0, p_link=1.0)
        chain, rec = simulate_layer_ts(64, params, TIMING, PlacementStrategy(),
                                       np.random.default_rng(0))
        merge = (2 * TIMING.photon_spin_interaction
                 + 2 * TIMING.cavity_distance / TIMING.light_velocity
                 + TIMING.measurement + TIMING.single_qubit_gate)
        assert rec.completion_time == pytest.approx(CYCLE + 6 * merge, rel=1e-12)
        assert chain.cnot_events == ()

    def test_top_layers_fraction(self):
        placement = PlacementStrategy("top_layers", 4)
        params = NoiseParams(eta=1.0, p_link=1.0)
        chain, _ = simulate_layer_ts(2048, params, TIMING, placement,
                                     np.random.default_rng(0))
        dets = [e for e in chain.cnot_events if e.kind == TS_DETERMINISTIC]
        assert abs(len(dets) - 2048 * 2**-5) <= 1

    def test_reset_regenerates_everything(self):
        # with p_link < 1 rebuilds must happen, and the surviving record
        # stays chronologically consistent
        params = NoiseParams(eta=0.5, p_link=0.5)
        chain, rec = simulate_layer_ts(64, params, TIMING, PlacementStrategy(),
                                       np.random.default_rng(12))
        assert rec.completion_time > CYCLE  # retries happened
        for link in rec.links:
            assert 0 <= link.created_at <= rec.completion_time
            for w in (link.left_window, link.right_window):
                assert w.end >= w.start >= 0.0
                assert w.end <= rec.completion_time + 1e-15
        for intervals in rec.member_custody:
            for iv in intervals:
                assert iv.end == pytest.approx(rec.completion_time)

    def test_full_rebuild_policy_runs(self):
        params = NoiseParams(eta=0.7, p_link=0.7)
        chain, rec = simulate_layer_ts(16, params, TIMING, PlacementStrategy(),
                                       np.random.default_rng(4),
                                       reset_policy="full_rebuild")
        assert rec.completion_time > 0
        assert len(chain.pairs) == 15

    def test_full_rebuild_slower_on_average(self):
        params = NoiseParams(eta=0.6, p_link=0.6)
        single = np.mean([
            simulate_layer_ts(32, params, TIMING, PlacementStrategy(),
                              np.random.default_rng(s))[1].completion_time
            for s in range(60)])
        full = np.mean([
            simulate_layer_ts(32, params, TIMING, PlacementStrategy(),
                              np.random.default_rng(s),
                              reset_policy="full_rebuild")[1].completion_time
            for s in range(60)])
        assert full > single

    def test_deterministic_nodes_rest_in_nuclear_memory(self):
        params = NoiseParams(eta=1.0, p_link=1.0, T1_e=1.0, T2_e=0.5)
        placement = PlacementStrategy("top_layers", 1)
        chain, rec = simulate_layer_ts(16, params, TIMING, placement,
                                       np.random.default_rng(2))
        det_nodes = {e.node for e in chain.cnot_events}
        assert det_nodes  # some deterministic merges exist at this size
        for node, custody in enumerate(rec.member_custody):
            want = "nuclear" if node in det_nodes else "electron"
            assert custody[0].memory == want

    def test_placement_validation(self):
        with pytest.raises(ValueError):
            PlacementStrategy("random", 1.5)
        with pytest.raises(ValueError):
            PlacementStrategy("top_layers", 0)
        with pytest.raises(ValueError):
            PlacementStrategy("middle", 1)


class TestQramRuns:
    def test_determinism(self):
        params = NoiseParams(eta=0.7, p_link=0.7, T1_e=1.0, T2_e=0.5)
        a = simulate_qram("ts", 6, params, seed=42)
        b = simulate_qram("ts", 6, params, seed=42)
        assert a == b

    def test_seed_changes_runs(self):
        params = NoiseParams(eta=0.7)
        a = simulate_qram("td", 6, params, seed=1)
        b = simulate_qram("td", 6, params, seed=2)
        assert a != b

    def test_trivial_run(self):
        res = simulate_qram("td", 1, NoiseParams(eta=0.9), seed=0)
        assert res.query_time > 0
        assert len(res.chains) == 1
        assert len(res.chains[0].pairs) == 1  # just the register link

    def test_query_time_is_layer_max(self):
        res = simulate_qram("td", 8, NoiseParams(eta=0.8), seed=3)
        assert res.query_time == pytest.approx(
            max(r.completion_time for r in res.records))

    def test_extension_adds_one_pair_per_layer(self):
        params = NoiseParams(eta=0.9)
        with_ext = simulate_qram("td", 5, params, seed=9, extend_with_qc_link=True)
        without = simulate_qram("td", 5, params, seed=9, extend_with_qc_link=False)
        for k, (ce, cn) in enumerate(zip(with_ext.chains, without.chains)):
            if cn is None:
                assert ce is not None and len(ce.pairs) == 1
            else:
                assert len(ce.pairs) == len(cn.pairs) + 1
                assert len(ce.final_idle) == len(cn.final_idle) + 1

    def test_layer_sizes(self):
        res = simulate_qram("td", 6, NoiseParams(eta=0.9), seed=0,
                            extend_with_qc_link=False)
        assert [r.layer_size for r in res.records] == [1, 2, 4, 8, 16]

    def test_protocol_validation(self):
        with pytest.raises(ValueError):
            simulate_qram("bb", 4, NoiseParams())
        with pytest.raises(ValueError):
            simulate_qram("td", 0, NoiseParams())
