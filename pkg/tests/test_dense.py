import math

import numpy as np
import pytest

from qramsim.dense import (
    DenseState,
    apply_channel,
    apply_gate,
    discard,
    ghz_fidelity,
    measure,
    symmetrize_antidiagonal,
)
from qramsim.noise import kraus_set
from qramsim.oracle import pair_state


def bell():
    return DenseState.bell_pair()


class TestGates:
    def test_cnot_on_00(self):
        s = apply_gate(DenseState.computational("00"), "CNOT", (0, 1))
        assert s.matrix[0, 0] == pytest.approx(1.0)

    def test_cnot_on_10(self):
        # |10>: the written-first (high) bit is the control
        s = apply_gate(DenseState.computational("10"), "CNOT", (1, 0))
        assert s.matrix[3, 3] == pytest.approx(1.0)

    def test_bell_circuit(self):
        s = DenseState.computational("00")
        s = apply_gate(s, "H", (1,))
        s = apply_gate(s, "CNOT", (1, 0))
        for i, j in [(0, 0), (0, 3), (3, 0), (3, 3)]:
            assert s.matrix[i, j] == pytest.approx(0.5)
        s.validate()

    def test_bad_targets(self):
        s = DenseState.computational("00")
        with pytest.raises(ValueError):
            apply_gate(s, "X", (5,))
        with pytest.raises(ValueError):
            apply_gate(s, "CNOT", (1, 1))
        with pytest.raises(ValueError):
            apply_gate(s, "SWAP", (0, 1))

    def test_state_invariants_preserved(self):
        s = bell()
        for gate, tg in [("X", (0,)), ("Z", (1,)), ("H", (0,)), ("CNOT", (0, 1))]:
            s = apply_gate(s, gate, tg)
            s.validate()


class TestChannels:
    def test_dephasing_corner(self):
        p = 0.13
        s = apply_channel(bell(), kraus_set("dephasing", p), 0)
        assert s.matrix[0, 3].real == pytest.approx((1 - 2 * p) / 2.0)
        s.validate()

    def test_damping_first_qubit_table(self):
        p = 0.2
        s = apply_channel(bell(), kraus_set("damping", p), 0)
        diag = np.diag(s.matrix).real * 2.0
        assert diag == pytest.approx([1.0, 0.0, p, 1.0 - p])
        assert s.matrix[0, 3].real * 2.0 == pytest.approx(math.sqrt(1.0 - p))
        s.validate()

    def test_damping_second_qubit_table(self):
        p = 0.2
        s = apply_channel(bell(), kraus_set("damping", p), 1)
        diag = np.diag(s.matrix).real * 2.0
        assert diag == pytest.approx([1.0, p, 0.0, 1.0 - p])

    def test_zero_probability_is_identity(self):
        for kind in ("dephasing", "damping", "depolarizing"):
            s = apply_channel(bell(), kraus_set(kind, 0.0), 1)
            assert np.allclose(s.matrix, bell().matrix, atol=1e-15)

    def test_trace_preserved(self):
        s = bell()
        for kind in ("dephasing", "damping", "depolarizing"):
            s = apply_channel(s, kraus_set(kind, 0.37), 0)
            assert s.trace() == pytest.approx(1.0, abs=1e-12)

    def test_disjoint_channels_commute(self):
        a = kraus_set("damping", 0.3)
        b = kraus_set("dephasing", 0.4)
        s1 = apply_channel(apply_channel(bell(), a, 0), b, 1)
        s2 = apply_channel(apply_channel(bell(), b, 1), a, 0)
        assert np.abs(s1.matrix - s2.matrix).max() < 1e-12


class TestMeasurement:
    def test_z_on_zero_state(self):
        rec, post = measure(DenseState.computational("00"), 0, "Z", forced=+1)
        assert rec.outcome == +1
        assert rec.probability == pytest.approx(1.0)
        assert post.trace() == pytest.approx(1.0)

    def test_x_on_bell_is_unbiased(self):
        for q in (0, 1):
            rec, _ = measure(bell(), q, "X", forced=+1)
            assert rec.probability == pytest.approx(0.5)

    def test_z_on_noisy_pair_is_unbiased(self):
        s = pair_state(0.23, 0.5)
        rec, _ = measure(s, 0, "Z", forced=+1)
        assert rec.probability == pytest.approx(0.5)

    def test_forced_zero_probability_branch(self):
        with pytest.raises(ValueError):
            measure(DenseState.computational("00"), 0, "Z", forced=-1)

    def test_sampled_is_deterministic_under_seed(self):
        outs1 = [measure(bell(), 0, "Z", rng=np.random.default_rng(42))[0].outcome
                 for _ in range(10)]
        outs2 = [measure(bell(), 0, "Z", rng=np.random.default_rng(42))[0].outcome
                 for _ in range(10)]
        assert outs1 == outs2

    def test_discard_after_measurement(self):
        rec, post = measure(bell(), 0, "Z", forced=+1)
        reduced = discard(post, 0)
        assert reduced.n_qubits == 1
        assert reduced.matrix[0, 0] == pytest.approx(1.0)


class TestSymmetrization:
    def test_fixed_point(self):
        s = bell()
        assert np.allclose(symmetrize_antidiagonal(s).matrix, s.matrix)

    def test_ghz_fidelity_invariant(self):
        s = apply_channel(bell(), kraus_set("damping", 0.35), 0)
        s = apply_channel(s, kraus_set("dephasing", 0.2), 1)
        before = ghz_fidelity(s)
        after = ghz_fidelity(symmetrize_antidiagonal(s))
        assert after == pytest.approx(before, abs=1e-12)

    def test_damping_broken_pair_becomes_symmetric(self):
        s = symmetrize_antidiagonal(apply_channel(bell(), kraus_set("damping", 0.4), 0))
        m = s.matrix
        flipped = np.fliplr(np.eye(4)) @ m.T @ np.fliplr(np.eye(4))
        assert np.abs(m - flipped).max() < 1e-14
