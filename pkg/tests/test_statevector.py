import math

import numpy as np
import pytest

from condspace.condition_core import Event, ParityCondition, parity_event
from condspace.errors import DomainError, ZeroProbabilityError
from condspace.statevector import (
    CCNOT,
    CNOT,
    CU,
    U,
    Circuit,
    StateVector,
    apply_gate,
    basis_state,
    eq16_block,
    event_probability_exact,
    gate_matrix,
    project,
    required_shots,
    sample_event,
    standard_state_4q,
)

from conftest import R2, ket, random_amplitudes, random_u1u2, random_unitary


def q1_zero(n):
    return parity_event(ParityCondition.single(n, 1, 0))


def eq16_printed(u1, u2):
    """The four 4x4 matrices exactly as printed, typed in by hand."""
    a, b, c, d = u1, np.conj(u2), u2, -np.conj(u1)
    U1 = np.array([[a, 0, b, 0], [0, a, 0, b], [c, 0, d, 0], [0, c, 0, d]])
    U2 = np.array([[a, b, 0, 0], [c, d, 0, 0], [0, 0, a, b], [0, 0, c, d]])
    CU12 = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, a, b], [0, 0, c, d]])
    CU21 = np.array([[a, 0, b, 0], [0, 1, 0, 0], [c, 0, d, 0], [0, 0, 0, 1]])
    return U1, U2, CU12, CU21


class TestBasis:
    def test_examples(self):
        np.testing.assert_array_equal(basis_state(2, "00").amplitudes, [1, 0, 0, 0])
        np.testing.assert_array_equal(basis_state(2, "11").amplitudes, [0, 0, 0, 1])
        assert basis_state(3, "011").amplitudes[3] == 1

    def test_matches_kron_oracle(self):
        for bits in ("0110", "1001", "1111"):
            np.testing.assert_array_equal(basis_state(4, bits).amplitudes, ket(bits))

    def test_normalization_enforced(self):
        with pytest.raises(DomainError):
            StateVector([1, 1])
        s = StateVector([1, 1], normalize=True)
        assert abs(s.norm() - 1) < 1e-15


class TestGates:
    def test_cu12_block(self, rng):
        u1, u2 = random_u1u2(rng)
        c = random_amplitudes(rng, 2)
        out = apply_gate(StateVector(c), CU(1, 2, eq16_block(u1, u2))).amplitudes
        expect = [c[0], c[1], u1 * c[2] + np.conj(u2) * c[3], u2 * c[2] - np.conj(u1) * c[3]]
        np.testing.assert_allclose(out, expect, rtol=0, atol=1e-12)

    def test_identity(self, rng):
        s = StateVector(random_amplitudes(rng, 3))
        assert apply_gate(s, U(2, np.eye(2))) == s

    def test_cnot_truth_table(self):
        table = {"00": "00", "01": "01", "10": "11", "11": "10"}
        for src, dst in table.items():
            out = apply_gate(basis_state(2, src), CNOT(1, 2))
            np.testing.assert_array_equal(out.amplitudes, ket(dst))

    def test_ccnot_truth_table(self):
        for x in range(8):
            bits = format(x, "03b")
            flip = bits[0] == "1" and bits[1] == "1"
            dst = bits[:2] + (str(1 - int(bits[2])) if flip else bits[2])
            out = apply_gate(basis_state(3, bits), CCNOT(1, 2, 3))
            np.testing.assert_array_equal(out.amplitudes, ket(dst))

    def test_eq16_reproduction(self, rng):
        for _ in range(20):
            u1, u2 = random_u1u2(rng)
            blk = eq16_block(u1, u2)
            ours = [
                gate_matrix(U(1, blk), 2),
                gate_matrix(U(2, blk), 2),
                gate_matrix(CU(1, 2, blk), 2),
                gate_matrix(CU(2, 1, blk, cv=0), 2),
            ]
            for got, want in zip(ours, eq16_printed(u1, u2)):
                np.testing.assert_allclose(got, want, rtol=0, atol=1e-12)

    def test_cu21_control_one_acts_on_odd_indices(self, rng):
        u1, u2 = random_u1u2(rng)
        m = gate_matrix(CU(2, 1, eq16_block(u1, u2)), 2)
        assert m[0, 0] == 1 and m[2, 2] == 1
        np.testing.assert_allclose(m[np.ix_([1, 3], [1, 3])], eq16_block(u1, u2), atol=1e-15)

    def test_rejects_non_unitary(self):
        with pytest.raises(DomainError):
            U(1, [[1, 1], [0, 1]])

    def test_rejects_bad_indices(self):
        s = basis_state(2, 0)
        with pytest.raises(DomainError):
            apply_gate(s, CNOT(1, 3))
        with pytest.raises(DomainError):
            apply_gate(s, CNOT(1, 1))
        with pytest.raises(DomainError):
            Circuit(2, [CCNOT(1, 2, 3)])

    @pytest.mark.parametrize("n", [1, 2, 5, 10])
    def test_norm_preserved_over_random_sequences(self, rng, n):
        amps = random_amplitudes(rng, n)
        s = StateVector(amps)
        for _ in range(100):
            kind = rng.integers(4) if n >= 3 else (rng.integers(2) if n == 2 else 0)
            qs = [int(x) + 1 for x in rng.permutation(n)[:3]]
            if kind == 0:
                g = U(qs[0], random_unitary(rng))
            elif kind == 1:
                g = CU(qs[0], qs[1], random_unitary(rng), cv=int(rng.integers(2)))
            elif kind == 2:
                g = CNOT(qs[0], qs[1])
            else:
                g = CCNOT(qs[0], qs[1], qs[2])
            s = apply_gate(s, g)
        assert abs(s.norm() - 1) <= 1e-9


def eq2_oracle(a1, a2, b1, b2, c1, c2):
    """Term-by-term expansion with kron'd kets, independent of index arithmetic."""
    terms = [
        (a1 * b1 * c1, "0000"), (a2 * b1 * c1, "1100"), (a1 * b2 * c1, "0110"), (a2 * b2 * c1, "1010"),
        (a1 * b1 * c2, "0011"), (a2 * b1 * c2, "1111"), (a1 * b2 * c2, "0101"), (a2 * b2 * c2, "1001"),
    ]
    return sum(w * ket(bits) for w, bits in terms)


class TestStandardState:
    def test_trivial(self):
        np.testing.assert_array_equal(standard_state_4q(1, 0, 1, 0, 1, 0).amplitudes, ket("0000"))

    def test_symbolic(self):
        s = standard_state_4q(R2, R2, 1, 0, 1, 0)
        np.testing.assert_allclose(s.amplitudes, R2 * (ket("0000") + ket("1100")), atol=1e-15)

    def test_random_draws(self, rng):
        for _ in range(100):
            p = [*random_u1u2(rng), *random_u1u2(rng), *random_u1u2(rng)]
            s = standard_state_4q(*p)
            assert abs(s.norm() - 1) <= 1e-9
            np.testing.assert_allclose(s.amplitudes, eq2_oracle(*p), rtol=0, atol=1e-12)

    def test_constraint_violation(self):
        with pytest.raises(DomainError):
            standard_state_4q(1, 1, 1, 0, 1, 0)


class TestProbability:
    def test_bell_q1_zero(self, bell_amps):
        assert event_probability_exact(StateVector(bell_amps), q1_zero(2)) == pytest.approx(0.5, abs=1e-15)

    def test_full_event(self, rng):
        s = StateVector(random_amplitudes(rng, 4))
        assert event_probability_exact(s, Event.full(4)) == pytest.approx(1.0, abs=1e-12)

    def test_basis(self):
        assert event_probability_exact(basis_state(3, "011"), Event.from_outcomes(3, ["011"])) == 1.0

    def test_complement_sums_to_one(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 7))
            s = StateVector(random_amplitudes(rng, n))
            e = Event(n, rng.random(1 << n) < 0.5)
            assert abs(event_probability_exact(s, e) + event_probability_exact(s, ~e) - 1) <= 1e-12

    def test_size_mismatch(self):
        with pytest.raises(DomainError):
            event_probability_exact(basis_state(2, 0), Event.full(3))


class TestProject:
    def test_bell(self, bell_amps):
        p, post = project(StateVector(bell_amps), q1_zero(2))
        assert p == pytest.approx(0.5)
        np.testing.assert_allclose(post.amplitudes, ket("00"), atol=1e-15)

    def test_full_event(self, rng):
        s = StateVector(random_amplitudes(rng, 3))
        p, post = project(s, Event.full(3))
        assert p == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(post.amplitudes, s.amplitudes, atol=1e-12)

    def test_uniform_onto_parity(self):
        p, post = project(StateVector([0.5] * 4), Event.from_outcomes(2, ["00", "11"]))
        assert p == pytest.approx(0.5)
        np.testing.assert_allclose(post.amplitudes, R2 * (ket("00") + ket("11")), atol=1e-15)

    def test_idempotent(self, rng):
        for _ in range(50):
            s = StateVector(random_amplitudes(rng, 4))
            e = Event(4, rng.random(16) < 0.5) | Event.from_outcomes(4, [0])
            _, once = project(s, e)
            _, twice = project(once, e)
            np.testing.assert_allclose(twice.amplitudes, once.amplitudes, rtol=0, atol=1e-12)

    def test_zero_probability(self):
        with pytest.raises(ZeroProbabilityError):
            project(basis_state(2, "11"), q1_zero(2))


class TestSampling:
    def test_certain_event(self):
        s = basis_state(3, "001")
        for seed in (0, 1, 2**63):
            assert sample_event(s, q1_zero(3), 100, seed).p_hat == 1.0

    def test_bell_estimate(self, bell_amps):
        est = sample_event(StateVector(bell_amps), q1_zero(2), 10_000, seed=12345)
        assert abs(est.p_hat - 0.5) <= 0.02
        assert est.sigma_mean_est == pytest.approx(math.sqrt(est.p_hat * (1 - est.p_hat) / 10_000))

    def test_deterministic(self, bell_amps):
        s = StateVector(bell_amps)
        assert sample_event(s, q1_zero(2), 1000, 7) == sample_event(s, q1_zero(2), 1000, 7)

    def test_errors(self, bell_amps):
        s = StateVector(bell_amps)
        with pytest.raises(DomainError):
            sample_event(s, q1_zero(2), 0, 1)
        with pytest.raises(DomainError):
            sample_event(s, q1_zero(2), 10, None)

    def test_sampled_distribution_matches_probabilities(self, rng):
        s = StateVector(random_amplitudes(rng, 3))
        for x in range(8):
            e = Event.from_outcomes(3, [x])
            est = sample_event(s, e, 40_000, seed=x)
            p = event_probability_exact(s, e)
            assert abs(est.p_hat - p) <= 5 * math.sqrt(p * (1 - p) / 40_000) + 1e-12


class TestRequiredShots:
    @pytest.mark.parametrize("sigma,sm,expected", [(0.5, 0.05, 100), (0.3, 0.3, 1), (0.5, 0.005, 10_000)])
    def test_values(self, sigma, sm, expected):
        assert required_shots(sigma, sm) == expected

    def test_rounds_up(self):
        assert required_shots(1.0, 0.3) == 12  # 11.11...

    def test_errors(self):
        with pytest.raises(DomainError):
            required_shots(0.5, 0)
        with pytest.raises(DomainError):
            required_shots(-0.1, 0.1)
