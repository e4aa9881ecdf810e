import dataclasses

import numpy as np
import pytest

from condspace.compiler import (
    circuit_condition_trace,
    compile_parity,
    first_parity_failure,
    gate_support,
    joint_initial_state,
    plan_realization,
    simulate_realization,
    verify_parity_circuit,
    working_register,
)
from condspace.condition_core import ConditionLabel, Event, ParityCondition, parity_event, satisfying_set
from condspace.errors import DomainError, ZeroProbabilityError
from condspace.qcondition import QConditionVector, bell_condition, one_q_condition, oplus_product, qcond_basis
from condspace.statevector import (
    CCNOT,
    CNOT,
    CU,
    U,
    Circuit,
    StateVector,
    apply_gate,
    basis_state,
    event_probability_exact,
    project,
)

from conftest import R2, ket, random_amplitudes, random_unitary


class TestCompileParity:
    def test_paper_three_qubit(self):
        p = compile_parity(ParityCondition.on_qubits(5, [2, 3, 5]))
        assert p.circuit.gates == (CNOT(2, 3), CNOT(3, 5))
        assert p.target == 5
        assert verify_parity_circuit(p)

    def test_single_qubit(self):
        for n in (1, 4):
            p = compile_parity(ParityCondition.single(n, 1, 0))
            assert p.circuit.gates == () and p.target == 1
            assert verify_parity_circuit(p)

    def test_pair(self):
        p = compile_parity(ParityCondition.on_qubits(2, [1, 2]))
        assert p.circuit.gates == (CNOT(1, 2),) and p.target == 2

    def test_zero_mask(self):
        with pytest.raises(DomainError):
            compile_parity(ParityCondition(ConditionLabel(3, 0), 0))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_gate_count_and_soundness(self, n):
        for mask in range(1, 1 << n):
            p = compile_parity(ParityCondition(ConditionLabel(n, mask), 0), n)
            assert len(p.circuit) == bin(mask).count("1") - 1 <= n - 1
            assert all(isinstance(g, CNOT) for g in p.circuit)
            assert verify_parity_circuit(p)

    def test_deleted_gate_fails(self):
        for mask in (0b0111, 0b1011, 0b1111, 0b1101):
            p = compile_parity(ParityCondition(ConditionLabel(4, mask), 0))
            for drop in range(len(p.circuit)):
                gates = [g for i, g in enumerate(p.circuit) if i != drop]
                broken = dataclasses.replace(p, circuit=Circuit(4, gates))
                assert not verify_parity_circuit(broken)
                assert first_parity_failure(broken) is not None

    def test_measure_target_equals_event_probability(self, rng):
        # measuring the target qubit after the chain reproduces the event probability
        for mask in range(1, 16):
            pc = ParityCondition(ConditionLabel(4, mask), 1)
            p = compile_parity(pc)
            s = StateVector(random_amplitudes(rng, 4))
            out = s
            for g in p.circuit:
                out = apply_gate(out, g)
            target_one = event_probability_exact(out, Event(4, (np.arange(16) >> (4 - p.target)) & 1 == 1))
            assert target_one == pytest.approx(event_probability_exact(s, parity_event(pc)), abs=1e-12)


class TestRealization:
    def test_plan_layout_fig1(self, rng):
        a = one_q_condition(0.6, 0.8)
        b = one_q_condition(R2, -R2)
        plan = plan_realization(oplus_product(a, b))
        assert plan.working_n == plan.ancilla_n == 2
        assert plan.target == 5
        assert plan.circuit.gates == (CCNOT(3, 1, 5), CCNOT(4, 2, 5))
        np.testing.assert_allclose(plan.ancilla_condition.amplitudes, [0.6 * R2, -0.6 * R2, 0.8 * R2, -0.8 * R2])

    def test_plan_bell(self):
        plan = plan_realization(bell_condition())
        joint = joint_initial_state(basis_state(2, 0), plan)
        expect = np.kron(np.kron(ket("00"), [R2, 0, 0, R2]), ket("0"))
        np.testing.assert_allclose(joint.amplitudes, expect, atol=1e-15)

    def test_plan_always_true_n3(self):
        plan = plan_realization(qcond_basis(3, 0))
        assert len(plan.circuit) == 3
        assert all(isinstance(g, CCNOT) for g in plan.circuit)

    def test_bell_q1_zero(self):
        bell = StateVector([R2, 0, 0, R2])
        plan = plan_realization(qcond_basis(2, "10"))
        p, joint = simulate_realization(bell, plan, 0)
        assert p == pytest.approx(0.5, abs=1e-12)
        np.testing.assert_allclose(working_register(joint, plan, 0b10), ket("00"), atol=1e-12)

    def test_always_true(self, rng):
        s = StateVector(random_amplitudes(rng, 2))
        plan = plan_realization(qcond_basis(2, 0))
        p, joint = simulate_realization(s, plan, 0)
        assert p == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(working_register(joint, plan, 0), s.amplitudes, atol=1e-12)

    def test_bell_parity_identical(self):
        bell = StateVector([R2, 0, 0, R2])
        plan = plan_realization(qcond_basis(2, "11"))
        p, joint = simulate_realization(bell, plan, 0)
        assert p == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(working_register(joint, plan, 0b11), bell.amplitudes, atol=1e-12)

    @pytest.mark.parametrize("n,trials", [(1, 50), (2, 50), (3, 20), (4, 20)])
    def test_equivalence_with_projection(self, rng, n, trials):
        for j in range(1 << n):
            plan = plan_realization(qcond_basis(n, j))
            ev = satisfying_set(ConditionLabel(n, j))
            for _ in range(trials):
                w = StateVector(random_amplitudes(rng, n))
                p, joint = simulate_realization(w, plan, 0)
                p_ref, post = project(w, ev)
                assert abs(p - p_ref) <= 1e-9
                np.testing.assert_allclose(working_register(joint, plan, j), post.amplitudes, rtol=0, atol=1e-9)
                # nothing leaks into other ancilla labels
                full = joint.amplitudes.reshape(1 << n, 1 << n, 2)
                assert np.max(np.abs(np.delete(full[:, :, 0], j, axis=1)), initial=0) == 0

    def test_superposed_ancilla_probability(self, rng):
        # target-0 probability = sum_j |phi_j|^2 P(w satisfies j)
        for _ in range(20):
            phi = QConditionVector(random_amplitudes(rng, 2))
            w = StateVector(random_amplitudes(rng, 2))
            p, _ = simulate_realization(w, plan_realization(phi), 0)
            expect = sum(
                abs(phi.amplitudes[j]) ** 2 * event_probability_exact(w, satisfying_set(ConditionLabel(2, j)))
                for j in range(4)
            )
            assert p == pytest.approx(expect, abs=1e-12)

    def test_target_one_branch(self):
        bell = StateVector([R2, 0, 0, R2])
        p, joint = simulate_realization(bell, plan_realization(qcond_basis(2, "10")), 1)
        assert p == pytest.approx(0.5)
        assert abs(joint.norm() - 1) < 1e-12

    def test_zero_probability(self):
        with pytest.raises(ZeroProbabilityError):
            simulate_realization(StateVector([R2, 0, 0, R2]), plan_realization(qcond_basis(2, "11")), 1)

    def test_size_mismatch(self):
        with pytest.raises(DomainError):
            simulate_realization(basis_state(3, 0), plan_realization(bell_condition()), 0)


class TestSupport:
    def test_cu12(self):
        s = gate_support(CU(1, 2, np.eye(2)), 2)
        assert s.support.bitstrings() == ["10", "11"]
        assert not s.paired

    def test_u_full(self):
        s = gate_support(U(1, np.eye(2)), 2)
        assert s.support == Event.full(2)
        assert s.paired

    def test_ccnot(self):
        assert gate_support(CCNOT(1, 2, 3), 3).support.bitstrings() == ["110", "111"]

    def test_cv0(self):
        assert gate_support(CU(2, 1, np.eye(2), cv=0), 2).support.bitstrings() == ["00", "10"]

    def test_support_sound(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 6))
            qs = [int(x) + 1 for x in rng.permutation(n)]
            gates = [
                CU(qs[0], qs[1], random_unitary(rng), cv=int(rng.integers(2))),
                CNOT(qs[0], qs[1]),
                U(qs[0], random_unitary(rng)),
            ]
            if n >= 3:
                gates.append(CCNOT(qs[0], qs[1], qs[2]))
            s = StateVector(random_amplitudes(rng, n))
            for g in gates:
                out = apply_gate(s, g).amplitudes
                outside = ~gate_support(g, n).support.members
                assert np.array_equal(out[outside], s.amplitudes[outside])

    def test_support_tight_for_cu(self, rng):
        for cv in (0, 1):
            for c, t in ((1, 2), (2, 1), (1, 3), (3, 2)):
                g = CU(c, t, random_unitary(rng), cv=cv)
                inside = gate_support(g, 3).support.members
                found = False
                for _ in range(20):
                    s = StateVector(random_amplitudes(rng, 3))
                    diff = apply_gate(s, g).amplitudes != s.amplitudes
                    if diff[inside].all():
                        found = True
                        break
                assert found


class TestTrace:
    def test_two_gates(self):
        c = Circuit(2, [CNOT(1, 2), CU(2, 1, np.eye(2))])
        assert [t for _, t in circuit_condition_trace(c)] == ["q1=1", "q2=1"]

    def test_empty(self):
        assert circuit_condition_trace(Circuit(3, [])) == []

    def test_single_qubit_gate(self):
        c = Circuit(2, [U(1, np.eye(2))])
        assert [t for _, t in circuit_condition_trace(c)] == ["q1=0 OR q1=1 (full space, paired CU)"]

    def test_ccnot_text(self):
        c = Circuit(3, [CCNOT(1, 3, 2)])
        assert circuit_condition_trace(c)[0][1] == "q1=1 AND q3=1"
