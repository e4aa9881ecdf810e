"""Conditions to circuits, and circuits back to the half-sets they touch.

Three pieces live here:

* ``compile_parity`` turns ``q_a ^ q_b ^ ... = rhs`` into a CNOT chain whose
  last target holds the parity;
* ``plan_realization`` / ``simulate_realization`` enact a quantum condition
  vector with an ancilla register, one Toffoli per working qubit and a
  measured target;
* ``gate_support`` / ``circuit_condition_trace`` report which amplitudes each
  elementary gate is able to modify.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .condition_core import (
    And,
    ConditionExpr,
    Event,
    Leaf,
    Or,
    ParityCondition,
    eval_expr,
    qubit_bit,
)
from .errors import DomainError, ZeroProbabilityError
from .qcondition import QConditionVector
from .statevector import (
    CCNOT,
    CNOT,
    CU,
    PROJECT_EPS,
    U,
    Circuit,
    Gate,
    StateVector,
    apply_circuit,
    basis_state,
    check_gate,
)


@dataclass(frozen=True)
class ParityCircuit:
    circuit: Circuit
    target: int
    condition: ParityCondition


def compile_parity(pc: ParityCondition, n: int | None = None) -> ParityCircuit:
    n = pc.n if n is None else n
    if n != pc.n:
        raise DomainError(f"condition has n={pc.n}, asked to compile for n={n}")
    chain = pc.mask.qubits()
    if not chain:
        raise DomainError("zero mask: nothing to measure (always-true/false condition)")
    gates = [CNOT(a, b) for a, b in zip(chain, chain[1:])]
    return ParityCircuit(Circuit(n, gates), target=chain[-1], condition=pc)


def verify_parity_circuit(p: ParityCircuit) -> bool:
    return first_parity_failure(p) is None


def first_parity_failure(p: ParityCircuit) -> int | None:
    """Basis index whose simulated target bit disagrees with its parity, or None."""
    n = p.circuit.n
    mask = p.condition.mask.value
    tbit = qubit_bit(n, p.target)
    for h in range(1 << n):
        out = apply_circuit(basis_state(n, h), p.circuit).amplitudes
        k = int(np.argmax(np.abs(out)))
        if abs(abs(out[k]) - 1.0) > 1e-12:
            return h
        if (1 if k & tbit else 0) != ((h & mask).bit_count() & 1):
            return h
    return None


# ------------------------------------------------------------- realization


@dataclass(frozen=True)
class RealizationPlan:
    """Register layout: working ``1..n``, ancillas ``n+1..2n``, target ``2n+1``."""

    working_n: int
    circuit: Circuit
    ancilla_condition: QConditionVector

    @property
    def ancilla_n(self) -> int:
        return self.working_n

    @property
    def target(self) -> int:
        return 2 * self.working_n + 1

    @property
    def total_n(self) -> int:
        return 2 * self.working_n + 1

    def ancilla(self, i: int) -> int:
        return self.working_n + i


def plan_realization(phi: QConditionVector) -> RealizationPlan:
    n = phi.m
    total = 2 * n + 1
    gates = [CCNOT(n + i, i, total) for i in range(1, n + 1)]
    return RealizationPlan(working_n=n, circuit=Circuit(total, gates), ancilla_condition=phi)


def joint_initial_state(working: StateVector, plan: RealizationPlan) -> StateVector:
    """``working x ancilla x |0>`` with the ancilla amplitudes taken from the plan."""
    if working.n != plan.working_n:
        raise DomainError(f"plan expects {plan.working_n} working qubits, got {working.n}")
    amps = np.kron(np.kron(working.amplitudes, plan.ancilla_condition.amplitudes), [1.0, 0.0])
    return StateVector(amps)


def simulate_realization(working: StateVector, plan: RealizationPlan,
                         target_outcome: int = 0) -> tuple[float, StateVector]:
    """Run the Toffoli layer, post-select the target; returns (probability, joint state)."""
    if target_outcome not in (0, 1):
        raise DomainError(f"target outcome must be 0 or 1, got {target_outcome!r}")
    joint = apply_circuit(joint_initial_state(working, plan), plan.circuit)
    amps = joint.amplitudes.reshape(-1, 2)
    kept = np.zeros_like(amps)
    kept[:, target_outcome] = amps[:, target_outcome]
    p = float(np.sum(np.abs(kept) ** 2))
    if p <= PROJECT_EPS:
        raise ZeroProbabilityError(f"target outcome {target_outcome} has probability {p!r}")
    return p, StateVector(kept.reshape(-1) / np.sqrt(p))


def working_register(joint: StateVector, plan: RealizationPlan, ancilla_label: int,
                     target_outcome: int = 0) -> np.ndarray:
    """Working amplitudes at a fixed ancilla basis label and target value."""
    n = plan.working_n
    return joint.amplitudes.reshape(1 << n, 1 << n, 2)[:, ancilla_label, target_outcome].copy()


# ----------------------------------------------------------------- support


@dataclass(frozen=True)
class GateSupport:
    gate: Gate
    support: Event
    expr: ConditionExpr
    paired: bool = False

    def text(self) -> str:
        return _expr_text(self.expr) + (" (full space, paired CU)" if self.paired else "")


def _expr_text(e) -> str:
    if isinstance(e, Leaf):
        return e.cond.text()
    if isinstance(e, And):
        return f"{_expr_text(e.left)} AND {_expr_text(e.right)}"
    if isinstance(e, Or):
        return f"{_expr_text(e.left)} OR {_expr_text(e.right)}"
    raise DomainError(f"unexpected node in support expression: {e!r}")


def gate_support(g: Gate, n: int) -> GateSupport:
    check_gate(g, n)
    one = lambda k, v: Leaf(ParityCondition.single(n, k, v))  # noqa: E731
    paired = False
    if isinstance(g, U):
        expr = Or(one(g.qubit, 0), one(g.qubit, 1))
        paired = True
    elif isinstance(g, CU):
        expr = one(g.control, g.cv)
    elif isinstance(g, CNOT):
        expr = one(g.control, 1)
    elif isinstance(g, CCNOT):
        expr = And(one(g.control1, 1), one(g.control2, 1))
    else:
        raise DomainError(f"unknown gate {g!r}")
    return GateSupport(gate=g, support=eval_expr(expr), expr=expr, paired=paired)


def circuit_condition_trace(c: Circuit | Sequence[Gate], n: int | None = None) -> list[tuple[Gate, str]]:
    if isinstance(c, Circuit):
        n = c.n
    elif n is None:
        raise DomainError("n is required when tracing a bare gate list")
    return [(g, gate_support(g, n).text()) for g in c]
