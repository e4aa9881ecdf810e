"""Outcome/condition dual spaces, quantum condition vectors and their
Walsh-Hadamard duality, on top of a small dense state-vector simulator."""

from ._accel import BACKEND
from .condition_core import (
    N_MAX,
    And,
    ConditionLabel,
    Event,
    Leaf,
    Not,
    Or,
    OutcomeLabel,
    ParityCondition,
    add_labels,
    annihilator,
    condition_to_text,
    dual_correspondence,
    eval_expr,
    expr_op_count,
    pairing,
    parity_event,
    satisfying_set,
    single_outcome_expr,
)
from .errors import DomainError, ParseError, ZeroProbabilityError
from .statevector import (
    CCNOT,
    CNOT,
    CU,
    U,
    Circuit,
    SamplingEstimate,
    StateVector,
    apply_circuit,
    apply_gate,
    basis_state,
    event_probability_exact,
    project,
    required_shots,
    sample_event,
    standard_state_4q,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "ParseError",
    "ZeroProbabilityError",
    "BACKEND",
    "N_MAX",
    "And",
    "ConditionLabel",
    "Event",
    "Leaf",
    "Not",
    "Or",
    "OutcomeLabel",
    "ParityCondition",
    "add_labels",
    "annihilator",
    "condition_to_text",
    "dual_correspondence",
    "eval_expr",
    "expr_op_count",
    "pairing",
    "parity_event",
    "satisfying_set",
    "single_outcome_expr",
    "CCNOT",
    "CNOT",
    "CU",
    "U",
    "Circuit",
    "SamplingEstimate",
    "StateVector",
    "apply_circuit",
    "apply_gate",
    "basis_state",
    "event_probability_exact",
    "project",
    "required_shots",
    "sample_event",
    "standard_state_4q",
]
