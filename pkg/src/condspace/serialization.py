"""JSON interchange for states, condition vectors and circuits.

State:      {"n": 2, "amplitudes": [[re, im], ...]}        (q_1 most significant)
Condition:  same, plus "space": "condition"
Circuit:    {"n": 3, "gates": [{"kind": "CNOT", "control": 1, "target": 2}, ...]}
            U:     {"kind": "U", "qubit": k, "u": [[re, im] x 4]}   (row-major)
            CU:    {"kind": "CU", "control": i, "target": j, "cv": 0|1, "u": [...]}
            CCNOT: {"kind": "CCNOT", "controls": [i, j], "target": k}
Compiled parity circuits add top-level "target" and "condition".
All qubit indices are 1-based.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .compiler import ParityCircuit
from .errors import DomainError, ParseError
from .qcondition import QConditionVector
from .statevector import CCNOT, CNOT, CU, Circuit, Gate, StateVector, U


def _pairs(values) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=np.complex128)]


def _complexes(pairs, what: str) -> np.ndarray:
    try:
        arr = np.array([complex(float(re), float(im)) for re, im in pairs], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what}: expected a list of [re, im] pairs ({exc})") from None
    return arr


def _field(doc: dict, key: str, what: str):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"{what}: missing field {key!r}")
    return doc[key]


def state_to_json(s: StateVector) -> dict:
    return {"n": s.n, "amplitudes": _pairs(s.amplitudes)}


def state_from_json(doc: dict) -> StateVector:
    n = _field(doc, "n", "state")
    amps = _complexes(_field(doc, "amplitudes", "state"), "state amplitudes")
    if not isinstance(n, int) or amps.shape[0] != 1 << n:
        raise ParseError(f"state: expected 2**n amplitudes for n={n!r}, got {amps.shape[0]}")
    return StateVector(amps)


def qcondition_to_json(phi: QConditionVector) -> dict:
    return {"n": phi.m, "space": "condition", "amplitudes": _pairs(phi.amplitudes)}


def qcondition_from_json(doc: dict) -> QConditionVector:
    m = _field(doc, "n", "condition vector")
    amps = _complexes(_field(doc, "amplitudes", "condition vector"), "condition amplitudes")
    if not isinstance(m, int) or amps.shape[0] != 1 << m:
        raise ParseError(f"condition vector: expected 2**n amplitudes for n={m!r}")
    return QConditionVector(amps)


def is_condition_doc(doc: dict) -> bool:
    return isinstance(doc, dict) and doc.get("space") == "condition"


def gate_to_json(g: Gate) -> dict:
    if isinstance(g, U):
        return {"kind": "U", "qubit": g.qubit, "u": _pairs(g.u)}
    if isinstance(g, CU):
        return {"kind": "CU", "control": g.control, "target": g.target, "cv": g.cv, "u": _pairs(g.u)}
    if isinstance(g, CNOT):
        return {"kind": "CNOT", "control": g.control, "target": g.target}
    if isinstance(g, CCNOT):
        return {"kind": "CCNOT", "controls": [g.control1, g.control2], "target": g.target}
    raise DomainError(f"unknown gate {g!r}")


def gate_from_json(doc: dict) -> Gate:
    kind = _field(doc, "kind", "gate")
    try:
        if kind == "U":
            return U(int(doc["qubit"]), _complexes(doc["u"], "U block"))
        if kind == "CU":
            return CU(int(doc["control"]), int(doc["target"]), _complexes(doc["u"], "CU block"),
                      cv=int(doc.get("cv", 1)))
        if kind == "CNOT":
            return CNOT(int(doc["control"]), int(doc["target"]))
        if kind == "CCNOT":
            c1, c2 = doc["controls"]
            return CCNOT(int(c1), int(c2), int(doc["target"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise ParseError(f"gate {kind!r}: malformed field ({exc})") from None
    raise ParseError(f"unknown gate kind {kind!r}")


def circuit_to_json(c: Circuit) -> dict:
    return {"n": c.n, "gates": [gate_to_json(g) for g in c.gates]}


def circuit_from_json(doc: dict) -> Circuit:
    n = _field(doc, "n", "circuit")
    gates = _field(doc, "gates", "circuit")
    if not isinstance(n, int) or not isinstance(gates, list):
        raise ParseError("circuit: 'n' must be an int and 'gates' a list")
    return Circuit(n, [gate_from_json(g) for g in gates])


def parity_circuit_to_json(p: ParityCircuit) -> dict:
    doc = circuit_to_json(p.circuit)
    doc["target"] = p.target
    doc["condition"] = p.condition.text()
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def load_json(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg})", exc.pos) from None
