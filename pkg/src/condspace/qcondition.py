"""Quantum condition vectors: superpositions over the condition basis ``|j]``.

The amplitude array uses the same layout as :class:`StateVector`, position 1
being the most significant bit of ``j``. The ``+`` product of conditions
(written ``oplus_product`` here) combines amplitudes exactly like a tensor
product while concatenating labels.
"""

from __future__ import annotations

import math

import numpy as np

from .condition_core import ConditionLabel, check_n, condition_to_text, missing_qubits
from .errors import DomainError

NORM_TOL = 1e-9
ORTHO_TOL = 1e-9
DET_TOL = 1e-9


class QConditionVector:
    __slots__ = ("m", "amplitudes")

    def __init__(self, amplitudes, *, normalize: bool = False):
        arr = np.array(amplitudes, dtype=np.complex128)
        if arr.ndim != 1 or arr.shape[0] < 2 or arr.shape[0] & (arr.shape[0] - 1):
            raise DomainError(f"need 2**m amplitudes with m >= 1, got shape {arr.shape}")
        m = check_n(arr.shape[0].bit_length() - 1)
        norm = float(np.linalg.norm(arr))
        if normalize:
            if norm == 0.0:
                raise DomainError("cannot normalize the zero vector")
            arr = arr / norm
        elif abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"condition vector is not normalized: |phi| = {norm!r}")
        arr.flags.writeable = False
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "amplitudes", arr)

    def __setattr__(self, name, value):
        raise AttributeError("QConditionVector is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, QConditionVector):
            return NotImplemented
        return self.m == other.m and bool(np.array_equal(self.amplitudes, other.amplitudes))

    __hash__ = None

    def __repr__(self) -> str:
        return f"QConditionVector(m={self.m})"


def qcond_basis(m: int, j) -> QConditionVector:
    m = check_n(m)
    if isinstance(j, str):
        j = ConditionLabel.from_bits(j)
    if isinstance(j, ConditionLabel):
        if j.n != m:
            raise DomainError(f"label {j} does not have {m} positions")
        j = j.value
    if not 0 <= int(j) < (1 << m):
        raise DomainError(f"basis index {j} outside [0, {1 << m})")
    amps = np.zeros(1 << m, dtype=np.complex128)
    amps[int(j)] = 1.0
    return QConditionVector(amps)


def one_q_condition(a1: complex, a2: complex) -> QConditionVector:
    """``a1|0] + a2|1]``: the qubit is missing with amplitude a1, present with a2."""
    if abs(abs(a1) ** 2 + abs(a2) ** 2 - 1.0) > NORM_TOL:
        raise DomainError("|a1|^2 + |a2|^2 must equal 1")
    return QConditionVector([a1, a2])


PLUS = one_q_condition(1 / math.sqrt(2.0), 1 / math.sqrt(2.0))
MINUS = one_q_condition(1 / math.sqrt(2.0), -1 / math.sqrt(2.0))


def oplus_product(u: QConditionVector, v: QConditionVector) -> QConditionVector:
    # amplitude at (j || k) is u_j * v_k
    amps = np.multiply.outer(u.amplitudes, v.amplitudes).ravel()
    return QConditionVector(amps, normalize=False)


def inner_product(phi: QConditionVector, psi: QConditionVector) -> complex:
    if phi.m != psi.m:
        raise DomainError(f"size mismatch: m={phi.m} vs m={psi.m}")
    return complex(np.vdot(phi.amplitudes, psi.amplitudes))


def bell_condition() -> QConditionVector:
    r = 1 / math.sqrt(2.0)
    return QConditionVector([r, 0, 0, r])


def _unitary(b) -> np.ndarray:
    b = np.asarray(b, dtype=np.complex128)
    if b.shape != (2, 2) or not np.allclose(b.conj().T @ b, np.eye(2), rtol=0.0, atol=1e-9):
        raise DomainError("basis change must be a 2x2 unitary")
    return b


def change_basis_per_position(phi: QConditionVector, b) -> QConditionVector:
    """Apply ``b`` on every position: the m-fold product ``b x b x ... x b``."""
    b = _unitary(b)
    t = phi.amplitudes.reshape((2,) * phi.m)
    for axis in range(phi.m):
        t = np.moveaxis(np.tensordot(b, t, axes=([1], [axis])), 0, axis)
    return QConditionVector(t.reshape(-1))


def entangled_condition_2q(b1, b2, u1, u2, v1, v2) -> QConditionVector:
    """``b1 (u1 + v1) + b2 (u2 + v2)`` with orthonormal pairs ``u`` and ``v``."""
    if abs(abs(b1) ** 2 + abs(b2) ** 2 - 1.0) > NORM_TOL:
        raise DomainError("|b1|^2 + |b2|^2 must equal 1")
    for x in (u1, u2, v1, v2):
        if x.m != 1:
            raise DomainError("entangled_condition_2q takes 1-position conditions")
    if abs(inner_product(u1, u2)) > ORTHO_TOL:
        raise DomainError("u1 and u2 are not orthogonal")
    if abs(inner_product(v1, v2)) > ORTHO_TOL:
        raise DomainError("v1 and v2 are not orthogonal")
    amps = b1 * oplus_product(u1, v1).amplitudes + b2 * oplus_product(u2, v2).amplitudes
    return QConditionVector(amps, normalize=True)


def is_entangled_2q(phi: QConditionVector) -> bool:
    """Nonzero determinant of the 2x2 coefficient matrix, i.e. Schmidt rank 2."""
    if phi.m != 2:
        raise DomainError(f"is_entangled_2q needs m = 2, got m = {phi.m}")
    d = phi.amplitudes
    return abs(d[0] * d[3] - d[1] * d[2]) > DET_TOL


def interpret_basis(j, *, show_missing: bool = False) -> str:
    if isinstance(j, str):
        j = ConditionLabel.from_bits(j)
    text = condition_to_text(j, 0)
    if show_missing:
        missing = missing_qubits(j)
        if missing:
            text += " [missing: " + ", ".join(f"q{k}" for k in missing) + "]"
    return text
