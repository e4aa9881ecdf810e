"""Dense state-vector simulation, event probabilities and sampled estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import kernels
from .condition_core import Event, OutcomeLabel, check_n, qubit_bit
from .errors import DomainError, ZeroProbabilityError

NORM_TOL = 1e-9
UNITARY_TOL = 1e-9
PROJECT_EPS = 1e-12
SAMPLE_CHUNK = 1 << 20


def _as_amplitudes(amps) -> np.ndarray:
    arr = np.array(amps, dtype=np.complex128)
    if arr.ndim != 1:
        raise DomainError(f"amplitudes must be one-dimensional, got shape {arr.shape}")
    size = arr.shape[0]
    if size < 2 or size & (size - 1):
        raise DomainError(f"amplitude count {size} is not a power of two >= 2")
    return arr


class StateVector:
    """``2**n`` complex amplitudes ``C_h`` of unit norm, ``q_1`` most significant."""

    __slots__ = ("n", "amplitudes")

    def __init__(self, amplitudes, *, normalize: bool = False):
        arr = _as_amplitudes(amplitudes)
        n = check_n(arr.shape[0].bit_length() - 1)
        norm = float(np.linalg.norm(arr))
        if normalize:
            if norm == 0.0:
                raise DomainError("cannot normalize the zero vector")
            arr = arr / norm
        elif abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"state is not normalized: |psi| = {norm!r}")
        arr.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "amplitudes", arr)

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.amplitudes, other.amplitudes))

    __hash__ = None

    def __repr__(self) -> str:
        return f"StateVector(n={self.n})"


def basis_state(n: int, v: Union[OutcomeLabel, int, str]) -> StateVector:
    n = check_n(n)
    if isinstance(v, str):
        v = OutcomeLabel.from_bits(v)
    if isinstance(v, OutcomeLabel):
        if v.n != n:
            raise DomainError(f"outcome {v} does not have {n} bits")
        v = v.value
    if not 0 <= int(v) < (1 << n):
        raise DomainError(f"basis index {v} outside [0, {1 << n})")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[int(v)] = 1.0
    return StateVector(amps)


# ------------------------------------------------------------------- gates


def _block(u) -> tuple[complex, complex, complex, complex]:
    m = np.asarray(u, dtype=np.complex128)
    if m.shape == (4,):
        m = m.reshape(2, 2)
    if m.shape != (2, 2):
        raise DomainError(f"gate block must be 2x2, got shape {m.shape}")
    if not np.allclose(m.conj().T @ m, np.eye(2), rtol=0.0, atol=UNITARY_TOL):
        raise DomainError("gate block is not unitary")
    return tuple(complex(z) for z in m.ravel())


def eq16_block(u1: complex, u2: complex) -> np.ndarray:
    """The ``[[u1, u2*], [u2, -u1*]]`` single-qubit family."""
    if abs(abs(u1) ** 2 + abs(u2) ** 2 - 1.0) > NORM_TOL:
        raise DomainError("|u1|^2 + |u2|^2 must equal 1")
    return np.array([[u1, np.conj(u2)], [u2, -np.conj(u1)]], dtype=np.complex128)


PAULI_X = ((0j, 1 + 0j), (1 + 0j, 0j))
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2.0)


@dataclass(frozen=True)
class U:
    qubit: int
    u: tuple

    def __post_init__(self):
        object.__setattr__(self, "u", _block(self.u))

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.u, dtype=np.complex128).reshape(2, 2)

    def qubits(self) -> tuple[int, ...]:
        return (self.qubit,)


@dataclass(frozen=True)
class CU:
    control: int
    target: int
    u: tuple
    cv: int = 1

    def __post_init__(self):
        if self.cv not in (0, 1):
            raise DomainError(f"control value must be 0 or 1, got {self.cv!r}")
        object.__setattr__(self, "u", _block(self.u))

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.u, dtype=np.complex128).reshape(2, 2)

    def qubits(self) -> tuple[int, ...]:
        return (self.control, self.target)


@dataclass(frozen=True)
class CNOT:
    control: int
    target: int

    def qubits(self) -> tuple[int, ...]:
        return (self.control, self.target)


@dataclass(frozen=True)
class CCNOT:
    control1: int
    control2: int
    target: int

    def qubits(self) -> tuple[int, ...]:
        return (self.control1, self.control2, self.target)


Gate = Union[U, CU, CNOT, CCNOT]


def check_gate(g: Gate, n: int) -> None:
    q = g.qubits()
    if len(set(q)) != len(q):
        raise DomainError(f"{g!r} repeats a qubit index")
    for k in q:
        if not isinstance(k, (int, np.integer)) or not 1 <= k <= n:
            raise DomainError(f"{g!r}: qubit index {k!r} outside [1, {n}]")


def gate_action(g: Gate, n: int):
    """Kernel arguments ``(target_bit, ctrl_mask, ctrl_val, block)`` for ``g``."""
    check_gate(g, n)
    if isinstance(g, U):
        return qubit_bit(n, g.qubit), 0, 0, g.matrix
    if isinstance(g, CU):
        cbit = qubit_bit(n, g.control)
        return qubit_bit(n, g.target), cbit, cbit if g.cv else 0, g.matrix
    x = np.array(PAULI_X, dtype=np.complex128)
    if isinstance(g, CNOT):
        cbit = qubit_bit(n, g.control)
        return qubit_bit(n, g.target), cbit, cbit, x
    if isinstance(g, CCNOT):
        cmask = qubit_bit(n, g.control1) | qubit_bit(n, g.control2)
        return qubit_bit(n, g.target), cmask, cmask, x
    raise DomainError(f"unknown gate {g!r}")


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple = ()

    def __post_init__(self):
        check_n(self.n)
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            check_gate(g, self.n)

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


def _raw_apply(amps: np.ndarray, g: Gate, n: int) -> np.ndarray:
    tbit, cmask, cval, block = gate_action(g, n)
    return kernels.apply_2x2(amps, tbit, cmask, cval, block)


def apply_gate(s: StateVector, g: Gate) -> StateVector:
    return StateVector(_raw_apply(s.amplitudes, g, s.n))


def apply_circuit(s: StateVector, c: Circuit | Sequence[Gate]) -> StateVector:
    if isinstance(c, Circuit) and c.n != s.n:
        raise DomainError(f"circuit has n={c.n}, state has n={s.n}")
    amps = s.amplitudes
    for g in c:
        amps = _raw_apply(amps, g, s.n)
    return StateVector(amps)


def gate_matrix(g: Gate, n: int) -> np.ndarray:
    """Full ``2**n x 2**n`` matrix of ``g``, assembled column by column."""
    dim = 1 << n
    cols = [_raw_apply(np.eye(dim, dtype=np.complex128)[:, k].copy(), g, n) for k in range(dim)]
    return np.stack(cols, axis=1)


# --------------------------------------------------------- standard state


def standard_state_4q(a1, a2, b1, b2, c1, c2) -> StateVector:
    """Four-qubit minimal standard state, expanded term by term.

    Qubits 1 and 2 carry the ``a`` pair, qubit 3 is weighted by ``b`` and
    qubit 4 by ``c``::

        [(a1|00> + a2|11>) b1|0> + (a1|01> + a2|10>) b2|1>] c1|0>
      + [(a1|00> + a2|11>) b1|1> + (a1|01> + a2|10>) b2|0>] c2|1>
    """
    for name, (x, y) in (("a", (a1, a2)), ("b", (b1, b2)), ("c", (c1, c2))):
        if abs(abs(x) ** 2 + abs(y) ** 2 - 1.0) > NORM_TOL:
            raise DomainError(f"|{name}1|^2 + |{name}2|^2 must equal 1")
    even = ((a1, 0b00), (a2, 0b11))
    odd = ((a1, 0b01), (a2, 0b10))
    amps = np.zeros(16, dtype=np.complex128)
    for cw, q4 in ((c1, 0), (c2, 1)):
        # c1 branch: b1 -> q3=0, b2 -> q3=1; c2 branch swaps the q3 values
        for bw, pairs, q3 in ((b1, even, q4), (b2, odd, 1 - q4)):
            for aw, q12 in pairs:
                amps[(q12 << 2) | (q3 << 1) | q4] += aw * bw * cw
    return StateVector(amps)


# ------------------------------------------------------ event probability


def _check_event(s: StateVector, e: Event) -> None:
    if e.n != s.n:
        raise DomainError(f"event has n={e.n}, state has n={s.n}")


def event_probability_exact(s: StateVector, e: Event) -> float:
    _check_event(s, e)
    p = float(np.sum(s.probabilities()[e.members]))
    return min(max(p, 0.0), 1.0)


def project(s: StateVector, e: Event) -> tuple[float, StateVector]:
    p = event_probability_exact(s, e)
    if p <= PROJECT_EPS:
        raise ZeroProbabilityError(f"event has probability {p!r}; projection undefined")
    amps = np.where(e.members, s.amplitudes, 0.0)
    return p, StateVector(amps / math.sqrt(p))


@dataclass(frozen=True)
class SamplingEstimate:
    p_hat: float
    shots: int
    sigma_mean_est: float
    seed: int
    hits: int


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator; the only source of randomness in the package."""
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise DomainError(f"seed must be an integer, got {seed!r}")
    if not 0 <= int(seed) < 1 << 64:
        raise DomainError("seed must fit in 64 unsigned bits")
    return np.random.Generator(np.random.PCG64(int(seed)))


def sample_outcomes(s: StateVector, shots: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``shots`` outcome indices from ``|C_h|**2`` by inverse-CDF lookup."""
    cdf = np.cumsum(s.probabilities())
    total = cdf[-1]
    last = cdf.shape[0] - 1
    out = np.empty(shots, dtype=np.int64)
    for start in range(0, shots, SAMPLE_CHUNK):
        stop = min(start + SAMPLE_CHUNK, shots)
        u = rng.random(stop - start) * total
        out[start:stop] = np.minimum(np.searchsorted(cdf, u, side="right"), last)
    return out


def sample_event(s: StateVector, e: Event, shots: int, seed: int) -> SamplingEstimate:
    _check_event(s, e)
    if isinstance(shots, bool) or not isinstance(shots, (int, np.integer)) or shots < 1:
        raise DomainError(f"shots must be a positive integer, got {shots!r}")
    rng = make_rng(seed)
    hits = int(np.count_nonzero(e.members[sample_outcomes(s, int(shots), rng)]))
    p_hat = hits / shots
    sigma = math.sqrt(p_hat * (1.0 - p_hat) / shots)
    return SamplingEstimate(p_hat=p_hat, shots=int(shots), sigma_mean_est=sigma, seed=int(seed), hits=hits)


def bernoulli_sigma(p: float) -> float:
    return math.sqrt(p * (1.0 - p))


def required_shots(sigma: float, sigma_mean: float) -> int:
    """Measurements needed for a target standard error: ``ceil((sigma/sigma_mean)**2)``.

    Ratios within 1e-9 (relative) of an integer are snapped first, so
    ``required_shots(0.5, 0.05)`` is 100 rather than 101. At least one shot is
    always required.
    """
    if not sigma_mean > 0:
        raise DomainError(f"sigma_mean must be positive, got {sigma_mean!r}")
    if sigma < 0:
        raise DomainError(f"sigma must be non-negative, got {sigma!r}")
    x = (sigma / sigma_mean) ** 2
    r = round(x)
    if abs(x - r) <= 1e-9 * max(1.0, x):
        x = r
    return max(1, math.ceil(x))
