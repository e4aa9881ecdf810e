"""Outcome space V, condition space V*, and the event algebra over them.

Labels are n-bit integers with ``q_1`` as the most significant bit, so the
outcome ``011`` is amplitude index 3. A condition label ``f`` stands for the
half-set condition ``f_1 q_1 ^ ... ^ f_n q_n = 0``; outcome ``v`` satisfies
``f`` when their GF(2) pairing is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Union

import numpy as np

from . import kernels
from .errors import DomainError

N_MAX = 24


def check_n(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise DomainError(f"qubit count must be an integer, got {n!r}")
    if not 1 <= n <= N_MAX:
        raise DomainError(f"qubit count {n} outside [1, {N_MAX}]")
    return int(n)


def qubit_bit(n: int, k: int) -> int:
    """Integer bit for 1-based qubit ``k`` in an ``n``-qubit index."""
    if not 1 <= k <= n:
        raise DomainError(f"qubit index q{k} outside [1, {n}]")
    return 1 << (n - k)


@dataclass(frozen=True)
class _Label:
    n: int
    value: int

    def __post_init__(self):
        check_n(self.n)
        if not 0 <= self.value < (1 << self.n):
            raise DomainError(f"label value {self.value} does not fit {self.n} bits")

    @classmethod
    def from_bits(cls, bits: str):
        bits = bits.strip()
        if not bits or any(c not in "01" for c in bits):
            raise DomainError(f"not a bit string: {bits!r}")
        return cls(len(bits), int(bits, 2))

    @property
    def bits(self) -> str:
        return format(self.value, f"0{self.n}b")

    def bit(self, k: int) -> int:
        return 1 if self.value & qubit_bit(self.n, k) else 0

    def qubits(self) -> tuple[int, ...]:
        """1-based indices of the set bits, ascending."""
        return tuple(k for k in range(1, self.n + 1) if self.value & (1 << (self.n - k)))

    def __str__(self) -> str:
        return self.bits


class OutcomeLabel(_Label):
    """A measurement outcome ``q_1 ... q_n``; a vector of V."""


class ConditionLabel(_Label):
    """A parity functional ``f_1 ... f_n``; a vector of V*."""


Label = Union[OutcomeLabel, ConditionLabel]


def _same_n(a: _Label, b: _Label) -> int:
    if a.n != b.n:
        raise DomainError(f"label length mismatch: {a.n} vs {b.n}")
    return a.n


def pairing(v: OutcomeLabel, f: ConditionLabel) -> int:
    """GF(2) pairing; 0 means ``v`` satisfies ``f = 0``."""
    _same_n(v, f)
    return (v.value & f.value).bit_count() & 1


def add_labels(a: Label, b: Label) -> Label:
    _same_n(a, b)
    if type(a) is not type(b):
        raise DomainError("cannot add an outcome label to a condition label")
    return type(a)(a.n, a.value ^ b.value)


def dual_correspondence(label: Label) -> Label:
    if isinstance(label, OutcomeLabel):
        return ConditionLabel(label.n, label.value)
    if isinstance(label, ConditionLabel):
        return OutcomeLabel(label.n, label.value)
    raise DomainError(f"not a label: {label!r}")


def annihilator(v: OutcomeLabel) -> frozenset[ConditionLabel]:
    """All conditions satisfied by outcome ``v``."""
    table = kernels.parity_table(v.n, v.value)
    return frozenset(ConditionLabel(v.n, int(j)) for j in np.flatnonzero(table == 0))


def condition_annihilator(f: ConditionLabel) -> frozenset[OutcomeLabel]:
    """All outcomes satisfying ``f``; the annihilator seen from V*."""
    table = kernels.parity_table(f.n, f.value)
    return frozenset(OutcomeLabel(f.n, int(h)) for h in np.flatnonzero(table == 0))


def condition_to_text(f: ConditionLabel, rhs: int = 0) -> str:
    if rhs not in (0, 1):
        raise DomainError(f"rhs must be 0 or 1, got {rhs!r}")
    q = f.qubits()
    lhs = "⊕".join(f"q{k}" for k in q) if q else "0"
    return f"{lhs}={rhs}"


def missing_qubits(f: ConditionLabel) -> tuple[int, ...]:
    return tuple(k for k in range(1, f.n + 1) if not f.bit(k))


# ------------------------------------------------------------------ events


class Event:
    """A subset of the 2**n outcomes stored as a dense boolean array."""

    __slots__ = ("n", "members")

    def __init__(self, n: int, members):
        n = check_n(n)
        arr = np.asarray(members, dtype=bool)
        if arr.shape != (1 << n,):
            raise DomainError(f"event bitset must have length {1 << n}, got {arr.shape}")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "members", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Event is immutable")

    @classmethod
    def full(cls, n: int) -> "Event":
        return cls(n, np.ones(1 << n, dtype=bool))

    @classmethod
    def empty(cls, n: int) -> "Event":
        return cls(n, np.zeros(1 << n, dtype=bool))

    @classmethod
    def from_outcomes(cls, n: int, outcomes: Iterable) -> "Event":
        arr = np.zeros(1 << n, dtype=bool)
        for v in outcomes:
            if isinstance(v, str):
                v = OutcomeLabel.from_bits(v)
            if isinstance(v, _Label):
                _same_n(v, OutcomeLabel(n, 0))
                v = v.value
            arr[int(v)] = True
        return cls(n, arr)

    def _check(self, other: "Event") -> None:
        if not isinstance(other, Event):
            raise TypeError(f"expected Event, got {type(other).__name__}")
        if other.n != self.n:
            raise DomainError(f"event size mismatch: n={self.n} vs n={other.n}")

    def __and__(self, other: "Event") -> "Event":
        self._check(other)
        return Event(self.n, self.members & other.members)

    def __or__(self, other: "Event") -> "Event":
        self._check(other)
        return Event(self.n, self.members | other.members)

    def __invert__(self) -> "Event":
        return Event(self.n, ~self.members)

    complement = __invert__

    def __len__(self) -> int:
        return int(np.count_nonzero(self.members))

    def __contains__(self, v) -> bool:
        if isinstance(v, str):
            v = OutcomeLabel.from_bits(v)
        if isinstance(v, _Label):
            if v.n != self.n:
                return False
            v = v.value
        return bool(self.members[int(v)])

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.members)

    def outcomes(self) -> list[OutcomeLabel]:
        return [OutcomeLabel(self.n, int(i)) for i in self.indices()]

    def bitstrings(self) -> list[str]:
        return [o.bits for o in self.outcomes()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Event):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.members, other.members))

    def __hash__(self) -> int:
        return hash((self.n, self.members.tobytes()))

    def __repr__(self) -> str:
        shown = self.bitstrings() if self.n <= 4 else f"{len(self)} outcomes"
        return f"Event(n={self.n}, {shown})"


def satisfying_set(f: ConditionLabel) -> Event:
    return Event(f.n, kernels.parity_table(f.n, f.value) == 0)


# ---------------------------------------------------------- event algebra


@dataclass(frozen=True)
class ParityCondition:
    mask: ConditionLabel
    rhs: int = 0

    def __post_init__(self):
        if self.rhs not in (0, 1):
            raise DomainError(f"rhs must be 0 or 1, got {self.rhs!r}")
        if not isinstance(self.mask, ConditionLabel):
            raise DomainError("mask must be a ConditionLabel")

    @property
    def n(self) -> int:
        return self.mask.n

    @classmethod
    def single(cls, n: int, k: int, value: int) -> "ParityCondition":
        """The single-qubit condition ``q_k = value``."""
        return cls(ConditionLabel(n, qubit_bit(n, k)), value)

    @classmethod
    def on_qubits(cls, n: int, qubits: Iterable[int], rhs: int = 0) -> "ParityCondition":
        value = 0
        for k in qubits:
            value ^= qubit_bit(n, k)
        return cls(ConditionLabel(n, value), rhs)

    def text(self) -> str:
        return condition_to_text(self.mask, self.rhs)


def parity_event(pc: ParityCondition) -> Event:
    return Event(pc.n, kernels.parity_table(pc.n, pc.mask.value) == pc.rhs)


@dataclass(frozen=True)
class Leaf:
    cond: ParityCondition


@dataclass(frozen=True)
class And:
    left: "ConditionExpr"
    right: "ConditionExpr"


@dataclass(frozen=True)
class Or:
    left: "ConditionExpr"
    right: "ConditionExpr"


@dataclass(frozen=True)
class Not:
    child: "ConditionExpr"


ConditionExpr = Union[Leaf, And, Or, Not]


def _children(e):
    if isinstance(e, Leaf):
        return ()
    if isinstance(e, Not):
        return (e.child,)
    if isinstance(e, (And, Or)):
        return (e.left, e.right)
    raise DomainError(f"not a condition expression node: {e!r}")


def expr_n(e: ConditionExpr) -> int:
    """Qubit count shared by every leaf of ``e``."""
    sizes = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            sizes.add(node.cond.n)
        stack.extend(_children(node))
    if len(sizes) != 1:
        raise DomainError(f"inconsistent qubit counts across leaves: {sorted(sizes)}")
    return sizes.pop()


def eval_expr(e: ConditionExpr) -> Event:
    expr_n(e)
    return _eval(e)


def _eval(e) -> Event:
    if isinstance(e, Leaf):
        return parity_event(e.cond)
    if isinstance(e, And):
        return _eval(e.left) & _eval(e.right)
    if isinstance(e, Or):
        return _eval(e.left) | _eval(e.right)
    if isinstance(e, Not):
        return ~_eval(e.child)
    raise DomainError(f"not a condition expression node: {e!r}")


def single_outcome_expr(v: OutcomeLabel) -> ConditionExpr:
    """Conjunction ``q_1 = v_1 AND ... AND q_n = v_n`` (left-nested)."""
    leaves = [Leaf(ParityCondition.single(v.n, k, v.bit(k))) for k in range(1, v.n + 1)]
    return reduce(And, leaves)


def expr_op_count(e: ConditionExpr) -> int:
    count = 0
    stack = [e]
    while stack:
        node = stack.pop()
        if not isinstance(node, Leaf):
            count += 1
        stack.extend(_children(node))
    return count
