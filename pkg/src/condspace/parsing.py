"""Text grammar for condition expressions.

::

    expr      := and_expr ("OR" and_expr)*
    and_expr  := not_expr ("AND" not_expr)*
    not_expr  := "NOT" not_expr | "(" expr ")" | condition
    condition := term (("^" | "⊕") term)* "=" ("0" | "1")
    term      := "q" INDEX | "0"

Qubit indices are 1-based. Example: ``(q1^q2=0) AND NOT (q3=1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .condition_core import (
    And,
    ConditionExpr,
    ConditionLabel,
    Leaf,
    Not,
    Or,
    ParityCondition,
    check_n,
    qubit_bit,
)
from .errors import DomainError, ParseError

_TOKEN = re.compile(
    r"\s*(?:(?P<kw>AND|OR|NOT)\b|(?P<qubit>q(?P<idx>\d+))|(?P<bit>[01])(?!\d)"
    r"|(?P<xor>\^|⊕)|(?P<eq>=)|(?P<lp>\()|(?P<rp>\)))",
    re.IGNORECASE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup if m.lastgroup != "idx" else "qubit"
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind).upper() if kind == "kw" else m.group(kind), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


@dataclass(frozen=True)
class _RawLeaf:
    qubits: tuple
    rhs: int
    pos: int


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str, text: str | None = None) -> _Tok:
        t = self.cur
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            got = t.text or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", t.pos)
        self.i += 1
        return t

    def at_kw(self, word: str) -> bool:
        return self.cur.kind == "kw" and self.cur.text == word

    def parse(self):
        e = self.or_expr()
        if self.cur.kind != "end":
            raise ParseError(f"unexpected {self.cur.text!r}", self.cur.pos)
        return e

    def or_expr(self):
        e = self.and_expr()
        while self.at_kw("OR"):
            self.i += 1
            e = ("or", e, self.and_expr())
        return e

    def and_expr(self):
        e = self.not_expr()
        while self.at_kw("AND"):
            self.i += 1
            e = ("and", e, self.not_expr())
        return e

    def not_expr(self):
        if self.at_kw("NOT"):
            self.i += 1
            return ("not", self.not_expr())
        if self.cur.kind == "lp":
            self.i += 1
            e = self.or_expr()
            self.take("rp")
            return e
        return self.condition()

    def term(self):
        t = self.cur
        if t.kind == "qubit":
            self.i += 1
            k = int(t.text[1:])
            if k < 1:
                raise ParseError("qubit indices start at 1", t.pos)
            return (k,)
        if t.kind == "bit" and t.text == "0":
            self.i += 1
            return ()
        raise ParseError(f"expected a qubit term, found {t.text or 'end of input'!r}", t.pos)

    def condition(self):
        start = self.cur.pos
        qubits = list(self.term())
        while self.cur.kind == "xor":
            self.i += 1
            qubits.extend(self.term())
        self.take("eq")
        rhs = self.take("bit")
        return _RawLeaf(tuple(qubits), int(rhs.text), start)


def _max_qubit(raw) -> int:
    if isinstance(raw, _RawLeaf):
        return max(raw.qubits, default=0)
    return max(_max_qubit(c) for c in raw[1:])


def _build(raw, n: int) -> ConditionExpr:
    if isinstance(raw, _RawLeaf):
        value = 0
        for k in raw.qubits:
            if k > n:
                raise ParseError(f"q{k} exceeds n={n}", raw.pos)
            value ^= qubit_bit(n, k)
        return Leaf(ParityCondition(ConditionLabel(n, value), raw.rhs))
    tag = raw[0]
    if tag == "not":
        return Not(_build(raw[1], n))
    left, right = _build(raw[1], n), _build(raw[2], n)
    return And(left, right) if tag == "and" else Or(left, right)


def parse_condition_expr(text: str, n: int | None = None) -> ConditionExpr:
    """Parse ``text``; ``n`` defaults to the largest qubit index mentioned."""
    raw = _Parser(text).parse()
    if n is None:
        n = _max_qubit(raw)
        if n == 0:
            raise ParseError("cannot infer n from an expression without qubits; pass n", 0)
    try:
        n = check_n(n)
    except DomainError as exc:
        raise ParseError(str(exc), 0) from None
    return _build(raw, n)


def format_leaf(pc: ParityCondition) -> str:
    q = pc.mask.qubits()
    return ("^".join(f"q{k}" for k in q) if q else "0") + f"={pc.rhs}"


def format_expr(e: ConditionExpr) -> str:
    """Canonical, fully parenthesized text; parses back to the same tree."""
    if isinstance(e, Leaf):
        return format_leaf(e.cond)
    if isinstance(e, Not):
        return f"NOT ({format_expr(e.child)})"
    if isinstance(e, And):
        return f"({format_expr(e.left)}) AND ({format_expr(e.right)})"
    if isinstance(e, Or):
        return f"({format_expr(e.left)}) OR ({format_expr(e.right)})"
    raise DomainError(f"not a condition expression node: {e!r}")
