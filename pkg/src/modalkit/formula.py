"""Modal formula syntax tree, ASCII parser/printer and structural operations.

The grammar keeps the full connective set (constants, Not, &&, ||, -->, <->,
Box, Diam) rather than a minimal basis.  All infix operators associate to the
right; precedence from loosest to tightest is <-> (13), --> (14), || (15),
&& (16), with Not/Box/Diam binding tighter than any infix operator.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

_ATOM_NAME = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class ParseError(ValueError):
    """Malformed formula text; carries the offset and the expected token set."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...]):
        detail = f"{message} at offset {offset}"
        if expected:
            detail += " (expected " + ", ".join(expected) + ")"
        super().__init__(detail)
        self.offset = offset
        self.expected = expected


def _stored_hash(self) -> int:
    return self._hash


# Formula trees are hashed constantly by the search ledgers, so every node
# caches its hash at construction instead of re-walking the tree.
def _hash_field():
    return field(init=False, repr=False, compare=False, default=0)


@dataclass(frozen=True, slots=True)
class Formula:
    """Base class of all formula nodes; immutable, compared structurally."""


@dataclass(frozen=True, slots=True)
class Falsum(Formula):
    _hash: int = _hash_field()
    __hash__ = _stored_hash

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((0, "False")))


@dataclass(frozen=True, slots=True)
class Verum(Formula):
    _hash: int = _hash_field()
    __hash__ = _stored_hash

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((1, "True")))


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str
    _hash: int = _hash_field()
    __hash__ = _stored_hash

    def __post_init__(self):
        if not _ATOM_NAME.match(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")
        object.__setattr__(self, "_hash", hash((2, self.name)))


@dataclass(frozen=True, slots=True)
class Not(Formula):
    arg: Formula
    _hash: int = _hash_field()
    __hash__ = _stored_hash

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((3, hash(self.arg))))


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula
    _hash: int = _hash_field()
    __hash__ = _stored_hash

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((4, hash(self.left), hash(self.right))))


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula
    _hash: int = _hash_field()
    __hash__ = _stored_hash

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((5, hash(self.left), hash(self.right))))


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    left: Formula
    right: Formula
    _hash: int = _hash_field()
    __hash__ = _stored_hash

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((6, hash(self.left), hash(self.right))))


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula
    _hash: int = _hash_field()
    __hash__ = _stored_hash

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((7, hash(self.left), hash(self.right))))


@dataclass(frozen=True, slots=True)
class Box(Formula):
    arg: Formula
    _hash: int = _hash_field()
    __hash__ = _stored_hash

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((8, hash(self.arg))))


@dataclass(frozen=True, slots=True)
class Diam(Formula):
    arg: Formula
    _hash: int = _hash_field()
    __hash__ = _stored_hash

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((9, hash(self.arg))))


FALSE = Falsum()
TRUE = Verum()

_BINARY = (And, Or, Imp, Iff)
_UNARY = (Not, Box, Diam)


@lru_cache(maxsize=None)
def size(f: Formula) -> int:
    """Connective count plus atom and constant occurrences."""
    match f:
        case Falsum() | Verum() | Atom():
            return 1
        case Not(a) | Box(a) | Diam(a):
            return 1 + size(a)
        case And(a, b) | Or(a, b) | Imp(a, b) | Iff(a, b):
            return 1 + size(a) + size(b)
    raise TypeError(f"not a formula: {f!r}")


@lru_cache(maxsize=None)
def atoms(f: Formula) -> frozenset[str]:
    """Names of the propositional atoms occurring in f."""
    match f:
        case Atom(name):
            return frozenset((name,))
        case Falsum() | Verum():
            return frozenset()
        case Not(a) | Box(a) | Diam(a):
            return atoms(a)
        case And(a, b) | Or(a, b) | Imp(a, b) | Iff(a, b):
            return atoms(a) | atoms(b)
    raise TypeError(f"not a formula: {f!r}")


@lru_cache(maxsize=None)
def subformulas(f: Formula) -> frozenset[Formula]:
    """Reflexive-transitive closure of the immediate-subterm relation."""
    match f:
        case Falsum() | Verum() | Atom():
            return frozenset((f,))
        case Not(a) | Box(a) | Diam(a):
            return subformulas(a) | {f}
        case And(a, b) | Or(a, b) | Imp(a, b) | Iff(a, b):
            return subformulas(a) | subformulas(b) | {f}
    raise TypeError(f"not a formula: {f!r}")


def subsentences(f: Formula) -> frozenset[Formula]:
    """Every subformula together with its negation."""
    subs = subformulas(f)
    return subs | {Not(g) for g in subs}


def substitute(f: Formula, mapping: dict[str, Formula]) -> Formula:
    """Simultaneous substitution of formulas for atom names."""
    match f:
        case Atom(name):
            return mapping.get(name, f)
        case Falsum() | Verum():
            return f
        case Not(a):
            return Not(substitute(a, mapping))
        case Box(a):
            return Box(substitute(a, mapping))
        case Diam(a):
            return Diam(substitute(a, mapping))
        case And(a, b):
            return And(substitute(a, mapping), substitute(b, mapping))
        case Or(a, b):
            return Or(substitute(a, mapping), substitute(b, mapping))
        case Imp(a, b):
            return Imp(substitute(a, mapping), substitute(b, mapping))
        case Iff(a, b):
            return Iff(substitute(a, mapping), substitute(b, mapping))
    raise TypeError(f"not a formula: {f!r}")


def eliminate_diamonds(f: Formula) -> Formula:
    """Rewrite every Diam g into Not (Box (Not g))."""
    match f:
        case Diam(a):
            return Not(Box(Not(eliminate_diamonds(a))))
        case Falsum() | Verum() | Atom():
            return f
        case Not(a):
            return Not(eliminate_diamonds(a))
        case Box(a):
            return Box(eliminate_diamonds(a))
        case And(a, b):
            return And(eliminate_diamonds(a), eliminate_diamonds(b))
        case Or(a, b):
            return Or(eliminate_diamonds(a), eliminate_diamonds(b))
        case Imp(a, b):
            return Imp(eliminate_diamonds(a), eliminate_diamonds(b))
        case Iff(a, b):
            return Iff(eliminate_diamonds(a), eliminate_diamonds(b))
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Parsing

_INFIX: dict[str, tuple[int, type]] = {
    "&&": (16, And),
    "||": (15, Or),
    "-->": (14, Imp),
    "<->": (13, Iff),
}
_PREFIX: dict[str, type] = {"Not": Not, "Box": Box, "Diam": Diam}
_CONSTS: dict[str, Formula] = {"False": FALSE, "True": TRUE}

_TOKEN = re.compile(r"(-->|<->|&&|\|\||[()])|([A-Za-z][A-Za-z0-9_]*)")
_WS = re.compile(r"\s*")

_FORMULA_START = ("(", "False", "True", "Not", "Box", "Diam", "atom")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []  # (kind, value, offset)
        pos = 0
        while pos < len(text):
            pos = _WS.match(text, pos).end()
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", pos, ())
            if m.group(1):
                self.tokens.append(("op", m.group(1), pos))
            else:
                self.tokens.append(("word", m.group(2), pos))
            pos = m.end()
        self.tokens.append(("eof", "", len(text)))
        self.idx = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.idx]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def formula(self, min_prec: int) -> Formula:
        node = self.unary()
        while True:
            kind, value, _ = self.peek()
            if kind != "op" or value not in _INFIX:
                return node
            prec, ctor = _INFIX[value]
            if prec < min_prec:
                return node
            self.advance()
            node = ctor(node, self.formula(prec))  # right-associative

    def unary(self) -> Formula:
        kind, value, offset = self.peek()
        if kind == "word":
            self.advance()
            if value in _PREFIX:
                return _PREFIX[value](self.unary())
            if value in _CONSTS:
                return _CONSTS[value]
            if _ATOM_NAME.match(value):
                return Atom(value)
            raise ParseError(f"unknown token {value!r}", offset, _FORMULA_START)
        if kind == "op" and value == "(":
            self.advance()
            node = self.formula(0)
            kind, value, offset = self.peek()
            if not (kind == "op" and value == ")"):
                raise ParseError("unbalanced parenthesis", offset, (")",))
            self.advance()
            return node
        shown = value if value else "end of input"
        raise ParseError(f"unexpected {shown}", offset, _FORMULA_START)


def parse(text: str) -> Formula:
    """Parse formula text into its unique tree under the precedence table."""
    p = _Parser(text)
    node = p.formula(0)
    kind, value, offset = p.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {value!r}", offset, ("end of input",))
    return node


# ---------------------------------------------------------------------------
# Printing

_INFIX_SYM = {And: "&&", Or: "||", Imp: "-->", Iff: "<->"}
_INFIX_PREC = {And: 16, Or: 15, Imp: 14, Iff: 13}
_PREFIX_SYM = {Not: "Not", Box: "Box", Diam: "Diam"}


def _top_prec(f: Formula) -> int:
    return _INFIX_PREC.get(type(f), 99)


@lru_cache(maxsize=None)
def pretty(f: Formula) -> str:
    """Render f with minimal parentheses; inverse of parse."""
    match f:
        case Falsum():
            return "False"
        case Verum():
            return "True"
        case Atom(name):
            return name
        case Not(a) | Box(a) | Diam(a):
            inner = pretty(a)
            if _top_prec(a) < 99:
                inner = f"({inner})"
            return f"{_PREFIX_SYM[type(f)]} {inner}"
        case And(a, b) | Or(a, b) | Imp(a, b) | Iff(a, b):
            prec = _INFIX_PREC[type(f)]
            ls = pretty(a)
            if _top_prec(a) <= prec:  # right-associative: equal precedence on the left needs parens
                ls = f"({ls})"
            rs = pretty(b)
            if _top_prec(b) < prec:
                rs = f"({rs})"
            return f"{ls} {_INFIX_SYM[type(f)]} {rs}"
    raise TypeError(f"not a formula: {f!r}")
