"""First-order syntax over membership, equality and the Ackermann order.

Grammar (prefix, fully parenthesised)::

    formula := (mem T T) | (eq T T) | (lt T T)
             | (not formula)
             | (and formula formula) | (or formula formula)
             | (implies formula formula)
             | (exists NAME formula) | (forall NAME formula)
    T       := NAME | #k

``#k`` names the k-th element of the universe; other free names are
variables or named parameters, resolved at evaluation time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import FormulaSyntaxError

__all__ = [
    "Var",
    "Const",
    "Atom",
    "Not",
    "Binary",
    "Quant",
    "Formula",
    "parse_formula",
    "to_text",
    "complexity",
    "free_names",
    "RELATIONS",
    "CONNECTIVES",
    "QUANTIFIERS",
]

RELATIONS = ("mem", "eq", "lt")
CONNECTIVES = ("and", "or", "implies")
QUANTIFIERS = ("exists", "forall")
KEYWORDS = frozenset(RELATIONS + CONNECTIVES + QUANTIFIERS + ("not",))

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_CONST = re.compile(r"#(\d+)\Z")
_TOKEN = re.compile(r"\(|\)|[^()\s]+")


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    index: int

    def __str__(self):
        return f"#{self.index}"


@dataclass(frozen=True)
class Atom:
    rel: str
    left: Var | Const
    right: Var | Const


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Quant:
    q: str
    var: str
    body: "Formula"


Formula = Atom | Not | Binary | Quant


def to_text(f: Formula) -> str:
    """Canonical print; ``parse_formula(to_text(f)) == f``."""
    if isinstance(f, Atom):
        return f"({f.rel} {f.left} {f.right})"
    if isinstance(f, Not):
        return f"(not {to_text(f.body)})"
    if isinstance(f, Binary):
        return f"({f.op} {to_text(f.left)} {to_text(f.right)})"
    return f"({f.q} {f.var} {to_text(f.body)})"


def complexity(f: Formula) -> int:
    """Occurrences of connectives and quantifiers."""
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Not):
        return 1 + complexity(f.body)
    if isinstance(f, Binary):
        return 1 + complexity(f.left) + complexity(f.right)
    return 1 + complexity(f.body)


def free_names(f: Formula) -> frozenset:
    if isinstance(f, Atom):
        return frozenset(t.name for t in (f.left, f.right) if isinstance(t, Var))
    if isinstance(f, Not):
        return free_names(f.body)
    if isinstance(f, Binary):
        return free_names(f.left) | free_names(f.right)
    return free_names(f.body) - {f.var}


def _tokens(text: str):
    return [(m.group(), m.start()) for m in _TOKEN.finditer(text)]


def parse_formula(text: str) -> Formula:
    toks = _tokens(text)
    end = len(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, end)

    def take(expected=None):
        nonlocal pos
        tok, at = peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", at)
        if expected is not None and tok != expected:
            raise FormulaSyntaxError(f"expected {expected!r}, found {tok!r}", at)
        pos += 1
        return tok, at

    def term():
        tok, at = take()
        m = _CONST.match(tok)
        if m:
            return Const(int(m.group(1)))
        if _NAME.match(tok) and tok not in KEYWORDS:
            return Var(tok)
        raise FormulaSyntaxError(f"bad term {tok!r}", at)

    def name():
        tok, at = take()
        if not _NAME.match(tok) or tok in KEYWORDS:
            raise FormulaSyntaxError(f"bad variable {tok!r}", at)
        return tok

    def formula():
        take("(")
        head, at = take()
        if head in RELATIONS:
            f = Atom(head, term(), term())
        elif head == "not":
            f = Not(formula())
        elif head in CONNECTIVES:
            f = Binary(head, formula(), formula())
        elif head in QUANTIFIERS:
            f = Quant(head, name(), formula())
        else:
            raise FormulaSyntaxError(f"unknown operator {head!r}", at)
        take(")")
        return f

    result = formula()
    if pos != len(toks):
        raise FormulaSyntaxError("trailing input", toks[pos][1])
    return result
