"""Tarskian satisfaction over finite membership structures."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import UnboundVariable
from ..hf import UniverseSlice
from .syntax import Atom, Binary, Const, Formula, Not, parse_formula

__all__ = ["Structure", "evaluate", "extension"]


@dataclass(frozen=True)
class Structure:
    """A universe slice with membership, optionally the Ackermann order, and named constants."""

    universe: UniverseSlice
    order: bool = True
    parameters: tuple = field(default=())  # (name, HFSet) pairs

    def __post_init__(self):
        params = tuple(sorted(dict(self.parameters).items()))
        for name, value in params:
            if value not in self.universe:
                raise ValueError(f"parameter {name} is not an element of {self.universe.label}")
        object.__setattr__(self, "parameters", params)

    def with_parameters(self, **named) -> "Structure":
        merged = dict(self.parameters)
        merged.update(named)
        return Structure(self.universe, self.order, tuple(merged.items()))


def _check_relations(f: Formula, order: bool):
    if isinstance(f, Atom):
        if f.rel == "lt" and not order:
            raise ValueError("structure has no order relation")
    elif isinstance(f, Not):
        _check_relations(f.body, order)
    elif isinstance(f, Binary):
        _check_relations(f.left, order)
        _check_relations(f.right, order)
    else:
        _check_relations(f.body, order)


def evaluate(phi, M: Structure, assignment=None, witness_order=None) -> bool:
    """Truth of ``phi`` in ``M`` under ``assignment`` (name -> HFSet).

    ``witness_order`` optionally fixes the order in which quantifiers try
    elements; the truth value does not depend on it.
    """
    if isinstance(phi, str):
        phi = parse_formula(phi)
    _check_relations(phi, M.order)
    env = dict(M.parameters)
    env.update(assignment or {})
    elems = tuple(M.universe) if witness_order is None else tuple(witness_order)
    universe = M.universe

    def value(t):
        if isinstance(t, Const):
            if not 0 <= t.index < len(universe):
                raise UnboundVariable(f"constant #{t.index} outside {universe.label}")
            return universe[t.index]
        try:
            return env[t.name]
        except KeyError:
            raise UnboundVariable(f"no value for {t.name}") from None

    def sat(f) -> bool:
        if isinstance(f, Atom):
            a, b = value(f.left), value(f.right)
            if f.rel == "mem":
                return a in b
            if f.rel == "eq":
                return a is b
            return a < b
        if isinstance(f, Not):
            return not sat(f.body)
        if isinstance(f, Binary):
            if f.op == "and":
                return sat(f.left) and sat(f.right)
            if f.op == "or":
                return sat(f.left) or sat(f.right)
            return (not sat(f.left)) or sat(f.right)
        saved = env.get(f.var, _MISSING)
        try:
            if f.q == "exists":
                for e in elems:
                    env[f.var] = e
                    if sat(f.body):
                        return True
                return False
            for e in elems:
                env[f.var] = e
                if not sat(f.body):
                    return False
            return True
        finally:
            if saved is _MISSING:
                env.pop(f.var, None)
            else:
                env[f.var] = saved

    return sat(phi)


_MISSING = object()


def extension(phi, M: Structure, var: str = "x", assignment=None) -> frozenset:
    """Elements ``a`` of ``M`` with ``M |= phi[var := a]``."""
    if isinstance(phi, str):
        phi = parse_formula(phi)
    base = dict(assignment or {})
    out = []
    for a in M.universe:
        base[var] = a
        if evaluate(phi, M, base):
            out.append(a)
    return frozenset(out)

