"""Definable classes of a finite structure, with minimal defining formulas.

The formula space is canonical: the free variable is ``x``, the quantifier
at nesting depth ``d`` binds ``y<d>``, every atom mentions at least one
variable, and each parameter occurrence is its own slot ``p1, p2, ..`` in
print order.  Every formula of that space is an ordinary formula of the
grammar, and every formula of the grammar is equivalent to one of the
same complexity inside it (rename bound variables, replace parameter
repetitions by fresh slots with the same value).

:class:`DefinabilityTable` runs a dynamic program over (context depth,
exact complexity).  An entry maps the extension of a formula, stored as
an int bitmask over tuples ``(x, y1, .., yd)``, to the least formula with
that extension under the order (length, text, parameters).  Least
witnesses compose: a least formula is built from least subformulas, since
the text of a compound formula compares subformula by subformula once the
lengths are fixed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

from ..errors import UniverseTooLarge
from ..hf import HFSet, UniverseSlice
from .semantics import Structure, evaluate, extension
from .syntax import parse_formula

__all__ = [
    "DefClass",
    "DefinabilityTable",
    "definability_table",
    "enumerate_definable",
    "find_definable_branch",
    "sentences",
    "cut_experiment",
    "is_definably_stationary",
    "MAX_TUPLE_BITS",
    "WORK_BUDGET",
]

#: widest bitmask the engine will build (tuples at the deepest context)
MAX_TUPLE_BITS = 1 << 20
#: candidate combinations tried before giving up
WORK_BUDGET = 60_000_000

_SLOT = re.compile(r"p(\d+)")
_OPS = (("and", 7), ("or", 6), ("implies", 11))


@dataclass(frozen=True)
class DefClass:
    """A formula in one free variable ``x`` together with its parameters.

    ``parameters`` lists the values of slots ``p1, p2, ..`` in order.
    ``param_key`` holds their positions in the well-order used for
    tie-breaking.
    """

    text: str
    complexity: int
    parameters: tuple = ()
    param_key: tuple = ()

    @cached_property
    def formula(self):
        return parse_formula(self.text)

    @property
    def key(self) -> tuple:
        return (self.complexity, len(self.text), self.text, self.param_key)

    def bindings(self) -> dict:
        return {f"p{i + 1}": v for i, v in enumerate(self.parameters)}

    def extension(self, M: Structure) -> frozenset:
        return extension(self.formula, M, "x", self.bindings())

    def to_json(self) -> dict:
        return {
            "formula": self.text,
            "complexity": self.complexity,
            "parameters": {f"p{i + 1}": v.to_literal() for i, v in enumerate(self.parameters)},
        }

    def __str__(self):
        if not self.parameters:
            return self.text
        binds = ", ".join(f"p{i + 1}={v}" for i, v in enumerate(self.parameters))
        return f"{self.text} [{binds}]"


def _shift(text: str, by: int) -> str:
    if not by:
        return text
    return _SLOT.sub(lambda m: f"p{int(m.group(1)) + by}", text)


class DefinabilityTable:
    """Least witnesses for every class definable within a complexity bound.

    ``param_domain`` lists the universe indices allowed as parameter values
    (empty for parameter-free definability); ``param_rank`` maps such an
    index to its position in the tie-breaking well-order (default: the
    index itself, i.e. the Ackermann order).
    """

    def __init__(
        self,
        universe: UniverseSlice,
        max_complexity: int,
        param_domain=(),
        order: bool = False,
        param_rank=None,
        budget: int = WORK_BUDGET,
    ):
        if max_complexity < 0:
            raise ValueError("complexity bound must be non-negative")
        n = len(universe)
        self.universe = universe
        self.size = n
        self.bound = max_complexity
        self.order = order
        self.param_domain = tuple(param_domain)
        rank = param_rank or {}
        self.param_rank = {p: rank.get(p, p) for p in self.param_domain}
        if n ** (max_complexity + 1) > MAX_TUPLE_BITS:
            raise UniverseTooLarge(
                f"{universe.label} at bound {max_complexity} needs {n}^{max_complexity + 1} tuple bits"
            )
        self._work = 0
        self._budget = budget
        self._relations = self._relation_pairs()
        self.tables = self._build()

    # -- bitmask plumbing -------------------------------------------------

    def _relation_pairs(self) -> dict:
        u = self.universe
        n = self.size
        rels = {
            "mem": [(a, b) for b in range(n) for a in (u.index(c) for c in u[b].children)],
            "eq": [(a, a) for a in range(n)],
        }
        if self.order:
            rels["lt"] = [(a, b) for b in range(n) for a in range(b)]
        return rels

    def _position_masks(self, d: int) -> list:
        """``masks[i][a]``: tuples of width d+1 whose i-th entry is ``a``."""
        n = self.size
        width = n ** (d + 1)
        out = []
        for i in range(d + 1):
            stride = n**i
            period = stride * n
            repunit = 0
            for k in range(width // period):
                repunit |= 1 << (k * period)
            block = (1 << stride) - 1
            out.append([(block << (a * stride)) * repunit for a in range(n)])
        return out

    def _atoms(self, d: int) -> dict:
        names = ["x"] + [f"y{i}" for i in range(1, d + 1)]
        pos = self._position_masks(d)
        entries: dict = {}

        def offer(value, text, params):
            pkey = tuple(self.param_rank[p] for p in params)
            cand = (len(text), text, pkey, params)
            old = entries.get(value)
            if old is None or cand[:3] < old[:3]:
                entries[value] = cand

        for rel, pairs in self._relations.items():
            for i, left in enumerate(names):
                for j, right in enumerate(names):
                    v = 0
                    for a, b in pairs:
                        v |= pos[i][a] & pos[j][b]
                    offer(v, f"({rel} {left} {right})", ())
                for p in self.param_domain:
                    as_left = 0
                    as_right = 0
                    for a, b in pairs:
                        if a == p:
                            as_left |= pos[i][b]
                        if b == p:
                            as_right |= pos[i][a]
                    offer(as_right, f"({rel} {left} p1)", (p,))
                    offer(as_left, f"({rel} p1 {left})", (p,))
        return entries

    # -- dynamic program --------------------------------------------------

    def _charge(self, amount: int):
        self._work += amount
        if self._work > self._budget:
            raise UniverseTooLarge(
                f"definability search over {self.universe.label} at bound {self.bound} exceeds the work budget"
            )

    def _build(self) -> list:
        n = self.size
        bound = self.bound
        tables = [[None] * (bound + 1 - d) for d in range(bound + 1)]
        for c in range(bound + 1):
            for d in range(bound + 1 - c):
                full = (1 << n ** (d + 1)) - 1
                if c == 0:
                    tables[d][0] = self._atoms(d)
                    continue
                out: dict = {}
                # negation
                for v, (ln, text, pkey, params) in tables[d][c - 1].items():
                    self._offer(out, full & ~v, ln + 6, "(not ", text, ")", pkey, params)
                # quantifiers over the innermost variable
                inner = tables[d + 1][c - 1]
                var = f"y{d + 1}"
                size = n ** (d + 1)
                self._charge(len(inner) * n)
                for v, (ln, text, pkey, params) in inner.items():
                    some, every = 0, full
                    for a in range(n):
                        chunk = (v >> (a * size)) & full
                        some |= chunk
                        every &= chunk
                    self._offer(out, some, ln + 10 + len(var), f"(exists {var} ", text, ")", pkey, params)
                    self._offer(out, every, ln + 10 + len(var), f"(forall {var} ", text, ")", pkey, params)
                # binary connectives
                for ca in range(c):
                    left, right = tables[d][ca], tables[d][c - 1 - ca]
                    self._charge(len(left) * len(right))
                    self._combine(out, left, right, full)
                tables[d][c] = out
        return tables

    @staticmethod
    def _offer(out, value, ln, head, text, tail, pkey, params):
        old = out.get(value)
        if old is not None and ln > old[0]:
            return
        full = head + text + tail
        if old is None or (ln, full, pkey) < old[:3]:
            out[value] = (ln, full, pkey, params)

    def _combine(self, out, left: dict, right: dict, full: int):
        get = out.get
        right_items = list(right.items())
        for va, (la, ta, ka, pa) in left.items():
            shift = len(pa)
            not_va = full & ~va
            for vb, (lb, tb, kb, pb) in right_items:
                total = la + lb
                for op, extra, value in (
                    ("and", 7, va & vb),
                    ("or", 6, va | vb),
                    ("implies", 11, not_va | vb),
                ):
                    ln = total + extra
                    old = get(value)
                    if old is not None and ln > old[0]:
                        continue
                    text = f"({op} {ta} {_shift(tb, shift) if pb else tb})"
                    pkey = ka + kb
                    if old is None or (ln, text, pkey) < old[:3]:
                        out[value] = (ln, text, pkey, pa + pb)

    # -- queries ----------------------------------------------------------

    def _defclass(self, c, entry) -> DefClass:
        ln, text, pkey, params = entry
        return DefClass(text, c, tuple(self.universe[p] for p in params), pkey)

    def entries(self):
        """Every (complexity, extension mask, least witness at that exact complexity)."""
        for c in range(self.bound + 1):
            for v, entry in self.tables[0][c].items():
                yield c, v, self._defclass(c, entry)

    @cached_property
    def least(self) -> dict:
        """Extension mask -> least witness over all complexities."""
        best: dict = {}
        for c in range(self.bound + 1):
            for v, entry in self.tables[0][c].items():
                if v not in best:
                    best[v] = self._defclass(c, entry)
        return best

    def best_within(self, value: int, limit: int):
        """Least (length, text, parameters) witness of complexity at most ``limit``."""
        found = None
        for c in range(min(limit, self.bound) + 1):
            entry = self.tables[0][c].get(value)
            if entry is not None and (found is None or entry[:3] < found[1][:3]):
                found = (c, entry)
        return None if found is None else self._defclass(*found)

    def subset(self, value: int) -> frozenset:
        return frozenset(self.universe[i] for i in range(self.size) if value >> i & 1)

    def mask(self, subset) -> int:
        v = 0
        for s in subset:
            v |= 1 << self.universe.index(s)
        return v


@lru_cache(maxsize=64)
def _cached_table(universe, bound, param_domain, order, rank_items):
    return DefinabilityTable(universe, bound, param_domain, order, dict(rank_items))


def definability_table(
    universe: UniverseSlice,
    max_complexity: int,
    parameters_allowed: bool = False,
    order: bool = False,
    param_domain=None,
    param_rank=None,
) -> DefinabilityTable:
    """Memoised :class:`DefinabilityTable` constructor."""
    if param_domain is None:
        param_domain = range(len(universe)) if parameters_allowed else ()
    elif not parameters_allowed:
        param_domain = ()
    param_domain = tuple(sorted(param_domain))
    rank_items = tuple(sorted((param_rank or {}).items()))
    return _cached_table(universe, max_complexity, param_domain, order, rank_items)


def enumerate_definable(M: Structure, max_complexity: int, parameters_allowed: bool = False) -> list:
    """``(DefClass, subset)`` for each definable subset, ordered by bit pattern."""
    table = definability_table(M.universe, max_complexity, parameters_allowed, M.order)
    return [(table.least[v], table.subset(v)) for v in sorted(table.least)]


def find_definable_branch(tree, M: Structure, max_complexity: int, parameters_allowed: bool = True):
    """Least definable class whose extension is the node set of a branch of ``tree``."""
    from ..trees import branches

    for p in tree.payloads:
        if not isinstance(p, HFSet) or p not in M.universe:
            raise ValueError(f"node {p} is not an element of {M.universe.label}")
    table = definability_table(M.universe, max_complexity, parameters_allowed, M.order)
    targets = {table.mask(tree.payload_set(b)) for b in branches(tree)}
    found = [table.least[v] for v in targets if v in table.least]
    return min(found, key=lambda w: w.key) if found else None


# -- sentences and the cut experiment ------------------------------------


def _formulas(depth: int, c: int, order: bool):
    """Texts of canonical formulas with free variables among y1..y<depth>."""
    names = [f"y{i}" for i in range(1, depth + 1)]
    rels = ("mem", "eq", "lt") if order else ("mem", "eq")
    if c == 0:
        return [f"({r} {a} {b})" for r in rels for a in names for b in names]
    out = [f"(not {t})" for t in _formulas(depth, c - 1, order)]
    var = f"y{depth + 1}"
    inner = _formulas(depth + 1, c - 1, order)
    out += [f"({q} {var} {t})" for q in ("exists", "forall") for t in inner]
    for ca in range(c):
        lefts, rights = _formulas(depth, ca, order), _formulas(depth, c - 1 - ca, order)
        out += [f"({op} {a} {b})" for op, _ in _OPS for a in lefts for b in rights]
    return out


def sentences(max_complexity: int, order: bool = False, limit: int | None = None) -> list:
    """Canonical sentences of complexity at most the bound, sorted by (complexity, length, text)."""
    out = []
    for c in range(max_complexity + 1):
        level = sorted(_formulas(0, c, order), key=lambda t: (len(t), t))
        out += [(c, t) for t in level]
        if limit is not None and len(out) >= limit:
            return out[:limit]
    return out


MAX_CUT_UNIVERSE = 16


def cut_experiment(M: Structure, max_n: int, bound: int, parameters_allowed: bool = False) -> dict:
    """Largest ``n`` for which a definable class is a truth predicate for small sentences.

    Sentence number ``i`` in the canonical enumeration is coded by the
    ``i``-th universe element; a class ``C`` is a truth predicate for the
    sentences of complexity at most ``n`` when, for every such sentence
    with a code, its code lies in ``C`` exactly when the sentence holds.
    """
    size = len(M.universe)
    if size > MAX_CUT_UNIVERSE or max_n > 4:
        raise UniverseTooLarge("the cut experiment is limited to micro universes and n <= 4")
    listed = sentences(max_n, M.order, limit=size)
    truth = [evaluate(t, M) for _, t in listed]
    table = definability_table(M.universe, bound, parameters_allowed, M.order)
    levels = []
    best = None
    for n in range(max_n + 1):
        coded = [i for i, (c, _) in enumerate(listed) if c <= n]
        want = sum(1 << i for i in coded if truth[i])
        care = sum(1 << i for i in coded)
        hits = [w for v, w in table.least.items() if v & care == want]
        witness = min(hits, key=lambda w: w.key) if hits else None
        levels.append({"n": n, "coded_sentences": len(coded), "witness": witness})
        if witness is not None:
            best = n
    return {"largest": best, "levels": levels, "sentences": listed, "truth": truth}


def is_definably_stationary(subset, ordinals, clubs) -> bool:
    """``subset`` meets every club among ``clubs`` (sets of ordinals below the top).

    At finite height a club is any set containing the largest ordinal, so
    the test degenerates to membership of that ordinal when every such set
    is definable.
    """
    subset = set(subset)
    top = max(ordinals) if ordinals else None
    return all(subset & set(c) for c in clubs if top is not None and top in c)
