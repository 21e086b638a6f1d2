"""Global well-orders of the universe and the definable diamond recursion."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Callable

from .errors import NotDefinableWithinBound
from .hf import HFSet, UniverseSlice, ordinal, universe_slice
from .logic.definable import DefClass, definability_table
from .logic.semantics import Structure
from .seqcode import membership_relation, pair

__all__ = [
    "WellOrderWitness",
    "ackermann_order",
    "rank_refine",
    "hod_order",
    "hod_less",
    "hod_key",
    "DiamondEntry",
    "DiamondSeq",
    "diamond_sequence",
    "pair_key",
    "violates_all",
    "ordinal_code",
    "wellorder_from_diamond",
]


@dataclass(frozen=True)
class WellOrderWitness:
    """A strict order given by a comparator, optionally backed by a sort key."""

    kind: str
    less: Callable
    key: Callable | None = None
    parameters: dict = field(default_factory=dict, compare=False)

    def __call__(self, x, y) -> bool:
        return self.less(x, y)

    def sort(self, elements) -> list:
        if self.key is not None:
            return sorted(elements, key=self.key)

        def cmp(a, b):
            return -1 if self.less(a, b) else (1 if self.less(b, a) else 0)

        return sorted(elements, key=cmp_to_key(cmp))

    def positions(self, elements) -> dict:
        """Element -> position in the induced enumeration."""
        return {x: i for i, x in enumerate(self.sort(elements))}


def ackermann_order() -> WellOrderWitness:
    return WellOrderWitness("ackermann", lambda x, y: x < y, key=lambda x: x)


def rank_refine(less: WellOrderWitness) -> WellOrderWitness:
    """Rank first, then the given order within a rank."""
    base = less.key

    def refined(x, y):
        if x.rank != y.rank:
            return x.rank < y.rank
        return less.less(x, y)

    key = None if base is None else (lambda x: (x.rank, base(x)))
    return WellOrderWitness("rank-refined", refined, key, {"base": less.kind})


# -- ordinal definability order ------------------------------------------


def _ordinal_params(u: UniverseSlice):
    """Indices of the ordinals of ``u``, ranked by their value."""
    ords = u.ordinals()
    return tuple(u.index(e) for _, e in ords), {u.index(e): k for k, e in ords}


def hod_key(x: HFSet, M: Structure, max_complexity: int = 4) -> tuple:
    """(rank, least level defining ``{x}``, formula length, formula text, ordinal parameters)."""
    top = M.universe.n if M.universe.kind == "rank" else None
    if top is None:
        raise ValueError("ordinal definability needs a rank-slice universe")
    for theta in range(x.rank + 1, top + 1):
        u = universe_slice("rank", theta)
        domain, ranks = _ordinal_params(u)
        table = definability_table(u, max_complexity, True, False, domain, ranks)
        w = table.best_within(1 << u.index(x), max_complexity)
        if w is not None:
            return (x.rank, theta, len(w.text), w.text, w.param_key)
    raise NotDefinableWithinBound(
        f"{x} is not definable from ordinals in any V_theta up to {M.universe.label} within complexity {max_complexity}"
    )


def hod_order(M: Structure, max_complexity: int = 4) -> WellOrderWitness:
    cache: dict = {}

    def key(x):
        if x not in cache:
            cache[x] = hod_key(x, M, max_complexity)
        return cache[x]

    return WellOrderWitness("hod", lambda x, y: key(x) < key(y), key, {"bound": max_complexity})


def hod_less(x: HFSet, y: HFSet, M: Structure, max_complexity: int = 4) -> bool:
    if x.rank != y.rank:
        return x.rank < y.rank
    return hod_key(x, M, max_complexity) < hod_key(y, M, max_complexity)


# -- the diamond recursion -----------------------------------------------


@dataclass(frozen=True)
class DiamondEntry:
    theta: int
    guess: frozenset  # A_theta as a set of ordinals (ints)
    trace: tuple | None = None  # (A witness, C witness, selection key)

    def to_json(self) -> dict:
        out = {"theta": self.theta, "A": sorted(self.guess)}
        if self.trace is not None:
            a, c, _ = self.trace
            out["trace"] = {"A": a.to_json(), "C": c.to_json()}
        else:
            out["trace"] = None
        return out


@dataclass(frozen=True)
class DiamondSeq:
    entries: tuple
    universe: str = ""
    bound: int = 0
    parameters_allowed: bool = True

    def __post_init__(self):
        for e in self.entries:
            if any(not 0 <= a < e.theta for a in e.guess):
                raise ValueError(f"A_{e.theta} is not a subset of {e.theta}")

    def guess(self, theta: int) -> frozenset:
        for e in self.entries:
            if e.theta == theta:
                return e.guess
        return frozenset()

    def to_json(self) -> dict:
        return {
            "universe": self.universe,
            "bound": self.bound,
            "parameters": self.parameters_allowed,
            "entries": [e.to_json() for e in self.entries],
        }


def pair_key(a: DefClass, c: DefClass) -> tuple:
    """Selection order on (A, C) definition pairs."""
    return (
        max(a.complexity, c.complexity),
        len(a.text) + len(c.text),
        a.text,
        c.text,
        a.param_key,
        c.param_key,
    )


def violates_all(guess: frozenset, club: frozenset, earlier: dict) -> bool:
    """``guess`` differs from ``A_alpha`` below ``alpha`` at every ``alpha`` in ``club``."""
    return all(frozenset(a for a in guess if a < alpha) != earlier.get(alpha, frozenset()) for alpha in club)


def _ordinal_masks(u: UniverseSlice) -> dict:
    """Subsets of the ordinals of ``u`` as bitmasks -> sets of ints."""
    ords = u.ordinals()
    masks = {}
    for bits in range(1 << len(ords)):
        chosen = [ords[i] for i in range(len(ords)) if bits >> i & 1]
        masks[sum(1 << u.index(e) for _, e in chosen)] = frozenset(k for k, _ in chosen)
    return masks


def diamond_sequence(
    M: Structure,
    less: WellOrderWitness | None = None,
    max_complexity: int = 2,
    parameters_allowed: bool = True,
    index_set=None,
    shuffle_seed: int | None = None,
) -> DiamondSeq:
    """Run the recursion at every ordinal of ``M`` (or only those in ``index_set``).

    ``less`` ranks parameters for tie-breaking (default: Ackermann order).
    ``shuffle_seed`` permutes the candidate enumeration; the selection does
    not depend on it.
    """
    if M.universe.kind != "rank":
        raise ValueError("the diamond recursion needs a rank-slice universe")
    less = less or ackermann_order()
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None
    earlier: dict = {}
    entries = []
    for theta, _ in M.universe.ordinals():
        if theta == 0 or (index_set is not None and theta not in index_set):
            entries.append(DiamondEntry(theta, frozenset()))
            earlier[theta] = frozenset()
            continue
        u = universe_slice("rank", theta)
        ranks = less.positions(u.elements)
        table = definability_table(
            u, max_complexity, parameters_allowed, False, None, {u.index(e): r for e, r in ranks.items()}
        )
        ords = _ordinal_masks(u)
        least = table.least
        top_bit = 1 << u.index(ordinal(theta - 1))
        guesses = [v for v in ords if v in least]
        clubs = [v for v in ords if v in least and v & top_bit]
        candidates = [(va, vc) for va in guesses for vc in clubs]
        if rng is not None:
            rng.shuffle(candidates)
        best = None
        for va, vc in candidates:
            if not violates_all(ords[va], ords[vc], earlier):
                continue
            m = max(least[va].complexity, least[vc].complexity)
            a, c = table.best_within(va, m), table.best_within(vc, m)
            k = pair_key(a, c)
            if best is None or k < best[2]:
                best = (a, c, k, ords[va])
        if best is None:
            entries.append(DiamondEntry(theta, frozenset()))
            earlier[theta] = frozenset()
        else:
            a, c, k, guess = best
            entries.append(DiamondEntry(theta, guess, (a, c, k)))
            earlier[theta] = guess
    return DiamondSeq(tuple(entries), M.universe.label, max_complexity, parameters_allowed)


# -- well-order from a diamond sequence ----------------------------------


def ordinal_code(x: HFSet) -> frozenset:
    """The set of ordinals coding ``x``: packed membership pairs under the canonical bijection."""
    return frozenset(pair(i, j) for i, j in membership_relation(x).pairs)


def wellorder_from_diamond(D: DiamondSeq, M: Structure | None = None) -> WellOrderWitness:
    """Order by the first index at which the sequence guesses a code; uncoded sets come last."""
    first: dict = {}
    for e in sorted(D.entries, key=lambda e: e.theta):
        first.setdefault(e.guess, e.theta)

    def key(x):
        theta = first.get(ordinal_code(x))
        return (0, theta, x) if theta is not None else (1, 0, x)

    return WellOrderWitness("from-diamond", lambda x, y: key(x) < key(y), key, {"universe": D.universe})
