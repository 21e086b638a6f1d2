"""Finite-height leveled trees and the combinators built on them.

A :class:`Tree` is a forest of finitely many levels given by parent links.
Node ids are canonical: nodes are numbered level by level, siblings in
payload order, so every construction here is deterministic.
"""

from __future__ import annotations

import itertools
from math import prod

from .errors import InvalidTree, NotInclusionOrdered, UniverseTooLarge
from .hf import EMPTY, HFSet, UniverseSlice, kpair, ordinal, rank_slice_size, transitive_closure
from .seqcode import DigitSeq, binary_embed, encode_set, read_off, ternary_concat

__all__ = [
    "Tree",
    "payload_key",
    "check_tree",
    "check_inclusion_order",
    "product",
    "disjoint_sum",
    "sum_payload",
    "tilde",
    "prune",
    "choice_tree",
    "choice_level_size",
    "branches",
    "count_branches",
    "tilde_transfer",
    "MAX_NODES",
    "MAX_BRANCHES",
]

MAX_NODES = 200_000
MAX_BRANCHES = 1_000_000


def payload_key(p):
    """Total order on node payloads of mixed kinds."""
    if isinstance(p, HFSet):
        return (0, p._key)
    if hasattr(p, "sort_key"):
        return (1, type(p).__name__, p.sort_key())
    if isinstance(p, tuple):
        return (2, tuple(payload_key(x) for x in p))
    if isinstance(p, str):
        return (3, p)
    if isinstance(p, int):
        return (4, p)
    raise TypeError(f"unsupported payload {p!r}")


class Tree:
    """Immutable leveled forest.

    Build with :meth:`from_parents` (payload -> parent payload) or
    :meth:`from_order`; the constructor expects already canonical arrays.
    """

    __slots__ = ("payloads", "parents", "heights", "children", "kind", "_index", "_levels")

    def __init__(self, payloads, parents, kind="label"):
        self.payloads = tuple(payloads)
        self.parents = tuple(parents)
        self.kind = kind
        n = len(self.payloads)
        heights = []
        kids = [[] for _ in range(n)]
        for i, par in enumerate(self.parents):
            if par is None:
                heights.append(0)
            else:
                if not 0 <= par < i:
                    raise InvalidTree(f"node {i} has parent {par} out of canonical order")
                heights.append(heights[par] + 1)
                kids[par].append(i)
        self.heights = tuple(heights)
        self.children = tuple(tuple(k) for k in kids)
        self._index = {p: i for i, p in enumerate(self.payloads)}
        if len(self._index) != n:
            raise InvalidTree("duplicate node payloads")
        levels = [[] for _ in range(max(heights) + 1 if heights else 0)]
        for i, h in enumerate(heights):
            levels[h].append(i)
        self._levels = tuple(tuple(lv) for lv in levels)

    @classmethod
    def from_parents(cls, parent_of: dict, kind="label") -> "Tree":
        """Canonicalise a ``{payload: parent payload or None}`` map."""
        by_parent: dict = {}
        for node, par in parent_of.items():
            if par is not None and par not in parent_of:
                raise InvalidTree(f"parent {par!r} of {node!r} is not a node")
            by_parent.setdefault(par, []).append(node)
        payloads, parents = [], []
        level = [(None, n) for n in sorted(by_parent.get(None, []), key=payload_key)]
        while level:
            first = len(payloads)
            for par_id, node in level:
                payloads.append(node)
                parents.append(par_id)
            level = [
                (i, kid)
                for i in range(first, len(payloads))
                for kid in sorted(by_parent.get(payloads[i], ()), key=payload_key)
            ]
        if len(payloads) != len(parent_of):
            raise InvalidTree("parent links contain a cycle")
        return cls(payloads, parents, kind)

    @classmethod
    def from_order(cls, nodes, less, kind="label") -> "Tree":
        """Build from a strict order; predecessors of each node must be a chain."""
        nodes = list(nodes)
        preds = {x: [y for y in nodes if y != x and less(y, x)] for x in nodes}
        parent_of = {}
        for x, ps in preds.items():
            for a, b in itertools.combinations(ps, 2):
                if not (less(a, b) or less(b, a)):
                    raise InvalidTree(f"predecessors of {x!r} are not a chain")
            parent_of[x] = max(ps, key=lambda y: len(preds[y])) if ps else None
        tree = cls.from_parents(parent_of, kind)
        for x, ps in preds.items():
            if len(ps) != tree.height(tree.id_of(x)):
                raise InvalidTree(f"order below {x!r} is not a tree order")
        return tree

    def __len__(self):
        return len(self.payloads)

    def __eq__(self, other):
        return isinstance(other, Tree) and self.payloads == other.payloads and self.parents == other.parents

    def __hash__(self):
        return hash((self.payloads, self.parents))

    def __repr__(self):
        return f"Tree({len(self)} nodes, height {self.max_height}, kind={self.kind!r})"

    @property
    def max_height(self) -> int:
        """Highest occupied level, -1 for the empty tree."""
        return len(self._levels) - 1

    @property
    def levels(self) -> tuple:
        return self._levels

    def level(self, alpha: int) -> tuple:
        if 0 <= alpha < len(self._levels):
            return self._levels[alpha]
        return ()

    def id_of(self, payload) -> int:
        return self._index[payload]

    def __contains__(self, payload):
        return payload in self._index

    def parent(self, i):
        return self.parents[i]

    def height(self, i: int) -> int:
        return self.heights[i]

    def path(self, i: int) -> tuple:
        """Node ids from level 0 up to and including ``i``."""
        out = []
        while i is not None:
            out.append(i)
            i = self.parents[i]
        return tuple(reversed(out))

    def ancestor_at(self, i: int, alpha: int) -> int:
        while self.heights[i] > alpha:
            i = self.parents[i]
        return i

    def is_below(self, i: int, j: int) -> bool:
        """Strict tree order: ``i`` is a proper predecessor of ``j``."""
        return self.heights[i] < self.heights[j] and self.ancestor_at(j, self.heights[i]) == i

    def subtree_of(self, keep) -> "Tree":
        """Restriction to a downward closed set of node ids."""
        keep = set(keep)
        parent_of = {}
        for i in keep:
            par = self.parents[i]
            if par is not None and par not in keep:
                raise InvalidTree("kept set is not downward closed")
            parent_of[self.payloads[i]] = None if par is None else self.payloads[par]
        return Tree.from_parents(parent_of, self.kind)

    def payload_set(self, ids) -> frozenset:
        return frozenset(self.payloads[i] for i in ids)


def check_tree(tree: Tree) -> None:
    """Raise :class:`InvalidTree` unless the tree invariants hold."""
    for i, par in enumerate(tree.parents):
        if par is None:
            if tree.heights[i] != 0:
                raise InvalidTree(f"root {i} off level 0")
        elif tree.heights[i] != tree.heights[par] + 1:
            raise InvalidTree(f"height of {i} disagrees with its predecessor chain")
        if len(tree.path(i)) != tree.heights[i] + 1:
            raise InvalidTree(f"chain below {i} has wrong order type")
    for alpha, lv in enumerate(tree.levels):
        if not lv:
            raise InvalidTree(f"level {alpha} is empty below an occupied level")


def check_inclusion_order(tree: Tree) -> None:
    """Raise unless payloads are sets and the tree order is proper inclusion."""
    for p in tree.payloads:
        if not isinstance(p, HFSet):
            raise NotInclusionOrdered(f"payload {p!r} is not a set")
    n = len(tree)
    for i in range(n):
        pi = tree.payloads[i]
        for j in range(n):
            if i == j:
                continue
            proper = pi.issubset(tree.payloads[j]) and pi is not tree.payloads[j]
            if proper != tree.is_below(i, j):
                raise NotInclusionOrdered(f"order between nodes {i} and {j} is not inclusion")


def product(t1: Tree, t2: Tree) -> Tree:
    """Pairs of equal-height nodes, ordered coordinatewise."""
    parent_of = {}
    for alpha in range(min(len(t1.levels), len(t2.levels))):
        for i in t1.level(alpha):
            for j in t2.level(alpha):
                node = (t1.payloads[i], t2.payloads[j])
                if alpha == 0:
                    parent_of[node] = None
                else:
                    pi, pj = t1.parents[i], t2.parents[j]
                    parent_of[node] = (t1.payloads[pi], t2.payloads[pj])
    return Tree.from_parents(parent_of, kind="pair")


_ZERO, _ONE = ordinal(0), ordinal(1)


def sum_payload(p: HFSet, q: HFSet) -> HFSet:
    """``(p x {0}) u (q x {1})`` with Kuratowski pairs."""
    return HFSet([kpair(x, _ZERO) for x in p] + [kpair(y, _ONE) for y in q])


def disjoint_sum(t1: Tree, t2: Tree):
    """Inclusion-ordered copy of ``product(t1, t2)`` and the isomorphism onto it."""
    check_inclusion_order(t1)
    check_inclusion_order(t2)
    prod_tree = product(t1, t2)
    mapping = {node: sum_payload(*node) for node in prod_tree.payloads}
    parent_of = {}
    for i, node in enumerate(prod_tree.payloads):
        par = prod_tree.parents[i]
        parent_of[mapping[node]] = None if par is None else mapping[prod_tree.payloads[par]]
    return Tree.from_parents(parent_of, kind="hf"), mapping


def _bijections(s: HFSet):
    closure = transitive_closure(s)
    for perm in itertools.permutations(range(len(closure))):
        yield dict(zip(closure, perm))


def tilde(tree: Tree, exhaustive: bool = False, budget: int = MAX_NODES) -> Tree:
    """Subtree of binary sequences coding the predecessor chains of ``tree``.

    By default each chain member is coded with its Ackermann enumeration;
    ``exhaustive`` ranges over every bijection for every chain member.
    """
    check_inclusion_order(tree)
    blocks_for: dict = {}
    if exhaustive:
        total = 0
        for s in tree.payloads:
            k = len(transitive_closure(s))
            total += prod(range(1, k + 1))
            if total > budget:
                raise UniverseTooLarge("exhaustive bijection count exceeds the node budget")
        for s in tree.payloads:
            blocks_for[s] = sorted({encode_set(s, g) for g in _bijections(s)}, key=DigitSeq.sort_key)
    else:
        for s in tree.payloads:
            blocks_for[s] = [encode_set(s)]

    # codes[i]: ternary codes of the chain ending at node i
    codes: list = [None] * len(tree)
    parent_of = {}
    count = 0
    for i, s in enumerate(tree.payloads):
        par = tree.parents[i]
        seps = [ternary_concat([b]) for b in blocks_for[s]]
        if par is None:
            codes[i] = [(None, t) for t in seps]
        else:
            codes[i] = [(p, p + t) for _, p in codes[par] for t in seps]
        count += len(codes[i])
        if count > budget:
            raise UniverseTooLarge("tilde tree exceeds the node budget")
        for p, t in codes[i]:
            parent_of[binary_embed(t)] = None if p is None else binary_embed(p)
    return Tree.from_parents(parent_of, kind="seq")


def prune(tree: Tree) -> Tree:
    """Keep nodes with successors on every level up to the top level."""
    top = tree.max_height
    alive = set()
    for i in tree.level(top):
        alive.update(tree.path(i))
    return tree.subtree_of(alive)


def choice_level_size(universe: UniverseSlice, alpha: int) -> int:
    size = len(_rank_prefix(universe, alpha))
    return prod(len(x) for x in universe.elements[:size] if x)


def _rank_prefix(universe: UniverseSlice, alpha: int) -> tuple:
    return universe.elements[: rank_slice_size(alpha)]


def choice_tree(universe: UniverseSlice, alpha_max: int, budget: int = 50_000) -> Tree:
    """Level ``alpha`` holds the choice functions on V_alpha as graphs.

    The empty set is sent to itself so that every level is a total function.
    """
    if universe.kind != "rank":
        raise ValueError("choice_tree needs a rank slice")
    if alpha_max > universe.n:
        raise ValueError(f"alpha_max {alpha_max} exceeds the slice rank {universe.n}")
    total = 0
    for alpha in range(alpha_max + 1):
        total += choice_level_size(universe, alpha)
        if total > budget:
            raise UniverseTooLarge(f"choice tree up to level {alpha} exceeds {budget} nodes")

    parent_of = {EMPTY: None}
    frontier = [(EMPTY, ())]  # (graph, its pairs)
    done = 0
    for alpha in range(1, alpha_max + 1):
        elems = _rank_prefix(universe, alpha)
        new = elems[done:]
        done = len(elems)
        options = [[kpair(x, y) for y in (x.children or (EMPTY,))] for x in new]
        nxt = []
        for graph, pairs in frontier:
            for combo in itertools.product(*options):
                allp = pairs + combo
                g = HFSet(allp)
                parent_of[g] = graph
                nxt.append((g, allp))
        frontier = nxt
    return Tree.from_parents(parent_of, kind="hf")


def count_branches(tree: Tree) -> int:
    top = tree.max_height
    return len(tree.level(top)) if top >= 0 else 0


def branches(tree: Tree, limit: int = MAX_BRANCHES) -> list:
    """All root-to-top paths, as tuples of node ids in lexicographic order."""
    if len(tree) > MAX_NODES:
        raise UniverseTooLarge(f"{len(tree)} nodes exceed the enumeration guard")
    if count_branches(tree) > limit:
        raise UniverseTooLarge("branch count exceeds the enumeration guard")
    top = tree.max_height
    return sorted(tree.path(i) for i in tree.level(top))


def tilde_transfer(coded: Tree, branch) -> tuple:
    """Read the coded set off each node of a branch of a tilde tree."""
    return tuple(read_off(coded.payloads[i]) for i in branch)
