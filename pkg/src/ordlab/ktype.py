"""Tree of depth-k types, a finite stand-in for the tree of theories.

The depth-0 type of a tuple over a parameter set is its atomic diagram:
the true membership and equality atoms with at least one tuple entry.  The
depth-(j+1) type is the set of depth-j types of all one-point extensions.
Types of the distinguished element ``s`` over V_alpha form level alpha;
a node lies below another exactly when forgetting the extra parameters
turns the higher type into the lower one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DepthGuard, UniverseTooLarge
from .hf import UniverseSlice, rank_slice_size
from .trees import Tree

MAX_DEPTH = 3
WORK_BUDGET = 20_000_000


@dataclass(frozen=True)
class KType:
    level: int
    depth: int
    data: tuple

    def sort_key(self):
        return (self.level, self.depth, self.data)

    def __str__(self):
        return f"T{self.level}[{_show(self.data, self.depth)}]"


def _show(data, depth):
    if depth == 0:
        return ",".join(f"{r}({_term(a)},{_term(b)})" for r, a, b in data)
    return "{" + ";".join("[" + _show(d, depth - 1) + "]" for d in data) + "}"


def _term(t):
    kind, i = t
    return f"v{i}" if kind == "v" else f"#{i}"


def atomic_diagram(elems, params) -> tuple:
    """True atoms among ``elems`` (variables) and ``params`` ((code, set) pairs)."""
    terms = [(("v", i), e) for i, e in enumerate(elems)]
    everything = terms + [(("p", code), p) for code, p in params]
    atoms = []
    for t, a in terms:
        for u, b in everything:
            if a in b:
                atoms.append(("mem", t, u))
            if b in a:
                atoms.append(("mem", u, t))
            if a is b:
                atoms.append(("eq", t, u))
                atoms.append(("eq", u, t))
    return tuple(sorted(set(atoms)))


def depth_type(depth: int, elems, params, domain) -> tuple:
    if depth == 0:
        return atomic_diagram(elems, params)
    return tuple(sorted({depth_type(depth - 1, elems + [x], params, domain) for x in domain}))


def restrict(data: tuple, depth: int, keep: frozenset) -> tuple:
    """Forget every parameter whose code is not in ``keep``."""
    if depth == 0:
        return tuple(
            a for a in data if all(t[0] == "v" or t[1] in keep for t in a[1:])
        )
    return tuple(sorted({restrict(d, depth - 1, keep) for d in data}))


def ktype_tree(universe: UniverseSlice, depth_k: int, beta: int, alpha_max: int) -> Tree:
    if depth_k > MAX_DEPTH:
        raise DepthGuard(f"depth {depth_k} exceeds {MAX_DEPTH}")
    if universe.kind != "rank" or beta > universe.n:
        raise ValueError(f"beta {beta} exceeds the rank slice")
    if alpha_max >= beta:
        raise ValueError("alpha_max must be below beta")
    domain = universe.elements[: rank_slice_size(beta)]
    work = len(domain) ** (depth_k + 1) * (alpha_max + 1)
    if work > WORK_BUDGET:
        raise UniverseTooLarge(f"type computation needs about {work} steps")

    parent_of = {}
    previous = {}  # restricted data -> node at the level below
    for alpha in range(alpha_max + 1):
        size = rank_slice_size(alpha)
        params = [(p.code, p) for p in domain[:size]]
        below = frozenset(p.code for p in domain[: rank_slice_size(alpha - 1)]) if alpha else None
        current = {}
        for s in domain[size:]:
            data = depth_type(depth_k, [s], params, domain)
            if data in current:
                continue
            node = KType(alpha, depth_k, data)
            current[data] = node
            parent_of[node] = previous[restrict(data, depth_k, below)] if alpha else None
        previous = current
    return Tree.from_parents(parent_of, kind="ktype")
