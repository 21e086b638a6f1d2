"""The right-of relation on binary sequences and the induced 2-coloring.

Heights default to sequence length; pass the reference tree to use its
levels instead (they differ for coded trees, whose nodes are not full
binary sequences of every length).
"""

from __future__ import annotations

import itertools

from .errors import EqualNodes, NotHeightInjective, NotMonochromatic
from .seqcode import DigitSeq
from .trees import Tree

__all__ = [
    "right_of",
    "color_pair",
    "refine_height_injective",
    "extract_branch",
    "eventually_below",
    "is_monochromatic",
]


def _height(p, tree):
    return len(p) if tree is None else tree.height(tree.id_of(p))


def right_of(p: DigitSeq, q: DigitSeq) -> bool:
    """``p`` strictly extends ``q`` or has the larger digit where they first differ."""
    if p == q:
        raise EqualNodes(f"{p} compared with itself")
    for a, b in zip(p, q):
        if a != b:
            return a > b
    return len(p) > len(q)


def color_pair(p: DigitSeq, q: DigitSeq, tree: Tree | None = None) -> int:
    """0 when the higher node is to the right of the lower one, else 1."""
    if p == q:
        raise EqualNodes(f"{p} paired with itself")
    hp, hq = _height(p, tree), _height(q, tree)
    if hp == hq:
        return 1
    hi, lo = (p, q) if hp > hq else (q, p)
    return 0 if right_of(hi, lo) else 1


def is_monochromatic(family, value: int, tree: Tree | None = None) -> bool:
    return all(color_pair(a, b, tree) == value for a, b in itertools.combinations(family, 2))


def _canonical(family, tree):
    return sorted(set(family), key=lambda p: (_height(p, tree), p.digits))


def refine_height_injective(family, tree: Tree | None = None) -> tuple:
    """One member per occupied level, the first in canonical order."""
    chosen = {}
    for p in _canonical(family, tree):
        chosen.setdefault(_height(p, tree), p)
    return tuple(chosen[h] for h in sorted(chosen))


def eventually_below(family, tree: Tree) -> set:
    """Node ids ``p`` such that, past some level, every family member lies on or above ``p``."""
    members = [tree.id_of(p) for p in family]
    result = set()
    for cut in range(tree.max_height + 1):
        tail = [h for h in members if tree.height(h) >= cut]
        if not tail:
            break
        for p in range(len(tree)):
            if all(p == h or tree.is_below(p, h) for h in tail):
                result.add(p)
    return result


def extract_branch(family, value: int, tree: Tree):
    """The branch determined by a height-injective monochromatic family.

    Returns node ids from level 0 to the top level, or ``None`` when the
    eventually-below set is not a full-height branch.
    """
    family = _canonical(family, tree)
    heights = [_height(p, tree) for p in family]
    if len(set(heights)) != len(heights):
        raise NotHeightInjective("two family members share a level")
    if not is_monochromatic(family, value, tree):
        raise NotMonochromatic(f"family is not monochromatic with color {value}")
    if not family:
        return None
    below = eventually_below(family, tree)
    ordered = sorted(below, key=tree.height)
    for a, b in zip(ordered, ordered[1:]):
        if not tree.is_below(a, b):
            return None
    if not ordered or tree.height(ordered[0]) != 0 or tree.height(ordered[-1]) != tree.max_height:
        return None
    return tuple(ordered)
