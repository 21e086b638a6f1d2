"""Tree generators used by the CLI, the report and the test suites."""

from __future__ import annotations

import itertools
import random

from .hf import EMPTY, HFSet, ack_decode, ordinal
from .seqcode import DigitSeq
from .trees import Tree

__all__ = ["full_binary_tree", "chain_tree", "random_tree", "random_inclusion_tree"]


def full_binary_tree(height: int) -> Tree:
    """All binary sequences of length at most ``height``."""
    parent_of = {}
    for n in range(height + 1):
        for digits in itertools.product((0, 1), repeat=n):
            parent_of[DigitSeq(digits)] = DigitSeq(digits[:-1]) if n else None
    return Tree.from_parents(parent_of, kind="seq")


def chain_tree(height: int) -> Tree:
    """The ordinals ``0 .. height`` ordered by inclusion."""
    parent_of = {ordinal(0): None}
    for k in range(1, height + 1):
        parent_of[ordinal(k)] = ordinal(k - 1)
    return Tree.from_parents(parent_of, kind="hf")


def _shape(rng: random.Random, max_height: int, max_nodes: int, min_height: int = 0):
    """Parent index list of a random tree with one root and every level occupied."""
    height = rng.randint(min(min_height, max_height), max_height)
    parents = [None]
    levels = [[0]]
    for _ in range(height):
        if len(parents) >= max_nodes:
            break
        room = max_nodes - len(parents)
        width = rng.randint(1, min(room, 2 * len(levels[-1]) + 1))
        row = []
        for _ in range(width):
            row.append(len(parents))
            parents.append(rng.choice(levels[-1]))
        levels.append(row)
    return parents


def random_tree(rng: random.Random, max_height: int = 5, max_nodes: int = 40, min_height: int = 0) -> Tree:
    """Random single-rooted tree with integer labels."""
    parents = _shape(rng, max_height, max_nodes, min_height)
    parent_of = {i: par for i, par in enumerate(parents)}
    return Tree.from_parents(parent_of, kind="label")


def random_inclusion_tree(
    rng: random.Random, max_height: int = 4, max_nodes: int = 12, min_height: int = 0
) -> Tree:
    """Random tree of HF sets whose tree order is proper inclusion.

    Each node adds one or two fresh members to its parent, so two nodes are
    comparable under inclusion exactly when one lies on the other's path.
    """
    parents = _shape(rng, max_height, max_nodes, min_height)
    fresh = itertools.count(1)
    payloads: list = []
    for par in parents:
        base = EMPTY if par is None else payloads[par]
        if par is None and rng.random() < 0.5:
            payloads.append(EMPTY)
            continue
        extra = [ack_decode(next(fresh)) for _ in range(rng.randint(1, 2))]
        payloads.append(HFSet(list(base) + extra))
    parent_of = {p: (None if par is None else payloads[par]) for p, par in zip(payloads, parents)}
    return Tree.from_parents(parent_of, kind="hf")
