"""The level-indexed theory of a tree and models of its finite pieces.

Each level contributes the positive atomic diagram of the tree up to that
level and the disjunction "the new constant lies above some node of this
level".  A finite piece is satisfied by interpreting the constant as any
node strictly above every requested level.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidTree
from .trees import Tree, check_tree


@dataclass(frozen=True)
class CompactnessTheory:
    tree: Tree
    sigma: tuple  # sigma[alpha]: frozenset of (i, j) with i below j, both of height <= alpha
    phi: tuple  # phi[alpha]: node ids of level alpha
    tree_order: bool

    def facts(self, alpha: int) -> frozenset:
        if alpha < len(self.sigma):
            return self.sigma[alpha]
        return self.sigma[-1] if self.sigma else frozenset()


def compactness_theory(tree: Tree) -> CompactnessTheory:
    try:
        check_tree(tree)
        ok = True
    except InvalidTree:
        ok = False
    sigma = []
    facts = set()
    for alpha, level in enumerate(tree.levels):
        for j in level:
            for i in tree.path(j)[:-1]:
                facts.add((i, j))
        sigma.append(frozenset(facts))
    return CompactnessTheory(tree, tuple(sigma), tuple(tree.levels), ok)


def satisfies(theory: CompactnessTheory, c: int, levels) -> bool:
    """Does interpreting the constant as node ``c`` model the requested pieces?

    The atomic diagram holds in the tree itself, so only the disjunctions
    need checking: some node of each requested level must lie below ``c``.
    """
    tree = theory.tree
    for alpha in levels:
        if alpha >= len(theory.phi) or not any(tree.is_below(p, c) for p in theory.phi[alpha]):
            return False
    return True


def subtheory_model(theory: CompactnessTheory, levels):
    """A node modelling the pieces for ``levels``, or ``None``."""
    tree = theory.tree
    levels = sorted(set(levels))
    need = levels[-1] + 1 if levels else 0
    candidates = tree.level(need)
    return candidates[0] if candidates else None


def predecessor_chain(tree: Tree, c: int) -> tuple:
    """Nodes strictly below ``c``: the partial branch a model determines."""
    return tree.path(c)[:-1]
