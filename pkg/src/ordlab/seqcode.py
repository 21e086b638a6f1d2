"""Coding sets as binary sequences and back.

``encode_set`` copies the membership relation of TC({s}) onto an initial
segment of the naturals, packs the pairs with the Goedel pairing and
returns the characteristic sequence of the packed set.  ``decode_set`` is
the transitive-collapse decoder; inputs that do not describe a well-founded
extensional relation with a top element decode to the empty set.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import InvalidBijection, NotAChain, NotInImage
from .hf import EMPTY, HFSet, transitive_closure

__all__ = [
    "DigitSeq",
    "CodedRelation",
    "pair",
    "unpair",
    "membership_relation",
    "encode_set",
    "decode_set",
    "decode_relation",
    "ternary_concat",
    "split_blocks",
    "binary_embed",
    "binary_unembed",
    "chain_code",
    "read_off",
]


@dataclass(frozen=True, order=False)
class DigitSeq:
    """A finite digit sequence over ``{0, .., base-1}``."""

    digits: tuple
    base: int = 2

    def __post_init__(self):
        digits = tuple(self.digits)
        object.__setattr__(self, "digits", digits)
        for d in digits:
            if not (isinstance(d, int) and 0 <= d < self.base):
                raise ValueError(f"digit {d!r} outside base {self.base}")

    @classmethod
    def parse(cls, text: str, base: int = 2) -> "DigitSeq":
        text = text.strip()
        if text in ("", "-", "e", "ε"):
            return cls((), base)
        if not text.isdigit():
            raise ValueError(f"{text!r} is not a digit string")
        return cls(tuple(int(ch) for ch in text), base)

    def __len__(self):
        return len(self.digits)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return DigitSeq(self.digits[i], self.base)
        return self.digits[i]

    def __iter__(self):
        return iter(self.digits)

    def __add__(self, other: "DigitSeq") -> "DigitSeq":
        return DigitSeq(self.digits + tuple(other), max(self.base, getattr(other, "base", 0)))

    def is_prefix_of(self, other: "DigitSeq") -> bool:
        """End-extension order: ``self`` is an initial segment of ``other``."""
        return len(self.digits) <= len(other.digits) and other.digits[: len(self.digits)] == self.digits

    def sort_key(self):
        return (len(self.digits), self.digits)

    def __str__(self):
        return "".join(map(str, self.digits))

    def __repr__(self):
        return f"DigitSeq({str(self)!r}, base={self.base})"


@dataclass(frozen=True)
class CodedRelation:
    """A binary relation on ``{0, .., bound-1}``."""

    pairs: frozenset
    bound: int

    def __post_init__(self):
        for i, j in self.pairs:
            if not (0 <= i < self.bound and 0 <= j < self.bound):
                raise ValueError(f"pair {(i, j)} outside bound {self.bound}")


def pair(a: int, b: int) -> int:
    """Goedel pairing: rank of ``(a, b)`` among pairs sorted by ``(max, a, b)``."""
    m = max(a, b)
    if a < m:
        return m * m + a
    return m * m + m + b


def unpair(n: int) -> tuple:
    m = isqrt(n)
    r = n - m * m
    if r < m:
        return (r, m)
    return (m, r - m)


def _default_bijection(s: HFSet) -> dict:
    return {x: i for i, x in enumerate(transitive_closure(s))}


def membership_relation(s: HFSet, g: dict | None = None) -> CodedRelation:
    """Image of the membership relation on TC({s}) under ``g``."""
    closure = transitive_closure(s)
    if g is None:
        g = {x: i for i, x in enumerate(closure)}
    else:
        if set(g) != set(closure) or sorted(g.values()) != list(range(len(closure))):
            raise InvalidBijection("g must biject TC({s}) onto 0..kappa_s-1")
    pairs = frozenset((g[x], g[y]) for y in closure for x in y.children)
    return CodedRelation(pairs, len(closure))


def encode_set(s: HFSet, g: dict | None = None) -> DigitSeq:
    """Characteristic sequence of the paired membership relation.

    The sequence has length ``1 + max`` of the packed pair codes (zero when
    there are none) rather than ``kappa_s``: finite closures produce pair
    codes beyond ``kappa_s``.
    """
    rel = membership_relation(s, g)
    codes = {pair(i, j) for i, j in rel.pairs}
    if not codes:
        return DigitSeq(())
    digits = [0] * (max(codes) + 1)
    for c in codes:
        digits[c] = 1
    return DigitSeq(tuple(digits))


def decode_relation(pairs) -> HFSet:
    """Top element of the transitive collapse, or the empty set."""
    members: dict = {}
    for i, j in pairs:
        members.setdefault(i, set())
        members.setdefault(j, set()).add(i)
    if not members:
        return EMPTY
    # top: the unique node that is not a member of anything
    nonmembers = set(members)
    for i, j in pairs:
        nonmembers.discard(i)
    if len(nonmembers) != 1:
        return EMPTY
    (top,) = nonmembers

    # collapse in dependency order; a cycle means the relation is ill-founded
    image: dict = {}
    state: dict = {}
    for start in members:
        if start in image:
            continue
        stack = [(start, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                image[node] = HFSet(image[m] for m in members[node])
                state[node] = 2
                continue
            if state.get(node) == 2:
                continue
            if state.get(node) == 1:
                return EMPTY
            state[node] = 1
            stack.append((node, True))
            for m in members[node]:
                if state.get(m) == 1:
                    return EMPTY
                if state.get(m) != 2:
                    stack.append((m, False))

    # extensional iff the collapse is injective
    if len(set(image.values())) != len(image):
        return EMPTY
    # every node must lie below the top
    reached = {top}
    stack = [top]
    while stack:
        for m in members[stack.pop()]:
            if m not in reached:
                reached.add(m)
                stack.append(m)
    if len(reached) != len(members):
        return EMPTY
    return image[top]


def decode_set(x: DigitSeq) -> HFSet:
    return decode_relation([unpair(t) for t, d in enumerate(x) if d == 1])


def ternary_concat(blocks) -> DigitSeq:
    digits = []
    for block in blocks:
        for d in block:
            if d not in (0, 1):
                raise ValueError("blocks must be binary")
            digits.append(d)
        digits.append(2)
    return DigitSeq(tuple(digits), 3)


def split_blocks(t: DigitSeq) -> list:
    """Maximal binary blocks, each terminated by a 2."""
    blocks, current = [], []
    for d in t:
        if d == 2:
            blocks.append(DigitSeq(tuple(current)))
            current = []
        else:
            current.append(d)
    if current:
        raise ValueError("sequence does not end with a separator")
    return blocks


_EMBED = {0: (0, 0), 1: (0, 1), 2: (1, 0)}
_UNEMBED = {v: k for k, v in _EMBED.items()}


def binary_embed(t: DigitSeq) -> DigitSeq:
    out = []
    for d in t:
        out.extend(_EMBED[d])
    return DigitSeq(tuple(out))


def binary_unembed(b: DigitSeq) -> DigitSeq:
    if len(b) % 2:
        raise NotInImage("odd length")
    out = []
    for i in range(0, len(b), 2):
        pr = (b[i], b[i + 1])
        if pr not in _UNEMBED:
            raise NotInImage(f"digit pair 11 at offset {i}")
        out.append(_UNEMBED[pr])
    return DigitSeq(tuple(out), 3)


def chain_code(chain, gs=None) -> DigitSeq:
    """Embedded block concatenation of the codes of a subset chain.

    ``gs`` optionally supplies one bijection per chain member.
    """
    chain = list(chain)
    for a, b in zip(chain, chain[1:]):
        if not a.issubset(b):
            raise NotAChain(f"{a} is not a subset of {b}")
    if gs is None:
        gs = [None] * len(chain)
    blocks = [encode_set(s, g) for s, g in zip(chain, gs)]
    return binary_embed(ternary_concat(blocks))


def read_off(code: DigitSeq) -> HFSet:
    """Decode the last maximal binary block of a chain code."""
    blocks = split_blocks(binary_unembed(code))
    if not blocks:
        return EMPTY
    return decode_set(blocks[-1])
