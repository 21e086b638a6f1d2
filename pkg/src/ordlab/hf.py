"""Hereditarily finite sets in canonical form.

An :class:`HFSet` is an interned, immutable node whose children are kept
in increasing Ackermann order.  Ordering between sets is the Ackermann
order, computed structurally so that sets whose index would be an
astronomically large integer (Kuratowski pairs of large sets, graphs of
choice functions) can still be compared and hashed cheaply.
"""

from __future__ import annotations

import json
import threading
import weakref
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import LiteralError, UniverseTooLarge

__all__ = [
    "HFSet",
    "EMPTY",
    "UniverseSlice",
    "ack_encode",
    "ack_decode",
    "rank",
    "transitive_closure",
    "universe_slice",
    "as_ordinal",
    "ordinal",
    "kpair",
    "parse_literal",
    "parse_json",
    "parse_universe_spec",
    "rank_slice_size",
]

#: children must have indices below this for the parent index to be built
INDEX_BITS = 1 << 20
#: rank slices beyond V_5 are never materialised
MAX_RANK_SLICE = 5
#: ackermann prefixes longer than this are refused
MAX_PREFIX = 1 << 16

_intern_lock = threading.Lock()
_interned: "weakref.WeakValueDictionary[tuple, HFSet]" = weakref.WeakValueDictionary()


class HFSet:
    """A hereditarily finite set.

    Build one from any iterable of HFSets; duplicates are dropped and the
    children sorted.  Equal sets are the same object.
    """

    __slots__ = ("children", "_key", "_hash", "_rank", "_code", "_members", "__weakref__")

    def __new__(cls, members=()):
        children = tuple(sorted(set(members)))
        return cls._canonical(children)

    @classmethod
    def _canonical(cls, children: tuple) -> "HFSet":
        ids = tuple(id(c) for c in children)
        obj = _interned.get(ids)
        if obj is not None:
            return obj
        with _intern_lock:
            obj = _interned.get(ids)
            if obj is None:
                obj = object.__new__(cls)
                obj.children = children
                obj._key = tuple(c._key for c in reversed(children))
                obj._hash = hash(tuple(c._hash for c in children))
                obj._rank = children[-1]._rank + 1 if children else 0
                obj._code = None
                obj._members = None
                _interned[ids] = obj
        return obj

    def __reduce__(self):
        return (HFSet, (self.children,))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other

    def __ne__(self, other):
        return self is not other

    def __lt__(self, other):
        return self._key < other._key

    def __le__(self, other):
        return self is other or self._key < other._key

    def __gt__(self, other):
        return other._key < self._key

    def __ge__(self, other):
        return self is other or other._key < self._key

    def __len__(self):
        return len(self.children)

    def __iter__(self):
        return iter(self.children)

    def __bool__(self):
        return bool(self.children)

    def __contains__(self, item):
        return item in self.members

    @property
    def members(self) -> frozenset:
        if self._members is None:
            self._members = frozenset(self.children)
        return self._members

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def code(self) -> int:
        if self._code is None:
            total = 0
            for child in self.children:
                c = child.code
                if c >= INDEX_BITS:
                    raise UniverseTooLarge(f"Ackermann index needs more than {INDEX_BITS} bits")
                total |= 1 << c
            self._code = total
        return self._code

    def issubset(self, other: "HFSet") -> bool:
        if len(self.children) > len(other.children):
            return False
        m = other.members
        return all(c in m for c in self.children)

    def to_literal(self) -> str:
        return "{" + ",".join(c.to_literal() for c in self.children) + "}"

    def to_json(self):
        return [c.to_json() for c in self.children]

    def __str__(self):
        return self.to_literal()

    def __repr__(self):
        return f"HFSet({self.to_literal()})"


EMPTY = HFSet()


def ack_encode(s: HFSet) -> int:
    """Ackermann index: the sum of ``2**ack_encode(x)`` over members ``x``."""
    return s.code


@lru_cache(maxsize=1 << 17)
def ack_decode(n: int) -> HFSet:
    if n < 0:
        raise ValueError("Ackermann indices are non-negative")
    children = []
    i = 0
    while n:
        if n & 1:
            children.append(ack_decode(i))
        n >>= 1
        i += 1
    return HFSet._canonical(tuple(children))


def rank(s: HFSet) -> int:
    return s.rank


def transitive_closure(s: HFSet) -> tuple:
    """Elements of TC({s}) in Ackermann order; its length is kappa_s."""
    seen = {s}
    stack = [s]
    while stack:
        for c in stack.pop().children:
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return tuple(sorted(seen))


def ordinal(k: int) -> HFSet:
    """The von Neumann ordinal ``k``."""
    result = EMPTY
    elems = []
    for _ in range(k):
        elems.append(result)
        result = HFSet._canonical(tuple(elems))
    return result


def as_ordinal(s: HFSet):
    """Return ``k`` when ``s`` is the von Neumann ordinal ``k``, else ``None``."""
    for i, c in enumerate(s.children):
        # ordinals below s are exactly its children, and they sort by size
        if len(c.children) != i or (i and c.children[-1] is not s.children[i - 1]):
            return None
        if i and c.children[:-1] != s.children[i - 1].children:
            return None
    return len(s.children)


def kpair(a: HFSet, b: HFSet) -> HFSet:
    """Kuratowski pair {{a},{a,b}}."""
    return HFSet([HFSet([a]), HFSet([a, b])])


def rank_slice_size(n: int) -> int:
    size = 0
    for _ in range(n):
        size = 2 ** size
    return size


@dataclass(frozen=True)
class UniverseSlice:
    """A finite transitive fragment of the HF universe, Ackermann sorted."""

    elements: tuple
    kind: str
    n: int
    _index: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.elements)})

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __contains__(self, s):
        return s in self._index

    def index(self, s: HFSet) -> int:
        return self._index[s]

    @property
    def label(self) -> str:
        return f"V{self.n}" if self.kind == "rank" else f"A{self.n}"

    def is_transitive(self) -> bool:
        return all(c in self._index for e in self.elements for c in e.children)

    def ordinals(self) -> list:
        """Ordinals of the slice as ``(k, element)`` pairs, increasing."""
        out = []
        for e in self.elements:
            k = as_ordinal(e)
            if k is not None:
                out.append((k, e))
        return out


def universe_slice(kind: str, n: int) -> UniverseSlice:
    """``kind='rank'`` gives V_n, ``kind='prefix'`` the first ``n`` sets."""
    if n < 0:
        raise ValueError("slice size must be non-negative")
    if kind in ("rank", "rank-slice", "V"):
        if n > MAX_RANK_SLICE:
            raise UniverseTooLarge(f"V_{n} has more than 2^65536 elements")
        count = rank_slice_size(n)
        return UniverseSlice(tuple(ack_decode(i) for i in range(count)), "rank", n)
    if kind in ("prefix", "ackermann-prefix", "A"):
        if n > MAX_PREFIX:
            raise UniverseTooLarge(f"prefix of {n} sets exceeds the {MAX_PREFIX} guard")
        return UniverseSlice(tuple(ack_decode(i) for i in range(n)), "prefix", n)
    raise ValueError(f"unknown slice kind {kind!r}")


def parse_universe_spec(spec: str) -> UniverseSlice:
    """``V3`` is a rank slice, ``A10`` an Ackermann prefix."""
    spec = spec.strip()
    if len(spec) < 2 or spec[0] not in "VA" or not spec[1:].isdigit():
        raise LiteralError(f"universe spec {spec!r} is not V<n> or A<n>")
    return universe_slice("rank" if spec[0] == "V" else "prefix", int(spec[1:]))


def _checked(children: list, normalize: bool, where: str) -> HFSet:
    if not normalize:
        for a, b in zip(children, children[1:]):
            if not a < b:
                raise LiteralError(f"non-canonical member order {where}")
    return HFSet(children)


def parse_literal(text: str, normalize: bool = False) -> HFSet:
    """Parse brace notation such as ``{{},{{}}}``."""
    pos = 0
    n = len(text)

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_set() -> HFSet:
        nonlocal pos
        skip()
        if pos >= n or text[pos] != "{":
            raise LiteralError(f"expected '{{' at offset {pos}")
        start = pos
        pos += 1
        children = []
        skip()
        if pos < n and text[pos] == "}":
            pos += 1
            return EMPTY
        while True:
            children.append(parse_set())
            skip()
            if pos < n and text[pos] == ",":
                pos += 1
                continue
            if pos < n and text[pos] == "}":
                pos += 1
                break
            raise LiteralError(f"expected ',' or '}}' at offset {pos}")
        return _checked(children, normalize, f"in set starting at offset {start}")

    result = parse_set()
    skip()
    if pos != n:
        raise LiteralError(f"trailing input at offset {pos}")
    return result


def _from_nested(value, normalize: bool) -> HFSet:
    if not isinstance(value, list):
        raise LiteralError(f"expected a JSON array, got {type(value).__name__}")
    return _checked([_from_nested(v, normalize) for v in value], normalize, "in JSON array")


def parse_json(text, normalize: bool = False) -> HFSet:
    """Parse the nested-array mirror (``[[],[[]]]``); accepts text or decoded JSON."""
    if isinstance(text, str):
        try:
            text = json.loads(text)
        except json.JSONDecodeError as exc:
            raise LiteralError(f"invalid JSON: {exc}") from None
    return _from_nested(text, normalize)
