import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordlab.errors import LiteralError, UniverseTooLarge
from ordlab.hf import (
    EMPTY,
    HFSet,
    ack_decode,
    ack_encode,
    as_ordinal,
    kpair,
    ordinal,
    parse_json,
    parse_literal,
    parse_universe_spec,
    rank,
    rank_slice_size,
    transitive_closure,
    universe_slice,
)

ONE = HFSet([EMPTY])
TWO = HFSet([EMPTY, ONE])
SING_ONE = HFSet([ONE])


def brute_closure(s):
    """Fixpoint iteration, independent of the stack walk in the kernel."""
    out = {s}
    while True:
        grown = out | {c for x in out for c in x.children}
        if grown == out:
            return out
        out = grown


def nesting_depth(s):
    return 0 if not s.children else 1 + max(nesting_depth(c) for c in s.children)


def test_encode_examples():
    assert ack_encode(EMPTY) == 0
    assert ack_encode(ONE) == 1
    assert ack_encode(TWO) == 2**0 + 2**1


def test_decode_examples():
    assert ack_decode(0) is EMPTY
    assert ack_decode(2) is SING_ONE
    assert ack_decode(3) is TWO


def test_rank_examples():
    assert rank(EMPTY) == 0
    assert rank(SING_ONE) == 2 == nesting_depth(SING_ONE)
    assert rank(TWO) == 2


def test_transitive_closure_examples():
    assert transitive_closure(EMPTY) == (EMPTY,)
    assert transitive_closure(ONE) == (EMPTY, ONE)
    s = HFSet([TWO])
    assert set(transitive_closure(s)) == {s, EMPTY, ONE, TWO}
    assert set(transitive_closure(s)) == brute_closure(s)


def test_slices():
    assert universe_slice("rank", 2).elements == (EMPTY, ONE)
    assert len(universe_slice("rank", 0)) == 0
    a4 = universe_slice("prefix", 4)
    assert [ack_encode(s) for s in a4] == [0, 1, 2, 3]
    assert [len(universe_slice("rank", n)) for n in range(5)] == [0, 1, 2, 4, 16]
    assert rank_slice_size(5) == 65536
    with pytest.raises(UniverseTooLarge):
        universe_slice("rank", 6)
    with pytest.raises(UniverseTooLarge):
        universe_slice("prefix", 70000)


def test_rank_slice_is_exactly_the_low_ranks():
    v4 = universe_slice("rank", 4)
    assert all(s.rank < 4 for s in v4)
    assert {s for s in universe_slice("prefix", 300) if s.rank < 4} == set(v4)


def test_as_ordinal():
    assert as_ordinal(TWO) == 2
    assert as_ordinal(SING_ONE) is None
    assert as_ordinal(EMPTY) == 0
    assert [as_ordinal(ordinal(k)) for k in range(6)] == list(range(6))
    assert [k for k, _ in universe_slice("rank", 4).ordinals()] == [0, 1, 2, 3]


def test_roundtrips():
    assert all(ack_encode(ack_decode(n)) == n for n in range(10_000))
    first = [ack_decode(n) for n in range(1000)]
    assert all(ack_decode(ack_encode(s)) is s for s in first)


def test_ackermann_order_extends_membership():
    for n in range(2000):
        s = ack_decode(n)
        assert all(ack_encode(x) < n for x in s)
        assert all(x < s for x in s)


def test_interning_and_order_agree_with_indices():
    sets = [ack_decode(n) for n in range(300)]
    assert sorted(reversed(sets)) == sets
    assert HFSet([ONE, EMPTY]) is TWO


def test_large_sets_compare_without_indices():
    big = HFSet([kpair(ordinal(20), ordinal(21))])
    bigger = HFSet([big])
    assert big < bigger
    assert bigger.rank == big.rank + 1


def test_literal_parsing():
    assert parse_literal("{}") is EMPTY
    assert parse_literal("{{},{{}}}") is TWO
    assert parse_literal(" { { } , { { } } } ") is TWO
    with pytest.raises(LiteralError):
        parse_literal("{{{}},{}}")
    assert parse_literal("{{{}},{}}", normalize=True) is TWO
    with pytest.raises(LiteralError):
        parse_literal("{{}")
    with pytest.raises(LiteralError):
        parse_literal("{}{}")


def test_json_mirror():
    assert parse_json("[[],[[]]]") is TWO
    assert parse_json([[]]) is ONE
    with pytest.raises(LiteralError):
        parse_json("[[[]],[]]")
    assert parse_json("[[[]],[]]", normalize=True) is TWO
    with pytest.raises(LiteralError):
        parse_json("[1]")
    assert parse_json(TWO.to_json()) is TWO


def test_universe_labels():
    assert parse_universe_spec("V3").label == "V3"
    assert parse_universe_spec("A10").kind == "prefix"
    with pytest.raises(LiteralError):
        parse_universe_spec("W3")


indices = st.integers(min_value=0, max_value=5000)


@given(indices)
def test_rank_grows_under_singleton(n):
    s = ack_decode(n)
    assert rank(s) < rank(HFSet([s]))
    assert all(rank(x) < rank(s) for x in s)


@given(indices)
def test_closure_idempotent_and_transitive(n):
    s = ack_decode(n)
    closure = set(transitive_closure(s))
    assert closure == brute_closure(s)
    assert all(c in closure for x in closure for c in x)
    assert set().union(*(set(transitive_closure(x)) for x in closure)) == closure


@settings(max_examples=30)
@given(st.sampled_from(["rank", "prefix"]), st.integers(min_value=0, max_value=400))
def test_slices_are_transitive(kind, n):
    if kind == "rank":
        n = n % 5
    u = universe_slice(kind, n)
    assert u.is_transitive()
    assert list(u.elements) == sorted(u.elements)


@given(indices)
def test_literal_roundtrip(n):
    s = ack_decode(n)
    assert parse_literal(s.to_literal()) is s
