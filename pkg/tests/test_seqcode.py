import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordlab.errors import InvalidBijection, NotAChain, NotInImage
from ordlab.hf import EMPTY, HFSet, ack_decode, ordinal, transitive_closure
from ordlab.seqcode import (
    DigitSeq,
    binary_embed,
    binary_unembed,
    chain_code,
    decode_relation,
    decode_set,
    encode_set,
    membership_relation,
    pair,
    read_off,
    split_blocks,
    ternary_concat,
    unpair,
)

ONE = ordinal(1)
TWO = ordinal(2)


def D(text, base=2):
    return DigitSeq.parse(text, base)


def goedel_enumeration(limit):
    """Pairs listed by (max, first, second), independent of the closed form."""
    pairs = sorted(itertools.product(range(limit), repeat=2), key=lambda p: (max(p), p[0], p[1]))
    return {p: i for i, p in enumerate(pairs) if max(p) < limit}


def test_pair_examples():
    assert pair(0, 0) == 0
    assert pair(0, 1) == 1
    assert pair(1, 0) == 2
    assert unpair(0) == (0, 0)
    assert unpair(1) == (0, 1)
    assert unpair(3) == (1, 1)


def test_pair_matches_enumeration():
    table = goedel_enumeration(40)
    assert all(pair(a, b) == i for (a, b), i in table.items())


def test_encode_examples():
    assert encode_set(EMPTY) == DigitSeq(())
    assert encode_set(ONE) == D("01")
    # pairs (0,1), (0,2), (1,2) pack to 1, 4, 5
    assert sorted(pair(i, j) for i, j in membership_relation(TWO).pairs) == [1, 4, 5]
    assert encode_set(TWO) == D("010011")


def test_encode_with_explicit_bijection():
    g = {EMPTY: 1, ONE: 0}
    assert encode_set(ONE, g) == D("001")  # pair(1, 0) = 2
    assert decode_set(encode_set(ONE, g)) is ONE
    with pytest.raises(InvalidBijection):
        encode_set(ONE, {EMPTY: 0})
    with pytest.raises(InvalidBijection):
        encode_set(ONE, {EMPTY: 0, ONE: 2})


def test_decode_examples():
    assert decode_set(DigitSeq(())) is EMPTY
    assert decode_set(D("01")) is ONE
    assert decode_set(D("1")) is EMPTY  # 0 in 0


def test_degenerate_decodes():
    assert decode_relation([(0, 1), (1, 0)]) is EMPTY  # cycle
    assert decode_relation([(0, 1), (0, 2)]) is EMPTY  # two tops
    # 1 and 2 both collapse to {0}: not extensional
    assert decode_relation([(0, 1), (0, 2), (1, 3), (2, 3)]) is EMPTY
    assert decode_relation([(0, 2), (1, 2), (1, 3)]) is EMPTY


def test_concat_and_embed_examples():
    assert ternary_concat([D("01"), D("1")]) == D("01212", 3)
    assert ternary_concat([DigitSeq(())]) == D("2", 3)
    assert ternary_concat([D("1"), D("0"), D("1")]) == D("120212", 3)
    assert binary_embed(D("012", 3)) == D("000110")
    assert binary_embed(DigitSeq((), 3)) == DigitSeq(())
    assert binary_unembed(D("1010")) == D("22", 3)
    with pytest.raises(NotInImage):
        binary_unembed(D("11"))
    with pytest.raises(NotInImage):
        binary_unembed(D("101"))


def test_chain_code_examples():
    assert chain_code([EMPTY]) == D("10")
    assert chain_code([EMPTY, ONE]) == D("10000110")
    assert read_off(chain_code([EMPTY, ONE])) is ONE
    with pytest.raises(NotAChain):
        chain_code([ONE, EMPTY])


def test_coding_roundtrip_first_500():
    rng = random.Random(7)
    for n in range(500):
        s = ack_decode(n)
        assert decode_set(encode_set(s)) is s
        closure = transitive_closure(s)
        for _ in range(5):
            perm = list(range(len(closure)))
            rng.shuffle(perm)
            assert decode_set(encode_set(s, dict(zip(closure, perm)))) is s


def test_read_off_recovers_every_chain_end():
    for k in range(1, 6):
        chain = [ordinal(i) for i in range(k)]
        assert read_off(chain_code(chain)) is chain[-1]


blocks = st.lists(st.lists(st.integers(0, 1), max_size=12).map(lambda d: DigitSeq(tuple(d))), max_size=8)
ternary = st.lists(st.integers(0, 2), max_size=16).map(lambda d: DigitSeq(tuple(d), 3))


@given(st.integers(0, 10**6))
def test_unpair_inverts_pair(n):
    assert pair(*unpair(n)) == n


@given(blocks)
def test_blocks_recovered(bs):
    assert split_blocks(ternary_concat(bs)) == bs


@given(ternary, ternary)
def test_embedding_reflects_prefix_order(a, b):
    assert a.is_prefix_of(b) == binary_embed(a).is_prefix_of(binary_embed(b))
    assert (a == b) == (binary_embed(a) == binary_embed(b))
    assert binary_unembed(binary_embed(a)) == a


@given(st.lists(st.integers(0, 1), max_size=30))
def test_decode_always_returns_a_set(bits):
    assert isinstance(decode_set(DigitSeq(tuple(bits))), HFSet)
