import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordlab.coloring import (
    color_pair,
    eventually_below,
    extract_branch,
    is_monochromatic,
    refine_height_injective,
    right_of,
)
from ordlab.compactness import compactness_theory, predecessor_chain, satisfies, subtheory_model
from ordlab.errors import EqualNodes, NotHeightInjective, NotMonochromatic
from ordlab.gen import chain_tree, full_binary_tree, random_tree
from ordlab.seqcode import DigitSeq
from ordlab.trees import Tree, branches


def S(text):
    return DigitSeq.parse(text)


def test_gamma_records():
    t = chain_tree(1)
    th = compactness_theory(t)
    assert th.sigma[1] == frozenset({(0, 1)})
    assert th.sigma[0] == frozenset()
    assert th.phi == t.levels
    assert th.tree_order


def test_sigma_monotone_and_exact():
    t = full_binary_tree(3)
    th = compactness_theory(t)
    for a in range(3):
        assert th.sigma[a] <= th.sigma[a + 1]
    for a in range(4):
        want = {(i, j) for i in range(len(t)) for j in range(len(t)) if t.is_below(i, j) and t.height(j) <= a}
        assert th.sigma[a] == want


def test_subtheory_examples():
    t = full_binary_tree(3)
    th = compactness_theory(t)
    c = subtheory_model(th, {0, 1})
    assert t.height(c) >= 2
    assert {t.height(p) for p in predecessor_chain(t, c)} >= {0, 1}
    # nothing lies strictly above the top level
    assert subtheory_model(th, {3}) is None
    assert subtheory_model(th, {7}) is None
    assert subtheory_model(th, {2}) in t.level(3)


def test_right_of_examples():
    assert right_of(S("10"), S("0"))
    assert right_of(S("01"), S("0"))
    assert not right_of(S("001"), S("1"))
    with pytest.raises(EqualNodes):
        right_of(S("1"), S("1"))


def test_color_examples():
    assert color_pair(S("10"), S("0")) == 0
    assert color_pair(S("01"), S("1")) == 1
    assert color_pair(S("0"), S("1")) == 1
    with pytest.raises(EqualNodes):
        color_pair(S("0"), S("0"))


def test_refine_examples():
    assert refine_height_injective([S("0"), S("1"), S("00")]) == (S("0"), S("00"))
    fam = (S(""), S("1"), S("10"))
    assert refine_height_injective(fam) == fam
    assert refine_height_injective([]) == ()


def test_extract_examples():
    t = full_binary_tree(3)
    b = extract_branch([S("1"), S("10"), S("100")], 0, t)
    assert [str(t.payloads[i]) for i in b] == ["", "1", "10", "100"]
    b = extract_branch([S("011")], 0, t)
    assert b == t.path(t.id_of(S("011")))
    # a lone family member below the top level does not reach the top
    assert extract_branch([S("01")], 1, t) is None
    with pytest.raises(NotHeightInjective):
        extract_branch([S("0"), S("1")], 1, t)
    with pytest.raises(NotMonochromatic):
        extract_branch([S("0"), S("10")], 1, t)


def test_eventually_below_is_downward_closed():
    t = full_binary_tree(4)
    fam = [S("1"), S("11"), S("110")]
    below = eventually_below(fam, t)
    assert all(t.path(p)[:-1] == tuple(sorted(q for q in below if t.is_below(q, p))) for p in below)


def test_right_of_is_lexicographic_on_levels():
    for n in range(1, 6):
        level = [DigitSeq(d) for d in itertools.product((0, 1), repeat=n)]
        for a, b in itertools.permutations(level, 2):
            assert right_of(a, b) == (a.digits > b.digits)
            assert right_of(a, b) != right_of(b, a)


seqs = st.lists(st.integers(0, 1), max_size=7).map(lambda d: DigitSeq(tuple(d)))


@given(seqs, seqs)
def test_color_symmetric_and_total(p, q):
    if p == q:
        return
    assert color_pair(p, q) == color_pair(q, p) in (0, 1)


@given(seqs, seqs)
def test_extension_is_right_and_color_zero(p, q):
    if len(q) < len(p) and q.is_prefix_of(p):
        assert right_of(p, q)
        assert color_pair(p, q) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_extracted_branch_is_a_branch(seed):
    rng = random.Random(seed)
    h = rng.randint(1, 6)
    t = full_binary_tree(h)
    value = rng.randint(0, 1)
    fam = [DigitSeq(())]
    for n in range(1, h + 1):
        options = [DigitSeq(tuple(d)) for d in itertools.product((0, 1), repeat=n)]
        rng.shuffle(options)
        ok = [p for p in options if all(color_pair(p, q) == value for q in fam)]
        if not ok:
            return
        fam.append(ok[0])
    assert is_monochromatic(fam, value)
    b = extract_branch(fam, value, t)
    assert b in branches(t)
    assert all(t.is_below(x, y) for x, y in zip(b, b[1:]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.sets(st.integers(0, 6), max_size=4))
def test_subtheory_model_iff_something_above(seed, levels):
    t = random_tree(random.Random(seed), 5, 30)
    th = compactness_theory(t)
    c = subtheory_model(th, levels)
    exists = any(satisfies(th, x, levels) for x in range(len(t)))
    assert (c is not None) == exists
    if c is not None:
        assert satisfies(th, c, levels)
        assert {t.height(p) for p in predecessor_chain(t, c)} >= set(levels)


def test_forest_still_records_tree_order():
    t = Tree.from_parents({"a": None, "b": None, "c": "a"})
    assert compactness_theory(t).tree_order
