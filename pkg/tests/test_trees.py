import math
from fractions import Fraction

import pytest
from hypothesis import given

from hookcal._arith import catalan_numbers
from hookcal.trees import (
    EMPTY,
    children,
    count_shapes,
    enumerate_shapes,
    enumerate_with_hook_products,
    hook_lengths,
    hook_product_sum,
    hook_weight,
    node,
    parse,
    preorder,
    serialize,
    size,
)

from conftest import nonempty_shapes, shapes

LEAF = node()


def grow_all_shapes(n):
    """Brute-force oracle: grow shapes one vertex at a time into any free slot, dedupe."""
    level = {EMPTY}
    for _ in range(n):
        nxt = set()
        for t in level:
            nxt.update(_attach_everywhere(t))
        level = nxt
    return level


def _attach_everywhere(t):
    if not t:
        return [LEAF]
    left, right = t
    return [(l, right) for l in _attach_everywhere(left)] + [(left, r) for r in _attach_everywhere(right)]


def descendants_oracle(t):
    """Hook lengths by explicit ancestor chains: h(v) = #{u : v is u or an ancestor of u}."""
    parent = {}
    ids = {}

    def walk(s, p):
        i = len(ids)
        ids[i] = s
        parent[i] = p
        if s[0]:
            walk(s[0], i)
        if s[1]:
            walk(s[1], i)

    walk(t, None)
    hooks = {v: 0 for v in ids}
    for u in ids:
        a = u
        while a is not None:
            hooks[a] += 1
            a = parent[a]
    return hooks


# -- enumeration ----------------------------------------------------------


def test_n0_yields_only_empty():
    assert list(enumerate_shapes(0)) == [EMPTY]


def test_n2_shapes_are_left_only_and_right_only():
    assert set(enumerate_shapes(2)) == {(LEAF, EMPTY), (EMPTY, LEAF)}
    assert count_shapes(2) == 2


def test_n3_has_five_shapes():
    assert count_shapes(3) == 5


@pytest.mark.parametrize("n", range(0, 9))
def test_enumeration_matches_brute_force_growth(n):
    listed = list(enumerate_shapes(n))
    assert len(listed) == len(set(listed))
    assert set(listed) == grow_all_shapes(n)


@pytest.mark.parametrize("n", range(0, 13))
def test_counts_match_catalan_recurrence(n):
    assert count_shapes(n) == catalan_numbers(n)[n] == math.comb(2 * n, n) // (n + 1)


def test_order_is_by_left_subtree_size():
    for n in (4, 7, 11):
        left_sizes = [size(t[0]) for t in enumerate_shapes(n)]
        assert left_sizes == sorted(left_sizes)


def test_order_is_recursive():
    # within a fixed left size the left subtree varies slowest, both in enumeration order
    listed = list(enumerate_shapes(6, k=2))
    lefts = list(enumerate_shapes(2))
    rights = list(enumerate_shapes(3))
    assert listed == [(l, r) for l in lefts for r in rights]


def test_partition_by_k_covers_stream():
    n = 11
    whole = list(enumerate_shapes(n))
    parts = [t for k in range(n) for t in enumerate_shapes(n, k)]
    assert parts == whole


def test_partition_rejects_bad_k():
    with pytest.raises(ValueError):
        list(enumerate_shapes(4, k=4))
    with pytest.raises(ValueError):
        enumerate_shapes(-1)


def test_serialized_forms_are_distinct():
    for n in range(0, 11):
        forms = [serialize(t) for t in enumerate_shapes(n)]
        assert len(forms) == len(set(forms))


def test_enumeration_is_lazy():
    stream = enumerate_shapes(30)
    first = next(stream)
    assert size(first) == 30


# -- hooks ----------------------------------------------------------------


def test_single_vertex_hook():
    assert hook_lengths(LEAF) == {0: 1}


def test_left_path_hooks():
    assert hook_lengths(parse("(((..).).)")) == {0: 3, 1: 2, 2: 1}


def test_balanced_three_hooks():
    assert hook_lengths(parse("((..)(..))")) == {0: 3, 1: 1, 2: 1}


def test_empty_shape_has_no_hooks():
    with pytest.raises(ValueError):
        hook_lengths(EMPTY)
    with pytest.raises(ValueError):
        hook_weight(EMPTY)


@given(nonempty_shapes())
def test_hooks_match_descendant_count_oracle(t):
    assert hook_lengths(t) == descendants_oracle(t)


@given(nonempty_shapes())
def test_hook_recursion_and_root(t):
    hooks = hook_lengths(t)
    n = size(t)
    assert hooks[0] == n
    assert sorted(hooks) == list(range(n))
    for v, (l, r) in children(t).items():
        assert hooks[v] == 1 + (hooks[l] if l is not None else 0) + (hooks[r] if r is not None else 0)
    leaves = sum(1 for s in preorder(t) if s == LEAF)
    assert sum(1 for h in hooks.values() if h == 1) == leaves


# -- weights --------------------------------------------------------------


def test_weight_single_vertex():
    assert hook_weight(LEAF) == 1


def test_weight_two_vertices():
    assert hook_weight((LEAF, EMPTY)) == Fraction(3, 2)
    assert hook_weight((EMPTY, LEAF)) == Fraction(3, 2)


def test_weight_left_path_three():
    assert hook_weight(parse("(((..).).)")) == 3


def test_weight_balanced_three():
    assert hook_weight(parse("((..)(..))")) == 4


def test_unknown_weight_form():
    with pytest.raises(ValueError):
        hook_weight(LEAF, "eq9")


@given(nonempty_shapes())
def test_rooted_weight_is_n_plus_one_times(t):
    assert hook_weight(t, "eq2") == (size(t) + 1) * hook_weight(t, "eq1")


@pytest.mark.parametrize("n", range(1, 10))
def test_carried_products_match_definition(n):
    for t, num, den in enumerate_with_hook_products(n):
        direct = Fraction(1)
        for h in hook_lengths(t).values():
            direct *= Fraction(h + 1, h)
        assert Fraction(num, den) == direct


@pytest.mark.parametrize("n", range(1, 9))
def test_product_sum_matches_per_shape_weights(n):
    count, total = hook_product_sum(n)
    per_shape = sum(hook_weight(t) for t in enumerate_shapes(n))
    assert count == catalan_numbers(n)[n]
    assert Fraction(math.factorial(n), 2**n) * total == per_shape


# -- serialization --------------------------------------------------------


def test_serialize_examples():
    assert serialize(EMPTY) == "."
    assert serialize(LEAF) == "(..)"
    assert serialize((LEAF, EMPTY)) == "((..).)"


@given(shapes())
def test_parse_serialize_roundtrip(t):
    assert parse(serialize(t)) == t



@pytest.mark.parametrize("bad", ["", "(", "(.)", "(...)", "(..)(..)", "x", "(..))", "((..)"])
def test_parse_rejects_malformed(bad):
    with pytest.raises(ValueError):
        parse(bad)


def test_deep_shapes_do_not_hit_recursion_limit():
    t = EMPTY
    for _ in range(5000):
        t = (t, EMPTY)
    assert size(t) == 5000
    assert hook_lengths(t)[0] == 5000
    text = serialize(t)
    assert serialize(parse(text)) == text
