import itertools
import math
import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from sandwich.finite_maps import (
    CapExceeded,
    DegreeMismatch,
    FamilyMismatch,
    FiniteTransformation as T,
    PartialInjection as PI,
    Permutation,
    TypeVector,
    compose,
    enumerate_elements,
    inverse,
    kernel_partition,
    parse_element,
    rank,
    type_of,
)

from conftest import partial_injections, permutations, transformations


def test_compose_left_to_right():
    assert compose(T((2, 3, 1)), T((1, 1, 2))) == T((1, 2, 1))


@given(transformations())
def test_identity_is_neutral(y):
    e = T.identity(y.n)
    assert compose(e, y) == y
    assert compose(y, e) == y


def test_partial_composition_undefined():
    alpha = PI((2, None, None))
    beta = PI((3, None, None))
    assert compose(alpha, beta) == PI.empty(3)


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(T((1, 2)), T((1, 2, 3)))


def test_compose_family_mismatch():
    with pytest.raises(FamilyMismatch):
        compose(T((1, 1)), PI((1, None)))


def test_permutation_with_transformation_is_transformation():
    r = compose(Permutation((2, 1)), T((1, 1)))
    assert isinstance(r, T) and r == T((1, 1))
    assert isinstance(compose(Permutation((2, 1)), Permutation((2, 1))), Permutation)


@pytest.mark.parametrize(
    "alpha, expected",
    [(PI.empty(3), 0), (PI.identity(4), 4), (PI((3, 1, None)), 2)],
)
def test_rank(alpha, expected):
    assert rank(alpha) == expected


def test_inverse_examples():
    assert inverse(PI((3, 1, None))) == PI((2, None, 1))
    assert inverse(PI.identity(3)) == PI.identity(3)
    assert inverse(PI.empty(3)) == PI.empty(3)


@given(partial_injections())
def test_inverse_involution(alpha):
    inv = inverse(alpha)
    assert inverse(inv) == alpha
    assert inv.dom() == alpha.ran()
    prod = compose(alpha, inv)
    assert all(prod(p) == p for p in alpha.dom())
    assert prod.dom() == alpha.dom()


def test_kernel_partition_examples():
    k = kernel_partition(T((1, 1, 2)))
    assert k.blocks == ((1, (1, 2)), (2, (3,)))
    assert k.min_block_size == 1
    k = kernel_partition(T((1, 1, 1)))
    assert k.blocks == ((1, (1, 2, 3)),) and k.min_block_size == 3
    k = kernel_partition(T((3, 1, 2)))
    assert all(len(b) == 1 for _, b in k.blocks) and len(k.blocks) == 3
    assert k.size(1) == 1


@given(transformations())
def test_kernel_partition_blocks(a):
    k = kernel_partition(a)
    covered = sorted(p for _, b in k.blocks for p in b)
    assert covered == list(range(1, a.n + 1))
    for tag, block in k.blocks:
        assert all(a(p) == tag for p in block)
    assert len({t for t, _ in k.blocks}) == len(k.blocks)


def test_type_of_examples():
    assert type_of(T.identity(4)) == TypeVector((4, 0, 0, 0))
    assert type_of(T.constant(4, 2)) == TypeVector((0, 0, 0, 1))
    assert type_of(T((1, 1, 2))) == TypeVector((1, 1, 0))


@given(transformations())
def test_type_vector_invariants(a):
    t = type_of(a)
    assert t.weight() == a.n
    assert t.image_size() == len(a.image())


def _all_perms(n):
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_type_invariant_under_two_sided_permutation(n):
    perms = _all_perms(n)
    for a in enumerate_elements("T", n):
        t = type_of(a)
        for p, s in itertools.product(perms, repeat=2):
            assert type_of(compose(compose(p, a), s)) == t


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(transformations(n), permutations(n), permutations(n))))
def test_type_invariant_random(args):
    a, p, s = args
    assert type_of(compose(compose(p, a), s)) == type_of(a)


def test_enumeration_counts():
    assert len(enumerate_elements("T", 2)) == 4
    assert len(enumerate_elements("S", 3)) == 6
    # |IS_n| = sum_k C(n,k)^2 k!
    for n in range(1, 5):
        expected = sum(math.comb(n, k) ** 2 * math.factorial(k) for k in range(n + 1))
        assert len(enumerate_elements("IS", n)) == expected
    assert len(enumerate_elements("IS", 3)) == 34


@pytest.mark.parametrize("family", ["T", "IS", "S"])
def test_enumeration_sorted_unique(family):
    els = enumerate_elements(family, 3)
    keys = [tuple(4 if v is None else v for v in e.images) for e in els]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_enumeration_cap():
    with pytest.raises(CapExceeded, match="cap 5"):
        enumerate_elements("T", 6)
    assert len(enumerate_elements("T", 1, cap=1)) == 1


def test_type_histogram_sums_to_n_pow_n():
    for n in range(1, 5):
        c = Counter(type_of(a) for a in enumerate_elements("T", n))
        assert sum(c.values()) == n**n


def test_associativity_exhaustive_small():
    for fam in ("T", "IS"):
        for n in (1, 2, 3):
            els = enumerate_elements(fam, n)
            for x, y, z in itertools.product(els, repeat=3):
                assert compose(compose(x, y), z) == compose(x, compose(y, z))


@pytest.mark.parametrize("n", [4, 5])
def test_associativity_random(n):
    rng = random.Random(n)
    for fam in ("T", "IS"):
        els = enumerate_elements(fam, n)
        for _ in range(300):
            x, y, z = rng.choice(els), rng.choice(els), rng.choice(els)
            assert compose(compose(x, y), z) == compose(x, compose(y, z))


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(partial_injections(n), partial_injections(n))))
def test_rank_of_product_bounded(pair):
    x, y = pair
    assert rank(compose(x, y)) <= min(rank(x), rank(y))


def test_parse_and_format_round_trip():
    assert parse_element("[2,1,3]", "T") == T((2, 1, 3))
    assert parse_element(" [2, -, 3] ", "IS") == PI((2, None, 3))
    assert str(PI((2, None, 3))) == "[2,-,3]"
    assert parse_element("[2,1,3]", "S") == Permutation((2, 1, 3))
    with pytest.raises(ValueError):
        parse_element("[1,1]", "S")
    with pytest.raises(ValueError):
        parse_element("[1,-]", "T")
    with pytest.raises(ValueError):
        parse_element("[1,1]", "IS")
    with pytest.raises(ValueError):
        parse_element("1,2", "T")


@given(partial_injections())
def test_literal_round_trip(alpha):
    assert parse_element(str(alpha), "IS") == alpha


def test_invalid_elements():
    with pytest.raises(ValueError):
        T((0, 1))
    with pytest.raises(ValueError):
        T(())
    with pytest.raises(ValueError):
        Permutation((1, None))
