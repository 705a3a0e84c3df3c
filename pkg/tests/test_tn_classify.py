import itertools
import math
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from sandwich.deformed_core import sandwich_product
from sandwich.finite_maps import (
    DegreeMismatch,
    FiniteTransformation as T,
    Permutation,
    TypeVector,
    compose,
    enumerate_elements,
    rank,
    type_of,
)
from sandwich.tn_classify import (
    ClassSizeMultiset,
    InconsistentMultiset,
    TypeMismatch,
    class_sizes_from_type,
    count_of_type,
    enumerate_types,
    eq1_class_size,
    integer_partitions,
    partition_count,
    recover_type_from_class_sizes,
    representative_of_type,
    sim_a_classes,
    sim_a_related,
    tn_iso_map,
    tn_isomorphic,
    tn_witness,
)
from sandwich.verify import partition_into_classes

from conftest import permutations, transformations


def brute_class_sizes(a):
    """Oracle: group T_n by x*a using nothing but tuple indexing."""
    n = a.n
    fibers = Counter(tuple(a.images[v - 1] for v in x) for x in itertools.product(range(1, n + 1), repeat=n))
    return dict(Counter(fibers.values()))


def test_sim_related_examples():
    x, y = T((1, 2, 3)), T((3, 1, 2))
    assert sim_a_related(x, x, T((1, 1, 2)))
    assert sim_a_related(x, y, T.constant(3, 2))
    assert not sim_a_related(x, y, T((2, 3, 1)))
    with pytest.raises(DegreeMismatch):
        sim_a_related(x, T((1, 1)), x)


@pytest.mark.parametrize("n", [2, 3])
def test_lemma2_against_definition(n):
    els = enumerate_elements("T", n)
    for a in els:
        for x, y in itertools.combinations(els[:: max(1, len(els) // 9)], 2):
            by_def = all(sandwich_product(x, a, u) == sandwich_product(y, a, u) for u in els)
            assert by_def == sim_a_related(x, y, a)


def test_class_size_examples():
    assert sim_a_classes(T.identity(3)).multiset.as_dict() == {1: 27}
    assert sim_a_classes(T.constant(3)).multiset.as_dict() == {27: 1}
    assert sim_a_classes(T((1, 1, 2))).multiset.as_dict() == {1: 1, 2: 3, 4: 3, 8: 1}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_class_sizes_match_brute_force(n):
    for a in enumerate_elements("T", n):
        sc = sim_a_classes(a)
        assert sc.multiset.as_dict() == brute_class_sizes(a)
        for y, members in sc.classes.items():
            assert len(members) == eq1_class_size(a, y)
            assert all(compose(x, a) == y for x in members)
        assert sc.multiset.class_count() == rank(a) ** n
        assert sc.multiset.total_mass() == n**n


def test_predicted_multiset_matches_brute_force_t4():
    for a in enumerate_elements("T", 4):
        assert class_sizes_from_type(type_of(a)).as_dict() == brute_class_sizes(a)


def test_recover_examples():
    assert recover_type_from_class_sizes(ClassSizeMultiset(3, ((1, 27),)), 3) == TypeVector((3, 0, 0))
    assert recover_type_from_class_sizes(ClassSizeMultiset(3, ((27, 1),)), 3) == TypeVector((0, 0, 1))
    m = ClassSizeMultiset(3, ((1, 1), (2, 3), (4, 3), (8, 1)))
    assert recover_type_from_class_sizes(m, 3) == TypeVector((1, 1, 0))


@pytest.mark.parametrize(
    "pairs",
    [
        ((2, 1),),  # 2 is not a cube
        ((1, 2),),  # 2 classes of the minimum size is not a cube
        ((1, 1), (2, 2)),  # C - A not divisible by 3
        ((1, 27), (5, 1)),  # realizes no type
        ((1, 1),),  # weight 1 != 3
    ],
)
def test_recover_rejects_unrealizable(pairs):
    with pytest.raises(InconsistentMultiset):
        recover_type_from_class_sizes(ClassSizeMultiset(3, pairs), 3)


def test_recover_cap():
    with pytest.raises(ValueError):
        recover_type_from_class_sizes(ClassSizeMultiset(16, ((1, 1),)), 16)


@settings(max_examples=60)
@given(st.integers(1, 12).flatmap(lambda n: st.sampled_from(enumerate_types(n))))
def test_recover_round_trip_from_predicted_sizes(t):
    assert recover_type_from_class_sizes(class_sizes_from_type(t), t.n) == t


def test_multiset_serialization():
    m = ClassSizeMultiset(3, ((8, 1), (1, 1), (4, 3), (2, 3)))
    assert m.dumps() == "1:1\n2:3\n4:3\n8:1\n"
    assert ClassSizeMultiset.loads(m.dumps(), 3) == m


def test_tn_isomorphic_examples():
    assert tn_isomorphic(T((1, 1, 2)), T((1, 1, 2)))
    assert tn_isomorphic(T.constant(3, 1), T.constant(3, 3))
    assert not tn_isomorphic(T((2, 1, 3)), T.constant(3))


def test_witness_self():
    for a in enumerate_elements("T", 3):
        w = tn_witness(a, a)
        assert w.tau == w.pi == Permutation.identity(3)


def test_witness_example():
    a, b = T((1, 1, 2)), T((3, 2, 2))
    w = tn_witness(a, b)
    for x in range(1, 4):
        assert w.pi(a(w.tau(x))) == b(x)
    with pytest.raises(TypeMismatch, match=r"\(1,1,0\) vs \(3,0,0\)"):
        tn_witness(a, T.identity(3))


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(transformations(n), permutations(n), permutations(n))))
def test_witness_for_conjugates(args):
    a, p, q = args
    b = compose(compose(p, a), q)
    assert tn_witness(a, b).is_valid()


@given(
    st.integers(1, 5).flatmap(
        lambda n: st.tuples(transformations(n), permutations(n), permutations(n), transformations(n), transformations(n))
    )
)
def test_iso_map_homomorphism_random(args):
    a, p, q, x, y = args
    b = compose(compose(p, a), q)
    w = tn_witness(a, b)
    assert tn_iso_map(w, sandwich_product(x, a, y)) == sandwich_product(tn_iso_map(w, x), b, tn_iso_map(w, y))


def _count_formula_oracle(t, n):
    # set partitions with the block profile, times injective choices of block images
    r = t.image_size()
    set_parts = math.factorial(n) // math.prod(
        math.factorial(k) ** t[k] * math.factorial(t[k]) for k in range(1, n + 1)
    )
    return set_parts * math.perm(n, r)


def test_count_of_type_examples():
    assert count_of_type(TypeVector((4, 0, 0, 0))) == 24
    assert count_of_type(TypeVector((0, 0, 1)), 3) == 3
    assert count_of_type(TypeVector((1, 1, 0)), 3) == 18
    with pytest.raises(ValueError):
        count_of_type(TypeVector((1, 0, 0)), 3)


@pytest.mark.parametrize("n", range(1, 6))
def test_count_of_type_brute_force(n):
    brute = Counter(type_of(a) for a in enumerate_elements("T", n))
    assert {t: count_of_type(t) for t in enumerate_types(n)} == dict(brute)


@pytest.mark.parametrize("n", range(1, 13))
def test_count_of_type_matches_independent_formula(n):
    assert all(count_of_type(t) == _count_formula_oracle(t, n) for t in enumerate_types(n))
    assert sum(count_of_type(t) for t in enumerate_types(n)) == n**n


def _partitions_dp(n):
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


def test_partition_count():
    assert partition_count(0) == 1
    assert [partition_count(n) for n in (1, 3, 4)] == [1, 3, 5]
    for n in range(0, 40):
        assert partition_count(n) == _partitions_dp(n)
        if n <= 15:
            assert len(list(integer_partitions(n))) == partition_count(n)


def test_enumerate_types_3():
    assert set(enumerate_types(3)) == {TypeVector((3, 0, 0)), TypeVector((1, 1, 0)), TypeVector((0, 0, 1))}
    assert all(t.is_valid() for t in enumerate_types(7))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_class_count_is_p_n(n):
    assert len(partition_into_classes(enumerate_elements("T", n), tn_isomorphic)) == partition_count(n)


def test_representative_of_type():
    for n in range(1, 7):
        for t in enumerate_types(n):
            assert type_of(representative_of_type(t)) == t
