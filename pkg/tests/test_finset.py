import itertools

import pytest

from bialgebras import finset
from bialgebras.finset import FinSet, SetMap, Surjection
from bialgebras.partition import Partition, lambda_type, meet, partitions_list, to_surjection


def surj(values, k=None):
    values = tuple(values)
    return Surjection(FinSet(len(values)), FinSet(k if k is not None else max(values, default=-1) + 1), values)


def test_finset_labels_must_match_size():
    FinSet(2, ("a", "b"))
    with pytest.raises(ValueError):
        FinSet(2, ("a",))


def test_setmap_rejects_out_of_range_values():
    with pytest.raises(ValueError):
        SetMap(FinSet(2), FinSet(1), (0, 1))


def test_surjection_rejects_missed_points():
    with pytest.raises(ValueError):
        Surjection(FinSet(2), FinSet(3), (0, 1))


def test_compose_with_identity():
    g = surj([0, 1, 1])
    assert finset.compose(finset.identity(3), g).values == g.values


def test_compose_to_a_point():
    f = SetMap.of([0, 0, 1])
    g = SetMap.of([0, 0])
    assert finset.compose(f, g).values == (0, 0, 0)


def test_compose_mismatch_rejected():
    with pytest.raises(ValueError):
        finset.compose(SetMap.of([0, 1]), SetMap.of([0, 0, 0]))


def test_composite_of_surjections_is_surjective():
    for n in range(5):
        for k in range(n + 1):
            for f in finset.all_surjections(n, k):
                for m in range(k + 1):
                    for g in finset.all_surjections(k, m):
                        assert finset.compose(f, g).is_surjective()


def test_image_factorization_first_occurrence():
    s, i = finset.image_factorization(SetMap(FinSet(3), FinSet(2), (1, 1, 0)))
    assert s.values == (0, 0, 1)
    assert i.values == (1, 0)
    assert i.is_injective()


def test_image_factorization_of_injection_is_bijection():
    s, i = finset.image_factorization(SetMap(FinSet(2), FinSet(4), (3, 1)))
    assert s.is_bijective()
    assert finset.compose(s, i).values == (3, 1)


def test_restriction_via_factorization():
    pi = to_surjection(Partition.from_blocks([[0, 1], [2, 3, 4], [5]]))
    s, _ = finset.image_factorization(finset.compose(finset.inclusion([0, 2, 3, 5], 6), pi))
    assert sorted(s.fiber_sizes()) == [1, 1, 2]
    assert Partition(s.values) == Partition.from_blocks([[0], [1, 2], [3]])


def test_image_factorization_type_is_permutation_invariant():
    f = SetMap(FinSet(5), FinSet(4), (3, 0, 3, 1, 0))
    base = sorted(finset.image_factorization(f)[0].fiber_sizes())
    for g in itertools.permutations(range(5)):
        h = SetMap(FinSet(5), FinSet(4), tuple(f.values[g[x]] for x in range(5)))
        assert sorted(finset.image_factorization(h)[0].fiber_sizes()) == base


def test_pushout_of_equal_maps():
    p = surj([0, 1, 1, 2])
    u, v, i = finset.pushout(p, p)
    assert i.size == 3 and u.is_bijective() and v.is_bijective()


def test_pushout_worked_example_has_two_classes():
    p = to_surjection(Partition.from_blocks([[0, 1], [2, 3, 4], [5]]))
    t = to_surjection(Partition.from_blocks([[0, 1, 5], [2, 3], [4]]))
    u, v, i = finset.pushout(p, t)
    assert i.size == 2
    assert finset.compose(p, u).values == finset.compose(t, v).values
    assert Partition(finset.compose(p, u).values) == Partition.from_blocks([[0, 1, 5], [2, 3, 4]])


def test_pushout_with_terminal_leg():
    _, _, i = finset.pushout(finset.identity(4), finset.constant(4))
    assert i.size == 1


def test_pushout_class_order_puts_s_first():
    # S = {0,1}, X = {0,1}; e0: s1 ~ x0, e1: s0 ~ x1
    u, v, i = finset.pushout(surj([1, 0]), surj([0, 1]))
    assert i.size == 2 and u.values == (0, 1) and v.values == (1, 0)


def test_pushout_of_empty_domain():
    u, v, i = finset.pushout(finset.identity(0), finset.identity(0))
    assert i.size == 0


def test_pushout_symmetric_up_to_iso():
    for n in range(5):
        parts = partitions_list(n)
        for a, b in itertools.product(parts, repeat=2):
            p, t = to_surjection(a), to_surjection(b)
            u1, v1, i1 = finset.pushout(p, t)
            u2, v2, i2 = finset.pushout(t, p)
            assert i1.size == i2.size
            assert Partition(finset.compose(p, u1).values) == Partition(finset.compose(p, v2).values)


def test_pullback_along_identity():
    a = surj([0, 0, 1])
    apex, pr1, pr2 = finset.pullback(a, finset.identity(2))
    assert apex.size == 3 and pr1.is_bijective()


def test_pullback_over_a_point_is_a_product():
    apex, pr1, pr2 = finset.pullback(finset.constant(2), finset.constant(3))
    assert apex.size == 6
    assert list(zip(pr1.values, pr2.values)) == list(itertools.product(range(2), range(3)))


def test_pullback_of_worked_pushout_counts_fibre_pairs():
    p = to_surjection(Partition.from_blocks([[0, 1], [2, 3, 4], [5]]))
    t = to_surjection(Partition.from_blocks([[0, 1, 5], [2, 3], [4]]))
    u, v, i = finset.pushout(p, t)
    apex, _, _ = finset.pullback(u, v)
    expected = sum(u.fibers()[c].__len__() * len(v.fibers()[c]) for c in range(i.size))
    assert apex.size == expected == 2 * 1 + 1 * 2


def test_comparison_map_cases():
    ident = finset.identity(3)
    assert finset.comparison_map(ident, ident).is_bijective()
    assert finset.comparison_map(finset.constant(2), finset.identity(2)).is_injective()


def test_comparison_map_worked_example_image_is_meet():
    pi = Partition.from_blocks([[0, 1], [2, 3, 4], [5]])
    sigma = Partition.from_blocks([[0, 1, 5], [2, 3], [4]])
    phi = finset.comparison_map(to_surjection(pi), to_surjection(sigma))
    s, _ = finset.image_factorization(phi)
    assert s.cod.size == 4
    assert Partition(s.values) == meet(pi, sigma)


def test_pullback_squares_of_surjections_are_pushouts():
    for ni in range(1, 4):
        for ns in range(ni, 4):
            for nx in range(ni, 4):
                for a in finset.all_surjections(ns, ni):
                    for b in finset.all_surjections(nx, ni):
                        apex, pr1, pr2 = finset.pullback(a, b)
                        u, v, i = finset.pushout(pr1, pr2)
                        assert i.size == ni
                        # the comparison I' -> I is well defined and bijective
                        k = finset.factor_through(u, a)
                        assert k is not None and k.is_bijective()
                        assert finset.compose(v, k).values == b.values


def test_square_is_pullback_detects_failure():
    # 2 -> 1 <- 2 has a 4-element pullback; a 2-element top is not it
    c2 = finset.constant(2)
    ident = finset.identity(2)
    assert not finset.square_is_pullback(ident, ident, c2, c2)


def test_factor_through():
    assert finset.factor_through(surj([0, 0, 1]), surj([0, 0, 0])).values == (0, 0)
    assert finset.factor_through(surj([0, 1, 1]), surj([0, 0, 1])) is None


def test_surjection_json_round_trip():
    f = surj([0, 2, 1, 2])
    assert Surjection.from_json(f.to_json()) == f
    assert f.to_json() == {"dom": 4, "cod": 3, "values": [0, 2, 1, 2]}


def test_surjection_automorphisms_match_aut_formula():
    from bialgebras.partition import aut_count

    for n in range(5):
        for p in partitions_list(n):
            f = to_surjection(p)
            assert sum(1 for _ in finset.surjection_isomorphisms(f, f)) == aut_count(lambda_type(p))


def test_union_find_orders_by_smallest_element():
    uf = finset.UnionFind(5)
    uf.union(4, 1)
    uf.union(3, 0)
    assert uf.class_index() == [0, 1, 2, 0, 1]
