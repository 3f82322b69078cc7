import itertools
import math
from fractions import Fraction

import pytest

from bialgebras.partition import BoundError, Lambda, Partition, lambda_type, lambdas_up_to, partitions_list
from bialgebras.series import compose1, plethystic_substitute
from bialgebras.species import (
    PI,
    SINGLETON,
    SINGLETON_PARTITIONAL,
    UNIFORM,
    UNIFORM_PARTITIONAL,
    UNIFORM_PARTITIONAL_POSITIVE,
    cycle_index,
    cycle_type,
    egf,
    fixed_point_sum,
    partitional_substitute_count,
    species_by_name,
    species_substitute_count,
    specialize,
    type_gf,
    unlabelled_count,
)

import oracles

L = Lambda.from_dict


def test_cycle_type():
    assert cycle_type((0, 1, 2)) == L({1: 3})
    assert cycle_type((1, 0, 2)) == L({1: 1, 2: 1})
    assert cycle_type((1, 2, 0)) == L({3: 1})


def test_partition_counts():
    assert PI.count(3) == 5
    assert unlabelled_count(PI, 3) == 3
    assert [unlabelled_count(PI, n) for n in range(7)] == [1, 1, 2, 3, 5, 7, 11]


def test_fixed_point_sum_of_pi_on_three_points():
    # identity fixes 5, each transposition 3, each 3-cycle 2 (the two extremes)
    assert fixed_point_sum(PI, 3) == {L({1: 3}): 5, L({1: 1, 2: 1}): 9, L({3: 1}): 4}


def test_fixed_points_against_block_transport():
    for n in range(6):
        expected = {}
        parts = [oracles.as_set(p) for p in oracles.set_partitions(n)]
        for g in itertools.permutations(range(n)):
            fixed = sum(
                1 for p in parts if frozenset(frozenset(g[x] for x in b) for b in p) == p
            )
            ct = cycle_type(g)
            expected[ct] = expected.get(ct, 0) + fixed
        assert fixed_point_sum(PI, n) == expected


def test_burnside():
    for sp in (PI, UNIFORM, SINGLETON, PI.positive()):
        for n in range(6):
            total = sum(fixed_point_sum(sp, n).values())
            assert Fraction(total, math.factorial(n)) == unlabelled_count(sp, n)


def test_cycle_index_specializations():
    for sp in (PI, UNIFORM, SINGLETON, UNIFORM.positive()):
        z = cycle_index(sp, 5)
        assert specialize(z, powers=False) == egf(sp, 5)
        assert specialize(z, powers=True) == type_gf(sp, 5)


def test_cycle_index_of_uniform_is_exponential():
    z = cycle_index(UNIFORM, 4)
    for lam in lambdas_up_to(4):
        assert z[lam] == Fraction(1, math.prod(k ** m * math.factorial(m) for k, m in lam.parts))


def test_species_by_name():
    assert species_by_name("pi") is PI
    assert species_by_name("uniform+").count(0) == 0
    with pytest.raises(ValueError):
        species_by_name("trees")


def test_species_bound():
    with pytest.raises(BoundError):
        fixed_point_sum(PI, 7)


def test_substitution_counts_match_egf_composition():
    # sets of nonempty sets are set partitions
    e = egf(UNIFORM, 6)
    e_pos = egf(UNIFORM.positive(), 6)
    comp = compose1(e, e_pos)
    for n in range(7):
        assert species_substitute_count(UNIFORM, UNIFORM.positive(), n) == oracles.bell(n)
        assert comp[n] * math.factorial(n) == oracles.bell(n)
    # partitions into partitioned blocks
    comp = compose1(egf(PI, 6), egf(PI.positive(), 6))
    got = [species_substitute_count(PI, PI.positive(), n) for n in range(7)]
    assert got == [1, 1, 4, 22, 154, 1304, 12915]
    assert got == [comp[n] * math.factorial(n) for n in range(7)]


def test_substitution_needs_positive_inner():
    with pytest.raises(ValueError):
        species_substitute_count(UNIFORM, UNIFORM, 2)


def test_partitional_counts():
    sigma = Partition.from_blocks([[0], [1, 2]])
    assert UNIFORM_PARTITIONAL.count(sigma) == 1
    assert UNIFORM_PARTITIONAL_POSITIVE.count(Partition(())) == 0
    assert SINGLETON_PARTITIONAL.count(Partition((0,))) == 1
    assert SINGLETON_PARTITIONAL.count(sigma) == 0


def test_partitional_substitution_matches_series():
    w = 5
    lhs = plethystic_substitute(
        UNIFORM_PARTITIONAL.generating_function(w), UNIFORM_PARTITIONAL_POSITIVE.generating_function(w)
    )
    from bialgebras.partition import aut_count, canonical_partition

    for lam in lambdas_up_to(w):
        count = partitional_substitute_count(
            UNIFORM_PARTITIONAL, UNIFORM_PARTITIONAL_POSITIVE, canonical_partition(lam)
        )
        assert Fraction(count, aut_count(lam)) == lhs[lam]


def test_partitional_substitution_counts_transversals():
    # with both sides uniform every transversal contributes exactly one structure
    from bialgebras.partition import enumerate_transversals

    for n in range(1, 5):
        for sigma in partitions_list(n):
            assert partitional_substitute_count(
                UNIFORM_PARTITIONAL, UNIFORM_PARTITIONAL_POSITIVE, sigma
            ) == len(enumerate_transversals(sigma))


def test_singleton_is_a_unit_for_partitionals():
    for n in range(1, 5):
        for sigma in partitions_list(n):
            assert partitional_substitute_count(SINGLETON_PARTITIONAL, UNIFORM_PARTITIONAL_POSITIVE, sigma) == 1
            count = partitional_substitute_count(UNIFORM_PARTITIONAL, SINGLETON_PARTITIONAL, sigma)
            assert count == 1, lambda_type(sigma)


def test_partitional_inner_must_be_positive():
    with pytest.raises(ValueError):
        partitional_substitute_count(UNIFORM_PARTITIONAL, UNIFORM_PARTITIONAL, Partition((0,)))
