"""Built-in species and partitionals with their generating functions.

Species: Pi (set partitions), singleton, uniform, each optionally restricted
to nonempty sets.  Partitionals assign a number of structures to a
partition sigma of a finite set; the built-ins depend only on the type of sigma.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .incidence import transversal_components
from .partition import (
    BoundError,
    Lambda,
    Partition,
    enumerate_transversals,
    lambda_type,
    lambdas_up_to,
    partitions_list,
)
from .series import MultiSeries, Series1

SPECIES_LIMIT = 6


def _check_n(n: int, limit: int = SPECIES_LIMIT) -> None:
    if n > limit:
        raise BoundError("n", n, limit, "--max-n")


def cycle_type(perm: tuple[int, ...]) -> Lambda:
    seen = [False] * len(perm)
    sizes = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        sizes.append(length)
    return Lambda.from_sizes(sizes)


@dataclass(frozen=True)
class Species:
    """A species given by its structures on range(n) and transport along bijections."""

    name: str
    structures: Callable[[int], list]
    transport: Callable[[object, tuple[int, ...]], object]
    nonempty: bool = False

    def on(self, n: int) -> list:
        if self.nonempty and n == 0:
            return []
        return self.structures(n)

    def count(self, n: int) -> int:
        return len(self.on(n))

    def positive(self) -> "Species":
        return Species(self.name + "+", self.structures, self.transport, True)


def _transport_partition(pi: Partition, g: tuple[int, ...]) -> Partition:
    labels = [0] * pi.n
    for x, b in enumerate(pi.block_of):
        labels[g[x]] = b
    return Partition(tuple(labels))


PI = Species("pi", lambda n: list(partitions_list(n)), _transport_partition)
SINGLETON = Species("singleton", lambda n: [()] if n == 1 else [], lambda s, g: s)
UNIFORM = Species("uniform", lambda n: [()], lambda s, g: s)

SPECIES = {"pi": PI, "singleton": SINGLETON, "uniform": UNIFORM}


def species_by_name(name: str) -> Species:
    base = name[:-1] if name.endswith("+") else name
    if base not in SPECIES:
        raise ValueError(f"unknown species {name!r}; choose from {sorted(SPECIES)}")
    return SPECIES[base].positive() if name.endswith("+") else SPECIES[base]


def unlabelled_count(sp: Species, n: int) -> int:
    """Orbits of S_n on F[n], by explicit orbit enumeration."""
    _check_n(n)
    remaining = set(sp.on(n))
    orbits = 0
    perms = list(itertools.permutations(range(n)))
    while remaining:
        s = remaining.pop()
        for g in perms:
            remaining.discard(sp.transport(s, g))
        orbits += 1
    return orbits


def fixed_point_sum(sp: Species, n: int) -> dict[Lambda, int]:
    """sum over permutations g of |Fix F[g]| x^{cycle type of g}."""
    _check_n(n)
    structs = sp.on(n)
    out: dict[Lambda, int] = {}
    for g in itertools.permutations(range(n)):
        fixed = sum(1 for s in structs if sp.transport(s, g) == s)
        if fixed:
            ct = cycle_type(g)
            out[ct] = out.get(ct, 0) + fixed
    return out


def cycle_index(sp: Species, n_max: int) -> MultiSeries:
    terms: dict[Lambda, Fraction] = {}
    for n in range(n_max + 1):
        for lam, c in fixed_point_sum(sp, n).items():
            terms[lam] = Fraction(c, math.factorial(n))
    return MultiSeries(terms, n_max)


def egf(sp: Species, n_max: int) -> Series1:
    return Series1([Fraction(sp.count(n), math.factorial(n)) for n in range(n_max + 1)], n_max)


def type_gf(sp: Species, n_max: int) -> Series1:
    return Series1([unlabelled_count(sp, n) for n in range(n_max + 1)], n_max)


def specialize(z: MultiSeries, powers: bool) -> Series1:
    """Z(x, 0, 0, ...) when powers is False, Z(x, x^2, x^3, ...) when True."""
    cs = [Fraction(0)] * (z.weight_bound + 1)
    for lam, c in z.terms.items():
        if powers or all(k == 1 for k, _ in lam.parts):
            cs[lam.weight] += c
    return Series1(cs, z.weight_bound)


def species_tables(sp: Species, n_max: int) -> dict:
    _check_n(n_max)
    return {
        "species": sp.name,
        "labelled": [sp.count(n) for n in range(n_max + 1)],
        "unlabelled": [unlabelled_count(sp, n) for n in range(n_max + 1)],
        "fixed_point_sums": {n: fixed_point_sum(sp, n) for n in range(n_max + 1)},
    }


def species_substitute_count(f: Species, g: Species, n: int) -> int:
    """|(F o G)[n]| = sum over partitions pi of |F[pi]| prod |G[B]|."""
    _check_n(n)
    if g.count(0):
        raise ValueError("the inner species must have no structure on the empty set")
    total = 0
    for pi in partitions_list(n):
        term = f.count(pi.block_count)
        for b in pi.blocks():
            term *= g.count(len(b))
        total += term
    return total


# -- partitionals ---------------------------------------------------------------

@dataclass(frozen=True)
class Partitional:
    """Structure counts M[E, sigma], depending only on the type of sigma."""

    name: str
    count_type: Callable[[Lambda], int]

    def count(self, sigma: Partition) -> int:
        return self.count_type(lambda_type(sigma))

    def generating_function(self, weight_bound: int) -> MultiSeries:
        """sum over lambda of M[lambda] / aut(lambda) x^lambda."""
        from .partition import aut_count

        terms = {
            lam: Fraction(self.count_type(lam), aut_count(lam))
            for lam in lambdas_up_to(weight_bound, include_empty=True)
        }
        return MultiSeries(terms, weight_bound)


UNIFORM_PARTITIONAL = Partitional("uniform", lambda lam: 1)
UNIFORM_PARTITIONAL_POSITIVE = Partitional("uniform+", lambda lam: 1 if lam else 0)
SINGLETON_PARTITIONAL = Partitional("singleton", lambda lam: 1 if lam == Lambda.single(1) else 0)


def partitional_substitute_count(m: Partitional, r: Partitional, sigma: Partition) -> int:
    """|(M o R)[E, sigma]| as a sum over the transversals of sigma.

    M acts on the tau-blocks partitioned by sigma v tau; R acts inside each
    block of sigma v tau on the pi-blocks partitioned by sigma.
    """
    if r.count_type(Lambda()):
        raise ValueError("the inner partitional must have no structure on the empty partition")
    if sigma.n == 0:
        return m.count_type(Lambda())
    total = 0
    for pi, tau in enumerate_transversals(sigma, limit=max(6, sigma.n)):
        left, right = transversal_components(sigma, pi, tau)
        term = 1
        for lam in right:
            term *= m.count_type(lam)
        for lam in left:
            term *= r.count_type(lam)
        total += term
    return total
