"""Finite groupoids presented by an object list and an isomorphism oracle.

Homotopy cardinality, homotopy fibres and the cardinality of a map into a
groupoid are computed straight from the definitions, by listing
isomorphisms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Sequence

from . import finset
from .finset import SetMap
from .partition import Partition


def _compose_perm(first: Sequence[int], second: Sequence[int]) -> tuple[int, ...]:
    return tuple(second[x] for x in first)


class EnumeratedGroupoid:
    """A finite groupoid given extensionally.

    ``iso(x, y)`` returns an iterable of arrows x -> y; ``compose(a, b)`` is
    "a then b".  An optional ``key`` must be an isomorphism invariant that
    separates classes; when present it replaces the pairwise iso search for
    computing pi_0.
    """

    def __init__(
        self,
        objects: Iterable[Any],
        iso: Callable[[Any, Any], Iterable[Any]],
        compose: Callable[[Any, Any], Any] | None = None,
        key: Callable[[Any], Hashable] | None = None,
    ):
        self.objects = list(objects)
        self.iso = iso
        self.compose = compose
        self.key = key
        self._classes: list[list[Any]] | None = None

    def __len__(self):
        return len(self.objects)

    def are_isomorphic(self, x, y) -> bool:
        return next(iter(self.iso(x, y)), None) is not None

    def classes(self) -> list[list[Any]]:
        """Objects grouped by isomorphism class, in order of first occurrence."""
        if self._classes is None:
            groups: list[list[Any]] = []
            if self.key is not None:
                index: dict[Hashable, int] = {}
                for x in self.objects:
                    k = self.key(x)
                    if k not in index:
                        index[k] = len(groups)
                        groups.append([])
                    groups[index[k]].append(x)
            else:
                for x in self.objects:
                    for g in groups:
                        if self.are_isomorphic(g[0], x):
                            g.append(x)
                            break
                    else:
                        groups.append([x])
            self._classes = groups
        return self._classes

    def pi0(self) -> list[Any]:
        return [g[0] for g in self.classes()]

    def aut_size(self, x) -> int:
        return sum(1 for _ in self.iso(x, x))

    def automorphisms(self, x) -> list[Any]:
        return list(self.iso(x, x))

    def cardinality(self) -> Fraction:
        """Sum over isomorphism classes of 1/|aut|."""
        return sum((Fraction(1, self.aut_size(x)) for x in self.pi0()), Fraction(0))

    def class_of(self, x):
        """The representative isomorphic to x."""
        if self.key is not None:
            k = self.key(x)
            for rep in self.pi0():
                if self.key(rep) == k:
                    return rep
        else:
            for rep in self.pi0():
                if self.are_isomorphic(rep, x):
                    return rep
        raise KeyError(f"{x!r} is not isomorphic to any listed object")

    def summary(self) -> list[dict]:
        """Diagnostic dump of pi_0 with automorphism group sizes."""
        return [
            {"representative": repr(rep), "class_size": len(g), "aut": self.aut_size(rep)}
            for rep, g in zip(self.pi0(), self.classes())
        ]


@dataclass
class GroupoidMap:
    source: EnumeratedGroupoid
    target: EnumeratedGroupoid
    on_objects: Callable[[Any], Any]
    on_isos: Callable[[Any, Any, Any], Any]
    """``on_isos(x, y, a)`` is the image of the arrow a: x -> y."""


def homotopy_fiber(f: GroupoidMap, b) -> EnumeratedGroupoid:
    """Objects (x, phi: f(x) -> b); arrows alpha: x -> x' with phi' . f(alpha) == phi."""
    tgt = f.target
    if tgt.compose is None:
        raise ValueError("homotopy fibres need composition in the target groupoid")
    objects = [(x, phi) for x in f.source.objects for phi in tgt.iso(f.on_objects(x), b)]

    def iso(p, q):
        (x, phi), (y, psi) = p, q
        for alpha in f.source.iso(x, y):
            if tgt.compose(f.on_isos(x, y, alpha), psi) == phi:
                yield alpha

    return EnumeratedGroupoid(objects, iso, f.source.compose)


def vector_cardinality(p: GroupoidMap) -> dict[Any, Fraction]:
    """|p| = sum over classes b of |fibre over b| / |aut b|, keyed by representative."""
    out: dict[Any, Fraction] = {}
    for b in p.target.pi0():
        fib = homotopy_fiber(p, b)
        if not fib.objects:
            continue
        out[b] = fib.cardinality() / p.target.aut_size(b)
    return out


# -- constructions ----------------------------------------------------------

def point() -> EnumeratedGroupoid:
    return EnumeratedGroupoid([()], lambda x, y: [()], lambda a, b: ())


def discrete(objects: Iterable[Hashable]) -> EnumeratedGroupoid:
    return EnumeratedGroupoid(
        objects, lambda x, y: [()] if x == y else [], lambda a, b: ()
    )


def name_map(target: EnumeratedGroupoid, b) -> GroupoidMap:
    """The functor 1 -> B picking out b."""
    if target.compose is None:
        raise ValueError("name maps need a target with composition")
    ident = next(a for a in target.iso(b, b) if target.compose(a, a) == a)
    return GroupoidMap(point(), target, lambda _: b, lambda x, y, a: ident)


def identity_map(g: EnumeratedGroupoid) -> GroupoidMap:
    return GroupoidMap(g, g, lambda x: x, lambda x, y, a: a)


def disjoint_union(g: EnumeratedGroupoid, h: EnumeratedGroupoid) -> EnumeratedGroupoid:
    objects = [(0, x) for x in g.objects] + [(1, y) for y in h.objects]

    def iso(p, q):
        if p[0] != q[0]:
            return []
        return (g if p[0] == 0 else h).iso(p[1], q[1])

    return EnumeratedGroupoid(objects, iso)


def product(g: EnumeratedGroupoid, h: EnumeratedGroupoid) -> EnumeratedGroupoid:
    objects = list(itertools.product(g.objects, h.objects))

    def iso(p, q):
        return itertools.product(list(g.iso(p[0], q[0])), list(h.iso(p[1], q[1])))

    return EnumeratedGroupoid(objects, iso)


def finite_sets(sizes: Iterable[int]) -> EnumeratedGroupoid:
    """Sets of the given sizes with all bijections."""
    return EnumeratedGroupoid(
        list(sizes),
        lambda x, y: finset.bijections(x) if x == y else [],
        _compose_perm,
    )


def surjection_groupoid(surjections: Iterable[SetMap], use_key: bool = False) -> EnumeratedGroupoid:
    """Surjections with commutative squares of bijections as arrows."""

    def compose(a, b):
        return (_compose_perm(a[0], b[0]), _compose_perm(a[1], b[1]))

    key = None
    if use_key:
        key = lambda f: (f.dom.size, tuple(sorted(f.fiber_sizes())))
    return EnumeratedGroupoid(
        list(surjections), finset.surjection_isomorphisms, compose, key
    )


def partition_groupoid(n: int, parts: Iterable[Partition] | None = None) -> EnumeratedGroupoid:
    """Partitions of an n-set; arrows are bijections sending blocks to blocks."""
    from .partition import all_partitions

    if parts is None:
        parts = list(all_partitions(n))

    def iso(p: Partition, q: Partition):
        for g in itertools.permutations(range(p.n)):
            # g sends p-blocks to q-blocks iff q(g(x)) is a relabelling of p(x)
            if Partition(tuple(q.block_of[g[x]] for x in range(p.n))) == p:
                yield g

    return EnumeratedGroupoid(parts, iso, _compose_perm)
