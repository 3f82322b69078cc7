"""The simplicial groupoids NS (chains of surjections) and TS (pyramids).

Pyramid indexing
----------------
A TS n-simplex holds a set X[i, j] for every 0 <= i <= j <= n, drawn with
X[0, n] on top and X[0,0], X[1,1], ..., X[n,n] along the bottom::

                X02
              /     \\
           X01       X12
          /   \\     /   \\
       X00 ---> X11 ---> X22

For i < j there is a *left* leg X[i,j] ->> X[i,j-1] and a *right* leg
X[i,j] ->> X[i+1,j]; along the bottom row a *base* map X[i,i] ->> X[i+1,i+1].
Bottom triangles commute (right = base . left) and every square with
corners (i,j), (i,j-1), (i+1,j), (i+1,j-1) is a pullback.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import finset
from .finset import FinSet, SetMap, Surjection
from .groupoid import EnumeratedGroupoid
from .partition import (
    Lambda,
    Partition,
    commute,
    join,
    partitions_list,
    refines,
)


class SimplexError(ValueError):
    pass


def _perm_compose(first: Sequence[int], second: Sequence[int]) -> tuple[int, ...]:
    return tuple(second[x] for x in first)


# -- NS -------------------------------------------------------------------

@dataclass(frozen=True)
class NSSimplex:
    """A chain E0 ->> E1 ->> ... ->> En of surjections.

    ``point`` is the size of the only set when the chain has no maps.
    """

    maps: tuple[Surjection, ...] = ()
    point: int = 0

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        for f in self.maps:
            if not f.is_surjective():
                raise SimplexError(f"{f.values} is not surjective")
        for f, g in zip(self.maps, self.maps[1:]):
            if f.cod.size != g.dom.size:
                raise SimplexError("chain maps are not composable")
        if self.maps:
            object.__setattr__(self, "point", 0)

    @property
    def level(self) -> int:
        return len(self.maps)

    @property
    def sizes(self) -> list[int]:
        if not self.maps:
            return [self.point]
        return [self.maps[0].dom.size] + [f.cod.size for f in self.maps]

    def to_json(self) -> dict:
        return {"level": self.level, "sizes": self.sizes, "maps": [f.to_json() for f in self.maps]}


def ns_point(k: int) -> NSSimplex:
    return NSSimplex((), k)


def ns_face(i: int, s: NSSimplex) -> NSSimplex:
    n = s.level
    if n == 0 or not 0 <= i <= n:
        raise SimplexError(f"no face d{i} on a {n}-simplex")
    if n == 1:
        return ns_point(s.sizes[1] if i == 0 else s.sizes[0])
    maps = list(s.maps)
    if i == 0:
        maps = maps[1:]
    elif i == n:
        maps = maps[:-1]
    else:
        maps[i - 1:i + 1] = [finset.compose(maps[i - 1], maps[i])]
    return NSSimplex(tuple(maps))


def ns_degeneracy(i: int, s: NSSimplex) -> NSSimplex:
    n = s.level
    if not 0 <= i <= n:
        raise SimplexError(f"no degeneracy s{i} on a {n}-simplex")
    maps = list(s.maps)
    maps.insert(i, finset.identity(s.sizes[i]))
    return NSSimplex(tuple(maps))


def ns_isomorphism(s: NSSimplex, t: NSSimplex):
    """A levelwise bijection s -> t, or None."""
    if s.level != t.level or s.sizes != t.sizes:
        return None
    if s.level == 0:
        return (tuple(range(s.point)),)
    return next(finset.chain_isomorphisms(s.maps, t.maps), None)


def ns_product(s: NSSimplex, t: NSSimplex) -> NSSimplex:
    """Levelwise disjoint union."""
    if s.level != t.level:
        raise SimplexError("monoidal product needs simplices of equal level")
    if s.level == 0:
        return ns_point(s.point + t.point)
    return NSSimplex(tuple(finset.disjoint_union(f, g) for f, g in zip(s.maps, t.maps)))


def ns_empty(n: int) -> NSSimplex:
    if n == 0:
        return ns_point(0)
    return NSSimplex(tuple(finset.identity(0) for _ in range(n)))


def ns_simplices(n: int, max_top: int, include_empty: bool = True) -> Iterator[NSSimplex]:
    """Chains of n surjections with |E0| <= max_top, first-occurrence labelled."""
    if include_empty:
        yield ns_empty(n)
    for m in range(1, max_top + 1):
        if n == 0:
            yield ns_point(m)
            continue
        yield from _ns_chains(m, n)


def _ns_chains(m: int, n: int) -> Iterator[NSSimplex]:
    def rec(size: int, left: int, acc: list[Surjection]):
        if left == 0:
            yield NSSimplex(tuple(acc))
            return
        for word in finset.restricted_growth_strings(size):
            f = Surjection(FinSet(size), FinSet(max(word) + 1), word)
            yield from rec(f.cod.size, left - 1, acc + [f])

    yield from rec(m, n, [])


def ns_edge_key(f: SetMap) -> tuple:
    return (f.dom.size, tuple(sorted(f.fiber_sizes())))


def ns_edge_components(f: SetMap) -> list[Lambda]:
    """A surjection is the disjoint union of its fibres n_i ->> 1."""
    return sorted(Lambda.single(k) for k in f.fiber_sizes())


# -- TS -------------------------------------------------------------------

def positions(n: int) -> list[tuple[int, int]]:
    return [(i, j) for d in range(n + 1) for i in range(n + 1 - d) for j in [i + d]]


class TSSimplex:
    """An n-simplex of TS; see the module docstring for the indexing."""

    def __init__(
        self,
        n: int,
        sizes: dict[tuple[int, int], int],
        left: dict[tuple[int, int], SetMap],
        right: dict[tuple[int, int], SetMap],
        base: Sequence[SetMap],
        check: bool = True,
    ):
        self.n = n
        self.sizes = dict(sizes)
        self.left = dict(left)
        self.right = dict(right)
        self.base = tuple(base)
        if check:
            self.validate()

    # structure

    @property
    def top(self) -> int:
        return self.sizes[(0, self.n)]

    def signature(self) -> tuple:
        return (
            self.n,
            tuple(self.sizes[p] for p in positions(self.n)),
            tuple(self.left[p].values for p in positions(self.n) if p[0] < p[1]),
            tuple(self.right[p].values for p in positions(self.n) if p[0] < p[1]),
            tuple(b.values for b in self.base),
        )

    def __eq__(self, other):
        return isinstance(other, TSSimplex) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return f"TSSimplex(n={self.n}, sizes={[self.sizes[p] for p in positions(self.n)]})"

    def validate(self) -> None:
        n = self.n
        if len(self.base) != n:
            raise SimplexError(f"expected {n} base maps, got {len(self.base)}")
        for i, b in enumerate(self.base):
            self._check_map(b, (i, i), (i + 1, i + 1), "base")
        for i, j in positions(n):
            if i == j:
                continue
            self._check_map(self.left[(i, j)], (i, j), (i, j - 1), "left")
            self._check_map(self.right[(i, j)], (i, j), (i + 1, j), "right")
            if j == i + 1:
                via = finset.compose(self.left[(i, j)], self.base[i])
                if via.values != self.right[(i, j)].values:
                    raise SimplexError(f"bottom triangle at {(i, j)} does not commute")
            elif not finset.square_is_pullback(
                self.left[(i, j)],
                self.right[(i, j)],
                self.right[(i, j - 1)],
                self.left[(i + 1, j)],
            ):
                raise SimplexError(f"square under {(i, j)} is not a pullback")

    def _check_map(self, f: SetMap, src, dst, what):
        if f.dom.size != self.sizes[src] or f.cod.size != self.sizes[dst]:
            raise SimplexError(f"{what} map at {src} has the wrong shape")
        if not f.is_surjective():
            raise SimplexError(f"{what} map at {src} is not surjective")

    def path_from_top(self, pos: tuple[int, int]) -> SetMap:
        """The composite X[0,n] ->> X[i,j]: i right legs, then n-j left legs."""
        i, j = pos
        f: SetMap = finset.identity(self.top)
        for a in range(i):
            f = finset.compose(f, self.right[(a, self.n)])
        for b in range(self.n, j, -1):
            f = finset.compose(f, self.left[(i, b)])
        return f

    def to_json(self) -> dict:
        return {
            "level": self.n,
            "sets": {f"{i}{j}": self.sizes[(i, j)] for i, j in positions(self.n)},
            "left": {f"{i}{j}": list(self.left[(i, j)].values) for i, j in positions(self.n) if i < j},
            "right": {f"{i}{j}": list(self.right[(i, j)].values) for i, j in positions(self.n) if i < j},
            "base": [list(b.values) for b in self.base],
        }


def ts_restrict(s: TSSimplex, theta: Sequence[int]) -> TSSimplex:
    """Pull a simplex back along a monotone map [m] -> [n] given by its values."""
    m = len(theta) - 1
    if any(b < a for a, b in zip(theta, theta[1:])) or (theta and not 0 <= theta[0] <= theta[-1] <= s.n):
        raise SimplexError(f"{list(theta)} is not a monotone map into [{s.n}]")

    def lefts(i: int, j_from: int, j_to: int) -> SetMap:
        f: SetMap = finset.identity(s.sizes[(i, j_from)])
        for j in range(j_from, j_to, -1):
            f = finset.compose(f, s.left[(i, j)])
        return f

    def rights(i_from: int, i_to: int, j: int) -> SetMap:
        f: SetMap = finset.identity(s.sizes[(i_from, j)])
        for i in range(i_from, i_to):
            f = finset.compose(f, s.right[(i, j)])
        return f

    def bases(i_from: int, i_to: int) -> SetMap:
        f: SetMap = finset.identity(s.sizes[(i_from, i_from)])
        for i in range(i_from, i_to):
            f = finset.compose(f, s.base[i])
        return f

    sizes, left, right = {}, {}, {}
    for a, b in positions(m):
        sizes[(a, b)] = s.sizes[(theta[a], theta[b])]
        if a < b:
            left[(a, b)] = lefts(theta[a], theta[b], theta[b - 1])
            right[(a, b)] = rights(theta[a], theta[a + 1], theta[b])
    base = [bases(theta[a], theta[a + 1]) for a in range(m)]
    return TSSimplex(m, sizes, left, right, base)


def ts_face(i: int, s: TSSimplex) -> TSSimplex:
    """d_i: drop every set carrying the index i."""
    if s.n == 0 or not 0 <= i <= s.n:
        raise SimplexError(f"no face d{i} on a {s.n}-simplex")
    return ts_restrict(s, [k for k in range(s.n + 1) if k != i])


def ts_degeneracy(i: int, s: TSSimplex) -> TSSimplex:
    """s_i: repeat every set carrying the index i, filling with identities."""
    if not 0 <= i <= s.n:
        raise SimplexError(f"no degeneracy s{i} on a {s.n}-simplex")
    return ts_restrict(s, [k if k <= i else k - 1 for k in range(s.n + 2)])


def ts_point(k: int) -> TSSimplex:
    return TSSimplex(0, {(0, 0): k}, {}, {}, [])


def ts_from_spine(base: Sequence[SetMap], edges: Sequence[SetMap]) -> TSSimplex:
    """Build a pyramid from its bottom row and its lowest edges by pullbacks.

    ``base[i]: X[i,i] ->> X[i+1,i+1]`` and ``edges[i]: X[i,i+1] ->> X[i,i]``.
    """
    n = len(base)
    if len(edges) != n or n == 0:
        raise SimplexError("spine needs n >= 1 base maps and n edges")
    sizes: dict[tuple[int, int], int] = {}
    left: dict[tuple[int, int], SetMap] = {}
    right: dict[tuple[int, int], SetMap] = {}
    for i in range(n):
        sizes[(i, i)] = base[i].dom.size
        if base[i].dom.size != edges[i].cod.size:
            raise SimplexError(f"edge {i} does not land on X[{i},{i}]")
        if i + 1 < n and base[i].cod.size != base[i + 1].dom.size:
            raise SimplexError("base maps are not composable")
    sizes[(n, n)] = base[-1].cod.size
    for i in range(n):
        sizes[(i, i + 1)] = edges[i].dom.size
        left[(i, i + 1)] = edges[i]
        right[(i, i + 1)] = finset.compose(edges[i], base[i])
    for d in range(2, n + 1):
        for i in range(n + 1 - d):
            j = i + d
            apex, pr1, pr2 = finset.pullback(right[(i, j - 1)], left[(i + 1, j)])
            sizes[(i, j)] = apex.size
            left[(i, j)], right[(i, j)] = pr1, pr2
    return TSSimplex(n, sizes, left, right, base)


def ts_edge(left: SetMap, base: SetMap) -> TSSimplex:
    """The 1-simplex E ->> B ->> I given by E ->> B and B ->> I."""
    return ts_from_spine([base], [left])


def ts_generator(lam: Lambda) -> TSSimplex:
    """The connected 1-simplex E ->> B ->> 1 whose E ->> B has type lam."""
    from .partition import canonical_partition, to_surjection

    sigma = to_surjection(canonical_partition(lam))
    return ts_edge(sigma, finset.constant(sigma.cod.size))


def ts_empty(n: int) -> TSSimplex:
    e = finset.identity(0)
    return TSSimplex(
        n,
        {p: 0 for p in positions(n)},
        {p: e for p in positions(n) if p[0] < p[1]},
        {p: e for p in positions(n) if p[0] < p[1]},
        [e] * n,
    )


def ts_product(s: TSSimplex, t: TSSimplex) -> TSSimplex:
    """Levelwise disjoint union of pyramids."""
    if s.n != t.n:
        raise SimplexError("monoidal product needs simplices of equal level")
    du = finset.disjoint_union
    return TSSimplex(
        s.n,
        {p: s.sizes[p] + t.sizes[p] for p in positions(s.n)},
        {p: du(s.left[p], t.left[p]) for p in s.left},
        {p: du(s.right[p], t.right[p]) for p in s.right},
        [du(a, b) for a, b in zip(s.base, t.base)],
    )


def ts_isomorphisms(s: TSSimplex, t: TSSimplex, fix_top: Sequence[int] | None = None):
    """Levelwise bijections s -> t commuting with every map.

    Each is a tuple of bijections ordered as :func:`positions`.  Every set
    is a quotient of the top one, so a candidate is induced by a bijection
    of the tops.
    """
    n = s.n
    if t.n != n or any(s.sizes[p] != t.sizes[p] for p in positions(n)):
        return
    pos = positions(n)
    ps = {p: s.path_from_top(p).values for p in pos}
    pt = {p: t.path_from_top(p).values for p in pos}
    tops = [tuple(fix_top)] if fix_top is not None else itertools.permutations(range(s.top))
    for a_top in tops:
        alphas = {}
        ok = True
        for p in pos:
            alpha: list[int | None] = [None] * s.sizes[p]
            for x in range(s.top):
                y, y2 = ps[p][x], pt[p][a_top[x]]
                if alpha[y] is None:
                    alpha[y] = y2
                elif alpha[y] != y2:
                    ok = False
                    break
            if not ok:
                break
            alphas[p] = tuple(alpha)
        if not ok or not all(len(set(a)) == len(a) for a in alphas.values()):
            continue
        if _commutes(s, t, alphas):
            yield tuple(alphas[p] for p in pos)


def _commutes(s: TSSimplex, t: TSSimplex, alphas) -> bool:
    def square(f: SetMap, g: SetMap, a_src, a_dst) -> bool:
        return all(a_dst[f.values[x]] == g.values[a_src[x]] for x in range(f.dom.size))

    for (i, j) in positions(s.n):
        if i < j:
            if not square(s.left[(i, j)], t.left[(i, j)], alphas[(i, j)], alphas[(i, j - 1)]):
                return False
            if not square(s.right[(i, j)], t.right[(i, j)], alphas[(i, j)], alphas[(i + 1, j)]):
                return False
    for i, b in enumerate(s.base):
        if not square(b, t.base[i], alphas[(i, i)], alphas[(i + 1, i + 1)]):
            return False
    return True


def ts_isomorphism(s: TSSimplex, t: TSSimplex):
    return next(ts_isomorphisms(s, t), None)


def ts_iso_compose(a, b):
    return tuple(_perm_compose(x, y) for x, y in zip(a, b))


def ts_restrict_iso(n: int, theta: Sequence[int], iso) -> tuple:
    """The image of a levelwise bijection under an injective face map."""
    where = {p: k for k, p in enumerate(positions(n))}
    return tuple(iso[where[(theta[a], theta[b])]] for a, b in positions(len(theta) - 1))


# 1-simplices: E ->> B ->> I, i.e. left = X01 ->> X00 and base = X00 ->> X11

def ts_edge_components(f: TSSimplex) -> list[Lambda]:
    """Connected pieces of a 1-simplex, one per point of I, as types of E_i ->> B_i."""
    if f.n != 1:
        raise SimplexError("components are defined for 1-simplices")
    left, base = f.left[(0, 1)], f.base[0]
    fib = left.fiber_sizes()
    per_point: list[list[int]] = [[] for _ in range(base.cod.size)]
    for b, i in enumerate(base.values):
        per_point[i].append(fib[b])
    return sorted(Lambda.from_sizes(sizes) for sizes in per_point)


def ts_edge_key(f: TSSimplex) -> tuple:
    return tuple(ts_edge_components(f))


def ts_edge_partitions(f: TSSimplex) -> tuple[Partition, Partition]:
    """(sigma, rho): the partitions of E given by E ->> B and E ->> I."""
    left, base = f.left[(0, 1)], f.base[0]
    return Partition(left.values), Partition(finset.compose(left, base).values)


def ts_simplices(n: int, max_top: int, include_empty: bool = True) -> Iterator[TSSimplex]:
    """n-simplices with |X[0,n]| <= max_top, built from canonical spines.

    Every isomorphism class occurs at least once.
    """
    if include_empty:
        yield ts_empty(n)
    if n == 0:
        for k in range(1, max_top + 1):
            yield ts_point(k)
        return

    def bottoms(size: int, left: int, acc: list[Surjection]):
        if left == 0:
            yield list(acc)
            return
        for word in finset.restricted_growth_strings(size):
            f = Surjection(FinSet(size), FinSet(max(word) + 1), word)
            yield from bottoms(f.cod.size, left - 1, acc + [f])

    for b0 in range(1, max_top + 1):
        for base in bottoms(b0, n, []):
            choices = [
                [e for m in range(base[i].dom.size, max_top + 1)
                 for e in finset.sorted_surjections(m, base[i].dom.size)]
                for i in range(n)
            ]
            for edges in itertools.product(*choices):
                if _spine_top_size(base, edges) <= max_top:
                    yield ts_from_spine(base, edges)


def _spine_top_size(base, edges) -> int:
    """|X[0,n]| for the spine, via fibre counts of iterated pullbacks."""
    # fibre sizes of right legs X[i,i+d] -> X[i+1,i+d] indexed by points of X[i+1,i+d]
    # are not enough in general, so fall back to explicit pullbacks for n > 2
    if len(base) == 1:
        return edges[0].dom.size
    if len(base) == 2:
        u = finset.compose(edges[0], base[0]).fiber_sizes()
        v = edges[1].fiber_sizes()
        return sum(a * b for a, b in zip(u, v))
    right = {i: finset.compose(edges[i], base[i]) for i in range(len(base))}
    left = {i: edges[i] for i in range(len(base))}
    for d in range(2, len(base) + 1):
        new_left, new_right = {}, {}
        for i in range(len(base) + 1 - d):
            _, pr1, pr2 = finset.pullback(right[i], left[i + 1])
            new_left[i], new_right[i] = pr1, pr2
        left, right = new_left, new_right
    return left[0].dom.size


def ts_groupoid(simplices: Iterable[TSSimplex], use_key: bool = True) -> EnumeratedGroupoid:
    simplices = list(simplices)
    key = None
    if use_key and simplices and simplices[0].n == 1:
        key = ts_edge_key
    return EnumeratedGroupoid(simplices, ts_isomorphisms, ts_iso_compose, key)


def ts_one_simplices(bound: int) -> EnumeratedGroupoid:
    return ts_groupoid(ts_simplices(1, bound))


def relative_transversals(f: TSSimplex) -> list[tuple[Partition, Partition]]:
    from .partition import enumerate_transversals

    sigma, rho = ts_edge_partitions(f)
    return enumerate_transversals(sigma, within=rho, limit=max(sigma.n, 1))


def transversal_simplex(f: TSSimplex, pi: Partition, tau: Partition) -> TSSimplex:
    """The 2-simplex with d1 = f whose upper legs are pi and tau."""
    from .partition import to_surjection

    sig = f.left[(0, 1)]
    p, t = to_surjection(pi), to_surjection(tau)
    u, v, _ = finset.pushout(p, t)
    e_to_j = finset.compose(p, u)
    g = finset.factor_through(p, sig)
    h = finset.factor_through(sig, e_to_j)
    k = finset.factor_through(e_to_j, finset.compose(sig, f.base[0]))
    if g is None or h is None or k is None:
        raise SimplexError("(pi, tau) is not a transversal of this 1-simplex")
    sizes = {
        (0, 0): f.sizes[(0, 0)], (1, 1): u.cod.size, (2, 2): f.sizes[(1, 1)],
        (0, 1): p.cod.size, (1, 2): t.cod.size, (0, 2): f.top,
    }
    left = {(0, 1): g, (1, 2): v, (0, 2): p}
    right = {(0, 1): u, (1, 2): finset.compose(v, k), (0, 2): t}
    return TSSimplex(2, sizes, left, right, [h, k])


def ts_two_simplices_over(f: TSSimplex) -> EnumeratedGroupoid:
    """2-simplices with d1 equal to f; arrows fix X00, X02 and X22 pointwise."""
    if f.n != 1:
        raise SimplexError("fibres of d1 are taken over 1-simplices")
    objects = [transversal_simplex(f, pi, tau) for pi, tau in relative_transversals(f)]

    def iso(s, t):
        for a in ts_isomorphisms(s, t, fix_top=tuple(range(f.top))):
            if a[2] == tuple(range(s.sizes[(2, 2)])):
                yield a

    return EnumeratedGroupoid(objects, iso, ts_iso_compose)


# -- Segal conditions --------------------------------------------------------

def _count_nested_pairs(m: int) -> int:
    return sum(1 for pi in partitions_list(m) for rho in partitions_list(m) if refines(pi, rho))


def segal_counts_ns(bound: int) -> dict[int, tuple[Fraction, Fraction]]:
    """Per top size m: (|NS_2 restricted to m|, |NS_1 x_{NS_0} NS_1 restricted to m|).

    The first counts labelled chains E ->> K ->> M on an m-set over m!; the
    second sums |iso(d0 a, d1 b)| / (|aut a| |aut b|) over classes of edges.
    """
    edges = surjection_edges(bound)
    classes = edges.pi0()
    aut = {ns_edge_key(a): edges.aut_size(a) for a in classes}
    out = {}
    for m in range(bound + 1):
        labelled = Fraction(_count_nested_pairs(m), math.factorial(m))
        glued = Fraction(0)
        for a in classes:
            if a.dom.size != m:
                continue
            k = a.cod.size
            for b in classes:
                if b.dom.size != k:
                    continue
                glued += Fraction(math.factorial(k), aut[ns_edge_key(a)] * aut[ns_edge_key(b)])
        out[m] = (labelled, glued)
    return out


def surjection_edges(bound: int) -> EnumeratedGroupoid:
    from .groupoid import surjection_groupoid

    surj = [f for m in range(bound + 1) for k in range(m + 1) for f in finset.all_surjections(m, k)]
    return surjection_groupoid(surj, use_key=True)


def ns_glue(a: SetMap, phi: Sequence[int], b: SetMap) -> NSSimplex:
    """The 2-simplex with d2 = a and d0 = b, glued along phi: cod a -> dom b."""
    k = a.cod.size
    phi_map = Surjection(FinSet(k), FinSet(k), tuple(phi))
    return NSSimplex((Surjection.from_map(a), Surjection.from_map(finset.compose(phi_map, b))))


def segal_check_ns(bound: int = 6) -> bool:
    counts = segal_counts_ns(bound)
    if any(l != g for l, g in counts.values()):
        return False
    edges = surjection_edges(min(bound, 4))
    for a in edges.pi0():
        for b in edges.pi0():
            if a.cod.size != b.dom.size:
                continue
            for phi in finset.bijections(a.cod.size):
                s = ns_glue(a, phi, b)
                if ns_face(2, s).maps != (a,):
                    return False
                if ns_isomorphism(ns_face(0, s), NSSimplex((b,))) is None:
                    return False
    return True


def _count_ts_two_simplices(m: int) -> int:
    """Labelled 2-simplices on an m-element top: pi, tau under it, sigma, rho."""
    n_parts = {k: len(partitions_list(k)) for k in range(m + 1)}
    total = 0
    parts = partitions_list(m)
    for pi in parts:
        for tau in parts:
            if len(set(zip(pi.block_of, tau.block_of))) != m or not commute(pi, tau):
                continue
            j = join(pi, tau)
            # sigma between pi and j: independent choices inside each j-block
            pis_in_block = [set() for _ in range(j.block_count)]
            for x in range(m):
                pis_in_block[j.block_of[x]].add(pi.block_of[x])
            between = 1
            for s in pis_in_block:
                between *= n_parts[len(s)]
            total += between * n_parts[j.block_count]
    return total


def segal_counts_ts(bound: int, edges: EnumeratedGroupoid | None = None) -> dict[int, tuple[Fraction, Fraction]]:
    """Per top size m: (|TS_2 restricted to m|, |TS_1 x_{TS_0} TS_1 restricted to m|)."""
    if edges is None:
        edges = ts_one_simplices(bound)
    classes = edges.pi0()
    aut = {ts_edge_key(a): edges.aut_size(a) for a in classes}
    glued: dict[int, Fraction] = {m: Fraction(0) for m in range(bound + 1)}
    by_bottom: dict[int, list[TSSimplex]] = {}
    for b in classes:
        by_bottom.setdefault(b.sizes[(0, 0)], []).append(b)
    for a in classes:
        u = a.right[(0, 1)]
        for b in by_bottom.get(a.sizes[(1, 1)], []):
            v = b.left[(0, 1)]
            fu, fv = u.fiber_sizes(), v.fiber_sizes()
            weight = Fraction(1, aut[ts_edge_key(a)] * aut[ts_edge_key(b)])
            for phi in finset.bijections(len(fu)):
                top = sum(fu[j] * fv[phi[j]] for j in range(len(fu)))
                if top <= bound:
                    glued[top] += weight
    return {
        m: (Fraction(_count_ts_two_simplices(m), math.factorial(m)), glued[m])
        for m in range(bound + 1)
    }


def ts_glue(a: TSSimplex, phi: Sequence[int], b: TSSimplex) -> TSSimplex:
    """Fill the horn (a, b) glued along phi: X11 of a -> X00 of b."""
    k = len(phi)
    phi_map = Surjection(FinSet(k), FinSet(k), tuple(phi))
    back = finset.inverse(phi_map)
    base = [a.base[0], finset.compose(phi_map, b.base[0])]
    edges = [a.left[(0, 1)], finset.compose(b.left[(0, 1)], back)]
    return ts_from_spine(base, edges)


def _fillers_by_brute_force(a: TSSimplex, b: TSSimplex, phi) -> int:
    """Count 2-simplices over the horn, up to isomorphism fixing the horn."""
    glued = ts_glue(a, phi, b)
    s_map, x_map = glued.right[(0, 1)], glued.left[(1, 2)]
    m = glued.top
    found: list[set] = []
    for lv in itertools.product(range(s_map.dom.size), repeat=m):
        l = SetMap(FinSet(m), s_map.dom, lv)
        if not l.is_surjective():
            continue
        for rv in itertools.product(range(x_map.dom.size), repeat=m):
            r = SetMap(FinSet(m), x_map.dom, rv)
            if not finset.square_is_pullback(l, r, s_map, x_map):
                continue
            pairs = frozenset(zip(lv, rv))
            if pairs not in found:
                found.append(pairs)
    return len(found)


def segal_check_ts(bound: int = 6, strict_bound: int = 3) -> bool:
    """Cardinality-level Segal check up to ``bound``; explicit fillers up to ``strict_bound``."""
    counts = segal_counts_ts(bound)
    if any(l != g for l, g in counts.values()):
        return False
    small = ts_one_simplices(strict_bound).pi0()
    for a in small:
        for b in small:
            if a.sizes[(1, 1)] != b.sizes[(0, 0)]:
                continue
            for phi in finset.bijections(a.sizes[(1, 1)]):
                s = ts_glue(a, phi, b)
                if s.top > strict_bound:
                    continue
                if ts_face(2, s) != a:
                    return False
                if ts_isomorphism(ts_face(0, s), b) is None:
                    return False
                if _fillers_by_brute_force(a, b, phi) != 1:
                    return False
    return True


# -- simplicial identities ---------------------------------------------------

def simplicial_identity_failures(simplices: Iterable, family: str) -> list[str]:
    """Check d_i d_j = d_{j-1} d_i and the degeneracy identities up to isomorphism."""
    if family == "NS":
        d, s, iso = ns_face, ns_degeneracy, ns_isomorphism
        level = lambda x: x.level
    elif family == "TS":
        d, s, iso = ts_face, ts_degeneracy, ts_isomorphism
        level = lambda x: x.n
    else:
        raise ValueError(f"unknown family {family!r}")

    def same(a, b) -> bool:
        # strict models usually agree on the nose; fall back to an iso search
        return a == b or iso(a, b) is not None

    bad = []
    for x in simplices:
        n = level(x)
        if n >= 2:
            for j in range(n + 1):
                for i in range(j):
                    if not same(d(i, d(j, x)), d(j - 1, d(i, x))):
                        bad.append(f"d{i}d{j} on {x!r}")
        for j in range(n + 1):
            sx = s(j, x)
            for i in range(n + 2):
                lhs = d(i, sx)
                if i < j:
                    rhs = s(j - 1, d(i, x))
                elif i in (j, j + 1):
                    rhs = x
                else:
                    rhs = s(j, d(i - 1, x))
                if not same(lhs, rhs):
                    bad.append(f"d{i}s{j} on {x!r}")
            for i in range(j + 1):
                if not same(s(i, s(j, x)), s(j + 1, s(i, x))):
                    bad.append(f"s{i}s{j} on {x!r}")
    return bad


def is_degenerate_edge(f) -> bool:
    """Is a 1-simplex (NS surjection or TS edge) in the image of s0, up to iso?"""
    if isinstance(f, TSSimplex):
        return f.left[(0, 1)].is_bijective() and f.base[0].is_bijective()
    return f.is_bijective()
