"""Finite sets {0, ..., n-1}, maps between them, and surjection diagrams.

Everything here works with canonical carriers: a finite set is just its
size, and a map is the tuple of images.  Isomorphism questions are answered
by explicit bijection search (see :func:`chain_isomorphisms`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class FinSet:
    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 0:
            raise ValueError(f"negative set size {self.size}")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.size:
                raise ValueError("labels must have one entry per element")

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def same_carrier(self, other: "FinSet") -> bool:
        return self.size == other.size


@dataclass(frozen=True)
class SetMap:
    dom: FinSet
    cod: FinSet
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.dom.size:
            raise ValueError(
                f"map has {len(self.values)} values but domain has size {self.dom.size}"
            )
        for v in self.values:
            if not 0 <= v < self.cod.size:
                raise ValueError(f"value {v} outside codomain of size {self.cod.size}")

    @classmethod
    def of(cls, values: Iterable[int], cod: int | None = None) -> "SetMap":
        values = tuple(values)
        if cod is None:
            cod = max(values) + 1 if values else 0
        return cls(FinSet(len(values)), FinSet(cod), values)

    def __call__(self, x: int) -> int:
        return self.values[x]

    def __len__(self):
        return len(self.values)

    def fibers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.cod.size)]
        for x, y in enumerate(self.values):
            out[y].append(x)
        return out

    def fiber_sizes(self) -> list[int]:
        sizes = [0] * self.cod.size
        for y in self.values:
            sizes[y] += 1
        return sizes

    def is_surjective(self) -> bool:
        return len(set(self.values)) == self.cod.size

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_bijective(self) -> bool:
        return self.dom.size == self.cod.size and self.is_injective()

    def image(self) -> list[int]:
        """Image elements in order of first occurrence."""
        seen: dict[int, None] = {}
        for y in self.values:
            seen.setdefault(y, None)
        return list(seen)

    def to_json(self) -> dict:
        return {"dom": self.dom.size, "cod": self.cod.size, "values": list(self.values)}


class Surjection(SetMap):
    """A SetMap whose every codomain element has a nonempty fibre."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_surjective():
            raise ValueError(f"{list(self.values)} is not onto a set of size {self.cod.size}")

    @classmethod
    def from_map(cls, f: SetMap) -> "Surjection":
        return cls(f.dom, f.cod, f.values)

    @classmethod
    def from_json(cls, data: dict) -> "Surjection":
        return cls(FinSet(data["dom"]), FinSet(data["cod"]), tuple(data["values"]))


def identity(n: int) -> Surjection:
    return Surjection(FinSet(n), FinSet(n), tuple(range(n)))


def constant(n: int) -> Surjection:
    """The surjection n ->> 1 (n >= 1), or the empty map when n == 0."""
    return Surjection(FinSet(n), FinSet(1 if n else 0), (0,) * n)


def _as_surjection_if_onto(f: SetMap) -> SetMap:
    if f.is_surjective():
        return Surjection.from_map(f)
    return f


def compose(f: SetMap, g: SetMap) -> SetMap:
    """First ``f`` then ``g``."""
    if f.cod.size != g.dom.size:
        raise ValueError(
            f"cannot compose: codomain size {f.cod.size} != domain size {g.dom.size}"
        )
    h = SetMap(f.dom, g.cod, tuple(g.values[v] for v in f.values))
    return _as_surjection_if_onto(h)


def compose_all(maps: Sequence[SetMap]) -> SetMap:
    out = maps[0]
    for m in maps[1:]:
        out = compose(out, m)
    return out


def inverse(f: SetMap) -> SetMap:
    if not f.is_bijective():
        raise ValueError("only bijections can be inverted")
    inv = [0] * f.dom.size
    for x, y in enumerate(f.values):
        inv[y] = x
    return Surjection(f.cod, f.dom, tuple(inv))


def image_factorization(f: SetMap) -> tuple[Surjection, SetMap]:
    """Factor ``f`` as a surjection followed by an injection.

    Image points are numbered in order of first occurrence in ``f.values``.
    """
    image = f.image()
    index = {y: i for i, y in enumerate(image)}
    s = Surjection(f.dom, FinSet(len(image)), tuple(index[y] for y in f.values))
    i = SetMap(FinSet(len(image)), f.cod, tuple(image))
    return s, i


def inclusion(subset: Sequence[int], n: int) -> SetMap:
    subset = sorted(subset)
    return SetMap(FinSet(len(subset)), FinSet(n), tuple(subset))


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        # keep the smaller element as root so class order is by minimum
        if rx < ry:
            self.parent[ry] = rx
        elif ry < rx:
            self.parent[rx] = ry

    def class_index(self) -> list[int]:
        """Class number of each element, classes ordered by smallest member."""
        index: dict[int, int] = {}
        out = []
        for x in range(len(self.parent)):
            r = self.find(x)
            if r not in index:
                index[r] = len(index)
            out.append(index[r])
        return out


def pushout(p: SetMap, t: SetMap) -> tuple[Surjection, Surjection, FinSet]:
    """Pushout of the span S <- E -> X.

    Returns the legs ``S ->> I`` and ``X ->> I`` and the apex ``I``; classes of
    I are ordered by their smallest element of S + X (S first).
    """
    if p.dom.size != t.dom.size:
        raise ValueError("pushout needs maps with a common domain")
    ns, nx = p.cod.size, t.cod.size
    uf = UnionFind(ns + nx)
    for e in range(p.dom.size):
        uf.union(p.values[e], ns + t.values[e])
    cls = uf.class_index()
    apex = FinSet(max(cls) + 1 if cls else 0)
    left = SetMap(p.cod, apex, tuple(cls[:ns]))
    right = SetMap(t.cod, apex, tuple(cls[ns:]))
    # legs out of S and X cover I only when p and t are onto
    return _as_surjection_if_onto(left), _as_surjection_if_onto(right), apex


def pullback(a: SetMap, b: SetMap) -> tuple[FinSet, SetMap, SetMap]:
    """Fibre product of the cospan S -> I <- X, enumerated lexicographically."""
    if a.cod.size != b.cod.size:
        raise ValueError("pullback needs maps with a common codomain")
    by_base: list[list[int]] = [[] for _ in range(b.cod.size)]
    for x, i in enumerate(b.values):
        by_base[i].append(x)
    pairs = [(s, x) for s in range(a.dom.size) for x in by_base[a.values[s]]]
    apex = FinSet(len(pairs))
    pr1 = SetMap(apex, a.dom, tuple(s for s, _ in pairs))
    pr2 = SetMap(apex, b.dom, tuple(x for _, x in pairs))
    return apex, _as_surjection_if_onto(pr1), _as_surjection_if_onto(pr2)


def pullback_pairs(a: SetMap, b: SetMap) -> list[tuple[int, int]]:
    _, pr1, pr2 = pullback(a, b)
    return list(zip(pr1.values, pr2.values))


def comparison_map(p: SetMap, t: SetMap) -> SetMap:
    """The canonical map E -> S x_I X into the pullback of the pushout of (p, t)."""
    u, v, _ = pushout(p, t)
    apex, pr1, pr2 = pullback(u, v)
    where = {pair: k for k, pair in enumerate(zip(pr1.values, pr2.values))}
    phi = SetMap(p.dom, apex, tuple(where[(p.values[e], t.values[e])] for e in range(p.dom.size)))
    return _as_surjection_if_onto(phi)


def square_is_pullback(top_left: SetMap, top_right: SetMap, bot_left: SetMap, bot_right: SetMap) -> bool:
    """Is the commutative square P -> A -> C, P -> B -> C a pullback?

    ``top_left: P -> A``, ``top_right: P -> B``, ``bot_left: A -> C``,
    ``bot_right: B -> C``.  Checks commutativity and bijectivity of the
    comparison map into the fibre product.
    """
    if compose(top_left, bot_left).values != compose(top_right, bot_right).values:
        return False
    pairs = pullback_pairs(bot_left, bot_right)
    if len(pairs) != top_left.dom.size:
        return False
    got = set(zip(top_left.values, top_right.values))
    return len(got) == len(pairs)


def factor_through(p: SetMap, s: SetMap) -> SetMap | None:
    """The map g with compose(p, g) == s, if p is onto and one exists."""
    if p.dom.size != s.dom.size:
        raise ValueError("factor_through needs a common domain")
    g: list[int | None] = [None] * p.cod.size
    for e in range(p.dom.size):
        y = p.values[e]
        if g[y] is None:
            g[y] = s.values[e]
        elif g[y] != s.values[e]:
            return None
    if any(v is None for v in g):
        return None
    return _as_surjection_if_onto(SetMap(p.cod, s.cod, tuple(g)))  # type: ignore[arg-type]


def disjoint_union(f: SetMap, g: SetMap) -> SetMap:
    dom = FinSet(f.dom.size + g.dom.size)
    cod = FinSet(f.cod.size + g.cod.size)
    vals = f.values + tuple(v + f.cod.size for v in g.values)
    return _as_surjection_if_onto(SetMap(dom, cod, vals))


# -- enumeration ----------------------------------------------------------

def all_maps(n: int, k: int) -> Iterator[SetMap]:
    for vals in itertools.product(range(k), repeat=n):
        yield SetMap(FinSet(n), FinSet(k), vals)


def all_surjections(n: int, k: int) -> Iterator[Surjection]:
    """Every surjection n ->> k, in lexicographic order of values."""
    if k > n or (k == 0 and n > 0):
        return
    for vals in itertools.product(range(k), repeat=n):
        if len(set(vals)) == k:
            yield Surjection(FinSet(n), FinSet(k), vals)


def bijections(n: int) -> Iterator[tuple[int, ...]]:
    return itertools.permutations(range(n))


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """Surjections from n written with first-occurrence codomain labels.

    These are exactly the partitions of {0..n-1}, in lexicographic order.
    """
    if n == 0:
        yield ()
        return
    word = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield tuple(word)
            return
        for v in range(top + 2):
            word[i] = v
            yield from rec(i + 1, max(top, v))

    yield from rec(1, 0)


def sorted_surjections(n: int, k: int) -> Iterator[Surjection]:
    """Non-decreasing surjections n ->> k: one per way of sizing the fibres."""
    if k == 0:
        if n == 0:
            yield identity(0)
        return
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        vals = []
        for y in range(k):
            vals.extend([y] * (bounds[y + 1] - bounds[y]))
        yield Surjection(FinSet(n), FinSet(k), tuple(vals))


# -- isomorphisms of chains of surjections ---------------------------------

def _fiberwise_bijections(f: SetMap, g: SetMap, beta: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Bijections alpha: dom f -> dom g with g . alpha == beta . f."""
    if f.dom.size != g.dom.size:
        return
    ff, gf = f.fibers(), g.fibers()
    choices = []
    for y, fib in enumerate(ff):
        target = gf[beta[y]]
        if len(target) != len(fib):
            return
        choices.append([(fib, perm) for perm in itertools.permutations(target)])
    for pick in itertools.product(*choices):
        alpha = [0] * f.dom.size
        for fib, perm in pick:
            for x, x2 in zip(fib, perm):
                alpha[x] = x2
        yield tuple(alpha)


def chain_isomorphisms(f: Sequence[SetMap], g: Sequence[SetMap]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Levelwise bijections between chains E0 -> E1 -> ... -> Ek.

    Each chain is given by its maps (E_i -> E_{i+1}); yields one tuple of
    bijections (alpha_0, ..., alpha_k) per isomorphism.
    """
    if len(f) != len(g):
        return
    if not f:
        raise ValueError("use bijections() for bare sets")
    top = f[-1].cod.size
    if top != g[-1].cod.size:
        return

    def lift(level: int, below: tuple[tuple[int, ...], ...]):
        # below[0] is the bijection at level `level + 1`
        if level < 0:
            yield below
            return
        for alpha in _fiberwise_bijections(f[level], g[level], below[0]):
            yield from lift(level - 1, (alpha,) + below)

    for beta in itertools.permutations(range(top)):
        yield from lift(len(f) - 1, (beta,))


def surjection_isomorphisms(f: SetMap, g: SetMap) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    for alpha, beta in chain_isomorphisms([f], [g]):
        yield alpha, beta
