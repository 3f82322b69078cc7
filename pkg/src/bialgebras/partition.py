"""Set partitions, their lattice operations, and transversals.

A :class:`Partition` of {0..n-1} is stored as the block index of each
element, blocks numbered by their smallest element (a restricted growth
string).  That makes equal partitions compare equal and hash alike.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from . import finset
from .finset import FinSet, SetMap, Surjection


class BoundError(ValueError):
    """An enumeration was asked to go past its configured size limit."""

    def __init__(self, what: str, value: int, limit: int, option: str | None = None):
        self.what, self.value, self.limit, self.option = what, value, limit, option
        hint = f" (raise it with {option})" if option else ""
        super().__init__(f"{what} = {value} exceeds the configured limit {limit}{hint}")


def _canonical(labels: Sequence[int]) -> tuple[int, ...]:
    index: dict[int, int] = {}
    return tuple(index.setdefault(x, len(index)) for x in labels)


@dataclass(frozen=True, order=True)
class Partition:
    block_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "block_of", _canonical(self.block_of))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> "Partition":
        blocks = [list(b) for b in blocks]
        if any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        elements = sorted(x for b in blocks for x in b)
        if n is None:
            n = len(elements)
        if elements != list(range(n)):
            raise ValueError(f"blocks {blocks} do not partition range({n})")
        labels = [0] * n
        for i, b in enumerate(blocks):
            for x in b:
                labels[x] = i
        return cls(tuple(labels))

    @property
    def n(self) -> int:
        return len(self.block_of)

    @property
    def ground(self) -> FinSet:
        return FinSet(self.n)

    @property
    def block_count(self) -> int:
        return max(self.block_of) + 1 if self.block_of else 0

    def __len__(self):
        return self.block_count

    def blocks(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for x, b in enumerate(self.block_of):
            out[b].append(x)
        return [tuple(b) for b in out]

    def block_masks(self) -> list[int]:
        masks = [0] * self.block_count
        for x, b in enumerate(self.block_of):
            masks[b] |= 1 << x
        return masks

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks()]

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks()) + "}"


def discrete(n: int) -> Partition:
    """The bottom partition, all singletons."""
    return Partition(tuple(range(n)))


def indiscrete(n: int) -> Partition:
    """The top partition, one block (empty when n == 0)."""
    return Partition((0,) * n)


def all_partitions(n: int) -> Iterator[Partition]:
    """All partitions of an n-set, lexicographic in ``block_of``."""
    for word in finset.restricted_growth_strings(n):
        yield Partition(word)


@lru_cache(maxsize=None)
def partitions_list(n: int) -> tuple[Partition, ...]:
    return tuple(all_partitions(n))


def to_surjection(pi: Partition) -> Surjection:
    return Surjection(pi.ground, FinSet(pi.block_count), pi.block_of)


def from_surjection(f: SetMap) -> Partition:
    return Partition(f.values)


def _check_same_ground(a: Partition, b: Partition):
    if a.n != b.n:
        raise ValueError(f"partitions live on different sets ({a.n} vs {b.n} elements)")


def refines(pi: Partition, sigma: Partition) -> bool:
    """pi <= sigma: every block of pi sits inside a block of sigma."""
    _check_same_ground(pi, sigma)
    image: dict[int, int] = {}
    for b, c in zip(pi.block_of, sigma.block_of):
        if image.setdefault(b, c) != c:
            return False
    return True


def meet(pi: Partition, sigma: Partition) -> Partition:
    _check_same_ground(pi, sigma)
    return Partition(tuple(zip(pi.block_of, sigma.block_of)))  # type: ignore[arg-type]


def join(pi: Partition, sigma: Partition) -> Partition:
    """Transitive closure of 'same block of pi or of sigma'."""
    _check_same_ground(pi, sigma)
    uf = finset.UnionFind(pi.n)
    for part in (pi, sigma):
        first: dict[int, int] = {}
        for x, b in enumerate(part.block_of):
            uf.union(first.setdefault(b, x), x)
    return Partition(tuple(uf.class_index()))


def induced(sigma: Partition, pi: Partition) -> Partition:
    """sigma|pi: the partition of the blocks of pi given by the blocks of sigma.

    Requires pi <= sigma.  Blocks of pi are numbered by smallest element.
    """
    if not refines(pi, sigma):
        raise ValueError("induced partition needs pi finer than sigma")
    labels = [0] * pi.block_count
    for x, b in enumerate(pi.block_of):
        labels[b] = sigma.block_of[x]
    return Partition(tuple(labels))


def restrict(pi: Partition, subset: Iterable[int]) -> Partition:
    """pi_B on the elements of B, listed in increasing order."""
    subset = sorted(set(subset))
    if subset and (subset[0] < 0 or subset[-1] >= pi.n):
        raise ValueError(f"subset {subset} not inside range({pi.n})")
    return Partition(tuple(pi.block_of[x] for x in subset))


def independent(pi: Partition, tau: Partition) -> bool:
    """Every block of pi meets every block of tau."""
    _check_same_ground(pi, tau)
    return len(set(zip(pi.block_of, tau.block_of))) == pi.block_count * tau.block_count


def commute(pi: Partition, tau: Partition) -> bool:
    """p ~pi r ~tau q for some r  iff  p ~tau s ~pi q for some s."""
    _check_same_ground(pi, tau)
    pm, tm = pi.block_masks(), tau.block_masks()
    # union of tau-blocks met by each pi-block, and vice versa
    pi_then_tau = [0] * len(pm)
    for x in range(pi.n):
        pi_then_tau[pi.block_of[x]] |= tm[tau.block_of[x]]
    tau_then_pi = [0] * len(tm)
    for x in range(pi.n):
        tau_then_pi[tau.block_of[x]] |= pm[pi.block_of[x]]
    return all(
        pi_then_tau[pi.block_of[p]] == tau_then_pi[tau.block_of[p]] for p in range(pi.n)
    )


def is_transversal(sigma: Partition, pi: Partition, tau: Partition) -> bool:
    _check_same_ground(sigma, pi)
    _check_same_ground(sigma, tau)
    return (
        refines(pi, sigma)
        and meet(pi, tau) == discrete(pi.n)
        and commute(pi, tau)
        and join(sigma, tau) == join(pi, tau)
    )


DEFAULT_TRANSVERSAL_LIMIT = 6


def enumerate_transversals(
    sigma: Partition,
    within: Partition | None = None,
    limit: int = DEFAULT_TRANSVERSAL_LIMIT,
) -> list[tuple[Partition, Partition]]:
    """All labelled transversals (pi, tau) of sigma, by brute force.

    With ``within`` given, only tau finer than it are kept (the relative
    version used for 1-simplices whose right leg is not onto a point).
    Order is lexicographic in (pi.block_of, tau.block_of).
    """
    n = sigma.n
    if n > limit:
        raise BoundError("ground set size", n, limit, "--max-weight")
    parts = partitions_list(n)
    out = []
    for pi in parts:
        if not refines(pi, sigma):
            continue
        for tau in parts:
            if within is not None and not refines(tau, within):
                continue
            if is_transversal(sigma, pi, tau):
                out.append((pi, tau))
    return out


def transversal_diagram_check(sigma: Partition, pi: Partition, tau: Partition) -> bool:
    """The surjection-diagram characterisation of a transversal.

    Pushes out pi and tau to I, asks for the square to be a pullback
    (comparison map bijective), for sigma to factor through pi, and for a
    map B ->> I making E ->> B ->> I the pushout leg.
    """
    s, p, t = to_surjection(sigma), to_surjection(pi), to_surjection(tau)
    u, _, _ = finset.pushout(p, t)
    phi = finset.comparison_map(p, t)
    if not phi.is_bijective():
        return False
    if finset.factor_through(p, s) is None:
        return False
    return finset.factor_through(s, finset.compose(p, u)) is not None


def transversal_orbit_key(
    sigma: Partition, pi: Partition, tau: Partition, symmetries: Sequence[tuple[int, ...]]
) -> tuple:
    """Smallest image of (pi, tau) under the given permutations of the ground set."""
    best = None
    for g in symmetries:
        inv = [0] * len(g)
        for x, y in enumerate(g):
            inv[y] = x
        img = (
            Partition(tuple(pi.block_of[inv[y]] for y in range(len(g)))).block_of,
            Partition(tuple(tau.block_of[inv[y]] for y in range(len(g)))).block_of,
        )
        if best is None or img < best:
            best = img
    return best  # type: ignore[return-value]


def automorphisms(pi: Partition) -> list[tuple[int, ...]]:
    """Permutations of the ground set sending blocks to blocks (brute force)."""
    out = []
    for g in itertools.permutations(range(pi.n)):
        if Partition(tuple(pi.block_of[y] for y in _invert(g))) == pi:
            out.append(g)
    return out


def _invert(g: Sequence[int]) -> list[int]:
    inv = [0] * len(g)
    for x, y in enumerate(g):
        inv[y] = x
    return inv


# -- isomorphism types ----------------------------------------------------

@dataclass(frozen=True, order=True)
class Lambda:
    """Block-size multiplicities (lambda_1, lambda_2, ...), stored sparsely.

    ``parts`` holds (size, multiplicity) pairs sorted by size, multiplicity
    positive.  As a monomial this is x1^l1 x2^l2 ...
    """

    parts: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        merged: dict[int, int] = {}
        for k, m in self.parts:
            if k < 1 or m < 0:
                raise ValueError(f"bad part ({k}, {m})")
            merged[k] = merged.get(k, 0) + m
        object.__setattr__(
            self, "parts", tuple(sorted((k, m) for k, m in merged.items() if m))
        )

    @classmethod
    def from_sizes(cls, sizes: Iterable[int]) -> "Lambda":
        counts: dict[int, int] = {}
        for s in sizes:
            counts[s] = counts.get(s, 0) + 1
        return cls(tuple(counts.items()))

    @classmethod
    def from_dict(cls, d: Mapping) -> "Lambda":
        return cls(tuple((int(k), int(m)) for k, m in d.items()))

    @classmethod
    def from_multiplicities(cls, mults: Sequence[int]) -> "Lambda":
        return cls(tuple((k + 1, m) for k, m in enumerate(mults) if m))

    @classmethod
    def single(cls, k: int) -> "Lambda":
        return cls(((k, 1),))

    def __getitem__(self, k: int) -> int:
        for size, m in self.parts:
            if size == k:
                return m
        return 0

    def __add__(self, other: "Lambda") -> "Lambda":
        return Lambda(self.parts + other.parts)

    def __bool__(self):
        return bool(self.parts)

    @property
    def weight(self) -> int:
        return sum(k * m for k, m in self.parts)

    @property
    def length(self) -> int:
        return sum(m for _, m in self.parts)

    def sizes(self) -> list[int]:
        return [k for k, m in self.parts for _ in range(m)]

    def multiplicities(self) -> list[int]:
        top = self.parts[-1][0] if self.parts else 0
        return [self[k] for k in range(1, top + 1)]

    def scale(self, k: int) -> "Lambda":
        """x_j -> x_{jk} on the monomial."""
        return Lambda(tuple((size * k, m) for size, m in self.parts))

    def to_json(self) -> dict[str, int]:
        return {str(k): m for k, m in self.parts}

    def __str__(self):
        if not self.parts:
            return "1"
        return "".join(f"x{k}" + (f"^{m}" if m > 1 else "") for k, m in self.parts)

    def __repr__(self):
        return f"Lambda({dict(self.parts)})"


def lambda_type(pi: Partition) -> Lambda:
    return Lambda.from_sizes(len(b) for b in pi.blocks())


def aut_count(lam: Lambda) -> int:
    """1!^l1 l1! 2!^l2 l2! ..."""
    out = 1
    for k, m in lam.parts:
        out *= math.factorial(k) ** m * math.factorial(m)
    return out


def canonical_partition(lam: Lambda) -> Partition:
    """A partition of range(weight) of type lam, blocks consecutive, small first."""
    labels = []
    for b, size in enumerate(lam.sizes()):
        labels.extend([b] * size)
    return Partition(tuple(labels))


def integer_partitions(n: int, largest: int | None = None) -> Iterator[list[int]]:
    if largest is None:
        largest = n
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - k, k):
            yield [k] + rest


def lambdas_of_weight(w: int) -> list[Lambda]:
    return sorted(Lambda.from_sizes(p) for p in integer_partitions(w))


def lambdas_up_to(w: int, include_empty: bool = False) -> list[Lambda]:
    out = [lam for k in range(0 if include_empty else 1, w + 1) for lam in lambdas_of_weight(k)]
    return out
