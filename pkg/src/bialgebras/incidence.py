"""Incidence bialgebras of NS and TS: coproducts, counit and products.

Two bases live side by side.  In the *delta* basis a generator is the
homotopy cardinality of a connected 1-simplex, and the coproduct is read
off from 2-simplices with no division at all.  The *coefficient* basis is
the one dual to plain coefficient extraction on power series:

* Faa di Bruno: A_n = delta_n, paired with F by n! [x^n] F.
* plethystic: A_lambda = delta_lambda / aut(lambda), paired with F by [x^lambda] F.

Generator keys are :class:`Lambda` values.  An FdB generator n ->> 1 uses
``Lambda.single(n)``.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from . import finset
from .finset import SetMap
from .groupoid import EnumeratedGroupoid
from .partition import (
    DEFAULT_TRANSVERSAL_LIMIT,
    BoundError,
    Lambda,
    Partition,
    aut_count,
    canonical_partition,
    enumerate_transversals,
    induced,
    join,
    lambda_type,
    partitions_list,
    refines,
)
from .poly import Monomial, Poly, TensorPoly, mono
from .simplicial import (
    TSSimplex,
    relative_transversals,
    surjection_edges,
    ts_edge_key,
    ts_edge_partitions,
    ts_face,
    ts_generator,
    ts_glue,
    ts_one_simplices,
    ts_product,
)

DEFAULT_MAX_N = 8
DEFAULT_MAX_WEIGHT = 6
UNIT_KEY = Lambda.single(1)

Coproduct = Callable[[Lambda], TensorPoly]


# -- Faa di Bruno ------------------------------------------------------------

def _check_n(n: int, max_n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > max_n:
        raise BoundError("n", n, max_n, "--max-n")


def _block_monomial(pi: Partition) -> Monomial:
    return mono(*(Lambda.single(len(b)) for b in pi.blocks()))


@lru_cache(maxsize=None)
def bell_polynomial(n: int, k: int) -> Poly:
    """B_{n,k}(A1, A2, ...): one monomial per partition of an n-set into k blocks."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    out: dict[Monomial, int] = {}
    for pi in partitions_list(n):
        if pi.block_count == k:
            m = _block_monomial(pi)
            out[m] = out.get(m, 0) + 1
    return Poly(out)


@lru_cache(maxsize=None)
def _fdb_cached(n: int) -> TensorPoly:
    out = TensorPoly()
    fact = math.factorial
    for k in range(1, n + 1):
        # labelled surjections n ->> k with fibre sizes c_1..c_k number
        # n!/prod c_i!; each class of n ->> k is met k! times
        for f in finset.sorted_surjections(n, k):
            sizes = f.fiber_sizes()
            labelled = fact(n) // math.prod(fact(c) for c in sizes)
            left = mono(*(Lambda.single(c) for c in sizes))
            out.add_term((left, (Lambda.single(k),)), Fraction(labelled, fact(k)))
    return out


def fdb_coproduct_brute_force(n: int) -> TensorPoly:
    """The same coproduct from every labelled surjection n ->> k (small n only)."""
    out = TensorPoly()
    for k in range(1, n + 1):
        for f in finset.all_surjections(n, k):
            left = mono(*(Lambda.single(s) for s in f.fiber_sizes()))
            out.add_term((left, (Lambda.single(k),)), Fraction(1, math.factorial(k)))
    return out


def fdb_coproduct(n: int, max_n: int = DEFAULT_MAX_N) -> TensorPoly:
    """Delta(delta_n) from factorisations n ->> k ->> 1."""
    _check_n(n, max_n)
    return _fdb_cached(n)


def fdb_coproduct_of(key: Lambda) -> TensorPoly:
    if len(key.parts) != 1 or key.parts[0][1] != 1:
        raise ValueError(f"{key!r} is not an FdB generator")
    return _fdb_cached(key.parts[0][0])


def bell_form(n: int) -> TensorPoly:
    """sum_k B_{n,k} (x) A_k."""
    out = TensorPoly()
    for k in range(1, n + 1):
        for m, c in bell_polynomial(n, k).terms.items():
            out.add_term((m, (Lambda.single(k),)), c)
    return out


# -- NS edges in general -----------------------------------------------------

def ns_edge_monomial(f: SetMap) -> Monomial:
    return mono(*(Lambda.single(s) for s in f.fiber_sizes()))


def ns_edge_coproduct(f: SetMap) -> TensorPoly:
    """Delta(delta_f) for any surjection f, by summing over E ->> E/pi ->> M."""
    rho = Partition(f.values)
    out = TensorPoly()
    for pi in partitions_list(f.dom.size):
        if not refines(pi, rho):
            continue
        left = _block_monomial(pi)
        # fibres of E/pi ->> M: how many pi-blocks sit over each point
        over = [0] * f.cod.size
        for block in pi.blocks():
            over[f.values[block[0]]] += 1
        right = mono(*(Lambda.single(c) for c in over))
        out.add_term((left, right), 1)
    return out


# -- plethystic --------------------------------------------------------------

def transversal_components(
    sigma: Partition, pi: Partition, tau: Partition, rho: Partition | None = None
) -> tuple[Monomial, Monomial]:
    """Split the 2-simplex of a transversal into its d2 and d0 monomials.

    Left: for each block J of pi v tau, the type of sigma restricted to J
    seen on the pi-blocks inside J.  Right: for each block of rho, the type
    of (sigma v tau) seen on the tau-blocks inside it.
    """
    n = sigma.n
    j = join(pi, tau)
    if rho is None:
        rho = Partition((0,) * n)
    sig_on_pi = induced(sigma, pi)
    pi_first = [b[0] for b in pi.blocks()]
    left_sizes: list[list[int]] = [[] for _ in range(j.block_count)]
    seen: dict[tuple[int, int], int] = {}
    for pb, x in enumerate(pi_first):
        key = (j.block_of[x], sig_on_pi.block_of[pb])
        seen[key] = seen.get(key, 0) + 1
    for (jb, _), size in seen.items():
        left_sizes[jb].append(size)
    left = mono(*(Lambda.from_sizes(s) for s in left_sizes))

    j_on_tau = induced(j, tau)
    tau_first = [b[0] for b in tau.blocks()]
    right_sizes: list[dict[int, int]] = [{} for _ in range(rho.block_count)]
    for tb, x in enumerate(tau_first):
        d = right_sizes[rho.block_of[x]]
        d[j_on_tau.block_of[tb]] = d.get(j_on_tau.block_of[tb], 0) + 1
    right = mono(*(Lambda.from_sizes(d.values()) for d in right_sizes))
    return left, right


def _check_weight(lam: Lambda, max_weight: int) -> None:
    if not lam:
        raise ValueError("the empty lambda is the unit, not a generator")
    if lam.weight > max_weight:
        raise BoundError("weight", lam.weight, max_weight, "--max-weight")


@lru_cache(maxsize=None)
def _pleth_delta(lam: Lambda) -> TensorPoly:
    sigma = canonical_partition(lam)
    out = TensorPoly()
    for pi, tau in enumerate_transversals(sigma, limit=max(DEFAULT_TRANSVERSAL_LIMIT, sigma.n)):
        out.add_term(transversal_components(sigma, pi, tau), 1)
    return out


def delta_to_coefficient(t: TensorPoly) -> TensorPoly:
    """Rewrite every delta_mu as aut(mu) A_mu."""
    return t.map_generators(lambda mu: Poly.gen(mu).scale(aut_count(mu)))


def coefficient_to_delta(t: TensorPoly) -> TensorPoly:
    return t.map_generators(lambda mu: Poly.gen(mu).scale(Fraction(1, aut_count(mu))))


@lru_cache(maxsize=None)
def _pleth_coefficient(lam: Lambda) -> TensorPoly:
    return delta_to_coefficient(_pleth_delta(lam)).scale(Fraction(1, aut_count(lam)))


def plethystic_coproduct(
    lam: Lambda, basis: str = "coefficient", max_weight: int = DEFAULT_MAX_WEIGHT
) -> TensorPoly:
    """Delta of the generator indexed by lam, summed over transversals of a sigma of type lam."""
    _check_weight(lam, max_weight)
    if basis == "delta":
        return _pleth_delta(lam)
    if basis == "coefficient":
        return _pleth_coefficient(lam)
    raise ValueError(f"unknown basis {basis!r}")


def ts_edge_coproduct(f: TSSimplex) -> TensorPoly:
    """Delta(delta_f) in the delta basis for any TS 1-simplex, connected or not."""
    sigma, rho = ts_edge_partitions(f)
    out = TensorPoly()
    for pi, tau in relative_transversals(f):
        out.add_term(transversal_components(sigma, pi, tau, rho), 1)
    return out


def ts_edge_monomial(f: TSSimplex) -> Monomial:
    from .simplicial import ts_edge_components

    return mono(*ts_edge_components(f))


# -- counit and algebra structure --------------------------------------------

def counit_generator(key: Lambda) -> Fraction:
    return Fraction(1 if key == UNIT_KEY else 0)


def counit(p: Poly) -> Fraction:
    """epsilon on generators is [key == (1)], extended multiplicatively."""
    total = Fraction(0)
    for m, c in p.terms.items():
        total += c * math.prod((counit_generator(g) for g in m), start=Fraction(1))
    return total


def product(p: Poly, q: Poly) -> Poly:
    return p * q


def coproduct_of_monomial(m: Monomial, delta: Coproduct) -> TensorPoly:
    out = TensorPoly.one()
    for g in m:
        out = out * delta(g)
    return out


def coproduct_of_poly(p: Poly, delta: Coproduct) -> TensorPoly:
    out = TensorPoly()
    for m, c in p.terms.items():
        out = out + coproduct_of_monomial(m, delta).scale(c)
    return out


def apply_coproduct(t: TensorPoly, position: int, delta: Coproduct) -> TensorPoly:
    """Apply Delta to one tensor factor, raising the arity by one."""
    out = TensorPoly(arity=t.arity + 1)
    for key, c in t.terms.items():
        split = coproduct_of_monomial(key[position], delta)
        for (l, r), d in split.terms.items():
            out.add_term(key[:position] + (l, r) + key[position + 1:], c * d)
    return out


def apply_counit(t: TensorPoly, position: int) -> TensorPoly | Poly:
    """Apply epsilon to one tensor factor, lowering the arity by one."""
    if t.arity == 2:
        out: dict[Monomial, Fraction] = {}
        for key, c in t.terms.items():
            e = counit(Poly({key[position]: 1}))
            if e:
                other = key[1 - position]
                out[other] = out.get(other, 0) + c * e
        return Poly(out)
    res = TensorPoly(arity=t.arity - 1)
    for key, c in t.terms.items():
        e = counit(Poly({key[position]: 1}))
        if e:
            res.add_term(key[:position] + key[position + 1:], c * e)
    return res


def is_coassociative(key: Lambda, delta: Coproduct) -> bool:
    d = delta(key)
    return apply_coproduct(d, 0, delta) == apply_coproduct(d, 1, delta)


def satisfies_counit(key: Lambda, delta: Coproduct) -> bool:
    d = delta(key)
    g = Poly.gen(key)
    return apply_counit(d, 0) == g and apply_counit(d, 1) == g


def pleth_delta_basis(key: Lambda) -> TensorPoly:
    return plethystic_coproduct(key, "delta", max_weight=key.weight)


def pleth_coefficient_basis(key: Lambda) -> TensorPoly:
    return plethystic_coproduct(key, "coefficient", max_weight=key.weight)


# -- grading -------------------------------------------------------------------

def grading_violations(lam: Lambda, delta: TensorPoly | None = None) -> list[str]:
    """Check the size bookkeeping of every term of Delta(delta_lam).

    Left generator lengths add up to length(lam); there is one left generator
    per block of the right generator, and pairing left weights with right
    block sizes recovers |E| = weight(lam).
    """
    if delta is None:
        delta = _pleth_delta(lam)
    bad = []
    for (left, right), _ in delta.terms.items():
        if len(right) != 1:
            bad.append(f"{lam}: right factor {right} is not a single generator")
            continue
        (r,) = right
        if sum(g.length for g in left) != lam.length:
            bad.append(f"{lam}: left lengths do not add up")
        if len(left) != r.length:
            bad.append(f"{lam}: {len(left)} left generators for {r.length} right blocks")
            continue
        weights = [g.weight for g in left]
        if not any(
            sum(w * s for w, s in zip(weights, perm)) == lam.weight
            for perm in set(itertools.permutations(r.sizes()))
        ):
            bad.append(f"{lam}: no matching recovers |E|")
    return bad


# -- coproducts from the Segal formula -------------------------------------------------

def _segalcom_sum(
    f_key,
    classes_a: Sequence,
    classes_b: Sequence,
    aut: Callable,
    mid_size: Callable,
    glue_key: Callable,
    mono_of: Callable,
    aut_f: int,
) -> TensorPoly:
    out = TensorPoly()
    for a in classes_a:
        k = mid_size(a)
        for b in classes_b:
            hits = 0
            for phi in finset.bijections(k):
                if glue_key(a, phi, b) == f_key:
                    hits += 1
            if hits:
                coeff = Fraction(hits * aut_f, aut(a) * aut(b))
                out.add_term((mono_of(a), mono_of(b)), coeff)
    return out


@lru_cache(maxsize=None)
def _ns_edge_groupoid(bound: int) -> EnumeratedGroupoid:
    return surjection_edges(bound)


@lru_cache(maxsize=None)
def _ts_edge_groupoid(bound: int) -> EnumeratedGroupoid:
    return ts_one_simplices(bound)


def segalcom_coproduct(f, family: str) -> TensorPoly:
    """Delta(delta_f) as sum over classes a, b of |iso(d0 a, d1 b)_f| / (|aut a| |aut b|).

    iso(d0 a, d1 b)_f is read as pairs (phi, gluing identified with f):
    the number of bijections phi whose composite is isomorphic to f, times
    |aut f|.  Classes and automorphism groups come from the enumerated
    edge groupoids.
    """
    if family == "NS":
        from .simplicial import ns_edge_key

        g = _ns_edge_groupoid(f.dom.size)
        reps = g.pi0()
        aut_of = {ns_edge_key(x): g.aut_size(x) for x in reps}
        a_side = [a for a in reps if a.dom.size == f.dom.size]
        b_side = [b for b in reps if b.cod.size == f.cod.size and b.dom.size <= f.dom.size]

        def glue_key(a, phi, b):
            if a.cod.size != b.dom.size:
                return None
            perm = SetMap(finset.FinSet(len(phi)), finset.FinSet(len(phi)), tuple(phi))
            return ns_edge_key(finset.compose(finset.compose(a, perm), b))

        return _segalcom_sum(
            ns_edge_key(f), a_side, b_side,
            lambda x: aut_of[ns_edge_key(x)],
            lambda a: a.cod.size,
            glue_key,
            ns_edge_monomial,
            aut_of[ns_edge_key(f)] if ns_edge_key(f) in aut_of else g.aut_size(f),
        )
    if family == "TS":
        g = _ts_edge_groupoid(max(f.top, 1))
        reps = g.pi0()
        aut_of = {ts_edge_key(x): g.aut_size(x) for x in reps}
        a_side = [a for a in reps if a.sizes[(0, 0)] == f.sizes[(0, 0)] and a.top <= f.top]
        b_side = [b for b in reps if b.sizes[(1, 1)] == f.sizes[(1, 1)] and b.top <= f.top]

        def glue_key(a, phi, b):
            if a.sizes[(1, 1)] != b.sizes[(0, 0)]:
                return None
            return ts_edge_key(ts_face(1, ts_glue(a, phi, b)))

        return _segalcom_sum(
            ts_edge_key(f), a_side, b_side,
            lambda x: aut_of[ts_edge_key(x)],
            lambda a: a.sizes[(1, 1)],
            glue_key,
            ts_edge_monomial,
            aut_of[ts_edge_key(f)],
        )
    raise ValueError(f"unknown family {family!r}")


def direct_edge_coproduct(f, family: str) -> TensorPoly:
    if family == "NS":
        return ns_edge_coproduct(f)
    if family == "TS":
        return ts_edge_coproduct(f)
    raise ValueError(f"unknown family {family!r}")


def ts_monomial_simplex(m: Monomial) -> TSSimplex:
    """A 1-simplex whose components are the generators of m."""
    from .simplicial import ts_empty

    out = ts_empty(1)
    for g in m:
        out = ts_product(out, ts_generator(g))
    return out


def ns_monomial_surjection(sizes: Sequence[int]) -> SetMap:
    values: list[int] = []
    for b, s in enumerate(sizes):
        values.extend([b] * s)
    return finset.Surjection(finset.FinSet(len(values)), finset.FinSet(len(sizes)), tuple(values))


def edge_type(f: TSSimplex) -> Lambda:
    """lambda-type of E ->> B for a TS 1-simplex."""
    return lambda_type(ts_edge_partitions(f)[0])
