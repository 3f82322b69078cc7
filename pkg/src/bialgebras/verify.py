"""Acceptance checks, shared by the test suite and ``bialgebras report``.

Each check returns a :class:`CheckResult`; nothing here raises on failure.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import finset, incidence, simplicial, species
from .partition import (
    Lambda,
    Partition,
    aut_count,
    automorphisms,
    canonical_partition,
    commute,
    discrete,
    enumerate_transversals,
    from_surjection,
    indiscrete,
    independent,
    induced,
    is_transversal,
    join,
    lambda_type,
    lambdas_of_weight,
    lambdas_up_to,
    meet,
    partitions_list,
    refines,
    restrict,
    to_surjection,
    transversal_diagram_check,
)
from .poly import Poly
from .series import fdb_duality_check, plethystic_duality_check, plethystic_substitute, random_pairs


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    limit_seconds: float | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def within_time(self) -> bool:
        return self.limit_seconds is None or self.seconds < self.limit_seconds

    @property
    def ok(self) -> bool:
        return self.passed and self.within_time

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        budget = f" (limit {self.limit_seconds:g}s)" if self.limit_seconds else ""
        text = f"{status}  {self.name}  [{self.seconds:.2f}s{budget}]"
        return text + (f"  {self.detail}" if self.detail else "")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.ok,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
            "limit_seconds": self.limit_seconds,
            "failures": self.failures[:20],
        }


def _timed(name: str, limit: float | None, body: Callable[[], tuple[list[str], str]]) -> CheckResult:
    start = time.perf_counter()
    failures, detail = body()
    elapsed = time.perf_counter() - start
    return CheckResult(name, not failures, detail if not failures else "; ".join(failures[:3]), elapsed, limit, failures)


# -- worked example ------------------------------------------------------------

# elements 1..6 renamed 0..5
EXAMPLE_PI = Partition.from_blocks([[0, 1], [2, 3, 4], [5]])
EXAMPLE_SIGMA = Partition.from_blocks([[0, 1, 5], [2, 3], [4]])
EXAMPLE_MEET = Partition.from_blocks([[0, 1], [2, 3], [4], [5]])
EXAMPLE_JOIN = Partition.from_blocks([[0, 1, 5], [2, 3, 4]])
# sigma's blocks {1,2,6}, {3,4}, {5} grouped by the join: {{0}, {1, 2}}
EXAMPLE_INDUCED = Partition.from_blocks([[0], [1, 2]])
EXAMPLE_SUBSET = [0, 2, 3, 5]
EXAMPLE_RESTRICTION = Partition.from_blocks([[0], [1, 2], [3]])

# target for the n = 3 fixed-point sum of Pi as given in the acceptance criteria
TARGET_FIXED_POINT_SUM = {Lambda.single(1) + Lambda.single(1) + Lambda.single(1): 5,
                          Lambda.single(1) + Lambda.single(2): 3,
                          Lambda.single(3): 1}


def fixed_point_sum_text(d: dict[Lambda, int]) -> str:
    parts = []
    for lam in sorted(d, key=lambda l: (-l[1], l)):
        c = d[lam]
        parts.append(("" if c == 1 else str(c)) + str(lam))
    return " + ".join(parts)


def check_worked_constants() -> CheckResult:
    def body():
        bad = []
        if meet(EXAMPLE_PI, EXAMPLE_SIGMA) != EXAMPLE_MEET:
            bad.append("meet of the worked example")
        if join(EXAMPLE_PI, EXAMPLE_SIGMA) != EXAMPLE_JOIN:
            bad.append("join of the worked example")
        ind = induced(join(EXAMPLE_PI, EXAMPLE_SIGMA), EXAMPLE_SIGMA)
        if ind != EXAMPLE_INDUCED or lambda_type(ind) != Lambda(((1, 1), (2, 1))):
            bad.append("induced partition of the worked example")
        if restrict(EXAMPLE_PI, EXAMPLE_SUBSET) != EXAMPLE_RESTRICTION:
            bad.append("restriction of the worked example")
        if species.PI.count(3) != 5:
            bad.append("|Pi[3]| != 5")
        if species.unlabelled_count(species.PI, 3) != 3:
            bad.append("unlabelled |Pi[3]| != 3")
        got = species.fixed_point_sum(species.PI, 3)
        if got != TARGET_FIXED_POINT_SUM:
            bad.append(
                f"fixed-point sum n=3 is {fixed_point_sum_text(got)}, "
                f"target {fixed_point_sum_text(TARGET_FIXED_POINT_SUM)}"
            )
        if incidence.counit(Poly.gen(Lambda.single(1))) != 1:
            bad.append("counit of A_(1) != 1")
        return bad, "meet, join, induced, restriction, |Pi[3]|, unlabelled count, counit"

    return _timed("worked-example constants", 1.0, body)


# -- partitions and surjections --------------------------------------------------

def dictionary_failures(max_n: int = 5) -> list[str]:
    """Every partition-side predicate against its surjection-side twin."""
    bad = []
    for n in range(max_n + 1):
        parts = partitions_list(n)
        surj = {p: to_surjection(p) for p in parts}
        for p in parts:
            f = surj[p]
            if from_surjection(f) != p:
                bad.append(f"round trip {p}")
            for a_mask in range(1 << n):
                subset = [x for x in range(n) if a_mask >> x & 1]
                s, _ = finset.image_factorization(finset.compose(finset.inclusion(subset, n), f))
                if from_surjection(s) != restrict(p, subset):
                    bad.append(f"(ii) {p} on {subset}")
        if n:
            if to_surjection(discrete(n)).values != finset.identity(n).values:
                bad.append("(iii) bottom")
            if to_surjection(indiscrete(n)).values != finset.constant(n).values:
                bad.append("(iii) top")
        for p, t in itertools.product(parts, repeat=2):
            sp, st = surj[p], surj[t]
            g = finset.factor_through(sp, st)
            if refines(p, t) != (g is not None):
                bad.append(f"(i) {p} {t}")
            elif g is not None and Partition(g.values) != induced(t, p):
                bad.append(f"(i) induced {p} {t}")
            u, _, apex = finset.pushout(sp, st)
            if Partition(finset.compose(sp, u).values) != join(p, t):
                bad.append(f"(iv) {p} {t}")
            phi = finset.comparison_map(sp, st)
            image_part = from_surjection(finset.image_factorization(phi)[0])
            if image_part != meet(p, t):
                bad.append(f"(v) {p} {t}")
            if (meet(p, t) == discrete(n)) != phi.is_injective():
                bad.append(f"(v) injective {p} {t}")
            if commute(p, t) != phi.is_surjective():
                bad.append(f"(vi) {p} {t}")
            if n and independent(p, t) != (phi.is_surjective() and apex.size == 1):
                bad.append(f"(vii) {p} {t}")
    return bad


def check_dictionary(max_n: int = 5) -> CheckResult:
    return _timed(
        "partition/surjection dictionary (i)-(vii)", 60.0,
        lambda: (dictionary_failures(max_n), f"exhaustive, |E| <= {max_n}"),
    )


def commute_blockwise_failures(max_n: int = 5) -> list[str]:
    bad = []
    for n in range(max_n + 1):
        parts = partitions_list(n)
        for p, t in itertools.product(parts, repeat=2):
            blockwise = all(
                independent(restrict(p, b), restrict(t, b)) for b in join(p, t).blocks()
            )
            if commute(p, t) != blockwise:
                bad.append(f"{p} {t}")
    return bad


def check_commute_blockwise(max_n: int = 5) -> CheckResult:
    return _timed(
        "commuting = independent on every join block", None,
        lambda: (commute_blockwise_failures(max_n), f"exhaustive, |E| <= {max_n}"),
    )


def transversal_failures(max_n: int = 4) -> list[str]:
    bad = []
    for n in range(max_n + 1):
        parts = partitions_list(n)
        for sigma in parts:
            listed = set(enumerate_transversals(sigma))
            by_diagram = {
                (p, t) for p in parts for t in parts if transversal_diagram_check(sigma, p, t)
            }
            by_definition = {(p, t) for p in parts for t in parts if is_transversal(sigma, p, t)}
            if not listed == by_diagram == by_definition:
                bad.append(f"sigma = {sigma}")
    if len(enumerate_transversals(discrete(3))) != 5:
        bad.append("sigma = bottom on a 3-set does not give 5")
    if len(enumerate_transversals(indiscrete(2))) != 2:
        bad.append("sigma = top on a 2-set does not give 2")
    return bad


def check_transversals(max_n: int = 4) -> CheckResult:
    return _timed(
        "transversals: enumeration = diagram check", None,
        lambda: (transversal_failures(max_n), f"exhaustive, |E| <= {max_n}; 5 and 2 reproduced"),
    )


def automorphism_failures(max_n: int = 6) -> list[str]:
    bad = []
    for n in range(max_n + 1):
        parts = partitions_list(n)
        for p in parts:
            if aut_count(lambda_type(p)) != len(automorphisms(p)):
                bad.append(f"aut {p}")
        total = sum(Fraction(math.factorial(n), aut_count(l)) for l in lambdas_of_weight(n))
        if total != len(parts):
            bad.append(f"sum n!/aut(lambda) for n = {n}")
    return bad


def check_automorphisms(max_n: int = 6) -> CheckResult:
    return _timed(
        "aut(lambda) formula and partition counts", None,
        lambda: (automorphism_failures(max_n), f"every partition with |E| <= {max_n}"),
    )


# -- coproducts -------------------------------------------------------------------

def check_fdb(max_n: int = 6, seed: int = 0, trials: int = 20) -> CheckResult:
    def body():
        bad = []
        for n in range(1, max_n + 1):
            d = incidence.fdb_coproduct(n)
            if d != incidence.bell_form(n):
                bad.append(f"n = {n}: coproduct != sum of Bell polynomials")
            for k, (f, g) in enumerate(random_pairs(seed + n, trials, "fdb", n)):
                if not fdb_duality_check(n, f, g, d):
                    bad.append(f"n = {n}: duality fails on trial {k} (seed {seed + n})")
        return bad, f"n <= {max_n}, {trials} random pairs each, seeds {seed + 1}..{seed + max_n}"

    return _timed("Faa di Bruno coproduct and duality", 60.0, body)


def check_plethystic(max_weight: int = 5, seed: int = 0, trials: int = 20) -> CheckResult:
    def body():
        bad = []
        lams = lambdas_up_to(max_weight)
        for i, lam in enumerate(lams):
            d = incidence.plethystic_coproduct(lam, max_weight=max_weight)
            for k, (f, g) in enumerate(random_pairs(seed + 100 + i, trials, "pleth", lam.weight)):
                if not plethystic_duality_check(lam, f, g, d):
                    bad.append(f"{lam}: duality fails on trial {k}")
        return bad, f"all {len(lams)} lambdas of weight <= {max_weight}, {trials} random pairs each"

    return _timed("plethystic coproduct duality", 600.0, body)


def segalcom_failures(ns_bound: int = 5, ts_bound: int = 4) -> list[str]:
    bad = []
    for f in simplicial.surjection_edges(ns_bound).pi0():
        if f.dom.size == 0:
            continue
        if incidence.segalcom_coproduct(f, "NS") != incidence.ns_edge_coproduct(f):
            bad.append(f"NS {f.values}")
    for n in range(1, ns_bound + 1):
        if incidence.segalcom_coproduct(finset.constant(n), "NS") != incidence.fdb_coproduct(n):
            bad.append(f"NS generator {n}")
    for f in simplicial.ts_one_simplices(ts_bound).pi0():
        if f.top == 0:
            continue
        if incidence.segalcom_coproduct(f, "TS") != incidence.ts_edge_coproduct(f):
            bad.append(f"TS {simplicial.ts_edge_key(f)}")
    for lam in lambdas_up_to(ts_bound):
        g = simplicial.ts_generator(lam)
        if incidence.segalcom_coproduct(g, "TS") != incidence.plethystic_coproduct(lam, "delta"):
            bad.append(f"TS generator {lam}")
    return bad


def check_segalcom(ns_bound: int = 5, ts_bound: int = 4) -> CheckResult:
    return _timed(
        "Segal coproduct formula = direct enumeration", None,
        lambda: (segalcom_failures(ns_bound, ts_bound), f"every NS edge n <= {ns_bound}, every TS edge weight <= {ts_bound}"),
    )


def bialgebra_failures(max_n: int = 6, max_weight: int = 5) -> list[str]:
    bad = []
    fdb_keys = [Lambda.single(n) for n in range(1, max_n + 1)]
    for key in fdb_keys:
        if not incidence.is_coassociative(key, incidence.fdb_coproduct_of):
            bad.append(f"FdB coassociativity {key}")
        if not incidence.satisfies_counit(key, incidence.fdb_coproduct_of):
            bad.append(f"FdB counit {key}")
    pleth = [incidence.pleth_delta_basis, incidence.pleth_coefficient_basis]
    for lam in lambdas_up_to(max_weight):
        for delta in pleth:
            if not incidence.is_coassociative(lam, delta):
                bad.append(f"coassociativity {lam} ({delta.__name__})")
            if not incidence.satisfies_counit(lam, delta):
                bad.append(f"counit {lam} ({delta.__name__})")
        bad.extend(incidence.grading_violations(lam))
    # Delta(pq) = Delta(p) Delta(q): the left side straight from a disconnected edge
    for a, b in itertools.combinations_with_replacement(range(1, max_n), 2):
        if a + b > max_n:
            continue
        f = incidence.ns_monomial_surjection([a, b])
        direct = incidence.ns_edge_coproduct(f)
        if direct != incidence.fdb_coproduct(a) * incidence.fdb_coproduct(b):
            bad.append(f"FdB product {a}, {b}")
        mono = Poly({(Lambda.single(a), Lambda.single(b)) if a <= b else (Lambda.single(b), Lambda.single(a)): 1})
        if incidence.apply_counit(direct, 0) != mono or incidence.apply_counit(direct, 1) != mono:
            bad.append(f"FdB counit on product {a}, {b}")
    lams = lambdas_up_to(max_weight)
    for lam, mu in itertools.combinations_with_replacement(lams, 2):
        if lam.weight + mu.weight > max_weight:
            continue
        edge = simplicial.ts_product(simplicial.ts_generator(lam), simplicial.ts_generator(mu))
        direct = incidence.ts_edge_coproduct(edge)
        if direct != incidence.pleth_delta_basis(lam) * incidence.pleth_delta_basis(mu):
            bad.append(f"product {lam}, {mu}")
        coeff = incidence.delta_to_coefficient(direct).scale(Fraction(1, aut_count(lam) * aut_count(mu)))
        if coeff != incidence.pleth_coefficient_basis(lam) * incidence.pleth_coefficient_basis(mu):
            bad.append(f"product in coefficient basis {lam}, {mu}")
        m = Poly({tuple(sorted((lam, mu))): 1})
        if incidence.apply_counit(direct, 0) != m or incidence.apply_counit(direct, 1) != m:
            bad.append(f"counit on product {lam}, {mu}")
        p, q = Poly.gen(lam), Poly.gen(mu)
        if incidence.counit(p * q) != incidence.counit(p) * incidence.counit(q):
            bad.append(f"counit multiplicative {lam}, {mu}")
    return bad


def check_bialgebra(max_n: int = 6, max_weight: int = 5) -> CheckResult:
    return _timed(
        "bialgebra axioms", None,
        lambda: (bialgebra_failures(max_n, max_weight), f"FdB n <= {max_n}, plethystic weight <= {max_weight}"),
    )


def keystone_failures(max_weight: int = 4) -> list[str]:
    m, r = species.UNIFORM_PARTITIONAL, species.UNIFORM_PARTITIONAL_POSITIVE
    oracle = plethystic_substitute(m.generating_function(max_weight), r.generating_function(max_weight))
    bad = []
    for lam in lambdas_up_to(max_weight, include_empty=True):
        count = species.partitional_substitute_count(m, r, canonical_partition(lam))
        if Fraction(count, aut_count(lam)) != oracle[lam]:
            bad.append(f"{lam}: {count}/{aut_count(lam)} != {oracle[lam]}")
    return bad


def check_keystone(max_weight: int = 4) -> CheckResult:
    return _timed(
        "partitional substitution = plethysm of generating functions", None,
        lambda: (keystone_failures(max_weight), f"uniform o uniform+, weight <= {max_weight}"),
    )


def segal_failures(ns_bound: int = 6, ts_bound: int = 6, two_bound: int = 6, three_bound: int = 4) -> list[str]:
    bad = []
    if not simplicial.segal_check_ns(ns_bound):
        bad.append(f"NS Segal check, bound {ns_bound}")
    if not simplicial.segal_check_ts(ts_bound):
        bad.append(f"TS Segal check, bound {ts_bound}")
    for level, bound in ((0, two_bound), (1, two_bound), (2, two_bound), (3, three_bound)):
        bad.extend(simplicial.simplicial_identity_failures(simplicial.ns_simplices(level, bound), "NS"))
        bad.extend(simplicial.simplicial_identity_failures(simplicial.ts_simplices(level, bound), "TS"))
    return bad


def check_segal(ns_bound: int = 6, ts_bound: int = 6, two_bound: int = 6, three_bound: int = 4) -> CheckResult:
    return _timed(
        "Segal conditions and simplicial identities", None,
        lambda: (
            segal_failures(ns_bound, ts_bound, two_bound, three_bound),
            f"Segal bound {ns_bound}/{ts_bound}; identities on simplices up to level 2 with top <= {two_bound}, level 3 with top <= {three_bound}",
        ),
    )


def run_all(max_n: int = 6, max_weight: int = 5, seed: int = 0, trials: int = 20) -> list[CheckResult]:
    """Every acceptance check at the stated bounds, clipped to the given limits."""
    n = min(6, max_n)
    w = min(5, max_weight)
    return [
        check_worked_constants(),
        check_dictionary(),
        check_commute_blockwise(),
        check_transversals(),
        check_automorphisms(),
        check_fdb(n, seed, trials),
        check_plethystic(w, seed, trials),
        check_segalcom(min(5, max_n), min(4, max_weight)),
        check_bialgebra(n, w),
        check_keystone(min(4, max_weight)),
        check_segal(),
    ]
