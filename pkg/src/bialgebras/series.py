"""Truncated power series with exact rational coefficients.

:class:`Series1` is a series in one variable truncated at x^order.
:class:`MultiSeries` is a series in x1, x2, ... truncated by weight, where x_k
has weight k; its monomials are :class:`Lambda` keys (the empty Lambda is 1).
These are the oracles for the coproducts: a coproduct is right when pairing
it against F (x) G matches coefficient extraction from a substitution.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction
from typing import Iterable, Mapping

from .partition import Lambda, lambdas_up_to
from .poly import TensorPoly, frac_str, parse_frac


class SeriesError(ValueError):
    pass


class SeriesParseError(SeriesError):
    def __init__(self, message: str, text: str, position: int):
        self.text, self.position = text, position
        super().__init__(f"{message} at position {position}")


# -- one variable -------------------------------------------------------------

class Series1:
    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = max(len(cs) - 1, 0)
        cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, order: int) -> "Series1":
        return cls([0, 1], order)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n <= self.order else Fraction(0)

    def __eq__(self, other):
        return isinstance(other, Series1) and (self.order, self.coeffs) == (other.order, other.coeffs)

    def __repr__(self):
        return f"Series1({[frac_str(c) for c in self.coeffs]})"

    def truncate(self, order: int) -> "Series1":
        return Series1(self.coeffs, min(order, self.order))

    def __add__(self, other: "Series1") -> "Series1":
        n = min(self.order, other.order)
        return Series1([self[i] + other[i] for i in range(n + 1)], n)

    def scale(self, c) -> "Series1":
        return Series1([c * a for a in self.coeffs], self.order)

    def __mul__(self, other: "Series1") -> "Series1":
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            if self[i]:
                for j in range(n + 1 - i):
                    out[i + j] += self[i] * other[j]
        return Series1(out, n)

    def to_json(self) -> list[str]:
        return [frac_str(c) for c in self.coeffs]


def compose1(g: Series1, f: Series1) -> Series1:
    """G(F(x)); F must have zero constant term."""
    if f[0] != 0:
        raise SeriesError("the inner series must have zero constant term")
    n = min(g.order, f.order)
    out = Series1([0], n)
    power = Series1([1], n)
    for k in range(n + 1):
        if g[k]:
            out = out + power.scale(g[k])
        power = power * f
    return out


def pairing_fdb(n: int, f: Series1) -> Fraction:
    """The n-th derivative at 0."""
    if n > f.order:
        raise SeriesError(f"series of order {f.order} cannot be paired with A_{n}")
    return math.factorial(n) * f[n]


def fdb_duality_check(n: int, f: Series1, g: Series1, coproduct: TensorPoly) -> bool:
    """Delta(A_n)(F (x) G) == A_n(G o F), both sides exact."""
    lhs = Fraction(0)
    for (left, right), c in coproduct.terms.items():
        term = c
        for key in left:
            term *= pairing_fdb(_fdb_index(key), f)
        for key in right:
            term *= pairing_fdb(_fdb_index(key), g)
        lhs += term
    return lhs == pairing_fdb(n, compose1(g, f))


def _fdb_index(key: Lambda) -> int:
    if len(key.parts) != 1 or key.parts[0][1] != 1:
        raise SeriesError(f"{key!r} is not an FdB generator")
    return key.parts[0][0]


# -- infinitely many variables -------------------------------------------------

ONE = Lambda()


class MultiSeries:
    def __init__(self, terms: Mapping[Lambda, object] | None = None, weight_bound: int = 6):
        self.weight_bound = weight_bound
        self.terms: dict[Lambda, Fraction] = {}
        for lam, c in (terms or {}).items():
            c = Fraction(c)
            if c and lam.weight <= weight_bound:
                self.terms[lam] = self.terms.get(lam, 0) + c
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def variable(cls, k: int, weight_bound: int) -> "MultiSeries":
        return cls({Lambda.single(k): 1}, weight_bound)

    @classmethod
    def constant(cls, c, weight_bound: int) -> "MultiSeries":
        return cls({ONE: c}, weight_bound)

    def __eq__(self, other):
        return (
            isinstance(other, MultiSeries)
            and self.weight_bound == other.weight_bound
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"MultiSeries({self}, W={self.weight_bound})"

    def __getitem__(self, lam: Lambda) -> Fraction:
        return self.terms.get(lam, Fraction(0))

    def truncate(self, w: int) -> "MultiSeries":
        return MultiSeries(self.terms, min(w, self.weight_bound))

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        w = min(self.weight_bound, other.weight_bound)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return MultiSeries(out, w)

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "MultiSeries":
        return MultiSeries({k: v * c for k, v in self.terms.items()}, self.weight_bound)

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        w = min(self.weight_bound, other.weight_bound)
        out: dict[Lambda, Fraction] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                if a.weight + b.weight <= w:
                    m = a + b
                    out[m] = out.get(m, 0) + x * y
        return MultiSeries(out, w)

    def reindex(self, k: int) -> "MultiSeries":
        """F_k: substitute x_{jk} for x_j."""
        return MultiSeries({lam.scale(k): c for lam, c in self.terms.items()}, self.weight_bound)

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for lam, c in sorted(self.terms.items(), key=lambda kv: (kv[0].weight, kv[0])):
            if not lam:
                chunks.append(frac_str(c))
            elif c == 1:
                chunks.append(str(lam))
            elif c == -1:
                chunks.append("-" + str(lam))
            else:
                chunks.append(f"{frac_str(c)} {lam}")
        out = chunks[0]
        for ch in chunks[1:]:
            out += " - " + ch[1:] if ch.startswith("-") else " + " + ch
        return out

    __str__ = to_str

    def to_json(self) -> dict:
        return {
            "weight_bound": self.weight_bound,
            "terms": [
                {"monomial": lam.to_json(), "coeff": frac_str(c)}
                for lam, c in sorted(self.terms.items(), key=lambda kv: (kv[0].weight, kv[0]))
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MultiSeries":
        return cls(
            {Lambda.from_dict(t["monomial"]): parse_frac(t["coeff"]) for t in data["terms"]},
            data["weight_bound"],
        )


def plethystic_substitute(g: MultiSeries, f: MultiSeries) -> MultiSeries:
    """G(F_1, F_2, ...) with F_k = F(x_k, x_2k, ...), truncated by weight."""
    if f[ONE] != 0:
        raise SeriesError("the inner series must have zero constant term")
    w = min(g.weight_bound, f.weight_bound)
    f = f.truncate(w)
    powers: dict[tuple[int, int], MultiSeries] = {}

    def power(k: int, e: int) -> MultiSeries:
        if (k, e) not in powers:
            if e == 0:
                powers[(k, e)] = MultiSeries.constant(1, w)
            else:
                powers[(k, e)] = power(k, e - 1) * f.reindex(k)
        return powers[(k, e)]

    out = MultiSeries({}, w)
    for mu, c in g.terms.items():
        if mu.weight > w:
            continue
        term = MultiSeries.constant(c, w)
        for k, e in mu.parts:
            term = term * power(k, e)
        out = out + term
    return out


def pairing(lam: Lambda, f: MultiSeries) -> Fraction:
    """The plain coefficient of x^lam."""
    if lam.weight > f.weight_bound:
        raise SeriesError(f"weight {lam.weight} is past the truncation {f.weight_bound}")
    return f[lam]


def plethystic_duality_check(lam: Lambda, f: MultiSeries, g: MultiSeries, coproduct: TensorPoly) -> bool:
    """Delta(A_lam)(F (x) G) == A_lam(G (.) F), both sides exact."""
    lhs = Fraction(0)
    for (left, right), c in coproduct.terms.items():
        term = c
        for key in left:
            term *= pairing(key, f)
            if not term:
                break
        if term:
            for key in right:
                term *= pairing(key, g)
        lhs += term
    return lhs == pairing(lam, plethystic_substitute(g, f))


# -- random series ----------------------------------------------------------------

def _random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-4, 4), rng.randint(1, 5))


def random_series1(rng: random.Random, order: int, zero_constant: bool = True) -> Series1:
    cs = [_random_fraction(rng) for _ in range(order + 1)]
    if zero_constant:
        cs[0] = Fraction(0)
    return Series1(cs, order)


def random_multiseries(rng: random.Random, weight_bound: int, zero_constant: bool = True) -> MultiSeries:
    terms = {lam: _random_fraction(rng) for lam in lambdas_up_to(weight_bound)}
    if not zero_constant:
        terms[ONE] = _random_fraction(rng)
    return MultiSeries(terms, weight_bound)


def random_pairs(seed: int, trials: int, kind: str, bound: int):
    """Deterministic (F, G) pairs; F always has zero constant term."""
    rng = random.Random(seed)
    for _ in range(trials):
        if kind == "fdb":
            yield random_series1(rng, bound), random_series1(rng, bound, zero_constant=False)
        else:
            yield random_multiseries(rng, bound), random_multiseries(rng, bound, zero_constant=False)


# -- literals ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d*)(?:\^(?P<exp>\d+))?)|(?P<op>[+\-*]))")


def _tokens(text: str):
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            return
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            stripped = len(text) - len(text[pos:].lstrip())
            raise SeriesParseError(f"unexpected character {text[stripped]!r}", text, stripped)
        start = m.start(m.lastgroup if m.lastgroup != "idx" else "var")
        yield m, start
        pos = m.end()


def _parse_terms(text: str, one_variable: bool) -> list[tuple[Fraction, dict[int, int]]]:
    terms: list[tuple[Fraction, dict[int, int]]] = []
    sign = 1
    coeff: Fraction | None = None
    powers: dict[int, int] = {}
    expect_term = True

    def flush(at: int):
        nonlocal coeff, powers, sign
        if coeff is None and not powers:
            raise SeriesParseError("missing term", text, at)
        terms.append((sign * (coeff if coeff is not None else Fraction(1)), powers))
        sign, coeff, powers = 1, None, {}

    last = 0
    for m, start in _tokens(text):
        last = m.end()
        if m.group("op") in ("+", "-"):
            if not expect_term:
                flush(start)
            elif coeff is not None or powers:
                raise SeriesParseError("unexpected sign", text, start)
            sign *= -1 if m.group("op") == "-" else 1
            expect_term = True
            continue
        if m.group("op") == "*":
            if coeff is None and not powers:
                raise SeriesParseError("'*' without a left factor", text, start)
            continue
        expect_term = False
        if m.group("num") is not None:
            if coeff is not None or powers:
                raise SeriesParseError("coefficient must come first", text, start)
            try:
                coeff = Fraction(m.group("num"))
            except ZeroDivisionError:
                raise SeriesParseError("zero denominator", text, start) from None
            continue
        idx = m.group("idx")
        if one_variable:
            if idx:
                raise SeriesParseError("one-variable series use plain x", text, start)
            k = 1
        else:
            if not idx or int(idx) < 1:
                raise SeriesParseError("variables are written x1, x2, ...", text, start)
            k = int(idx)
        powers[k] = powers.get(k, 0) + int(m.group("exp") or 1)
    if expect_term:
        raise SeriesParseError("missing term", text, last)
    flush(last)
    return terms


def parse_multiseries(text: str, weight_bound: int) -> MultiSeries:
    """Parse a literal like ``"x1 + 1/2 x2 + x1^2"``."""
    out: dict[Lambda, Fraction] = {}
    for c, powers in _parse_terms(text, one_variable=False):
        lam = Lambda(tuple(powers.items()))
        out[lam] = out.get(lam, 0) + c
    return MultiSeries(out, weight_bound)


def parse_series1(text: str, order: int) -> Series1:
    """Parse a literal like ``"x + 1/2 x^2"``."""
    cs = [Fraction(0)] * (order + 1)
    for c, powers in _parse_terms(text, one_variable=True):
        e = powers.get(1, 0)
        if e <= order:
            cs[e] += c
    return Series1(cs, order)
