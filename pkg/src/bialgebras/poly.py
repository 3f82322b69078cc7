"""Exact polynomials in generators indexed by :class:`Lambda`, and their tensor powers.

A monomial is a sorted tuple of generator keys (a multiset).  Coefficients
are :class:`fractions.Fraction`; zero terms are never stored.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .partition import Lambda

Monomial = tuple[Lambda, ...]


def mono(*gens: Lambda) -> Monomial:
    return tuple(sorted(gens))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(sorted(a + b))


def _clean(terms: Mapping) -> dict:
    return {k: Fraction(v) for k, v in terms.items() if v != 0}


def frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


def lambda_label(lam: Lambda, fdb: bool = False) -> str:
    if fdb and len(lam.parts) == 1 and lam.parts[0][1] == 1:
        return f"A{lam.parts[0][0]}"
    return "A[" + str(lam) + "]"


def mono_str(m: Monomial, fdb: bool = False) -> str:
    if not m:
        return "1"
    out = []
    i = 0
    while i < len(m):
        j = i
        while j < len(m) and m[j] == m[i]:
            j += 1
        label = lambda_label(m[i], fdb)
        out.append(label + (f"^{j - i}" if j - i > 1 else ""))
        i = j
    return " ".join(out)


def _coeff_prefix(c: Fraction, is_unit: bool) -> str:
    if is_unit:
        return frac_str(c)
    if c == 1:
        return ""
    if c == -1:
        return "-"
    return frac_str(c) + " "


def _join_terms(chunks: list[str]) -> str:
    if not chunks:
        return "0"
    out = chunks[0]
    for c in chunks[1:]:
        out += " - " + c[1:] if c.startswith("-") else " + " + c
    return out


class Poly:
    def __init__(self, terms: Mapping[Monomial, Fraction | int] | None = None):
        self.terms: dict[Monomial, Fraction] = _clean(terms or {})

    @classmethod
    def gen(cls, lam: Lambda) -> "Poly":
        return cls({(lam,): 1})

    @classmethod
    def one(cls) -> "Poly":
        return cls({(): 1})

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(-1)

    def scale(self, c) -> "Poly":
        return Poly({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict[Monomial, Fraction] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                m = mono_mul(a, b)
                out[m] = out.get(m, 0) + x * y
        return Poly(out)

    def __pow__(self, k: int) -> "Poly":
        out = Poly.one()
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        return f"Poly({self})"

    def to_str(self, fdb: bool = False) -> str:
        chunks = [
            _coeff_prefix(c, not m) + mono_str(m, fdb) if m else frac_str(c)
            for m, c in sorted(self.terms.items())
        ]
        return _join_terms(chunks)

    __str__ = to_str

    def to_json(self) -> list[dict]:
        return [
            {"monomial": [g.to_json() for g in m], "coeff": frac_str(c)}
            for m, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> "Poly":
        out: dict[Monomial, Fraction] = {}
        for term in data:
            m = mono(*(Lambda.from_dict(g) for g in term["monomial"]))
            out[m] = out.get(m, 0) + parse_frac(term["coeff"])
        return cls(out)


class TensorPoly:
    """Linear combinations of m1 (x) m2 (x) ... (x) mk with rational coefficients."""

    def __init__(self, terms: Mapping[tuple[Monomial, ...], Fraction | int] | None = None, arity: int = 2):
        self.terms: dict[tuple[Monomial, ...], Fraction] = _clean(terms or {})
        for key in self.terms:
            if len(key) != arity:
                raise ValueError(f"tensor term {key} does not have {arity} factors")
        self.arity = arity

    @classmethod
    def one(cls, arity: int = 2) -> "TensorPoly":
        return cls({((),) * arity: 1}, arity)

    def __eq__(self, other):
        return isinstance(other, TensorPoly) and self.arity == other.arity and self.terms == other.terms

    def __add__(self, other: "TensorPoly") -> "TensorPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TensorPoly(out, self.arity)

    def __sub__(self, other: "TensorPoly") -> "TensorPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "TensorPoly":
        return TensorPoly({k: v * c for k, v in self.terms.items()}, self.arity)

    def __mul__(self, other: "TensorPoly") -> "TensorPoly":
        if self.arity != other.arity:
            raise ValueError("tensor arities differ")
        out: dict[tuple[Monomial, ...], Fraction] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                key = tuple(mono_mul(p, q) for p, q in zip(a, b))
                out[key] = out.get(key, 0) + x * y
        return TensorPoly(out, self.arity)

    def add_term(self, key: tuple[Monomial, ...], c) -> None:
        v = self.terms.get(key, 0) + c
        if v:
            self.terms[key] = Fraction(v)
        else:
            self.terms.pop(key, None)

    def map_generators(self, f: Callable[[Lambda], Poly]) -> "TensorPoly":
        """Substitute a polynomial for every generator, factor by factor."""
        out = TensorPoly(arity=self.arity)
        cache: dict[Lambda, Poly] = {}
        for key, c in self.terms.items():
            factors = []
            for m in key:
                p = Poly.one()
                for g in m:
                    if g not in cache:
                        cache[g] = f(g)
                    p = p * cache[g]
                factors.append(p)
            for combo in _expand(factors):
                out.add_term(combo[0], c * combo[1])
        return out

    def __repr__(self):
        return f"TensorPoly({self})"

    def to_str(self, fdb: bool = False) -> str:
        chunks = []
        for key, c in sorted(self.terms.items()):
            body = " ⊗ ".join(mono_str(m, fdb) for m in key)
            chunks.append(_coeff_prefix(c, False) + body)
        return _join_terms(chunks)

    __str__ = to_str

    def to_json(self) -> list[dict]:
        return [
            {"monomial": [[g.to_json() for g in m] for m in key], "coeff": frac_str(c)}
            for key, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> "TensorPoly":
        data = list(data)
        arity = len(data[0]["monomial"]) if data else 2
        out = cls(arity=arity)
        for term in data:
            key = tuple(mono(*(Lambda.from_dict(g) for g in m)) for m in term["monomial"])
            out.add_term(key, parse_frac(term["coeff"]))
        return out

    def csv_rows(self, fdb: bool = False) -> list[list[str]]:
        rows = []
        for key, c in sorted(self.terms.items()):
            rows.append([mono_str(m, fdb) for m in key] + [str(c.numerator), str(c.denominator)])
        return rows


def _expand(factors: list[Poly]):
    """All ways of picking one term per factor: yields (key, coefficient)."""
    if not factors:
        yield (), Fraction(1)
        return
    for rest, c in _expand(factors[1:]):
        for m, x in factors[0].terms.items():
            yield (m,) + rest, x * c


def tensor(*polys: Poly) -> TensorPoly:
    out = TensorPoly(arity=len(polys))
    for key, c in _expand(list(polys)):
        out.add_term(key, c)
    return out


def dumps(obj) -> str:
    return json.dumps(obj.to_json(), sort_keys=True)
