"""Slow, literal reimplementations used only as test oracles."""

import itertools
import math
from fractions import Fraction


def blocks_of(labels):
    out = {}
    for x, b in enumerate(labels):
        out.setdefault(b, set()).add(x)
    return [frozenset(b) for b in out.values()]


def as_set(labels):
    return frozenset(blocks_of(labels))


def meet_blocks(p, q):
    return frozenset(b & c for b in blocks_of(p) for c in blocks_of(q) if b & c)


def join_blocks(p, q):
    n = len(p)
    adj = {x: set() for x in range(n)}
    for labels in (p, q):
        for x, y in itertools.combinations(range(n), 2):
            if labels[x] == labels[y]:
                adj[x].add(y)
                adj[y].add(x)
    seen, out = set(), []
    for x in range(n):
        if x in seen:
            continue
        stack, comp = [x], set()
        while stack:
            z = stack.pop()
            if z in comp:
                continue
            comp.add(z)
            stack.extend(adj[z] - comp)
        seen |= comp
        out.append(frozenset(comp))
    return frozenset(out)


def refines(p, q):
    return all(any(b <= c for c in blocks_of(q)) for b in blocks_of(p))


def commute(p, q):
    """For all x, y: (x ~p r ~q y for some r) iff (x ~q r ~p y for some r)."""
    n = len(p)
    for x in range(n):
        for y in range(n):
            a = any(p[x] == p[r] and q[r] == q[y] for r in range(n))
            b = any(q[x] == q[r] and p[r] == p[y] for r in range(n))
            if a != b:
                return False
    return True


def independent(p, q):
    return all(b & c for b in blocks_of(p) for c in blocks_of(q))


def set_partitions(n):
    """Every partition of range(n) as a tuple of labels, by brute force over label words."""
    seen = set()
    for word in itertools.product(range(n), repeat=n):
        index = {}
        canon = tuple(index.setdefault(x, len(index)) for x in word)
        seen.add(canon)
    return sorted(seen) if n else [()]


def bell(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def stirling2(n, k):
    return sum((-1) ** j * math.comb(k, j) * (k - j) ** n for j in range(k + 1)) // math.factorial(k)


def bell_polynomial_coefficients(n, k):
    """Classical B_{n,k}: n! / prod (j!^{c_j} c_j!) over c with sum c_j = k, sum j c_j = n."""
    out = {}

    def rec(j, left_n, left_k, acc):
        if left_n == 0:
            if left_k == 0:
                coeff = math.factorial(n)
                for size, c in acc:
                    coeff //= math.factorial(size) ** c * math.factorial(c)
                out[tuple(acc)] = coeff
            return
        if j > left_n:
            return
        for c in range(0, min(left_k, left_n // j) + 1):
            rec(j + 1, left_n - j * c, left_k - c, acc + ([(j, c)] if c else []))

    rec(1, n, k, [])
    return out


def derivative_composite(n, g, f):
    """n-th derivative at 0 of G(F(x)) by expanding polynomials directly."""
    order = n
    fpoly = [Fraction(c) for c in f[: order + 1]] + [Fraction(0)] * (order + 1 - len(f))
    result = [Fraction(0)] * (order + 1)
    power = [Fraction(1)] + [Fraction(0)] * order
    for k in range(order + 1):
        gk = Fraction(g[k]) if k < len(g) else Fraction(0)
        for i in range(order + 1):
            result[i] += gk * power[i]
        new = [Fraction(0)] * (order + 1)
        for i in range(order + 1):
            for j in range(order + 1 - i):
                new[i + j] += power[i] * fpoly[j]
        power = new
    return math.factorial(n) * result[n]
