"""Independent oracles and random generators shared by the test modules."""

from fractions import Fraction
from itertools import product
from math import comb
import random

from formalflows.maps import FormalMap
from formalflows.monomial import monomials_upto
from formalflows.series import Series


def brute_mul(f: Series, g: Series) -> dict:
    """Product by a double loop over every monomial pair of degree <= cap."""
    R, cap = f.ring, f.cap
    mons = [m for m in product(range(cap + 1), repeat=f.dim) if sum(m) <= cap]
    acc = {}
    for a in mons:
        for b in mons:
            if sum(a) + sum(b) > cap:
                continue
            p = tuple(x + y for x, y in zip(a, b))
            acc[p] = acc.get(p, 0) + f.coeff(a) * g.coeff(b)
    return {m: R.reduce(v) for m, v in acc.items() if R.reduce(v) != 0}


def rho_recurrence(mmax, kmax, R):
    """rho_0 = 1, rho_{m+1}(k) = sum_{r<=k} rho_m(r), all inside R."""
    row = [R.one] * (kmax + 1)
    table = [row]
    for _ in range(mmax):
        nxt, acc = [], R.zero
        for v in row:
            acc = R.add(acc, v)
            nxt.append(acc)
        row = nxt
        table.append(row)
    return table


# --- univariate dense helpers, kept apart from the library's sparse kernel --

def upoly_compose(f, g, cap):
    """f(g(x)) for coefficient lists (index = degree), g[0] == 0."""
    out = [Fraction(0)] * (cap + 1)
    power = [Fraction(1)] + [Fraction(0)] * cap
    for e in range(cap + 1):
        if e > 0:
            nxt = [Fraction(0)] * (cap + 1)
            for i, a in enumerate(power):
                if a:
                    for j, b in enumerate(g):
                        if b and i + j <= cap:
                            nxt[i + j] += a * b
            power = nxt
        if e < len(f) and f[e]:
            for i in range(cap + 1):
                out[i] += f[e] * power[i]
    return out


def upoly_iterate(h, n, cap):
    out = [Fraction(0), Fraction(1)] + [Fraction(0)] * (cap - 1)
    for _ in range(n):
        out = upoly_compose(h, out, cap)
    return out


def root_by_degrees(g, n, cap):
    """Solve h^n = g degree by degree for tangent univariate g (coefficient list).

    With h_k unknown and lower coefficients fixed, the x^k coefficient of
    h^n equals n*h_k plus terms already determined.
    """
    g = [Fraction(v) for v in g] + [Fraction(0)] * (cap + 1 - len(g))
    h = [Fraction(0), Fraction(1)] + [Fraction(0)] * (cap - 1)
    for k in range(2, cap + 1):
        rest = upoly_iterate(h, n, cap)[k]
        h[k] = (g[k] - rest) / n
    return h


def inverse_by_degrees(g, cap):
    """Solve h(g(x)) = x degree by degree for tangent univariate g."""
    g = [Fraction(v) for v in g] + [Fraction(0)] * (cap + 1 - len(g))
    h = [Fraction(0), Fraction(1)] + [Fraction(0)] * (cap - 1)
    for k in range(2, cap + 1):
        h[k] = -upoly_compose(h, g, cap)[k]
    return h


def as_list(g: FormalMap):
    s = g.components[0]
    return [Fraction(s.coeff((k,))) for k in range(g.cap + 1)]


def _gbinom(x, i):
    out = Fraction(1)
    for t in range(i):
        out = out * (x - t) / (t + 1)
    return out


def newton_lambda(values):
    """rho-basis coefficients of the polynomial through values at k = 0..n-1.

    Backward differences lower the rho index by one and rho_j(-1) is 1 for
    j = 0 and 0 otherwise, so lambda_i is the i-th backward difference at
    -1.  Values at negative k come from the Newton forward form.
    """
    n = len(values)
    diffs, row = [], [Fraction(v) for v in values]
    while row:
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]

    def f(x):
        return sum((d * _gbinom(Fraction(x), i) for i, d in enumerate(diffs)), Fraction(0))

    return [sum(((-1) ** t * comb(i, t) * f(-1 - t) for t in range(i + 1)), Fraction(0))
            for i in range(n)]


# --- random maps ------------------------------------------------------------

def random_tangent_map(rng: random.Random, ring, dim, cap, density=0.5, spread=3):
    comps = []
    for i in range(dim):
        terms = {tuple(1 if j == i else 0 for j in range(dim)): 1}
        for m in monomials_upto(dim, cap, start=2):
            if rng.random() < density:
                terms[m] = rng.randint(-spread, spread)
        comps.append(Series(ring, dim, cap, terms))
    return FormalMap(comps)


def random_map(rng: random.Random, ring, dim, cap, density=0.5, spread=3):
    comps = []
    for _ in range(dim):
        terms = {m: rng.randint(-spread, spread)
                 for m in monomials_upto(dim, cap, start=1) if rng.random() < density}
        comps.append(Series(ring, dim, cap, terms))
    return FormalMap(comps)


def random_series(rng: random.Random, ring, dim, cap, density=0.5, spread=4, start=0):
    terms = {m: rng.randint(-spread, spread)
             for m in monomials_upto(dim, cap, start=start) if rng.random() < density}
    return Series(ring, dim, cap, terms)
