"""Fractional iterates of maps tangent to the identity (characteristic zero).

For such a map g and a monomial m of degree s, the coefficient of m in g^k
is a polynomial in k of degree < s.  It is interpolated from k = 0..s-1 in
Newton forward-difference form and evaluated at rational alpha to define
g^(alpha).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import PreconditionError, VerificationError
from .maps import (
    FormalMap,
    compose,
    identity_map,
    invert,
    is_tangent_identity,
    iterate,
    iterate_table,
    linear_part,
    matrix_order,
)
from .monomial import Monomial, degree, monomials_upto
from .rings import QQ, ZZ, Ring
from .series import Series


def _binomial_poly(j: int) -> list[Fraction]:
    """Coefficients (low to high) of t(t-1)...(t-j+1)/j!."""
    poly = [Fraction(1)]
    for i in range(j):
        # multiply by (t - i) / (i + 1)
        nxt = [Fraction(0)] * (len(poly) + 1)
        for d, a in enumerate(poly):
            nxt[d + 1] += a
            nxt[d] -= a * i
        poly = [a / (i + 1) for a in nxt]
    return poly


def _gen_binomial(alpha: Fraction, j: int) -> Fraction:
    out = Fraction(1)
    for i in range(j):
        out = out * (alpha - i) / (i + 1)
    return out


@dataclass(frozen=True)
class CoeffPoly:
    """Per-component interpolating polynomials for the coefficient of one monomial.

    ``differences[i][j]`` is the j-th forward difference at 0 of
    k -> (g^k)_m in component i.
    """

    monomial: Monomial
    differences: tuple[tuple[Fraction, ...], ...]

    def __call__(self, alpha) -> tuple[Fraction, ...]:
        a = Fraction(alpha)
        n = max((len(d) for d in self.differences), default=0)
        binoms = [_gen_binomial(a, j) for j in range(n)]
        return tuple(sum((dj * binoms[j] for j, dj in enumerate(d)), Fraction(0))
                     for d in self.differences)

    def power_coefficients(self) -> tuple[tuple[Fraction, ...], ...]:
        """Each component in the monomial basis 1, t, t^2, ... (trailing zeros dropped)."""
        out = []
        for d in self.differences:
            acc: list[Fraction] = []
            for j, dj in enumerate(d):
                if dj == 0:
                    continue
                bp = _binomial_poly(j)
                acc += [Fraction(0)] * (len(bp) - len(acc))
                for e, v in enumerate(bp):
                    acc[e] += dj * v
            while acc and acc[-1] == 0:
                acc.pop()
            out.append(tuple(acc))
        return tuple(out)

    @property
    def degree(self):
        """Largest degree over components; -inf when every component vanishes."""
        degs = [len(p) - 1 for p in self.power_coefficients() if p]
        return max(degs) if degs else float("-inf")


def _forward_differences(vals: list[Fraction]) -> tuple[Fraction, ...]:
    out = []
    row = list(vals)
    while row:
        out.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return tuple(out)


def _require_char0_tangent(g: FormalMap):
    if g.ring.characteristic != 0:
        raise PreconditionError(
            "fractional iteration needs characteristic 0; use the c-adic iterates in positive characteristic"
        )
    if not is_tangent_identity(g):
        raise PreconditionError("map is not tangent to the identity")


def coeff_poly(g: FormalMap, m: Monomial, table: list[FormalMap] | None = None) -> CoeffPoly:
    """Interpolate k -> (g^k)_m through k = 0..deg(m)-1."""
    _require_char0_tangent(g)
    m = tuple(m)
    s = degree(m)
    if not 1 <= s <= g.cap:
        raise PreconditionError(f"monomial degree {s} outside 1..{g.cap}")
    if table is None or len(table) < s:
        table = iterate_table(g, s - 1)
    diffs = []
    for i in range(g.dim):
        vals = [Fraction(table[k].components[i].coeff(m)) for k in range(s)]
        diffs.append(_forward_differences(vals))
    return CoeffPoly(m, tuple(diffs))


class Interpolant:
    """All coefficient polynomials of g up to its cap."""

    def __init__(self, g: FormalMap):
        _require_char0_tangent(g)
        self.g = g
        table = iterate_table(g, max(g.cap - 1, 0))
        self.polys = {m: coeff_poly(g, m, table) for m in monomials_upto(g.dim, g.cap, start=1)}

    def at(self, alpha) -> FormalMap:
        g = self.g
        a = Fraction(alpha)
        comps: list[dict] = [{} for _ in range(g.dim)]
        for m, P in self.polys.items():
            for i, v in enumerate(P(a)):
                if v:
                    comps[i][m] = v
        return FormalMap([Series(QQ, g.dim, g.cap, t) for t in comps])


@lru_cache(maxsize=64)
def interpolant(g: FormalMap) -> Interpolant:
    return Interpolant(g)


def frac_iterate(g: FormalMap, alpha) -> FormalMap:
    """g^(alpha) over Q, for rational alpha."""
    return interpolant(g).at(Fraction(alpha))


def integrality_report(h: FormalMap, base: Ring) -> list[tuple[int, Monomial, Fraction]]:
    """Coefficients of h that do not lie in ``base`` (only Z can fail here)."""
    if base != ZZ:
        return []
    out = []
    for i, s in enumerate(h.components):
        for m, c in s.items():
            if Fraction(c).denominator != 1:
                out.append((i, m, Fraction(c)))
    return out


def nth_root(g: FormalMap, n: int) -> FormalMap:
    if n < 1:
        raise PreconditionError("root order must be a positive integer")
    return frac_iterate(g, Fraction(1, n))


def _as_q(g: FormalMap) -> FormalMap:
    return g if g.ring == QQ else g.change_ring(QQ)


def group_law_check(g: FormalMap, a, b) -> bool:
    """g^(a) o g^(b) == g^(a+b) up to the cap."""
    a, b = Fraction(a), Fraction(b)
    return compose(frac_iterate(g, a), frac_iterate(g, b)) == frac_iterate(g, a + b)


def commuting_pair_check(g: FormalMap, h: FormalMap, a, b) -> bool:
    """For commuting g, h: g^(a) o h^(b) == h^(b) o g^(a)."""
    if compose(g, h) != compose(h, g):
        raise PreconditionError("the two maps do not commute; identity not applicable")
    ga, hb = frac_iterate(g, a), frac_iterate(h, b)
    return compose(ga, hb) == compose(hb, ga)


def factor_finite_linear_part(h: FormalMap, order_bound: int = 24):
    """Split h = u o torsion^-1 with u tangent to the identity and torsion of finite order.

    Returns ``(u, torsion, s)`` where s is the order of the linear part,
    u is the s-th root of h^s, and torsion = h^-1 o u has order s.  Both
    factors commute with h.
    """
    R = h.ring
    L = linear_part(h)
    s = matrix_order(L, R, order_bound)
    if s is None:
        raise PreconditionError(f"linear part has no finite order <= {order_bound}")
    c = R.characteristic
    if c and s % c == 0:
        raise PreconditionError(f"characteristic {c} divides the order {s} of the linear part")
    g = iterate(h, s)
    if not is_tangent_identity(g):
        raise VerificationError("h^s is not tangent to the identity")
    if c == 0:
        hh = _as_q(h)
        u = nth_root(g, s)
    else:
        from .cadic import cadic_root

        hh = h
        u = cadic_root(g, s)
    if compose(u, hh) != compose(hh, u):
        raise VerificationError("root does not commute with h")
    torsion = compose(invert(hh), u)
    ident = identity_map(hh.ring, hh.dim, hh.cap)
    if iterate(torsion, s) != ident:
        raise VerificationError("torsion factor does not have order s")
    return u, torsion, s


__all__ = [
    "CoeffPoly",
    "Interpolant",
    "coeff_poly",
    "frac_iterate",
    "integrality_report",
    "nth_root",
    "group_law_check",
    "commuting_pair_check",
    "factor_finite_linear_part",
]
