"""Truncated multivariate formal power series over an exact ring.

A :class:`Series` stores the coefficients of every monomial of total degree
at most ``cap``.  All operations are exact on those coefficients and keep
nothing above ``cap``; series with different caps never mix.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping

from .errors import NotAUnitError, RingMismatchError
from .monomial import (
    Monomial,
    degree,
    format_monomial,
    grlex_key,
    mono_div,
    mono_hcf,
    one,
    variable,
)
from .rings import Ring

INFINITY = math.inf


class Series:
    """Immutable truncated power series ``sum f_m * m`` with ``deg m <= cap``."""

    __slots__ = ("ring", "dim", "cap", "_terms", "_hash")

    def __init__(self, ring: Ring, dim: int, cap: int, terms: Mapping[Monomial, object] = (), *, _trusted=False):
        if dim < 1:
            raise ValueError("dimension must be positive")
        if cap < 0:
            raise ValueError("cap must be nonnegative")
        self.ring = ring
        self.dim = dim
        self.cap = cap
        if _trusted:
            self._terms = terms
        else:
            clean = {}
            for m, c in dict(terms).items():
                m = tuple(int(e) for e in m)
                if len(m) != dim or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m} for dimension {dim}")
                if sum(m) > cap:
                    continue
                c = ring.reduce(c)
                if c != 0:
                    clean[m] = c
            self._terms = clean
        self._hash = None

    # --- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, ring, dim, cap):
        return cls(ring, dim, cap, {}, _trusted=True)

    @classmethod
    def constant(cls, value, ring, dim, cap):
        return cls(ring, dim, cap, {one(dim): value})

    @classmethod
    def variable(cls, i: int, ring, dim, cap):
        """The series x_{i+1} (``i`` is 0-based)."""
        return cls(ring, dim, cap, {variable(i, dim): 1})

    @classmethod
    def monomial(cls, m: Monomial, ring, dim, cap, coeff=1):
        return cls(ring, dim, cap, {m: coeff})

    def _make(self, terms):
        return Series(self.ring, self.dim, self.cap, terms, _trusted=True)

    # --- inspection -----------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """(monomial, coeff) pairs in graded-lex order."""
        return sorted(self._terms.items(), key=lambda mc: grlex_key(mc[0]))

    def support(self) -> list[Monomial]:
        return sorted(self._terms, key=grlex_key)

    def coeff(self, m: Monomial):
        return self._terms.get(tuple(m), self.ring.zero)

    def __getitem__(self, m):
        return self.coeff(m)

    @property
    def constant_term(self):
        return self.coeff(one(self.dim))

    def is_zero(self) -> bool:
        return not self._terms

    def in_maximal_ideal(self) -> bool:
        """True when the constant term vanishes."""
        return one(self.dim) not in self._terms

    def lower_degree(self):
        if not self._terms:
            return INFINITY
        return min(degree(m) for m in self._terms)

    def homogeneous_part(self, k: int) -> "Series":
        return self._make({m: c for m, c in self._terms.items() if degree(m) == k})

    def truncate(self, cap: int) -> "Series":
        """Drop everything above ``cap`` and re-tag the result at that cap."""
        if cap > self.cap:
            raise ValueError("cannot raise the cap of a truncated series")
        return Series(self.ring, self.dim, cap,
                      {m: c for m, c in self._terms.items() if degree(m) <= cap}, _trusted=True)

    def change_ring(self, ring: Ring) -> "Series":
        return Series(ring, self.dim, self.cap, self._terms)

    # --- arithmetic -----------------------------------------------------
    def _compatible(self, other: "Series"):
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if self.ring != other.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if self.cap != other.cap:
            raise ValueError(f"cap mismatch: {self.cap} vs {other.cap}")

    def __add__(self, other):
        self._compatible(other)
        R = self.ring
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = R.reduce(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return self._make(out)

    def __neg__(self):
        R = self.ring
        return self._make({m: R.reduce(-c) for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        self._compatible(other)
        R, cap = self.ring, self.cap
        acc: dict = {}
        b_items = [(m, sum(m), c) for m, c in other._terms.items()]
        for ma, ca in self._terms.items():
            da = sum(ma)
            room = cap - da
            for mb, db, cb in b_items:
                if db > room:
                    continue
                key = tuple(x + y for x, y in zip(ma, mb))
                acc[key] = acc.get(key, 0) + ca * cb
        out = {}
        for m, v in acc.items():
            v = R.reduce(v)
            if v:
                out[m] = v
        return self._make(out)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def scale(self, scalar) -> "Series":
        R = self.ring
        s = R.reduce(scalar)
        if s == 0:
            return self._make({})
        out = {}
        for m, c in self._terms.items():
            v = R.reduce(c * s)
            if v:
                out[m] = v
        return self._make(out)

    def __pow__(self, n: int):
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = Series.constant(1, self.ring, self.dim, self.cap)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def unit_inverse(self) -> "Series":
        """Multiplicative inverse; requires a unit constant term.

        Writes f = f_1 (1 + h) with h in the maximal ideal and sums the
        geometric series 1 - h + h^2 - ... up to the cap.
        """
        R = self.ring
        f1 = self.constant_term
        if not R.is_unit(f1):
            raise NotAUnitError(f"constant term {R.format(f1)} is not a unit of {R}")
        inv1 = R.unit_inverse(f1)
        h = (self - Series.constant(f1, R, self.dim, self.cap)).scale(inv1)
        total = Series.constant(1, R, self.dim, self.cap)
        power = total
        for _ in range(self.cap):
            power = -(power * h)
            if power.is_zero():
                break
            total = total + power
        return total.scale(inv1)

    def vertex(self) -> Monomial:
        """Highest common factor of the support."""
        if not self._terms:
            raise ValueError("the zero series has no vertex")
        return mono_hcf(self._terms)

    def vertex_cofactor(self) -> "Series":
        """The series h with f = vertex(f) * h and vertex(h) = 1."""
        v = self.vertex()
        return self._make({mono_div(m, v): c for m, c in self._terms.items()})

    # --- comparison / rendering -----------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        self._compatible(other)
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.dim, self.cap, frozenset(self._terms.items())))
        return self._hash

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        R = self.ring
        pieces = []
        for m, c in self.items():
            cs = R.format(c)
            mono = format_monomial(m)
            neg = cs.startswith("-")
            mag = cs[1:] if neg else cs
            if mono == "1":
                body = mag
            elif mag == "1":
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append(("- " if neg else "+ ") + body)
        return " ".join(pieces)

    def to_json(self) -> list:
        R = self.ring
        return [{"exponents": list(m), "coeff": R.format(c)} for m, c in self.items()]

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Series({self.ring!r}, dim={self.dim}, cap={self.cap}, {self.to_text()!r})"


def series_from_terms(ring: Ring, dim: int, cap: int, terms: Iterable[tuple[Monomial, object]]) -> Series:
    acc: dict = {}
    for m, c in terms:
        acc[tuple(m)] = acc.get(tuple(m), 0) + c
    return Series(ring, dim, cap, acc)


def series_add(f: Series, g: Series) -> Series:
    return f + g


def series_mul(f: Series, g: Series) -> Series:
    return f * g


def series_unit_inverse(f: Series) -> Series:
    return f.unit_inverse()


def vertex(f: Series) -> Monomial:
    return f.vertex()


def vertex_cofactor(f: Series) -> Series:
    return f.vertex_cofactor()


def lower_degree(f: Series):
    return f.lower_degree()
