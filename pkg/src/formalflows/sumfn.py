"""Sum-functions: K-linear combinations of rho_m(k) = C(m+k, m) in K.

In characteristic zero these are the integer-valued polynomial functions;
in characteristic c they are exactly the functions whose period is a power
of c.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from . import blockmatrix
from .errors import NotASumFunctionError, PreconditionError, RingError
from .rings import QQ, ZZ, Ring


def rho_eval(m: int, k: int, R: Ring):
    if m < 0 or k < 0:
        raise PreconditionError("rho_m(k) is defined for m, k >= 0")
    return R.from_integer(comb(m + k, m))


@dataclass(frozen=True)
class SumFunction:
    ring: Ring
    coeffs: tuple = ()

    def __post_init__(self):
        R = self.ring
        cs = [R.reduce(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def basis(cls, m: int, ring: Ring) -> "SumFunction":
        return cls(ring, (0,) * m + (1,))

    @property
    def degree(self):
        """Index of the last nonzero coefficient; -inf for the zero function."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self):
        return not self.coeffs

    def __call__(self, k: int):
        return sumfn_eval(self, k)

    def values(self, n: int) -> list:
        return [sumfn_eval(self, k) for k in range(n)]

    def __add__(self, other):
        return sumfn_add(self, other)

    def __mul__(self, other):
        return sumfn_mul(self, other)

    def to_text(self) -> str:
        return "[" + ", ".join(self.ring.format(c) for c in self.coeffs) + "]"

    __str__ = to_text


def sumfn_eval(h: SumFunction, k: int):
    if k < 0:
        raise PreconditionError("sum-functions are evaluated at k >= 0")
    R = h.ring
    total = 0
    for i, lam in enumerate(h.coeffs):
        if lam:
            total += lam * comb(i + k, i)
    return R.reduce(total)


def _same_ring(h, g):
    if h.ring != g.ring:
        raise RingError(f"ring mismatch: {h.ring} vs {g.ring}")


def sumfn_add(h: SumFunction, g: SumFunction) -> SumFunction:
    _same_ring(h, g)
    n = max(len(h.coeffs), len(g.coeffs))
    a = h.coeffs + (0,) * (n - len(h.coeffs))
    b = g.coeffs + (0,) * (n - len(g.coeffs))
    return SumFunction(h.ring, tuple(x + y for x, y in zip(a, b)))


def sumfn_mul(h: SumFunction, g: SumFunction) -> SumFunction:
    """Pointwise product, by evaluating then refitting in the rho basis."""
    _same_ring(h, g)
    R = h.ring
    if h.is_zero() or g.is_zero():
        return SumFunction(R, ())
    top = h.degree + g.degree
    if R.characteristic == 0:
        pts = range(top + 1)
        return fit_char0([R.reduce(h(k) * g(k)) for k in pts], R)
    c = R.characteristic
    n = 1
    while n <= top:
        n *= c
    return fit_charc([R.reduce(h(k) * g(k)) for k in range(n)], R)


def _solve_pascal(values: Sequence[Fraction]) -> list[Fraction]:
    """Solve sum_j C(k+j, j) lam_j = values[k], k = 0..n, exactly."""
    n = len(values)
    A = [[Fraction(comb(k + j, j)) for j in range(n)] + [Fraction(values[k])] for k in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        rowp = [v / p for v in A[col]]
        A[col] = rowp
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], rowp)]
    return [A[k][n] for k in range(n)]


def fit_char0(values: Sequence, R: Ring = QQ) -> SumFunction:
    """rho-basis coefficients of the polynomial through values at k = 0..n.

    Over Z the fitted coefficients must be integers; otherwise the data did
    not come from a sum-function over Z and NotASumFunctionError is raised.
    Since the Pascal matrix is unimodular this only happens for values that
    are themselves non-integral, so over Z the values may be any rationals.
    """
    if R.characteristic != 0:
        raise PreconditionError("fit_char0 needs a characteristic-zero ring; use fit_charc")
    if not values:
        return SumFunction(R, ())
    lam = _solve_pascal([Fraction(v) for v in values])
    if R == ZZ:
        bad = [i for i, x in enumerate(lam) if x.denominator != 1]
        if bad:
            raise NotASumFunctionError(
                f"coefficients at indices {bad} are not integers: "
                + ", ".join(str(lam[i]) for i in bad)
            )
        return SumFunction(R, tuple(x.numerator for x in lam))
    return SumFunction(R, tuple(lam))


def _log_power(n: int, c: int):
    r = 0
    p = 1
    while p < n:
        p *= c
        r += 1
    return r if p == n else None


def fit_charc(values: Sequence, R: Ring) -> SumFunction:
    """Coefficients of the function with one full period ``values`` (length c^r)."""
    c = R.characteristic
    if c == 0:
        raise PreconditionError("fit_charc needs positive characteristic; use fit_char0")
    r = _log_power(len(values), c)
    if r is None:
        raise PreconditionError(f"length {len(values)} is not a power of {c}")
    lam = blockmatrix.solve_against_Br([R.reduce(v) for v in values], c, r)
    return SumFunction(R, tuple(lam))


def period_of(h: SumFunction) -> int:
    """Least power of c that is a period of k -> h(k)."""
    R = h.ring
    c = R.characteristic
    if c == 0:
        raise PreconditionError("period_of is only meaningful in positive characteristic")
    if h.is_zero():
        return 1
    n = 1
    while n <= h.degree:
        n *= c
    # h has period n; look for a smaller power of c
    vals = [h(k) for k in range(2 * n)]
    best = n
    p = n // c if n > 1 else 0
    while p >= 1:
        if all(vals[k + p] == vals[k] for k in range(n)):
            best = p
            p //= c
        else:
            break
    return best


__all__ = [
    "SumFunction",
    "rho_eval",
    "sumfn_eval",
    "sumfn_add",
    "sumfn_mul",
    "fit_char0",
    "fit_charc",
    "period_of",
]
