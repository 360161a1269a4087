"""Formal self-maps of K^d fixing 0, under composition."""

from __future__ import annotations

from typing import Sequence

from .errors import NotAUnitError, PreconditionError, RingMismatchError
from .monomial import Monomial, variable
from .rings import Ring
from .series import INFINITY, Series


class FormalMap:
    """A d-tuple of series with zero constant terms, sharing ring, dim and cap."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[Series]):
        comps = tuple(components)
        if not comps:
            raise ValueError("a formal map needs at least one component")
        first = comps[0]
        if len(comps) != first.dim:
            raise ValueError(f"{len(comps)} components given for dimension {first.dim}")
        for s in comps:
            if s.ring != first.ring:
                raise RingMismatchError("components live over different rings")
            if s.dim != first.dim or s.cap != first.cap:
                raise ValueError("components have different dim/cap")
            if not s.in_maximal_ideal():
                raise PreconditionError("component has a nonzero constant term; not a map fixing 0")
        self.components = comps

    @property
    def ring(self) -> Ring:
        return self.components[0].ring

    @property
    def dim(self) -> int:
        return self.components[0].dim

    @property
    def cap(self) -> int:
        return self.components[0].cap

    def __getitem__(self, i: int) -> Series:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def coeff(self, m: Monomial) -> tuple:
        """The vector coefficient g_m."""
        return tuple(s.coeff(m) for s in self.components)

    def change_ring(self, ring: Ring) -> "FormalMap":
        return FormalMap([s.change_ring(ring) for s in self.components])

    def _compatible(self, other: "FormalMap"):
        if not isinstance(other, FormalMap):
            raise TypeError(f"expected FormalMap, got {type(other).__name__}")
        if self.ring != other.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.dim != other.dim or self.cap != other.cap:
            raise ValueError(
                f"shape mismatch: (dim {self.dim}, cap {self.cap}) vs (dim {other.dim}, cap {other.cap})"
            )

    def __eq__(self, other):
        if not isinstance(other, FormalMap):
            return NotImplemented
        self._compatible(other)
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __matmul__(self, other: "FormalMap") -> "FormalMap":
        return compose(self, other)

    def to_text(self) -> str:
        return "(" + ", ".join(s.to_text() for s in self.components) + ")"

    __str__ = to_text

    def __repr__(self):
        return f"FormalMap({self.ring!r}, cap={self.cap}, {self.to_text()})"


def identity_map(ring: Ring, dim: int, cap: int) -> FormalMap:
    return FormalMap([Series.variable(i, ring, dim, cap) for i in range(dim)])


def _powers(s: Series, top: int) -> list[Series]:
    out = [Series.constant(1, s.ring, s.dim, s.cap)]
    for _ in range(top):
        out.append(out[-1] * s)
    return out


class _Substituter:
    """Evaluates m o g for monomials m, caching component powers and products."""

    def __init__(self, g: FormalMap):
        self.g = g
        self.cap = g.cap
        self._pow = [_powers(s, g.cap) for s in g.components]
        self._cache: dict[Monomial, Series] = {}

    def monomial(self, m: Monomial) -> Series:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        nz = [i for i, e in enumerate(m) if e]
        if not nz:
            res = self._pow[0][0]
        elif len(nz) == 1:
            i = nz[0]
            res = self._pow[i][m[i]]
        else:
            # peel off the last variable and reuse the cached prefix
            i = nz[-1]
            rest = list(m)
            rest[i] = 0
            res = self.monomial(tuple(rest)) * self._pow[i][m[i]]
        self._cache[m] = res
        return res

    def series(self, f: Series) -> Series:
        g0 = self.g.components[0]
        R = g0.ring
        acc: dict = {}
        # each m o g has lower degree >= deg m, so only deg m <= cap matters
        for m, c in f._terms.items():
            for p, v in self.monomial(m)._terms.items():
                acc[p] = acc.get(p, 0) + c * v
        return Series(R, g0.dim, self.cap, acc)


def _check_composable(f_ring, f_dim, f_cap, g: FormalMap):
    if f_ring != g.ring:
        raise RingMismatchError(f"ring mismatch: {f_ring} vs {g.ring}")
    if f_dim != g.dim or f_cap != g.cap:
        raise ValueError("dimension/cap mismatch in composition")


def compose_series(f: Series, g: FormalMap) -> Series:
    """f o g for a series f and a map g in M^d."""
    if not isinstance(g, FormalMap):
        raise PreconditionError("inner argument of a composition must be a FormalMap in M^d")
    _check_composable(f.ring, f.dim, f.cap, g)
    return _Substituter(g).series(f)


def compose(f: FormalMap, g: FormalMap) -> FormalMap:
    """(f o g)_i = f_i o g."""
    f._compatible(g)
    sub = _Substituter(g)
    return FormalMap([sub.series(s) for s in f.components])


# --- linear parts ---------------------------------------------------------

def linear_part(g: FormalMap) -> list[list]:
    d = g.dim
    return [[g.components[i].coeff(variable(j, d)) for j in range(d)] for i in range(d)]


def is_tangent_identity(g: FormalMap) -> bool:
    R = g.ring
    L = linear_part(g)
    return all(L[i][j] == (R.one if i == j else R.zero) for i in range(g.dim) for j in range(g.dim))


def determinant(L: Sequence[Sequence], ring: Ring):
    """Exact determinant via fraction-free (Bareiss) elimination."""
    n = len(L)
    if n == 0:
        return ring.one
    M = [[ring.reduce(x) for x in row] for row in L]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.reduce(M[i][j] * M[k][k] - M[i][k] * M[k][j])
                M[i][j] = ring.exact_div(num, prev)
            M[i][k] = ring.zero
        prev = M[k][k]
    return ring.reduce(sign * M[n - 1][n - 1])


def linear_part_invertible(L: Sequence[Sequence], ring: Ring) -> bool:
    return ring.is_unit(determinant(L, ring))


def matrix_inverse(L: Sequence[Sequence], ring: Ring) -> list[list]:
    """Inverse by adjugate over det, valid when det(L) is a unit."""
    n = len(L)
    det = determinant(L, ring)
    if not ring.is_unit(det):
        raise NotAUnitError(f"determinant {ring.format(det)} is not a unit of {ring}")
    dinv = ring.unit_inverse(det)
    if n == 1:
        return [[dinv]]
    adj = [[ring.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(L) if k != i]
            cof = determinant(minor, ring)
            if (i + j) % 2:
                cof = ring.reduce(-cof)
            adj[j][i] = ring.reduce(cof * dinv)
    return adj


def matrix_mul(A, B, ring: Ring):
    n, k, m = len(A), len(B), len(B[0])
    return [[ring.reduce(sum(A[i][t] * B[t][j] for t in range(k))) for j in range(m)] for i in range(n)]


def linear_map(L: Sequence[Sequence], ring: Ring, cap: int) -> FormalMap:
    """The map x -> L x as an element of M^d."""
    d = len(L)
    return FormalMap([
        Series(ring, d, cap, {variable(j, d): L[i][j] for j in range(d)}) for i in range(d)
    ])


# --- inversion and iteration ----------------------------------------------

def _invert_tangent(g: FormalMap) -> FormalMap:
    # g = 1 + h with L(h) = 0; the inverse phi solves phi = 1 - h o phi.
    # Each pass fixes one more degree, starting from degree 1.
    ident = identity_map(g.ring, g.dim, g.cap)
    h = FormalMap([gi - xi for gi, xi in zip(g.components, ident.components)])
    phi = ident
    for _ in range(max(g.cap - 1, 0)):
        sub = _Substituter(phi)
        phi = FormalMap([xi - sub.series(hi) for xi, hi in zip(ident.components, h.components)])
    return phi


def invert(g: FormalMap) -> FormalMap:
    """Compositional inverse; requires an invertible linear part."""
    R = g.ring
    L = linear_part(g)
    if not linear_part_invertible(L, R):
        raise PreconditionError("linear part is not invertible over the coefficient ring")
    if is_tangent_identity(g):
        return _invert_tangent(g)
    H = linear_map(matrix_inverse(L, R), R, g.cap)
    # g = L o (H o g) with H o g tangent to the identity
    tangent = compose(H, g)
    return compose(_invert_tangent(tangent), H)


def iterate(g: FormalMap, k: int) -> FormalMap:
    """The k-fold composite of g (k may be negative for invertible g)."""
    k = int(k)
    if k < 0:
        return iterate(invert(g), -k)
    if k == 0:
        return identity_map(g.ring, g.dim, g.cap)
    if k <= 3:
        out = g
        for _ in range(k - 1):
            out = compose(g, out)
        return out
    result = None
    base = g
    while k:
        if k & 1:
            result = base if result is None else compose(base, result)
        k >>= 1
        if k:
            base = compose(base, base)
    return result


def iterate_table(g: FormalMap, n: int) -> list[FormalMap]:
    """[g^0, g^1, ..., g^n] by successive composition."""
    out = [identity_map(g.ring, g.dim, g.cap)]
    for _ in range(n):
        out.append(compose(g, out[-1]))
    return out


def weierstrass_degree(g: FormalMap):
    """Lower degree of g - identity (infinity when g is the identity at this cap)."""
    if not is_tangent_identity(g):
        raise PreconditionError("Weierstrass degree needs a map tangent to the identity")
    ident = identity_map(g.ring, g.dim, g.cap)
    return min((gi - xi).lower_degree() for gi, xi in zip(g.components, ident.components))


def order_upto(g: FormalMap, bound: int):
    """Least n <= bound with g^n = identity at this cap, else None.

    The answer is relative to the truncation: a None only means no such n
    was found among the coefficients of degree <= cap.
    """
    if bound < 1:
        raise PreconditionError("bound must be at least 1")
    ident = identity_map(g.ring, g.dim, g.cap)
    cur = g
    for n in range(1, bound + 1):
        if cur == ident:
            return n
        if n < bound:
            cur = compose(g, cur)
    return None


def homogeneous_term(g: FormalMap, k: int) -> tuple[Series, ...]:
    if not 1 <= k <= g.cap:
        raise PreconditionError(f"degree {k} outside 1..{g.cap}")
    return tuple(s.homogeneous_part(k) for s in g.components)


def matrix_order(L: Sequence[Sequence], ring: Ring, bound: int):
    """Least s <= bound with L^s = 1, else None."""
    n = len(L)
    eye = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    cur = [[ring.reduce(x) for x in row] for row in L]
    for s in range(1, bound + 1):
        if cur == eye:
            return s
        cur = matrix_mul(cur, L, ring)
    return None


__all__ = [
    "FormalMap",
    "INFINITY",
    "identity_map",
    "compose",
    "compose_series",
    "linear_part",
    "is_tangent_identity",
    "determinant",
    "linear_part_invertible",
    "matrix_inverse",
    "linear_map",
    "invert",
    "iterate",
    "iterate_table",
    "weierstrass_degree",
    "order_upto",
    "homogeneous_term",
    "matrix_order",
]
