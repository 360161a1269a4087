"""c-adic iterates of maps tangent to the identity in characteristic c.

Every coefficient sequence k -> (g^k)_m with deg m <= cap has period
dividing c^t once c^t >= cap, so a c-adic integer truncated to t digits
already determines g^(z) up to the cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import PreconditionError, VerificationError
from .maps import FormalMap, is_tangent_identity, iterate, iterate_table
from .monomial import degree, monomials_upto
from .rings import is_prime
from .series import Series
from .sumfn import fit_charc, sumfn_eval


@dataclass(frozen=True)
class CAdicInt:
    """Truncated c-adic integer: little-endian digits z_0, z_1, ..., z_{t-1}."""

    c: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.c):
            raise PreconditionError(f"{self.c} is not prime")
        digs = tuple(int(d) for d in self.digits)
        if not digs:
            raise PreconditionError("a c-adic integer needs at least one digit")
        if any(not 0 <= d < self.c for d in digs):
            raise PreconditionError(f"digits must lie in 0..{self.c - 1}")
        object.__setattr__(self, "digits", digs)

    @property
    def precision(self) -> int:
        return len(self.digits)

    @property
    def modulus(self) -> int:
        return self.c ** len(self.digits)

    @property
    def value(self) -> int:
        """The representative sum z_s c^s in 0..c^t - 1."""
        return sum(d * self.c ** s for s, d in enumerate(self.digits))

    def extend(self, t: int) -> "CAdicInt":
        """Append zero digits up to precision t."""
        return CAdicInt(self.c, self.digits + (0,) * (t - len(self.digits)))

    def truncate(self, t: int) -> "CAdicInt":
        return CAdicInt(self.c, self.digits[:t])

    def __add__(self, other: "CAdicInt") -> "CAdicInt":
        if self.c != other.c:
            raise PreconditionError("adding c-adic integers with different primes")
        t = min(self.precision, other.precision)
        return cadic_from_integer(self.truncate(t).value + other.truncate(t).value, self.c, t)

    def __neg__(self):
        return cadic_from_integer(-self.value, self.c, self.precision)

    def __str__(self):
        return ",".join(str(d) for d in self.digits)


def cadic_from_integer(n: int, c: int, t: int) -> CAdicInt:
    if t < 1:
        raise PreconditionError("precision must be at least one digit")
    r = n % c ** t
    digs = []
    for _ in range(t):
        r, d = divmod(r, c)
        digs.append(d)
    return CAdicInt(c, tuple(digs))


def cadic_inverse_unit(n: int, c: int, t: int) -> CAdicInt:
    """Digits of 1/n in Z_c, to t places."""
    if n % c == 0:
        raise PreconditionError(f"{n} is divisible by {c}; not a c-adic unit")
    return cadic_from_integer(pow(n, -1, c ** t), c, t)


def required_digits(c: int, cap: int) -> int:
    """Least t with c^t >= cap."""
    t, p = 0, 1
    while p < cap:
        p *= c
        t += 1
    return max(t, 1)


def _require_charc_tangent(g: FormalMap):
    if g.ring.characteristic == 0:
        raise PreconditionError("c-adic iteration needs positive characteristic; use frac_iterate")
    if not is_tangent_identity(g):
        raise PreconditionError("map is not tangent to the identity")


def cadic_iterate(g: FormalMap, z: CAdicInt) -> FormalMap:
    """g^(z), computed as the integer iterate of the truncated digit value."""
    _require_charc_tangent(g)
    c = g.ring.characteristic
    if z.c != c:
        raise PreconditionError(f"digits are {z.c}-adic but the ring has characteristic {c}")
    t = required_digits(c, g.cap)
    if z.precision < t:
        raise PreconditionError(
            f"{z.precision} digits given; cap {g.cap} needs at least {t} (c^t >= cap)"
        )
    k = z.value
    out = iterate(g, k)
    short = k % c ** t
    if short != k and iterate(g, short) != out:
        raise VerificationError("c-adic iterate depends on digits beyond the required precision")
    return out


def cadic_root(g: FormalMap, n: int) -> FormalMap:
    """The n-th compositional root g^(1/n), for n coprime to c."""
    _require_charc_tangent(g)
    c = g.ring.characteristic
    if n < 1:
        raise PreconditionError("root order must be a positive integer")
    if gcd(n, c) != 1:
        raise PreconditionError(f"{n} is divisible by the characteristic {c}")
    z = cadic_inverse_unit(n, c, required_digits(c, g.cap))
    h = cadic_iterate(g, z)
    if iterate(h, n) != g:
        raise VerificationError("computed root does not reproduce g")
    return h


def continuity_check(g: FormalMap, z: CAdicInt, z2: CAdicInt, r: int) -> bool:
    """g^(z) and g^(z2) agree below degree c^r when z = z2 mod c^r."""
    if z.digits[:r] != z2.digits[:r] or min(z.precision, z2.precision) < r:
        raise PreconditionError(f"the two c-adic integers do not agree on their first {r} digits")
    a, b = cadic_iterate(g, z), cadic_iterate(g, z2)
    bound = z.c ** r
    for sa, sb in zip(a.components, b.components):
        for m in monomials_upto(g.dim, g.cap):
            if degree(m) < bound and sa.coeff(m) != sb.coeff(m):
                return False
    return True


def coefficient_sumfunctions(g: FormalMap, table: list[FormalMap] | None = None):
    """Fit every coefficient sequence of g's iterates as a sum-function.

    Returns ``{monomial: (period, [SumFunction per component])}`` where the
    period is c^r with r = ceil(log_c deg m).
    """
    _require_charc_tangent(g)
    R = g.ring
    c = R.characteristic
    full = c ** required_digits(c, g.cap)
    if table is None or len(table) < full:
        table = iterate_table(g, full - 1)
    out = {}
    for m in monomials_upto(g.dim, g.cap, start=1):
        period = c ** required_digits(c, degree(m)) if degree(m) > 1 else 1
        fits = [fit_charc([table[k].components[i].coeff(m) for k in range(period)], R)
                for i in range(g.dim)]
        out[m] = (period, fits)
    return out


def cadic_iterate_by_coefficients(g: FormalMap, z: CAdicInt) -> FormalMap:
    """g^(z) assembled coefficient-by-coefficient from fitted sum-functions."""
    fits = coefficient_sumfunctions(g)
    R = g.ring
    k = z.value
    comps: list[dict] = [{} for _ in range(g.dim)]
    for m, (period, hs) in fits.items():
        for i, h in enumerate(hs):
            comps[i][m] = sumfn_eval(h, k % period)
    return FormalMap([Series(R, g.dim, g.cap, t) for t in comps])


__all__ = [
    "CAdicInt",
    "cadic_from_integer",
    "cadic_inverse_unit",
    "required_digits",
    "cadic_iterate",
    "cadic_root",
    "continuity_check",
    "coefficient_sumfunctions",
    "cadic_iterate_by_coefficients",
]
