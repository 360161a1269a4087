"""Exact coefficient rings: Z, Q and prime fields F_c.

Elements are plain Python values (``int`` for Z and F_c, ``Fraction`` for Q);
a ring object carries the arithmetic and validates membership.  Other exact
integral domains can be added by subclassing :class:`Ring` and implementing
the abstract methods; callers only talk to the ring interface.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import NotAUnitError, RingError, RingMismatchError

_LITERAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Ring:
    kind: str = ""
    characteristic: int = 0

    # --- to be provided by subclasses -----------------------------------
    def contains(self, a) -> bool:
        raise NotImplementedError

    def reduce(self, a):
        """Normalise a raw int/Fraction result of native arithmetic."""
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def _inverse(self, a):
        raise NotImplementedError

    # --- shared behaviour -----------------------------------------------
    @property
    def zero(self):
        return self.reduce(0)

    @property
    def one(self):
        return self.reduce(1)

    @property
    def is_field(self) -> bool:
        return False

    def check(self, a):
        if not self.contains(a):
            raise RingMismatchError(f"{a!r} is not an element of {self}")
        return a

    def from_integer(self, n: int):
        """Image of the integer ``n`` under the canonical map Z -> K."""
        return self.reduce(int(n))

    def add(self, a, b):
        return self.reduce(self.check(a) + self.check(b))

    def sub(self, a, b):
        return self.reduce(self.check(a) - self.check(b))

    def mul(self, a, b):
        return self.reduce(self.check(a) * self.check(b))

    def neg(self, a):
        return self.reduce(-self.check(a))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.unit_inverse(a), -n)
        return self.reduce(self.check(a) ** n)

    def unit_inverse(self, a):
        if not self.is_unit(self.check(a)):
            raise NotAUnitError(f"{self.format(a)} is not a unit of {self}")
        return self._inverse(a)

    def exact_div(self, a, b):
        """``a / b`` when ``b`` divides ``a`` in this ring."""
        raise NotImplementedError

    def fraction_field(self) -> "Ring":
        raise RingError(f"{self} has positive characteristic; no fraction-field embedding")

    def to_fraction_field(self, a):
        raise RingError(f"{self} has positive characteristic; no fraction-field embedding")

    def parse(self, text: str):
        m = _LITERAL.match(text)
        if not m:
            raise RingError(f"bad literal {text!r}")
        num, den = m.groups()
        if den is None:
            return self.from_integer(int(num))
        return self._from_ratio(int(num), int(den))

    def _from_ratio(self, num: int, den: int):
        raise RingError(f"rational literal {num}/{den} is not in {self}")

    def format(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.kind == other.kind
            and self.characteristic == other.characteristic
        )

    def __hash__(self):
        return hash((self.kind, self.characteristic))


class IntegerRing(Ring):
    kind = "Z"

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool) or (
            isinstance(a, Fraction) and a.denominator == 1
        )

    def reduce(self, a):
        if isinstance(a, Fraction):
            if a.denominator != 1:
                raise RingMismatchError(f"{a} is not an integer")
            return a.numerator
        return int(a)

    def is_unit(self, a):
        return a in (1, -1)

    def _inverse(self, a):
        return int(a)

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise NotAUnitError(f"{b} does not divide {a} in Z")
        return q

    def fraction_field(self):
        return QQ

    def to_fraction_field(self, a):
        return Fraction(self.check(a))

    def __repr__(self):
        return "ZZ"

    def __str__(self):
        return "Z"


class RationalField(Ring):
    kind = "Q"

    @property
    def is_field(self):
        return True

    def contains(self, a):
        return isinstance(a, Fraction) or (isinstance(a, int) and not isinstance(a, bool))

    def reduce(self, a):
        return Fraction(a)

    def is_unit(self, a):
        return a != 0

    def _inverse(self, a):
        return 1 / Fraction(a)

    def exact_div(self, a, b):
        if b == 0:
            raise NotAUnitError("division by zero")
        return Fraction(a) / b

    def _from_ratio(self, num, den):
        if den == 0:
            raise RingError("zero denominator")
        return Fraction(num, den)

    def fraction_field(self):
        return self

    def to_fraction_field(self, a):
        return Fraction(self.check(a))

    def format(self, a):
        return str(Fraction(a))

    def __repr__(self):
        return "QQ"

    def __str__(self):
        return "Q"


class PrimeField(Ring):
    kind = "Fp"

    def __init__(self, c: int):
        c = int(c)
        if not is_prime(c):
            raise RingError(
                f"characteristic {c} is not prime; coefficient rings must be integral domains"
            )
        self.characteristic = c

    @property
    def is_field(self):
        return True

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.characteristic

    def reduce(self, a):
        if isinstance(a, Fraction):
            return self._from_ratio(a.numerator, a.denominator)
        return int(a) % self.characteristic

    def is_unit(self, a):
        return a % self.characteristic != 0

    def _inverse(self, a):
        return pow(a, -1, self.characteristic)

    def exact_div(self, a, b):
        return (a * self.unit_inverse(b % self.characteristic)) % self.characteristic

    def _from_ratio(self, num, den):
        if den % self.characteristic == 0:
            raise RingError(f"denominator {den} vanishes in {self}")
        return num * pow(den, -1, self.characteristic) % self.characteristic

    def __repr__(self):
        return f"FF({self.characteristic})"

    def __str__(self):
        return f"F_{self.characteristic}"


ZZ = IntegerRing()
QQ = RationalField()


def FF(c: int) -> PrimeField:
    return PrimeField(c)


def ring_from_spec(kind: str, characteristic: int | None = None) -> Ring:
    """Build a ring from a descriptor such as ``("Q",)`` or ``("Fp", 5)``."""
    k = kind.strip()
    if k in ("Z", "ZZ"):
        return ZZ
    if k in ("Q", "QQ"):
        return QQ
    if k in ("Fp", "F", "FF", "GF"):
        if characteristic is None:
            raise RingError("finite field requires a characteristic")
        return PrimeField(characteristic)
    raise RingError(f"unknown ring kind {kind!r}")


def is_integral(q) -> bool:
    """True when the rational ``q`` lies in Z."""
    return Fraction(q).denominator == 1


# Thin functional surface mirroring the ring methods.


def ring_add(R: Ring, a, b):
    return R.add(a, b)


def ring_mul(R: Ring, a, b):
    return R.mul(a, b)


def ring_neg(R: Ring, a):
    return R.neg(a)


def from_integer(n: int, R: Ring):
    return R.from_integer(n)
