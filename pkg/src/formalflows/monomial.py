"""Monic monomials x^i as exponent tuples.

A monomial in d variables is a tuple of d nonnegative ints; the tuple of
zeros is the monomial 1.  The operations here are the semigroup structure
(multiplication), divisibility, and highest common factors.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Tuple

Monomial = Tuple[int, ...]


def one(dim: int) -> Monomial:
    return (0,) * dim


def variable(i: int, dim: int) -> Monomial:
    """The monomial x_i (0-based index)."""
    e = [0] * dim
    e[i] = 1
    return tuple(e)


def degree(m: Monomial) -> int:
    return sum(m)


def _same_dim(m, n):
    if len(m) != len(n):
        raise ValueError(f"dimension mismatch: {m} vs {n}")


def mono_mul(m: Monomial, n: Monomial) -> Monomial:
    _same_dim(m, n)
    return tuple(a + b for a, b in zip(m, n))


def mono_divides(m: Monomial, p: Monomial) -> bool:
    _same_dim(m, p)
    return all(a <= b for a, b in zip(m, p))


def mono_div(p: Monomial, m: Monomial) -> Monomial:
    if not mono_divides(m, p):
        raise ValueError(f"{format_monomial(m)} does not divide {format_monomial(p)}")
    return tuple(b - a for a, b in zip(m, p))


def mono_hcf(monomials: Iterable[Monomial]) -> Monomial:
    ms = list(monomials)
    if not ms:
        raise ValueError("hcf of an empty set of monomials")
    for m in ms[1:]:
        _same_dim(ms[0], m)
    return tuple(min(col) for col in zip(*ms))


def grlex_key(m: Monomial):
    """Sort key: total degree first, then x1 before x2 before ..."""
    return (sum(m), tuple(-e for e in m))


@lru_cache(maxsize=None)
def monomials_of_degree(dim: int, deg: int) -> tuple[Monomial, ...]:
    out = []
    for combo in combinations_with_replacement(range(dim), deg):
        e = [0] * dim
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(sorted(out, key=grlex_key))


def monomials_upto(dim: int, cap: int, start: int = 0) -> list[Monomial]:
    """All monomials with ``start <= degree <= cap`` in graded-lex order."""
    out: list[Monomial] = []
    for k in range(start, cap + 1):
        out.extend(monomials_of_degree(dim, k))
    return out


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"
