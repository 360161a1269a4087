"""The matrix of basic sum-function values rho_m(k) modulo a prime c.

Entry (m, k) is C(m+k, k) mod c.  The top-left c x c block is the
*template*; the c^r x c^r block B_r is self-similar with respect to it and
is upper-left triangular with +-1 on the antidiagonal, which makes linear
systems against B_r solvable by substitution with no division.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import PreconditionError, RingError
from .rings import is_prime


def _require_prime(c: int):
    if not is_prime(c):
        raise RingError(f"{c} is not prime")


def digits(n: int, c: int) -> list[int]:
    """Little-endian base-c digits of n >= 0 (``[0]`` for n = 0)."""
    if n < 0:
        raise ValueError("digits of a negative integer")
    out = []
    while True:
        n, r = divmod(n, c)
        out.append(r)
        if n == 0:
            return out


@dataclass(frozen=True)
class BlockMatrix:
    c: int
    r: int
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, idx):
        m, k = idx
        return self.entries[m][k]

    def rows(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))

    def is_upper_left_triangular(self) -> bool:
        n = self.size
        return all(self.entries[m][k] == 0 for m in range(n) for k in range(n) if m + k >= n)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.entries)

    def to_block_notation(self) -> str:
        """Render a level-2 matrix as a c x c grid of multiples of the template."""
        if self.r != 2:
            raise PreconditionError("block notation is defined for r = 2 only")
        c = self.c
        tmpl = template(c)
        lines = []
        for i in range(c):
            cells = []
            for j in range(c):
                scale = self.entries[i * c][j * c]
                block = [row[j * c:(j + 1) * c] for row in self.entries[i * c:(i + 1) * c]]
                expect = [[scale * v % c for v in row] for row in tmpl.entries]
                if [list(b) for b in block] != expect:
                    raise AssertionError("matrix is not a scaled copy of the template")
                cells.append("0" if scale == 0 else ("T" if scale == 1 else f"{scale}T"))
            lines.append(" ".join(cells))
        return "\n".join(lines)


def template(c: int) -> BlockMatrix:
    _require_prime(c)
    return BlockMatrix(c, 1, tuple(tuple(comb(m + k, k) % c for k in range(c)) for m in range(c)))


def block_matrix(c: int, r: int) -> BlockMatrix:
    """B_r with entries computed from the binomial coefficients directly."""
    _require_prime(c)
    if r < 0:
        raise PreconditionError("level r must be nonnegative")
    n = c ** r
    return BlockMatrix(c, r, tuple(tuple(comb(m + k, k) % c for k in range(n)) for m in range(n)))


def block_matrix_selfsimilar(c: int, r: int) -> BlockMatrix:
    """B_r built by scaling copies of B_{r-1} by template entries."""
    _require_prime(c)
    if r < 0:
        raise PreconditionError("level r must be nonnegative")
    T = template(c).entries
    cur = [[1]]
    for _ in range(r):
        n = len(cur)
        nxt = [[0] * (n * c) for _ in range(n * c)]
        for i in range(c):
            for j in range(c):
                t = T[i][j]
                if t == 0:
                    continue
                for a in range(n):
                    row = cur[a]
                    dst = nxt[i * n + a]
                    for b in range(n):
                        dst[j * n + b] = row[b] * t % c
        cur = nxt
    return BlockMatrix(c, r, tuple(tuple(row) for row in cur))


def rho_product_formula(m: int, k: int, c: int) -> int:
    """rho_m(k) mod c as the product of template entries over base-c digits."""
    _require_prime(c)
    if m < 0 or k < 0:
        raise PreconditionError("m and k must be nonnegative")
    T = template(c).entries
    dm, dk = digits(m, c), digits(k, c)
    n = max(len(dm), len(dk))
    dm += [0] * (n - len(dm))
    dk += [0] * (n - len(dk))
    out = 1
    for a, b in zip(dm, dk):
        out = out * T[a][b] % c
        if out == 0:
            break
    return out


def antidiagonal(c: int, r: int) -> list[int]:
    """Entries rho_m(c^r - m - 1), checked to alternate between +1 and -1."""
    _require_prime(c)
    n = c ** r
    vals = [comb(n - 1, m) % c for m in range(n)]  # C(m + (n-1-m), m)
    for m, v in enumerate(vals):
        want = 1 if m % 2 == 0 else (c - 1)
        if v != want:
            raise AssertionError(f"antidiagonal entry {m} is {v}, expected {want} (mod {c})")
    return vals


def solve_against_Br(values: Sequence[int], c: int, r: int) -> list[int]:
    """The unique lambda over F_c with B_r lambda = values.

    Row k = c^r - 1 - j of B_r has its last nonzero entry in column j and
    that entry is +-1, so the unknowns are found in order j = 0, 1, ... .
    """
    _require_prime(c)
    n = c ** r
    if len(values) != n:
        raise PreconditionError(f"expected {n} values, got {len(values)}")
    B = block_matrix(c, r).entries
    lam = [0] * n
    for j in range(n):
        k = n - 1 - j
        acc = values[k] % c
        row = B[k]
        for i in range(j):
            if row[i]:
                acc -= row[i] * lam[i]
        pivot = row[j]  # +1 or -1 = c-1; each is its own inverse
        lam[j] = acc * pivot % c
    return lam


def matrix_vector(B: BlockMatrix, lam: Sequence[int]) -> list[int]:
    return [sum(row[i] * lam[i] for i in range(len(lam))) % B.c for row in B.entries]
