"""Acceptance gate: one test per criterion, summarised as PASS/FAIL lines.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary lists
every criterion with its outcome.
"""

import random
from fractions import Fraction
from math import comb

import pytest

from formalflows.blockmatrix import (
    antidiagonal,
    block_matrix,
    matrix_vector,
    rho_product_formula,
    solve_against_Br,
    template,
)
from formalflows.cadic import cadic_root, required_digits
from formalflows.fraciter import coeff_poly, factor_finite_linear_part, frac_iterate
from formalflows.maps import (
    FormalMap,
    compose,
    identity_map,
    invert,
    is_tangent_identity,
    iterate,
    linear_part,
    order_upto,
)
from formalflows.monomial import degree, monomials_upto
from formalflows.rings import FF, QQ
from formalflows.series import Series
from formalflows.sumfn import fit_charc, period_of, rho_eval, SumFunction

from helpers import as_list, random_tangent_map, root_by_degrees

crit = pytest.mark.criterion


def _random_q_maps(seed, count):
    rng = random.Random(seed)
    return [random_tangent_map(rng, QQ, rng.choice([1, 2]), rng.randint(2, 6), density=0.5)
            for _ in range(count)]


def _x_over_1px(R, cap, k):
    return FormalMap([Series(R, 1, cap, {(j + 1,): (-k) ** j for j in range(cap)})])


@crit(1, "template fidelity for c = 3 and c = 5")
def test_template_fidelity():
    assert template(3).rows() == [[1, 1, 1], [1, 2, 0], [1, 0, 0]]
    assert template(5).rows() == [
        [1, 1, 1, 1, 1],
        [1, 2, 3, 4, 0],
        [1, 3, 1, 0, 0],
        [1, 4, 0, 0, 0],
        [1, 0, 0, 0, 0],
    ]


@crit(2, "char-2 row table and periods 1,2,4,4,8")
def test_char2_rows():
    expected = [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [1, 0, 1, 0, 1, 0, 1, 0],
        [1, 1, 0, 0, 1, 1, 0, 0],
        [1, 0, 0, 0, 1, 0, 0, 0],
        [1, 1, 1, 1, 0, 0, 0, 0],
    ]
    R = FF(2)
    assert [[rho_eval(m, k, R) for k in range(8)] for m in range(5)] == expected
    assert [period_of(SumFunction.basis(m, R)) for m in range(5)] == [1, 2, 4, 4, 8]


@crit(3, "product formula equals C(m+k,k) mod c, m,k < 125, c in {2,3,5}")
def test_product_formula():
    checks = 0
    for c in (2, 3, 5):
        for m in range(125):
            for k in range(125):
                assert rho_product_formula(m, k, c) == comb(m + k, k) % c
                checks += 1
    assert checks == 3 * 125 ** 2


@crit(4, "x/(1+x) over F_c: iterates x/(1+kx), g^c = id, order c")
def test_x_over_1px_suite():
    for c in (2, 3, 5):
        R = FF(c)
        g = _x_over_1px(R, 8, 1)
        for k in range(2 * c + 1):
            assert iterate(g, k) == _x_over_1px(R, 8, k)
        assert iterate(g, c) == identity_map(R, 1, 8)
        assert order_upto(g, 4 * c) == c


@crit(5, "coefficient polynomials from deg m nodes predict 4 further iterates")
def test_coefficient_polynomials_predict():
    for g in _random_q_maps(2024, 20):
        table = [iterate(g, k) for k in range(g.cap + 4)]
        for m in monomials_upto(g.dim, g.cap, start=1):
            s = degree(m)
            P = coeff_poly(g, m, table)
            assert P.degree < s
            for k in range(s, s + 4):
                assert P(k) == tuple(Fraction(comp.coeff(m)) for comp in table[k].components)


def _height_bounded(rng):
    return Fraction(rng.randint(-5, 5), rng.randint(1, 5))


@crit(6, "group law g^(a) o g^(b) = g^(a+b), 50 random cases")
def test_group_law():
    rng = random.Random(6)
    maps = _random_q_maps(2025, 50)
    for g in maps:
        a, b = _height_bounded(rng), _height_bounded(rng)
        assert compose(frac_iterate(g, a), frac_iterate(g, b)) == frac_iterate(g, a + b)


@crit(7, "frac_iterate(g, -1) equals invert(g)")
def test_inverse_via_minus_one():
    for g in _random_q_maps(2025, 50):
        assert frac_iterate(g, -1) == invert(g)


@crit(8, "half-iterate of x+x^2 at cap 8 matches degree-by-degree solver")
def test_half_iterate_oracle():
    g = FormalMap([Series(QQ, 1, 8, {(1,): 1, (2,): 1})])
    h = frac_iterate(g, Fraction(1, 2))
    assert as_list(h) == root_by_degrees([0, 1, 1], 2, 8)
    assert compose(h, h) == g


@crit(9, "F_3 coefficient sequences fit over one period and predict the next")
def test_charc_sumfunction_structure():
    rng = random.Random(9)
    R = FF(3)
    for _ in range(10):
        g = random_tangent_map(rng, R, rng.choice([1, 2]), 8)
        longest = 2 * 3 ** required_digits(3, 8)
        table = [iterate(g, k) for k in range(longest)]
        for m in monomials_upto(g.dim, 8, start=1):
            period = 3 ** required_digits(3, degree(m)) if degree(m) > 1 else 1
            for i in range(g.dim):
                seq = [table[k].components[i].coeff(m) for k in range(2 * period)]
                h = fit_charc(seq[:period], R)
                assert h.degree < degree(m)
                assert [h(k) for k in range(period, 2 * period)] == seq[period:]


@crit(10, "c-adic roots: iterate(cadic_root(g, n), n) = g for c in {2,3}, n <= 5")
def test_cadic_roots():
    rng = random.Random(10)
    for c in (2, 3):
        R = FF(c)
        for n in range(1, 6):
            if n % c == 0:
                continue
            g = random_tangent_map(rng, R, rng.choice([1, 2]), 7)
            assert iterate(cadic_root(g, n), n) == g


@crit(11, "B_r solver round trip, alternating antidiagonal, symmetry, triangularity")
def test_br_solver():
    rng = random.Random(11)
    for c, r in [(2, 3), (3, 2), (5, 1)]:
        B = block_matrix(c, r)
        n = c ** r
        for _ in range(25):
            lam = [rng.randrange(c) for _ in range(n)]
            assert solve_against_Br(matrix_vector(B, lam), c, r) == lam
        anti = antidiagonal(c, r)
        assert anti == [1 if m % 2 == 0 else c - 1 for m in range(n)]
        assert B.is_symmetric() and B.is_upper_left_triangular()


@crit(12, "factorisation of -x + x^2: s = 2, torsion of order 2, tangent part commutes")
def test_factorisation():
    cap = 8
    h = FormalMap([Series(QQ, 1, cap, {(1,): -1, (2,): 1})])
    u, torsion, s = factor_finite_linear_part(h)
    assert s == 2
    ident = identity_map(QQ, 1, cap)
    assert torsion != ident and iterate(torsion, 2) == ident
    assert linear_part(torsion) == [[-1]]
    assert is_tangent_identity(u)
    assert compose(u, h) == compose(h, u)
    assert compose(h, torsion) == u
    assert compose(u, u) == iterate(h, 2)
