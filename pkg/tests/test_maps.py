import random
from fractions import Fraction

import pytest

from formalflows.errors import PreconditionError
from formalflows.maps import (
    FormalMap,
    compose,
    compose_series,
    determinant,
    homogeneous_term,
    identity_map,
    invert,
    is_tangent_identity,
    iterate,
    linear_part,
    linear_part_invertible,
    matrix_mul,
    order_upto,
    weierstrass_degree,
)
from formalflows.rings import FF, QQ, ZZ
from formalflows.series import INFINITY, Series

from helpers import as_list, inverse_by_degrees, random_map, random_tangent_map, upoly_compose


def umap(R, coeffs, cap):
    """Univariate map from a coefficient list starting at degree 1."""
    return FormalMap([Series(R, 1, cap, {(k + 1,): c for k, c in enumerate(coeffs)})])


def x_over_1px(R, cap, k=1):
    """Series of x/(1 + kx) = sum (-k)^j x^(j+1)."""
    return umap(R, [(-k) ** j for j in range(cap)], cap)


def test_identity():
    assert identity_map(QQ, 1, 3).to_text() == "(x1)"
    assert identity_map(QQ, 2, 3).to_text() == "(x1, x2)"
    rng = random.Random(1)
    g = random_map(rng, QQ, 2, 4)
    ident = identity_map(QQ, 2, 4)
    assert compose(ident, g) == g
    assert compose(g, ident) == g


def test_compose_example():
    g = umap(QQ, [1, 1], 4)
    assert compose(g, g) == umap(QQ, [1, 2, 2, 1], 4)


def test_compose_series():
    g = umap(ZZ, [1, 1], 4)
    f = Series(ZZ, 1, 4, {(0,): 5, (2,): 1})
    # 5 + (x + x^2)^2
    assert compose_series(f, g) == Series(ZZ, 1, 4, {(0,): 5, (2,): 1, (3,): 2, (4,): 1})


def test_constant_term_rejected():
    with pytest.raises(PreconditionError):
        FormalMap([Series(QQ, 1, 3, {(0,): 1, (1,): 1})])


@pytest.mark.parametrize("c", [2, 3, 5])
def test_x_over_1px_iterates(c):
    R = FF(c)
    g = x_over_1px(R, 8)
    for k in range(2 * c + 1):
        assert iterate(g, k) == x_over_1px(R, 8, k)
    assert invert(g) == x_over_1px(R, 8, -1)


def test_linear_part_and_tangency():
    a = Series.variable(0, QQ, 2, 3)
    b = Series.variable(1, QQ, 2, 3)
    g = FormalMap([a + b * b, b])
    assert linear_part(g) == [[1, 0], [0, 1]]
    assert is_tangent_identity(g)
    swap = FormalMap([b, a])
    assert linear_part(swap) == [[0, 1], [1, 0]]
    assert not is_tangent_identity(swap)


def test_linear_part_is_homomorphism():
    rng = random.Random(3)
    for _ in range(10):
        f = random_map(rng, QQ, 2, 3)
        g = random_map(rng, QQ, 2, 3)
        assert linear_part(compose(f, g)) == matrix_mul(linear_part(f), linear_part(g), QQ)


def test_linear_part_invertible():
    assert not linear_part_invertible([[2]], ZZ)
    assert linear_part_invertible([[2]], QQ)
    assert determinant([[1, 2], [3, 4]], FF(5)) == 3
    assert linear_part_invertible([[1, 2], [3, 4]], FF(5))
    assert determinant([[2, 0, 1], [1, 3, 2], [1, 1, 1]], ZZ) == 2 * 1 - 0 + 1 * (1 - 3)


def test_invert_examples():
    g = umap(QQ, [1, 1], 4)
    oracle = inverse_by_degrees([0, 1, 1], 4)
    assert as_list(invert(g)) == oracle == [0, 1, -1, 2, -5]
    ident = identity_map(QQ, 2, 5)
    assert invert(ident) == ident
    R = FF(3)
    assert invert(x_over_1px(R, 8)) == x_over_1px(R, 8, 2)


def test_invert_requires_invertible_linear_part():
    g = umap(ZZ, [2, 1], 4)
    with pytest.raises(PreconditionError):
        invert(g)
    with pytest.raises(PreconditionError):
        iterate(g, -1)


@pytest.mark.parametrize("R", [QQ, FF(3), FF(5)], ids=str)
@pytest.mark.parametrize("seed", range(4))
def test_invert_two_sided(R, seed):
    rng = random.Random(seed)
    dim = rng.choice([1, 2])
    cap = 5
    while True:
        g = random_map(rng, R, dim, cap, density=0.6)
        if linear_part_invertible(linear_part(g), R):
            break
    h = invert(g)
    ident = identity_map(R, dim, cap)
    assert compose(h, g) == ident
    assert compose(g, h) == ident


def test_iterate_examples():
    g = umap(QQ, [1, 1], 4)
    assert iterate(g, 2) == umap(QQ, [1, 2, 2, 1], 4)
    assert iterate(g, 0) == identity_map(QQ, 1, 4)
    assert iterate(x_over_1px(FF(3), 8), 3) == identity_map(FF(3), 1, 8)


def test_iterate_squaring_matches_naive():
    rng = random.Random(11)
    g = random_tangent_map(rng, QQ, 2, 4)
    naive = identity_map(QQ, 2, 4)
    for k in range(1, 10):
        naive = compose(g, naive)
        assert iterate(g, k) == naive


@pytest.mark.parametrize("seed", range(4))
def test_associativity(seed):
    rng = random.Random(seed)
    R = rng.choice([QQ, ZZ, FF(3)])
    f, g, h = (random_map(rng, R, 2, 4) for _ in range(3))
    assert compose(f, compose(g, h)) == compose(compose(f, g), h)


@pytest.mark.parametrize("seed", range(3))
def test_group_law_integer_iterates(seed):
    rng = random.Random(20 + seed)
    R = rng.choice([QQ, FF(5)])
    while True:
        g = random_map(rng, R, 2, 4, density=0.6)
        if linear_part_invertible(linear_part(g), R):
            break
    its = {k: iterate(g, k) for k in range(-6, 7)}
    for a in range(-3, 4):
        for b in range(-3, 4):
            assert compose(its[a], its[b]) == its[a + b]


def test_weierstrass_degree():
    assert weierstrass_degree(umap(QQ, [1, 0, 1], 5)) == 3
    assert weierstrass_degree(identity_map(QQ, 2, 5)) == INFINITY
    a = Series.variable(0, QQ, 2, 6)
    b = Series.variable(1, QQ, 2, 6)
    assert weierstrass_degree(FormalMap([a + b * b, b + a ** 5])) == 2
    with pytest.raises(PreconditionError):
        weierstrass_degree(umap(QQ, [2, 1], 4))


@pytest.mark.parametrize("seed", range(6))
def test_tangency_propagation(seed):
    rng = random.Random(seed)
    g = random_tangent_map(rng, QQ, rng.choice([1, 2]), 6, density=0.3)
    r = weierstrass_degree(g)
    if r == INFINITY:
        return
    Lr = homogeneous_term(g, r)
    for n in range(1, 6):
        got = homogeneous_term(iterate(g, n), r)
        assert got == tuple(s.scale(n) for s in Lr)


def test_order_upto():
    assert order_upto(x_over_1px(FF(3), 8), 10) == 3
    assert order_upto(umap(QQ, [1, 1], 6), 20) is None
    assert order_upto(identity_map(QQ, 2, 4), 5) == 1
    with pytest.raises(PreconditionError):
        order_upto(identity_map(QQ, 1, 4), 0)


def test_homogeneous_term():
    g = umap(QQ, [1, 1], 4)
    assert homogeneous_term(g, 2)[0] == Series(QQ, 1, 4, {(2,): 1})
    rng = random.Random(2)
    h = random_map(rng, QQ, 2, 4)
    first = homogeneous_term(h, 1)
    assert [[s.coeff(m) for m in [(1, 0), (0, 1)]] for s in first] == linear_part(h)
    total = [Series.zero(QQ, 2, 4) for _ in range(2)]
    for k in range(1, 5):
        total = [t + s for t, s in zip(total, homogeneous_term(h, k))]
    assert tuple(total) == h.components
    with pytest.raises(PreconditionError):
        homogeneous_term(h, 5)


@pytest.mark.parametrize("c", [2, 3, 5])
def test_x_over_1px_closed_form_coefficients(c):
    R = FF(c)
    g = x_over_1px(R, 8)
    for k in range(1, 2 * c):
        it = iterate(g, k)
        for j in range(8):
            assert it.components[0].coeff((j + 1,)) == (-k) ** j % c


def test_order_in_char_c_divisible_by_c():
    rng = random.Random(5)
    for c in (2, 3):
        R = FF(c)
        for _ in range(5):
            g = random_tangent_map(rng, R, 1, 6)
            n = order_upto(g, 30)
            if n is not None and n > 1:
                assert n % c == 0
