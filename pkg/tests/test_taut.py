from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from pdchow.cohomology import ModelError, cup, fundamental_class, pontryagin
from pdchow.fourier import kernel_fourier
from pdchow.taut import (
    TautClass,
    TautError,
    embed_taut,
    taut_curve,
    taut_delta,
    taut_fourier,
    taut_fourier_inverse,
    taut_gamma,
    taut_gammas,
    taut_intersect,
    taut_pontryagin,
    taut_star_exp,
    taut_theta,
)

w = TautClass.basis


@st.composite
def taut(draw, g=None, modulus=None):
    g = g if g is not None else draw(st.integers(1, 8))
    return TautClass(g, draw(st.lists(st.integers(-9, 9), min_size=g + 1, max_size=g + 1)), modulus)


@st.composite
def pairs(draw, k=2):
    g = draw(st.integers(1, 8))
    return tuple(draw(taut(g)) for _ in range(k))


def test_examples():
    assert taut_pontryagin(w(3, 1), w(3, 1)) == w(3, 2).scale(2)
    assert taut_pontryagin(w(5, 2), w(5, 3)) == w(5, 5).scale(10)
    assert taut_pontryagin(w(4, 2), w(4, 3)) == TautClass.zero(4)
    for g in range(2, 7):
        th = taut_theta(g)
        assert taut_intersect(th, th) == w(g, g - 2).scale(2)
    assert taut_fourier(w(4, 0)) == w(4, 4)
    assert taut_fourier(taut_theta(3)) == taut_curve(3)
    assert taut_gamma(w(4, 2), 2) == w(4, 4).scale(3)
    assert repr(w(3, 2).scale(2)) == "2*w2"


@pytest.mark.parametrize("g", range(1, 9))
def test_units_and_theta_powers(g):
    th = taut_theta(g)
    power = w(g, g)
    for n in range(g + 1):
        assert power == w(g, g - n).scale(factorial(n))
        power = taut_intersect(power, th)
    for i in range(g + 1):
        assert taut_pontryagin(w(g, 0), w(g, i)) == w(g, i)
        assert taut_intersect(w(g, g), w(g, i)) == w(g, i)
        for j in range(g + 1):
            expect = w(g, g - (g - i) - (g - j)).scale(comb(2 * g - i - j, g - i)) if i + j >= g else TautClass.zero(g)
            assert taut_intersect(w(g, i), w(g, j)) == expect


@pytest.mark.parametrize("g", range(1, 9))
def test_fourier_on_basis(g):
    sgn = (-1) ** g
    for i in range(g + 1):
        x = w(g, i)
        assert taut_fourier(taut_fourier(x)) == x.scale(sgn)
        assert taut_fourier_inverse(taut_fourier(x)) == x
        for j in range(g + 1):
            y = w(g, j)
            assert taut_fourier(taut_pontryagin(x, y)) == taut_intersect(taut_fourier(x), taut_fourier(y))
            assert taut_fourier(taut_intersect(x, y)) == taut_pontryagin(taut_fourier(x), taut_fourier(y)).scale(sgn)


@given(pairs(3))
@settings(max_examples=80, deadline=None)
def test_ring_laws(xyz):
    x, y, z = xyz
    for op in (taut_pontryagin, taut_intersect):
        assert op(x, y) == op(y, x)
        assert op(op(x, y), z) == op(x, op(y, z))
        assert op(x, y + z) == op(x, y) + op(x, z)


@given(pairs(2))
@settings(max_examples=80, deadline=None)
def test_fourier_exchanges_products(xy):
    x, y = xy
    sgn = (-1) ** x.g
    assert taut_fourier(taut_pontryagin(x, y)) == taut_intersect(taut_fourier(x), taut_fourier(y))
    assert taut_fourier(taut_intersect(x, y)) == taut_pontryagin(taut_fourier(x), taut_fourier(y)).scale(sgn)


@given(pairs(2), st.integers(0, 4), st.integers(0, 4))
@settings(max_examples=80, deadline=None)
def test_gamma_axioms(xy, d, e):
    x, y = (TautClass(v.g, (0,) + v.coords[1:]) for v in xy)
    gx = taut_gammas(x, d + e)
    assert taut_pontryagin(gx[d], gx[e]) == gx[d + e].scale(comb(d + e, d))
    gy = taut_gammas(y, d)
    lhs = taut_gamma(x + y, d)
    rhs = TautClass.zero(x.g)
    for i in range(d + 1):
        rhs = rhs + taut_pontryagin(gx[i], gy[d - i])
    assert lhs == rhs
    assert taut_gamma(x.scale(3), d) == gx[d].scale(3**d)


@given(pairs(2), st.integers(0, 4), st.integers(0, 4))
@settings(max_examples=80, deadline=None)
def test_delta_axioms(xy, d, e):
    x, y = (TautClass(v.g, v.coords[:-1] + (0,)) for v in xy)
    dx = [taut_delta(x, n) for n in range(d + e + 1)]
    assert taut_intersect(dx[d], dx[e]) == dx[d + e].scale(comb(d + e, d))
    lhs = taut_delta(x + y, d)
    rhs = TautClass.zero(x.g)
    for i in range(d + 1):
        rhs = rhs + taut_intersect(dx[i], taut_delta(y, d - i))
    assert lhs == rhs
    assert taut_delta(x, 1) == x
    assert taut_delta(x, 0) == w(x.g, x.g)


@pytest.mark.parametrize("g", range(1, 9))
def test_divided_powers_of_named_classes(g):
    for n in range(g + 1):
        assert taut_gamma(taut_curve(g), n) == w(g, n)
        assert taut_delta(taut_theta(g), n) == w(g, g - n)
    # n! delta_n(theta) = theta^n
    power = w(g, g)
    for n in range(g + 1):
        assert taut_delta(taut_theta(g), n).scale(factorial(n)) == power
        power = taut_intersect(power, taut_theta(g))
    total = TautClass(g, [1] * (g + 1))
    assert taut_star_exp(taut_curve(g)) == total


@pytest.mark.parametrize("g", range(1, 5))
def test_embedding_is_a_homomorphism(g):
    F = kernel_fourier(g)
    assert embed_taut(w(g, g)) == fundamental_class(g)
    images = [embed_taut(w(g, i)) for i in range(g + 1)]
    for i in range(g + 1):
        assert F(images[i]) == embed_taut(taut_fourier(w(g, i)))
        for j in range(g + 1):
            assert pontryagin(images[i], images[j]) == embed_taut(taut_pontryagin(w(g, i), w(g, j)))
            assert cup(images[i], images[j]) == embed_taut(taut_intersect(w(g, i), w(g, j)))
    # injective: the images have distinct degrees and are nonzero
    assert all(images)


def test_modulus_mode():
    x = w(3, 1).scale(2)
    two = TautClass(3, [0, 2, 0, 0], modulus=4)
    assert taut_pontryagin(two, two) == TautClass(3, [0, 0, 0, 0], modulus=4)
    assert taut_pontryagin(x, x) == w(3, 2).scale(8)
    assert taut_gamma(two, 2) == TautClass(3, [0, 0, 0, 0], modulus=4)
    assert TautClass(2, [5, -1, 4], modulus=4).coords == (1, 3, 0)
    with pytest.raises(ModelError):
        embed_taut(two)


def test_errors():
    with pytest.raises(TautError):
        TautClass(0, [1])
    with pytest.raises(TautError):
        TautClass(2, [1, 2])
    with pytest.raises(TautError):
        taut_pontryagin(w(2, 1), w(3, 1))
    with pytest.raises(TautError):
        taut_intersect(w(2, 1), TautClass.basis(2, 1, 4))
    with pytest.raises(TautError):
        taut_gamma(w(2, 0), 2)
    with pytest.raises(TautError):
        taut_delta(w(2, 2), 2)
    with pytest.raises(TautError):
        w(2, 3)
    with pytest.raises(TautError):
        taut_gamma(w(2, 1), -1)
