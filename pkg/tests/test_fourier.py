import random

import pytest

from pdchow.cohomology import (
    ExtClass,
    HomMatrix,
    ModelError,
    curve_class,
    fundamental_class,
    point_class,
    pullback,
    pushforward,
    star_exp,
    theta,
    w_class,
)
from pdchow.fourier import (
    DIAG,
    J1,
    J2,
    SWAP,
    KernelOperator,
    LinearOperator,
    compose_kernels,
    correspondence_operator,
    diagonal_class,
    exp_gamma,
    exp_line_fourier,
    fourier,
    gamma_class,
    kernel_fourier,
    negation_push,
    poincare_line,
    verify_cubical,
    verify_elliptic,
    verify_kernel_consistency,
    verify_kernel_fourier,
    verify_mot_fourier,
)


def failing(checks):
    return [c.name for c in checks if not c.passed]


@pytest.mark.parametrize("g", [1, 2, 3])
def test_verifiers_pass(g):
    assert failing(verify_kernel_fourier(g)) == []
    assert failing(verify_cubical(g)) == []
    assert failing(verify_mot_fourier(g)) == []
    assert failing(verify_kernel_consistency(g, random.Random(g), 8)) == []


def test_elliptic_verifier_passes():
    assert failing(verify_elliptic()) == []


@pytest.mark.parametrize("g", [1, 2, 3])
def test_gamma_is_swap_symmetric(g):
    gam = gamma_class(g)
    assert pushforward(SWAP, gam) == gam
    assert pullback(J1, gam) == ExtClass(g, 1)
    assert len(exp_gamma(g).coeffs) == 4**g


@pytest.mark.parametrize("g", [1, 2, 3])
def test_fourier_values(g):
    sgn = (-1) ** g
    c, th = curve_class(g), theta(g)
    assert fourier(point_class(g)) == fundamental_class(g)
    assert fourier(fundamental_class(g)) == point_class(g).scale(sgn)
    assert fourier(th) == c.scale(-sgn)
    assert fourier(c) == -th
    for n in range(g + 1):
        assert fourier(w_class(g, n)) == w_class(g, g - n).scale((-1) ** n)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_diagonal_kernel_is_negation(g):
    # with the Pontryagin kernel convention G_Delta = [-1]_*
    assert KernelOperator(diagonal_class(g)) == negation_push(g)
    # as a correspondence the graph of [-1] gives [-1]_* too
    graph = pushforward(HomMatrix.of([[1], [-1]]), fundamental_class(g))
    assert correspondence_operator(graph) == negation_push(g)


def test_exp_gamma_closed_form_genus_one():
    g = 1
    closed = point_class(g, 2) + gamma_class(g) - fundamental_class(g, 2)
    assert exp_gamma(g) == closed


@pytest.mark.parametrize("g", [1, 2])
def test_fourier_squared_kernel(g):
    E = exp_gamma(g)
    assert compose_kernels(E, E) == diagonal_class(g).scale((-1) ** g)


@pytest.mark.parametrize("g", [1, 2])
def test_perturbed_kernel_is_detected(g):
    # negative control: a changed kernel must break the two-route equality
    E = exp_gamma(g) + point_class(g, 2)
    assert KernelOperator(E, (-1) ** g) != exp_line_fourier(g)
    flipped = KernelOperator(exp_gamma(g), -((-1) ** g))
    assert flipped != exp_line_fourier(g)


@pytest.mark.parametrize("g", [1, 2])
def test_exp_of_poincare_line_is_degree_mixed(g):
    ell = poincare_line(g)
    assert pullback(J1, ell) == ExtClass(g, 1) and pullback(J2, ell) == ExtClass(g, 1)
    assert set(ell.degrees()) == {2}


def test_operator_algebra():
    g = 2
    F = kernel_fourier(g)
    ident = LinearOperator.from_function(g, lambda x: x)
    assert F @ ident == F
    assert (F - F) == LinearOperator(g, 1, 1, {})
    assert (-F) == F.scale(-1)
    with pytest.raises(ModelError):
        F(point_class(1))
    with pytest.raises(ModelError):
        KernelOperator(point_class(2))
    with pytest.raises(ModelError):
        compose_kernels(exp_gamma(1), exp_gamma(2))


def test_star_exp_of_gamma_on_j2_matches_cache():
    assert star_exp(gamma_class(2)) == exp_gamma(2)
    assert pushforward(DIAG, curve_class(2)) == pushforward(J1, curve_class(2)) + pushforward(
        J2, curve_class(2)
    ) - gamma_class(2)
