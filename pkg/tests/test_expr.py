import pytest
from hypothesis import given, settings, strategies as st

from pdchow.expr import ExprError, eval_expression, tokenize
from pdchow.pd_algebra import PDAlgebra, gamma_d
from pdchow.taut import TautClass, taut_fourier, taut_intersect, taut_pontryagin

w = TautClass.basis


@pytest.mark.parametrize(
    "src,g,expect",
    [
        ("w[1]*w[1]", 3, w(3, 2).scale(2)),
        ("F(F(w[2]))", 2, w(2, 2)),
        ("F(F(w[2]))", 3, w(3, 2).scale(-1)),
        ("theta.theta.theta", 3, w(3, 0).scale(6)),
        ("E(c)", 3, TautClass(3, [1, 1, 1, 1])),
        ("2*c - c", 3, w(3, 1)),
        ("-c + 3*theta", 4, TautClass(4, [0, -1, 0, 3, 0])),
        ("(w[1] + w[2]) * c", 4, TautClass(4, [0, 0, 2, 3, 0])),
        ("F(theta)", 3, w(3, 1)),
        ("c . theta", 5, w(5, 0).scale(5)),
        ("w[0]", 1, w(1, 0)),
    ],
)
def test_examples(src, g, expect):
    assert eval_expression(src, g) == expect


def test_precedence_and_cdot():
    # '.' and '*' bind equally and associate left
    g = 4
    assert eval_expression("c * c . theta", g) == taut_intersect(taut_pontryagin(w(g, 1), w(g, 1)), w(g, 3))
    assert eval_expression("theta.theta - 2*w[2]", g) == TautClass.zero(g)


@given(st.integers(1, 6), st.lists(st.integers(-5, 5), min_size=7, max_size=7))
@settings(max_examples=60, deadline=None)
def test_linear_combinations_round_trip(g, cs):
    cs = cs[: g + 1]
    src = " + ".join(f"{c}*w[{i}]" for i, c in enumerate(cs))
    x = TautClass(g, cs)
    assert eval_expression(src, g) == x
    assert eval_expression(f"F({src})", g) == taut_fourier(x)


def test_modulus():
    assert eval_expression("3*c*c", 3, modulus=4) == TautClass(3, [0, 0, 2, 0], 4)


def test_pd_mode():
    alg = PDAlgebra(2)
    u1, u2 = alg.gen(0), alg.gen(1)
    assert eval_expression("G[2](u[1]+u[2])", pd_rank=2) == gamma_d(u1 + u2, 2)
    assert eval_expression("u[1]*u[1] - 2*G[2](u[1])", pd_rank=2) == alg.zero()
    assert eval_expression("3", pd_rank=2) == alg.one().scale(3)
    one = PDAlgebra(1)
    e = eval_expression("E(2*u[1])", pd_rank=1, truncation=3)
    assert e.coeffs == {(0,): 1, (1,): 2, (2,): 4, (3,): 8}
    assert eval_expression("G[3](2*u[1])", pd_rank=1, modulus=4) == PDAlgebra(1, 4).zero()
    assert eval_expression("E(u[1])", pd_rank=1, truncation=1) == one.one() + one.gen(0)


@pytest.mark.parametrize(
    "src,kw,pos",
    [
        ("w[1] +", {}, 6),
        ("w[9]", {"genus": 3}, 1),
        ("3 + w[1]", {}, 2),
        ("F(2)", {}, 1),
        ("1+1", {}, 0),
        ("c # x", {}, 2),
        ("(c", {}, 2),
        ("c)", {}, 1),
        ("foo", {}, 0),
        ("E(w[0])", {"genus": 2}, 1),
        ("u[1].u[1]", {"pd_rank": 1}, 4),
        ("u[3]", {"pd_rank": 2}, 1),
        ("w[1]", {"pd_rank": 2}, 0),
        ("G[2](1)", {"pd_rank": 1}, 4),
    ],
)
def test_errors_carry_positions(src, kw, pos):
    with pytest.raises(ExprError) as info:
        eval_expression(src, **kw)
    assert info.value.position == pos


def test_genus_must_be_positive():
    with pytest.raises(ExprError):
        eval_expression("c", 0)


def test_tokens():
    kinds = [t.kind for t in tokenize("F(w[12]) . theta")]
    assert kinds == ["name", "sym", "name", "sym", "int", "sym", "sym", "sym", "name", "end"]
