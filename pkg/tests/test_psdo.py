import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from moyalcocycle.algebra import QQ, ParamPoly
from moyalcocycle.psdo import (
    PsdoSymbol,
    ad,
    ad_ln_d,
    ad_ln_x,
    build_r,
    derivation_bracket,
    psdo_compose,
    r_coefficient,
    verify_psdo_comparison,
)

K = 8
hbar = ParamPoly.var("hbar")


def M(a, j, c=1, depth=K):
    return PsdoSymbol.monomial(a, j, depth, c)


def test_compose_examples():
    assert psdo_compose(M(0, 1), M(1, 0)).same_window(M(1, 1) + M(0, 0, hbar))
    assert psdo_compose(M(0, -1), M(1, 0)).same_window(M(1, -1) + M(0, -2, -hbar))
    a = M(2, -1) + M(-1, -3, 3)
    assert psdo_compose(a, PsdoSymbol.identity(K)).same_window(a)


def test_adjoint_actions():
    assert ad_ln_d(M(1, 0)).same_window(M(0, -1, hbar))
    assert ad_ln_x(M(0, 1)).same_window(M(-1, 0, -hbar))
    assert ad_ln_d(M(0, 0, 5)).is_zero()


def test_r_coefficients():
    assert [r_coefficient(k) for k in (1, 2, 3)] == [1, QQ(1, 2), QQ(2, 3)]
    assert r_coefficient(5) == QQ(24, 5)
    r = build_r(2)
    assert r.terms == {(-1, -1, (("hbar", 1),)): 1, (-2, -2, (("hbar", 2),)): QQ(1, 2)}


def test_r_has_even_orders():
    assert any(dict(m)["hbar"] % 2 == 0 for *_, m in build_r(K).terms)


def test_check_on_x():
    s = M(1, 0)
    assert derivation_bracket(s).same_window(ad(build_r(K), s))


def test_comparison_grid():
    report = verify_psdo_comparison(3, K)
    assert report.passed and report.checked == 49


def test_window_tracking():
    s = psdo_compose(M(0, 2, depth=4), M(0, -1, depth=3))
    assert (s.top, s.floor) == (1, -2)
    with pytest.raises(ValueError):
        PsdoSymbol(0, 2, {(0, 1, ()): QQ(1)})


# ---- independent oracle: operators acting on functions (d = hbar d/dx) ----

x, h = sp.symbols("x hbar")
phi = sp.Function("phi")(x)


def act(sym: PsdoSymbol, f):
    out = 0
    for (a, j, mono), c in sym.terms.items():
        assert j >= 0
        coeff = sp.Rational(int(c.numerator), int(c.denominator)) * h ** dict(mono).get("hbar", 0)
        out += coeff * x ** a * h ** j * sp.diff(f, x, j)
    return out


diff_ops = st.builds(lambda a, j, c: M(a, j, c, depth=6), st.integers(-2, 3), st.integers(0, 3), st.integers(-3, 3))


@settings(max_examples=40, deadline=None)
@given(diff_ops, diff_ops)
def test_compose_acts_like_operators(a, b):
    c = psdo_compose(a, b)
    assert c.floor <= 0
    lhs = act(c.restrict(0), phi)
    rhs = act(a, act(b, phi))
    assert sp.simplify(lhs - rhs) == 0


@settings(max_examples=40, deadline=None)
@given(diff_ops)
def test_ad_ln_x_acts_like_commutator(s):
    out = ad_ln_x(s)
    lhs = act(out.restrict(0), phi)
    rhs = sp.log(x) * act(s, phi) - act(s, sp.log(x) * phi)
    assert sp.simplify(sp.expand(lhs - rhs)) == 0


symbols = st.builds(lambda a, j, c: M(a, j, c), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))


@settings(max_examples=60, deadline=None)
@given(symbols, symbols, symbols)
def test_compose_associative(a, b, c):
    assert psdo_compose(psdo_compose(a, b), c).same_window(psdo_compose(a, psdo_compose(b, c)))


@settings(max_examples=60, deadline=None)
@given(symbols, symbols)
def test_adjoint_actions_are_derivations(a, b):
    for ad_ in (ad_ln_d, ad_ln_x):
        lhs = ad_(psdo_compose(a, b))
        rhs = psdo_compose(ad_(a), b) + psdo_compose(a, ad_(b))
        assert lhs.same_window(rhs)


def test_inverse_of_d():
    for j in range(1, 4):
        assert psdo_compose(M(0, -j), M(0, j)).same_window(PsdoSymbol.identity(K))
        assert psdo_compose(M(0, j), M(0, -j)).same_window(PsdoSymbol.identity(K))
