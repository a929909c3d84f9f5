import random
from itertools import permutations

import pytest
import sympy as sp
from hypothesis import given, settings

import oracles as O
from moyalcocycle import cocycle
from moyalcocycle.algebra import QQ, HElement, LaurentPoly, ParamPoly, ScalarSeries
from moyalcocycle.cocycle import (
    Chain,
    CocycleConfig,
    alt_first_summand,
    alt_star_triple,
    build_c_lambda,
    c_lambda_entries,
    calibrate_q_coefficient,
    ce_boundary,
    ce_differential,
    ce_differential_3,
    default_calibration_sample,
    graded_differentials,
    monomial_tuples,
    pair_c_lambda,
    pairing_matrix,
    psi3,
    psi3_even,
    psi3_odd,
    published_determinant,
    published_pairing_matrix,
)
from moyalcocycle.moyal import commutator
from moyalcocycle.suites import sample_two_cochain, structure_checks
from strategies import helements

p, q = LaurentPoly.p(), LaurentPoly.q()
lam = ParamPoly.var("lam")
N = 9
CFG = CocycleConfig.at_order(N)


def H(f, order=N):
    return HElement.lift(f, order)


def mono(i, j, order=N):
    return H(LaurentPoly.monomial(i, j), order)


def phi(*a):
    return psi3(*a, config=CFG)


# ---- the 12-term table ----------------------------------------------------


def test_only_two_table_entries_survive():
    _, table = alt_first_summand(*c_lambda_entries(N), CFG)
    assert len(table) == 12
    nonzero = {t.label: t for t in table if not t.value.is_zero()}
    assert set(nonzero) == {"Tr(D1(A3)*D2(A1)*A2)", "Tr(D2(A1)*D1(A3)*A2)"}
    assert all(t.sign == 1 for t in nonzero.values())


def test_designated_terms():
    _, table = alt_first_summand(*c_lambda_entries(N), CFG)
    by_label = {t.label: t.value for t in table}
    assert by_label["Tr(D1(A3)*D2(A1)*A2)"] == ScalarSeries(N, [0, 0, lam * lam * -8, lam * -8])
    assert by_label["Tr(D2(A1)*D1(A3)*A2)"] == ScalarSeries(N, [0, 0, lam * lam * -8, lam * 8])


# ---- alternated triple product -------------------------------------------


def test_alt_triple_repeated_argument():
    f, g = H(p * q + lam), H(q ** 2)
    assert alt_star_triple(f, f, g).is_zero()


def test_alt_triple_with_unit():
    # the unit is central, so the six orderings collapse to p*q - q*p = [p, q]
    brute = sum(
        O._sign(s) * O.star(O.star(*[[O.p, O.q, 1][k] for k in s[:2]], 5), [O.p, O.q, 1][s[2]], 5)
        for s in permutations(range(3))
    )
    got = alt_star_triple(H(p, 5), H(q, 5), H(1, 5))
    assert O.from_h(got) == sp.expand(brute)
    assert got == HElement.hbar(5).scale(2)


def test_alt_triple_on_c_lambda():
    expected = HElement.hbar(N, 3).scale(4) + H(LaurentPoly.constant(lam * lam * -4)).shift(1)
    assert alt_star_triple(*c_lambda_entries(N)) == expected


def test_alt_triple_differs_from_published_intermediate():
    published = (H(p * q * 4).shift(2) + H(LaurentPoly.constant(lam * 2)).shift(2)
                 + H(LaurentPoly.constant(lam * lam * -4)).shift(1))
    diff = alt_star_triple(*c_lambda_entries(N)) - published
    assert diff == HElement.hbar(N, 3).scale(4) + H(p * q * -4 + lam * -2).shift(2)


# ---- Psi3 against the literal expansion ----------------------------------


def test_psi3_c_lambda_matches_oracle():
    order = 5
    entries = c_lambda_entries(order)
    value, triple = O.psi3([O.from_h(e) for e in entries], order)
    assert O.from_series(psi3(*entries, config=CocycleConfig.at_order(order))) == value
    assert O.from_h(alt_star_triple(*entries)) == triple
    assert value == sp.expand(8 * O.hbar ** 4 - 24 * O.hbar ** 2 * O.lam ** 2)


@pytest.mark.parametrize("args", [((-2, -2), (1, 2), (2, 1)), ((-2, -1), (1, 0), (2, 2))])
def test_psi3_monomials_match_oracle(args):
    order = 5
    elems = [mono(i, j, order) for i, j in args]
    value, _ = O.psi3([O.from_h(e) for e in elems], order)
    got = psi3(*elems, config=CocycleConfig.at_order(order))
    assert not got.is_zero()
    assert O.from_series(got) == value


def test_psi3_c_lambda_exact():
    pairing = pair_c_lambda(CFG)
    assert pairing.total == ScalarSeries(N, [0, 0, lam * lam * -24, 0, 8])
    assert pairing.even == pairing.total
    assert pairing.odd.is_zero()


def test_psi3_even_and_odd_split_total():
    for tup in [c_lambda_entries(N), (mono(-2, -2), mono(1, 2), mono(2, 1))]:
        assert psi3_even(*tup, config=CFG) + psi3_odd(*tup, config=CFG) == psi3(*tup, config=CFG)


@settings(max_examples=25, deadline=None)
@given(helements(order=5), helements(order=5))
def test_psi3_repeated_argument(a, b):
    cfg = CocycleConfig.at_order(5)
    assert psi3(a, a, b, config=cfg).is_zero()
    assert psi3(a, b, a, config=cfg).is_zero()


def test_psi3_alternating_under_all_permutations():
    from moyalcocycle.cocycle import perm_sign

    args = (mono(-2, -1) + mono(1, 1), mono(1, 2) + mono(2, 1), mono(2, 0) + mono(-2, -2))
    base = phi(*args)
    assert not base.is_zero()
    for perm in permutations(range(3)):
        assert phi(*[args[k] for k in perm]) == base.scale(perm_sign(perm))


# ---- differentials -------------------------------------------------------


def test_d_psi3_on_small_tuple():
    assert ce_differential_3(phi, H(p), H(q), H(p * q), H(p ** 2)).is_zero()


def test_d_zero_map():
    zero = lambda *a: ScalarSeries.zero(N)  # noqa: E731
    assert ce_differential_3(zero, H(p), H(q), H(p * q), H(p ** 2)).is_zero()


def test_d_psi3_repeated_element():
    a, b, c = mono(-1, 0), mono(1, 2), mono(2, 0)
    assert ce_differential_3(phi, a, b, a, c).is_zero()


def test_graded_differentials_on_grid_slice():
    for tup in default_calibration_sample(N) + monomial_tuples(2, 4, N)[::97]:
        res = graded_differentials(phi, *tup)
        assert all(v.is_zero() for v in res.values())


def test_components_of_d_are_nonzero_individually():
    # the sample tuples are non-degenerate: both summands have non-zero differentials
    tup = default_calibration_sample(N)[0]
    first = ce_differential(lambda *a: alt_first_summand(*a, CFG)[0], *tup)
    assert not first.is_zero()


# ---- calibration ---------------------------------------------------------


def test_calibration_default():
    cal = calibrate_q_coefficient(default_calibration_sample(N), CFG)
    assert (cal.status, cal.value) == ("unique", 1)


def test_calibration_prescaled():
    cal = calibrate_q_coefficient(default_calibration_sample(N), CFG.with_q_coefficient(3))
    assert (cal.status, cal.value) == ("unique", QQ(1, 3))


def test_calibration_degenerate_samples():
    assert calibrate_q_coefficient([], CFG).status == "any"
    zero_tuple = [(H(p), H(q), H(p * q), H(p ** 2))]
    assert calibrate_q_coefficient(zero_tuple, CFG).status == "any"


def test_calibration_inconsistent(monkeypatch):
    # a second summand that is not proportional order by order
    monkeypatch.setattr(cocycle, "_q_cochain",
                        lambda config: lambda *a: alt_first_summand(*a, config)[0].shift(1))
    cal = calibrate_q_coefficient(default_calibration_sample(N), CFG)
    assert cal.status == "none" and cal.offending is not None


# ---- chains and boundaries -----------------------------------------------


def test_c_lambda_entries():
    a, b, c = c_lambda_entries(N)
    assert (a, b, c) == (H(p), H(q * p + lam), H(q ** 2 * p + q * (2 * lam)))
    at_zero = build_c_lambda(N).substitute({"lam": 0})
    assert at_zero.terms[0][1] == (H(p), H(q * p), H(q ** 2 * p))


def test_c_lambda_brackets():
    a, b, c = c_lambda_entries(N)
    assert commutator(a, b) == H(p * 2).shift(1)
    assert commutator(a, c) == H(q * p * 4 + lam * 4).shift(1)
    assert commutator(b, c) == c.scale(2).shift(1)


def test_c_lambda_is_a_cycle():
    assert ce_boundary(build_c_lambda(N)).is_zero()


def test_boundary_with_repeated_entry():
    x, y = H(p * q + lam), H(q ** -1)
    assert ce_boundary(Chain.wedge(x, x, y)).is_zero()


def test_boundary_of_p_q_unit():
    # [p, q] = 2 hbar is a multiple of the unit, so the only surviving wedge is 1 ^ 1 = 0
    raw = ce_boundary(Chain.wedge(H(p), H(q), H(1)))
    assert [w[0] for _, w in raw.terms][0] == HElement.hbar(N).scale(2)
    assert raw.is_zero()


def test_chain_canonical_antisymmetry():
    a, b = mono(1, 0), mono(0, 1)
    assert (Chain.wedge(a, b) + Chain.wedge(b, a)).is_zero()
    assert not (Chain.wedge(a, b) + Chain.wedge(a, b)).is_zero()


def test_boundary_sign_is_adjoint():
    rng = random.Random(3)
    from moyalcocycle.suites import random_laurent

    checked = 0
    while checked < 5:
        t = tuple(H(random_laurent(rng, 2, 4)) for _ in range(3))
        d_phi = ce_differential(sample_two_cochain, *t)
        if d_phi.is_zero():
            continue
        checked += 1
        assert ce_boundary(Chain.wedge(*t)).pair(sample_two_cochain) == d_phi
        # the opposite overall sign is not adjoint
        assert ce_boundary(Chain.wedge(*t)).scale(-1).pair(sample_two_cochain) != d_phi


def test_structure_checks():
    assert all(structure_checks(CFG, seed=5).values())


# ---- pairing matrix --------------------------------------------------------


def test_published_model_matrix():
    l1, l2 = ParamPoly.var("lam1"), ParamPoly.var("lam2")
    m = published_pairing_matrix(l1, l2)
    assert m.matrix == [[l1 * l1 * -24, l1 * 4], [l2 * l2 * -24, l2 * 4]]
    assert m.determinant == published_determinant(l1, l2)


def test_published_determinant_at_1_2():
    assert published_pairing_matrix(1, 2).determinant == 192
    assert published_determinant(1, 2) == 192


def test_equal_lambdas_give_zero_determinant():
    pairing = pair_c_lambda(CFG)
    assert pairing_matrix(QQ(3, 2), QQ(3, 2), 1, CFG, pairing).determinant.is_zero()
    assert published_pairing_matrix(5, 5).determinant.is_zero()


def test_computed_matrix():
    m = pairing_matrix(1, 2, 1, CFG)
    assert m.matrix == [[ParamPoly.const(-16), ParamPoly()], [ParamPoly.const(-88), ParamPoly()]]
    assert m.determinant.is_zero()


def test_hbar_substitution_happens_last():
    m = pairing_matrix(1, 2, QQ(1, 2), CFG)
    # -24 lam^2 hbar^2 + 8 hbar^4 at hbar = 1/2
    assert m.matrix[0][0] == ParamPoly.const(QQ(-6) + QQ(1, 2))
