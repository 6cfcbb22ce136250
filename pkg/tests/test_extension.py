import cmath

import numpy as np
import pytest

from qsuper.extension_sl22 import (
    FACTOR,
    PRINTED_FACTOR,
    ExtensionError,
    P_elem,
    P_factored,
    Q_elem,
    ShiftOpMatrix,
    _exact_algebra,
    all_letters,
    bracket_sign,
    check_extension_relations,
    check_P_eigenvalue,
    check_qc2,
    check_vector_rep_oscillators,
    check_vell,
    irreducibility_commutant,
    letter_parity,
    p_eigen_constant,
    pi_x,
    pi_x_dual,
    relation_residuals,
    specialize_vell,
    tau,
    theta,
    validate_vell_point,
    vell_point,
)
from qsuper.pairing import GenLetter, parse_word
from qsuper.scalars import ONE, R, S, X, format_scalar

RS = R * S


def g(sym, i, exp=1):
    return GenLetter(sym, i, i, exp)


def test_theta_tau_examples():
    assert theta("e1") == (RS.inverse(), parse_word("e1"))
    assert theta("e3 k3") == (RS ** 2, parse_word("e3 k3"))
    assert theta("k1^-1")[0] == RS
    assert theta("f1 e2")[0] == ONE
    assert tau("f1")[0] == RS
    assert tau("f3 l1")[0] == ONE
    assert tau("k3^-1")[0] == RS


def test_oscillator_elements():
    P, Q = P_elem(), Q_elem()
    assert len(P) == 5 and len(Q) == 5
    assert P[1] == (RS, parse_word("e3 e2 e1 e2"))
    assert P[4] == (-(R + S), parse_word("e2 e1 e3 e2"))
    assert Q[0] == (RS, parse_word("f1 f2 f3 f2"))


def test_letters_and_parity():
    letters = all_letters()
    assert len(letters) == 18
    assert [x for x in letters if letter_parity(x)] == [g("e", 2), g("f", 2)]


def test_shift_exchange_rule():
    D = ShiftOpMatrix.unit(1, 1, shift=1)
    mu = ShiftOpMatrix.unit(1, 1, mu=1)
    # D mu = (rs) mu D
    assert (D @ mu).entries == {(0, 0): {(1, 1): RS}}
    assert (mu @ D).entries == {(0, 0): {(1, 1): ONE}}
    assert (D @ mu @ mu).entries == {(0, 0): {(2, 1): RS ** 2}}
    assert (D @ D @ mu).degrees() == {(1, 2)}


def test_shift_matrix_arithmetic():
    a = ShiftOpMatrix.unit(1, 2, R, shift=1)
    assert (a - a).is_zero()
    assert ShiftOpMatrix.identity() @ a == a
    assert (a + a) == a.scale(2)
    assert a.parity() == 0
    assert ShiftOpMatrix.unit(2, 3).parity() == 1


def test_pi_x_images():
    rep = pi_x()
    assert rep.letter(g("f", 2)) == ShiftOpMatrix.unit(3, 2, R / S - ONE)
    k1 = rep.letter(g("k", 1))
    assert k1 @ rep.letter(g("k", 1, -1)) == ShiftOpMatrix.identity()
    assert rep.letter(g("k", 1, -1)) @ k1 == ShiftOpMatrix.identity()
    e2 = rep.letter(g("e", 2))
    assert (e2 @ e2).is_zero()
    assert e2.degrees() == {(0, 0), (1, 0)}


@pytest.mark.parametrize("rep_fn", [pi_x, pi_x_dual])
def test_parity_homogeneous(rep_fn):
    rep = rep_fn()
    for letter in all_letters():
        assert rep.letter(letter).parity() == letter_parity(letter)


@pytest.mark.parametrize("rep_fn", [pi_x, pi_x_dual])
def test_relations(rep_fn):
    report = check_extension_relations(rep_fn())
    assert report.passed, report.witness
    assert report.details["bracket_convention"] == ["index"]


def test_wrong_bracket_convention_fails():
    alg = _exact_algebra(pi_x())
    bad = [name for name, m in relation_residuals(alg, "odd-generator") if not m.is_zero()]
    # the two conventions disagree on [e2,f2] and [e3,f3]
    assert bad == ["[e2,f2]", "[e3,f3]"]
    assert bracket_sign(3, "index") == -1
    assert bracket_sign(2, "index") == 1
    with pytest.raises(ExtensionError):
        bracket_sign(1, "other")


def test_qc2_pi_x():
    report = check_qc2()
    assert report.passed, report.witness
    assert report.details["letters"] == 18
    assert report.details["Q_zero"] and not report.details["P_zero"]


def test_qc2_dual_is_nontrivial_for_Q():
    report = check_qc2(pi_x_dual())
    assert report.passed, report.witness
    assert report.details["P_zero"] and not report.details["Q_zero"]


def test_qc2_detects_wrong_theta():
    # using the tau scalars for P must fail somewhere
    rep = pi_x()
    P = rep.element(P_elem())
    mismatches = 0
    for letter in all_letters():
        gm = rep.letter(letter)
        if not (P @ gm - (gm @ P).scale(tau((letter,))[0])).is_zero():
            mismatches += 1
    assert mismatches > 0


def test_P_eigenvalue():
    report = check_P_eigenvalue()
    assert report.passed, report.witness
    # the reciprocal prefactor is off by (r-s)^4/(rs)^2
    assert report.details["printed_factor_ratio"] == [format_scalar((R - S) ** 4 / RS ** 2)]


def test_factor_ratio_value():
    assert FACTOR / PRINTED_FACTOR == (R - S) ** 4 / RS ** 2
    rep = pi_x()
    assert P_factored(rep) == rep.element(P_elem())
    assert P_factored(rep, PRINTED_FACTOR) != rep.element(P_elem())


def test_P_eigen_constant_by_hand():
    q = S / R
    assert p_eigen_constant() == (ONE - q) * (ONE - q.inverse()) * (q - ONE) ** 2
    P = pi_x().element(P_elem())
    assert P.entries[(0, 0)] == {(1, 0): X * p_eigen_constant()}
    assert pi_x(0).element(P_elem()).is_zero()


def test_vector_rep_oscillators_vanish():
    assert check_vector_rep_oscillators().passed


def test_vell_point_and_validation():
    pt = vell_point(3)
    assert abs((pt["r"] * pt["s"]) ** 3 - 1) < 1e-12
    assert validate_vell_point(pt, 3) == []
    assert validate_vell_point({"r": 1.0, "s": 1.0, "x": 1.0}, 1)
    assert validate_vell_point({"r": 2.0, "s": 0.25, "x": 1.0}, 2)
    assert validate_vell_point({"r": 2.0, "s": 0.5, "x": 0.0}, 1)
    with pytest.raises(ExtensionError):
        specialize_vell(2, {"r": 1.0, "s": 1.0, "x": 1.0})


@pytest.mark.parametrize("ell", [1, 2, 3, 4])
def test_vell(ell):
    report = check_vell(ell)
    assert report.passed, report.witness
    assert report.details["commutant_dim"] == 1


def test_vell_bad_point_fails():
    assert not check_vell(2, point={"r": 2.0, "s": 0.25, "x": 1.0}).passed


def test_commutant_of_direct_sum():
    gens = specialize_vell(1, vell_point(1))
    doubled = [np.block([[m, np.zeros_like(m)], [np.zeros_like(m), m]]) for m in gens.values()]
    dim, _ = irreducibility_commutant(doubled)
    assert dim is not None and dim >= 4


def test_commutant_at_generic_point():
    r0 = 1.7 * cmath.exp(0.3j)
    point = {"r": r0, "s": 1 / r0, "x": 0.8 - 0.4j}
    gens = specialize_vell(1, point)
    dim, _ = irreducibility_commutant(list(gens.values()))
    assert dim == 1


def test_commutant_of_identity_only():
    dim, _ = irreducibility_commutant([np.eye(3)])
    assert dim == 9
