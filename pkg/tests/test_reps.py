import pytest

from qsuper.pairing import s, t
from qsuper.reps import (
    COMPLEX,
    RepError,
    WeightRep,
    antipode_matrices,
    check_antipode,
    check_dj_relations,
    check_root_vector_induction,
    check_rtt,
    check_weight_relations,
    check_weights,
    dj_generators,
    in_backend,
    named_rep,
    oscillator_words,
    tensor_reps,
    vector_rep,
    _serre_combo,
)
from qsuper.scalars import ONE, R, S
from qsuper.superlinalg import GradedMatrix, SuperSpace

V11 = SuperSpace.standard(1, 1)
V22 = SuperSpace.standard(2, 2)


def E(space, i, j, c=ONE):
    return GradedMatrix.unit(space, i - 1, j - 1, c)


def diag(space, *values):
    return GradedMatrix.diagonal(space, list(values))


def test_vector_rep_11_entries():
    V = vector_rep(1, 1)
    assert V.letter(s(1, 1)) == diag(V11, R, ONE)
    assert V.letter(s(1, 2)) == E(V11, 1, 2, S - R)
    assert V.letter(t(1, 1)) == diag(V11, S, ONE)
    assert V.letter(s(1, 1, -1)) == diag(V11, R.inverse(), ONE)


def test_tensor_square_11():
    V = vector_rep(1, 1)
    VV = tensor_reps(V, V)
    assert VV.letter(s(1, 1)) == diag(VV.space, R ** 2, R, R, ONE)
    assert VV.weights[1] == (1, 1)
    assert VV.weights[3] == (0, 2)


@pytest.mark.parametrize("M,N,name", [(1, 1, "vector"), (2, 2, "vector"), (1, 1, "vector^2"),
                                      (1, 1, "vector^3"), (2, 1, "vector^2"), (2, 2, "vector^2")])
def test_rtt(M, N, name):
    report = check_rtt(named_rep(M, N, name))
    assert report.passed, report.witness


@pytest.mark.parametrize("M,N,name", [(1, 1, "vector"), (2, 2, "vector"), (2, 2, "vector^2"), (0, 3, "vector^2")])
def test_weights_and_weight_relations(M, N, name):
    rep = named_rep(M, N, name)
    assert check_weights(rep).passed
    assert check_weight_relations(rep).passed


def test_dj_generators_22():
    G = dj_generators(vector_rep(2, 2))
    assert G["K1"] == diag(V22, S, R, ONE, ONE)
    assert G["E2"] == E(V22, 2, 3, S / R - ONE)


def test_dj_generator_11():
    G = dj_generators(vector_rep(1, 1))
    assert G["E1"] == E(V11, 1, 2, R.inverse() * (S - R))


@pytest.mark.parametrize("M,N,name", [(2, 2, "vector"), (2, 2, "vector^2"), (1, 1, "vector"), (2, 1, "vector")])
def test_dj_relations(M, N, name):
    rep = named_rep(M, N, name)
    report = check_dj_relations(rep)
    assert report.passed, report.witness
    assert check_root_vector_induction(rep).passed


@pytest.mark.parametrize("name", ["vector", "vector^2"])
def test_oscillators_vanish_22(name):
    rep = named_rep(2, 2, name)
    G = dj_generators(rep)
    P, Q = oscillator_words(2)
    assert _serre_combo(rep, P, G).is_zero()
    assert _serre_combo(rep, Q, G).is_zero()


def test_antipode_11_example():
    V = vector_rep(1, 1)
    Sm_s, _ = antipode_matrices(V)
    s11_inv, s22_inv = V.letter(s(1, 1, -1)), V.letter(s(2, 2, -1))
    assert Sm_s[(1, 1)] == s11_inv
    assert Sm_s[(1, 2)] == -(s11_inv @ V.letter(s(1, 2)) @ s22_inv)


@pytest.mark.parametrize("M,N", [(1, 1), (2, 2), (1, 2)])
def test_antipode_convolution(M, N):
    assert check_antipode(vector_rep(M, N)).passed


def test_complex_backend():
    rep = in_backend(named_rep(2, 2, "vector"), COMPLEX, seed=3)
    assert rep.backend == COMPLEX
    assert check_rtt(rep).passed
    assert check_dj_relations(rep).passed
    assert check_weights(rep).passed
    with pytest.raises(RepError):
        rep.specialize({"r": 1, "s": 2, "x": 1})


def test_complex_backend_detects_broken_rep():
    rep = in_backend(vector_rep(1, 1), COMPLEX, seed=1)
    rep.s_mats[(1, 2)] = rep.s_mats[(1, 2)].scale(2.0)
    rep._cache.clear()
    assert not check_rtt(rep).passed


def test_broken_exact_rep_fails_rtt():
    good = vector_rep(1, 1)
    bad_s = dict(good.s_mats)
    bad_s[(1, 2)] = bad_s[(1, 2)].scale(R)
    bad = WeightRep(1, 1, good.space, good.weights, bad_s, good.t_mats, "broken")
    assert not check_rtt(bad).passed


def test_named_rep_errors():
    with pytest.raises(RepError):
        named_rep(1, 1, "adjoint")
    with pytest.raises(RepError):
        in_backend(vector_rep(1, 1), "quaternion")
