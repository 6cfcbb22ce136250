import pytest

from qsuper.perk_schultz import rmatrix_swapped_inverse
from qsuper.reps import COMPLEX, in_backend, named_rep, tensor_reps, vector_rep
from qsuper.scalars import ONE, R, S
from qsuper.superlinalg import GradedMatrix, koszul_flip
from qsuper.universal_r import (
    RMatrixError,
    check_vector_r_matrix,
    check_rplus_forms,
    check_braiding,
    nilpotency,
    numeric_ybe_crosscheck,
    r0_eval,
    r_eval,
)

ALL_SIZES = [(m, n) for m in range(5) for n in range(5) if 1 <= m + n <= 4]


def test_r0_on_vector_11():
    V = vector_rep(1, 1)
    r0 = r0_eval(V, V)
    assert r0 == GradedMatrix.diagonal(r0.codomain, [S, ONE, R * S, R])


def test_r0_purely_even_line():
    V = vector_rep(1, 0)
    assert r0_eval(V, V).entries == {(0, 0): S}


def test_total_r_columns_11():
    # by hand: a12 = r^-1(s-r)E12 and b21 = (r-s)s^-1 E21 on V; a12 (x) b21 sends v2v1 to
    # -(a12 v2)(x)(b21 v1) = (r-s)^2/(rs) v1v2, and R+ = 1 - (s^-1 - r^-1)^-1 a12 (x) b21
    V = vector_rep(1, 1)
    ev = r_eval(V, V)
    assert ev.rplus.entries == {(0, 0): ONE, (1, 1): ONE, (2, 2): ONE, (3, 3): ONE, (1, 2): S - R}
    assert ev.total.entries == {(0, 0): S, (1, 1): ONE, (2, 2): R * S, (3, 3): R, (1, 2): S - R}
    c = koszul_flip(V.space, V.space)
    assert ev.total == c @ rmatrix_swapped_inverse(1, 1) @ c


@pytest.mark.parametrize("M,N", ALL_SIZES)
def test_vector_r_matrix_all_sizes(M, N):
    report = check_vector_r_matrix(M, N)
    assert report.passed, report.witness


def test_single_line_has_trivial_rplus():
    for M, N in ((1, 0), (0, 1)):
        V = vector_rep(M, N)
        ev = r_eval(V, V)
        assert ev.rplus == GradedMatrix.identity(ev.rplus.codomain)


@pytest.mark.parametrize("M,N,left,right", [(1, 1, "vector", "vector"), (2, 1, "vector", "vector^2"),
                                            (1, 1, "vector^2", "vector^2"), (2, 2, "vector", "vector")])
def test_rplus_forms(M, N, left, right):
    report = check_rplus_forms(named_rep(M, N, left), named_rep(M, N, right))
    assert report.passed, report.witness


def test_nilpotency_of_root_vectors():
    # smallest n with a^n = 0: odd root vectors square to zero even on tensor powers
    for name in ("vector^2", "vector^3"):
        V = named_rep(1, 1, name)
        assert nilpotency(V, V, 1, 2) == 2
    # even root on V (x) V of gl(2): a12^2 sends v2v2 to a multiple of v1v1
    W = named_rep(2, 0, "vector^2")
    assert nilpotency(W, W, 1, 2) == 3


@pytest.mark.parametrize("M,N", [(1, 1), (2, 2), (2, 1), (0, 2)])
def test_braiding_vector(M, N):
    V = vector_rep(M, N)
    report = check_braiding(V, V, V)
    assert report.passed, report.witness


def test_braiding_mixed_reps():
    V = vector_rep(1, 1)
    V2 = named_rep(1, 1, "vector^2")
    report = check_braiding(V, V2, V)
    assert report.passed, report.witness


def test_braiding_complex_backend():
    V = in_backend(vector_rep(2, 1), COMPLEX, seed=4)
    assert check_braiding(V, V, V).passed
    assert check_rplus_forms(V, V).passed


@pytest.mark.parametrize("M,N", [(1, 1), (2, 2), (3, 1)])
def test_numeric_crosscheck(M, N):
    assert numeric_ybe_crosscheck(M, N, seed=2).passed


@pytest.mark.parametrize("M,N", [(1, 1), (2, 1)])
def test_r_preserves_total_weight(M, N):
    V2 = named_rep(M, N, "vector^2")
    V = vector_rep(M, N)
    ev = r_eval(V2, V)
    AB = tensor_reps(V2, V)
    for p, q in ev.total.entries:
        assert AB.weights[p] == AB.weights[q]


def test_rplus_fixes_highest_vector():
    V = vector_rep(2, 2)
    ev = r_eval(V, V)
    # v1 (x) v1 is killed by every a_ij on the first leg and every b_ji on the second
    col = {p: v for (p, q), v in ev.rplus.entries.items() if q == 0}
    assert col == {0: ONE}


def test_mismatched_reps_rejected():
    with pytest.raises(RMatrixError):
        r_eval(vector_rep(1, 1), vector_rep(2, 0))
