import pytest

from qsuper.perk_schultz import (
    PerkSchultzData,
    check_braid,
    check_construction,
    check_qybe,
    check_transpose_identity,
    projectors,
    r_prime,
    rhat,
    rmatrix_explicit,
    rmatrix_inverse,
    substitute,
)
from qsuper.scalars import ONE, R, S
from qsuper.superlinalg import GradedMatrix, SuperSpace, embed_legs, super_transpose_tensor, tensor_spaces

SIZES = [(m, n) for m in range(5) for n in range(5) if 1 <= m + n <= 4]


def vec(n, *labels):
    k = 0
    for a in labels:
        k = k * n + (a - 1)
    return k


def test_projectors_trivial_even_line():
    sym, alt = projectors(1, 0)
    assert sym == GradedMatrix.identity(sym.codomain)
    assert alt.is_zero()


def test_projector_images_for_11():
    sym, alt = projectors(1, 1)
    v = {vec(2, 1, 2): ONE, vec(2, 2, 1): S}
    assert sym.apply(v) == v
    assert alt.apply({vec(2, 2, 2): ONE}) == {vec(2, 2, 2): ONE}


@pytest.mark.parametrize("M,N", SIZES)
def test_projector_algebra(M, N):
    sym, alt = projectors(M, N)
    ident = GradedMatrix.identity(sym.codomain)
    assert sym + alt == ident
    assert sym @ sym == sym
    assert alt @ alt == alt
    assert (sym @ alt).is_zero()
    h = rhat(M, N)
    assert h @ sym == sym.scale(R)
    assert h @ alt == alt.scale(-S)
    # (SymProj - r s^-1 AltProj) Rhat = r
    assert (sym - alt.scale(R / S)) @ h == ident.scale(R)


def test_rmatrix_11_columns():
    Rm = rmatrix_explicit(1, 1)
    assert Rm.apply({vec(2, 1, 2): ONE}) == {vec(2, 1, 2): R * S, vec(2, 2, 1): R - S}
    assert Rm.apply({vec(2, 2, 2): ONE}) == {vec(2, 2, 2): S}
    assert Rm.apply({vec(2, 1, 1): ONE}) == {vec(2, 1, 1): R}
    assert Rm.apply({vec(2, 2, 1): ONE}) == {vec(2, 2, 1): ONE}


@pytest.mark.parametrize("M,N", SIZES)
def test_construction_all_sizes(M, N):
    assert check_construction(M, N).passed


def test_r_prime_11_columns():
    # R on span(v1v2, v2v1) is [[rs, 0], [r - s, 1]]; invert by hand, then conjugate by the flip
    Rp = r_prime(1, 1)
    rs_inv = (R * S).inverse()
    assert Rp.apply({vec(2, 2, 1): ONE}) == {vec(2, 2, 1): rs_inv, vec(2, 1, 2): -rs_inv * (R - S)}
    assert Rp.apply({vec(2, 1, 2): ONE}) == {vec(2, 1, 2): ONE}


def test_r_inverse_22():
    Rm = rmatrix_explicit(2, 2)
    assert Rm @ rmatrix_inverse(2, 2) == GradedMatrix.identity(Rm.codomain)


@pytest.mark.parametrize("M,N", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 0), (0, 3)])
def test_qybe(M, N):
    report = check_qybe(M, N)
    assert report.passed, report.witness


@pytest.mark.parametrize("M,N", [(1, 1), (2, 2), (3, 1)])
def test_braid(M, N):
    assert check_braid(M, N).passed


def test_braid_worked_vector():
    V = SuperSpace.standard(1, 1)
    h = rhat(1, 1)
    h12 = embed_legs(h, (1, 2), [V] * 3)
    h23 = embed_legs(h, (2, 3), [V] * 3)
    out = (h12 @ h23 @ h12).apply({vec(2, 2, 1, 2): ONE})
    assert out == {vec(2, 1, 2, 2): -S * (R - S), vec(2, 2, 1, 2): -R * S * S}


@pytest.mark.parametrize("M,N", [(1, 1), (2, 2), (2, 1), (0, 2)])
def test_transpose_identity(M, N):
    assert check_transpose_identity(M, N).passed


def test_transpose_identity_diagonal_spot():
    V = SuperSpace.standard(1, 1)
    lhs = super_transpose_tensor(rmatrix_inverse(1, 1), V)
    assert lhs.apply({0: ONE}) == {0: R.inverse()}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_purely_odd_equals_swapped_even(n):
    odd = rmatrix_explicit(0, n)
    even = substitute(rmatrix_explicit(n, 0), {"r": (0, 1, 0), "s": (1, 0, 0)})
    assert odd.entries == even.entries


def test_data_bundle():
    d = PerkSchultzData.build(2, 1)
    V = d.space
    c_r = d.r_mat
    assert d.determinant() != 0
    assert c_r.codomain == tensor_spaces(V, V)
    assert d.r_prime == r_prime(2, 1)
