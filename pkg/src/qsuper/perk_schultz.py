"""Two-parameter Perk-Schultz matrices on C^{M|N} and their braid identities."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .report import CheckReport, ReportBuilder
from .scalars import ONE, R, S, RationalFunction
from .superlinalg import (
    GradedMatrix,
    SuperSpace,
    determinant,
    embed_legs,
    from_tensor_coefficients,
    graded_kron,
    inverse,
    koszul_flip,
    super_transpose_tensor,
    tensor_spaces,
)

# (r, s) -> (s^-1, r^-1) as a monomial substitution
INVERSE_SWAP = {"r": (0, -1, 0), "s": (-1, 0, 0)}


def index_parity(M: int, i: int) -> int:
    """Parity of the 1-based basis index i of C^{M|N}."""
    return 0 if i <= M else 1


def validate_size(M: int, N: int) -> None:
    if M < 0 or N < 0 or M + N < 1:
        raise ValueError(f"invalid size (M, N) = ({M}, {N})")


@lru_cache(maxsize=None)
def projectors(M: int, N: int) -> tuple[GradedMatrix, GradedMatrix]:
    """(SymProj, AltProj): the projections of V (x) V onto S^2V and wedge^2V.

    Built from the spanning vectors: B maps the standard basis to the
    concatenated spanning sets, and SymProj = B diag(1..1, 0..0) B^-1.
    """
    validate_size(M, N)
    V = SuperSpace.standard(M, N)
    n = V.dim
    VV = tensor_spaces(V, V)
    sym_vecs, alt_vecs = [], []
    for i in range(n):
        (sym_vecs if i < M else alt_vecs).append({i * n + i: ONE})
    for j in range(n):
        for k in range(j + 1, n):
            eps = -1 if V.parities[j] * V.parities[k] else 1
            sym_vecs.append({j * n + k: ONE, k * n + j: S * eps})
            alt_vecs.append({j * n + k: ONE, k * n + j: -R * eps})
    basis = sym_vecs + alt_vecs
    B = GradedMatrix(VV, VV, {(row, col): v for col, vec in enumerate(basis) for row, v in vec.items()})
    Binv = inverse(B)
    keep = GradedMatrix(VV, VV, {(c, c): ONE for c in range(len(sym_vecs))})
    sym = B @ keep @ Binv
    alt = GradedMatrix.identity(VV) - sym
    return sym, alt


@lru_cache(maxsize=None)
def rhat(M: int, N: int) -> GradedMatrix:
    sym, alt = projectors(M, N)
    return sym.scale(R) - alt.scale(S)


@lru_cache(maxsize=None)
def rmatrix_from_projectors(M: int, N: int) -> GradedMatrix:
    V = SuperSpace.standard(M, N)
    return koszul_flip(V, V) @ rhat(M, N)


def rmatrix_coefficients(M: int, N: int) -> dict:
    """Coefficients of E_ab (x) E_cd (0-based) in R, read off the explicit four-term formula."""
    n = M + N
    coeffs = {}
    for i in range(n):
        coeffs[((i, i), (i, i))] = R if i < M else S
        for j in range(n):
            if i > j:
                coeffs[((i, i), (j, j))] = ONE
            elif i < j:
                coeffs[((i, i), (j, j))] = R * S
                sign = -1 if i >= M else 1
                coeffs[((j, i), (i, j))] = (R - S) * sign
    return coeffs


@lru_cache(maxsize=None)
def rmatrix_explicit(M: int, N: int) -> GradedMatrix:
    validate_size(M, N)
    V = SuperSpace.standard(M, N)
    return from_tensor_coefficients(rmatrix_coefficients(M, N), V)


@lru_cache(maxsize=None)
def rmatrix_inverse(M: int, N: int) -> GradedMatrix:
    return inverse(rmatrix_explicit(M, N))


@lru_cache(maxsize=None)
def r_prime(M: int, N: int) -> GradedMatrix:
    """R' = c R^-1 c."""
    V = SuperSpace.standard(M, N)
    c = koszul_flip(V, V)
    return c @ rmatrix_inverse(M, N) @ c


def substitute(mat: GradedMatrix, images: dict) -> GradedMatrix:
    return mat.map(lambda v: v.substitute_monomial(images))


@lru_cache(maxsize=None)
def rmatrix_swapped_inverse(M: int, N: int) -> GradedMatrix:
    """R^-1 at parameters (s^-1, r^-1)."""
    return inverse(substitute(rmatrix_explicit(M, N), INVERSE_SWAP))


@dataclass(frozen=True)
class PerkSchultzData:
    M: int
    N: int
    rhat: GradedMatrix
    r_mat: GradedMatrix
    r_prime: GradedMatrix

    @classmethod
    def build(cls, M: int, N: int) -> "PerkSchultzData":
        return cls(M, N, rhat(M, N), rmatrix_explicit(M, N), r_prime(M, N))

    @property
    def space(self) -> SuperSpace:
        return SuperSpace.standard(self.M, self.N)

    def determinant(self) -> RationalFunction:
        return determinant(self.r_mat)


def triple_legs(t: GradedMatrix, V: SuperSpace):
    spaces = [V, V, V]
    return embed_legs(t, (1, 2), spaces), embed_legs(t, (1, 3), spaces), embed_legs(t, (2, 3), spaces)


def check_qybe(M: int, N: int) -> CheckReport:
    """R12 R13 R23 = R23 R13 R12 on V^(x)3, exactly."""
    rep = ReportBuilder("qybe", M=M, N=N)
    V = SuperSpace.standard(M, N)
    r12, r13, r23 = triple_legs(rmatrix_explicit(M, N), V)
    lhs = r12 @ r13 @ r23
    rhs = r23 @ r13 @ r12
    rep.matrix_equal("R12R13R23-R23R13R12", lhs, rhs)
    rep.details["nnz"] = lhs.nnz()
    return rep.build()


def check_braid(M: int, N: int) -> CheckReport:
    rep = ReportBuilder("braid", M=M, N=N)
    V = SuperSpace.standard(M, N)
    I = GradedMatrix.identity(V)
    h = rhat(M, N)
    h12 = graded_kron(h, I)
    h23 = graded_kron(I, h)
    rep.matrix_equal("Rh12Rh23Rh12-Rh23Rh12Rh23", h12 @ h23 @ h12, h23 @ h12 @ h23)
    return rep.build()


def check_construction(M: int, N: int) -> CheckReport:
    """Explicit four-term R equals c o (r SymProj - s AltProj)."""
    rep = ReportBuilder("rmatrix-construction", M=M, N=N)
    rep.matrix_equal("explicit-vs-projectors", rmatrix_explicit(M, N), rmatrix_from_projectors(M, N))
    return rep.build()


def check_transpose_identity(M: int, N: int) -> CheckReport:
    """tau^(x)2(R^-1) = r^-1 s^-1 c R^-1_{s^-1,r^-1} c."""
    rep = ReportBuilder("transpose-identity", M=M, N=N)
    V = SuperSpace.standard(M, N)
    c = koszul_flip(V, V)
    lhs = super_transpose_tensor(rmatrix_inverse(M, N), V)
    rhs = (c @ rmatrix_swapped_inverse(M, N) @ c).scale((R * S).inverse())
    rep.matrix_equal("transpose-identity", lhs, rhs)
    return rep.build()
