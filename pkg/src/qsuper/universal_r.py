"""The universal R-matrix evaluated on pairs of weight representations.

R = R0 R+, where R0 acts diagonally through the weights and R+ is computed
twice: as the descending product of the root factors R_ij and as the sum
over PBW indices with closed-form pairing denominators.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .pbw import PBWIndex, closed_pairing, monomial_word, root_pairs
from .perk_schultz import index_parity, rmatrix_swapped_inverse
from .report import CheckReport, ReportBuilder
from .reps import EXACT, WeightRep, random_point, tensor_reps, vector_rep
from .scalars import R, S, quantum_factorial
from .superlinalg import (
    GradedMatrix,
    determinant,
    embed_legs,
    graded_kron,
    koszul_flip,
    sum_matrices,
    tensor_spaces,
)


class RMatrixError(ArithmeticError):
    pass


@dataclass
class RMatrixEval:
    r0: GradedMatrix
    rplus: GradedMatrix
    total: GradedMatrix
    truncation: dict = field(default_factory=dict)
    sum_terms: int = 0


def r0_eval(A: WeightRep, B: WeightRep) -> GradedMatrix:
    """v (x) w -> s^{sum_{i<=M} l_i m_i} r^{sum_{j>M} l_j m_j} (rs)^{sum_{k>l} l_k m_l} v (x) w."""
    M, n = A.M, A.n
    space = tensor_spaces(A.space, B.space)
    entries = {}
    for p, lam in enumerate(A.weights):
        for q, mu in enumerate(B.weights):
            es = sum(lam[i] * mu[i] for i in range(M))
            er = sum(lam[j] * mu[j] for j in range(M, n))
            ers = sum(lam[k] * mu[l] for k in range(n) for l in range(k))
            val = R ** (er + ers) * S ** (es + ers)
            entries[(p * B.dim + q, p * B.dim + q)] = A.scalar(val)
    return GradedMatrix(space, space, entries)


def root_vectors(A: WeightRep, B: WeightRep, i: int, j: int) -> tuple[GradedMatrix, GradedMatrix]:
    """Action of a_ij = s_ii^-1 s_ij on A and b_ji = t_ji t_ii^-1 on B."""
    a = A.word(monomial_word(PBWIndex.from_dict({(i, j): 1}), "upper", A.M))
    b = B.word(monomial_word(PBWIndex.from_dict({(i, j): 1}), "lower", B.M))
    return a, b


def nilpotency(A: WeightRep, B: WeightRep, i: int, j: int) -> int:
    """Smallest n with a_ij^n = 0 on A or b_ji^n = 0 on B."""
    a, b = root_vectors(A, B, i, j)
    cap = A.dim * B.dim
    pa, pb = A.identity(), B.identity()
    for n in range(cap + 1):
        if pa.is_zero() or pb.is_zero():
            return n
        pa, pb = pa @ a, pb @ b
    raise RMatrixError(f"root vector ({i},{j}) is not nilpotent within {cap} steps")


def rij_eval(A: WeightRep, B: WeightRep, i: int, j: int) -> tuple[GradedMatrix, int]:
    """The factor R_ij on A (x) B and the truncation degree used.

    Even roots in the first block use (n)!_{rs^-1} (s^-1 - r^-1)^n, even roots
    in the second block (n)!_{sr^-1} (r^-1 - s^-1)^n, and odd roots give
    1 - a (x) b / (s^-1 - r^-1).
    """
    if not i < j:
        raise ValueError("rij_eval needs i < j")
    M = A.M
    a, b = root_vectors(A, B, i, j)
    space = tensor_spaces(A.space, B.space)
    stop = nilpotency(A, B, i, j)
    diff = S.inverse() - R.inverse()
    pi, pj = index_parity(M, i), index_parity(M, j)
    ident = GradedMatrix.identity(space, A.one())
    if pi != pj:
        if stop <= 1:
            return ident, stop
        return ident - graded_kron(a, b).scale(A.scalar(diff.inverse())), stop
    if pi == 0:
        q, base = R * S.inverse(), diff
    else:
        q, base = S * R.inverse(), -diff
    terms = [ident]
    an, bn = A.identity(), B.identity()
    for n in range(1, stop):
        an, bn = an @ a, bn @ b
        denom = quantum_factorial(n, q) * base ** n
        terms.append(graded_kron(an, bn).scale(A.scalar(denom.inverse())))
    return sum_matrices(terms, space), stop


def rplus_product(A: WeightRep, B: WeightRep) -> tuple[GradedMatrix, dict]:
    """Descending product of R_ij: the factor with the largest root pair is leftmost."""
    space = tensor_spaces(A.space, B.space)
    out = GradedMatrix.identity(space, A.one())
    log = {}
    for root in sorted(root_pairs(A.M, A.N), reverse=True):
        factor, stop = rij_eval(A, B, root.i, root.j)
        log[f"{root.i},{root.j}"] = stop
        out = out @ factor
    return out, log


def rplus_sum(A: WeightRep, B: WeightRep, bounds: dict | None = None) -> tuple[GradedMatrix, int]:
    """sum_f (-1)^{|a[f]|} a[f] (x) b[f] / phi(a[f], b[f]) over f with nonvanishing factors."""
    M, N = A.M, A.N
    roots = root_pairs(M, N)
    if bounds is None:
        bounds = {r: nilpotency(A, B, r.i, r.j) for r in roots}
    ranges = []
    for r in roots:
        top = bounds[r] - 1
        if r.parity(M):
            top = min(top, 1)
        ranges.append(range(max(top, 0) + 1))
    space = tensor_spaces(A.space, B.space)
    terms = []
    for vec in itertools.product(*ranges):
        f = PBWIndex.from_dict(dict(zip(roots, vec)))
        af = A.word(monomial_word(f, "upper", M))
        if af.is_zero():
            continue
        bf = B.word(monomial_word(f, "lower", M))
        if bf.is_zero():
            continue
        coeff = closed_pairing(f, f, M, N).inverse()
        if f.odd_count(M) % 2:
            coeff = -coeff
        terms.append(graded_kron(af, bf).scale(A.scalar(coeff)))
    return sum_matrices(terms, space), len(terms)


def r_eval(A: WeightRep, B: WeightRep) -> RMatrixEval:
    """R = R0 R+ on A (x) B; raises RMatrixError if the two forms of R+ differ."""
    if (A.M, A.N) != (B.M, B.N) or A.backend != B.backend:
        raise RMatrixError("representations must share (M, N) and backend")
    prod, log = rplus_product(A, B)
    bounds = {r: log[f"{r.i},{r.j}"] for r in root_pairs(A.M, A.N)}
    summed, nterms = rplus_sum(A, B, bounds)
    diff = prod - summed
    if A.backend == EXACT:
        bad = diff.nnz()
    else:
        bad = sum(1 for v in diff.entries.values() if abs(v) > 1e-9)
    if bad:
        raise RMatrixError(f"product and sum forms of R+ differ in {bad} entries")
    r0 = r0_eval(A, B)
    return RMatrixEval(r0, prod, r0 @ prod, log, nterms)


def check_rplus_forms(A: WeightRep, B: WeightRep, tol: float = 1e-9) -> CheckReport:
    """Product form and PBW-sum form of R+ agree on A (x) B."""
    rep = ReportBuilder("rplus-forms", tol=None if A.backend == EXACT else tol, M=A.M, N=A.N,
                        reps=f"{A.label},{B.label}", backend=A.backend)
    prod, log = rplus_product(A, B)
    bounds = {r: log[f"{r.i},{r.j}"] for r in root_pairs(A.M, A.N)}
    summed, nterms = rplus_sum(A, B, bounds)
    rep.matrix_equal("product-sum", prod, summed)
    rep.details["truncation"] = log
    rep.details["sum_terms"] = nterms
    return rep.build()


def _generator_pairs(AB: WeightRep, BA: WeightRep):
    for key in AB.s_mats:
        yield f"s{key[0]}{key[1]}", AB.s_mats[key], BA.s_mats[key]
    for key in AB.t_mats:
        yield f"t{key[0]}{key[1]}", AB.t_mats[key], BA.t_mats[key]


def _height_violations(A: WeightRep, B: WeightRep, rplus: GradedMatrix) -> int:
    """Entries of R+ - 1 that do not raise the first-leg weight by a nonzero element of Q+."""
    bad = 0
    n = A.n
    for (p, q), v in rplus.entries.items():
        if p == q:
            continue
        lam_out, lam_in = A.weights[p // B.dim], A.weights[q // B.dim]
        shift = [x - y for x, y in zip(lam_out, lam_in)]
        partial = list(itertools.accumulate(shift))
        if not (all(x >= 0 for x in partial[: n - 1]) and partial[-1] == 0 and any(shift)):
            bad += 1
    for k in range(rplus.shape[0]):
        if rplus[(k, k)] != A.one() and not (A.backend != EXACT and abs(rplus[(k, k)] - 1) < 1e-12):
            bad += 1
    return bad


def check_braiding(A: WeightRep, B: WeightRep, C: WeightRep, tol: float = 1e-9) -> CheckReport:
    """(a) Yang-Baxter on A (x) B (x) C; (b) c o R intertwines; (c) c o R is invertible."""
    labels = ",".join(x.label for x in (A, B, C))
    rep = ReportBuilder("braiding", tol=None if A.backend == EXACT else tol, M=A.M, N=A.N, reps=labels,
                        backend=A.backend)
    spaces = [A.space, B.space, C.space]
    rab, rac, rbc = r_eval(A, B), r_eval(A, C), r_eval(B, C)
    R12 = embed_legs(rab.total, (1, 2), spaces)
    R13 = embed_legs(rac.total, (1, 3), spaces)
    R23 = embed_legs(rbc.total, (2, 3), spaces)
    rep.matrix_equal("(a) R12R13R23-R23R13R12", R12 @ R13 @ R23, R23 @ R13 @ R12)
    for X, Y, ev in ((A, B, rab), (A, C, rac), (B, C, rbc)):
        tag = f"{X.label}|{Y.label}"
        flip = koszul_flip(X.space, Y.space)
        if X.backend != EXACT:
            flip = X.constant_matrix(flip)
        cR = flip @ ev.total
        XY, YX = tensor_reps(X, Y), tensor_reps(Y, X)
        for name, g_xy, g_yx in _generator_pairs(XY, YX):
            rep.matrix_equal(f"(b) {tag} {name}", cR @ g_xy, g_yx @ cR)
        # R0 is diagonal with monomial entries; R+ is unipotent for the Q+-height order
        r0_ok = len(ev.r0.entries) == ev.r0.shape[0]
        rep.expect(f"(c) {tag} R0 invertible", r0_ok, "zero diagonal entry in R0")
        viol = _height_violations(X, Y, ev.rplus)
        rep.expect(f"(c) {tag} R+ unipotent", viol == 0, f"{viol} entries break the height filtration",
                   value=viol)
        if X.backend == EXACT and X.dim * Y.dim <= 16:
            det = determinant(cR)
            rep.expect(f"(c) {tag} det", not det.is_zero(), "determinant vanishes")
    rep.details["truncation"] = {"AB": rab.truncation, "AC": rac.truncation, "BC": rbc.truncation}
    return rep.build()


def check_vector_r_matrix(M: int, N: int) -> CheckReport:
    """R on vector (x) vector equals c R^-1_{s^-1, r^-1} c."""
    rep = ReportBuilder("vector-r-matrix", M=M, N=N)
    V = vector_rep(M, N)
    ev = r_eval(V, V)
    c = koszul_flip(V.space, V.space)
    expected = c @ rmatrix_swapped_inverse(M, N) @ c
    rep.matrix_equal("R_VV - cR'c", ev.total, expected)
    rep.details["truncation"] = ev.truncation
    rep.details["sum_terms"] = ev.sum_terms
    return rep.build()


def numeric_ybe_crosscheck(M: int, N: int, seed: int = 0, tol: float = 1e-9) -> CheckReport:
    """Yang-Baxter for R_VV at a random complex point with |r/s| off the unit circle."""
    rep = ReportBuilder("ybe-numeric", tol=tol, M=M, N=N, seed=seed)
    point = random_point(seed)
    k = 0
    while abs(abs(point["r"] / point["s"]) - 1) < 0.05:
        k += 1
        point = random_point(seed + 1000 * k)
    Vc = vector_rep(M, N).specialize(point)
    ev = r_eval(Vc, Vc)
    spaces = [Vc.space] * 3
    R12 = embed_legs(ev.total, (1, 2), spaces)
    R13 = embed_legs(ev.total, (1, 3), spaces)
    R23 = embed_legs(ev.total, (2, 3), spaces)
    lhs = (R12 @ R13 @ R23).to_dense()
    rhs = (R23 @ R13 @ R12).to_dense()
    err = float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0
    rep.expect("max|R12R13R23-R23R13R12|", err <= tol, f"residual {err:.3e}", value=err)
    exact = vector_rep(M, N)
    c = koszul_flip(exact.space, exact.space)
    expected = (c @ rmatrix_swapped_inverse(M, N) @ c).map(lambda v: complex(v.evaluate(point))).to_dense()
    err2 = float(np.max(np.abs(ev.total.to_dense() - expected)))
    rep.expect("max|R_VV - cR'c|", err2 <= tol, f"residual {err2:.3e}", value=err2)
    rep.details["point"] = {k_: [v.real, v.imag] for k_, v in point.items() if k_ != "x"}
    return rep.build()
