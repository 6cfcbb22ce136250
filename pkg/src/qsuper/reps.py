"""Finite-dimensional weight representations and relation checkers.

A representation is given by the matrices of the RTT generators s_ij
(i <= j) and t_ji (j >= i); Drinfeld-Jimbo data is always derived from
them.  Every checker works on the exact backend (RationalFunction entries,
zero residual required) and on the complex backend (entries evaluated at a
sample point, residual compared against a tolerance).
"""
from __future__ import annotations

import random
from functools import lru_cache

from .pairing import C_MATRIX, D_MATRIX, GenLetter, HopfPairing, parse_word, s, t
from .perk_schultz import index_parity, r_prime, rmatrix_explicit, validate_size
from .report import CheckReport, ReportBuilder
from .scalars import ONE, R, S, RationalFunction
from .superlinalg import (
    GradedMatrix,
    SuperSpace,
    decompose_right,
    diag_inverse,
    embed_legs,
    graded_kron,
    inverse,
    sum_matrices,
    tensor_coefficients,
    tensor_spaces,
)

EXACT, COMPLEX = "exact", "complex"


class RepError(ValueError):
    pass


def random_point(seed: int = 0) -> dict:
    """A generic complex point for (r, s, x), moduli in [0.6, 1.6]."""
    import cmath

    rng = random.Random(seed)

    def draw():
        return rng.uniform(0.6, 1.6) * cmath.exp(2j * cmath.pi * rng.random())

    return {"r": draw(), "s": draw(), "x": draw()}


class WeightRep:
    """Generator matrices on a super vector space with a weight per basis vector.

    ``s_mats[(i, j)]`` is the matrix of s_ij and ``t_mats[(j, i)]`` that of
    t_ji (1-based, i <= j).  Treated as immutable after construction.
    """

    def __init__(self, M, N, space, weights, s_mats, t_mats, label="", backend=EXACT, point=None):
        self.M, self.N = M, N
        self.space: SuperSpace = space
        self.weights = tuple(tuple(w) for w in weights)
        self.s_mats: dict = dict(s_mats)
        self.t_mats: dict = dict(t_mats)
        self.label = label
        self.backend = backend
        self.point = point
        self._cache: dict = {}
        if len(self.weights) != space.dim:
            raise RepError("one weight per basis vector is required")

    @property
    def n(self) -> int:
        return self.M + self.N

    @property
    def dim(self) -> int:
        return self.space.dim

    def scalar(self, value):
        """Bring an exact constant into this backend."""
        value = RationalFunction.coerce(value)
        if self.backend == EXACT:
            return value
        return complex(value.evaluate(self.point))

    def one(self):
        return ONE if self.backend == EXACT else 1.0 + 0j

    def identity(self) -> GradedMatrix:
        return GradedMatrix.identity(self.space, self.one())

    def zero(self) -> GradedMatrix:
        return GradedMatrix.zero(self.space)

    def letter(self, x: GenLetter) -> GradedMatrix:
        key = x
        if key in self._cache:
            return self._cache[key]
        if x.symbol == "s":
            base = self.s_mats[(x.first, x.second)]
        elif x.symbol == "t":
            base = self.t_mats[(x.first, x.second)]
        else:
            raise RepError(f"{x} is not an RTT letter")
        mat = diag_inverse(base) if x.exponent == -1 else base
        self._cache[key] = mat
        return mat

    def word(self, w) -> GradedMatrix:
        if isinstance(w, str):
            w = parse_word(w)
        out = self.identity()
        for x in w:
            out = out @ self.letter(x)
        return out

    def specialize(self, point: dict) -> "WeightRep":
        """The complex-backend copy at ``point``."""
        if self.backend != EXACT:
            raise RepError("only exact representations can be specialized")

        def ev(m):
            return m.map(lambda v: complex(v.evaluate(point)))

        return WeightRep(self.M, self.N, self.space, self.weights,
                         {k: ev(m) for k, m in self.s_mats.items()},
                         {k: ev(m) for k, m in self.t_mats.items()},
                         self.label, COMPLEX, dict(point))

    def constant_matrix(self, mat: GradedMatrix) -> GradedMatrix:
        """An exact auxiliary matrix (e.g. the R-matrix) in this backend."""
        if self.backend == EXACT:
            return mat
        return mat.map(lambda v: complex(v.evaluate(self.point)))

    def __repr__(self):
        return f"WeightRep({self.label or '?'}, M={self.M}, N={self.N}, dim={self.dim}, {self.backend})"


# -- constructions -----------------------------------------------------------

@lru_cache(maxsize=None)
def vector_rep(M: int, N: int) -> WeightRep:
    """The vector representation on C^{M|N}.

    rho(s_cd) is the E_cd-component of (super transpose (x) 1)(R) and
    rho(t_cd) that of rs (super transpose (x) 1)(c R^-1 c).
    """
    validate_size(M, N)
    V = SuperSpace.standard(M, N)
    n = M + N
    par = V.parities

    def extract(coeffs, scale):
        mats: dict = {}
        for ((a, b), (c, d)), v in coeffs.items():
            eps = (par[a] + par[a] * par[b]) % 2
            val = -v * scale if eps else v * scale
            mats.setdefault((c + 1, d + 1), {})[(b, a)] = val
        return {k: GradedMatrix(V, V, e) for k, e in mats.items()}

    s_parts = extract(tensor_coefficients(rmatrix_explicit(M, N), V), ONE)
    t_parts = extract(tensor_coefficients(r_prime(M, N), V), R * S)
    s_mats, t_mats = {}, {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i <= j:
                s_mats[(i, j)] = s_parts.get((i, j), GradedMatrix.zero(V))
                t_mats[(j, i)] = t_parts.get((j, i), GradedMatrix.zero(V))
            elif (i, j) in s_parts or (j, i) in t_parts:
                raise RepError("vector representation has an entry outside the triangular range")
    weights = [tuple(1 if k == a else 0 for k in range(n)) for a in range(n)]
    return WeightRep(M, N, V, weights, s_mats, t_mats, "vector")


def tensor_reps(A: WeightRep, B: WeightRep) -> WeightRep:
    """A (x) B through the coproduct Delta(s_ij) = sum_k s_ik (x) s_kj."""
    if (A.M, A.N) != (B.M, B.N) or A.backend != B.backend:
        raise RepError("tensor factors must share (M, N) and backend")
    n = A.n
    space = tensor_spaces(A.space, B.space)
    s_mats, t_mats = {}, {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            s_mats[(i, j)] = sum_matrices(
                (graded_kron(A.s_mats[(i, k)], B.s_mats[(k, j)]) for k in range(i, j + 1)), space)
            t_mats[(j, i)] = sum_matrices(
                (graded_kron(A.t_mats[(j, k)], B.t_mats[(k, i)]) for k in range(i, j + 1)), space)
    weights = [tuple(x + y for x, y in zip(wa, wb)) for wa in A.weights for wb in B.weights]
    label = f"({A.label})(x)({B.label})"
    return WeightRep(A.M, A.N, space, weights, s_mats, t_mats, label, A.backend, A.point)


def tensor_power(rep: WeightRep, k: int) -> WeightRep:
    out = rep
    for _ in range(k - 1):
        out = tensor_reps(out, rep)
    return out


def named_rep(M: int, N: int, name: str) -> WeightRep:
    """'vector', 'vector^2', 'vector^3'."""
    base, _, power = name.partition("^")
    if base != "vector":
        raise RepError(f"unknown representation {name!r}")
    k = int(power) if power else 1
    if k < 1:
        raise RepError("tensor power must be positive")
    if k == 1:
        return vector_rep(M, N)
    rep = tensor_power(vector_rep(M, N), k)
    rep.label = name
    return rep


def in_backend(rep: WeightRep, backend: str, seed: int = 0) -> WeightRep:
    if backend == EXACT:
        return rep
    if backend == COMPLEX:
        return rep.specialize(random_point(seed))
    raise RepError(f"unknown backend {backend!r}")


# -- operators on W (x) V ------------------------------------------------------

def _tol(rep: WeightRep, tol: float):
    return None if rep.backend == EXACT else tol


def generating_operator(rep: WeightRep, which: str) -> GradedMatrix:
    """S = sum rho(s_ij) (x) E_ij or T = sum rho(t_ji) (x) E_ji on W (x) V."""
    V = SuperSpace.standard(rep.M, rep.N)
    mats = rep.s_mats if which == "S" else rep.t_mats
    one = rep.one()
    return sum_matrices(
        (graded_kron(m, GradedMatrix.unit(V, a - 1, b - 1, one)) for (a, b), m in mats.items()),
        tensor_spaces(rep.space, V))


def check_rtt(rep: WeightRep, tol: float = 1e-9) -> CheckReport:
    """The three RTT relations with R and the three with R' = c R^-1 c, on W (x) V (x) V."""
    b = ReportBuilder("rtt", tol=_tol(rep, tol), M=rep.M, N=rep.N, rep=rep.label, backend=rep.backend)
    V = SuperSpace.standard(rep.M, rep.N)
    spaces = [rep.space, V, V]
    Sop = generating_operator(rep, "S")
    Top = generating_operator(rep, "T")
    S12, S13 = embed_legs(Sop, (1, 2), spaces), embed_legs(Sop, (1, 3), spaces)
    T12, T13 = embed_legs(Top, (1, 2), spaces), embed_legs(Top, (1, 3), spaces)
    for tag, rmat in (("R", rmatrix_explicit(rep.M, rep.N)), ("R'", r_prime(rep.M, rep.N))):
        R23 = embed_legs(rep.constant_matrix(rmat), (2, 3), spaces)
        b.matrix_equal(f"{tag}23 T12 T13", R23 @ T12 @ T13, T13 @ T12 @ R23)
        b.matrix_equal(f"{tag}23 S12 S13", R23 @ S12 @ S13, S13 @ S12 @ R23)
        if tag == "R":
            b.matrix_equal("R23 T12 S13", R23 @ T12 @ S13, S13 @ T12 @ R23)
        else:
            b.matrix_equal("R'23 S12 T13", R23 @ S12 @ T13, T13 @ S12 @ R23)
    return b.build()


# -- Drinfeld-Jimbo data --------------------------------------------------------

def dj_generators(rep: WeightRep) -> dict:
    """Matrices of E_i, F_i, K_i, L_i (keys 'E1', 'F1', ...) for 1 <= i < M+N."""
    out = {}
    for i in range(1, rep.n):
        sii_inv = rep.letter(s(i, i, -1))
        tii_inv = rep.letter(t(i, i, -1))
        out[f"E{i}"] = sii_inv @ rep.letter(s(i, i + 1))
        out[f"F{i}"] = rep.letter(t(i + 1, i)) @ tii_inv
        out[f"K{i}"] = sii_inv @ rep.letter(s(i + 1, i + 1))
        out[f"L{i}"] = rep.letter(t(i + 1, i + 1)) @ tii_inv
    return out


def supercommutator(a: GradedMatrix, b: GradedMatrix, pa: int, pb: int) -> GradedMatrix:
    """ab - (-1)^{|a||b|} ba."""
    return a @ b + b @ a if pa and pb else a @ b - b @ a


def _serre_combo(rep, coeffs_words, G):
    out = rep.zero()
    for coeff, word in coeffs_words:
        mat = rep.identity()
        for name in word:
            mat = mat @ G[name]
        out = out + mat.scale(rep.scalar(coeff))
    return out


def oscillator_words(M: int) -> tuple[list, list]:
    """The two degree-four oscillator combinations in E and F letters.

    The last term is read with E_{M+1} (resp. F_{M+1}), the only index in
    range when M = N = 2.
    """
    a, m, c = M - 1, M, M + 1
    rs = R * S

    def e(*ix):
        return tuple(f"E{i}" for i in ix)

    def f(*ix):
        return tuple(f"F{i}" for i in ix)

    P = [(ONE, e(a, m, c, m)), (rs, e(c, m, a, m)), (ONE, e(m, a, m, c)),
         (rs, e(m, c, m, a)), (-(R + S), e(m, a, c, m))]
    Q = [(rs, f(a, m, c, m)), (ONE, f(c, m, a, m)), (rs, f(m, a, m, c)),
         (ONE, f(m, c, m, a)), (-(R + S), f(m, a, c, m))]
    return P, Q


def check_dj_relations(rep: WeightRep, tol: float = 1e-9) -> CheckReport:
    """Serre, degree-two, [E_i, F_j], oscillator and K/L conjugation relations."""
    b = ReportBuilder("dj-relations", tol=_tol(rep, tol), M=rep.M, N=rep.N, rep=rep.label, backend=rep.backend)
    M, n = rep.M, rep.n
    G = dj_generators(rep)
    rs, rps = R * S, R + S

    def odd(i):
        return 1 if i == M else 0

    for i in range(1, n - 1):
        if i != M:
            b.matrix_zero(f"serre-E-{i},{i + 1}", _serre_combo(rep, [
                (ONE, (f"E{i}", f"E{i}", f"E{i + 1}")), (-rps, (f"E{i}", f"E{i + 1}", f"E{i}")),
                (rs, (f"E{i + 1}", f"E{i}", f"E{i}"))], G))
            b.matrix_zero(f"serre-F-{i},{i + 1}", _serre_combo(rep, [
                (rs, (f"F{i}", f"F{i}", f"F{i + 1}")), (-rps, (f"F{i}", f"F{i + 1}", f"F{i}")),
                (ONE, (f"F{i + 1}", f"F{i}", f"F{i}"))], G))
    for i in range(2, n):
        if i != M:
            b.matrix_zero(f"serre-E-{i - 1},{i}", _serre_combo(rep, [
                (ONE, (f"E{i - 1}", f"E{i}", f"E{i}")), (-rps, (f"E{i}", f"E{i - 1}", f"E{i}")),
                (rs, (f"E{i}", f"E{i}", f"E{i - 1}"))], G))
            b.matrix_zero(f"serre-F-{i - 1},{i}", _serre_combo(rep, [
                (rs, (f"F{i - 1}", f"F{i}", f"F{i}")), (-rps, (f"F{i}", f"F{i - 1}", f"F{i}")),
                (ONE, (f"F{i}", f"F{i}", f"F{i - 1}"))], G))
    for i in range(1, n):
        for j in range(i + 2, n):
            b.matrix_zero(f"commute-E-{i},{j}", G[f"E{i}"] @ G[f"E{j}"] - G[f"E{j}"] @ G[f"E{i}"])
            b.matrix_zero(f"commute-F-{i},{j}", G[f"F{i}"] @ G[f"F{j}"] - G[f"F{j}"] @ G[f"F{i}"])
    if 1 <= M < n:
        b.matrix_zero(f"E{M}^2", G[f"E{M}"] @ G[f"E{M}"])
        b.matrix_zero(f"F{M}^2", G[f"F{M}"] @ G[f"F{M}"])
    base = S.inverse() - R.inverse()
    for i in range(1, n):
        for j in range(1, n):
            lhs = supercommutator(G[f"E{i}"], G[f"F{j}"], odd(i), odd(j))
            if i == j:
                coeff = -base if index_parity(M, i) else base
                rhs = (G[f"K{i}"] - G[f"L{i}"]).scale(rep.scalar(coeff))
            else:
                rhs = rep.zero()
            b.matrix_equal(f"[E{i},F{j}]", lhs, rhs)
    if M >= 2 and rep.N >= 2:
        P, Q = oscillator_words(M)
        b.matrix_zero("oscillator-E", _serre_combo(rep, P, G))
        b.matrix_zero("oscillator-F", _serre_combo(rep, Q, G))
    if (M, rep.N) == (2, 2):
        for i in range(1, 4):
            for j in range(1, 4):
                Kj, Lj = G[f"K{j}"], G[f"L{j}"]
                Kj_inv, Lj_inv = diag_inverse(Kj), diag_inverse(Lj)
                c, d = rep.scalar(C_MATRIX[i - 1][j - 1]), rep.scalar(D_MATRIX[i - 1][j - 1])
                Ei, Fi = G[f"E{i}"], G[f"F{i}"]
                b.matrix_equal(f"K{j}E{i}K{j}^-1", Kj @ Ei @ Kj_inv, Ei.scale(c))
                b.matrix_equal(f"K{j}F{i}K{j}^-1", Kj @ Fi @ Kj_inv, Fi.scale(1 / c))
                b.matrix_equal(f"L{j}F{i}L{j}^-1", Lj @ Fi @ Lj_inv, Fi.scale(d))
                b.matrix_equal(f"L{j}E{i}L{j}^-1", Lj @ Ei @ Lj_inv, Ei.scale(1 / d))
    return b.build()


def check_root_vector_induction(rep: WeightRep, tol: float = 1e-9) -> CheckReport:
    """s_ab s_bc - s_bc s_ab = (-1)^{|b|}(r - s) s_ac s_bb for a < b < c."""
    b = ReportBuilder("root-vector-induction", tol=_tol(rep, tol), M=rep.M, N=rep.N, rep=rep.label,
                      backend=rep.backend)
    n = rep.n
    for a_ in range(1, n + 1):
        for b_ in range(a_ + 1, n + 1):
            for c_ in range(b_ + 1, n + 1):
                sab, sbc = rep.s_mats[(a_, b_)], rep.s_mats[(b_, c_)]
                coeff = R - S
                if index_parity(rep.M, b_):
                    coeff = -coeff
                rhs = (rep.s_mats[(a_, c_)] @ rep.s_mats[(b_, b_)]).scale(rep.scalar(coeff))
                b.matrix_equal(f"s{a_}{b_},s{b_}{c_}", sab @ sbc - sbc @ sab, rhs)
    return b.build()


def check_weight_relations(rep: WeightRep, tol: float = 1e-9) -> CheckReport:
    """The four torus/off-diagonal commutation families, for all index triples."""
    b = ReportBuilder("weight-relations", tol=_tol(rep, tol), M=rep.M, N=rep.N, rep=rep.label,
                      backend=rep.backend)
    oracle = HopfPairing(rep.M, rep.N)
    n = rep.n

    def phi(a, c):
        return oracle.base_pairing(s(a, a), t(c, c))

    for i in range(1, n + 1):
        sii, tii = rep.s_mats[(i, i)], rep.t_mats[(i, i)]
        for j in range(1, n + 1):
            for k in range(j, n + 1):
                sjk, tkj = rep.s_mats[(j, k)], rep.t_mats[(k, j)]
                c1 = rep.scalar(phi(i, j) * phi(i, k).inverse())
                c2 = rep.scalar(phi(j, i).inverse() * phi(k, i))
                c3 = rep.scalar(phi(j, i) * phi(k, i).inverse())
                c4 = rep.scalar(phi(i, j).inverse() * phi(i, k))
                b.matrix_equal(f"s{i}{i}s{j}{k}", sii @ sjk, (sjk @ sii).scale(c1))
                b.matrix_equal(f"t{i}{i}s{j}{k}", tii @ sjk, (sjk @ tii).scale(c2))
                b.matrix_equal(f"t{i}{i}t{k}{j}", tii @ tkj, (tkj @ tii).scale(c3))
                b.matrix_equal(f"s{i}{i}t{k}{j}", sii @ tkj, (tkj @ sii).scale(c4))
    return b.build()


def weight_eigenvalues(rep: WeightRep, i: int, lam) -> tuple[RationalFunction, RationalFunction]:
    """Eigenvalues of s_ii and t_ii on a weight vector of weight lam."""
    oracle = HopfPairing(rep.M, rep.N)
    phi = oracle.base_pairing(s(i, i), t(i, i))
    rs = R * S
    below = sum(lam[: i - 1])
    return phi ** lam[i - 1] * rs ** below, phi ** (-lam[i - 1]) * rs ** (below + lam[i - 1])


def check_weights(rep: WeightRep, tol: float = 1e-9) -> CheckReport:
    """Weight-vector eigenvalue rule for s_ii, t_ii and weight shifts of off-diagonal generators."""
    b = ReportBuilder("weights", tol=_tol(rep, tol), M=rep.M, N=rep.N, rep=rep.label, backend=rep.backend)
    n = rep.n
    for i in range(1, n + 1):
        for name, mat in (("s", rep.s_mats[(i, i)]), ("t", rep.t_mats[(i, i)])):
            expected = {}
            for v, lam in enumerate(rep.weights):
                ev = weight_eigenvalues(rep, i, lam)[0 if name == "s" else 1]
                expected[(v, v)] = rep.scalar(ev)
            b.matrix_equal(f"{name}{i}{i}-eigenvalues", mat, GradedMatrix(rep.space, rep.space, expected))
    bad = []
    for (i, j), mat in rep.s_mats.items():
        bad += _shift_violations(rep, mat, i, j, 1, f"s{i}{j}")
    for (j, i), mat in rep.t_mats.items():
        bad += _shift_violations(rep, mat, i, j, -1, f"t{j}{i}")
    b.expect("weight-shifts", not bad, "; ".join(bad[:3]), value=len(bad))
    return b.build()


def _shift_violations(rep, mat, i, j, sign, name):
    out = []
    for (p, q) in mat.entries:
        shift = [x - y for x, y in zip(rep.weights[p], rep.weights[q])]
        want = [0] * rep.n
        want[i - 1] += sign
        want[j - 1] -= sign
        if shift != want:
            out.append(f"{name} maps weight {rep.weights[q]} to {rep.weights[p]}")
    return out


# -- antipode -----------------------------------------------------------------

def antipode_matrices(rep: WeightRep) -> tuple[dict, dict]:
    """rho(Sm(s_ij)) and rho(Sm(t_ji)) read off the blockwise inverses of S and T."""
    if rep.backend != EXACT:
        raise RepError("antipode_matrices needs the exact backend")
    V = SuperSpace.standard(rep.M, rep.N)
    out = []
    for which in ("S", "T"):
        parts = decompose_right(inverse(generating_operator(rep, which)), rep.space, V)
        out.append({(c + 1, d + 1): m for (c, d), m in parts.items()})
    return out[0], out[1]


def antipode_recursive(rep: WeightRep) -> dict:
    """rho(Sm(s_ij)) from Sm(s_ij) = -sum_{k<j} Sm(s_ik) s_kj s_jj^-1 (product order reversed by Sm)."""
    n = rep.n
    out = {}
    for i in range(1, n + 1):
        out[(i, i)] = rep.letter(s(i, i, -1))
        for j in range(i + 1, n + 1):
            acc = rep.zero()
            for k in range(i, j):
                acc = acc + out[(i, k)] @ rep.s_mats[(k, j)] @ rep.letter(s(j, j, -1))
            out[(i, j)] = -acc
    return out


def check_antipode(rep: WeightRep) -> CheckReport:
    b = ReportBuilder("antipode", M=rep.M, N=rep.N, rep=rep.label)
    Sm_s, Sm_t = antipode_matrices(rep)
    n = rep.n
    I, Z = rep.identity(), rep.zero()
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            conv_s = sum_matrices((Sm_s.get((i, k), Z) @ rep.s_mats[(k, j)] for k in range(i, j + 1)), rep.space)
            conv_t = sum_matrices((Sm_t.get((j, k), Z) @ rep.t_mats[(k, i)] for k in range(i, j + 1)), rep.space)
            b.matrix_equal(f"Sm*s{i}{j}", conv_s, I if i == j else Z)
            b.matrix_equal(f"Sm*t{j}{i}", conv_t, I if i == j else Z)
    rec = antipode_recursive(rep)
    for key, m in rec.items():
        b.matrix_equal(f"recursive-Sm(s{key[0]}{key[1]})", Sm_s.get(key, Z), m)
    return b.build()
