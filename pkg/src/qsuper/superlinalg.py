"""Graded (super) linear algebra on finite tensor powers.

Operators are sparse matrices on parity-labelled bases.  Tensor products
of spaces use the row-major order on index tuples, and every tensor
product of operators carries the Koszul sign

    (x_1 (x) ... (x) x_k)(v_1 (x) ... (x) v_k)
        = (-1)^{sum_{a>b} |x_a||v_b|} x_1 v_1 (x) ... (x) x_k v_k.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .scalars import ONE, ZERO, RationalFunction, DivisionByZero, format_scalar, parse_scalar


class SingularMatrixError(DivisionByZero):
    pass


@dataclass(frozen=True)
class SuperSpace:
    """A finite-dimensional super vector space given by its parity sequence."""

    parities: tuple[int, ...]

    def __post_init__(self):
        if not self.parities:
            raise ValueError("a SuperSpace needs dimension >= 1")
        if any(p not in (0, 1) for p in self.parities):
            raise ValueError("parities must be 0 or 1")

    @classmethod
    def standard(cls, M: int, N: int) -> "SuperSpace":
        """C^{M|N}: the first M basis vectors even, the last N odd."""
        return cls((0,) * M + (1,) * N)

    @property
    def dim(self) -> int:
        return len(self.parities)

    def __len__(self):
        return len(self.parities)

    def parity(self, i: int) -> int:
        return self.parities[i]

    def tensor(self, *others: "SuperSpace") -> "SuperSpace":
        return tensor_spaces(self, *others)


def tensor_spaces(*spaces: SuperSpace) -> SuperSpace:
    pars = [0]
    for sp in spaces:
        pars = [(a + b) % 2 for a in pars for b in sp.parities]
    return SuperSpace(tuple(pars))


def tensor_index(idx: Sequence[int], dims: Sequence[int]) -> int:
    k = 0
    for i, d in zip(idx, dims):
        k = k * d + i
    return k


def tensor_unindex(k: int, dims: Sequence[int]) -> tuple[int, ...]:
    out = []
    for d in reversed(dims):
        k, i = divmod(k, d)
        out.append(i)
    return tuple(reversed(out))


def _nonzero(v) -> bool:
    return bool(v)


class GradedMatrix:
    """Sparse matrix ``codomain <- domain`` between super vector spaces.

    ``entries`` maps ``(row, col)`` to nonzero scalars (``RationalFunction``
    for the exact backend, ``complex`` for numeric specializations).
    """

    __slots__ = ("codomain", "domain", "entries")

    def __init__(self, codomain: SuperSpace, domain: SuperSpace | None = None, entries=None):
        self.codomain = codomain
        self.domain = domain if domain is not None else codomain
        self.entries = {k: v for k, v in (entries or {}).items() if _nonzero(v)}

    @classmethod
    def _raw(cls, codomain, domain, entries):
        obj = cls.__new__(cls)
        obj.codomain = codomain
        obj.domain = domain
        obj.entries = entries
        return obj

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, codomain: SuperSpace, domain: SuperSpace | None = None) -> "GradedMatrix":
        return cls._raw(codomain, domain or codomain, {})

    @classmethod
    def identity(cls, space: SuperSpace, one=ONE) -> "GradedMatrix":
        return cls._raw(space, space, {(i, i): one for i in range(space.dim)})

    @classmethod
    def unit(cls, space: SuperSpace, i: int, j: int, value=ONE) -> "GradedMatrix":
        """The matrix unit E_ij (0-based) scaled by ``value``."""
        return cls(space, space, {(i, j): value})

    @classmethod
    def diagonal(cls, space: SuperSpace, values: Sequence) -> "GradedMatrix":
        return cls(space, space, {(i, i): v for i, v in enumerate(values)})

    # -- queries -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.codomain.dim, self.domain.dim

    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def entry_parity(self, i: int, j: int) -> int:
        return (self.codomain.parities[i] + self.domain.parities[j]) % 2

    def parity(self) -> int | None:
        """0 or 1 if every nonzero entry has that parity, else None."""
        seen = {self.entry_parity(i, j) for i, j in self.entries}
        if not seen:
            return 0
        return seen.pop() if len(seen) == 1 else None

    def homogeneous_parts(self) -> dict[int, "GradedMatrix"]:
        parts: dict[int, dict] = {0: {}, 1: {}}
        for (i, j), v in self.entries.items():
            parts[self.entry_parity(i, j)][(i, j)] = v
        return {p: GradedMatrix._raw(self.codomain, self.domain, e) for p, e in parts.items()}

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self.entries)

    # -- arithmetic --------------------------------------------------------
    def _check_same(self, other):
        if self.codomain != other.codomain or self.domain != other.domain:
            raise ValueError("matrix shapes/parities do not match")

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        self._check_same(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            w = out[k] + v if k in out else v
            if _nonzero(w):
                out[k] = w
            else:
                out.pop(k, None)
        return GradedMatrix._raw(self.codomain, self.domain, out)

    def __neg__(self):
        return GradedMatrix._raw(self.codomain, self.domain, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GradedMatrix":
        out = {}
        for k, v in self.entries.items():
            w = v * c
            if _nonzero(w):
                out[k] = w
        return GradedMatrix._raw(self.codomain, self.domain, out)

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.domain != other.codomain:
            raise ValueError("incompatible matrix product")
        rows: dict[int, list] = {}
        for (k, j), b in other.entries.items():
            rows.setdefault(k, []).append((j, b))
        acc: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in rows.get(k, ()):
                key = (i, j)
                p = a * b
                acc[key] = acc[key] + p if key in acc else p
        return GradedMatrix._raw(self.codomain, other.domain,
                                 {k: v for k, v in acc.items() if _nonzero(v)})

    def __pow__(self, n: int) -> "GradedMatrix":
        if n < 0:
            raise ValueError("use inverse() for negative powers")
        result = GradedMatrix.identity(self.domain, _one_like(self))
        for _ in range(n):
            result = result @ self
        return result

    def map(self, fn: Callable) -> "GradedMatrix":
        """Apply ``fn`` to every entry (e.g. numeric evaluation)."""
        return GradedMatrix(self.codomain, self.domain, {k: fn(v) for k, v in self.entries.items()})

    def apply(self, vec: Mapping[int, object]) -> dict[int, object]:
        """Act on a sparse vector {basis index: coefficient}."""
        out: dict = {}
        for (i, j), a in self.entries.items():
            if j in vec:
                p = a * vec[j]
                out[i] = out[i] + p if i in out else p
        return {i: v for i, v in out.items() if _nonzero(v)}

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (self.codomain == other.codomain and self.domain == other.domain
                and self.entries == other.entries)

    __hash__ = None

    def allclose(self, other: "GradedMatrix", tol: float = 1e-9) -> bool:
        return max_abs_diff(self, other) <= tol

    def __repr__(self):
        return f"GradedMatrix({self.shape[0]}x{self.shape[1]}, nnz={self.nnz()})"

    # -- conversions -------------------------------------------------------
    def to_dense(self):
        import numpy as np

        out = np.zeros(self.shape, dtype=complex)
        for (i, j), v in self.entries.items():
            out[i, j] = complex(v)
        return out

    def to_json(self) -> dict:
        data = {
            "rows": self.shape[0],
            "cols": self.shape[1],
            "parities": list(self.codomain.parities),
            "entries": [[i, j, format_scalar(RationalFunction.coerce(v))]
                        for (i, j), v in sorted(self.entries.items())],
        }
        if self.domain != self.codomain:
            data["col_parities"] = list(self.domain.parities)
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "GradedMatrix":
        codomain = SuperSpace(tuple(data["parities"]))
        domain = SuperSpace(tuple(data.get("col_parities", data["parities"])))
        if codomain.dim != data["rows"] or domain.dim != data["cols"]:
            raise ValueError("dimension mismatch in matrix dump")
        return cls(codomain, domain, {(i, j): parse_scalar(v) for i, j, v in data["entries"]})


def _one_like(m: GradedMatrix):
    for v in m.entries.values():
        return ONE if isinstance(v, RationalFunction) else 1.0 + 0j
    return ONE


def max_abs_diff(a: GradedMatrix, b: GradedMatrix) -> float:
    keys = set(a.entries) | set(b.entries)
    return max((abs(complex(a[k]) - complex(b[k])) for k in keys), default=0.0)


def sum_matrices(mats: Iterable[GradedMatrix], codomain: SuperSpace, domain: SuperSpace | None = None):
    acc: dict = {}
    for m in mats:
        for k, v in m.entries.items():
            acc[k] = acc[k] + v if k in acc else v
    return GradedMatrix(codomain, domain or codomain, acc)


# -- tensor calculus --------------------------------------------------------

def graded_kron(*mats: GradedMatrix) -> GradedMatrix:
    """Super tensor product of operators, with Koszul signs.

    The entry at (i_1..i_k, j_1..j_k) is prod(x_a[i_a, j_a]) times
    (-1)^{sum_{a>b} |x_a[i_a,j_a]| * |j_b|}.
    """
    codomain = tensor_spaces(*(m.codomain for m in mats))
    domain = tensor_spaces(*(m.domain for m in mats))
    rdims = [m.codomain.dim for m in mats]
    cdims = [m.domain.dim for m in mats]
    per_factor = []
    for m in mats:
        rp, cp = m.codomain.parities, m.domain.parities
        per_factor.append([(i, j, v, (rp[i] + cp[j]) % 2, cp[j]) for (i, j), v in m.entries.items()])
    out: dict = {}
    for combo in itertools.product(*per_factor):
        sign = 0
        col_par_sum = 0
        val = None
        for (i, j, v, ep, cpj) in combo:
            sign += ep * col_par_sum
            col_par_sum += cpj
            val = v if val is None else val * v
        if sign % 2:
            val = -val
        row = tensor_index([c[0] for c in combo], rdims)
        col = tensor_index([c[1] for c in combo], cdims)
        out[(row, col)] = val
    return GradedMatrix._raw(codomain, domain, out)


def koszul_flip(V: SuperSpace, W: SuperSpace) -> GradedMatrix:
    """The graded permutation c_{V,W}: v_i (x) w_j -> (-1)^{|i||j|} w_j (x) v_i."""
    entries = {}
    for i, pi in enumerate(V.parities):
        for j, pj in enumerate(W.parities):
            col = i * W.dim + j
            row = j * V.dim + i
            entries[(row, col)] = -ONE if pi * pj else ONE
    return GradedMatrix._raw(tensor_spaces(W, V), tensor_spaces(V, W), entries)


def decompose_right(mat: GradedMatrix, left: SuperSpace, right: SuperSpace) -> dict:
    """Write an operator on left (x) right as sum_{c,d} X_cd (x) E_cd.

    Returns {(c, d): X_cd} with X_cd an operator on ``left``.
    """
    rd = right.dim
    parts: dict = {}
    lp, rp = left.parities, right.parities
    for (row, col), v in mat.entries.items():
        p, c = divmod(row, rd)
        q, d = divmod(col, rd)
        if (rp[c] + rp[d]) * lp[q] % 2:
            v = -v
        parts.setdefault((c, d), {})[(p, q)] = v
    return {k: GradedMatrix._raw(left, left, e) for k, e in parts.items()}


def tensor_coefficients(mat: GradedMatrix, V: SuperSpace, W: SuperSpace | None = None) -> dict:
    """Coefficients of E_ab (x) E_cd in an operator on V (x) W: {((a,b),(c,d)): value}."""
    W = W or V
    out = {}
    for cd, X in decompose_right(mat, V, W).items():
        for ab, v in X.entries.items():
            out[(ab, cd)] = v
    return out


def from_tensor_coefficients(coeffs: Mapping, V: SuperSpace, W: SuperSpace | None = None) -> GradedMatrix:
    W = W or V
    terms = []
    for ((a, b), (c, d)), v in coeffs.items():
        terms.append(graded_kron(GradedMatrix.unit(V, a, b, v), GradedMatrix.unit(W, c, d)))
    return sum_matrices(terms, tensor_spaces(V, W))


def embed_legs(t: GradedMatrix, positions: tuple[int, int], spaces: Sequence[SuperSpace]) -> GradedMatrix:
    """Place a two-leg operator t on legs ``positions`` (1-based, increasing) of a k-fold product.

    ``t`` acts on spaces[p-1] (x) spaces[q-1]; it is split into elementary
    tensors E_ab (x) E_cd and each is realized with identities on the other
    legs, so t_13 = sum a_i (x) 1 (x) b_i carries the correct signs.
    """
    p, q = positions
    if not 1 <= p < q <= len(spaces):
        raise ValueError("positions must be increasing and within range")
    Vp, Vq = spaces[p - 1], spaces[q - 1]
    one = _one_like(t)
    idents = [GradedMatrix.identity(sp, one) for sp in spaces]
    terms = []
    for cd, X in decompose_right(t, Vp, Vq).items():
        factors = list(idents)
        factors[p - 1] = X
        factors[q - 1] = GradedMatrix.unit(Vq, *cd, one)
        terms.append(graded_kron(*factors))
    return sum_matrices(terms, tensor_spaces(*spaces))


def embed_single(x: GradedMatrix, position: int, spaces: Sequence[SuperSpace]) -> GradedMatrix:
    factors = [GradedMatrix.identity(sp, _one_like(x)) for sp in spaces]
    factors[position - 1] = x
    return graded_kron(*factors)


def super_transpose(A: GradedMatrix) -> GradedMatrix:
    """Linear extension of E_ij -> eps_ij E_ji with eps_ij = (-1)^{|i| + |i||j|}."""
    if A.codomain != A.domain:
        raise ValueError("super transposition needs a square matrix on one space")
    par = A.domain.parities
    out = {}
    for (i, j), v in A.entries.items():
        eps = (par[i] + par[i] * par[j]) % 2
        out[(j, i)] = -v if eps else v
    return GradedMatrix._raw(A.domain, A.domain, out)


def super_transpose_tensor(mat: GradedMatrix, V: SuperSpace) -> GradedMatrix:
    """tau (x) tau on an operator of V (x) V, acting on elementary tensors."""
    coeffs = {}
    par = V.parities
    for ((a, b), (c, d)), v in tensor_coefficients(mat, V).items():
        eps = (par[a] + par[a] * par[b] + par[c] + par[c] * par[d]) % 2
        coeffs[((b, a), (d, c))] = -v if eps else v
    return from_tensor_coefficients(coeffs, V)


# -- exact elimination ------------------------------------------------------

def _dense(A: GradedMatrix) -> list[list]:
    n, m = A.shape
    rows = [[ZERO] * m for _ in range(n)]
    for (i, j), v in A.entries.items():
        rows[i][j] = v
    return rows


def _bareiss_forward(M: list[list], ncols_pivot: int) -> tuple[list[list], int]:
    """Fraction-free elimination in place; returns (M, sign of row swaps)."""
    n = len(M)
    width = len(M[0])
    prev = ONE
    sign = 1
    for k in range(min(n, ncols_pivot)):
        piv = next((i for i in range(k, n) if M[i][k]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        akk = M[k][k]
        rowk = M[k]
        nzk = {j for j in range(k + 1, width) if rowk[j]}
        for i in range(k + 1, n):
            rowi = M[i]
            aik = rowi[k]
            for j in range(k + 1, width):
                if aik and j in nzk:
                    val = akk * rowi[j] - aik * rowk[j] if rowi[j] else -(aik * rowk[j])
                elif rowi[j]:
                    val = akk * rowi[j]
                else:
                    continue
                rowi[j] = val / prev if not prev.is_one() else val
            rowi[k] = ZERO
        prev = akk
    return M, sign


def determinant(A: GradedMatrix) -> RationalFunction:
    """Exact determinant by Bareiss fraction-free elimination."""
    n, m = A.shape
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    M = _dense(A)
    try:
        M, sign = _bareiss_forward(M, n)
    except SingularMatrixError:
        return ZERO
    return M[n - 1][n - 1] if sign > 0 else -M[n - 1][n - 1]


def inverse(A: GradedMatrix) -> GradedMatrix:
    """Exact inverse: Bareiss elimination on [A | I] then back substitution."""
    n, m = A.shape
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    if A.is_diagonal() and len(A.entries) == n:
        return GradedMatrix._raw(A.domain, A.codomain, {k: v.inverse() for k, v in A.entries.items()})
    M = _dense(A)
    for i in range(n):
        M[i].extend(ONE if i == j else ZERO for j in range(n))
    M, _ = _bareiss_forward(M, n)
    X = [[ZERO] * n for _ in range(n)]
    for i in range(n - 1, -1, -1):
        piv_inv = M[i][i].inverse()
        for c in range(n):
            acc = M[i][n + c]
            for j in range(i + 1, n):
                if M[i][j] and X[j][c]:
                    acc = acc - M[i][j] * X[j][c]
            X[i][c] = acc * piv_inv if acc else ZERO
    entries = {(i, j): X[i][j] for i in range(n) for j in range(n) if X[i][j]}
    return GradedMatrix._raw(A.domain, A.codomain, entries)


def diag_inverse(A: GradedMatrix) -> GradedMatrix:
    if not A.is_diagonal() or len(A.entries) != A.shape[0]:
        raise SingularMatrixError("not an invertible diagonal matrix")
    return GradedMatrix._raw(A.domain, A.codomain,
                             {k: (v.inverse() if isinstance(v, RationalFunction) else 1 / v)
                              for k, v in A.entries.items()})
