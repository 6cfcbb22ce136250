"""The two-fold quasi-central extension of U_{r,s}(sl(2,2)).

Generators e_i, f_i, k_i^{+-1}, l_i^{+-1} (i = 1, 2, 3) with e_2, f_2 odd,
subject to the Serre, degree-two, [e_i, f_j] and K/L conjugation relations
but not to the two oscillator relations.  Their left-hand sides P and Q are
quasi-central: P x = theta(x) P and Q x = tau(x) Q.

The representation pi_x on V (x) C[X, X^-1] is modelled exactly by 4x4
matrices over the shift-operator algebra spanned by mu^a D^b, where D shifts
the mode n -> n + 1, mu multiplies the mode n by (rs)^-n and D mu = rs mu D.
"""
from __future__ import annotations

import cmath
import itertools

import numpy as np

from .pairing import C_MATRIX, D_MATRIX, GenLetter, parse_word
from .report import CheckReport, ReportBuilder
from .reps import vector_rep, dj_generators, oscillator_words
from .scalars import ONE, ZERO, R, S, X, RationalFunction, format_scalar

RS = R * S
PARITIES = (0, 0, 1, 1)
INDEX_PARITY = {1: 0, 2: 0, 3: 1}  # |1| = |2| = 0, |3| = 1 for C^{2|2}


class ExtensionError(ValueError):
    pass


# -- the shift-operator algebra -----------------------------------------------

def _add_into(acc: dict, key, value):
    w = acc[key] + value if key in acc else value
    if w:
        acc[key] = w
    else:
        acc.pop(key, None)


class ShiftOpMatrix:
    """4x4 matrix with entries sum_{a,b} c_ab mu^a D^b, stored as {(row, col): {(a, b): c}}."""

    __slots__ = ("entries",)

    def __init__(self, entries: dict | None = None):
        self.entries = {}
        for pos, terms in (entries or {}).items():
            clean = {k: RationalFunction.coerce(v) for k, v in terms.items() if v}
            if clean:
                self.entries[pos] = clean

    @classmethod
    def zero(cls) -> "ShiftOpMatrix":
        return cls()

    @classmethod
    def identity(cls) -> "ShiftOpMatrix":
        return cls({(i, i): {(0, 0): ONE} for i in range(4)})

    @classmethod
    def unit(cls, row: int, col: int, coeff=ONE, mu: int = 0, shift: int = 0) -> "ShiftOpMatrix":
        """coeff * mu^mu * D^shift * E_{row,col} (1-based row/col)."""
        return cls({(row - 1, col - 1): {(mu, shift): coeff}})

    @classmethod
    def diag(cls, values, shift: int = 0) -> "ShiftOpMatrix":
        return cls({(i, i): {(0, shift): v} for i, v in enumerate(values)})

    def is_zero(self) -> bool:
        return not self.entries

    def nnz(self) -> int:
        return sum(len(t) for t in self.entries.values())

    def __eq__(self, other):
        return isinstance(other, ShiftOpMatrix) and self.entries == other.entries

    __hash__ = None

    def __add__(self, other: "ShiftOpMatrix") -> "ShiftOpMatrix":
        out = {pos: dict(t) for pos, t in self.entries.items()}
        for pos, terms in other.entries.items():
            cell = out.setdefault(pos, {})
            for k, v in terms.items():
                _add_into(cell, k, v)
            if not cell:
                del out[pos]
        return ShiftOpMatrix._wrap(out)

    def __neg__(self):
        return ShiftOpMatrix._wrap({pos: {k: -v for k, v in t.items()} for pos, t in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ShiftOpMatrix":
        c = RationalFunction.coerce(c)
        if not c:
            return ShiftOpMatrix()
        return ShiftOpMatrix._wrap({pos: {k: v * c for k, v in t.items()} for pos, t in self.entries.items()})

    def __matmul__(self, other: "ShiftOpMatrix") -> "ShiftOpMatrix":
        rows: dict = {}
        for (k, j), t in other.entries.items():
            rows.setdefault(k, []).append((j, t))
        out: dict = {}
        for (i, k), t1 in self.entries.items():
            for j, t2 in rows.get(k, ()):
                cell = out.setdefault((i, j), {})
                for (a1, b1), c1 in t1.items():
                    for (a2, b2), c2 in t2.items():
                        # D^b1 mu^a2 = (rs)^{b1 a2} mu^a2 D^b1
                        _add_into(cell, (a1 + a2, b1 + b2), c1 * c2 * RS ** (b1 * a2))
        return ShiftOpMatrix._wrap({pos: t for pos, t in out.items() if t})

    @classmethod
    def _wrap(cls, entries: dict) -> "ShiftOpMatrix":
        obj = cls.__new__(cls)
        obj.entries = entries
        return obj

    def parity(self) -> int | None:
        seen = {(PARITIES[i] + PARITIES[j]) % 2 for i, j in self.entries}
        if not seen:
            return 0
        return seen.pop() if len(seen) == 1 else None

    def degrees(self) -> set:
        return {k for t in self.entries.values() for k in t}

    def substitute_x(self, value) -> "ShiftOpMatrix":
        """Set x to a rational constant."""
        value = RationalFunction.coerce(value)
        out = {}
        for pos, t in self.entries.items():
            cell = {}
            for k, v in t.items():
                _add_into(cell, k, _subs_x(v, value))
            if cell:
                out[pos] = cell
        return ShiftOpMatrix._wrap(out)

    def to_numeric(self, point: dict, ell: int) -> np.ndarray:
        """The 4l x 4l matrix on V^l, basis index 4n + y for mode n in Z/l."""
        rs = point["r"] * point["s"]
        out = np.zeros((4 * ell, 4 * ell), dtype=complex)
        for (a, b), t in self.entries.items():
            for (mu, shift), c in t.items():
                val = complex(c.evaluate(point))
                for n in range(ell):
                    m = (n + shift) % ell
                    out[4 * m + a, 4 * n + b] += val * rs ** (-mu * (n + shift))
        return out

    def __repr__(self):
        return f"ShiftOpMatrix(nnz={self.nnz()})"


def _subs_x(v: RationalFunction, value: RationalFunction) -> RationalFunction:
    from .scalars import LaurentPoly

    def sub_poly(p: LaurentPoly) -> RationalFunction:
        acc = ZERO
        for (er, es, ex), c in p.terms.items():
            acc = acc + RationalFunction.monomial((er, es, 0), c) * value ** ex
        return acc

    return sub_poly(v.num) / sub_poly(v.den)


# -- words, automorphisms, P and Q ----------------------------------------------

UWord = tuple  # tuple[GenLetter, ...] of Drinfeld-Jimbo letters


def letter_parity(x: GenLetter) -> int:
    return 1 if x.symbol in "ef" and x.first == 2 else 0


def word_parity(w: UWord) -> int:
    return sum(letter_parity(x) for x in w) % 2


def all_letters() -> list[GenLetter]:
    """e_i, f_i, k_i, k_i^-1, l_i, l_i^-1 for i = 1, 2, 3."""
    out = []
    for i in (1, 2, 3):
        out += [GenLetter("e", i, i), GenLetter("f", i, i)]
        for sym in "kl":
            out += [GenLetter(sym, i, i, 1), GenLetter(sym, i, i, -1)]
    return out


_THETA = {("f", 1): 0, ("f", 3): 0, ("e", 3): 1, ("k", 3): 1, ("l", 3): 1,
          ("e", 1): -1, ("k", 1): -1, ("l", 1): -1}
_TAU = {("e", 1): 0, ("e", 3): 0, ("f", 1): 1, ("k", 1): 1, ("l", 1): 1,
        ("f", 3): -1, ("k", 3): -1, ("l", 3): -1}


def _rescale(table, w: UWord) -> tuple[RationalFunction, UWord]:
    if isinstance(w, str):
        w = parse_word(w)
    power = 0
    for x in w:
        power += table.get((x.symbol, x.first), 0) * x.exponent
    return RS ** power, tuple(w)


def theta(w) -> tuple[RationalFunction, UWord]:
    """theta rescales a word by a power of rs and leaves the letters unchanged."""
    return _rescale(_THETA, w)


def tau(w) -> tuple[RationalFunction, UWord]:
    return _rescale(_TAU, w)


def P_elem() -> list[tuple[RationalFunction, UWord]]:
    return [(c, parse_word(w)) for c, w in (
        (ONE, "e1 e2 e3 e2"), (RS, "e3 e2 e1 e2"), (ONE, "e2 e1 e2 e3"),
        (RS, "e2 e3 e2 e1"), (-(R + S), "e2 e1 e3 e2"))]


def Q_elem() -> list[tuple[RationalFunction, UWord]]:
    return [(c, parse_word(w)) for c, w in (
        (RS, "f1 f2 f3 f2"), (ONE, "f3 f2 f1 f2"), (RS, "f2 f1 f2 f3"),
        (ONE, "f2 f3 f2 f1"), (-(R + S), "f2 f1 f3 f2"))]


# -- representations in the shift-operator algebra ---------------------------

def shift_images(r: RationalFunction, s: RationalFunction, x: RationalFunction, mu_sign: int = 1) -> dict:
    """pi_x written with parameters (r, s); mu_sign = -1 uses mu^-1 in e_2 (dual parameters)."""
    one = ONE
    imgs = {
        ("k", 1): ShiftOpMatrix.diag([s, r, one, one], 1),
        ("k", 2): ShiftOpMatrix.diag([one, s, s, one]),
        ("k", 3): ShiftOpMatrix.diag([one, one, r, s], -1),
        ("l", 1): ShiftOpMatrix.diag([r, s, one, one], 1),
        ("l", 2): ShiftOpMatrix.diag([one, r, r, one]),
        ("l", 3): ShiftOpMatrix.diag([one, one, s, r], -1),
        ("e", 1): ShiftOpMatrix.unit(1, 2, one - s / r, shift=1),
        ("f", 1): ShiftOpMatrix.unit(2, 1, one - r / s),
        ("e", 3): ShiftOpMatrix.unit(3, 4, one - r / s, shift=-1),
        ("f", 3): ShiftOpMatrix.unit(4, 3, one - s / r),
        ("e", 2): ShiftOpMatrix.unit(2, 3, s / r - one) + ShiftOpMatrix.unit(4, 1, (s / r - one) * x, mu=mu_sign),
        ("f", 2): ShiftOpMatrix.unit(3, 2, r / s - one),
    }
    return imgs


def _torus_inverse(m: ShiftOpMatrix) -> ShiftOpMatrix:
    """Inverse of c_i D^b on the diagonal: D^-b c_i^-1."""
    out = {}
    for pos, t in m.entries.items():
        ((a, b), c), = t.items()
        if a != 0 or pos[0] != pos[1]:
            raise ExtensionError("only diagonal torus images are inverted")
        out[pos] = {(0, -b): c.inverse()}
    return ShiftOpMatrix._wrap(out)


class ShiftRep:
    """Images of all generator letters (including inverses) in the shift-operator algebra."""

    def __init__(self, images: dict, label: str):
        self.images = dict(images)
        for sym in "kl":
            for i in (1, 2, 3):
                self.images[(sym, -i)] = _torus_inverse(self.images[(sym, i)])
        self.label = label

    def letter(self, x: GenLetter) -> ShiftOpMatrix:
        if x.symbol in "kl" and x.exponent == -1:
            return self.images[(x.symbol, -x.first)]
        return self.images[(x.symbol, x.first)]

    def word(self, w) -> ShiftOpMatrix:
        if isinstance(w, str):
            w = parse_word(w)
        out = ShiftOpMatrix.identity()
        for x in w:
            out = out @ self.letter(x)
        return out

    def element(self, terms) -> ShiftOpMatrix:
        out = ShiftOpMatrix.zero()
        for c, w in terms:
            out = out + self.word(w).scale(c)
        return out


def pi_x(x=X) -> ShiftRep:
    return ShiftRep(shift_images(R, S, RationalFunction.coerce(x)), "pi_x")


def pi_x_dual(x=X) -> ShiftRep:
    """pi_x of the algebra with parameters (s^-1, r^-1), pulled back along
    e_i -> f_i, f_i -> (-1)^{|e_i|} (rs)^-1 e_i, k_i -> l_i, l_i -> k_i.

    This representation has P = 0 and Q != 0, so it exercises the tau-half
    of quasi-centrality non-trivially.
    """
    base = shift_images(S.inverse(), R.inverse(), RationalFunction.coerce(x), mu_sign=-1)
    imgs = {}
    for i in (1, 2, 3):
        imgs[("e", i)] = base[("f", i)]
        coeff = RS.inverse() * (-1 if i == 2 else 1)
        imgs[("f", i)] = base[("e", i)].scale(coeff)
        imgs[("k", i)] = base[("l", i)]
        imgs[("l", i)] = base[("k", i)]
    return ShiftRep(imgs, "pi_x_dual")


# -- the relation suite, shared by exact and numeric backends ------------------

class _Algebra:
    """Minimal interface over ShiftOpMatrix (exact) or numpy arrays (numeric)."""

    def __init__(self, gens: dict, scalar, identity, zero):
        self.gens, self.scalar, self.identity, self.zero = gens, scalar, identity, zero

    def g(self, sym, i, exp=1):
        return self.gens[(sym, -i if exp == -1 else i)]

    def word(self, names):
        out = self.identity
        for sym, i in names:
            out = out @ self.g(sym, i)
        return out

    def combo(self, terms):
        out = self.zero
        for c, names in terms:
            out = out + _scale(self.word(names), self.scalar(c))
        return out


def _scale(m, c):
    return m.scale(c) if isinstance(m, ShiftOpMatrix) else m * c


def _names(text):
    return tuple((t[0], int(t[1])) for t in text.split())


def bracket_sign(i: int, convention: str) -> int:
    """(-1)^{|i|} in [e_i, f_i]: 'index' uses the basis parity of i, 'odd-generator' uses |e_i|."""
    if convention == "index":
        return -1 if INDEX_PARITY[i] else 1
    if convention == "odd-generator":
        return -1 if i == 2 else 1
    raise ExtensionError(f"unknown convention {convention!r}")


def relation_residuals(alg: _Algebra, convention: str = "index") -> list[tuple[str, object]]:
    """Every defining relation as (name, lhs - rhs)."""
    out = []
    rps, rs = R + S, RS
    w = _names
    out.append(("serre-E-1,2", alg.combo([(ONE, w("e1 e1 e2")), (-rps, w("e1 e2 e1")), (rs, w("e2 e1 e1"))])))
    out.append(("serre-F-1,2", alg.combo([(rs, w("f1 f1 f2")), (-rps, w("f1 f2 f1")), (ONE, w("f2 f1 f1"))])))
    out.append(("serre-E-2,3", alg.combo([(ONE, w("e2 e3 e3")), (-rps, w("e3 e2 e3")), (rs, w("e3 e3 e2"))])))
    out.append(("serre-F-2,3", alg.combo([(rs, w("f2 f3 f3")), (-rps, w("f3 f2 f3")), (ONE, w("f3 f3 f2"))])))
    out.append(("commute-E-1,3", alg.combo([(ONE, w("e1 e3")), (-ONE, w("e3 e1"))])))
    out.append(("commute-F-1,3", alg.combo([(ONE, w("f1 f3")), (-ONE, w("f3 f1"))])))
    out.append(("e2^2", alg.word(w("e2 e2"))))
    out.append(("f2^2", alg.word(w("f2 f2"))))
    base = S.inverse() - R.inverse()
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            ei, fj = alg.g("e", i), alg.g("f", j)
            lhs = ei @ fj + fj @ ei if i == j == 2 else ei @ fj - fj @ ei
            if i == j:
                rhs = _scale(alg.g("k", i) - alg.g("l", i), alg.scalar(base * bracket_sign(i, convention)))
            else:
                rhs = alg.zero
            out.append((f"[e{i},f{j}]", lhs - rhs))
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            c, d = C_MATRIX[i - 1][j - 1], D_MATRIX[i - 1][j - 1]
            kj, kj_inv = alg.g("k", j), alg.g("k", j, -1)
            lj, lj_inv = alg.g("l", j), alg.g("l", j, -1)
            ei, fi = alg.g("e", i), alg.g("f", i)
            out.append((f"k{j}e{i}k{j}^-1", kj @ ei @ kj_inv - _scale(ei, alg.scalar(c))))
            out.append((f"k{j}f{i}k{j}^-1", kj @ fi @ kj_inv - _scale(fi, alg.scalar(c.inverse()))))
            out.append((f"l{j}f{i}l{j}^-1", lj @ fi @ lj_inv - _scale(fi, alg.scalar(d))))
            out.append((f"l{j}e{i}l{j}^-1", lj @ ei @ lj_inv - _scale(ei, alg.scalar(d.inverse()))))
    for a, b in itertools.combinations([(sym, i) for sym in "kl" for i in (1, 2, 3)], 2):
        ga, gb = alg.g(*a), alg.g(*b)
        out.append((f"{a[0]}{a[1]}{b[0]}{b[1]}-commute", ga @ gb - gb @ ga))
    for sym in "kl":
        for i in (1, 2, 3):
            out.append((f"{sym}{i}{sym}{i}^-1", alg.g(sym, i) @ alg.g(sym, i, -1) - alg.identity))
    return out


def _exact_algebra(rep: ShiftRep) -> _Algebra:
    return _Algebra(rep.images, RationalFunction.coerce, ShiftOpMatrix.identity(), ShiftOpMatrix.zero())


def p_eigen_constant() -> RationalFunction:
    """(1 - r^-1 s)(1 - r s^-1)(r^-1 s - 1)^2."""
    a = ONE - S / R
    return a * (ONE - R / S) * (S / R - ONE) ** 2


def root_vector_e14(rep: ShiftRep) -> ShiftOpMatrix:
    """e14 built from e1, e2, e3 through e13."""
    e1, e2, e3 = (rep.letter(GenLetter("e", i, i)) for i in (1, 2, 3))
    e13 = ((e1 @ e2).scale(S.inverse()) - e2 @ e1).scale(RS / (R - S))
    return ((e13 @ e3).scale(R.inverse()) - e3 @ e13).scale(RS / (S - R))


PRINTED_FACTOR = -RS / (R - S) ** 2
FACTOR = -(R - S) ** 2 / RS


def P_factored(rep: ShiftRep, factor: RationalFunction = FACTOR) -> ShiftOpMatrix:
    """factor * (e14 e2 + e2 e14).

    Expanding with e2^2 = 0 and e1 e3 = e3 e1 gives P = -(r - s)^2/(rs) (e14 e2 + e2 e14);
    the commonly printed factor -rs/(r - s)^2 is its reciprocal.
    """
    e2 = rep.letter(GenLetter("e", 2, 2))
    e14 = root_vector_e14(rep)
    return (e14 @ e2 + e2 @ e14).scale(factor)


def check_extension_relations(rep: ShiftRep | None = None) -> CheckReport:
    """Defining relations vanish exactly; the oscillator words do not; records the forced bracket sign."""
    rep = rep or pi_x()
    b = ReportBuilder("extension-relations", rep=rep.label)
    alg = _exact_algebra(rep)
    forced = [conv for conv in ("index", "odd-generator")
              if all(m.is_zero() for name, m in relation_residuals(alg, conv) if name.startswith("[e"))]
    b.details["bracket_convention"] = forced
    b.expect("bracket-convention", bool(forced), "no parity convention satisfies [e_i, f_i]")
    for name, m in relation_residuals(alg, forced[0] if forced else "index"):
        b.expect(name, m.is_zero(), f"residual nnz={m.nnz()}", value=m.nnz())
    for letter in all_letters():
        want = letter_parity(letter)
        got = rep.letter(letter).parity()
        b.expect(f"parity-{letter}", got == want, f"parity {got}, expected {want}")
    P, Q = rep.element(P_elem()), rep.element(Q_elem())
    b.details["P_nnz"], b.details["Q_nnz"] = P.nnz(), Q.nnz()
    if rep.label == "pi_x":
        b.expect("oscillator-P-nonzero", not P.is_zero(), "P vanishes, so the extension is not visible")
    else:
        b.expect("oscillator-Q-nonzero", not Q.is_zero(), "Q vanishes, so the extension is not visible")
    return b.build()


def check_qc2(rep: ShiftRep | None = None) -> CheckReport:
    """P g = theta(g) g P and Q g = tau(g) g Q for every generator letter g."""
    rep = rep or pi_x()
    b = ReportBuilder("qc2", rep=rep.label)
    P, Q = rep.element(P_elem()), rep.element(Q_elem())
    for letter in all_letters():
        g = rep.letter(letter)
        th, _ = theta((letter,))
        ta, _ = tau((letter,))
        r1 = P @ g - (g @ P).scale(th)
        r2 = Q @ g - (g @ Q).scale(ta)
        b.expect(f"P{letter}", r1.is_zero(), f"residual nnz={r1.nnz()}", value=r1.nnz())
        b.expect(f"Q{letter}", r2.is_zero(), f"residual nnz={r2.nnz()}", value=r2.nnz())
    b.details["P_zero"], b.details["Q_zero"] = P.is_zero(), Q.is_zero()
    b.details["letters"] = len(all_letters())
    if rep.label == "pi_x":
        b.expect("Q=0", Q.is_zero(), f"pi_x(Q) has {Q.nnz()} terms")
    return b.build()


def check_P_eigenvalue() -> CheckReport:
    """pi_x(P) = x (1 - r^-1 s)(1 - r s^-1)(r^-1 s - 1)^2 mu Id, and equals the factored form."""
    rep = pi_x()
    b = ReportBuilder("P-eigenvalue", rep=rep.label)
    P = rep.element(P_elem())
    expected = ShiftOpMatrix({(i, i): {(1, 0): X * p_eigen_constant()} for i in range(4)})
    diff = P - expected
    b.expect("P-x*const*mu*Id", diff.is_zero(), f"residual nnz={diff.nnz()}", value=diff.nnz())
    b.expect("degrees", P.degrees() == {(1, 0)}, f"degrees {sorted(P.degrees())}")
    fac = P_factored(rep) - P
    b.expect("factored-form", fac.is_zero(), f"residual nnz={fac.nnz()}", value=fac.nnz())
    printed = P_factored(rep, PRINTED_FACTOR)
    ratios = {format_scalar(P.entries[pos][(1, 0)] / printed.entries[pos][(1, 0)])
              for pos in P.entries if pos in printed.entries and (1, 0) in printed.entries[pos]}
    b.details["printed_factor_ratio"] = sorted(ratios)
    b.expect("x=0", P.substitute_x(0).is_zero(), "P does not vanish at x = 0")
    return b.build()


def check_vector_rep_oscillators() -> CheckReport:
    """The P and Q words vanish in the vector representation of U_{r,s}(gl(2,2)) and its square."""
    from .reps import tensor_reps

    b = ReportBuilder("oscillator-vector", M=2, N=2)
    P, Q = oscillator_words(2)
    V = vector_rep(2, 2)
    for rep in (V, tensor_reps(V, V)):
        G = dj_generators(rep)
        for tag, combo in (("P", P), ("Q", Q)):
            mat = rep.zero()
            for c, names in combo:
                m = rep.identity()
                for nm in names:
                    m = m @ G[nm]
                mat = mat + m.scale(c)
            b.matrix_zero(f"{tag} on {rep.label}", mat)
    return b.build()


# -- root-of-unity quotients ---------------------------------------------------

def vell_point(ell: int, x: complex = 1.0) -> dict:
    """r = 2 zeta, s = zeta / 2 with zeta = exp(i pi / ell): rs is a primitive ell-th root of unity."""
    zeta = cmath.exp(1j * cmath.pi / ell)
    return {"r": 2 * zeta, "s": zeta / 2, "x": complex(x)}


def validate_vell_point(point: dict, ell: int) -> list[str]:
    problems = []
    rs = point["r"] * point["s"]
    if abs(rs ** ell - 1) >= 1e-9:
        problems.append(f"(rs)^{ell} = {rs ** ell:.3g} is not 1")
    for k in range(1, ell):
        if abs(rs ** k - 1) <= 1e-6:
            problems.append(f"rs is not primitive: (rs)^{k} = 1")
    q = point["r"] / point["s"]
    for k in range(1, 25):
        if abs(q ** k - 1) <= 1e-6:
            problems.append(f"r/s is a {k}-th root of unity")
            break
    if abs(point.get("x", 1)) == 0:
        problems.append("x must be nonzero")
    return problems


def specialize_vell(ell: int, point: dict, rep: ShiftRep | None = None) -> dict:
    """Numeric 4l x 4l matrices for every generator letter on V^l."""
    problems = validate_vell_point(point, ell)
    if problems:
        raise ExtensionError("; ".join(problems))
    rep = rep or pi_x()
    return {key: m.to_numeric(point, ell) for key, m in rep.images.items()}


def irreducibility_commutant(matrices, tol: float = 1e-9) -> tuple[int | None, dict]:
    """Dimension of {X : X g = g X for all g}; None when the rank is ambiguous."""
    mats = [np.asarray(m, dtype=complex) for m in matrices]
    n = mats[0].shape[0]
    ident = np.eye(n)
    # vec(Xg - gX) = (g^T (x) 1 - 1 (x) g) vec(X) for column-major vec
    system = np.vstack([np.kron(g.T, ident) - np.kron(ident, g) for g in mats])
    sv = np.linalg.svd(system, compute_uv=False)
    scale = max(sv[0], 1.0) if sv.size else 1.0
    cut = tol * scale * n
    info = {"smallest_singular_values": [float(x) for x in sorted(sv)[:4]], "cut": cut}
    ambiguous = [float(x) for x in sv if cut / 10 < x < cut * 10]
    if ambiguous:
        info["ambiguous"] = ambiguous
        return None, info
    nullity = int(np.sum(sv <= cut)) + (n * n - sv.size)
    return nullity, info


def check_vell(ell: int, x: complex = 1.0, tol: float = 1e-9, point: dict | None = None) -> CheckReport:
    b = ReportBuilder("vell", tol=tol, ell=ell, x=x)
    point = point or vell_point(ell, x)
    problems = validate_vell_point(point, ell)
    if problems:
        b.expect("parameters", False, "; ".join(problems))
        return b.build()
    rep = pi_x()
    gens = specialize_vell(ell, point, rep)
    dim = 4 * ell
    alg = _Algebra(gens, lambda c: complex(RationalFunction.coerce(c).evaluate(point)),
                   np.eye(dim, dtype=complex), np.zeros((dim, dim), dtype=complex))
    worst = 0.0
    for name, m in relation_residuals(alg, "index"):
        err = float(np.max(np.abs(m)))
        worst = max(worst, err)
        if err > tol:
            b.expect(name, False, f"residual {err:.3e}", value=err)
    b.residual["relations-max"] = worst
    dimension, info = irreducibility_commutant(list(gens.values()), tol)
    b.details["commutant"] = info
    b.details["commutant_dim"] = dimension
    if dimension is None:
        b.inconclusive.append("commutant rank is ambiguous")
    else:
        b.expect("commutant-dim", dimension == 1, f"commutant dimension {dimension}", value=dimension)
    Pnum = rep.element(P_elem()).to_numeric(point, ell)
    rs = point["r"] * point["s"]
    const = complex(p_eigen_constant().evaluate(point)) * point["x"]
    expected = sorted((const * rs ** (-n) for n in range(1, ell + 1)), key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    eig = np.linalg.eigvals(Pnum)
    # P is diagonal on V^l: each expected value appears on the four vectors of a mode
    diag_err = float(np.max(np.abs(Pnum - np.diag(np.diag(Pnum)))))
    b.expect("P-diagonal", diag_err <= tol, f"off-diagonal {diag_err:.3e}", value=diag_err)
    eig_err = max(min(abs(e - want) for want in expected) for e in eig)
    cover_err = max(min(abs(e - want) for e in eig) for want in expected)
    b.expect("P-eigenvalues", max(eig_err, cover_err) <= tol, f"eigenvalue mismatch {max(eig_err, cover_err):.3e}",
             value=max(eig_err, cover_err))
    b.expect("P-nonzero", min(abs(v) for v in expected) > tol, "an eigenvalue of P vanishes")
    cyc = abs(rs ** (4 * ell) - 1)
    b.expect("(rs)^(4l)=1", cyc <= tol, f"|(rs)^(4l) - 1| = {cyc:.3e}", value=cyc)
    b.details["dimension"] = dim
    b.details["P_eigenvalues"] = [[z.real, z.imag] for z in expected]
    return b.build()
