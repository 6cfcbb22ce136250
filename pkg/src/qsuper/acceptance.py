"""The eleven acceptance criteria, each aggregated into one report."""
from __future__ import annotations

import random
import time

from .extension_sl22 import check_extension_relations, check_P_eigenvalue, check_qc2, check_vell
from .pairing import C_MATRIX, D_MATRIX
from .pbw import check_orthogonality, check_root_pairing
from .perk_schultz import check_construction, check_qybe, check_transpose_identity
from .report import CheckReport, ReportBuilder
from .reps import (
    check_dj_relations,
    check_root_vector_induction,
    check_rtt,
    dj_generators,
    named_rep,
    random_point,
    vector_rep,
)
from .scalars import (
    ONE,
    ZERO,
    LaurentPoly,
    RationalFunction,
    close,
    parse_scalar,
    quantum_factorial,
    quantum_int,
)
from .universal_r import check_vector_r_matrix, check_rplus_forms, check_braiding

QYBE_SIZES = ((1, 1), (2, 1), (1, 2), (2, 2), (3, 0), (0, 3))
ALL_SIZES = tuple((m, n) for m in range(5) for n in range(5) if 1 <= m + n <= 4)

# (c_ij) and (d_ij) as printed, row i, column j
PRINTED_C = (("r^-1*s", "s^-1", "1"), ("r", "1", "r^-1"), ("1", "s", "r*s^-1"))
PRINTED_D = (("r^-1*s", "r", "1"), ("s^-1", "1", "s"), ("1", "r^-1", "r*s^-1"))


def _combine(check_id: str, make_parts, limit_s: float | None = None) -> CheckReport:
    """Run ``make_parts()`` under one timer and fold its reports into a single one."""
    b = ReportBuilder(check_id)
    parts = make_parts()
    for p in parts:
        tag = f"{p.check_id}[{','.join(f'{k}={v}' for k, v in sorted(p.parameters.items()))}]"
        if p.status == "fail":
            b.failures.append(f"{tag}: {p.witness}")
        elif p.status == "inconclusive":
            b.inconclusive.append(tag)
        b.residual[tag] = p.status
    b.details["parts"] = [p.line() for p in parts]
    if limit_s is not None:
        elapsed = time.perf_counter() - b._start
        b.details["elapsed_s"] = round(elapsed, 3)
        b.expect("runtime", elapsed < limit_s, f"{elapsed:.1f} s exceeds {limit_s} s", value=round(elapsed, 3))
    return b.build()


def criterion_01() -> CheckReport:
    return _combine("criterion-01-qybe", lambda: [check_qybe(m, n) for m, n in QYBE_SIZES], limit_s=30)


def criterion_02() -> CheckReport:
    return _combine("criterion-02-construction", lambda: [check_construction(m, n) for m, n in QYBE_SIZES])


def criterion_03() -> CheckReport:
    return _combine("criterion-03-transpose",
                    lambda: [check_transpose_identity(m, n) for m, n in ((1, 1), (2, 2))])


def criterion_04() -> CheckReport:
    return _combine("criterion-04-rtt", lambda: [
        check_rtt(named_rep(m, n, name)) for m, n in ((1, 1), (2, 2)) for name in ("vector", "vector^2")])


def criterion_05() -> CheckReport:
    sizes = ((1, 1, 3), (2, 1, 3), (2, 0, 3), (2, 2, 2))
    return _combine("criterion-05-orthogonality", lambda: [check_orthogonality(m, n, cap) for m, n, cap in sizes],
                    limit_s=300)


def criterion_06() -> CheckReport:
    return _combine("criterion-06-root-pairing", lambda: [check_root_pairing(m, n) for m, n in ALL_SIZES])


def check_cd_tables() -> CheckReport:
    """c_ij and d_ij read off the vector representation against the printed tables.

    For diagonal K with entries k_a, (K E K^-1)_ab = (k_a / k_b) E_ab, so each
    nonzero entry of E_i yields a measurement of c_ij (via K_j) or d_ij^-1 (via L_j).
    """
    b = ReportBuilder("cd-tables", M=2, N=2)
    G = dj_generators(vector_rep(2, 2))
    for name, table, printed, torus in (("c", C_MATRIX, PRINTED_C, "K"), ("d", D_MATRIX, PRINTED_D, "L")):
        for i in range(3):
            for j in range(3):
                want = parse_scalar(printed[i][j])
                b.expect(f"{name}{i + 1}{j + 1}-table", table[i][j] == want, f"stored {table[i][j]} printed {want}")
                diag = G[f"{torus}{j + 1}"].entries
                measured = {diag[(a, a)] / diag[(c, c)] for a, c in G[f"E{i + 1}"].entries}
                expect = want if torus == "K" else want.inverse()
                b.expect(f"{name}{i + 1}{j + 1}-measured", measured == {expect},
                         f"measured {sorted(map(str, measured))} expected {expect}")
    return b.build()


def criterion_07() -> CheckReport:
    def parts():
        V = vector_rep(2, 2)
        V2 = named_rep(2, 2, "vector^2")
        return [check_dj_relations(V), check_dj_relations(V2),
                check_root_vector_induction(V), check_root_vector_induction(V2), check_cd_tables()]
    return _combine("criterion-07-drinfeld-jimbo", parts)


def criterion_08() -> CheckReport:
    def parts():
        out = []
        for m, n in ((1, 1), (2, 1), (2, 2)):
            V = vector_rep(m, n)
            out += [check_rplus_forms(V, V), check_vector_r_matrix(m, n)]
        for m, n in ((1, 1), (2, 2)):
            V = vector_rep(m, n)
            out.append(check_braiding(V, V, V))
        return out
    return _combine("criterion-08-universal-r", parts, limit_s=120)


def criterion_09() -> CheckReport:
    return _combine("criterion-09-extension", lambda: [check_extension_relations(), check_qc2(), check_P_eigenvalue()])


def criterion_10() -> CheckReport:
    return _combine("criterion-10-root-of-unity", lambda: [check_vell(ell) for ell in (1, 2, 3)])


# -- scalar properties ---------------------------------------------------------

def random_laurent(rng: random.Random, terms: int = 3, spread: int = 2) -> LaurentPoly:
    out = {}
    for _ in range(rng.randint(1, terms)):
        exps = tuple(rng.randint(-spread, spread) for _ in range(3))
        out[exps] = out.get(exps, 0) + rng.choice([-3, -2, -1, 1, 2, 3])
    p = LaurentPoly(out)
    return p if p else LaurentPoly.const(1)


def random_rational(rng: random.Random) -> RationalFunction:
    num = random_laurent(rng)
    den = random_laurent(rng, terms=2)
    return RationalFunction(num, den)


def _field_axioms(rng):
    a, b, c = random_rational(rng), random_rational(rng), random_rational(rng)
    ok = (a + b == b + a and a * b == b * a and (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
          and a * (b + c) == a * b + a * c and a + ZERO == a and a * ONE == a and a - a == ZERO)
    if a:
        ok = ok and a * a.inverse() == ONE and (b / a) * a == b
    return ok


def _evaluate_hom(rng):
    a, b = random_rational(rng), random_rational(rng)
    point = random_point(rng.randrange(10 ** 9))
    ea, eb = a.evaluate(point), b.evaluate(point)
    ok = close((a + b).evaluate(point), ea + eb) and close((a * b).evaluate(point), ea * eb)
    if a:
        ok = ok and close(a.inverse().evaluate(point), 1 / ea)
    return ok


def _quantum_int(rng):
    m, n = rng.randint(0, 8), rng.randint(0, 8)
    u = rng.choice([ONE, -ONE, RationalFunction(random_laurent(rng, terms=2))])
    ok = quantum_int(m, u) * (ONE - u) == ONE - u ** m
    ok = ok and quantum_int(m + n, u) == quantum_int(m, u) + u ** m * quantum_int(n, u)
    ok = ok and quantum_int(m, ONE) == RationalFunction.coerce(m)
    if m >= 1:
        ok = ok and quantum_factorial(m, u) == quantum_factorial(m - 1, u) * quantum_int(m, u)
    if m >= 2:
        ok = ok and quantum_factorial(m, -ONE) == ZERO
    return ok


SCALAR_PROPERTIES = {"field-axioms": _field_axioms, "evaluate-homomorphism": _evaluate_hom,
                     "quantum-int": _quantum_int}


def check_scalar_properties(seed: int = 0, cases: int = 500) -> CheckReport:
    b = ReportBuilder("scalar-properties", seed=seed, cases=cases)
    for name, prop in SCALAR_PROPERTIES.items():
        rng = random.Random(f"{seed}:{name}")
        failures = [k for k in range(cases) if not prop(rng)]
        b.expect(name, not failures, f"{len(failures)} failing cases, first #{failures[0]}" if failures else "",
                 value=len(failures))
    return b.build()


def criterion_11(seed: int = 0) -> CheckReport:
    return _combine("criterion-11-scalars", lambda: [check_scalar_properties(seed)])


CRITERIA = {
    "criterion-01-qybe": criterion_01,
    "criterion-02-construction": criterion_02,
    "criterion-03-transpose": criterion_03,
    "criterion-04-rtt": criterion_04,
    "criterion-05-orthogonality": criterion_05,
    "criterion-06-root-pairing": criterion_06,
    "criterion-07-drinfeld-jimbo": criterion_07,
    "criterion-08-universal-r": criterion_08,
    "criterion-09-extension": criterion_09,
    "criterion-10-root-of-unity": criterion_10,
    "criterion-11-scalars": criterion_11,
}


def run_criterion(name: str) -> CheckReport:
    return CRITERIA[name]()
