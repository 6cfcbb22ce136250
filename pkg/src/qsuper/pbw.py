"""PBW index set, ordered monomials and the closed-form pairing on them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .pairing import HopfPairing, s, t
from .perk_schultz import index_parity, validate_size
from .report import CheckReport, ReportBuilder
from .scalars import ONE, ZERO, R, S, RationalFunction, format_scalar, quantum_factorial


class PBWError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class RootPair:
    i: int
    j: int

    def parity(self, M: int) -> int:
        return (index_parity(M, self.i) + index_parity(M, self.j)) % 2

    def __str__(self):
        return f"({self.i},{self.j})"


def root_pairs(M: int, N: int) -> list[RootPair]:
    """All (i, j) with i < j in increasing order; dataclass ordering is the PBW order."""
    n = M + N
    return [RootPair(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


@dataclass(frozen=True)
class PBWIndex:
    """Exponents on root pairs, stored as sorted (root, exponent) items with exponent > 0."""

    items: tuple = ()

    @classmethod
    def from_dict(cls, exps: dict, M: int | None = None) -> "PBWIndex":
        clean = []
        for key, n in exps.items():
            root = key if isinstance(key, RootPair) else RootPair(*key)
            if root.i >= root.j:
                raise PBWError(f"root pair {root} needs i < j")
            if n < 0:
                raise PBWError("exponents must be non-negative")
            if n:
                clean.append((root, n))
        f = cls(tuple(sorted(clean)))
        if M is not None:
            f.validate(M)
        return f

    def validate(self, M: int) -> None:
        for root, n in self.items:
            if root.parity(M) and n > 1:
                raise PBWError(f"odd root pair {root} has exponent {n} > 1")

    def get(self, root) -> int:
        root = root if isinstance(root, RootPair) else RootPair(*root)
        return dict(self.items).get(root, 0)

    @property
    def degree(self) -> int:
        return sum(n for _, n in self.items)

    def odd_count(self, M: int) -> int:
        return sum(n for root, n in self.items if root.parity(M))

    def __str__(self):
        if not self.items:
            return "0"
        return " ".join(f"{r}^{n}" for r, n in self.items)


def enumerate_gamma(M: int, N: int, cap: int) -> list[PBWIndex]:
    """Every valid index of total degree <= cap, ordered lexicographically by exponent vector."""
    validate_size(M, N)
    roots = root_pairs(M, N)
    bounds = [min(cap, 1) if r.parity(M) else cap for r in roots]
    out = []
    for vec in itertools.product(*(range(b + 1) for b in bounds)):
        if sum(vec) <= cap:
            out.append(PBWIndex.from_dict(dict(zip(roots, vec))))
    return out


def default_cap(M: int, N: int) -> int:
    return 3 if M + N <= 3 else 2


def monomial_word(f: PBWIndex, side: str, M: int) -> tuple:
    """a[f] (upper) or b[f] (lower): factors in descending PBW order.

    a_ij is the word s_ii^-1 s_ij and b_ji is t_ji t_ii^-1.
    """
    f.validate(M)
    letters = []
    for root, n in sorted(f.items, reverse=True):
        i, j = root.i, root.j
        if side == "upper":
            factor = (s(i, i, -1), s(i, j))
        elif side == "lower":
            factor = (t(j, i), t(i, i, -1))
        else:
            raise PBWError(f"unknown side {side!r}")
        letters.extend(factor * n)
    return tuple(letters)


def tau(i: int, j: int, M: int, N: int) -> RationalFunction:
    if not i < j:
        raise PBWError("tau(i, j) needs i < j")
    oracle = HopfPairing(M, N)
    sign = -1 if (index_parity(M, i) + index_parity(M, j)) % 2 else 1
    return (R * S).inverse() * oracle.base_pairing(s(i, i), t(i, i)) * oracle.base_pairing(s(j, j), t(j, j)) * sign


def root_pairing(i: int, M: int) -> RationalFunction:
    """phi(a_ij, b_ji) = (-1)^{|i|} (s^-1 - r^-1)."""
    val = S.inverse() - R.inverse()
    return -val if index_parity(M, i) else val


def closed_pairing(f: PBWIndex, g: PBWIndex, M: int, N: int) -> RationalFunction:
    """phi(a[f], b[g]) in closed form.

    Product over root pairs of (n)!_tau * phi(a_ij, b_ji)^n, times the
    Koszul sign (-1)^{e(e-1)/2} where e counts odd root factors.  The sign
    comes from reversing the order of the odd factors when the pairing of a
    product is split into a product of pairings.
    """
    if f != g:
        return ZERO
    f.validate(M)
    val = ONE
    for root, n in f.items:
        val = val * quantum_factorial(n, tau(root.i, root.j, M, N)) * root_pairing(root.i, M) ** n
    e = f.odd_count(M)
    if (e * (e - 1) // 2) % 2:
        val = -val
    return val


def check_orthogonality(M: int, N: int, cap: int | None = None, oracle: HopfPairing | None = None) -> CheckReport:
    """Oracle pairing of every (a[f], b[g]) with degree <= cap against the closed form."""
    cap = default_cap(M, N) if cap is None else cap
    rep = ReportBuilder("orthogonality", M=M, N=N, cap=cap)
    oracle = oracle or HopfPairing(M, N)
    gamma = enumerate_gamma(M, N, cap)
    words = [(f, monomial_word(f, "upper", M), monomial_word(f, "lower", M)) for f in gamma]
    mismatches = []
    nonzero_off_diagonal = 0
    for f, af, _ in words:
        for g, _, bg in words:
            expected = closed_pairing(f, g, M, N)
            got = oracle.pair(af, bg)
            if got != expected:
                if f != g:
                    nonzero_off_diagonal += 1
                mismatches.append(f"f=[{f}] g=[{g}]: oracle {format_scalar(got)} closed {format_scalar(expected)}")
    rep.details["indices"] = len(gamma)
    rep.details["pairs"] = len(gamma) ** 2
    rep.details["mismatches"] = mismatches
    rep.expect("mismatches", not mismatches, mismatches[0] if mismatches else "", value=len(mismatches))
    rep.expect("off-diagonal-nonzero", nonzero_off_diagonal == 0, value=nonzero_off_diagonal)
    return rep.build()


def check_root_pairing(M: int, N: int, oracle: HopfPairing | None = None) -> CheckReport:
    """Oracle phi(a_ij, b_ji) against (-1)^{|i|}(s^-1 - r^-1) for every i < j."""
    rep = ReportBuilder("root-pairing", M=M, N=N)
    oracle = oracle or HopfPairing(M, N)
    bad = []
    for root in root_pairs(M, N):
        f = PBWIndex.from_dict({root: 1})
        got = oracle.pair(monomial_word(f, "upper", M), monomial_word(f, "lower", M))
        want = root_pairing(root.i, M)
        if got != want:
            bad.append(f"{root}: oracle {format_scalar(got)} expected {format_scalar(want)}")
    rep.details["roots"] = len(root_pairs(M, N))
    rep.expect("values", not bad, "; ".join(bad[:3]), value=len(bad))
    return rep.build()
