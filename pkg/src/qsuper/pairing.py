"""Generator words, coproducts and the recursive Hopf pairing.

Two dialects are supported: RTT letters ``s_ij`` (i <= j), ``t_ji``
(j >= i) with inverses of the diagonal ones, and Drinfeld-Jimbo letters
``e_i, k_i^{+-1}`` (upper side) and ``f_i, l_i^{+-1}`` (lower side).

The pairing of two words is computed from its values on letters with the
Hopf pairing axioms

    phi(a, b1 b2)  = phi_2(Delta(a), b1 (x) b2)
    phi(a1 a2, b)  = (-1)^{|a1||a2|} phi_2(a2 (x) a1, Delta(b))
    phi_2(a1 (x) a2, b1 (x) b2) = (-1)^{|a2||b1|} phi(a1, b1) phi(a2, b2)

and the counit on empty words.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable

from .perk_schultz import index_parity, rmatrix_coefficients, validate_size
from .scalars import ONE, ZERO, R, S, RationalFunction

UPPER, LOWER = "upper", "lower"
RTT, DJ = "rtt", "dj"


class PairingError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class GenLetter:
    """One generator, e.g. ``s_12``, ``t_11^-1`` or ``e_2``.

    For RTT letters ``first, second`` are the printed subscripts (s_ij has
    first=i, second=j; t_ji has first=j, second=i).  Drinfeld-Jimbo letters
    use ``first = second = i``.
    """

    symbol: str
    first: int
    second: int
    exponent: int = 1

    @property
    def dialect(self) -> str:
        return RTT if self.symbol in "st" else DJ

    @property
    def side(self) -> str:
        return UPPER if self.symbol in "sek" else LOWER

    @property
    def is_torus(self) -> bool:
        return self.symbol in "kl" or (self.symbol in "st" and self.first == self.second)

    def inverse(self) -> "GenLetter":
        if not self.is_torus:
            raise PairingError(f"{self} is not invertible")
        return GenLetter(self.symbol, self.first, self.second, -self.exponent)

    def __str__(self):
        sub = f"{self.first}{self.second}" if self.dialect == RTT else f"{self.first}"
        return f"{self.symbol}{sub}" + ("^-1" if self.exponent == -1 else "")


GenWord = tuple  # tuple[GenLetter, ...]


def s(i, j, exponent=1) -> GenLetter:
    return GenLetter("s", i, j, exponent)


def t(j, i, exponent=1) -> GenLetter:
    return GenLetter("t", j, i, exponent)


def word_str(w: GenWord) -> str:
    return " ".join(str(x) for x in w) if w else "1"


_LETTER_RE = re.compile(r"^([stabefkl])(\d)(\d)?(?:\^(-?1))?$")


def parse_word(text: str) -> GenWord:
    """Parse e.g. ``"s11^-1 s12"``, ``"t21 t11^-1"``, ``"a12 a23"`` or ``"e1 k2^-1"``.

    ``a_ij`` expands to ``s_ii^-1 s_ij`` and ``b_ji`` to ``t_ji t_ii^-1``.
    """
    letters = []
    for tok in text.replace("*", " ").split():
        m = _LETTER_RE.match(tok)
        if not m:
            raise PairingError(f"cannot parse letter {tok!r}")
        sym, d1, d2, ex = m.groups()
        exponent = int(ex) if ex else 1
        if sym in "stab":
            if d2 is None:
                raise PairingError(f"{tok!r} needs two indices")
            a, b = int(d1), int(d2)
            if sym == "a":
                letters += [s(a, a, -1), s(a, b)]
                continue
            if sym == "b":
                letters += [t(a, b), t(b, b, -1)]
                continue
            letter = GenLetter(sym, a, b, exponent)
        else:
            if d2 is not None:
                raise PairingError(f"{tok!r} takes one index")
            letter = GenLetter(sym, int(d1), int(d1), exponent)
        if exponent == -1 and not letter.is_torus:
            raise PairingError(f"{tok!r}: only torus letters are invertible")
        letters.append(letter)
    return tuple(letters)


# c_ij for U_{r,s}(sl(2,2)) as printed: K_j E_i K_j^-1 = c_ij E_i
C_MATRIX = (
    (R.inverse() * S, S.inverse(), ONE),
    (R, ONE, R.inverse()),
    (ONE, S, R * S.inverse()),
)
D_MATRIX = (
    (R.inverse() * S, R, ONE),
    (S.inverse(), ONE, S),
    (ONE, R.inverse(), R * S.inverse()),
)


class HopfPairing:
    """Pairing oracle for one algebra; results are memoized per instance.

    ``dialect='rtt'`` works for any (M, N).  ``dialect='dj'`` uses the
    Drinfeld-Jimbo letters of the extension of U_{r,s}(sl(2,2)), so it
    requires (M, N) = (2, 2).
    """

    def __init__(self, M: int, N: int, dialect: str = RTT):
        validate_size(M, N)
        if dialect == DJ and (M, N) != (2, 2):
            raise PairingError("the Drinfeld-Jimbo dialect is implemented for (M, N) = (2, 2)")
        self.M, self.N, self.dialect = M, N, dialect
        self.n = M + N
        self._rcoef = rmatrix_coefficients(M, N) if dialect == RTT else None
        self._memo: dict = {}
        self._delta_memo: dict = {}

    # -- letter data -------------------------------------------------------
    def parity(self, x: GenLetter) -> int:
        if x.dialect == RTT:
            return (index_parity(self.M, x.first) + index_parity(self.M, x.second)) % 2
        return 1 if x.symbol in "ef" and x.first == self.M else 0

    def word_parity(self, w: GenWord) -> int:
        return sum(self.parity(x) for x in w) % 2

    def letter_weight(self, x: GenLetter) -> tuple[int, ...]:
        w = [0] * self.n
        if x.is_torus:
            return tuple(w)
        if x.dialect == RTT:
            # s_ij has weight e_i - e_j and t_ji has weight e_j - e_i: e_first - e_second in both cases
            w[x.first - 1] += 1
            w[x.second - 1] -= 1
        else:
            sgn = 1 if x.symbol == "e" else -1
            w[x.first - 1] += sgn
            w[x.first] -= sgn
        return tuple(w)

    def word_weight(self, w: GenWord) -> tuple[int, ...]:
        total = [0] * self.n
        for x in w:
            for k, v in enumerate(self.letter_weight(x)):
                total[k] += v
        return tuple(total)

    def check_letter(self, x: GenLetter) -> None:
        if x.dialect != self.dialect:
            raise PairingError(f"letter {x} does not belong to the {self.dialect} dialect")
        if x.dialect == RTT:
            lo, hi = (x.first, x.second) if x.symbol == "s" else (x.second, x.first)
            if not 1 <= lo <= hi <= self.n:
                raise PairingError(f"letter {x} out of range")
        elif not 1 <= x.first <= self.n - 1:
            raise PairingError(f"letter {x} out of range")

    def counit(self, w: GenWord) -> RationalFunction:
        return ONE if all(x.is_torus for x in w) else ZERO

    # -- coproduct ---------------------------------------------------------
    def letter_coproduct(self, x: GenLetter) -> list[tuple[GenWord, GenWord, RationalFunction]]:
        if x.is_torus:
            return [((x,), (x,), ONE)]
        if x.symbol == "s":
            i, j = x.first, x.second
            return [((s(i, k),), (s(k, j),), ONE) for k in range(i, j + 1)]
        if x.symbol == "t":
            j, i = x.first, x.second
            return [((t(j, k),), (t(k, i),), ONE) for k in range(i, j + 1)]
        i = x.first
        if x.symbol == "e":
            return [((), (x,), ONE), ((x,), (GenLetter("k", i, i),), ONE)]
        # f_i
        return [((GenLetter("l", i, i),), (x,), ONE), ((x,), (), ONE)]

    def coproduct(self, w: GenWord) -> dict:
        """Delta of a word as {(left word, right word): coefficient}, with Koszul signs."""
        w = tuple(w)
        if w in self._delta_memo:
            return self._delta_memo[w]
        if not w:
            result = {((), ()): ONE}
        elif len(w) == 1:
            result = {}
            for a, b, c in self.letter_coproduct(w[0]):
                result[(a, b)] = result.get((a, b), ZERO) + c
        else:
            left = self.coproduct(w[:-1])
            last = self.coproduct(w[-1:])
            result = {}
            for (a, b), c in left.items():
                pb = self.word_parity(b)
                for (a2, b2), c2 in last.items():
                    coeff = c * c2
                    if pb and self.word_parity(a2):
                        coeff = -coeff
                    key = (a + a2, b + b2)
                    result[key] = result.get(key, ZERO) + coeff
        result = {k: v for k, v in result.items() if v}
        self._delta_memo[w] = result
        return result

    # -- pairing -----------------------------------------------------------
    def base_pairing(self, a: GenLetter, b: GenLetter) -> RationalFunction:
        if a.side != UPPER or b.side != LOWER:
            raise PairingError("base_pairing takes an upper letter and a lower letter")
        self.check_letter(a)
        self.check_letter(b)
        if a.dialect == RTT:
            if a.exponent == -1 or b.exponent == -1:
                if not (a.is_torus and b.is_torus):
                    return ZERO
                plain = self._rcoef.get(((b.first - 1, b.second - 1), (a.first - 1, a.second - 1)), ZERO)
                return plain ** (a.exponent * b.exponent)
            # phi(s_ij, t_kl) is the coefficient of E_kl (x) E_ij in R
            return self._rcoef.get(((b.first - 1, b.second - 1), (a.first - 1, a.second - 1)), ZERO)
        if a.symbol == "e" and b.symbol == "f":
            if a.first != b.first:
                return ZERO
            sign = -1 if index_parity(self.M, a.first) else 1
            return (S.inverse() - R.inverse()) * sign
        if a.symbol == "k" and b.symbol == "l":
            return C_MATRIX[a.first - 1][b.first - 1] ** (-a.exponent * b.exponent)
        return ZERO

    def pair(self, a: GenWord, b: GenWord, order: str = "b_first") -> RationalFunction:
        """phi(a, b) for an upper word ``a`` and a lower word ``b``.

        ``order`` selects which argument is split first when both have
        length >= 2 ('b_first' or 'a_first'); both must agree.
        """
        a, b = tuple(a), tuple(b)
        for x in a:
            self.check_letter(x)
            if x.side != UPPER:
                raise PairingError(f"left word contains lower letter {x}")
        for y in b:
            self.check_letter(y)
            if y.side != LOWER:
                raise PairingError(f"right word contains upper letter {y}")
        return self._pair(a, b, order)

    def _pair(self, a: GenWord, b: GenWord, order: str) -> RationalFunction:
        key = (a, b, order)
        memo = self._memo
        if key in memo:
            return memo[key]
        if not b:
            val = self.counit(a)
        elif not a:
            val = self.counit(b)
        elif len(a) == 1 and len(b) == 1:
            val = self.base_pairing(a[0], b[0])
        elif len(b) >= 2 and (len(a) == 1 or order == "b_first"):
            b1, rest = b[:1], b[1:]
            pb1 = self.word_parity(b1)
            val = ZERO
            for (a1, a2), c in self.coproduct(a).items():
                first = self._pair(a1, b1, order)
                if not first:
                    continue
                second = self._pair(a2, rest, order)
                if not second:
                    continue
                term = c * first * second
                if pb1 and self.word_parity(a2):
                    term = -term
                val = val + term
        else:
            a1, a2 = a[:1], a[1:]
            pa1 = self.word_parity(a1)
            outer = pa1 and self.word_parity(a2)
            val = ZERO
            for (b1, b2), c in self.coproduct(b).items():
                first = self._pair(a2, b1, order)
                if not first:
                    continue
                second = self._pair(a1, b2, order)
                if not second:
                    continue
                term = c * first * second
                if pa1 and self.word_parity(b1):
                    term = -term
                val = val + term
            if outer:
                val = -val
        memo[key] = val
        return val


def pair_words(M: int, N: int, left, right, dialect: str = RTT, order: str = "b_first") -> RationalFunction:
    """Convenience wrapper accepting word strings or letter tuples."""
    oracle = HopfPairing(M, N, dialect)
    if isinstance(left, str):
        left = parse_word(left)
    if isinstance(right, str):
        right = parse_word(right)
    return oracle.pair(left, right, order)


def words_of_length(letters: Iterable[GenLetter], n: int) -> list[GenWord]:
    return [tuple(w) for w in itertools.product(list(letters), repeat=n)]
