"""The half quantum groups U_q^+ and U_q^- as graded word algebras.

Words are stored freely; the quantum Serre quotient is imposed through the
radical of the bilinear pairing between the two halves, so elements carry a
canonical per-degree coordinate form over pivot words.  The braided coproduct,
the pairing, the bar/star/transpose involutions and the quasi-derivations
live here.
"""
from __future__ import annotations

import threading
from itertools import permutations

from .cartan import CartanDatum, get_datum
from .scalar import (
    Rat,
    RAT_ONE,
    RAT_ZERO,
    nu_power,
    qangle,
    qangle_factorial,
    qround_factorial,
)
from . import linalg

PLUS = +1
MINUS = -1


class HalfElem:
    """Homogeneous-or-not element of U_q^+ or U_q^-, stored compressed.

    terms maps word tuples (index sequences) to Rat coefficients; every degree
    component is expressed over that degree's pivot words, so equality and
    zero tests are structural.
    """

    __slots__ = ("alg", "sign", "terms")

    def __init__(self, alg: "HalfAlgebra", sign: int, terms: dict, compressed=False):
        self.alg = alg
        self.sign = sign
        if not compressed:
            terms = alg._compress(sign, terms)
        self.terms = terms

    # -- ring structure -----------------------------------------------------
    def __add__(self, other: "HalfElem") -> "HalfElem":
        assert self.sign == other.sign and self.alg is other.alg
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, RAT_ZERO) + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return HalfElem(self.alg, self.sign, out, compressed=True)

    def __sub__(self, other: "HalfElem") -> "HalfElem":
        return self + other.scale(-1)

    def scale(self, c) -> "HalfElem":
        c = Rat.of(c)
        if c.is_zero():
            return HalfElem(self.alg, self.sign, {}, compressed=True)
        return HalfElem(
            self.alg, self.sign, {w: x * c for w, x in self.terms.items()}, compressed=True
        )

    def __mul__(self, other: "HalfElem") -> "HalfElem":
        assert self.sign == other.sign and self.alg is other.alg
        out: dict[tuple, Rat] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, RAT_ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        return HalfElem(self.alg, self.sign, out)

    def __pow__(self, n: int) -> "HalfElem":
        out = self.alg.unit(self.sign)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, HalfElem)
            and self.sign == other.sign
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return (self.sign, tuple(sorted(self.terms.items())))

    # -- grading --------------------------------------------------------------
    def degrees(self) -> list[tuple[int, ...]]:
        return sorted({self.alg.word_degree(w) for w in self.terms})

    def degree(self) -> tuple[int, ...]:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"element is not homogeneous: degrees {degs}")
        return degs[0]

    def component(self, gamma) -> "HalfElem":
        terms = {w: c for w, c in self.terms.items() if self.alg.word_degree(w) == gamma}
        return HalfElem(self.alg, self.sign, terms, compressed=True)

    def __repr__(self):
        return f"HalfElem({'E' if self.sign == PLUS else 'F'}: {format_half(self)})"


class HalfAlgebra:
    """Per-datum cache for words, pairing matrices and pivot bases.

    Caches follow a compute-once contract guarded by a lock so concurrent
    readers see fully built tables.
    """

    def __init__(self, datum):
        self.datum: CartanDatum = get_datum(datum)
        self._lock = threading.RLock()
        self._words: dict[tuple, list] = {}
        self._pairing: dict[tuple, dict] = {}
        self._basis: dict[tuple, "DegreeBasis"] = {}

    # -- constructors ---------------------------------------------------------
    def unit(self, sign: int) -> HalfElem:
        return HalfElem(self, sign, {(): RAT_ONE}, compressed=True)

    def zero(self, sign: int) -> HalfElem:
        return HalfElem(self, sign, {}, compressed=True)

    def gen(self, sign: int, i) -> HalfElem:
        i = self.datum.index(i)
        return HalfElem(self, sign, {(i,): RAT_ONE}, compressed=True)

    def word(self, sign: int, letters) -> HalfElem:
        w = tuple(self.datum.index(i) for i in letters)
        return self.element(sign, {w: RAT_ONE})

    def element(self, sign: int, terms: dict) -> HalfElem:
        return HalfElem(self, sign, {w: Rat.of(c) for w, c in terms.items()})

    def gen_divided(self, sign: int, i, n: int) -> HalfElem:
        """X_i^<n> = X_i^n / <n>_{q_i}!."""
        i = self.datum.index(i)
        c = Rat.of(1) / Rat.of(qangle_factorial(n, self.datum.qi_exp(i)))
        return self.element(sign, {(i,) * n: c})

    # -- word-level data --------------------------------------------------------
    def word_degree(self, w: tuple) -> tuple[int, ...]:
        out = [0] * self.datum.rank
        for i in w:
            out[i] += 1
        return tuple(out)

    def words_of_degree(self, gamma) -> list[tuple]:
        gamma = tuple(gamma)
        with self._lock:
            if gamma not in self._words:
                letters = []
                for i, m in enumerate(gamma):
                    letters.extend([i] * m)
                self._words[gamma] = sorted(set(permutations(letters)))
            return self._words[gamma]

    def chi_exp(self, alpha, beta) -> int:
        """nu-exponent of chi(alpha, beta) = q^(alpha.beta)."""
        return 2 * self.datum.dot(alpha, beta)

    def coproduct_word(self, w: tuple):
        """Deconcatenation coproduct of a word: list of (nu-power, left, right).

        The weight for the subset S of positions sent left is the product of
        chi(letter_a, letter_b) over pairs a not in S, b in S with a < b.
        """
        n = len(w)
        datum = self.datum
        out = []
        for mask in range(1 << n):
            left, right = [], []
            weight = 0
            right_deg = [0] * datum.rank
            for pos in range(n):
                letter = w[pos]
                if mask >> pos & 1:
                    left.append(letter)
                    weight += self.chi_exp(tuple(right_deg), datum.alpha(letter))
                else:
                    right.append(letter)
                    right_deg[letter] += 1
            out.append((weight, tuple(left), tuple(right)))
        return out

    def coproduct(self, x: HalfElem):
        """Coproduct of an element: dict (left word, right word) -> Rat."""
        out: dict[tuple, Rat] = {}
        for w, c in x.terms.items():
            for weight, lw, rw in self.coproduct_word(w):
                key = (lw, rw)
                s = out.get(key, RAT_ZERO) + c * nu_power(weight)
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return out

    # -- pairing -----------------------------------------------------------------
    def pairing_matrix(self, gamma) -> dict:
        """M[e-word][f-word] = <e-word, f-word> for all words of the degree."""
        gamma = tuple(gamma)
        with self._lock:
            if gamma in self._pairing:
                return self._pairing[gamma]
            datum = self.datum
            words = self.words_of_degree(gamma)
            if sum(gamma) == 0:
                M = {(): {(): RAT_ONE}}
                self._pairing[gamma] = M
                return M
            M: dict[tuple, dict] = {e: {} for e in words}
            for f in words:
                j = f[0]
                rest = f[1:]
                sub_gamma = list(gamma)
                sub_gamma[j] -= 1
                sub = self.pairing_matrix(tuple(sub_gamma))
                bracket = Rat.of(qangle(1, datum.qi_exp(j)))
                for e in words:
                    total = RAT_ZERO
                    prefix_exp = 0
                    for p, letter in enumerate(e):
                        if letter == j:
                            val = sub[e[:p] + e[p + 1 :]].get(rest)
                            if val is not None and not val.is_zero():
                                total = total + nu_power(prefix_exp) * bracket * val
                        prefix_exp += self.chi_exp(datum.alpha(letter), datum.alpha(j))
                    if not total.is_zero():
                        M[e][f] = total
            self._pairing[gamma] = M
            return M

    def pair(self, x_plus: HalfElem, y_minus: HalfElem) -> Rat:
        """Bilinear pairing U_q^+ x U_q^- -> Q(v); zero across distinct degrees."""
        assert x_plus.sign == PLUS and y_minus.sign == MINUS
        total = RAT_ZERO
        by_deg: dict[tuple, list] = {}
        for w, c in y_minus.terms.items():
            by_deg.setdefault(self.word_degree(w), []).append((w, c))
        for w1, c1 in x_plus.terms.items():
            gamma = self.word_degree(w1)
            if gamma not in by_deg:
                continue
            row = self.pairing_matrix(gamma)[w1]
            for w2, c2 in by_deg[gamma]:
                val = row.get(w2)
                if val is not None:
                    total = total + c1 * c2 * val
        return total

    # -- canonical coordinates ------------------------------------------------------
    def degree_basis(self, gamma) -> "DegreeBasis":
        gamma = tuple(gamma)
        with self._lock:
            if gamma not in self._basis:
                self._basis[gamma] = DegreeBasis(self, gamma)
            return self._basis[gamma]

    def dim(self, gamma) -> int:
        return len(self.degree_basis(gamma).pivot_rows)

    def _compress(self, sign: int, terms: dict) -> dict:
        """Rewrite every degree component over its pivot words."""
        by_deg: dict[tuple, dict] = {}
        for w, c in terms.items():
            c = Rat.of(c)
            if c.is_zero():
                continue
            by_deg.setdefault(self.word_degree(w), {})[w] = c
        out: dict[tuple, Rat] = {}
        for gamma, component in by_deg.items():
            basis = self.degree_basis(gamma)
            coords = basis.coords(sign, component)
            pivots = basis.pivot_rows if sign == PLUS else basis.pivot_cols
            for w, c in zip(pivots, coords):
                if not c.is_zero():
                    out[w] = out.get(w, RAT_ZERO) + c
        return {w: c for w, c in out.items() if not c.is_zero()}

    def normal_form(self, x: HalfElem) -> dict:
        """Per-degree canonical coordinates over pivot words."""
        out = {}
        for gamma in x.degrees():
            basis = self.degree_basis(gamma)
            pivots = basis.pivot_rows if x.sign == PLUS else basis.pivot_cols
            comp = x.component(gamma)
            out[gamma] = [comp.terms.get(w, RAT_ZERO) for w in pivots]
        return out

    # -- involutions ------------------------------------------------------------------
    def involution(self, x: HalfElem, which: str) -> HalfElem:
        """bar (antilinear word reversal), star (linear word reversal),
        transpose (side swap, anti-map), or startranspose (side swap in place)."""
        if which == "bar":
            terms = {tuple(reversed(w)): c.bar() for w, c in x.terms.items()}
            return HalfElem(self, x.sign, terms)
        if which == "star":
            terms = {tuple(reversed(w)): c for w, c in x.terms.items()}
            return HalfElem(self, x.sign, terms)
        if which == "transpose":
            terms = {tuple(reversed(w)): c for w, c in x.terms.items()}
            return HalfElem(self, -x.sign, terms)
        if which == "startranspose":
            return HalfElem(self, -x.sign, dict(x.terms))
        raise ValueError(f"unknown involution {which!r}")

    def bar(self, x: HalfElem) -> HalfElem:
        return self.involution(x, "bar")

    def star(self, x: HalfElem) -> HalfElem:
        return self.involution(x, "star")

    def transpose(self, x: HalfElem) -> HalfElem:
        return self.involution(x, "transpose")

    def flip(self, x: HalfElem) -> HalfElem:
        """The composition *t: letterwise side swap keeping word order."""
        return self.involution(x, "startranspose")

    # -- quasi-derivations -----------------------------------------------------------
    def deriv(self, i, x: HalfElem, variant: str = "plain", power: int = 1) -> HalfElem:
        """partial_i (variant plain) or partial_i^op on either half.

        power r applies the divided power partial_i^(r) = partial_i^r / (r)_{q_i}!.
        Minus-side input is handled by conjugating with the transpose.
        """
        i = self.datum.index(i)
        if x.sign == MINUS:
            return self.transpose(self.deriv(i, self.transpose(x), variant, power))
        out = x
        for _ in range(power):
            out = self._deriv_once(i, out, variant)
        if power > 1:
            out = out.scale(Rat.of(1) / Rat.of(qround_factorial(power, self.datum.qi_exp(i))))
        return out

    def _deriv_once(self, i: int, x: HalfElem, variant: str) -> HalfElem:
        datum = self.datum
        alpha_i = datum.alpha(i)
        out: dict[tuple, Rat] = {}
        for w, c in x.terms.items():
            deg = self.word_degree(w)
            shifted = list(deg)
            shifted[i] -= 1
            lead = -datum.dot(alpha_i, tuple(shifted))
            if variant == "plain":
                suffix_exp = 0
                for p in range(len(w) - 1, -1, -1):
                    if w[p] == i:
                        coeff = c * nu_power(lead + suffix_exp)
                        key = w[:p] + w[p + 1 :]
                        s = out.get(key, RAT_ZERO) + coeff
                        if s.is_zero():
                            out.pop(key, None)
                        else:
                            out[key] = s
                    suffix_exp += self.chi_exp(alpha_i, datum.alpha(w[p]))
            elif variant == "op":
                prefix_exp = 0
                for p in range(len(w)):
                    if w[p] == i:
                        coeff = c * nu_power(lead + prefix_exp)
                        key = w[:p] + w[p + 1 :]
                        s = out.get(key, RAT_ZERO) + coeff
                        if s.is_zero():
                            out.pop(key, None)
                        else:
                            out[key] = s
                    prefix_exp += self.chi_exp(datum.alpha(w[p]), alpha_i)
            else:
                raise ValueError(f"unknown derivation variant {variant!r}")
        return HalfElem(self, PLUS, out)

    def ell_and_top(self, i, x: HalfElem, variant: str = "plain"):
        """Nilpotency depth ell_i(x) and the top divided-power image."""
        if x.is_zero():
            raise ValueError("ell_i undefined on 0")
        i = self.datum.index(i)
        depth = 0
        current = x
        top = x
        while True:
            nxt = self.deriv(i, current, variant)
            if nxt.is_zero():
                break
            depth += 1
            current = nxt
            top = nxt
        if depth:
            top = top.scale(Rat.of(1) / Rat.of(qround_factorial(depth, self.datum.qi_exp(i))))
        return depth, top

    def psi_rescale(self, x: HalfElem, inverse: bool = False) -> HalfElem:
        """Conversion between the rescaled presentation used here and the
        standard one: every E_i picks up (q_i^-1 - q_i)^-1 and every F_i picks
        up (q_i - q_i^-1)^-1 (inverse=True undoes it)."""
        out = {}
        for w, c in x.terms.items():
            factor = RAT_ONE
            for letter in w:
                bracket = Rat.of(qangle(1, self.datum.qi_exp(letter)))
                if x.sign == PLUS:
                    bracket = -bracket
                factor = factor * (bracket if inverse else bracket.inv())
            out[w] = c * factor
        return HalfElem(self, x.sign, out, compressed=True)

    # -- distinguished elements ----------------------------------------------------------
    def serre_element(self, sign: int, i, j) -> HalfElem:
        """sum_{r+s=1-a_ij} (-1)^s X_i^<r> X_j X_i^<s>; zero in the quotient."""
        i, j = self.datum.index(i), self.datum.index(j)
        n = 1 - self.datum.A[i][j]
        out = self.zero(sign)
        for s in range(n + 1):
            r = n - s
            term = self.gen_divided(sign, i, r) * self.gen(sign, j) * self.gen_divided(sign, i, s)
            out = out + term.scale((-1) ** s)
        return out


class DegreeBasis:
    """Pivot data of one degree component: lexicographically-first full-rank
    row set of the word-pairing matrix, matching pivot columns, and the
    inverse of the pivot submatrix."""

    def __init__(self, alg: HalfAlgebra, gamma: tuple):
        self.gamma = gamma
        words = alg.words_of_degree(gamma)
        M = alg.pairing_matrix(gamma)
        rows = [[M[e].get(f, RAT_ZERO) for f in words] for e in words]
        row_idx = linalg.greedy_row_basis(rows)
        reduced = [rows[k] for k in row_idx]
        cols = [[reduced[r][c] for r in range(len(row_idx))] for c in range(len(words))]
        col_idx = linalg.greedy_row_basis(cols)
        assert len(col_idx) == len(row_idx), "pairing matrix rank mismatch"
        self.words = words
        self.pivot_rows = [words[k] for k in row_idx]
        self.pivot_cols = [words[k] for k in col_idx]
        self.pivot = [[rows[r][c] for c in col_idx] for r in row_idx]
        self.pivot_inv = linalg.invert(self.pivot) if row_idx else []
        self._row_of = {w: rows[k] for k, w in zip(range(len(words)), words)}
        self._M = M
        self._col_index = {w: k for k, w in enumerate(words)}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def coords(self, sign: int, component: dict) -> list:
        """Coordinates of a one-degree component dict over the pivot words."""
        if not self.pivot_rows:
            return []
        if sign == PLUS:
            vec = [RAT_ZERO] * self.rank
            for w, c in component.items():
                row = self._M[w]
                for k, f in enumerate(self.pivot_cols):
                    val = row.get(f)
                    if val is not None:
                        vec[k] = vec[k] + c * val
            return linalg.solve_vec(self.pivot_inv, vec)
        vec = [RAT_ZERO] * self.rank
        for w, c in component.items():
            j = self._col_index[w]
            for k, e in enumerate(self.pivot_rows):
                val = self._M[e].get(w)
                if val is not None:
                    vec[k] = vec[k] + c * val
        # solve pivot . d = vec for column coordinates d
        inv = self.pivot_inv
        return [
            sum((inv[k][r] * vec[r] for r in range(self.rank)), RAT_ZERO)
            for k in range(self.rank)
        ]


# ---------------------------------------------------------------------------
# serialization: words as "E:1 2 1"; elements as sorted coefficient/word lists
# ---------------------------------------------------------------------------

def format_word(alg: HalfAlgebra, sign: int, w: tuple) -> str:
    tag = "E" if sign == PLUS else "F"
    return f"{tag}:{' '.join(alg.datum.labels[i] for i in w)}"


def parse_word(alg: HalfAlgebra, text: str):
    tag, _, rest = text.partition(":")
    sign = {"E": PLUS, "F": MINUS}[tag.strip()]
    letters = tuple(alg.datum.index(tok) for tok in rest.split())
    return sign, letters


def format_half(x: HalfElem) -> str:
    from .scalar import format_scalar

    parts = []
    for w in sorted(x.terms):
        parts.append(f"({format_scalar(x.terms[w])})*{format_word(x.alg, x.sign, w)}")
    return " + ".join(parts) if parts else "0"


def half_to_obj(x: HalfElem):
    from .scalar import format_scalar

    return [
        {"c": format_scalar(x.terms[w]), "w": format_word(x.alg, x.sign, w)}
        for w in sorted(x.terms)
    ]


def half_from_obj(alg: HalfAlgebra, obj) -> HalfElem:
    from .scalar import parse_scalar

    sign = None
    terms = {}
    for item in obj:
        s, w = parse_word(alg, item["w"])
        if sign is None:
            sign = s
        assert s == sign, "mixed-sign element"
        terms[w] = parse_scalar(item["c"])
    if sign is None:
        sign = PLUS
    return HalfElem(alg, sign, terms)
