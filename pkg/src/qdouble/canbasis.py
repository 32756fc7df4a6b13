"""Canonical bases of U_q^- (computed for finite type, tabulated where the
algorithmic path does not reach), their duals under the twisted form, and
crystal-style shift operators on dual-canonical-basis labels.
"""
from __future__ import annotations

import threading
from itertools import permutations

from .cartan import LONGEST_WORDS
from .halves import HalfAlgebra, HalfElem, PLUS, MINUS
from .scalar import (
    Rat,
    RAT_ONE,
    RAT_ZERO,
    nu_power,
    qangle,
    qangle_factorial,
    qround,
    qround_binom,
)
from . import linalg


class TableIncomplete(LookupError):
    """No table source covers the requested degree."""


class TableConflict(AssertionError):
    """A tabulated family disagrees with the computed basis."""


class CBTable:
    def __init__(self, gamma, labels, elements):
        self.gamma = gamma
        self.labels = list(labels)
        self.elements = list(elements)  # minus-side HalfElems


class DCBTable:
    def __init__(self, gamma, labels, minus_elems):
        self.gamma = gamma
        self.labels = list(labels)
        self.minus = list(minus_elems)


class CanonicalTables:
    """Append-only cache of canonical and dual canonical bases per degree."""

    def __init__(self, algebra):
        self.alg = algebra
        self.half: HalfAlgebra = algebra.half
        self.datum = algebra.datum
        self._lock = threading.RLock()
        self._cb: dict = {}
        self._dcb: dict = {}
        self._w2d: dict = {}
        self._by_elem: dict = {}
        self._label_info: dict = {}
        self._ell: dict = {}
        self.d_memo: dict = {}
        self.user_tables: dict = {}

    # ----------------------------------------------------------------- fgfrm
    def fgfrm(self, x: HalfElem, y: HalfElem) -> Rat:
        """Twisted symmetric form on U_q^-: ((x,y)) = q^(-ulgamma(deg y)/2) <x^{*t}, y>."""
        assert x.sign == MINUS and y.sign == MINUS
        total = RAT_ZERO
        for gamma in set(x.degrees()) & set(y.degrees()):
            xc = self.half.flip(x.component(gamma))
            total = total + nu_power(-self.datum.ulgamma(gamma)) * self.half.pair(
                xc, y.component(gamma)
            )
        return total

    # --------------------------------------------------------- canonical bases
    def canonical_basis(self, gamma) -> CBTable:
        gamma = tuple(gamma)
        with self._lock:
            if gamma in self._cb:
                return self._cb[gamma]
            table = self._build_cb(gamma)
            self._cb[gamma] = table
            return table

    def _build_cb(self, gamma) -> CBTable:
        half = self.half
        name = self.datum.name
        support = [i for i, g in enumerate(gamma) if g]
        if len(support) == 0:
            return CBTable(gamma, ["1"], [half.unit(MINUS)])
        if len(support) == 1:
            i = support[0]
            n = gamma[i]
            return CBTable(gamma, [f"can[{i}^{n}]"], [half.gen_divided(MINUS, i, n)])
        if self._two_letter_cb_applicable(gamma):
            return self._two_letter_cb(gamma)
        if name == "A1affine" and tuple(sorted(gamma)) == (2, 2):
            return self._affine22_cb()
        if name in LONGEST_WORDS:
            return self._algorithmic_cb(gamma)
        raise TableIncomplete(f"no canonical basis source for {name} degree {gamma}")

    def _two_letter_cb_applicable(self, gamma) -> bool:
        support = [i for i, g in enumerate(gamma) if g]
        if len(support) != 2:
            return False
        i, j = support
        if gamma[j] == 1 and gamma[i] <= -self.datum.A[i][j]:
            return True
        if gamma[i] == 1 and gamma[j] <= -self.datum.A[j][i]:
            return True
        return False

    def _two_letter_cb(self, gamma) -> CBTable:
        """Degree n alpha_i + alpha_j, n <= -a_ij: divided-power sandwiches."""
        half = self.half
        support = [k for k, g in enumerate(gamma) if g]
        i, j = support
        if gamma[i] == 1 and gamma[j] != 1:
            i, j = j, i
        n = gamma[i]
        labels, elems = [], []
        for s in range(n + 1):
            labels.append(f"can[{i}^{s} {j} {i}^{n - s}]")
            elems.append(
                half.gen_divided(MINUS, i, s)
                * half.gen_divided(MINUS, j, 1)
                * half.gen_divided(MINUS, i, n - s)
            )
        return CBTable(gamma, labels, elems)

    def _affine22_cb(self) -> CBTable:
        half = self.half
        labels, elems = [], []
        for i, j in [(0, 1), (1, 0)]:
            di = lambda n: half.gen_divided(MINUS, i, n)  # noqa: E731
            dj = lambda n: half.gen_divided(MINUS, j, n)  # noqa: E731
            labels.append(f"can[{i}2 {j}2]")
            elems.append(di(2) * dj(2))
            labels.append(f"can[{i} {j}2 {i}]")
            elems.append(di(1) * dj(2) * di(1))
            labels.append(f"can[{i} {j} {i} {j}]")
            elems.append(di(1) * dj(1) * di(1) * dj(1) - di(2) * dj(2))
        return CBTable((2, 2), labels, elems)

    # -- the PBW + bar-correction engine (finite type) --------------------------
    def _sigma(self, x: HalfElem) -> HalfElem:
        """Antilinear algebra automorphism fixing the canonical basis:
        words unchanged, coefficients barred, sign (-1)^height per degree."""
        terms = {}
        for w, c in x.terms.items():
            terms[w] = c.bar() * Rat.of((-1) ** len(w))
        return HalfElem(self.half, x.sign, terms)

    def _algorithmic_cb(self, gamma) -> CBTable:
        from .lusztig import ll_solve, toposort

        half = self.half
        datum = self.datum
        word = LONGEST_WORDS[datum.name]
        roots = [datum.weyl_act(word[: r - 1], datum.alpha(word[r - 1])) for r in range(1, len(word) + 1)]
        comps = _compositions(gamma, roots)
        if not comps:
            raise TableIncomplete(f"degree {gamma} unreachable by PBW roots")
        # divided-power PBW monomials on the minus side
        basis = self.half.degree_basis(gamma)
        raw = []
        for a in comps:
            p = half.unit(PLUS)
            for r, n in enumerate(a, start=1):
                if n:
                    factor = self.alg.braid.root_vector(word, r, n).scale(
                        Rat.of(1) / Rat.of(qangle_factorial(n, datum.qi_exp(word[r - 1])))
                    )
                    p = p * factor
            raw.append(half.flip(p))
        W = [basis.coords(MINUS, x.terms) for x in raw]
        Winv = linalg.invert(W)

        def expand(x: HalfElem):
            return linalg.solve_vec(Winv, basis.coords(MINUS, x.terms))

        # rescale so the sigma matrix is unitriangular
        scaled = []
        for k, x in enumerate(raw):
            diag = expand(self._sigma(x))[k]
            lau = diag.as_laurent()
            if len(lau.c) != 1:
                raise TableConflict(f"PBW sigma-diagonal not monomial at {gamma}: {diag}")
            (exp, coeff), = lau.c.items()
            if coeff != 1 or exp % 2:
                raise TableConflict(f"PBW sigma-diagonal not an even unit power: {diag}")
            scaled.append(x.scale(nu_power(exp // 2)))
        W = [basis.coords(MINUS, x.terms) for x in scaled]
        Winv = linalg.invert(W)
        rows = {k: {} for k in range(len(comps))}
        for k, x in enumerate(scaled):
            for l, c in enumerate(expand(self._sigma(x))):
                if not c.is_zero():
                    rows[k][l] = c
        order = toposort(list(range(len(comps))), lambda k: rows[k])
        sols = ll_solve(order, lambda k: rows[k], side="negative")
        labels, elems = [], []
        for k, a in enumerate(comps):
            coeffs = sols[k]
            elem = scaled[k]
            for l, c in coeffs.items():
                elem = elem + scaled[l].scale(c)
            if not self._sigma(elem) == elem:
                raise TableConflict(f"canonical element at {gamma} not sigma-fixed")
            labels.append("can" + "".join(f"[{r}^{n}]" if n else "" for r, n in enumerate(a)))
            elems.append(elem)
        return CBTable(gamma, labels, elems)

    # ------------------------------------------------------------ dual bases
    def dcb_table(self, gamma) -> DCBTable:
        gamma = tuple(gamma)
        with self._lock:
            if gamma in self._dcb:
                return self._dcb[gamma]
            table = self._build_dcb(gamma)
            self._dcb[gamma] = table
            for k, lab in enumerate(table.labels):
                minus = table.minus[k]
                self._label_info[lab] = (gamma, k)
                self._by_elem[minus.key()] = lab
            return table

    def _build_dcb(self, gamma) -> DCBTable:
        name = self.datum.name
        if gamma in self.user_tables:
            labels, elems = self.user_tables[gamma]
            return DCBTable(gamma, labels, elems)
        support = [i for i, g in enumerate(gamma) if g]
        if len(support) == 0:
            return DCBTable(gamma, ["1"], [self.half.unit(MINUS)])
        if name == "A2":
            return self._a2_family_dcb(gamma)
        if len(support) == 1:
            i = support[0]
            n = gamma[i]
            lab = f"F[{self.datum.labels[i]}^{n}]"
            return DCBTable(gamma, [lab], [self.half.word(MINUS, [i] * n)])
        if self._two_letter_cb_applicable(gamma):
            labels, elems = [], []
            i, j = support
            if gamma[i] == 1 and gamma[j] != 1:
                i, j = j, i
            n = gamma[i]
            for s in range(n, -1, -1):
                r = n - s
                labels.append(self._two_letter_label(i, j, s, r))
                elems.append(self.two_letter_dcb(i, j, s, r))
            return DCBTable(gamma, labels, elems)
        if name == "A1affine" and gamma == (2, 2):
            return self._affine22_dcb()
        if name == "R3" and gamma == (1, 1, 1):
            return self._r3_dcb()
        if name in LONGEST_WORDS:
            return self._gram_dual_dcb(gamma)
        raise TableIncomplete(f"no dual canonical basis source for {name} degree {gamma}")

    def _gram_dual_dcb(self, gamma) -> DCBTable:
        cb = self.canonical_basis(gamma)
        G = [[self.fgfrm(x, y) for y in cb.elements] for x in cb.elements]
        Ginv = linalg.invert(G)
        labels, elems = [], []
        gs = ",".join(map(str, gamma))
        for k in range(len(cb.elements)):
            elem = self.half.zero(MINUS)
            for l, c in enumerate(Ginv[k]):
                if not c.is_zero():
                    elem = elem + cb.elements[l].scale(c)
            labels.append(f"b({gs}).{k}")
            elems.append(elem)
        return DCBTable(gamma, labels, elems)

    def _two_letter_label(self, i, j, s, r) -> str:
        li, lj = self.datum.labels[i], self.datum.labels[j]
        parts = [li] * s + [lj] + [li] * r
        return "F[" + " ".join(parts) + "]"

    def two_letter_dcb(self, i, j, s: int, r: int) -> HalfElem:
        """F_{i^s j i^r} by the printed two-index recursion; s + r <= -a_ij."""
        i, j = self.datum.index(i), self.datum.index(j)
        a = self.datum.A[i][j]
        assert s + r <= -a, "two-letter family out of range"
        half = self.half
        qi = self.datum.qi_exp(i)
        di = self.datum.d[i]
        fi = half.gen(MINUS, i)
        cur = half.gen(MINUS, j)
        k = l = 0
        while k < s:
            denom = Rat.of(qangle(-(k + l + a), qi))
            cur = (cur * fi).scale(nu_power(qi * (-k) - di * a) / denom) - (fi * cur).scale(
                nu_power(qi * k + di * a) / denom
            )
            k += 1
        while l < r:
            denom = Rat.of(qangle(-(k + l + a), qi))
            cur = (fi * cur).scale(nu_power(qi * (-l) - di * a) / denom) - (cur * fi).scale(
                nu_power(qi * l + di * a) / denom
            )
            l += 1
        return cur

    def _a2_family_dcb(self, gamma) -> DCBTable:
        half = self.half
        e12 = self.alg.braid.T_half(0, half.gen(PLUS, 1))
        e21 = self.alg.braid.T_half(1, half.gen(PLUS, 0))
        m, n = gamma
        labels, elems = [], []
        for a12 in range(min(m, n), -1, -1):
            for a21 in range(min(m, n) - a12, -1, -1):
                a1 = m - a12 - a21
                a2 = n - a12 - a21
                if a1 < 0 or a2 < 0 or min(a1, a2) != 0:
                    continue
                prefix = nu_power((a1 - a2) * (a12 - a21))
                plus = (
                    half.gen(PLUS, 0) ** a1
                    * half.gen(PLUS, 1) ** a2
                    * e12**a12
                    * e21**a21
                ).scale(prefix)
                labels.append(f"b+({a1},{a2},{a12},{a21})")
                elems.append(half.flip(plus))
        assert len(elems) == self.half.dim(gamma), "A2 family size mismatch"
        return DCBTable(gamma, labels, elems)

    def _affine22_dcb(self) -> DCBTable:
        half = self.half
        q2 = Rat.of(qround(2, 2))
        q3 = Rat.of(qround(3, 2))
        ang = lambda k: Rat.of(qangle(k, 2))  # noqa: E731
        labels, elems = [], []
        for i, j in [(0, 1), (1, 0)]:
            w = lambda s: half.word(MINUS, [{"i": i, "j": j}[ch] for ch in s])  # noqa: E731
            den124 = (ang(1) * ang(2) * ang(4)).inv()
            den14 = (ang(1) * ang(4)).inv()
            f_j2i2 = (
                w("iijj").scale(nu_power(4) * q2)
                - w("ijij").scale(nu_power(6) * Rat.of(2) + q2)
                + (w("ijji") + w("jiij")).scale(ang(1))
                + w("jiji").scale(q2 + nu_power(-6) * Rat.of(2))
                - w("jjii").scale(nu_power(-4) * q2)
            ).scale(den124)
            f_ij2i = (
                w("iijj")
                + w("jjii")
                + w("jiij")
                + (w("ijji") - w("ijij") - w("jiji")).scale(q3)
            ).scale(den14)
            f_jiji = (
                w("jjii").scale(nu_power(-4) * q2)
                - w("iijj").scale(nu_power(4) * q2)
                + (w("jiij") + w("ijji")).scale(nu_power(-6) - nu_power(6))
                + w("ijij").scale(nu_power(8) * (Rat.of(2) * nu_power(-6) + q2))
                - w("jiji").scale(nu_power(-8) * (Rat.of(2) * nu_power(6) + q2))
            ).scale(den124)
            li, lj = self.datum.labels[i], self.datum.labels[j]
            labels += [f"F[{lj} {lj} {li} {li}]", f"F[{li} {lj} {lj} {li}]", f"F[{lj} {li} {lj} {li}]"]
            elems += [f_j2i2, f_ij2i, f_jiji]
        return DCBTable((2, 2), labels, elems)

    def _r3_dcb(self) -> DCBTable:
        half = self.half
        q2 = Rat.of(qround(2, 2))
        den = (Rat.of(qangle(1, 2)) * Rat.of(qangle(3, 2))).inv()
        labels, elems = [], []
        for i, j, k in permutations(range(3)):
            w = lambda seq: half.word(MINUS, seq)  # noqa: E731
            elem = (
                (w([k, j, i]).scale(q2) - w([j, k, i]) - w([k, i, j])).scale(nu_power(3))
                + (w([i, j, k]).scale(q2) - w([i, k, j]) - w([j, i, k])).scale(nu_power(-3))
            ).scale(den)
            labels.append(f"F[{self.datum.labels[i]} {self.datum.labels[j]} {self.datum.labels[k]}]")
            elems.append(elem)
        return DCBTable((1, 1, 1), labels, elems)

    # ------------------------------------------------------------- label layer
    def dcb_elem(self, sign: int, label: str) -> HalfElem:
        gamma, k = self._label_info_get(label)
        minus = self.dcb_table(gamma).minus[k]
        if sign == MINUS:
            return minus
        return self.half.flip(minus)

    def _label_info_get(self, label):
        if label not in self._label_info:
            raise KeyError(f"unknown dual-canonical-basis label {label!r}")
        return self._label_info[label]

    def label_of(self, sign: int, elem: HalfElem) -> str:
        """Label of a dual-canonical-basis element, by value."""
        minus = elem if sign == MINUS else self.half.flip(elem)
        gamma = minus.degree()
        self.dcb_table(gamma)
        key = minus.key()
        if key not in self._by_elem:
            raise KeyError(f"element of degree {gamma} is not in the table")
        return self._by_elem[key]

    def labels_of_degree(self, gamma) -> list:
        return list(self.dcb_table(tuple(gamma)).labels)

    def degree_of(self, label: str):
        return self._label_info_get(label)[0]

    def star_label(self, sign: int, label: str) -> str:
        return self.label_of(sign, self.half.star(self.dcb_elem(sign, label)))

    def transpose_label(self, sign: int, label: str) -> str:
        """Label (on the other side) of the transpose image."""
        return self.label_of(-sign, self.half.transpose(self.dcb_elem(sign, label)))

    # -------------------------------------------------- word -> label transitions
    def word_to_dcb(self, sign: int, gamma) -> dict:
        gamma = tuple(gamma)
        key = (sign, gamma)
        with self._lock:
            if key in self._w2d:
                return self._w2d[key]
            table = self.dcb_table(gamma)
            basis = self.half.degree_basis(gamma)
            pivots = basis.pivot_rows if sign == PLUS else basis.pivot_cols
            D = []
            for k in range(len(table.labels)):
                elem = table.minus[k] if sign == MINUS else self.half.flip(table.minus[k])
                D.append(basis.coords(sign, elem.terms))
            if len(D) != len(pivots):
                raise TableConflict(
                    f"table at {gamma} has {len(D)} elements, dimension is {len(pivots)}"
                )
            Dinv = linalg.invert(D)
            out = {}
            for w in basis.words:
                coords = basis.coords(sign, {w: RAT_ONE})
                sol = linalg.solve_vec(Dinv, coords)
                out[w] = {
                    table.labels[k]: c for k, c in enumerate(sol) if not c.is_zero()
                }
            self._w2d[key] = out
            return out

    def half_to_dcb(self, x: HalfElem) -> dict:
        """Expand a half element over dual-canonical labels."""
        out: dict = {}
        for gamma in x.degrees():
            comp = x.component(gamma)
            w2d = self.word_to_dcb(x.sign, gamma)
            for w, c in comp.terms.items():
                for lab, d in w2d[w].items():
                    s = out.get(lab, RAT_ZERO) + c * d
                    if s.is_zero():
                        out.pop(lab, None)
                    else:
                        out[lab] = s
        return out

    # ------------------------------------------------------------ crystal layer
    def ell(self, label: str, i) -> int:
        i = self.datum.index(i)
        key = (label, i)
        with self._lock:
            if key not in self._ell:
                plus = self.dcb_elem(PLUS, label)
                self._ell[key] = self.half.ell_and_top(i, plus)[0]
            return self._ell[key]

    def crystal_shift(self, i, r: int, label: str) -> str:
        """Kashiwara-style shift on plus-side labels: r >= 0 lowers ell_i by r,
        r < 0 raises it scanning the target degree table."""
        i = self.datum.index(i)
        plus = self.dcb_elem(PLUS, label)
        ell = self.ell(label, i)
        if r == 0:
            return label
        if r > 0:
            if r > ell:
                raise ValueError(f"crystal shift {r} exceeds ell_i = {ell}")
            image = self.half.deriv(i, plus, "plain", r)
            coeffs = self.half_to_dcb(image)
            binom = Rat.of(qround_binom(ell, r, self.datum.qi_exp(i)))
            hits = [
                lab
                for lab, c in coeffs.items()
                if self.ell(lab, i) == ell - r and c == binom
            ]
            if len(hits) != 1:
                raise TableIncomplete(f"crystal shift of {label} not resolved: {hits}")
            return hits[0]
        # r < 0: unique hat-b with the same top and ell increased by -r
        top = self.half.ell_and_top(i, plus)[1]
        target_deg = tuple(
            g + (-r) * (1 if k == i else 0) for k, g in enumerate(self.degree_of(label))
        )
        hits = []
        for lab in self.labels_of_degree(target_deg):
            cand = self.dcb_elem(PLUS, lab)
            if self.ell(lab, i) != ell - r:
                continue
            if self.half.ell_and_top(i, cand)[1] == top:
                hits.append(lab)
        if len(hits) != 1:
            raise TableIncomplete(f"inverse crystal shift of {label} not resolved: {hits}")
        return hits[0]

    # ----------------------------------------------------------- file interface
    def load_user_table(self, gamma, labeled_elements):
        """Register a user-supplied dual basis for one degree before first use."""
        gamma = tuple(gamma)
        with self._lock:
            if gamma in self._dcb:
                raise ValueError(f"table for degree {gamma} already built")
            labels = [lab for lab, _ in labeled_elements]
            elems = [el for _, el in labeled_elements]
            self.user_tables[gamma] = (labels, elems)


def _compositions(gamma, roots):
    """All nonnegative integer combinations of the root list summing to gamma."""
    out = []
    n = len(roots)

    def rec(idx, remaining, acc):
        if idx == n:
            if not any(remaining):
                out.append(tuple(acc))
            return
        beta = roots[idx]
        max_mult = min(
            (rem // b for rem, b in zip(remaining, beta) if b), default=sum(remaining)
        )
        for m in range(max_mult + 1):
            nxt = tuple(r - m * b for r, b in zip(remaining, beta))
            if all(x >= 0 for x in nxt):
                rec(idx + 1, nxt, acc + [m])

    rec(0, tuple(gamma), [])
    out.sort()
    return out
