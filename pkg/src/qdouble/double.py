"""The double U_q(g~), its Heisenberg quotients, and the localized/check
extensions: triangular straightening, the diamond action, involutions,
DCB-coordinate expansion, clearing multipliers and the twisted adjoint
actions.

Elements are stored in triangular normal form: (K-monomial, F-word, E-word)
-> scalar, with both word blocks compressed to per-degree pivot words.
"""
from __future__ import annotations

import threading

from .halves import HalfAlgebra, HalfElem, PLUS, MINUS
from .scalar import (
    Laurent,
    Rat,
    RAT_ONE,
    RAT_ZERO,
    clear_denominators,
    cyclotomic_factor,
    nu_power,
    qangle,
)

FLAVORS = ("full", "heis_plus", "heis_minus", "localized", "check")

_CROSS = {
    "full": (1, 1),
    "localized": (1, 1),
    "check": (1, 1),
    "heis_plus": (1, 0),
    "heis_minus": (0, 1),
}


class FlavorError(ValueError):
    pass


def kmono(minus, plus, tag=None, rank=None):
    if tag is None:
        tag = (0,) * (rank if rank is not None else len(minus))
    return (tuple(minus), tuple(plus), tuple(tag))


def k_one(rank: int):
    z = (0,) * rank
    return (z, z, z)


def k_mul(K1, K2):
    return (
        tuple(a + b for a, b in zip(K1[0], K2[0])),
        tuple(a + b for a, b in zip(K1[1], K2[1])),
        tuple(a + b for a, b in zip(K1[2], K2[2])),
    )


def k_inv(K):
    return (tuple(-a for a in K[0]), tuple(-a for a in K[1]), tuple(-a for a in K[2]))


def k_is_one(K):
    return not any(K[0]) and not any(K[1]) and not any(K[2])


class TriElem:
    """Element of the double in triangular normal form."""

    __slots__ = ("ctx", "flavor", "terms")

    def __init__(self, ctx: "DoubleContext", flavor: str, terms: dict, normalized=False):
        self.ctx = ctx
        self.flavor = flavor
        if not normalized:
            terms = ctx._normalize(flavor, terms)
        self.terms = terms

    def __add__(self, other: "TriElem") -> "TriElem":
        assert self.flavor == other.flavor
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, RAT_ZERO) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return TriElem(self.ctx, self.flavor, out, normalized=True)

    def __sub__(self, other: "TriElem") -> "TriElem":
        return self + other.scale(-1)

    def scale(self, c) -> "TriElem":
        c = Rat.of(c)
        if c.is_zero():
            return TriElem(self.ctx, self.flavor, {}, normalized=True)
        return TriElem(
            self.ctx, self.flavor, {k: x * c for k, x in self.terms.items()}, normalized=True
        )

    def __mul__(self, other: "TriElem") -> "TriElem":
        return self.ctx.multiply(self, other)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, TriElem)
            and self.flavor == other.flavor
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.flavor, tuple(sorted(self.terms.items()))))

    def with_flavor(self, flavor: str) -> "TriElem":
        """Reinterpret (e.g. the vector-space inclusion of a Heisenberg quotient)."""
        if flavor == self.flavor:
            return self
        return TriElem(self.ctx, flavor, dict(self.terms), normalized=True)

    def bidegrees(self):
        out = set()
        for (K, f, e) in self.terms:
            out.add((self.ctx.half.word_degree(f), self.ctx.half.word_degree(e)))
        return sorted(out)

    def __repr__(self):
        return f"TriElem[{self.flavor}]({format_tri(self)})"


class DoubleContext:
    """All double-level computation for one Cartan datum; caches are
    compute-once and shared."""

    def __init__(self, half: HalfAlgebra):
        self.half = half
        self.datum = half.datum
        self._lock = threading.RLock()
        self._straight: dict = {}
        self._letter: dict = {}
        self._word_coords: dict = {}
        self.tables = None  # canonical-basis table provider, wired by Algebra

    # -- scalars of the torus ----------------------------------------------
    def kdif_dot(self, K, gamma) -> int:
        """(plus + 2mu - minus) . gamma, tags entering through coroot data."""
        minus, plus, tag = K
        dif = tuple(p - m for p, m in zip(plus, minus))
        out = self.datum.dot(dif, gamma)
        for k, t in enumerate(tag):
            if t:
                out += t * self.datum.d[k] * gamma[k]
        return out

    # -- constructors ---------------------------------------------------------
    def one(self, flavor="full") -> TriElem:
        return TriElem(self, flavor, {(k_one(self.datum.rank), (), ()): RAT_ONE}, normalized=True)

    def zero(self, flavor="full") -> TriElem:
        return TriElem(self, flavor, {}, normalized=True)

    def k_elem(self, K, flavor="full") -> TriElem:
        self._check_k(K, flavor)
        return TriElem(self, flavor, {(K, (), ()): RAT_ONE}, normalized=True)

    def k_gen(self, i, side: int, power: int = 1, flavor="full") -> TriElem:
        i = self.datum.index(i)
        vec = [0] * self.datum.rank
        vec[i] = power
        if side == PLUS:
            K = kmono((0,) * self.datum.rank, vec)
        else:
            K = kmono(vec, (0,) * self.datum.rank)
        return self.k_elem(K, flavor)

    def e_gen(self, i, flavor="full") -> TriElem:
        i = self.datum.index(i)
        return TriElem(self, flavor, {(k_one(self.datum.rank), (), (i,)): RAT_ONE}, normalized=True)

    def f_gen(self, i, flavor="full") -> TriElem:
        i = self.datum.index(i)
        return TriElem(self, flavor, {(k_one(self.datum.rank), (i,), ()): RAT_ONE}, normalized=True)

    def from_halves(self, minus: HalfElem | None = None, plus: HalfElem | None = None, K=None, flavor="full") -> TriElem:
        """K . (minus block) . (plus block) as a TriElem (already triangular)."""
        rank = self.datum.rank
        if K is None:
            K = k_one(rank)
        terms = {}
        mterms = minus.terms if minus is not None else {(): RAT_ONE}
        pterms = plus.terms if plus is not None else {(): RAT_ONE}
        for wf, cf in mterms.items():
            for we, ce in pterms.items():
                terms[(K, wf, we)] = cf * ce
        return TriElem(self, flavor, terms, normalized=True)

    def _check_k(self, K, flavor):
        minus, plus, tag = K
        if flavor in ("full", "heis_plus", "heis_minus"):
            if any(x < 0 for x in minus) or any(x < 0 for x in plus):
                raise FlavorError(f"negative K exponent needs localized flavor")
            if any(tag):
                raise FlavorError("weight tags need check flavor")
        if flavor == "heis_plus" and any(minus):
            raise FlavorError("K_- is zero in heis_plus")
        if flavor == "heis_minus" and any(plus):
            raise FlavorError("K_+ is zero in heis_minus")
        if flavor == "localized" and any(tag):
            raise FlavorError("weight tags need check flavor")

    # -- normalization -----------------------------------------------------------
    def word_coords(self, sign: int, w: tuple) -> dict:
        key = (sign, w)
        with self._lock:
            got = self._word_coords.get(key)
            if got is None:
                got = self.half._compress(sign, {w: RAT_ONE})
                self._word_coords[key] = got
            return got

    def _normalize(self, flavor: str, terms: dict) -> dict:
        out: dict = {}
        for (K, f, e), c in terms.items():
            c = Rat.of(c)
            if c.is_zero():
                continue
            if flavor == "heis_plus" and any(K[0]):
                continue
            if flavor == "heis_minus" and any(K[1]):
                continue
            fc = self.word_coords(MINUS, f)
            ec = self.word_coords(PLUS, e)
            for wf, af in fc.items():
                for we, ae in ec.items():
                    key = (K, wf, we)
                    s = out.get(key, RAT_ZERO) + c * af * ae
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
        return {k: v for k, v in out.items() if not v.is_zero()}

    # -- straightening core ---------------------------------------------------------
    def _straighten_letter(self, i: int, f: tuple, cross):
        key = (i, f, cross)
        got = self._letter.get(key)
        if got is not None:
            return got
        rank = self.datum.rank
        if not f:
            out = {(k_one(rank), (), (i,)): RAT_ONE}
        else:
            j, frest = f[0], f[1:]
            out = {}
            alpha_j = self.datum.alpha(j)
            for (K, f3, e3), c in self._straighten_letter(i, frest, cross).items():
                factor = nu_power(2 * self.kdif_dot(K, alpha_j))
                key2 = (K, (j,) + f3, e3)
                s = out.get(key2, RAT_ZERO) + c * factor
                if s.is_zero():
                    out.pop(key2, None)
                else:
                    out[key2] = s
            if i == j:
                br = Rat.of(qangle(-1, self.datum.qi_exp(i)))  # q_i^-1 - q_i
                tp, tm = cross
                if tp:
                    vec = [0] * rank
                    vec[i] = 1
                    Kp = kmono((0,) * rank, vec)
                    key2 = (Kp, frest, ())
                    s = out.get(key2, RAT_ZERO) + br
                    out[key2] = s
                if tm:
                    vec = [0] * rank
                    vec[i] = 1
                    Km = kmono(vec, (0,) * rank)
                    key2 = (Km, frest, ())
                    s = out.get(key2, RAT_ZERO) - br
                    out[key2] = s
                out = {k: v for k, v in out.items() if not v.is_zero()}
        self._letter[key] = out
        return out

    def _straighten(self, e: tuple, f: tuple, cross):
        """E-word times F-word as dict {(K, f, e): Rat}, fully triangular."""
        key = (e, f, cross)
        got = self._straight.get(key)
        if got is not None:
            return got
        rank = self.datum.rank
        if not e or not f:
            out = {(k_one(rank), f, e): RAT_ONE}
        else:
            i, e_head = e[-1], e[:-1]
            deg_head = self.half.word_degree(e_head)
            out = {}
            for (K3, f3, e3), c3 in self._straighten_letter(i, f, cross).items():
                factor = c3 * nu_power(-2 * self.kdif_dot(K3, deg_head))
                for (K4, f4, e4), c4 in self._straighten(e_head, f3, cross).items():
                    key2 = (k_mul(K3, K4), f4, e4 + e3)
                    s = out.get(key2, RAT_ZERO) + factor * c4
                    if s.is_zero():
                        out.pop(key2, None)
                    else:
                        out[key2] = s
        self._straight[key] = out
        return out

    # -- multiplication -------------------------------------------------------------
    def multiply(self, x: TriElem, y: TriElem) -> TriElem:
        if x.flavor != y.flavor:
            raise FlavorError(f"flavor mismatch: {x.flavor} vs {y.flavor}")
        cross = _CROSS[x.flavor]
        half = self.half
        out: dict = {}
        for (K1, f1, e1), c1 in x.terms.items():
            deg_f1 = half.word_degree(f1)
            deg_e1 = half.word_degree(e1)
            for (K2, f2, e2), c2 in y.terms.items():
                base = c1 * c2 * nu_power(
                    2 * (self.kdif_dot(K2, deg_f1) - self.kdif_dot(K2, deg_e1))
                )
                K12 = k_mul(K1, K2)
                for (K3, f3, e3), c3 in self._straighten(e1, f2, cross).items():
                    coeff = base * c3 * nu_power(2 * self.kdif_dot(K3, deg_f1))
                    key = (k_mul(K12, K3), f1 + f3, e3 + e2)
                    s = out.get(key, RAT_ZERO) + coeff
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
        return TriElem(self, x.flavor, out)

    # -- gradings ----------------------------------------------------------------------
    def coroot_of_term(self, i: int, key) -> int:
        K, f, e = key
        return self.datum.coroot(i, self.half.word_degree(e)) - self.datum.coroot(
            i, self.half.word_degree(f)
        )

    def diamond(self, K, x: TriElem) -> TriElem:
        """K diamond x: q-power-twisted left multiplication by a torus monomial."""
        if not isinstance(K, tuple):
            raise TypeError("diamond expects a K-monomial triple")
        out = {}
        for (K1, f, e), c in x.terms.items():
            dif = tuple(
                a - b
                for a, b in zip(self.half.word_degree(e), self.half.word_degree(f))
            )
            coeff = c * nu_power(-self.kdif_dot(K, dif))
            key = (k_mul(K, K1), f, e)
            s = out.get(key, RAT_ZERO) + coeff
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return TriElem(self, x.flavor, out, normalized=True)

    # -- involutions ----------------------------------------------------------------------
    def involution(self, x: TriElem, which: str) -> TriElem:
        cross = _CROSS[x.flavor]
        half = self.half
        acc: dict = {}

        def put(key, val):
            s = acc.get(key, RAT_ZERO) + val
            if s.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = s

        for (K, f, e), c in x.terms.items():
            deg_f = half.word_degree(f)
            deg_e = half.word_degree(e)
            if which == "transpose":
                dif = tuple(a - b for a, b in zip(deg_e, deg_f))
                coeff = c * nu_power(2 * self.kdif_dot(K, dif))
                put((K, tuple(reversed(e)), tuple(reversed(f))), coeff)
                continue
            if which == "bar":
                coeff = Rat.of(c).bar()
                K2 = K
            elif which == "star":
                if x.flavor in ("heis_plus", "heis_minus", "check"):
                    raise FlavorError(f"star is unavailable in flavor {x.flavor}")
                coeff = c
                K2 = (K[1], K[0], K[2])
            else:
                raise ValueError(f"unknown involution {which!r}")
            # anti-image is (reversed e)(reversed f)(K2); restraighten.
            for (K3, f3, e3), c3 in self._straighten(
                tuple(reversed(e)), tuple(reversed(f)), cross
            ).items():
                deg_f3 = half.word_degree(f3)
                deg_e3 = half.word_degree(e3)
                dif = tuple(a - b for a, b in zip(deg_f3, deg_e3))
                put((k_mul(K3, K2), f3, e3), coeff * c3 * nu_power(2 * self.kdif_dot(K2, dif)))
        return TriElem(self, x.flavor, acc)

    def bar(self, x: TriElem) -> TriElem:
        return self.involution(x, "bar")

    def star(self, x: TriElem) -> TriElem:
        return self.involution(x, "star")

    def transpose(self, x: TriElem) -> TriElem:
        return self.involution(x, "transpose")

    # -- quotients and inclusions ---------------------------------------------------------
    def iota_plus(self, x: TriElem) -> TriElem:
        assert x.flavor == "heis_plus"
        return x.with_flavor("full")

    def project_heis(self, x: TriElem, side: int = PLUS) -> TriElem:
        flavor = "heis_plus" if side == PLUS else "heis_minus"
        idx = 0 if side == PLUS else 1
        terms = {k: c for k, c in x.terms.items() if not any(k[0][idx])}
        return TriElem(self, flavor, terms, normalized=True)

    def normalize_tags(self, x: TriElem) -> TriElem:
        """Fold weight tags lying in the root lattice into plus exponents."""
        from fractions import Fraction

        rank = self.datum.rank
        out = {}
        for (K, f, e), c in x.terms.items():
            minus, plus, tag = K
            if any(tag):
                # solve A x = tag over Q; integral solutions are root-lattice weights
                A = [[Fraction(self.datum.A[i][j]) for j in range(rank)] for i in range(rank)]
                b = [Fraction(t) for t in tag]
                sol = _solve_fractions(A, b)
                if sol is not None and all(s.denominator == 1 for s in sol):
                    plus = tuple(p + int(s) for p, s in zip(plus, sol))
                    tag = (0,) * rank
            key = ((tuple(minus), tuple(plus), tuple(tag)), f, e)
            s = out.get(key, RAT_ZERO) + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return TriElem(self, x.flavor, out, normalized=True)

    def project_group_like(self, x: TriElem) -> TriElem:
        """Quotient by K_+i K_-i = 1: net torus exponents (localized/check)."""
        out = {}
        rank = self.datum.rank
        for (K, f, e), c in x.terms.items():
            minus, plus, tag = K
            net = kmono((0,) * rank, tuple(p - m for p, m in zip(plus, minus)), tag)
            key = (net, f, e)
            s = out.get(key, RAT_ZERO) + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return TriElem(self, x.flavor, out, normalized=True)

    # -- DCB coordinates ---------------------------------------------------------------------
    def to_dcb(self, x: TriElem) -> "DCBExpansion":
        tables = self._tables()
        out = {}
        for (K, f, e), c in x.terms.items():
            gm = self.half.word_degree(f)
            gp = self.half.word_degree(e)
            row_m = tables.word_to_dcb(MINUS, gm)[f]
            row_p = tables.word_to_dcb(PLUS, gp)[e]
            for lm, cm in row_m.items():
                for lp, cp in row_p.items():
                    key = (K, lm, lp)
                    s = out.get(key, RAT_ZERO) + c * cm * cp
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
        return DCBExpansion(self, x.flavor, out)

    def from_dcb(self, expansion: "DCBExpansion") -> TriElem:
        tables = self._tables()
        out = self.zero(expansion.flavor)
        for (K, lm, lp), c in expansion.terms.items():
            minus = tables.dcb_elem(MINUS, lm)
            plus = tables.dcb_elem(PLUS, lp)
            out = out + self.from_halves(minus, plus, K=K, flavor=expansion.flavor).scale(c)
        return out

    def _tables(self):
        if self.tables is None:
            raise RuntimeError("no canonical-basis tables wired into this context")
        return self.tables

    # -- clearing multipliers -----------------------------------------------------------------
    def d_multiplier(self, lab_minus: str, lab_plus: str) -> Laurent:
        """Minimal monic multiplier clearing the commutator expansion of the pair."""
        tables = self._tables()
        key = (lab_minus, lab_plus)
        with self._lock:
            if key in tables.d_memo:
                return tables.d_memo[key]
        bm = tables.dcb_elem(MINUS, lab_minus)
        bp = tables.dcb_elem(PLUS, lab_plus)
        prod = self.multiply(
            self.from_halves(plus=bp, flavor="full"), self.from_halves(minus=bm, flavor="full")
        )
        expansion = self.to_dcb(prod)
        fracs = []
        for (K, lm, lp), c in expansion.terms.items():
            if k_is_one(K):
                continue
            d_low = self.d_multiplier(lm, lp)
            fracs.append(c / Rat.of(d_low))
        d = clear_denominators(fracs)
        # prop:square-roots-style sanity: monic product of Phi_k(q), k >= 3
        if not d.is_one():
            if any(k % 2 for k in d.c):
                raise ValueError(f"multiplier {d} is not a polynomial in q")
            in_q = d.subs_power(1).c
            unit, const, cyc, others = cyclotomic_factor(Laurent({k // 2: v for k, v in in_q.items()}))
            if const != 1 or others or any(k < 3 for k, _ in cyc):
                raise ValueError(f"multiplier {d} is not a monic product of admissible cyclotomics")
        with self._lock:
            tables.d_memo[key] = d
        return d

    # -- twisted actions -------------------------------------------------------------------------
    def adjoint_act(self, i, kind: str, x: TriElem) -> TriElem:
        if x.flavor not in ("localized", "check"):
            raise FlavorError("adjoint action needs the localized double")
        i = self.datum.index(i)
        E = self.e_gen(i, x.flavor)
        F = self.f_gen(i, x.flavor)
        Kp_inv = self.k_elem(kmono(*_unit_vec(self.datum.rank, i, -1, PLUS)), x.flavor)
        Km = self.k_elem(kmono(*_unit_vec(self.datum.rank, i, 1, MINUS)), x.flavor)
        Km_inv = self.k_elem(kmono(*_unit_vec(self.datum.rank, i, -1, MINUS)), x.flavor)
        if kind == "F":
            return self.multiply(F, x) - self.multiply(self.multiply(Km, x), self.multiply(Km_inv, F))
        if kind == "E":
            return self.multiply(self.multiply(E, x) - self.multiply(x, E), Kp_inv)
        if kind == "K":
            Kp = self.k_elem(kmono(*_unit_vec(self.datum.rank, i, 1, PLUS)), x.flavor)
            return self.multiply(self.multiply(Kp, x), Kp_inv)
        raise ValueError(f"unknown adjoint generator {kind!r}")

    def lambda_act(self, i, kind: str, lam, x: TriElem) -> TriElem:
        """Bar-compatible twisted action; lam is an integer vector over I."""
        i = self.datum.index(i)
        lam_i = lam[i] if not isinstance(lam, int) else lam
        di = self.datum.d[i]
        out = self.zero(x.flavor)
        E = self.e_gen(i, x.flavor)
        F = self.f_gen(i, x.flavor)
        for key, c in x.terms.items():
            term = TriElem(self, x.flavor, {key: c}, normalized=True)
            cor = self.coroot_of_term(i, key)
            if kind == "F":
                out = out + self.multiply(F, term).scale(nu_power(di * (lam_i + cor)))
                out = out - self.multiply(term, F).scale(nu_power(-di * (lam_i + cor)))
            elif kind == "E":
                inner = self.multiply(E, term).scale(nu_power(-di * lam_i)) - self.multiply(
                    term, E
                ).scale(nu_power(di * lam_i))
                out = out + self.diamond(kmono(*_unit_vec(self.datum.rank, i, -1, PLUS)), inner)
            else:
                raise ValueError(f"unknown twisted generator {kind!r}")
        return out


def _solve_fractions(A, b):
    """Gaussian elimination over Q; None when singular/inconsistent."""
    from fractions import Fraction

    n = len(A)
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = Fraction(1, 1) / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def _unit_vec(rank: int, i: int, power: int, side: int):
    vec = [0] * rank
    vec[i] = power
    zero = (0,) * rank
    if side == PLUS:
        return zero, tuple(vec), zero
    return tuple(vec), zero, zero


class DCBExpansion:
    """Coordinates over the family K diamond (b_- b_+)."""

    __slots__ = ("ctx", "flavor", "terms")

    def __init__(self, ctx: DoubleContext, flavor: str, terms: dict):
        self.ctx = ctx
        self.flavor = flavor
        self.terms = {k: Rat.of(c) for k, c in terms.items() if not Rat.of(c).is_zero()}

    def __eq__(self, other):
        return (
            isinstance(other, DCBExpansion)
            and self.flavor == other.flavor
            and self.terms == other.terms
        )

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, RAT_ZERO) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return DCBExpansion(self.ctx, self.flavor, out)

    def scale(self, c):
        return DCBExpansion(self.ctx, self.flavor, {k: x * Rat.of(c) for k, x in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return f"DCBExpansion[{self.flavor}]({self.terms})"


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def format_tri(x: TriElem) -> str:
    from .scalar import format_scalar

    parts = []
    for (K, f, e) in sorted(x.terms):
        c = format_scalar(x.terms[(K, f, e)])
        kf = f"K[{','.join(map(str, K[0]))};{','.join(map(str, K[1]))}]"
        if any(K[2]):
            kf += f"w[{','.join(map(str, K[2]))}]"
        fs = "F:" + " ".join(x.ctx.datum.labels[i] for i in f)
        es = "E:" + " ".join(x.ctx.datum.labels[i] for i in e)
        parts.append(f"({c})*{kf}*{fs}*{es}")
    return " + ".join(parts) if parts else "0"


def tri_to_obj(x: TriElem):
    from .scalar import format_scalar

    out = []
    for (K, f, e) in sorted(x.terms):
        out.append(
            {
                "K": {"minus": list(K[0]), "plus": list(K[1]), "tag": list(K[2])},
                "F": " ".join(x.ctx.datum.labels[i] for i in f),
                "E": " ".join(x.ctx.datum.labels[i] for i in e),
                "c": format_scalar(x.terms[(K, f, e)]),
            }
        )
    return out


def tri_from_obj(ctx: DoubleContext, flavor: str, obj) -> TriElem:
    from .scalar import parse_scalar

    terms = {}
    for item in obj:
        K = kmono(item["K"]["minus"], item["K"]["plus"], item["K"].get("tag"))
        f = tuple(ctx.datum.index(tok) for tok in item["F"].split())
        e = tuple(ctx.datum.index(tok) for tok in item["E"].split())
        terms[(K, f, e)] = parse_scalar(item["c"])
    return TriElem(ctx, flavor, terms)
