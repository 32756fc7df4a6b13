"""Exact arithmetic in Z[v,v^-1] and Q(v), where v = q^(1/2).

Everything downstream computes over these scalars.  Laurent polynomials are
dicts {exponent: int}; rational functions are canonical num/den pairs so that
equality is structural.  The bar involution is v -> v^-1.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
import re

__all__ = [
    "Laurent",
    "Rat",
    "ZERO",
    "ONE",
    "NU",
    "Q",
    "qnum",
    "qsq",
    "qround",
    "qangle",
    "qsq_factorial",
    "qround_factorial",
    "qangle_factorial",
    "qsq_binom",
    "qround_binom",
    "solve_bar_correction",
    "clear_denominators",
    "cyclotomic",
    "cyclotomic_factor",
    "parse_scalar",
]


class InexactDivision(ArithmeticError):
    pass


class BarInconsistency(ValueError):
    """Input claimed bar-antisymmetric is not."""


class Laurent:
    """Laurent polynomial in v with integer coefficients."""

    __slots__ = ("c", "_hash")

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        self.c = {k: v for k, v in coeffs.items() if v}
        self._hash = None

    # -- constructors -------------------------------------------------
    @staticmethod
    def const(n: int) -> "Laurent":
        return Laurent({0: n}) if n else Laurent()

    @staticmethod
    def mono(coeff: int, exp: int) -> "Laurent":
        return Laurent({exp: coeff}) if coeff else Laurent()

    # -- basic queries ------------------------------------------------
    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == {0: 1}

    def min_exp(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no valuation")
        return min(self.c)

    def max_exp(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no degree")
        return max(self.c)

    def content(self) -> int:
        g = 0
        for v in self.c.values():
            g = _int_gcd(g, abs(v))
        return g

    def leading(self) -> int:
        return self.c[self.max_exp()]

    def __bool__(self):
        return bool(self.c)

    # -- ring operations ----------------------------------------------
    def __add__(self, other: "Laurent") -> "Laurent":
        out = dict(self.c)
        for k, v in other.c.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        r = Laurent.__new__(Laurent)
        r.c = out
        r._hash = None
        return r

    def __neg__(self) -> "Laurent":
        r = Laurent.__new__(Laurent)
        r.c = {k: -v for k, v in self.c.items()}
        r._hash = None
        return r

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            r = Laurent.__new__(Laurent)
            r.c = {k: v * other for k, v in self.c.items()}
            r._hash = None
            return r
        out: dict[int, int] = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = k1 + k2
                s = out.get(k, 0) + v1 * v2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        r = Laurent.__new__(Laurent)
        r.c = out
        r._hash = None
        return r

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial; use Rat")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "Laurent":
        """Multiply by v^k."""
        r = Laurent.__new__(Laurent)
        r.c = {e + k: v for e, v in self.c.items()}
        r._hash = None
        return r

    def subs_power(self, k: int) -> "Laurent":
        """Substitute v -> v^k (k nonzero integer)."""
        r = Laurent.__new__(Laurent)
        r.c = {e * k: v for e, v in self.c.items()}
        r._hash = None
        return r

    def bar(self) -> "Laurent":
        return self.subs_power(-1)

    def intdiv(self, n: int) -> "Laurent":
        out = {}
        for k, v in self.c.items():
            q, r = divmod(v, n)
            if r:
                raise InexactDivision(f"coefficient {v} not divisible by {n}")
            out[k] = q
        return Laurent(out)

    def divmod_poly(self, other: "Laurent"):
        """Division with remainder by leading term, exact over Z when it divides."""
        if other.is_zero():
            raise ZeroDivisionError
        shift = 0
        a, b = self, other
        if not a.is_zero():
            shift = a.min_exp()
            a = a.shift(-shift)
        bs = b.min_exp()
        b = b.shift(-bs)
        shift -= bs
        quot = {}
        lead_e = b.max_exp()
        lead_c = b.c[lead_e]
        while not a.is_zero() and a.max_exp() >= lead_e:
            e = a.max_exp() - lead_e
            cq, r = divmod(a.c[a.max_exp()], lead_c)
            if r:
                break
            quot[e] = cq
            a = a - b.shift(e) * cq
        return Laurent(quot).shift(shift), a.shift(shift)

    def exact_div(self, other: "Laurent") -> "Laurent":
        q, r = self.divmod_poly(other)
        if not r.is_zero():
            raise InexactDivision(f"{self} not divisible by {other}")
        return q

    def divides(self, other: "Laurent") -> bool:
        try:
            other.exact_div(self)
            return True
        except InexactDivision:
            return False

    def eval_fraction(self, x: Fraction) -> Fraction:
        return sum((Fraction(v) * x**k for k, v in self.c.items()), Fraction(0))

    # -- comparisons ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self.c == ({0: other} if other else {})
        if isinstance(other, Laurent):
            return self.c == other.c
        if isinstance(other, Rat):
            return Rat.of(self) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.c.items()))
        return self._hash

    def __repr__(self):
        return f"Laurent({format_laurent(self)})"


ZERO = Laurent()
ONE = Laurent({0: 1})
NU = Laurent({1: 1})
Q = Laurent({2: 1})


def _primitive(p: Laurent) -> Laurent:
    """Shift to valuation 0, divide by content, positive leading coefficient."""
    if p.is_zero():
        return p
    p = p.shift(-p.min_exp())
    c = p.content()
    if c > 1:
        p = p.intdiv(c)
    if p.leading() < 0:
        p = -p
    return p


def laurent_gcd(a: Laurent, b: Laurent) -> Laurent:
    """gcd in Z[v,v^-1], content times primitive part, positive leading coefficient."""
    if a.is_zero():
        return ZERO if b.is_zero() else _content_times_prim(b)
    if b.is_zero():
        return _content_times_prim(a)
    ca, cb = a.content(), b.content()
    g_int = _int_gcd(ca, cb)
    a, b = _primitive(a), _primitive(b)
    # primitive Euclid with pseudo-remainders
    while not b.is_zero():
        # pseudo-remainder: multiply a by lead(b)^(deg gap + 1)
        la, lb = a, b
        d = la.max_exp() - lb.max_exp()
        if d < 0:
            a, b = b, a
            continue
        m = lb.leading()
        r = la * (m ** (d + 1))
        q, rem = r.divmod_poly(lb)
        assert rem.is_zero() or rem.max_exp() < lb.max_exp()
        a, b = lb, _primitive(rem) if not rem.is_zero() else ZERO
    return _primitive(a) * g_int


def _content_times_prim(p: Laurent) -> Laurent:
    c = p.content()
    return _primitive(p) * c


class Rat:
    """Element of Q(v) as a canonical fraction of integer Laurent polynomials.

    Canonical form: gcd(num, den) = 1 (polynomial and integer content), den has
    valuation 0 and positive leading coefficient.  Equality is structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Laurent, den: Laurent, _canonical=False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def of(x) -> "Rat":
        if isinstance(x, Rat):
            return x
        if isinstance(x, int):
            return Rat(Laurent.const(x), ONE, _canonical=True)
        if isinstance(x, Laurent):
            return Rat(x, ONE, _canonical=True)
        raise TypeError(f"cannot coerce {x!r} to Rat")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def as_laurent(self) -> Laurent:
        if not self.den.is_one():
            raise InexactDivision(f"{self} is not a Laurent polynomial")
        return self.num

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        other = Rat.of(other)
        if self.den.is_one() and other.den.is_one():
            return Rat(self.num + other.num, ONE, _canonical=True)
        return Rat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = Rat.__new__(Rat)
        r.num = -self.num
        r.den = self.den
        r._hash = None
        return r

    def __sub__(self, other):
        return self + (-Rat.of(other))

    def __rsub__(self, other):
        return Rat.of(other) + (-self)

    def __mul__(self, other):
        other = Rat.of(other)
        if self.den.is_one() and other.den.is_one():
            return Rat(self.num * other.num, ONE, _canonical=True)
        return Rat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Rat.of(other)
        if other.is_zero():
            raise ZeroDivisionError
        return Rat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return Rat.of(other) / self

    def inv(self) -> "Rat":
        return Rat(self.den, self.num)

    def __pow__(self, n: int) -> "Rat":
        if n < 0:
            return self.inv() ** (-n)
        return Rat(self.num**n, self.den**n)

    def bar(self) -> "Rat":
        return Rat(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        if isinstance(other, (int, Laurent)):
            other = Rat.of(other)
        if not isinstance(other, Rat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"Rat({format_scalar(self)})"


def _canonicalize(num: Laurent, den: Laurent):
    if num.is_zero():
        return ZERO, ONE
    g = laurent_gcd(num, den)
    if not g.is_one():
        num = num.exact_div(g)
        den = den.exact_div(g)
    # den: valuation 0, positive leading coefficient; unit shifts go to num
    s = den.min_exp()
    if s:
        den = den.shift(-s)
        num = num.shift(-s)
    if den.leading() < 0:
        den = -den
        num = -num
    c = _int_gcd(num.content(), den.content())
    if c > 1:
        num = num.intdiv(c)
        den = den.intdiv(c)
    return num, den


RAT_ZERO = Rat.of(0)
RAT_ONE = Rat.of(1)


def nu_power(k: int) -> Rat:
    return Rat(Laurent.mono(1, k), ONE, _canonical=True)


# ---------------------------------------------------------------------------
# quantum numbers
# ---------------------------------------------------------------------------

def qsq(a: int, base: int = 1) -> Laurent:
    """[a] in base v^base: (x^a - 1)/(x - 1) evaluated at x = v^base."""
    if a >= 0:
        p = Laurent({k: 1 for k in range(a)})
    else:
        p = Laurent({k: -1 for k in range(a, 0)})
    return p.subs_power(base)


def qround(a: int, base: int = 1) -> Laurent:
    """(a) in base v^base: (x^a - x^-a)/(x - x^-1)."""
    if a >= 0:
        p = Laurent({k: 1 for k in range(-(a - 1), a, 2)})
    else:
        p = -Laurent({k: 1 for k in range(a + 1, -a, 2)})
    return p.subs_power(base)


def qangle(a: int, base: int = 1) -> Laurent:
    """<a> in base v^base: x^a - x^-a."""
    if a == 0:
        return ZERO
    return Laurent({a: 1, -a: -1}).subs_power(base)


def qsq_factorial(a: int, base: int = 1) -> Laurent:
    p = ONE
    for j in range(1, a + 1):
        p = p * qsq(j, base)
    return p


def qround_factorial(a: int, base: int = 1) -> Laurent:
    p = ONE
    for j in range(1, a + 1):
        p = p * qround(j, base)
    return p


def qangle_factorial(a: int, base: int = 1) -> Laurent:
    p = ONE
    for j in range(1, a + 1):
        p = p * qangle(j, base)
    return p


def qsq_binom(a: int, n: int, base: int = 1) -> Laurent:
    """[a choose n] in base v^base; 0 for n < 0."""
    if n < 0:
        return ZERO
    num = ONE
    for j in range(n):
        num = num * qsq(a - j, base)
    return num.exact_div(qsq_factorial(n, base))


def qround_binom(a: int, n: int, base: int = 1) -> Laurent:
    """(a choose n) in base v^base; 0 for n < 0."""
    if n < 0:
        return ZERO
    num = ONE
    for j in range(n):
        num = num * qround(a - j, base)
    return num.exact_div(qround_factorial(n, base))


def qnum(a: int, n: int = 0, kind: str = "round", base: int = 1) -> Laurent:
    """Dispatcher over the quantum-number families.

    kind in {square, round, angle, sq_factorial, round_factorial,
    angle_factorial, sq_binom, round_binom}; base is the exponent k with the
    variable v^k (q = v^2, q_i = v^(2 d_i)).
    """
    if kind == "square":
        return qsq(a, base)
    if kind == "round":
        return qround(a, base)
    if kind == "angle":
        return qangle(a, base)
    if kind == "sq_factorial":
        return qsq_factorial(a, base)
    if kind == "round_factorial":
        return qround_factorial(a, base)
    if kind == "angle_factorial":
        return qangle_factorial(a, base)
    if kind == "sq_binom":
        return qsq_binom(a, n, base)
    if kind == "round_binom":
        return qround_binom(a, n, base)
    raise ValueError(f"unknown quantum number kind {kind!r}")


# ---------------------------------------------------------------------------
# bar correction and denominator clearing
# ---------------------------------------------------------------------------

def solve_bar_correction(f: Laurent, side: str = "positive") -> Laurent:
    """Unique p with p - bar(p) = f and p supported in v^(>0) (or v^(<0)).

    Requires bar(f) = -f (in particular zero constant term).
    """
    if not (f + f.bar()).is_zero():
        raise BarInconsistency(f"{f} is not bar-antisymmetric")
    if side == "positive":
        return Laurent({k: v for k, v in f.c.items() if k > 0})
    if side == "negative":
        return Laurent({k: v for k, v in f.c.items() if k < 0})
    raise ValueError(f"side must be positive or negative, got {side!r}")


_cyclo_cache: dict[int, Laurent] = {}


def cyclotomic(k: int) -> Laurent:
    """k-th cyclotomic polynomial in v, exact integer coefficients."""
    if k in _cyclo_cache:
        return _cyclo_cache[k]
    p = Laurent({k: 1, 0: -1})
    for d in range(1, k):
        if k % d == 0:
            p = p.exact_div(cyclotomic(d))
    _cyclo_cache[k] = p
    return p


def _euler_phi(k: int) -> int:
    return cyclotomic(k).max_exp() if k > 1 else 1


def _factor_int_poly(p: Laurent):
    """Irreducible factorization over Z via sympy; p must have valuation 0.

    Returns (integer content, [(Laurent factor, multiplicity)]).
    """
    import sympy

    x = sympy.Symbol("x")
    expr = sympy.Poly({e: c for e, c in p.c.items()}, x)
    content, factors = expr.factor_list()
    out = []
    for f, m in factors:
        d = f.as_dict()
        lf = Laurent({(e[0] if isinstance(e, tuple) else e): int(c) for e, c in d.items()})
        out.append((lf, int(m)))
    return int(content), out


def _symmetrize_factor(p: Laurent) -> Laurent:
    """Minimal multiple of p lying in Z[v + v^-1], positive leading coefficient.

    p irreducible with valuation 0.  Returns v^(-deg/2) p when p is palindromic
    of even degree, else the normalization of p * bar(p).
    """
    deg = p.max_exp()
    rev = p.bar().shift(deg)
    if deg % 2 == 0 and (rev == p or rev == -p):
        out = p.shift(-deg // 2)
    else:
        out = (p * p.bar())
        out = out.shift(-(out.max_exp() + out.min_exp()) // 2)
    if out.leading() < 0:
        out = -out
    return out


def is_symmetric(p: Laurent) -> bool:
    """True when p is fixed by bar."""
    return p == p.bar()


def clear_denominators(fractions) -> Laurent:
    """Minimal d in Z[v+v^-1] with positive minimal leading coefficient such
    that d * f is a Laurent polynomial for every f in the input."""
    fractions = [Rat.of(f) for f in fractions]
    dens = [f.den for f in fractions if not f.is_zero()]
    if not dens:
        return ONE
    # lcm of denominators (they are canonical: content-coprime with num)
    lcm = ONE
    int_lcm = 1
    for d in dens:
        c = d.content()
        prim = _primitive(d)
        int_lcm = int_lcm * c // _int_gcd(int_lcm, c)
        g = laurent_gcd(lcm, prim)
        lcm = lcm * prim.exact_div(g)
    lcm = _primitive(lcm)
    if lcm.is_one():
        return Laurent.const(int_lcm)
    _, factors = _factor_int_poly(lcm)
    d = Laurent.const(int_lcm)
    for p, m in factors:
        d = d * _symmetrize_factor(p) ** m
    assert is_symmetric(d)
    for f in fractions:
        assert (Rat.of(d) * f).is_laurent(), "clearing factor failed"
    return d


def cyclotomic_factor(p: Laurent):
    """Factor p as unit * constant * product of cyclotomics.

    Returns (unit, constant, factors, others) where unit = (+-1, v-power),
    factors is a sorted list of (k, multiplicity) over cyclotomic indices and
    others lists non-cyclotomic irreducible Laurent factors (empty in the cases
    prop:cyclotom-style results guarantee).
    """
    if p.is_zero():
        raise ValueError("cannot factor 0")
    val = p.min_exp()
    q = p.shift(-val)
    content, factors = _factor_int_poly(q)
    sign = 1
    if content < 0:
        sign, content = -1, -content
    cyc = []
    others = []
    for f, m in factors:
        deg = f.max_exp()
        k_candidates = [k for k in range(1, 6 * deg * deg + 7) if _euler_phi(k) == deg]
        for k in k_candidates:
            if cyclotomic(k) == f:
                cyc.append((k, m))
                break
        else:
            others.append((f, m))
    cyc.sort()
    return (sign, val), content, cyc, others


# ---------------------------------------------------------------------------
# text serialization: sums "c*v^k" in decreasing k; rationals "(num)/(den)"
# ---------------------------------------------------------------------------

def format_laurent(p: Laurent) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in sorted(p.c, reverse=True):
        c = p.c[k]
        if k == 0:
            parts.append(f"{c}")
        elif k == 1:
            parts.append(f"{c}*v")
        else:
            parts.append(f"{c}*v^{k}")
    out = " + ".join(parts)
    return out.replace("+ -", "- ")


def format_scalar(x) -> str:
    x = Rat.of(x)
    if x.den.is_one():
        return format_laurent(x.num)
    return f"({format_laurent(x.num)})/({format_laurent(x.den)})"


_TERM_RE = re.compile(r"^([+-]?\d+)(?:\*v(?:\^(-?\d+))?)?$")


def parse_laurent(s: str) -> Laurent:
    s = s.strip().replace(" - ", " + -").replace("- ", "-")
    if s == "0":
        return ZERO
    out = ZERO
    for term in s.split(" + "):
        term = term.strip()
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"cannot parse Laurent term {term!r}")
        c = int(m.group(1))
        if "*v" not in term:
            k = 0
        elif m.group(2) is None:
            k = 1
        else:
            k = int(m.group(2))
        out = out + Laurent.mono(c, k)
    return out


def parse_scalar(s: str) -> Rat:
    s = s.strip()
    if s.startswith("(") and ")/(" in s and s.endswith(")"):
        numer, denom = s[1:-1].split(")/(")
        return Rat(parse_laurent(numer), parse_laurent(denom))
    return Rat.of(parse_laurent(s))
