"""Lowest-weight modules from explicit action tables, the Shapovalov pairing,
the canonical invariant, and the equivariant map into the weight-extended
double, with comparison hooks against bullet elements."""
from __future__ import annotations

from .double import TriElem, kmono
from .halves import HalfElem, PLUS, MINUS
from .scalar import Rat, RAT_ONE, RAT_ZERO, nu_power, qangle, qangle_factorial, qround
from . import linalg


class ModuleError(ValueError):
    pass


class LWModule:
    """Lowest-weight module given by action matrices of the unit divided powers.

    E[i][k][j] is the v_k-coefficient of E_i^<1> v_j (same layout for F).
    Relations are verified at construction; the Shapovalov pairing is built
    from the lowest-weight vector (or taken from the input blocks).
    """

    def __init__(self, algebra, name, mu, degrees, E, F, shapovalov=None, check=True):
        self.alg = algebra
        self.datum = algebra.datum
        self.name = name
        self.mu = tuple(mu)  # coroot evaluations of the lowest weight's negative
        self.degrees = [tuple(d) for d in degrees]
        self.dim = len(self.degrees)
        self.E = {i: [[Rat.of(c) for c in row] for row in M] for i, M in E.items()}
        self.F = {i: [[Rat.of(c) for c in row] for row in M] for i, M in F.items()}
        self._shap = shapovalov
        if check:
            self._check_relations()
        self._build_shapovalov()

    # -- scalars ---------------------------------------------------------------
    def weight_exp(self, i: int, j: int) -> int:
        """nu-exponent of the K_i-eigenvalue on v_j: q_i^(coroot(-mu + |v_j|))."""
        w = -self.mu[i] + self.datum.coroot(i, self.degrees[j])
        return self.datum.qi_exp(i) * w

    def _mat_mul(self, A, B):
        return linalg.mat_mul(A, B)

    def _check_relations(self):
        datum = self.datum
        n = self.dim
        rank = datum.rank
        zero = [[RAT_ZERO] * n for _ in range(n)]
        # degree compatibility
        for i in range(rank):
            for j in range(n):
                for k in range(n):
                    if not self.E[i][k][j].is_zero():
                        expected = tuple(
                            d + (1 if t == i else 0) for t, d in enumerate(self.degrees[j])
                        )
                        if self.degrees[k] != expected:
                            raise ModuleError(f"E_{i} breaks the grading at {j}->{k}")
                    if not self.F[i][k][j].is_zero():
                        expected = tuple(
                            d - (1 if t == i else 0) for t, d in enumerate(self.degrees[j])
                        )
                        if self.degrees[k] != expected:
                            raise ModuleError(f"F_{i} breaks the grading at {j}->{k}")
        # commutators [E_i^<1>, F_j^<1>] = delta_ij diag(-(coroot(-mu+|v|))_{q_i})
        for i in range(rank):
            for j in range(rank):
                comm = [
                    [
                        sum((self.E[i][a][t] * self.F[j][t][b] for t in range(n)), RAT_ZERO)
                        - sum((self.F[j][a][t] * self.E[i][t][b] for t in range(n)), RAT_ZERO)
                        for b in range(n)
                    ]
                    for a in range(n)
                ]
                if i != j:
                    if comm != zero:
                        raise ModuleError(f"[E_{i}, F_{j}] does not vanish")
                else:
                    for b in range(n):
                        w = -self.mu[i] + self.datum.coroot(i, self.degrees[b])
                        want = Rat.of(qround(w, datum.qi_exp(i))) * Rat.of(-1)
                        for a in range(n):
                            expect = want if a == b else RAT_ZERO
                            if comm[a][b] != expect:
                                raise ModuleError(f"[E_{i}, F_{i}] wrong at ({a},{b})")
        # quantum Serre relations at unit divided powers
        for i in range(rank):
            for j in range(rank):
                if i == j or rank == 1:
                    continue
                m = 1 - datum.A[i][j]
                for mats, tag in ((self.E, "E"), (self.F, "F")):
                    acc = [[RAT_ZERO] * n for _ in range(n)]
                    for s in range(m + 1):
                        r = m - s
                        denom = Rat.of(qangle_factorial(r, datum.qi_exp(i))) * Rat.of(
                            qangle_factorial(s, datum.qi_exp(i))
                        )
                        scale = Rat.of((-1) ** s) * Rat.of(
                            qangle(1, datum.qi_exp(i))
                        ) ** (r + s) / denom
                        term = self._pow(mats[i], r)
                        term = self._mat_mul(term, mats[j])
                        term = self._mat_mul(term, self._pow(mats[i], s))
                        for a in range(n):
                            for b in range(n):
                                acc[a][b] = acc[a][b] + term[a][b] * scale
                    if acc != [[RAT_ZERO] * n for _ in range(n)]:
                        raise ModuleError(f"Serre relation fails on {tag}-side at ({i},{j})")

    def _pow(self, M, k):
        n = self.dim
        out = [[RAT_ONE if a == b else RAT_ZERO for b in range(n)] for a in range(n)]
        for _ in range(k):
            out = self._mat_mul(M, out)
        return out

    def _build_shapovalov(self):
        if self._shap is not None:
            self.shap = [Rat.of(c) for c in self._shap]
            return
        n = self.dim
        shap: list = [None] * n
        # the lowest-weight vector is the unique degree-zero one
        order = sorted(range(n), key=lambda j: sum(self.degrees[j]))
        base = order[0]
        if any(self.degrees[base]):
            raise ModuleError("no lowest-weight vector of degree zero")
        shap[base] = RAT_ONE
        for j in order[1:]:
            done = False
            for i in range(self.datum.rank):
                for w in range(n):
                    if shap[w] is None or self.E[i][j][w].is_zero():
                        continue
                    # <v_j|v_j> from <E_i w | v_j> = <w | F_i v_j>
                    c = self.E[i][j][w]
                    val = sum(
                        (self.F[i][t][j] * (shap[t] if t == w else RAT_ZERO) for t in range(n)),
                        RAT_ZERO,
                    )
                    shap[j] = val / c
                    done = True
                    break
                if done:
                    break
            if not done:
                raise ModuleError(f"cannot reach vector {j} for the Shapovalov chain")
        if any(s is None or s.is_zero() for s in shap):
            raise ModuleError("Shapovalov block is singular")
        self.shap = shap
        # adjointness spot-check
        for i in range(self.datum.rank):
            for a in range(n):
                for b in range(n):
                    lhs = self.E[i][b][a] * self.shap[b]
                    rhs = self.F[i][a][b] * self.shap[a]
                    if lhs != rhs:
                        raise ModuleError("Shapovalov adjointness fails")

    # -- actions -----------------------------------------------------------------
    def act_letter(self, sign: int, i: int, vec: dict) -> dict:
        """Action of E_i (sign +) or F_i (sign -) in the paper normalization
        X_i = <1>_{q_i} X_i^<1>."""
        M = self.E[i] if sign == PLUS else self.F[i]
        bracket = Rat.of(qangle(1, self.datum.qi_exp(i)))
        out: dict = {}
        for j, c in vec.items():
            for k in range(self.dim):
                if not M[k][j].is_zero():
                    s = out.get(k, RAT_ZERO) + c * M[k][j] * bracket
                    if s.is_zero():
                        out.pop(k, None)
                    else:
                        out[k] = s
        return out

    def act_half(self, x: HalfElem, vec: dict) -> dict:
        out: dict = {}
        for w, coeff in x.terms.items():
            cur = dict(vec)
            for letter in reversed(w):
                cur = self.act_letter(x.sign, letter, cur)
                if not cur:
                    break
            for k, c in cur.items():
                s = out.get(k, RAT_ZERO) + coeff * c
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        return out

    def pairing(self, u: dict, v: dict) -> Rat:
        total = RAT_ZERO
        for j, c in u.items():
            if j in v:
                total = total + c * v[j] * self.shap[j]
        return total

    def dual_vector(self, j: int) -> dict:
        return {j: self.shap[j].inv()}


# ---------------------------------------------------------------------------
# built-in modules
# ---------------------------------------------------------------------------

def sl2_module(algebra, m: int) -> LWModule:
    """(m+1)-dimensional irreducible with standard divided-power action."""
    n = m + 1
    E = [[RAT_ZERO] * n for _ in range(n)]
    F = [[RAT_ZERO] * n for _ in range(n)]
    for b in range(n):
        if b + 1 < n:
            E[b + 1][b] = Rat.of(qround(b + 1, 2))
        if b - 1 >= 0:
            F[b - 1][b] = Rat.of(qround(m - b + 1, 2)) * Rat.of(-1)
    degrees = [(b,) for b in range(n)]
    return LWModule(algebra, f"sl2-dim{n}", (m,), degrees, {0: E}, {0: F})


def vector_module(algebra) -> LWModule:
    """Vector representation of sl_(n+1) with lowest weight -omega_1."""
    rank = algebra.datum.rank
    n = rank + 1
    E = {i: [[RAT_ZERO] * n for _ in range(n)] for i in range(rank)}
    F = {i: [[RAT_ZERO] * n for _ in range(n)] for i in range(rank)}
    for i in range(rank):
        E[i][i + 1][i] = RAT_ONE
        F[i][i][i + 1] = Rat.of(-1)
    degrees = [tuple(1 if t < j else 0 for t in range(rank)) for j in range(n)]
    mu = tuple(1 if i == 0 else 0 for i in range(rank))
    return LWModule(algebra, f"sl{n}-vector", mu, degrees, E, F)


def sp4_module(algebra, fundamental: int) -> LWModule:
    """The two fundamental modules of sp4 on the short-first preset."""
    if fundamental == 1:
        degrees = [(0, 0), (1, 0), (1, 1), (2, 1)]
        E = {0: [[RAT_ZERO] * 4 for _ in range(4)], 1: [[RAT_ZERO] * 4 for _ in range(4)]}
        F = {0: [[RAT_ZERO] * 4 for _ in range(4)], 1: [[RAT_ZERO] * 4 for _ in range(4)]}
        E[0][1][0] = RAT_ONE
        E[1][2][1] = RAT_ONE
        E[0][3][2] = RAT_ONE
        F[0][2][3] = Rat.of(-1)
        F[1][1][2] = Rat.of(-1)
        F[0][0][1] = Rat.of(-1)
        return LWModule(algebra, "sp4-omega1", (1, 0), degrees, E, F)
    if fundamental == 2:
        degrees = [(0, 0), (0, 1), (1, 1), (2, 1), (2, 2)]
        E = {0: [[RAT_ZERO] * 5 for _ in range(5)], 1: [[RAT_ZERO] * 5 for _ in range(5)]}
        F = {0: [[RAT_ZERO] * 5 for _ in range(5)], 1: [[RAT_ZERO] * 5 for _ in range(5)]}
        two_q = Rat.of(qround(2, 2))
        E[1][1][0] = RAT_ONE
        E[0][2][1] = RAT_ONE
        E[0][3][2] = two_q
        E[1][4][3] = RAT_ONE
        F[1][0][1] = Rat.of(-1)
        F[0][1][2] = two_q * Rat.of(-1)
        F[0][2][3] = Rat.of(-1)
        F[1][3][4] = Rat.of(-1)
        return LWModule(algebra, "sp4-omega2", (0, 1), degrees, E, F)
    raise ValueError("fundamental must be 1 or 2")


def module_from_obj(algebra, obj) -> LWModule:
    """Module file: {"mu":[...],"vectors":[{"name","degree"}...],
    "E":{i: matrix},"F":{i: matrix},"shapovalov":[...]} with scalar strings."""
    from .scalar import parse_scalar

    degrees = [tuple(v["degree"]) for v in obj["vectors"]]
    E = {
        int(i): [[parse_scalar(c) for c in row] for row in M] for i, M in obj["E"].items()
    }
    F = {
        int(i): [[parse_scalar(c) for c in row] for row in M] for i, M in obj["F"].items()
    }
    shap = [parse_scalar(c) for c in obj["shapovalov"]] if "shapovalov" in obj else None
    return LWModule(algebra, obj.get("name", "user"), tuple(obj["mu"]), degrees, E, F, shap)


# ---------------------------------------------------------------------------
# the equivariant map
# ---------------------------------------------------------------------------

class RSTMap:
    def __init__(self, algebra, module: LWModule, basis: str = "words"):
        self.alg = algebra
        self.V = module
        self.datum = algebra.datum
        self.basis_kind = basis
        self._dual_cache: dict = {}

    # -- dual bases of the halves w.r.t. the brace pairing -----------------------
    def brace(self, u_minus: HalfElem, u_plus: HalfElem) -> Rat:
        """{u_-, u_+} = q^(-ulgamma/2) <u_+, u_->, degreewise."""
        total = RAT_ZERO
        for gamma in set(u_minus.degrees()) & set(u_plus.degrees()):
            total = total + nu_power(-self.datum.ulgamma(gamma)) * self.alg.half.pair(
                u_plus.component(gamma), u_minus.component(gamma)
            )
        return total

    def _bases(self, gamma):
        key = (tuple(gamma), self.basis_kind)
        if key in self._dual_cache:
            return self._dual_cache[key]
        half = self.alg.half
        basis = half.degree_basis(tuple(gamma))
        if self.basis_kind == "words":
            plus = [half.element(PLUS, {w: RAT_ONE}) for w in basis.pivot_rows]
            minus = [half.element(MINUS, {w: RAT_ONE}) for w in basis.pivot_cols]
        elif self.basis_kind == "dcb":
            labs = self.alg.tables.labels_of_degree(tuple(gamma))
            plus = [self.alg.dcb_elem(PLUS, lab) for lab in labs]
            minus = [self.alg.dcb_elem(MINUS, lab) for lab in labs]
        else:
            raise ValueError(f"unknown basis kind {self.basis_kind!r}")
        # duals: check_plus[b] in U^- with {check_plus[b], plus[c]} = delta
        span_minus = [half.element(MINUS, {w: RAT_ONE}) for w in basis.pivot_cols]
        span_plus = [half.element(PLUS, {w: RAT_ONE}) for w in basis.pivot_rows]
        P = [[self.brace(sm, bp) for bp in plus] for sm in span_minus]
        Pinv = linalg.invert(P) if P else []
        check_plus = []
        for b in range(len(plus)):
            elem = half.zero(MINUS)
            for a in range(len(span_minus)):
                coeff = Pinv[b][a]
                if not coeff.is_zero():
                    elem = elem + span_minus[a].scale(coeff)
            check_plus.append(elem)
        Q = [[self.brace(bm, sp) for sp in span_plus] for bm in minus]
        Qinv = linalg.invert(Q) if Q else []
        check_minus = []
        for b in range(len(minus)):
            elem = half.zero(PLUS)
            for a in range(len(span_plus)):
                coeff = Qinv[a][b]
                if not coeff.is_zero():
                    elem = elem + span_plus[a].scale(coeff)
            check_minus.append(elem)
        out = (plus, minus, check_plus, check_minus)
        self._dual_cache[key] = out
        return out

    # -- the map itself --------------------------------------------------------------
    def xi_pair(self, uvec: dict, vvec: dict) -> TriElem:
        """Xi(u tensor v) for vectors given as index -> coefficient dicts."""
        V = self.V
        alg = self.alg
        datum = self.datum
        ctx = alg.ctx
        rank = datum.rank
        out = ctx.zero("check")
        tag = tuple(2 * m for m in V.mu)
        by_deg_u: dict = {}
        for j, c in uvec.items():
            by_deg_u.setdefault(V.degrees[j], {})[j] = c
        by_deg_v: dict = {}
        for j, c in vvec.items():
            by_deg_v.setdefault(V.degrees[j], {})[j] = c
        for du, uv in by_deg_u.items():
            for dv, vv in by_deg_v.items():
                prefactor = nu_power(datum.ulgamma(dv) - datum.ulgamma(du))
                for gp in datum.degrees_up_to(dv):
                    gm = tuple(a - b + c_ for a, b, c_ in zip(du, dv, gp))
                    if any(x < 0 for x in gm):
                        continue
                    plus, minus, check_plus, check_minus = self._bases(gp)
                    if gm != gp:
                        plus_m, minus_m, check_plus_m, check_minus_m = self._bases(gm)
                    else:
                        plus_m, minus_m, check_plus_m, check_minus_m = (
                            plus,
                            minus,
                            check_plus,
                            check_minus,
                        )
                    eta_exp = 2 * datum.eta(gp)
                    for bp, cp in zip(plus, check_plus):
                        cp_v = V.act_half(cp, vv)
                        if not cp_v:
                            continue
                        for bm, cm in zip(minus_m, check_minus_m):
                            cm_t = alg.half.transpose(cm)
                            cm_u = V.act_half(cm_t, uv)
                            if not cm_u:
                                continue
                            val = V.pairing(cp_v, cm_u)
                            if val.is_zero():
                                continue
                            # (K_(kv,0) diamond b_-)(K_(0,2mu-dv) diamond b_+)
                            # assembled in triangular form: K1 K2 b_- b_+ with
                            # the two diamond twists and the K2 crossing of b_-
                            kv = tuple(a - b for a, b in zip(dv, gp))
                            K1 = kmono(kv, (0,) * rank)
                            K2 = kmono((0,) * rank, tuple(-x for x in dv), tag)
                            exp = (
                                ctx.kdif_dot(K1, gm)
                                + 2 * ctx.kdif_dot(K2, gm)
                                - ctx.kdif_dot(K2, gp)
                            )
                            from .double import k_mul

                            term = ctx.from_halves(
                                minus=bm, plus=bp, K=k_mul(K1, K2), flavor="check"
                            )
                            out = out + term.scale(
                                val * prefactor * nu_power(eta_exp + exp)
                            )
        return ctx.normalize_tags(out)

    def xi_invariant(self) -> TriElem:
        """Xi applied to the canonical invariant."""
        V = self.V
        datum = self.datum
        total = self.alg.ctx.zero("check")
        rho_exp = 2 * datum.two_rho_dot(V.mu)
        for a in range(V.dim):
            coeff = nu_power(rho_exp - 4 * datum.eta(V.degrees[a]))
            total = total + self.xi_pair(V.dual_vector(a), {a: RAT_ONE}).scale(coeff)
        return self.alg.ctx.normalize_tags(total)

    def canonical_invariant(self):
        """1_V as a list of (coefficient, dual-slot vector, vector index)."""
        V = self.V
        rho_exp = 2 * self.datum.two_rho_dot(V.mu)
        out = []
        for a in range(V.dim):
            coeff = nu_power(rho_exp - 4 * self.datum.eta(V.degrees[a]))
            out.append((coeff, V.dual_vector(a), a))
        return out

    # -- verification hooks ------------------------------------------------------------
    def centrality_check(self, x: TriElem) -> bool:
        """[x, E_i] = [x, F_i] = 0 after the group-like projection."""
        ctx = self.alg.ctx
        for i in range(self.datum.rank):
            for gen in (ctx.e_gen(i, "check"), ctx.f_gen(i, "check")):
                comm = ctx.multiply(x, gen) - ctx.multiply(gen, x)
                if not ctx.project_group_like(comm).is_zero():
                    return False
        return True

    def equivariance_check(self, i: int, uvec: dict, vvec: dict) -> bool:
        """Xi(E_i^<1> . (u tensor v)) = [E_i^<1>, Xi(u tensor v)] K_{+i}^(-1)."""
        V = self.V
        ctx = self.alg.ctx
        datum = self.datum
        bracket = Rat.of(qangle(1, datum.qi_exp(i)))

        def k_eig(j, power):
            w = -V.mu[i] + datum.coroot(i, V.degrees[j])
            return nu_power(power * datum.qi_exp(i) * w)

        # tensor action: E(u x v) = u x E(v) - K^-1 F(u) x K(v)
        terms = []
        for j, cu in uvec.items():
            for k, cv in vvec.items():
                ev = {t: Rat.of(M) for t, M in enumerate(r[k] for r in V.E[i]) if not M.is_zero()}
                for t, m in ev.items():
                    terms.append((cu * cv * m, {j: RAT_ONE}, {t: RAT_ONE}))
                fu = {t: M for t, M in enumerate(r[j] for r in V.F[i]) if not M.is_zero()}
                for t, m in fu.items():
                    coeff = cu * cv * m * k_eig(t, -1) * k_eig(k, 1) * Rat.of(-1)
                    terms.append((coeff, {t: RAT_ONE}, {k: RAT_ONE}))
        lhs = ctx.zero("check")
        for coeff, uu, vv in terms:
            lhs = lhs + self.xi_pair(uu, vv).scale(coeff)
        xi_uv = self.xi_pair(uvec, vvec)
        E = ctx.e_gen(i, "check").scale(bracket.inv())
        rank = datum.rank
        kp_inv = ctx.k_elem(kmono((0,) * rank, tuple(-1 if t == i else 0 for t in range(rank))), "check")
        rhs = ctx.multiply(ctx.multiply(E, xi_uv) - ctx.multiply(xi_uv, E), kp_inv)
        return ctx.normalize_tags(lhs) == ctx.normalize_tags(rhs)
