import random

import pytest

from qdouble import Algebra
from qdouble.double import kmono, k_one
from qdouble.halves import PLUS, MINUS
from qdouble.lusztig import Engine, TriangularityError, ll_solve, toposort, product_expansion_via_coproduct
from qdouble.scalar import (
    Laurent,
    Rat,
    RAT_ONE,
    RAT_ZERO,
    nu_power,
    qangle,
    qround,
    solve_bar_correction,
)
from qdouble.sl2oracle import SL2Oracle


@pytest.fixture(scope="module")
def sl2():
    return Algebra.get("A1")


@pytest.fixture(scope="module")
def orc(sl2):
    return SL2Oracle(sl2.ctx)


@pytest.fixture(scope="module")
def a2():
    return Algebra.get("A2")


def sl2_label(alg, n):
    return alg.tables.labels_of_degree((n,))[0]


class TestLLSolve:
    def test_identity_matrix(self):
        rows = {k: {k: RAT_ONE} for k in range(4)}
        order = toposort(list(range(4)), lambda k: rows[k])
        sols = ll_solve(order, lambda k: rows[k], "positive")
        assert all(not p for p in sols.values())

    def test_two_element_family(self):
        # bar(E2) = E2 + (v - v^-1) E1 resolves to C2 = E2 + v E1
        rows = {0: {0: RAT_ONE}, 1: {1: RAT_ONE, 0: Rat.of(qangle(1))}}
        order = toposort([0, 1], lambda k: rows[k])
        sols = ll_solve(order, lambda k: rows[k], "positive")
        assert sols[1] == {0: Rat.of(Laurent({1: 1}))}

    def test_random_consistent_data(self):
        # 100 seeded instances of consistent unitriangular bar data
        rng = random.Random(2026)
        for _ in range(100):
            n = rng.randrange(2, 6)
            P = [[RAT_ZERO] * n for _ in range(n)]
            for t in range(n):
                for s in range(t):
                    if rng.random() < 0.6:
                        P[t][s] = Rat.of(
                            Laurent({rng.randrange(1, 4): rng.randrange(-3, 4)})
                        )
            # E_t = C_t + sum P[t][s] C_s with C's bar-fixed; bar matrix of E:
            import qdouble.linalg as la

            M = [[(RAT_ONE if i == j else RAT_ZERO) + P[i][j] for j in range(n)] for i in range(n)]
            Minv = la.invert(M)
            Mbar = [[c.bar() for c in row] for row in M]
            B = la.mat_mul(Mbar, Minv)
            rows = {
                t: {s: B[t][s] for s in range(n) if not B[t][s].is_zero()} for t in range(n)
            }
            order = toposort(list(range(n)), lambda k: rows[k])
            sols = ll_solve(order, lambda k: rows[k], "positive")
            R = [[RAT_ONE if i == j else sols[i].get(j, RAT_ZERO) for j in range(n)] for i in range(n)]
            assert la.mat_mul(R, M) == [
                [RAT_ONE if i == j else RAT_ZERO for j in range(n)] for i in range(n)
            ]

    def test_rejects_nonunitriangular(self):
        rows = {0: {0: Rat.of(Laurent({1: 1}))}}
        with pytest.raises(TriangularityError):
            toposort([0], lambda k: rows[k])

    def test_rejects_inconsistent(self):
        # bar datum with nonzero constant term cannot be corrected
        rows = {0: {0: RAT_ONE}, 1: {1: RAT_ONE, 0: RAT_ONE}}
        order = toposort([0, 1], lambda k: rows[k])
        with pytest.raises(Exception):
            ll_solve(order, lambda k: rows[k], "positive")


class TestCircSL2:
    def test_f_circ_e(self, sl2, orc):
        lab1 = sl2_label(sl2, 1)
        got = sl2.circ(lab1, lab1)
        # F o E = FE - q K_+
        expected = orc.circ_closed(1, 1)
        assert got == expected

    def test_engine_vs_oracle_grid(self, sl2, orc):
        for mm in range(5):
            for mp in range(5):
                got = sl2.circ(sl2_label(sl2, mm), sl2_label(sl2, mp))
                assert got == orc.circ_closed(mm, mp), (mm, mp)

    def test_diamond_shifts(self, sl2, orc):
        for a in range(3):
            got = sl2.ctx.diamond(kmono((0,), (a,)), sl2.circ(sl2_label(sl2, 2), sl2_label(sl2, 2)))
            want = sl2.ctx.diamond(kmono((0,), (a,)), orc.circ_closed(2, 2))
            assert got == want


class TestBulletSL2:
    def test_f_bullet_e_is_c1(self, sl2, orc):
        lab1 = sl2_label(sl2, 1)
        assert sl2.bullet(lab1, lab1) == orc.chebyshev(1)

    def test_cheb_tower(self, sl2, orc):
        for m in range(5):
            lab = sl2_label(sl2, m)
            assert sl2.bullet(lab, lab) == orc.chebyshev(m), m

    def test_engine_vs_oracle_grid(self, sl2, orc):
        for mm in range(5):
            for mp in range(5):
                got = sl2.bullet(sl2_label(sl2, mm), sl2_label(sl2, mp))
                assert got == orc.bullet_closed(mm, mp), (mm, mp)

    def test_shifted_family(self, sl2, orc):
        for am in range(3):
            for ap in range(3):
                got = sl2.ctx.diamond(
                    kmono((am,), (ap,)), sl2.bullet(sl2_label(sl2, 1), sl2_label(sl2, 3))
                )
                assert got == sl2.ctx.diamond(kmono((am,), (ap,)), orc.bullet_closed(1, 3))


class TestMultipliers:
    def test_sl2_trivial(self, sl2):
        for a in range(4):
            for b in range(4):
                assert sl2.d_multiplier(sl2_label(sl2, a), sl2_label(sl2, b)) == Laurent({0: 1})

    def test_a2_trivial_small(self, a2):
        for gm in [(1, 0), (1, 1), (2, 1)]:
            for gp in [(1, 0), (1, 1)]:
                for lm in a2.tables.labels_of_degree(gm):
                    for lp in a2.tables.labels_of_degree(gp):
                        assert a2.d_multiplier(lm, lp) == Laurent({0: 1})

    def test_affine_fij(self):
        aff = Algebra.get("A1affine")
        labs = aff.tables.labels_of_degree((1, 1))
        # d on the dual pair F_ij, E_ij is (2)_q; mixed pairs stay trivial
        f_ij = aff.tables._two_letter_label(0, 1, 1, 0)
        f_ji = aff.tables._two_letter_label(0, 1, 0, 1)
        assert set([f_ij, f_ji]) <= set(labs)
        assert aff.d_multiplier(f_ij, f_ij) == qround(2, 2)
        assert aff.d_multiplier(f_ji, f_ji) == qround(2, 2)

    def test_r3_fijk(self):
        r3 = Algebra.get("R3")
        assert "F[1 2 3]" in r3.tables.labels_of_degree((1, 1, 1))
        assert r3.d_multiplier("F[1 2 3]", "F[1 2 3]") == qround(3, 2)


class TestRank2Printed:
    def test_a2_fij_bullet(self, a2):
        # F_ij bullet E_ij = F_ij E_ij - q K_+1 K_+2 - q^-1 K_-1 K_-2
        f12 = a2.tables.two_letter_dcb(0, 1, 1, 0)
        lab = a2.label_of(MINUS, f12)
        got = a2.bullet(lab, lab)
        expected = (
            a2.ctx.from_halves(minus=f12, plus=a2.half.flip(f12), flavor="full")
            - a2.ctx.k_elem(kmono((0, 0), (1, 1))).scale(nu_power(2))
            - a2.ctx.k_elem(kmono((1, 1), (0, 0))).scale(nu_power(-2))
        )
        assert got == expected

    def test_b2_sp4_circ(self):
        b2 = Algebra.get("B2")
        half = b2.half
        f121 = b2.tables.two_letter_dcb(0, 1, 1, 1)
        lab121 = b2.label_of(MINUS, f121)
        f12 = b2.tables.two_letter_dcb(0, 1, 1, 0)
        f21 = b2.tables.two_letter_dcb(0, 1, 0, 1)
        e21 = half.flip(f21)
        f1 = half.gen(MINUS, 0)
        e1 = half.gen(PLUS, 0)
        got = b2.circ(lab121, lab121)
        expected = (
            b2.ctx.from_halves(minus=f121, plus=half.flip(f121), flavor="heis_plus")
            - b2.ctx.from_halves(minus=f12, plus=e21, K=kmono((0, 0), (1, 0)), flavor="heis_plus").scale(nu_power(2))
            + b2.ctx.from_halves(minus=f1, plus=e1, K=kmono((0, 0), (1, 1)), flavor="heis_plus").scale(nu_power(6))
            - b2.ctx.k_elem(kmono((0, 0), (2, 1)), "heis_plus").scale(nu_power(8))
        )
        assert got == expected

    def test_b2_sp4_bullet(self):
        # F_121 bullet E_121 = iota(F_121 o E_121) - q^-1 K_-1 iota(F_21 o E_12)
        #                      + q^-3 K_-1 K_-2 iota(F_1 o E_1) - q^-4 K_-1^2 K_-2
        # (signs of the last two terms fixed by bar-invariance; the displayed
        # version is not bar-fixed, while the companion RST expansion of the
        # canonical invariant carries exactly these signs)
        b2 = Algebra.get("B2")
        lab121 = b2.label_of(MINUS, b2.tables.two_letter_dcb(0, 1, 1, 1))
        lab_f21 = b2.label_of(MINUS, b2.tables.two_letter_dcb(0, 1, 0, 1))
        lab_f12 = b2.label_of(MINUS, b2.tables.two_letter_dcb(0, 1, 1, 0))
        lab_f1 = b2.label_of(MINUS, b2.half.gen(MINUS, 0))
        got = b2.bullet(lab121, lab121)
        km1 = kmono((1, 0), (0, 0))
        km12 = kmono((1, 1), (0, 0))
        expected = (
            b2.circ(lab121, lab121).with_flavor("full")
            - b2.ctx.multiply(
                b2.ctx.k_elem(km1), b2.circ(lab_f21, lab_f12).with_flavor("full")
            ).scale(nu_power(-2))
            + b2.ctx.multiply(
                b2.ctx.k_elem(km12), b2.circ(lab_f1, lab_f1).with_flavor("full")
            ).scale(nu_power(-6))
            - b2.ctx.k_elem(kmono((2, 1), (0, 0))).scale(nu_power(-8))
        )
        assert got == expected
        assert b2.ctx.bar(expected) == expected


class TestStructureConstants:
    def test_sl2_fe(self, sl2):
        lab1 = sl2_label(sl2, 1)
        coeffs, report = sl2.structure_constants(lab1, lab1)
        z = (0,)
        lab0 = sl2.tables.labels_of_degree((0,))[0]
        assert coeffs[((z, z), lab1, lab1)] == RAT_ONE
        assert coeffs[((z, (1,)), lab0, lab0)] == Rat.of(Laurent({2: 1}))
        assert coeffs[(((1,), z), lab0, lab0)] == Rat.of(Laurent({-2: 1}))
        assert report["positive"]

    def test_sl2_recursion_coefficients(self, sl2, orc):
        # F^n E^n = sum c(n)_{r,j} K_-^j K_+^(r-j) C^(n-r) with the printed
        # recursion; positivity asserted through n = 5
        cs = {(0, 0, 0): Laurent({0: 1})}

        def c(n, r, j):
            if r < 0 or j < 0 or j > r or r > n:
                return Laurent()
            if (n, r, j) in cs:
                return cs[(n, r, j)]
            val = (
                c(n - 1, r, j) + c(n - 1, r - 2, j - 1)
            ) + c(n - 1, r - 1, j).shift(-2) + c(n - 1, r - 1, j - 1).shift(2)
            val = val.shift(4 * (r - 2 * j))
            cs[(n, r, j)] = val
            return val

        ctx = sl2.ctx
        for n in range(1, 6):
            lhs = ctx.multiply(orc.fpow(n), orc.epow(n))
            rhs = ctx.zero("full")
            for r in range(n + 1):
                for j in range(r + 1):
                    coeff = c(n, r, j)
                    assert all(v >= 0 for v in coeff.c.values()), (n, r, j)
                    if not coeff.is_zero():
                        rhs = rhs + ctx.multiply(
                            ctx.k_elem(kmono((j,), (r - j,))), orc.chebyshev(n - r)
                        ).scale(coeff)
            assert lhs == rhs, n

    def test_integrality_a2(self, a2):
        for lm in a2.tables.labels_of_degree((1, 1)):
            for lp in a2.tables.labels_of_degree((1, 1)):
                coeffs, report = a2.structure_constants(lm, lp)
                for c in coeffs.values():
                    assert c.is_laurent()

    def test_degree_zero(self, sl2):
        lab0 = sl2.tables.labels_of_degree((0,))[0]
        coeffs, _ = sl2.structure_constants(lab0, lab0)
        assert coeffs == {(((0,), (0,)), lab0, lab0): RAT_ONE}


class TestSymmetries:
    def test_transpose_symmetry(self, a2):
        # (K diamond (b- bullet b+))^t = K diamond (b+^t bullet b-^t)
        for gm, gp in [((1, 0), (1, 0)), ((1, 1), (1, 0)), ((1, 1), (1, 1))]:
            for lm in a2.tables.labels_of_degree(gm):
                for lp in a2.tables.labels_of_degree(gp):
                    lhs = a2.ctx.transpose(a2.bullet(lm, lp))
                    lm2 = a2.tables.transpose_label(PLUS, lp)
                    lp2 = a2.tables.transpose_label(MINUS, lm)
                    assert lhs == a2.bullet(lm2, lp2), (lm, lp)
                    K = kmono((1, 0), (0, 1))
                    lhs2 = a2.ctx.transpose(a2.ctx.diamond(K, a2.bullet(lm, lp)))
                    assert lhs2 == a2.ctx.diamond(K, a2.bullet(lm2, lp2))

    def test_star_report(self, a2):
        # the star conjecture is reported, never asserted
        report = []
        for lm in a2.tables.labels_of_degree((1, 1)):
            for lp in a2.tables.labels_of_degree((1, 1)):
                lhs = a2.ctx.star(a2.bullet(lm, lp))
                lm2 = a2.tables.star_label(MINUS, lm)
                lp2 = a2.tables.star_label(PLUS, lp)
                K = kmono((0, 0), (0, 0))
                rhs = a2.bullet(lm2, lp2)
                report.append(((lm, lp), lhs == rhs))
        assert all(isinstance(ok, bool) for _, ok in report)

    def test_idempotence(self, sl2):
        # feeding computed elements back returns them unchanged: the engine
        # re-solve of the same pair is cached and bar-fixed
        lab2 = sl2_label(sl2, 2)
        x = sl2.bullet(lab2, lab2)
        assert sl2.ctx.bar(x) == x
        assert sl2.bullet(lab2, lab2) == x


class TestSpecialClosedForm:
    def test_fr_bullet_kernel_element(self, a2):
        # for b+ in ker partial_i^op, F_i^r bullet b+ = iota(F_i^r o b+) and the
        # corrections only carry K_{+i} powers (the printed special shape)
        half = a2.half
        b_plus = a2.dcb_elem(PLUS, "b+(0,1,0,0)")  # E_2: killed by partial_1^op
        assert half.deriv(0, b_plus, "op").is_zero()
        lm = a2.label_of(MINUS, half.word(MINUS, "11"))
        lp = "b+(0,1,0,0)"
        got = a2.bullet(lm, lp)
        assert got == a2.circ(lm, lp).with_flavor("full")
        cert = a2.engine.certificate("circ", lm, lp)
        for (alpha, _, _), coeff in cert.items():
            assert alpha[1] == 0  # only K_{+1} appears for i = 1


class TestTwoPathAgreement:
    def test_rank2_products(self, a2):
        for lm_deg, lp_deg in [((1, 0), (1, 0)), ((1, 1), (1, 0)), ((1, 1), (1, 1))]:
            for lm in a2.tables.labels_of_degree(lm_deg):
                for lp in a2.tables.labels_of_degree(lp_deg):
                    via_copr = product_expansion_via_coproduct(a2, lm, lp)
                    direct = a2.ctx.multiply(
                        a2.ctx.from_halves(plus=a2.dcb_elem(PLUS, lp), flavor="full"),
                        a2.ctx.from_halves(minus=a2.dcb_elem(MINUS, lm), flavor="full"),
                    )
                    assert via_copr == direct, (lm, lp)

    def test_sl2_products(self, sl2):
        for mm in range(3):
            for mp in range(3):
                lm, lp = sl2_label(sl2, mm), sl2_label(sl2, mp)
                assert product_expansion_via_coproduct(sl2, lm, lp) == sl2.ctx.multiply(
                    sl2.ctx.from_halves(plus=sl2.dcb_elem(PLUS, lp), flavor="full"),
                    sl2.ctx.from_halves(minus=sl2.dcb_elem(MINUS, lm), flavor="full"),
                )


class TestEnumerateBasis:
    def test_sl2_bound(self, sl2, orc):
        rows = sl2.engine.enumerate_basis((2,))
        # every element matches the closed-form family K^a diamond F C^(m0) E
        seen = set()
        for row in rows:
            am, ap = row["K_minus"][0], row["K_plus"][0]
            mm = sum(sl2.tables.degree_of(row["b_minus"]))
            mp = sum(sl2.tables.degree_of(row["b_plus"]))
            m = min(mm, mp)
            want = orc.basis_elem(am, ap, mm - m, m, mp - m)
            assert row["element"] == want
            seen.add((am, ap, mm, mp))
        assert ((0, 0, 1, 1)) in seen
        assert len(rows) == len(seen)

    def test_empty_bound(self, a2):
        rows = a2.engine.enumerate_basis((0, 0))
        assert len(rows) == 1
        assert rows[0]["b_minus"] == "1" and rows[0]["b_plus"] == "1"

    def test_biparabolic_filter(self, a2):
        rows = a2.engine.enumerate_basis((1, 1), j_minus=set(), j_plus={0, 1})
        assert all(row["b_minus"] == "1" for row in rows)
        assert any(row["b_plus"] != "1" for row in rows)


class TestInterchangeVariant:
    def test_variant_runs_and_reports(self, sl2, orc):
        # the q <-> q^-1, H+ <-> H- variant is computed behind a flag and
        # compared, never asserted equal
        lab1 = sl2_label(sl2, 1)
        var = sl2.bullet(lab1, lab1, variant="minus")
        std = sl2.bullet(lab1, lab1)
        report = {"equal": var == std}
        assert isinstance(report["equal"], bool)
        # the variant is bar-fixed as well
        assert sl2.ctx.bar(var) == var
