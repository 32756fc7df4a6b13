import pytest

from qdouble.cartan import CartanDatum, CartanError, PRESETS, LONGEST_WORDS, get_datum


A2 = PRESETS["A2"]
B2 = PRESETS["B2"]
G2 = PRESETS["G2"]


class TestDot:
    def test_a2_cross(self):
        assert A2.dot((1, 0), (0, 1)) == -1

    def test_zero(self):
        assert A2.dot((3, 2), (0, 0)) == 0

    def test_b2_cross(self):
        # d1 a12 = 1 * (-2)
        assert B2.dot((1, 0), (0, 1)) == -2

    def test_symmetry(self):
        for datum in PRESETS.values():
            n = datum.rank
            for i in range(n):
                for j in range(n):
                    assert datum.dot(datum.alpha(i), datum.alpha(j)) == datum.dot(datum.alpha(j), datum.alpha(i))


class TestUlgamma:
    def test_simple_roots(self):
        for datum in PRESETS.values():
            for i in range(datum.rank):
                assert datum.ulgamma(datum.alpha(i)) == 0

    def test_cocycle(self):
        a = (2, 1)
        b = (0, 3)
        s = tuple(x + y for x, y in zip(a, b))
        assert A2.ulgamma(s) == A2.ulgamma(a) + A2.ulgamma(b) + A2.dot(a, b)

    def test_sl2_power(self):
        A1 = PRESETS["A1"]
        for k in range(6):
            assert A1.ulgamma((k,)) == k * k - k


class TestCoroot:
    def test_plus(self):
        assert A2.coroot_bi(0, (((0, 0)), (1, 0))) == 2

    def test_minus(self):
        assert A2.coroot_bi(0, ((1, 0), (0, 0))) == -2

    def test_symmetric_kills(self):
        for g in [(1, 0), (2, 3)]:
            assert A2.coroot_bi(0, (g, g)) == 0
            assert A2.coroot_bi(1, (g, g)) == 0


class TestDegrees:
    def test_sl2(self):
        A1 = PRESETS["A1"]
        assert A1.degrees_up_to((2,)) == [(0,), (1,), (2,)]

    def test_a2(self):
        assert A2.degrees_up_to((1, 1)) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_grid_count(self):
        # oracle: grid count
        assert len(A2.degrees_up_to((2, 2))) == 9


class TestValidation:
    def test_rejects_asymmetrizable(self):
        with pytest.raises(CartanError):
            CartanDatum(("1", "2"), ((2, -2), (-1, 2)), (1, 1))

    def test_rejects_positive_offdiag(self):
        with pytest.raises(CartanError):
            CartanDatum(("1", "2"), ((2, 1), (1, 2)), (1, 1))

    def test_json_roundtrip(self):
        j = B2.to_json()
        back = CartanDatum.from_json(j)
        assert back.A == B2.A and back.d == B2.d and back.labels == B2.labels

    def test_presets_resolve(self):
        for name in PRESETS:
            assert get_datum(name).rank >= 1


class TestWeyl:
    def test_positive_root_counts(self):
        assert len(PRESETS["A1"].positive_roots()) == 1
        assert len(A2.positive_roots()) == 3
        assert len(B2.positive_roots()) == 4
        assert len(G2.positive_roots()) == 6
        assert len(PRESETS["A3"].positive_roots()) == 6

    def test_affine_rejected(self):
        assert not PRESETS["A1affine"].is_finite_type()
        with pytest.raises(CartanError):
            PRESETS["A1affine"].positive_roots()

    def test_longest_words_reduced(self):
        for name, word in LONGEST_WORDS.items():
            datum = PRESETS[name]
            assert datum.is_reduced(word)
            assert len(word) == len(datum.positive_roots())

    def test_reducedness(self):
        assert A2.is_reduced((0, 1, 0))
        assert not A2.is_reduced((0, 0))

    def test_braid_orders(self):
        assert A2.braid_order(0, 1) == 3
        assert B2.braid_order(0, 1) == 4
        assert G2.braid_order(0, 1) == 6
        assert PRESETS["A1xA1"].braid_order(0, 1) == 2
        assert PRESETS["A1affine"].braid_order(0, 1) == 0

    def test_two_rho(self):
        # sl2: 2 rho . (m omega) = m
        assert PRESETS["A1"].two_rho_dot((3,)) == 3
        # sp4 fundamental weights (checked against the q-exponents in the paper's tables)
        assert B2.two_rho_dot((1, 0)) == 4
        assert B2.two_rho_dot((0, 1)) == 6
        # sl(n+1), vector weight: equals n
        assert A2.two_rho_dot((1, 0)) == 2
        assert PRESETS["A3"].two_rho_dot((1, 0, 0)) == 3
