import random
from fractions import Fraction
from math import gcd

import pytest

from k3wall.lattice import (
    O_X,
    ChernCharacter,
    MukaiVector,
    Surface,
    alpha_class,
    compute_s,
    euler_form,
    mukai_pairing,
    mukai_square,
    pushforward_class,
    theorem_dimension,
    twist_minus_H,
)

X14 = Surface(14)
X22 = Surface(22)
X30 = Surface(30)


class TestSurface:
    def test_genus(self):
        assert X14.genus == 8
        assert Surface.of_genus(8) == X14

    @pytest.mark.parametrize("bad", [0, -2, 3, 7])
    def test_rejects_bad_hsq(self, bad):
        with pytest.raises(ValueError):
            Surface(bad)


class TestPairing:
    def test_square_of_214(self):
        assert mukai_square(MukaiVector(2, 1, 4), X14) == -2

    def test_rank_section_duality(self):
        assert mukai_pairing(MukaiVector(1, 0, 0), MukaiVector(0, 0, 1), X14) == -1

    def test_isotropic(self):
        assert mukai_square(MukaiVector(3, 2, 20), X30) == 0

    def test_symmetric_bilinear_random(self):
        rng = random.Random(11)
        for _ in range(300):
            X = Surface(2 * rng.randrange(1, 40))
            v, u, w = (MukaiVector(rng.randrange(-9, 10), rng.randrange(-9, 10),
                                   rng.randrange(-9, 10)) for _ in range(3))
            a, b = rng.randrange(-5, 6), rng.randrange(-5, 6)
            assert mukai_pairing(v, u, X) == mukai_pairing(u, v, X)
            combo = MukaiVector(a * v.r + b * u.r, a * v.c + b * u.c,
                                a * v.s + b * u.s)
            assert mukai_pairing(combo, w, X) == \
                a * mukai_pairing(v, w, X) + b * mukai_pairing(u, w, X)


class TestEulerForm:
    def test_sections_count(self):
        assert euler_form(O_X, MukaiVector(2, 1, 4), X14) == 6

    def test_chi_of_minus_two_class(self):
        v = MukaiVector(2, 1, 4)
        assert euler_form(v, v, X14) == 2

    def test_structure_sheaf(self):
        assert euler_form(O_X, O_X, X14) == 2

    def test_chi_O_equals_r_plus_s(self):
        rng = random.Random(3)
        for _ in range(300):
            X = Surface(2 * rng.randrange(1, 60))
            v = MukaiVector(rng.randrange(-20, 21), rng.randrange(-20, 21),
                            rng.randrange(-20, 21))
            assert euler_form(O_X, v, X) == v.r + v.s


class TestComputeS:
    @pytest.mark.parametrize("r,k,hsq,expected", [
        (2, 1, 14, 4),
        (3, 1, 22, 4),
        (3, 2, 30, 20),
    ])
    def test_examples(self, r, k, hsq, expected):
        assert compute_s(r, k, Surface(hsq)) == expected

    def test_gcd_flag_case(self):
        s = compute_s(3, 2, X30)
        assert gcd(s, 2) == 2  # side condition gcd(s, k) = 1 fails here

    def test_brute_force_uniqueness(self):
        # the defining window has length one, so scan a range of integers
        for r, k, hsq in [(2, 1, 14), (3, 1, 22), (5, 3, 44)]:
            X = Surface(hsq)
            s = compute_s(r, k, X)
            hits = [m for m in range(-200, 200)
                    if -2 <= k * k * hsq - 2 * r * m < 2 * r - 2]
            assert hits == [s]

    def test_window_on_grid(self):
        for r in range(1, 9):
            for k in range(1, r + 1):
                for hsq in range(2, 401, 2):
                    X = Surface(hsq)
                    s = compute_s(r, k, X)
                    v2 = k * k * hsq - 2 * r * s
                    assert -2 <= v2 < 2 * r - 2


class TestTwistAndPushforward:
    def test_twist_214(self):
        assert twist_minus_H(MukaiVector(2, 1, 4), X14) == \
            ChernCharacter(2, -1, Fraction(2))

    def test_twist_line_bundle(self):
        assert twist_minus_H(MukaiVector(1, 0, 1), X14) == \
            ChernCharacter(1, -1, Fraction(7))

    def test_twist_314(self):
        assert twist_minus_H(MukaiVector(3, 1, 4), X22) == \
            ChernCharacter(3, -2, Fraction(12))

    def test_twist_preserves_rank_and_square(self):
        rng = random.Random(17)
        for _ in range(300):
            X = Surface(2 * rng.randrange(1, 40))
            v = MukaiVector(rng.randrange(1, 9), rng.randrange(-9, 10),
                            rng.randrange(-9, 10))
            ch = twist_minus_H(v, X)
            assert ch.ch0 == v.r
            twisted = ch.mukai_vector()
            assert mukai_square(twisted, X) == mukai_square(v, X)

    def test_pushforward_14(self):
        assert pushforward_class(2, 1, X14) == ChernCharacter(0, 2, Fraction(0))

    def test_pushforward_diagonal(self):
        for r in (1, 2, 5):
            ch = pushforward_class(r, r, Surface(10))
            assert ch == ChernCharacter(0, r, Fraction(r * 10, 2))

    def test_pushforward_30(self):
        assert pushforward_class(3, 2, X30) == ChernCharacter(0, 3, Fraction(15))


class TestAlphaClass:
    def test_basic(self):
        assert alpha_class(2, 1, 4) == MukaiVector(4, -1, 2)
        assert alpha_class(3, 1, 4) == MukaiVector(4, -1, 3)

    def test_involution(self):
        a = alpha_class(2, 1, 4)
        assert alpha_class(a.r, a.c, a.s) == MukaiVector(2, 1, 4)


class TestDimension:
    def test_genus8(self):
        assert theorem_dimension(2, 1, 4, X14) == 0
        assert 2 * 8 - 2 * 2 * (8 // 2) == 0

    def test_genus12(self):
        assert theorem_dimension(3, 1, 4, X22) == 0

    def test_minus_two_classes(self):
        rng = random.Random(23)
        for _ in range(200):
            X = Surface(2 * rng.randrange(1, 60))
            r, k = rng.randrange(1, 7), rng.randrange(1, 7)
            if (k * k * X.hsq + 2) % (2 * r):
                continue
            s = (k * k * X.hsq + 2) // (2 * r)
            assert theorem_dimension(r, k, s, X) == 0

    def test_degree_one_identity_small_grid(self):
        for r in range(1, 9):
            for g in range(2, 60):
                X = Surface.of_genus(g)
                s = compute_s(r, 1, X)
                assert theorem_dimension(r, 1, s, X) == 2 * g - 2 * r * (g // r)
