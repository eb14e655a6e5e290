import random
from fractions import Fraction

import pytest

from surfsat import (
    ClassRecord,
    InputError,
    PreconditionError,
    adjunction_genus,
    blowup,
    configuration_from_classes,
    projective_plane,
)


def blown_up_plane(n, cubic_mult=1):
    """Plane blown up n times along a tracked cubic."""
    lat = projective_plane()
    cubic = ClassRecord("C", (3,), genus=1)
    excs = []
    for i in range(n):
        result = blowup(lat, [(cubic, cubic_mult)] + [(e, 0) for e in excs])
        lat = result.lattice
        cubic = result.classes[0]
        excs = list(result.classes[1:]) + [result.exceptional]
    return lat, cubic, excs


class TestProjectivePlane:
    def test_shape(self):
        lat = projective_plane()
        assert lat.gram.rows == ((Fraction(1),),)
        assert lat.canonical == (-3,)
        assert lat.gram.inertia() == (1, 0, 0)

    def test_line_has_genus_zero(self):
        lat = projective_plane()
        assert adjunction_genus(lat, (1,)) == 0

    def test_cubic_has_genus_one(self):
        lat = projective_plane()
        assert adjunction_genus(lat, (3,)) == 1


class TestBlowup:
    def test_nine_points_on_cubic_gives_zero_square(self):
        lat, cubic, _ = blown_up_plane(9)
        assert cubic.vector == (3,) + (-1,) * 9
        assert lat.self_intersection(cubic) == 0

    def test_ten_points_gives_minus_one(self):
        lat, cubic, _ = blown_up_plane(10)
        assert lat.self_intersection(cubic) == 9 - 10

    def test_center_off_the_curve(self):
        lat = projective_plane()
        conic = ClassRecord("Q", (2,), genus=0)
        result = blowup(lat, [(conic, 0)])
        assert result.lattice.self_intersection(result.classes[0]) == 4

    def test_negative_multiplicity_rejected(self):
        lat = projective_plane()
        with pytest.raises(PreconditionError):
            blowup(lat, [(ClassRecord("L", (1,)), -1)])

    def test_canonical_class_shifts(self):
        lat = projective_plane()
        result = blowup(lat, [])
        assert result.lattice.canonical == (-3, 1)
        assert result.exceptional.vector == (0, 1)
        assert result.lattice.self_intersection(result.exceptional) == -1

    def test_pairing_correction(self):
        # (C - mE).(C' - m'E) = C.C' - m m'
        rng = random.Random(37)
        for _ in range(60):
            lat, _, _ = blown_up_plane(rng.randint(0, 3))
            rank = lat.rank
            c1 = ClassRecord("a", tuple(rng.randint(-3, 3) for _ in range(rank)))
            c2 = ClassRecord("b", tuple(rng.randint(-3, 3) for _ in range(rank)))
            m1, m2 = rng.randint(0, 3), rng.randint(0, 3)
            before = lat.pair(c1, c2)
            result = blowup(lat, [(c1, m1), (c2, m2)])
            after = result.lattice.pair(result.classes[0], result.classes[1])
            assert after == before - m1 * m2

    def test_hodge_index_invariant_up_to_twelve_blowups(self):
        rng = random.Random(41)
        for _ in range(20):
            lat = projective_plane()
            for _ in range(rng.randint(1, 12)):
                lat = blowup(lat, []).lattice
            rank = lat.rank
            assert lat.gram.inertia() == (1, rank - 1, 0)


class TestAdjunction:
    def test_exceptional_curve_has_genus_zero(self):
        result = blowup(projective_plane(), [])
        assert adjunction_genus(result.lattice, result.exceptional) == 0

    def test_cubic_transform_keeps_genus_one(self):
        lat, cubic, _ = blown_up_plane(9)
        assert adjunction_genus(lat, cubic) == 1

    def test_line_through_one_point(self):
        lat = projective_plane()
        line = ClassRecord("L", (1,), genus=0)
        result = blowup(lat, [(line, 1)])
        assert adjunction_genus(result.lattice, result.classes[0]) == 0

    def test_invariant_under_orthogonal_null_class(self):
        # adding a square-zero class orthogonal to both c and the canonical
        # class leaves the genus unchanged
        lat, fibre, _ = blown_up_plane(9)
        f = fibre.vector
        assert lat.pair(f, f) == 0
        assert lat.gram.pair(f, lat.canonical) == 0
        for c in (lat.canonical, f, tuple(2 * x for x in f)):
            shifted = tuple(a + b for a, b in zip(c, f))
            assert adjunction_genus(lat, shifted) == adjunction_genus(lat, c)

    def test_adjunction_parity(self):
        # c.(c + K) is always even on a blown-up plane
        rng = random.Random(43)
        for _ in range(80):
            lat, _, _ = blown_up_plane(rng.randint(0, 5))
            c = tuple(rng.randint(-4, 4) for _ in range(lat.rank))
            val = lat.pair(c, c) + lat.gram.pair(c, lat.canonical)
            assert val % 2 == 0
            assert adjunction_genus(lat, c).denominator == 1


class TestConfigurationFromClasses:
    def test_single_cubic_transform(self):
        lat, cubic, _ = blown_up_plane(9)
        config = configuration_from_classes(lat, [cubic])
        assert config.gram.rows == ((Fraction(0),),)
        assert config.nodes[0].genus == 1
        assert config.nodes[0].proper

    def test_line_and_exceptional(self):
        lat = projective_plane()
        line = ClassRecord("L1", (1,), genus=0)
        result = blowup(lat, [(line, 1)])
        config = configuration_from_classes(
            result.lattice, [result.classes[0], result.exceptional]
        )
        assert config.gram.rows == (
            (Fraction(0), Fraction(1)),
            (Fraction(1), Fraction(-1)),
        )

    def test_two_exceptionals(self):
        result1 = blowup(projective_plane(), [])
        result2 = blowup(result1.lattice, [(result1.exceptional, 0)])
        config = configuration_from_classes(
            result2.lattice, [result2.classes[0], result2.exceptional]
        )
        assert config.gram.rows == (
            (Fraction(-1), Fraction(0)),
            (Fraction(0), Fraction(-1)),
        )

    def test_negative_pairing_rejected_with_names(self):
        result = blowup(projective_plane(), [])
        lat = result.lattice
        e = result.exceptional
        other = ClassRecord("E1again", e.vector)
        with pytest.raises(InputError, match="E1.*E1again|E1again.*E1"):
            configuration_from_classes(lat, [e, other])


class TestLatticeValidation:
    def test_wrong_signature_rejected(self):
        from surfsat import NSLattice, SymmetricMatrix

        with pytest.raises(InputError):
            NSLattice(("A",), SymmetricMatrix([[-1]]), (0,))

    def test_fractional_pairing_rejected(self):
        from surfsat import NSLattice, SymmetricMatrix

        with pytest.raises(InputError):
            NSLattice(("A",), SymmetricMatrix([[Fraction(1, 2)]]), (0,))
