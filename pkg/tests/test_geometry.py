from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamcut.geometry import (
    ColoredInstance,
    Hyperplane,
    affinely_independent,
    as_point,
    hyperplane_through,
    orientation,
    validate_general_position,
)

from conftest import make_instance


def pts(*coords):
    return [as_point(c) for c in coords]


class TestOrientation:
    def test_unit_triangle_positive(self):
        assert orientation(pts((0, 0), (1, 0), (0, 1))) == 1

    def test_collinear_zero(self):
        assert orientation(pts((0, 0), (1, 1), (2, 2))) == 0

    def test_unit_simplex_3d(self):
        assert orientation(pts((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))) == 1

    def test_wrong_count_rejected(self):
        with pytest.raises(ValueError):
            orientation(pts((0, 0), (1, 0)))

    def test_mixed_dimension_rejected(self):
        with pytest.raises(ValueError):
            orientation([as_point((0, 0)), as_point((1, 0)), (Fraction(0), Fraction(1), Fraction(2))])

    coords = st.integers(-50, 50)

    @given(st.lists(st.tuples(coords, coords), min_size=3, max_size=3))
    def test_antisymmetric_under_swap(self, triple):
        p = pts(*triple)
        assert orientation([p[1], p[0], p[2]]) == -orientation(p)

    @given(
        st.lists(st.tuples(coords, coords), min_size=3, max_size=3),
        st.fractions(min_value=Fraction(1, 7), max_value=Fraction(9)),
    )
    def test_sign_invariant_under_positive_scaling(self, triple, scale):
        p = pts(*triple)
        scaled = [tuple(scale * c for c in q) for q in p]
        assert orientation(scaled) == orientation(p)


class TestSideOf:
    h = Hyperplane((Fraction(1), Fraction(0)), Fraction(1))  # x = 1

    def test_minus_side(self):
        assert self.h.side_of(as_point((0, 0))) == -1

    def test_on_hyperplane(self):
        assert self.h.side_of(as_point((1, 5))) == 0

    def test_negation_flips(self):
        assert self.h.negated().side_of(as_point((0, 0))) == 1

    @given(st.tuples(st.integers(-30, 30), st.integers(-30, 30)))
    def test_antipodality(self, q):
        p = as_point(q)
        assert self.h.negated().side_of(p) == -self.h.side_of(p)

    def test_zero_normal_rejected(self):
        with pytest.raises(ValueError):
            Hyperplane((Fraction(0), Fraction(0)), Fraction(1))


class TestHyperplaneThrough:
    def test_two_points_2d(self):
        h = hyperplane_through(pts((0, 0), (2, 2)))
        assert h.normal == (Fraction(1), Fraction(-1))
        assert h.offset == 0

    def test_three_points_3d(self):
        h = hyperplane_through(pts((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        assert h.normal == (Fraction(1), Fraction(1), Fraction(1))
        assert h.offset == 1

    def test_dependent_rejected(self):
        with pytest.raises(ValueError):
            hyperplane_through(pts((0, 0), (0, 0)))
        with pytest.raises(ValueError):
            hyperplane_through(pts((0, 0, 0), (1, 1, 1), (2, 2, 2)))

    def test_single_point_completion_is_canonical(self):
        # One point in the plane: completed with the first axis direction.
        h = hyperplane_through(pts((3, 4)))
        assert h.normal == (Fraction(0), Fraction(1))
        assert h.offset == 4

    def test_pair_completion_3d(self):
        h = hyperplane_through(pts((0, 0, 0), (1, 0, 0)))
        assert h.side_of(as_point((0, 0, 0))) == 0
        assert h.side_of(as_point((1, 0, 0))) == 0
        # The completion must not depend on which spanning point comes first.
        assert h == hyperplane_through(pts((1, 0, 0), (0, 0, 0)))

    @given(
        st.lists(
            st.tuples(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20)),
            min_size=1,
            max_size=3,
            unique=True,
        )
    )
    @settings(max_examples=60)
    def test_contains_its_points(self, coords):
        p = pts(*coords)
        if not affinely_independent(p):
            return
        h = hyperplane_through(p)
        assert all(h.side_of(q) == 0 for q in p)


class TestGeneralPosition:
    def test_ok_triangle(self):
        inst = make_instance(2, [[(0, 0)], [(1, 0)], [(0, 1)]])
        report = validate_general_position(inst)
        assert report.ok and bool(report)

    def test_collinear_violation_reported(self):
        inst = make_instance(2, [[(0, 0), (2, 2)], [(1, 1)], [(5, 0)]])
        report = validate_general_position(inst)
        assert not report.ok
        assert set(report.violation) == set(pts((0, 0), (1, 1), (2, 2)))

    def test_coplanar_violation_3d(self):
        inst = make_instance(
            3, [[(0, 0, 0), (1, 0, 0)], [(0, 1, 0)], [(1, 1, 0)], [(0, 0, 5), (3, 1, 4)]]
        )
        assert not validate_general_position(inst).ok


class TestColoredInstance:
    def test_class_count_enforced(self):
        with pytest.raises(ValueError):
            ColoredInstance.from_lists(2, [[(0, 0)], [(1, 1)]])

    def test_disjointness_enforced(self):
        with pytest.raises(ValueError):
            make_instance(2, [[(0, 0)], [(0, 0)], []])

    def test_admissible_sizes(self):
        assert not make_instance(2, [[(0, 0)], [(1, 1)], [(2, 3)]]).sizes_admissible()
        assert not make_instance(
            2, [[(0, 0), (1, 1), (2, 5)], [(3, 1)], []]
        ).sizes_admissible()
        assert make_instance(2, [[(0, 0)], [(1, 1)], []]).sizes_admissible()

    def test_points_in_canonical_order(self):
        inst = make_instance(2, [[(0, 0), (9, 7)], [(1, 5)], [(8, 2)]])
        assert inst.points() == pts((0, 0), (9, 7), (1, 5), (8, 2))
        assert inst.colors() == [0, 0, 1, 2]
        assert inst.n == 2 and inst.total == 4 and inst.sizes == (2, 1, 1)
