import math
import random

import pytest

from braidarr.numbers import charpoly_A_closed, raney
from braidarr.paths import (
    DecoratedDyckPath,
    LabeledDyckPath,
    assemble_compartments,
    compartment_decomposition,
    compartment_distribution,
    compartments,
    enumerate_decorated_paths,
    path_to_sketch,
    primitive_parts,
    shifted_coefficient_identity,
    sketch_to_path,
    unlabeled_census,
)
from braidarr.sketches import EnumerationGuard, Sketch, enumerate_sketches

# Three-coordinate all-positive region (mark at the start).
SKETCH_32 = "0 3^0 3^1 3^2 1^0 2^0 1^1 2^1 1^2 2^2"
# Five-coordinate region with both signs (mark after six steps).
SKETCH_52 = "3^2 3^1 1^2 3^0 1^1 1^0 0 5^0 5^1 5^2 4^0 2^0 4^1 2^1 4^2 2^2"
# Labeled 1-Dyck path with 3 primitive parts and 2 compartments.
COMPARTMENT_PATH = LabeledDyckPath(1, tuple("UUUDDUDDUUDDUD"), (9, 2, 8, 6, 4, 1, 5))


class TestLabeledDyckPath:
    def test_validation(self):
        with pytest.raises(ValueError):
            LabeledDyckPath(1, ("D", "U"), (1,))  # negative prefix
        with pytest.raises(ValueError):
            LabeledDyckPath(1, ("U", "D", "D"), (1,))  # too many downs
        with pytest.raises(ValueError):
            LabeledDyckPath(1, ("U", "D"), (1, 2))  # label count
        with pytest.raises(ValueError):
            LabeledDyckPath(1, ("U", "D", "U", "D"), (1, 1))  # repeated label

    def test_arbitrary_positive_labels_allowed(self):
        path = LabeledDyckPath(1, ("U", "D"), (17,))
        assert path.up_count == 1

    def test_text(self):
        assert COMPARTMENT_PATH.to_text().startswith("U9 U2 U8 D D U6")


class TestDecoratedDyckPath:
    def test_mark_must_sit_on_axis(self):
        path = LabeledDyckPath(1, ("U", "D", "U", "D"), (1, 2))
        assert DecoratedDyckPath(path, 2).part1().labels == (1,)
        with pytest.raises(ValueError):
            DecoratedDyckPath(path, 1)

    def test_labels_must_be_initial_segment(self):
        path = LabeledDyckPath(1, ("U", "D"), (2,))
        with pytest.raises(ValueError):
            DecoratedDyckPath(path, 0)

    def test_text_round_trip(self):
        d = sketch_to_path(Sketch.parse(SKETCH_52))
        assert DecoratedDyckPath.parse(d.to_text()) == d

    def test_parse_mark_at_origin(self):
        d = DecoratedDyckPath.parse("| U1 D")
        assert d.mark == 0 and d.m == 1


class TestSketchPathBijection:
    def test_all_positive_example(self):
        d = sketch_to_path(Sketch.parse(SKETCH_32))
        assert d.mark == 0
        assert d.path.labels == (3, 1, 2)
        assert d.part1().steps == ()

    def test_mixed_example(self):
        d = sketch_to_path(Sketch.parse(SKETCH_52))
        assert d.mark == 6
        assert d.part1().labels == (3, 1)
        assert d.part2().labels == (5, 4, 2)
        assert d.to_text() == "U3 D U1 D D D | U5 D D U4 U2 D D D D"

    def test_trivial(self):
        d = sketch_to_path(Sketch.parse("0 1^0 1^1"))
        assert d.to_text() == "| U1 D"

    def test_inverses_on_examples(self):
        for text in (SKETCH_32, SKETCH_52, "0 1^0 1^1", "1^1 1^0 0 2^0 2^1"):
            s = Sketch.parse(text)
            assert path_to_sketch(sketch_to_path(s)) == s

    @pytest.mark.parametrize(
        "n,m",
        [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (4, 1), (5, 1)],
    )
    def test_round_trip_sketch_first(self, n, m):
        for s in enumerate_sketches(n, m):
            assert path_to_sketch(sketch_to_path(s)) == s

    @pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (4, 1)])
    def test_round_trip_path_first(self, n, m):
        for d in enumerate_decorated_paths(n, m):
            assert sketch_to_path(path_to_sketch(d)) == d

    def test_empty_sides(self):
        s_left = Sketch.parse("1^1 1^0 0")
        assert sketch_to_path(s_left).part2().steps == ()
        s_right = Sketch.parse("0 1^0 1^1")
        assert sketch_to_path(s_right).part1().steps == ()


class TestEnumeration:
    @pytest.mark.parametrize(
        "n,m,expected", [(1, 1, 2), (2, 1, 10), (2, 2, 14), (3, 1, 84)]
    )
    def test_counts(self, n, m, expected):
        paths = enumerate_decorated_paths(n, m)
        assert len(paths) == expected
        assert len(set(paths)) == expected
        assert expected == math.factorial(n) * raney(n, m, 2)

    def test_guard(self):
        with pytest.raises(EnumerationGuard):
            enumerate_decorated_paths(13, 1)

    def test_deterministic_order(self):
        first = enumerate_decorated_paths(2, 2)
        second = enumerate_decorated_paths(2, 2)
        assert first == second


class TestPrimitivePartsAndCompartments:
    def test_three_part_path(self):
        assert primitive_parts(COMPARTMENT_PATH) == 3
        assert compartments(COMPARTMENT_PATH) == 2

    def test_empty_path(self):
        empty = LabeledDyckPath(1, (), ())
        assert primitive_parts(empty) == 0
        assert compartments(empty) == 0

    def test_two_parts(self):
        path = LabeledDyckPath(1, ("U", "D", "U", "D"), (1, 2))
        assert primitive_parts(path) == 2

    def test_largest_label_position_matters(self):
        high_first = LabeledDyckPath(1, ("U", "D", "U", "D"), (2, 1))
        low_first = LabeledDyckPath(1, ("U", "D", "U", "D"), (1, 2))
        assert compartments(high_first) == 2
        assert compartments(low_first) == 1

    def test_compartments_never_exceed_parts(self):
        for d in enumerate_decorated_paths(3, 1):
            p = d.part2()
            assert compartments(p) <= primitive_parts(p)

    def test_single_compartment_path(self):
        path = LabeledDyckPath(2, ("U", "D", "D"), (5,))
        assert compartments(path) == 1

    def test_decomposition_recombines(self):
        pieces = compartment_decomposition(COMPARTMENT_PATH)
        assert len(pieces) == 2
        assert pieces[0].labels == (9, 2, 8, 6)
        assert pieces[1].labels == (4, 1, 5)
        steps = tuple(s for piece in pieces for s in piece.steps)
        assert steps == COMPARTMENT_PATH.steps


class TestReconstruction:
    def test_shuffled_compartments_reassemble(self):
        rng = random.Random(7)
        for d in enumerate_decorated_paths(3, 1):
            for path in (d.part1(), d.part2()):
                pieces = list(compartment_decomposition(path))
                if not pieces:
                    continue
                rng.shuffle(pieces)
                assert assemble_compartments(pieces) == path

    def test_rejects_disconnected_piece(self):
        with pytest.raises(ValueError):
            assemble_compartments([LabeledDyckPath(1, ("U", "D", "U", "D"), (2, 1))])


class TestCompartmentDistribution:
    @pytest.mark.parametrize(
        "n,m,expected",
        [
            (1, 1, [1, 1]),
            (2, 1, [4, 5, 1]),
            (2, 2, [6, 7, 1]),
            (3, 1, [30, 41, 12, 1]),
        ],
    )
    def test_matches_coefficients(self, n, m, expected):
        distribution = compartment_distribution(n, m)
        assert distribution == expected
        poly = charpoly_A_closed(n, m)
        assert distribution == [abs(poly.coefficient(j)) for j in range(n + 1)]

    @pytest.mark.parametrize("n,m", [(1, 2), (3, 2), (4, 1)])
    def test_matches_coefficients_wider(self, n, m):
        poly = charpoly_A_closed(n, m)
        assert compartment_distribution(n, m) == [
            abs(poly.coefficient(j)) for j in range(n + 1)
        ]

    def test_total_is_region_count(self):
        for n, m in [(2, 1), (2, 2), (3, 1), (4, 1)]:
            assert sum(compartment_distribution(n, m)) == math.factorial(n) * raney(
                n, m, 2
            )


class TestShiftedCoefficientIdentity:
    @pytest.mark.parametrize("n", range(1, 6))
    @pytest.mark.parametrize("m", range(1, 4))
    def test_grid(self, n, m):
        assert shifted_coefficient_identity(n, m)


class TestUnlabeledCensus:
    def test_catalan_case(self):
        census = unlabeled_census(3, 1)
        assert census.by_upsteps == (1, 1, 2, 5)

    def test_axis_point_counts(self):
        census = unlabeled_census(2, 1)
        assert census.by_axis_points == {1: 1, 2: 1}
        census = unlabeled_census(2, 2)
        assert census.by_axis_points[2] == raney(0, 2, 4)

    @pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3), (2, 4), (1, 5)])
    def test_matches_raney_formulas(self, n, m):
        census = unlabeled_census(n, m)
        for k in range(n + 1):
            assert census.by_upsteps[k] == raney(k, m, 1)
        for k in range(1, n + 1):
            assert census.by_axis_points[k] == raney(n - k, m, m * k)
