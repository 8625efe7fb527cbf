import itertools
import math

import pytest

from braidarr.numbers import raney, regions_B_closed
from braidarr.partitions import (
    ISOLATED,
    TANGLED,
    DecoratedNonNestingPartition,
    b_equivalent,
    classify_blocks,
    count_B_regions_enum,
    partition_to_sketch,
    sketch_to_partition,
)
from braidarr.sketches import EnumerationGuard, Sketch, enumerate_sketches

SKETCH_52 = "3^2 3^1 1^2 3^0 1^1 1^0 0 5^0 5^1 5^2 4^0 2^0 4^1 2^1 4^2 2^2"
PARTITION_52 = "3 3 1 3 1 1 | 5 5 5 4 2 4 2 4 2"
# Same arc diagram with the red line moved past the isolated block labeled 5.
PARTITION_52_MOVED = "3 3 1 3 1 1 5 5 5 | 4 2 4 2 4 2"


class TestConstruction:
    def test_parse_and_text(self):
        d = DecoratedNonNestingPartition.parse(PARTITION_52)
        assert d.m == 2 and d.n == 5
        assert d.to_text() == PARTITION_52

    def test_empty_sides(self):
        left = DecoratedNonNestingPartition.parse("1 1 |")
        assert left.side2 == ()
        right = DecoratedNonNestingPartition.parse("| 1 1")
        assert right.side1 == ()

    def test_rejects_wrong_block_size(self):
        with pytest.raises(ValueError):
            DecoratedNonNestingPartition(2, (), (1, 1))

    def test_rejects_nesting(self):
        # arcs of block 1 sit strictly inside the arcs of block 2
        with pytest.raises(ValueError):
            DecoratedNonNestingPartition(2, (), (2, 1, 1, 1, 2, 2))

    def test_rejects_nesting_diagram_from_example(self):
        # arc 4-5 nests strictly inside arc 3-6
        side = (1, 2, 3, 1, 1, 3)
        with pytest.raises(ValueError):
            DecoratedNonNestingPartition(2, (), side)

    def test_rejects_straddling_block(self):
        with pytest.raises(ValueError):
            DecoratedNonNestingPartition(1, (1,), (1, 2, 2))

    def test_crossings_are_fine(self):
        d = DecoratedNonNestingPartition(1, (), (1, 2, 1, 2))
        assert d.n == 2


class TestSketchPartitionBijection:
    def test_five_block_diagram(self):
        d = sketch_to_partition(Sketch.parse(SKETCH_52))
        assert d.to_text() == PARTITION_52
        blocks = {label: d.block_positions(label) for label in (3, 1, 5, 4, 2)}
        assert blocks[3] == (0, 1, 3) and blocks[1] == (2, 4, 5)
        assert blocks[5] == (0, 1, 2)
        assert blocks[4] == (3, 5, 7) and blocks[2] == (4, 6, 8)

    def test_trivial_sides(self):
        assert sketch_to_partition(Sketch.parse("0 1^0 1^1")).to_text() == "| 1 1"
        assert sketch_to_partition(Sketch.parse("1^1 1^0 0")).to_text() == "1 1 |"

    def test_inverse_on_examples(self):
        for text in (SKETCH_52, "0 1^0 1^1", "1^1 1^0 0"):
            s = Sketch.parse(text)
            assert partition_to_sketch(sketch_to_partition(s)) == s

    @pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (4, 1)])
    def test_exhaustive_round_trip(self, n, m):
        seen = set()
        for s in enumerate_sketches(n, m):
            d = sketch_to_partition(s)
            assert partition_to_sketch(d) == s
            seen.add(d)
        # distinct sketches map to distinct partitions
        assert len(seen) == math.factorial(n) * raney(n, m, 2)


class TestBlockClassification:
    def test_mixed_diagram_classes(self):
        d = DecoratedNonNestingPartition.parse(PARTITION_52)
        classes = classify_blocks(d)
        assert classes[5] == ISOLATED
        assert all(classes[label] == TANGLED for label in (1, 2, 3, 4))

    def test_disjoint_consecutive_blocks(self):
        d = DecoratedNonNestingPartition(1, (1, 1), (2, 2))
        assert set(classify_blocks(d).values()) == {ISOLATED}

    def test_interleaved_blocks(self):
        d = DecoratedNonNestingPartition(2, (), (1, 2, 1, 2, 1, 2))
        assert set(classify_blocks(d).values()) == {TANGLED}


class TestBEquivalence:
    def test_isolated_block_pair(self):
        d1 = DecoratedNonNestingPartition.parse(PARTITION_52)
        d2 = DecoratedNonNestingPartition.parse(PARTITION_52_MOVED)
        assert b_equivalent(d1, d2)
        assert b_equivalent(d2, d1)

    def test_reflexive(self):
        d = DecoratedNonNestingPartition.parse(PARTITION_52)
        assert b_equivalent(d, d)

    def test_moving_past_tangled_block_breaks(self):
        d1 = DecoratedNonNestingPartition.parse("| 1 2 1 2")
        d2 = DecoratedNonNestingPartition.parse("1 2 1 2 |")
        assert not b_equivalent(d1, d2)

    def test_different_diagrams_differ(self):
        d1 = DecoratedNonNestingPartition.parse("| 1 1 2 2")
        d2 = DecoratedNonNestingPartition.parse("| 2 2 1 1")
        assert not b_equivalent(d1, d2)

    @pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (2, 2)])
    def test_equivalence_relation_and_class_count(self, n, m):
        diagrams = [sketch_to_partition(s) for s in enumerate_sketches(n, m)]
        for d in diagrams:
            assert b_equivalent(d, d)
        for d1, d2 in itertools.combinations(diagrams, 2):
            assert b_equivalent(d1, d2) == b_equivalent(d2, d1)
        for d1, d2, d3 in itertools.permutations(diagrams, 3):
            if b_equivalent(d1, d2) and b_equivalent(d2, d3):
                assert b_equivalent(d1, d3)
        classes = []
        for d in diagrams:
            for cls in classes:
                if b_equivalent(cls[0], d):
                    cls.append(d)
                    break
            else:
                classes.append([d])
        assert len(classes) == regions_B_closed(n, m)
        # exactly one canonical representative per class
        from braidarr.partitions import _is_canonical

        for cls in classes:
            assert sum(1 for d in cls if _is_canonical(d)) == 1


class TestCountBRegions:
    @pytest.mark.parametrize(
        "n,m,expected", [(1, 1, 1), (2, 1, 6), (2, 2, 10), (3, 1, 54)]
    )
    def test_counts(self, n, m, expected):
        assert count_B_regions_enum(n, m) == expected
        assert expected == regions_B_closed(n, m)

    def test_guard(self):
        with pytest.raises(EnumerationGuard):
            count_B_regions_enum(6, 1)
