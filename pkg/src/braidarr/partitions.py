"""Decorated non-nesting partitions and the canonical counting of the
coordinate-free sub-arrangement's regions.

A decorated partition is an ordered pair of arc diagrams separated by a red
line; block labels are stored positionally (one label array per side), and
arcs join consecutive occurrences of each label.
"""
from __future__ import annotations

from dataclasses import dataclass

from .sketches import Sketch, _check_guard, enumerate_sketches

ISOLATED = "isolated"
TANGLED = "tangled"

B_COUNT_LIMIT = 10


@dataclass(frozen=True)
class DecoratedNonNestingPartition:
    """Ordered pair of non-nesting partitions with blocks of size m + 1.

    ``side1[p]`` / ``side2[p]`` give the label at position p of each diagram.
    Labels are exactly 1..n, each appearing m + 1 times on a single side.
    """

    m: int
    side1: tuple[int, ...]
    side2: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")
        labels1 = set(self.side1)
        labels2 = set(self.side2)
        if labels1 & labels2:
            raise ValueError("a block must lie entirely on one side of the red line")
        n = len(labels1) + len(labels2)
        if labels1 | labels2 != set(range(1, n + 1)):
            raise ValueError("labels must be exactly 1..n")
        for side in (self.side1, self.side2):
            for label in set(side):
                if side.count(label) != self.m + 1:
                    raise ValueError(
                        f"block {label} has {side.count(label)} points, "
                        f"expected {self.m + 1}"
                    )
            if not _non_nesting(side):
                raise ValueError("nesting arcs")

    @property
    def n(self) -> int:
        return len(set(self.side1)) + len(set(self.side2))

    def block_positions(self, label: int) -> tuple[int, ...]:
        """Positions of a block inside its own side."""
        side = self.side1 if label in self.side1 else self.side2
        return tuple(p for p, lab in enumerate(side) if lab == label)

    def side_of(self, label: int) -> int:
        return 1 if label in self.side1 else 2

    def to_text(self) -> str:
        left = " ".join(str(v) for v in self.side1)
        right = " ".join(str(v) for v in self.side2)
        if left and right:
            return f"{left} | {right}"
        return f"{left} |" if left else f"| {right}"

    def __str__(self) -> str:
        return self.to_text()

    @classmethod
    def parse(cls, text: str, m: int | None = None) -> "DecoratedNonNestingPartition":
        tokens = text.split()
        if tokens.count("|") != 1:
            raise ValueError("partition text needs exactly one '|' red line")
        cut = tokens.index("|")
        side1 = tuple(int(t) for t in tokens[:cut])
        side2 = tuple(int(t) for t in tokens[cut + 1 :])
        if m is None:
            combined = side1 + side2
            if not combined:
                raise ValueError("cannot infer m from an empty diagram")
            m = combined.count(combined[0]) - 1
        return cls(m, side1, side2)


def _arcs(side: tuple[int, ...]) -> list[tuple[int, int]]:
    last_seen: dict[int, int] = {}
    arcs = []
    for position, label in enumerate(side):
        if label in last_seen:
            arcs.append((last_seen[label], position))
        last_seen[label] = position
    return arcs


def _non_nesting(side: tuple[int, ...]) -> bool:
    arcs = _arcs(side)
    for a1, b1 in arcs:
        for a2, b2 in arcs:
            if a1 < a2 and b2 < b1:
                return False
    return True


def sketch_to_partition(sketch: Sketch) -> DecoratedNonNestingPartition:
    """Replace every letter by its subscript and the zero by the red line."""
    return DecoratedNonNestingPartition(
        sketch.m,
        tuple(i for i, _ in sketch.w1),
        tuple(i for i, _ in sketch.w2),
    )


def partition_to_sketch(d: DecoratedNonNestingPartition) -> Sketch:
    """Restore exponents from occurrence order.

    On the right of the red line the j-th occurrence of a label gets exponent
    j - 1; on the left it gets m + 1 - j, matching the mirrored reading.
    """
    seen1: dict[int, int] = {}
    w1 = []
    for label in d.side1:
        j = seen1.get(label, 0) + 1
        seen1[label] = j
        w1.append((label, d.m + 1 - j))
    seen2: dict[int, int] = {}
    w2 = []
    for label in d.side2:
        j = seen2.get(label, 0) + 1
        seen2[label] = j
        w2.append((label, j - 1))
    return Sketch(tuple(w1), tuple(w2))


def classify_blocks(d: DecoratedNonNestingPartition) -> dict[int, str]:
    """Label -> "isolated" when a block's points are consecutive, else "tangled"."""
    out = {}
    for label in range(1, d.n + 1):
        positions = d.block_positions(label)
        out[label] = (
            ISOLATED if positions[-1] - positions[0] == d.m else TANGLED
        )
    return out


def b_equivalent(
    d1: DecoratedNonNestingPartition, d2: DecoratedNonNestingPartition
) -> bool:
    """Same region once the coordinate hyperplanes are dropped.

    The diagrams with red lines removed must coincide, and the red line must
    sit on the same side of every tangled block; it may move past isolated
    blocks only.
    """
    if d1.m != d2.m:
        return False
    if d1.side1 + d1.side2 != d2.side1 + d2.side2:
        return False
    classes = classify_blocks(d1)
    for label, kind in classes.items():
        if kind == TANGLED and d1.side_of(label) != d2.side_of(label):
            return False
    return True


def count_B_regions_enum(n: int, m: int, limit: int = B_COUNT_LIMIT) -> int:
    """Count canonical representatives: red line not immediately followed by
    an isolated block (first right-hand block, if any, is tangled)."""
    _check_guard(n, m, limit)
    total = 0
    for sketch in enumerate_sketches(n, m, limit):
        d = sketch_to_partition(sketch)
        if _is_canonical(d):
            total += 1
    return total


def _is_canonical(d: DecoratedNonNestingPartition) -> bool:
    if not d.side2:
        return True
    first = d.side2[0]
    return classify_blocks(d)[first] == TANGLED
