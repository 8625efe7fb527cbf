"""Labeled and decorated Dyck paths, their sketch bijection, and the
compartment statistic whose distribution gives the characteristic polynomial
coefficients.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .dyckwords import DOWN, UP, complete_word, step_sequences
from .numbers import charpoly_A_closed, charpoly_C_closed
from .sketches import ENUMERATION_LIMIT, Sketch, _check_guard


@dataclass(frozen=True)
class LabeledDyckPath:
    """Up-steps of rise m and unit down-steps, prefixes never negative,
    up-steps labeled with distinct positive integers (not necessarily [n])."""

    m: int
    steps: tuple[str, ...]
    labels: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")
        ups = sum(1 for s in self.steps if s == UP)
        downs = len(self.steps) - ups
        if any(s not in (UP, DOWN) for s in self.steps):
            raise ValueError("steps must be 'U' or 'D'")
        if downs != self.m * ups:
            raise ValueError(f"{ups} up-steps need {self.m * ups} down-steps, got {downs}")
        height = 0
        for s in self.steps:
            height += self.m if s == UP else -1
            if height < 0:
                raise ValueError("negative prefix sum")
        if len(self.labels) != ups:
            raise ValueError(f"{ups} up-steps but {len(self.labels)} labels")
        if len(set(self.labels)) != len(self.labels) or any(
            label < 1 for label in self.labels
        ):
            raise ValueError("labels must be distinct positive integers")

    @property
    def up_count(self) -> int:
        return len(self.labels)

    def heights(self) -> list[int]:
        """Lattice heights at positions 0..len(steps)."""
        out = [0]
        for s in self.steps:
            out.append(out[-1] + (self.m if s == UP else -1))
        return out

    def axis_positions(self) -> list[int]:
        return [idx for idx, h in enumerate(self.heights()) if h == 0]

    def to_text(self) -> str:
        parts = []
        ups_seen = 0
        for s in self.steps:
            if s == UP:
                parts.append(f"U{self.labels[ups_seen]}")
                ups_seen += 1
            else:
                parts.append("D")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class DecoratedDyckPath:
    """A labeled path with label set [n] plus a marked point on the x-axis.

    The mark is a prefix index with height 0; the equivalent view as an
    ordered pair of paths is computed, not stored.
    """

    path: LabeledDyckPath
    mark: int

    def __post_init__(self):
        n = self.path.up_count
        if set(self.path.labels) != set(range(1, n + 1)):
            raise ValueError("decorated path labels must be exactly 1..n")
        heights = self.path.heights()
        if not 0 <= self.mark < len(heights) or heights[self.mark] != 0:
            raise ValueError(f"mark {self.mark} is not an x-axis point")

    @property
    def n(self) -> int:
        return self.path.up_count

    @property
    def m(self) -> int:
        return self.path.m

    def part1(self) -> LabeledDyckPath:
        steps = self.path.steps[: self.mark]
        ups = sum(1 for s in steps if s == UP)
        return LabeledDyckPath(self.m, steps, self.path.labels[:ups])

    def part2(self) -> LabeledDyckPath:
        steps = self.path.steps[self.mark :]
        ups_before = sum(1 for s in self.path.steps[: self.mark] if s == UP)
        return LabeledDyckPath(self.m, steps, self.path.labels[ups_before:])

    def to_text(self) -> str:
        left = self.part1().to_text()
        right = self.part2().to_text()
        if left and right:
            return f"{left} | {right}"
        return f"{left} |" if left else f"| {right}"

    def __str__(self) -> str:
        return self.to_text()

    @classmethod
    def parse(cls, text: str, m: int | None = None) -> "DecoratedDyckPath":
        """Parse ``U3 D D U1 D D | U5 ...``; m defaults to downs/ups."""
        tokens = text.split()
        if tokens.count("|") != 1:
            raise ValueError("path text needs exactly one '|' mark")
        mark_token = tokens.index("|")
        steps: list[str] = []
        labels: list[int] = []
        for token in tokens:
            if token == "|":
                continue
            if token == "D":
                steps.append(DOWN)
            elif token.startswith("U"):
                steps.append(UP)
                labels.append(int(token[1:]))
            else:
                raise ValueError(f"bad path token {token!r}")
        if m is None:
            ups = len(labels)
            downs = len(steps) - ups
            if ups == 0 or downs % ups:
                raise ValueError("cannot infer m; pass it explicitly")
            m = downs // ups
        return cls(LabeledDyckPath(m, tuple(steps), tuple(labels)), mark_token)


class UnlabeledCensus(NamedTuple):
    by_upsteps: tuple[int, ...]  # index k: unlabeled paths with k up-steps
    by_axis_points: dict[int, int]  # k: paths with n up-steps and k+1 axis points


def sketch_to_path(sketch: Sketch) -> DecoratedDyckPath:
    """Translate a sketch into a decorated path.

    In w1 the letters with exponent m become up-steps, in w2 those with
    exponent 0; everything else is a down-step.  The mark sits where the w1
    part of the path ends.
    """
    m = sketch.m
    steps1 = tuple(UP if k == m else DOWN for _, k in sketch.w1)
    labels1 = tuple(i for i, k in sketch.w1 if k == m)
    steps2 = tuple(UP if k == 0 else DOWN for _, k in sketch.w2)
    labels2 = tuple(i for i, k in sketch.w2 if k == 0)
    path = LabeledDyckPath(m, steps1 + steps2, labels1 + labels2)
    return DecoratedDyckPath(path, len(steps1))


def path_to_sketch(decorated: DecoratedDyckPath) -> Sketch:
    """Inverse translation.

    w2 is the unique completion of the second part.  The first part decodes
    the same way and then has its exponents complemented (k -> m - k), which
    is exactly what reading w1 forward with exponent-m up-steps means.
    """
    m = decorated.m
    p1 = decorated.part1()
    p2 = decorated.part2()
    w2 = complete_word(p2.steps, p2.labels, m)
    mirrored = complete_word(p1.steps, p1.labels, m)
    w1 = tuple((i, m - k) for i, k in mirrored)
    return Sketch(w1, w2)


def enumerate_decorated_paths(
    n: int, m: int, limit: int = ENUMERATION_LIMIT
) -> list[DecoratedDyckPath]:
    """All decorated paths of size n, ordered by (part-1 steps, part-2 steps,
    labels)."""
    _check_guard(n, m, limit)
    out: list[DecoratedDyckPath] = []
    universe = list(range(1, n + 1))
    for mask in range(1 << n):
        left = tuple(universe[b] for b in range(n) if mask >> b & 1)
        right = tuple(v for v in universe if v not in left)
        for steps1 in step_sequences(len(left), m):
            for steps2 in step_sequences(len(right), m):
                for labels1 in itertools.permutations(left):
                    for labels2 in itertools.permutations(right):
                        path = LabeledDyckPath(
                            m, steps1 + steps2, labels1 + labels2
                        )
                        out.append(DecoratedDyckPath(path, len(steps1)))
    out.sort(
        key=lambda d: (d.part1().steps, d.part2().steps, d.path.labels)
    )
    return out


def primitive_part_bounds(path: LabeledDyckPath) -> list[tuple[int, int]]:
    """Step ranges [start, end) between consecutive returns to the axis."""
    bounds = []
    start = 0
    for position in path.axis_positions():
        if position > start:
            bounds.append((start, position))
            start = position
    return bounds


def primitive_parts(path: LabeledDyckPath) -> int:
    return len(primitive_part_bounds(path))


def compartment_decomposition(path: LabeledDyckPath) -> tuple[LabeledDyckPath, ...]:
    """Split into compartments by the iterated largest-remaining-label rule.

    The first compartment runs through the primitive part containing the
    largest label; the next one through the part containing the largest label
    not yet used, and so on.
    """
    bounds = primitive_part_bounds(path)
    if not bounds:
        return ()
    up_prefix = [0]
    for s in path.steps:
        up_prefix.append(up_prefix[-1] + (1 if s == UP else 0))
    part_labels = [
        path.labels[up_prefix[a] : up_prefix[b]] for a, b in bounds
    ]
    compartments: list[LabeledDyckPath] = []
    done = 0
    while done < len(bounds):
        remaining = [lab for labels in part_labels[done:] for lab in labels]
        target = max(remaining)
        stop = next(
            idx for idx in range(done, len(bounds)) if target in part_labels[idx]
        )
        a = bounds[done][0]
        b = bounds[stop][1]
        compartments.append(
            LabeledDyckPath(
                path.m, path.steps[a:b], path.labels[up_prefix[a] : up_prefix[b]]
            )
        )
        done = stop + 1
    return tuple(compartments)


def compartments(path: LabeledDyckPath) -> int:
    return len(compartment_decomposition(path))


def assemble_compartments(
    parts: Iterable[LabeledDyckPath],
) -> LabeledDyckPath:
    """Rebuild the unique labeled path whose compartments are ``parts``.

    Compartment maxima strictly decrease along a path, so sorting the given
    connected pieces by maximum label descending recovers the original order.
    """
    pieces = list(parts)
    if not pieces:
        raise ValueError("no compartments to assemble")
    m = pieces[0].m
    for piece in pieces:
        if piece.m != m:
            raise ValueError("mixed rise parameters")
        if compartments(piece) != 1:
            raise ValueError(f"piece {piece} is not connected")
    pieces.sort(key=lambda p: -max(p.labels))
    steps: tuple[str, ...] = ()
    labels: tuple[int, ...] = ()
    for piece in pieces:
        steps += piece.steps
        labels += piece.labels
    return LabeledDyckPath(m, steps, labels)


def compartment_distribution(
    n: int, m: int, limit: int = ENUMERATION_LIMIT
) -> list[int]:
    """Entry j: decorated paths whose second part has j compartments."""
    counts = [0] * (n + 1)
    for decorated in enumerate_decorated_paths(n, m, limit):
        counts[compartments(decorated.part2())] += 1
    return counts


def shifted_coefficient_identity(n: int, m: int) -> bool:
    """Absolute coefficients of the multiplicative polynomial must be the
    binomial transform of the additive ones."""
    a = charpoly_A_closed(n, m)
    c = charpoly_C_closed(n, m)
    for j in range(n + 1):
        expected = sum(
            abs(c.coefficient(i)) * math.comb(i, j) for i in range(j, n + 1)
        )
        if abs(a.coefficient(j)) != expected:
            return False
    return True


def unlabeled_census(n: int, m: int, limit: int = ENUMERATION_LIMIT) -> UnlabeledCensus:
    """Enumeration-derived counts of unlabeled paths.

    ``by_upsteps[k]`` counts paths with k up-steps for k = 0..n;
    ``by_axis_points[k]`` counts paths with n up-steps and k+1 axis points.
    """
    _check_guard(n, m, limit)
    by_upsteps = tuple(
        sum(1 for _ in step_sequences(k, m)) for k in range(n + 1)
    )
    by_axis_points = {k: 0 for k in range(1, n + 1)}
    if n >= 1:
        for steps in step_sequences(n, m):
            height = 0
            returns = 0
            for s in steps:
                height += m if s == UP else -1
                if height == 0:
                    returns += 1
            by_axis_points[returns] += 1
    return UnlabeledCensus(by_upsteps, by_axis_points)
