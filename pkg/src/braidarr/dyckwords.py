"""Step grammar shared by sketch words and labeled paths.

A word over letters ``(i, k)`` with consistent exponent interleaving is
equivalent to a labeled path: letters with exponent 0 are up-steps (rise m)
and everything else is a down-step.  The inverse direction fills each
down-step with a forced letter; the choice is unique, so paths and words
carry exactly the same information.
"""
from __future__ import annotations

from typing import Iterator, Sequence

UP = "U"
DOWN = "D"

Letter = tuple[int, int]


def step_sequences(ups: int, m: int) -> Iterator[tuple[str, ...]]:
    """All step tuples with ``ups`` up-steps of rise m and nonnegative prefixes.

    Yielded in lexicographic order ('D' sorts before 'U').
    """
    out: list[str] = []

    def extend(ups_left: int, height: int) -> Iterator[tuple[str, ...]]:
        if ups_left == 0 and height == 0:
            yield tuple(out)
            return
        if height > 0:
            out.append(DOWN)
            yield from extend(ups_left, height - 1)
            out.pop()
        if ups_left > 0:
            out.append(UP)
            yield from extend(ups_left - 1, height + m)
            out.pop()

    yield from extend(ups, 0)


def complete_word(
    steps: Sequence[str], labels: Sequence[int], m: int
) -> tuple[Letter, ...]:
    """The unique valid word whose up-steps carry ``labels`` in order.

    Up-steps emit ``(label, 0)``.  At a down-step the pending exponent-k
    letters are ordered by the positions of their exponent-(k-1)
    predecessors, which forces a single choice; we assert it exists.
    """
    word: list[Letter] = []
    position: dict[Letter, int] = {}
    emitted = [0] * (m + 1)  # emitted[k] = number of exponent-k letters so far
    up_count = 0
    for step in steps:
        if step == UP:
            letter = (labels[up_count], 0)
            up_count += 1
            emitted[0] += 1
        else:
            best_k = -1
            best_pos = None
            for k in range(1, m + 1):
                if emitted[k] < emitted[k - 1]:
                    pred = (labels[emitted[k]], k - 1)
                    if best_pos is None or position[pred] < best_pos:
                        best_pos = position[pred]
                        best_k = k
            if best_k < 0:
                raise ValueError("down-step with no pending letter; not a valid path")
            letter = (labels[emitted[best_k]], best_k)
            emitted[best_k] += 1
        position[letter] = len(word)
        word.append(letter)
    return tuple(word)
