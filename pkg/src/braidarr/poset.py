"""Intersection posets of multiplicative arrangements.

Flats are represented combinatorially: a set of zero-forced coordinates plus
a partition of the remaining coordinates into components, where each
component carries integer offsets meaning ``x_v = 2^(offset_v) * c`` for a
shared free value c.  This canonical form is exact, hashable, and directly
supports the containment test that orders the poset.

A second, independent route computes flat dimensions by exact row reduction
on the true hyperplane normals (coefficients 1 and -2^k); tests compare the
two models.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arrangements import MULTIPLICATIVE, ArrangementSpec, Hyperplane, hyperplanes_of
from .numbers import IntPolynomial

POSET_DIMENSION_GUARD = 5


class InconsistentGraph(ValueError):
    """Two directed paths between the same vertices have different label sums."""


@dataclass(frozen=True)
class ArrangementGraph:
    """Directed multigraph model of a set of multiplicative hyperplanes.

    An edge ``(u, v, k)`` means ``x_v = 2^k x_u``; every hyperplane
    contributes the edge and its reverse.  Loop closure has been applied:
    any component containing a zero-forced vertex is entirely looped and has
    no edges.
    """

    n: int
    loops: frozenset[int]
    edges: frozenset[tuple[int, int, int]]


@dataclass(frozen=True)
class Flat:
    """Canonical form of a nonempty intersection of hyperplanes.

    ``components`` holds the non-zero-forced coordinates grouped together;
    each component is a tuple of (vertex, offset) pairs sorted by vertex with
    the smallest vertex at offset 0.  Components are sorted by their smallest
    vertex.  The dimension is the number of components.
    """

    n: int
    loops: frozenset[int]
    components: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.components)

    def offset_map(self) -> dict[int, tuple[int, int]]:
        """vertex -> (component index, offset) for non-looped vertices."""
        out = {}
        for idx, comp in enumerate(self.components):
            for v, off in comp:
                out[v] = (idx, off)
        return out

    def sort_key(self) -> tuple:
        return (tuple(sorted(self.loops)), self.components)


@dataclass(frozen=True)
class PosetNode:
    flat: Flat
    mu: int
    index: int


class IntersectionPoset:
    """All flats of an arrangement with Mobius values and the Hasse relation.

    Nodes are sorted by descending dimension (ambient space first) and then
    by canonical key, so node order is deterministic.
    """

    def __init__(self, nodes: Sequence[PosetNode], below: Sequence[frozenset[int]]):
        self.nodes = tuple(nodes)
        self._below = tuple(below)  # indices of flats strictly containing node i

    def __len__(self) -> int:
        return len(self.nodes)

    def strictly_below(self, index: int) -> frozenset[int]:
        """Poset elements strictly below node ``index`` (closer to ambient)."""
        return self._below[index]

    def hasse_edges(self) -> list[tuple[int, int]]:
        """Cover pairs (a, b) where b covers a."""
        edges = []
        for b, lower in enumerate(self._below):
            for a in lower:
                if not any(a in self._below[c] for c in lower if c != a):
                    edges.append((a, b))
        return sorted(edges)

    def to_json_dict(self) -> dict:
        flats = []
        for node in self.nodes:
            flats.append(
                {
                    "id": node.index,
                    "dim": node.flat.dimension,
                    "mu": node.mu,
                    "loops": sorted(node.flat.loops),
                    "components": [
                        [[v, off] for v, off in comp] for comp in node.flat.components
                    ],
                }
            )
        return {
            "n": self.nodes[0].flat.n if self.nodes else 0,
            "flats": flats,
            "hasse": [[a, b] for a, b in self.hasse_edges()],
        }


def graph_of(hyperplanes: Iterable[Hyperplane], n: int) -> ArrangementGraph:
    """Graph model of a hyperplane set, with loop closure applied."""
    loops: set[int] = set()
    edges: set[tuple[int, int, int]] = set()
    for h in hyperplanes:
        if h.kind == "coord":
            loops.add(h.i)
        else:
            # x_i = 2^k x_j: k applied to x_j gives x_i
            edges.add((h.j, h.i, h.k))
            edges.add((h.i, h.j, -h.k))
    adjacency: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    for u, v, _ in edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    # Loop closure: spread loops through connected components, drop their edges.
    stack = list(loops)
    while stack:
        v = stack.pop()
        for w in adjacency[v]:
            if w not in loops:
                loops.add(w)
                stack.append(w)
    edges = {(u, v, k) for (u, v, k) in edges if u not in loops and v not in loops}
    return ArrangementGraph(n, frozenset(loops), frozenset(edges))


def is_consistent(g: ArrangementGraph) -> bool:
    """True iff all directed paths between equal endpoints have equal label sums."""
    return _potentials(g) is not None


def flat_of(g: ArrangementGraph) -> Flat:
    """Canonical flat of a consistent graph; raises on inconsistency."""
    potentials = _potentials(g)
    if potentials is None:
        raise InconsistentGraph("conflicting path label sums")
    return _flat_from_parts(g.n, g.loops, potentials)


def _potentials(g: ArrangementGraph) -> list[dict[int, int]] | None:
    """Per-component offset assignments, or None on conflict."""
    neighbors: dict[int, list[tuple[int, int]]] = {
        v: [] for v in range(1, g.n + 1) if v not in g.loops
    }
    for u, v, k in g.edges:
        neighbors[u].append((v, k))
    seen: dict[int, int] = {}
    components: list[dict[int, int]] = []
    for start in sorted(neighbors):
        if start in seen:
            continue
        offsets = {start: 0}
        stack = [start]
        while stack:
            u = stack.pop()
            for v, k in neighbors[u]:
                candidate = offsets[u] + k
                if v in offsets:
                    if offsets[v] != candidate:
                        return None
                else:
                    offsets[v] = candidate
                    stack.append(v)
        seen.update(offsets)
        components.append(offsets)
    return components


def _flat_from_parts(
    n: int, loops: frozenset[int], components: list[dict[int, int]]
) -> Flat:
    canonical = []
    for offsets in components:
        rep = min(offsets)
        base = offsets[rep]
        canonical.append(tuple(sorted((v, off - base) for v, off in offsets.items())))
    canonical.sort(key=lambda comp: comp[0][0])
    return Flat(n, loops, tuple(canonical))


def ambient_flat(n: int) -> Flat:
    return Flat(n, frozenset(), tuple(((v, 0),) for v in range(1, n + 1)))


def intersect_flat(flat: Flat, h: Hyperplane) -> Flat:
    """Intersect a flat with one multiplicative hyperplane.

    A conflicting merge (same component, wrong offset gap) forces the free
    value of that component to zero, so the component joins the loop set
    rather than emptying the intersection; every hyperplane here passes
    through the origin.
    """
    comps = [dict(c) for c in flat.components]
    loops = set(flat.loops)

    def loop_component(idx: int) -> None:
        loops.update(comps[idx].keys())
        del comps[idx]

    if h.kind == "coord":
        if h.i not in loops:
            loop_component(_component_index(comps, h.i))
        return _flat_from_parts(flat.n, frozenset(loops), comps)
    i, j, k = h.i, h.j, h.k  # x_i = 2^k x_j
    i_looped, j_looped = i in loops, j in loops
    if i_looped and j_looped:
        return flat
    if i_looped != j_looped:
        loop_component(_component_index(comps, j if i_looped else i))
        return _flat_from_parts(flat.n, frozenset(loops), comps)
    ci = _component_index(comps, i)
    cj = _component_index(comps, j)
    if ci == cj:
        if comps[ci][i] == k + comps[ci][j]:
            return flat
        loop_component(ci)
        return _flat_from_parts(flat.n, frozenset(loops), comps)
    delta = k + comps[cj][j] - comps[ci][i]
    merged = dict(comps[cj])
    merged.update({v: off + delta for v, off in comps[ci].items()})
    comps = [c for idx, c in enumerate(comps) if idx not in (ci, cj)]
    comps.append(merged)
    return _flat_from_parts(flat.n, frozenset(loops), comps)


def _component_index(comps: list[dict[int, int]], v: int) -> int:
    for idx, comp in enumerate(comps):
        if v in comp:
            return idx
    raise KeyError(v)


def flat_contains(outer: Flat, inner: Flat) -> bool:
    """True iff inner is a subset of outer as point sets."""
    if outer.n != inner.n:
        raise ValueError("flats live in different dimensions")
    if not outer.loops <= inner.loops:
        return False
    inner_map = inner.offset_map()
    for comp in outer.components:
        vertices = [v for v, _ in comp]
        if all(v in inner.loops for v in vertices):
            continue
        if any(v in inner.loops for v in vertices):
            return False
        first_v, first_off = comp[0]
        comp_idx, inner_first = inner_map[first_v]
        delta = inner_first - first_off
        for v, off in comp:
            idx, inner_off = inner_map[v]
            if idx != comp_idx or inner_off != off + delta:
                return False
    return True


def build_poset(spec: ArrangementSpec) -> IntersectionPoset:
    """All flats by incremental intersection, with Mobius values.

    Starts from the ambient flat and repeatedly intersects known flats with
    single hyperplanes until closure, then orders by reverse inclusion and
    runs the defining Mobius recursion top-down.
    """
    if spec.flavor != MULTIPLICATIVE:
        raise ValueError("posets are built for multiplicative arrangements only")
    if spec.n > POSET_DIMENSION_GUARD:
        raise ValueError(
            f"n={spec.n} exceeds the poset guard of {POSET_DIMENSION_GUARD}"
        )
    planes = hyperplanes_of(spec)
    start = ambient_flat(spec.n)
    flats = {start}
    frontier = [start]
    while frontier:
        flat = frontier.pop()
        for h in planes:
            nxt = intersect_flat(flat, h)
            if nxt not in flats:
                flats.add(nxt)
                frontier.append(nxt)
    ordered = sorted(flats, key=lambda f: (-f.dimension, f.sort_key()))
    below: list[frozenset[int]] = []
    for b, flat_b in enumerate(ordered):
        lower = set()
        for a, flat_a in enumerate(ordered):
            if a != b and flat_contains(flat_a, flat_b):
                lower.add(a)
        below.append(frozenset(lower))
    mu: list[int] = []
    for index in range(len(ordered)):
        if not below[index]:
            mu.append(1)  # the ambient flat
        else:
            mu.append(-sum(mu[a] for a in below[index]))
    nodes = [PosetNode(flat, mu[i], i) for i, flat in enumerate(ordered)]
    return IntersectionPoset(nodes, below)


def charpoly_from_poset(poset: IntersectionPoset, n: int) -> IntPolynomial:
    """Mobius-weighted dimension generating polynomial."""
    coeffs = [0] * (n + 1)
    for node in poset.nodes:
        coeffs[node.flat.dimension] += node.mu
    return IntPolynomial(coeffs)


def flat_dimension_by_rank(hyperplanes: Iterable[Hyperplane], n: int) -> int:
    """Dimension of the intersection via exact rank of the true normals.

    Row for ``x_i = 0`` is e_i; row for ``x_i = 2^k x_j`` is e_i - 2^k e_j.
    This route never looks at the graph model, so it serves as an
    independent cross-check.
    """
    rows = []
    for h in hyperplanes:
        row = [Fraction(0)] * n
        if h.kind == "coord":
            row[h.i - 1] = Fraction(1)
        else:
            row[h.i - 1] = Fraction(1)
            row[h.j - 1] = Fraction(-(2**h.k))
        rows.append(row)
    return n - _rank(rows, n)


def _rank(rows: list[list[Fraction]], width: int) -> int:
    rank = 0
    for col in range(width):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                factor = rows[r][col] / lead
                for c in range(col, width):
                    rows[r][c] -= factor * rows[rank][c]
        rank += 1
    return rank
