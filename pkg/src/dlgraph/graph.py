"""Finite truncations of Diestel-Leader graphs DL(p, q).

A vertex pairs a node of the "orange" p-branching tree (levels ascending
with the drawing height h) with a node of the "brown" q-branching tree
stored upside down (internal brown level = layers - h), so both components
sit at the same drawing height.  Two vertices are adjacent when both
components move along a tree edge at once: stepping down one height, the
orange component passes to its predecessor while the brown component passes
to one of its q children.

The truncation keeps heights 0..layers with complete slices; interior
vertices have degree p + q, the bottom slice (h = 0) degree p and the top
slice (h = layers) degree q.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .tree import CapExceededError, LayeredTree, TreeAddress

DEFAULT_VERTEX_CAP = 200_000


class DLVertex(NamedTuple):
    """(height, orange index, brown index); the brown component lives at internal level layers - height."""

    height: int
    orange: int
    brown: int


@dataclass(frozen=True)
class DLParams:
    """Construction parameters, validated on creation.

    The truncation holds ``sum(p**n * q**(layers-n))`` vertices; construction
    is rejected outright when that exceeds ``vertex_cap``.
    """

    p: int
    q: int
    layers: int
    vertex_cap: int = DEFAULT_VERTEX_CAP

    def __post_init__(self) -> None:
        if self.p < 2:
            raise ValueError(f"p must be >= 2, got {self.p}")
        if self.q < 2:
            raise ValueError(f"q must be >= 2, got {self.q}")
        if self.layers < 1:
            raise ValueError(f"layers must be >= 1, got {self.layers}")
        total = self.vertex_count
        if total > self.vertex_cap:
            raise CapExceededError(
                f"DL({self.p},{self.q}) with layers={self.layers} holds {total} "
                f"vertices (cap: {self.vertex_cap})"
            )

    @property
    def vertex_count(self) -> int:
        L = self.layers
        return sum(self.p**n * self.q ** (L - n) for n in range(L + 1))

    @property
    def edge_count(self) -> int:
        L = self.layers
        return sum(self.p**n * self.q ** (L - n + 1) for n in range(1, L + 1))

    def height_size(self, height: int) -> int:
        """Number of vertices drawn at ``height``."""
        if not 0 <= height <= self.layers:
            raise ValueError(f"height {height} outside [0, {self.layers}]")
        return self.p**height * self.q ** (self.layers - height)


@dataclass(frozen=True)
class Census:
    """Enumerated counts: vertices per height, total edges, degree histogram."""

    heights: tuple[int, ...]
    vertex_count: int
    edge_count: int
    degree_histogram: dict[int, int]


class DLGraph:
    """Finite truncation of DL(p, q) over heights 0..layers.

    Immutable after construction; every query is a pure function, so
    concurrent reads are safe.  Vertices and edges enumerate in a fixed
    order (ascending height, then orange, then brown; each edge once with
    the higher endpoint first) so downstream output is deterministic.
    """

    def __init__(self, params: DLParams):
        self.params = params
        self.orange_tree = LayeredTree(params.p, params.layers, level_cap=params.vertex_cap)
        self.brown_tree = LayeredTree(params.q, params.layers, level_cap=params.vertex_cap)
        offsets = [0]
        for h in range(params.layers + 1):
            offsets.append(offsets[-1] + params.height_size(h))
        self._offsets = offsets

    @property
    def p(self) -> int:
        return self.params.p

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def layers(self) -> int:
        return self.params.layers

    def validate(self, vertex) -> DLVertex:
        """Return ``vertex`` as a :class:`DLVertex`, rejecting out-of-range components."""
        v = DLVertex(*vertex)
        if not 0 <= v.height <= self.layers:
            raise ValueError(f"height {v.height} outside [0, {self.layers}]")
        if not 0 <= v.orange < self.p**v.height:
            raise ValueError(f"orange index {v.orange} invalid at height {v.height}")
        if not 0 <= v.brown < self.q ** (self.layers - v.height):
            raise ValueError(f"brown index {v.brown} invalid at height {v.height}")
        return v

    def __contains__(self, vertex) -> bool:
        try:
            self.validate(vertex)
        except (TypeError, ValueError):
            return False
        return True

    def orange_address(self, vertex) -> TreeAddress:
        """The orange component as a p-tree address (level = height)."""
        v = self.validate(vertex)
        return TreeAddress(v.height, v.orange)

    def brown_address(self, vertex) -> TreeAddress:
        """The brown component as a q-tree address (internal level = layers - height)."""
        v = self.validate(vertex)
        return TreeAddress(self.layers - v.height, v.brown)

    def vertices(self) -> Iterator[DLVertex]:
        """All vertices in ascending (height, orange, brown) order."""
        for h in range(self.layers + 1):
            for j in range(self.p**h):
                for k in range(self.q ** (self.layers - h)):
                    yield DLVertex(h, j, k)

    def vertex_index(self, vertex) -> int:
        """Rank of ``vertex`` in the canonical enumeration order."""
        v = self.validate(vertex)
        return self._offsets[v.height] + v.orange * self.q ** (self.layers - v.height) + v.brown

    def edges(self) -> Iterator[tuple[DLVertex, DLVertex]]:
        """Each edge once, higher endpoint first, in deterministic order."""
        p, q, L = self.p, self.q, self.layers
        for h in range(1, L + 1):
            for j in range(p**h):
                for k in range(q ** (L - h)):
                    top = DLVertex(h, j, k)
                    down_orange = j // p
                    for c in range(q):
                        yield top, DLVertex(h - 1, down_orange, k * q + c)

    def neighbors(self, vertex) -> list[DLVertex]:
        """Adjacent vertices in ascending (height, orange, brown) order.

        Down-moves fix the orange predecessor and pick one of q brown
        children; up-moves pick one of p orange children and fix the brown
        predecessor.
        """
        v = self.validate(vertex)
        out = []
        if v.height > 0:
            down_orange = v.orange // self.p
            base = v.brown * self.q
            for c in range(self.q):
                out.append(DLVertex(v.height - 1, down_orange, base + c))
        if v.height < self.layers:
            up_brown = v.brown // self.q
            base = v.orange * self.p
            for c in range(self.p):
                out.append(DLVertex(v.height + 1, base + c, up_brown))
        return out

    def degree(self, vertex) -> int:
        return len(self.neighbors(vertex))

    def is_edge(self, a, b) -> bool:
        """True iff the heights differ by 1 and both tree components move along tree edges."""
        va, vb = self.validate(a), self.validate(b)
        if abs(va.height - vb.height) != 1:
            return False
        top, bottom = (va, vb) if va.height > vb.height else (vb, va)
        return bottom.orange == top.orange // self.p and bottom.brown // self.q == top.brown

    def bfs_distance(self, a, b) -> int:
        """Shortest-path length within the truncation (plain breadth-first search).

        Truncation-relative: near the height boundary this may exceed the
        distance in the infinite graph.
        """
        start, goal = self.validate(a), self.validate(b)
        if start == goal:
            return 0
        dist = {start: 0}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            d = dist[u] + 1
            for w in self.neighbors(u):
                if w in dist:
                    continue
                if w == goal:
                    return d
                dist[w] = d
                queue.append(w)
        raise RuntimeError(f"{goal} unreachable from {start}")  # cannot happen: truncations are connected

    def census(self) -> Census:
        """Counts obtained by enumeration (not from the closed forms)."""
        heights = [0] * (self.layers + 1)
        histogram: Counter[int] = Counter()
        for v in self.vertices():
            heights[v.height] += 1
            histogram[len(self.neighbors(v))] += 1
        edge_count = sum(1 for _ in self.edges())
        return Census(
            heights=tuple(heights),
            vertex_count=sum(heights),
            edge_count=edge_count,
            degree_histogram=dict(sorted(histogram.items())),
        )
