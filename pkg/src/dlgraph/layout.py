"""Exact 3D coordinates for the two trees and the DL graph.

Drawing conventions (the drawing height h is the z coordinate):

* the orange p-tree lives in the plane y = 0 and grows upward; the node at
  level h, index j sits at ``x = p**(L-h)/2 - 0.5 + j * p**(L-h)``.
  Consecutive nodes at height h are ``p**(L-h)`` apart and the first is
  centred over ``[0, p**(L-h) - 1]``, so the top level has unit spacing.
* the brown q-tree lives in the plane x = 0 and hangs downward; the node
  drawn at height h with index k sits at ``y = q**h/2 - 0.5 + k * q**h``.
* the DL vertex (h, j, k) inherits x from its orange component and y from
  its brown component.

Coordinates are exact rationals (always multiples of 1/2); rounding happens
only at export time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .graph import DLGraph, DLParams, DLVertex

HALF = Fraction(1, 2)

KIND_TREE_P = "tree-p"
KIND_TREE_Q = "tree-q"
KIND_DL = "dl"
KINDS = (KIND_TREE_P, KIND_TREE_Q, KIND_DL)

DEFAULT_VIEW = (165, 10)


class Point3(NamedTuple):
    x: Fraction
    y: Fraction
    z: Fraction


class Segment(NamedTuple):
    """One drawn line: its kind and the two endpoints, higher z first."""

    kind: str
    a: Point3
    b: Point3


@dataclass(frozen=True)
class Scene3D:
    """Typed edge segments plus the view under which they are meant to be shown.

    ``view`` is (azimuth degrees, elevation degrees); it is carried here but
    interpreted only by exporters.
    """

    params: DLParams
    view: tuple
    segments: tuple[Segment, ...]

    def segment_counts(self) -> dict[str, int]:
        counts = dict.fromkeys(KINDS, 0)
        for seg in self.segments:
            counts[seg.kind] += 1
        return counts


def orange_position(p: int, layers: int, level: int, index: int) -> Point3:
    """Position of orange node ``index`` at ``level``, in the plane y = 0."""
    if not 0 <= level <= layers:
        raise ValueError(f"level {level} outside [0, {layers}]")
    if not 0 <= index < p**level:
        raise ValueError(f"index {index} invalid at level {level}")
    spacing = Fraction(p ** (layers - level))
    return Point3(spacing / 2 - HALF + index * spacing, Fraction(0), Fraction(level))


def brown_position(q: int, layers: int, height: int, index: int) -> Point3:
    """Position of the brown node ``index`` drawn at ``height``, in the plane x = 0."""
    if not 0 <= height <= layers:
        raise ValueError(f"height {height} outside [0, {layers}]")
    if not 0 <= index < q ** (layers - height):
        raise ValueError(f"index {index} invalid at drawn height {height}")
    spacing = Fraction(q**height)
    return Point3(Fraction(0), spacing / 2 - HALF + index * spacing, Fraction(height))


def dl_position(params: DLParams, vertex) -> Point3:
    """Position of a DL vertex: orange x, brown y, height z."""
    v = DLVertex(*vertex)
    ox = orange_position(params.p, params.layers, v.height, v.orange).x
    by = brown_position(params.q, params.layers, v.height, v.brown).y
    return Point3(ox, by, Fraction(v.height))


def invert_dl_position(params: DLParams, point) -> DLVertex:
    """Recover the DL vertex drawn at ``point``; raises ValueError off-lattice."""
    x, y, z = (Fraction(c) for c in point)
    if z.denominator != 1 or not 0 <= z <= params.layers:
        raise ValueError(f"z = {z} is not a drawing height")
    h = int(z)
    pspacing = Fraction(params.p ** (params.layers - h))
    j = (x - pspacing / 2 + HALF) / pspacing
    if j.denominator != 1 or not 0 <= j < params.p**h:
        raise ValueError(f"x = {x} is not an orange node position at height {h}")
    qspacing = Fraction(params.q**h)
    k = (y - qspacing / 2 + HALF) / qspacing
    if k.denominator != 1 or not 0 <= k < params.q ** (params.layers - h):
        raise ValueError(f"y = {y} is not a brown node position at height {h}")
    return DLVertex(h, int(j), int(k))


def build_scene(graph: DLGraph, view=DEFAULT_VIEW) -> Scene3D:
    """Lay out the graph as typed segments, in drawing order.

    One pass per height step n = 1..layers: first every orange parent-child
    edge at that step (parents left to right, then children), then the brown
    and DL edges interleaved: per (brown parent k, brown child c) one tree-q
    segment immediately followed by its p**n associated DL segments.
    """
    params = graph.params
    p, q, L = params.p, params.q, params.layers
    segments = []
    for n in range(1, L + 1):
        for k in range(p ** (n - 1)):
            for child in range(p):
                segments.append(
                    Segment(
                        KIND_TREE_P,
                        orange_position(p, L, n, k * p + child),
                        orange_position(p, L, n - 1, k),
                    )
                )
        for k in range(q ** (L - n)):
            for child in range(q):
                segments.append(
                    Segment(
                        KIND_TREE_Q,
                        brown_position(q, L, n, k),
                        brown_position(q, L, n - 1, k * q + child),
                    )
                )
                for kk in range(p ** (n - 1)):
                    for childprime in range(p):
                        segments.append(
                            Segment(
                                KIND_DL,
                                dl_position(params, DLVertex(n, kk * p + childprime, k)),
                                dl_position(params, DLVertex(n - 1, kk, k * q + child)),
                            )
                        )
    return Scene3D(params=params, view=tuple(view), segments=tuple(segments))
