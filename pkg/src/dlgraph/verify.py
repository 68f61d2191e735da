"""Executable verification of the structural laws a DL(p, q) truncation obeys.

Each check is a pure function returning a :class:`CheckResult`; a failed
check always carries a concrete counterexample (a vertex, edge, segment or
pair).  :func:`run_checks` assembles a :class:`VerificationReport` whose
entries are merged deterministically (ordered by check name, then
parameters) regardless of execution order.

:class:`MutatedGraph` supplies deliberately broken graphs for
negative-control tests: every check has to fail on a suitable mutation.
"""

from __future__ import annotations

import itertools
import json
import time
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterator

from .graph import DLGraph, DLVertex
from .layout import DEFAULT_VIEW, KIND_TREE_P, KIND_TREE_Q, Scene3D, build_scene, invert_dl_position
from .tree import LayeredTree, TreeAddress

PASS = "pass"
FAIL = "fail"
SKIP = "skip"

DEFAULT_BALL_RADIUS = 2
MAX_BALL_RADIUS = 3


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one check: pass/fail/skip plus a counterexample on failure."""

    name: str
    params: dict
    status: str
    counterexample: str | None
    elapsed: float
    detail: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS


@dataclass(frozen=True)
class VerificationReport:
    """Deterministically ordered collection of check results."""

    entries: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(entry.status != FAIL for entry in self.entries)

    def to_text(self) -> str:
        """Human-readable report, one line per check, stable field order, no timings."""
        lines = []
        for entry in self.entries:
            params = " ".join(f"{k}={v}" for k, v in sorted(entry.params.items()))
            line = f"[{entry.status.upper():4}] {entry.name}({params})"
            if entry.detail:
                line += "  " + " ".join(f"{k}={v}" for k, v in sorted(entry.detail.items()))
            if entry.counterexample:
                line += f"  counterexample: {entry.counterexample}"
            lines.append(line)
        counts = {status: sum(e.status == status for e in self.entries) for status in (PASS, FAIL, SKIP)}
        verdict = "ok" if self.all_passed else "FAILURES detected"
        lines.append(f"{counts[PASS]} passed, {counts[FAIL]} failed, {counts[SKIP]} skipped; {verdict}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "all_passed": self.all_passed,
            "checks": [
                {
                    "name": entry.name,
                    "params": {k: entry.params[k] for k in sorted(entry.params)},
                    "status": entry.status,
                    "counterexample": entry.counterexample,
                    "detail": entry.detail,
                    "elapsed_seconds": entry.elapsed,
                }
                for entry in self.entries
            ],
        }
        return json.dumps(doc, indent=2) + "\n"


def _result(name: str, params: dict, started: float, status: str, counterexample=None, detail=None) -> CheckResult:
    return CheckResult(name, params, status, counterexample, time.perf_counter() - started, detail)


def _graph_params(g) -> dict:
    return {"p": g.params.p, "q": g.params.q, "layers": g.params.layers}


def check_degree_law(g) -> CheckResult:
    """Every vertex has q down-neighbours (unless h = 0) and p up-neighbours (unless h = layers)."""
    started = time.perf_counter()
    name, params = "check_degree_law", _graph_params(g)
    p, q, L = g.params.p, g.params.q, g.params.layers
    histogram: dict[int, int] = {}
    for v in g.vertices():
        expected = (q if v.height > 0 else 0) + (p if v.height < L else 0)
        actual = len(g.neighbors(v))
        histogram[actual] = histogram.get(actual, 0) + 1
        if actual != expected:
            return _result(
                name, params, started, FAIL,
                counterexample=f"vertex {tuple(v)} has degree {actual}, expected {expected}",
            )
    return _result(name, params, started, PASS, detail={"degree_histogram": dict(sorted(histogram.items()))})


def check_level_condition(g) -> CheckResult:
    """Both components of every vertex sit at opposite relative heights.

    With the orange basepoint at the orange root and the brown basepoint
    ranging over every brown vertex drawn at height 0, the orange component
    of a vertex at height h has relative height h and the brown component
    has relative height -h, for every basepoint choice.
    """
    started = time.perf_counter()
    name, params = "check_level_condition", _graph_params(g)
    p, q, L = g.params.p, g.params.q, g.params.layers
    cap = max(g.params.vertex_cap, p**L, q**L)
    orange = LayeredTree(p, L, level_cap=cap)
    brown = LayeredTree(q, L, level_cap=cap)
    basepoints = [TreeAddress(L, i) for i in range(q**L)]
    checked = 0
    for v in g.vertices():
        try:
            orange_addr = orange.validate(TreeAddress(v.height, v.orange))
            brown_addr = brown.validate(TreeAddress(L - v.height, v.brown))
        except (TypeError, ValueError) as exc:
            return _result(
                name, params, started, FAIL,
                counterexample=f"vertex {tuple(v)} is not a height-matched tree pair: {exc}",
            )
        h_orange = orange.busemann(orange_addr)
        if h_orange != v.height:
            return _result(
                name, params, started, FAIL,
                counterexample=f"vertex {tuple(v)}: orange relative height {h_orange} != {v.height}",
            )
        for o_q in basepoints:
            h_brown = brown.busemann(brown_addr, o_q)
            checked += 1
            if h_brown != -v.height:
                return _result(
                    name, params, started, FAIL,
                    counterexample=(
                        f"vertex {tuple(v)} with brown basepoint {tuple(o_q)}: "
                        f"brown relative height {h_brown} != {-v.height}"
                    ),
                )
    return _result(name, params, started, PASS, detail={"basepoints": len(basepoints), "pairings": checked})


def check_counts(g) -> CheckResult:
    """Enumerated vertex/edge counts match the closed forms; handshake holds."""
    started = time.perf_counter()
    name, params = "check_counts", _graph_params(g)
    p, q, L = g.params.p, g.params.q, g.params.layers
    expected_v = sum(p**n * q ** (L - n) for n in range(L + 1))
    expected_e = sum(p**n * q ** (L - n + 1) for n in range(1, L + 1))
    enum_v = 0
    degree_sum = 0
    for v in g.vertices():
        enum_v += 1
        degree_sum += len(g.neighbors(v))
    enum_e = sum(1 for _ in g.edges())
    if enum_v != expected_v:
        return _result(name, params, started, FAIL,
                       counterexample=f"enumerated {enum_v} vertices, closed form {expected_v}")
    if enum_e != expected_e:
        return _result(name, params, started, FAIL,
                       counterexample=f"enumerated {enum_e} edges, closed form {expected_e}")
    if degree_sum != 2 * enum_e:
        return _result(name, params, started, FAIL,
                       counterexample=f"degree sum {degree_sum} != 2*|E| = {2 * enum_e}")
    return _result(name, params, started, PASS,
                   detail={"vertices": enum_v, "edges": enum_e, "degree_sum": degree_sum})


def _ball(g, center, radius: int, neighbor_cache: dict) -> tuple[dict, dict]:
    """BFS ball of the given radius: (distance-from-center, induced adjacency sets)."""

    def cached_neighbors(u):
        got = neighbor_cache.get(u)
        if got is None:
            got = neighbor_cache[u] = tuple(g.neighbors(u))
        return got

    dist = {center: 0}
    queue = deque([center])
    while queue:
        u = queue.popleft()
        if dist[u] == radius:
            continue
        for w in cached_neighbors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    adjacency = {u: frozenset(w for w in cached_neighbors(u) if w in dist) for u in dist}
    return dist, adjacency


def _refined_labels(adjacency: dict, dist: dict, rounds: int = 3) -> dict:
    """Iteratively refined (distance, degree) labels; invariant under centered isomorphism."""
    labels = {u: (dist[u], len(adjacency[u])) for u in adjacency}
    for _ in range(rounds):
        labels = {u: (labels[u], tuple(sorted(labels[w] for w in adjacency[u]))) for u in adjacency}
    return labels


def _balls_isomorphic(ball_a: tuple[dict, dict], ball_b: tuple[dict, dict]) -> bool:
    """Backtracking isomorphism test between two induced balls, pruned by refined labels."""
    dist_a, adj_a = ball_a
    dist_b, adj_b = ball_b
    if len(adj_a) != len(adj_b):
        return False
    labels_a = _refined_labels(adj_a, dist_a)
    labels_b = _refined_labels(adj_b, dist_b)
    if sorted(labels_a.values()) != sorted(labels_b.values()):
        return False
    candidates: dict = {}
    for u, label in labels_b.items():
        candidates.setdefault(label, []).append(u)
    class_size = {label: len(members) for label, members in candidates.items()}
    order = sorted(adj_a, key=lambda u: (class_size[labels_a[u]], dist_a[u], u))
    mapping: dict = {}
    used: set = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        u = order[i]
        mapped_neighbors = [mapping[w] for w in adj_a[u] if w in mapping]
        for v in candidates[labels_a[u]]:
            if v in used:
                continue
            if any(m not in adj_b[v] for m in mapped_neighbors):
                continue
            if sum(1 for w in adj_b[v] if w in used) != len(mapped_neighbors):
                continue
            mapping[u] = v
            used.add(v)
            if extend(i + 1):
                return True
            del mapping[u]
            used.discard(v)
        return False

    return extend(0)


def check_local_homogeneity(g, radius: int) -> CheckResult:
    """All interior balls of the given radius are pairwise isomorphic.

    Interior means radius <= h <= layers - radius, where the truncation ball
    coincides with the ball of the untruncated graph.  Isomorphism against a
    fixed reference ball is established by brute-force backtracking with
    distance/degree refinement pruning.
    """
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    L = g.params.layers
    if L < 2 * radius:
        raise ValueError(f"layers must be >= 2*radius, got layers={L}, radius={radius}")
    started = time.perf_counter()
    name = "check_local_homogeneity"
    params = {**_graph_params(g), "radius": radius}
    interior = [v for v in g.vertices() if radius <= v.height <= L - radius]
    neighbor_cache: dict = {}
    reference = interior[0]
    reference_ball = _ball(g, reference, radius, neighbor_cache)
    for v in interior[1:]:
        ball = _ball(g, v, radius, neighbor_cache)
        if not _balls_isomorphic(reference_ball, ball):
            return _result(
                name, params, started, FAIL,
                counterexample=(
                    f"ball around {tuple(v)} is not isomorphic to the ball around {tuple(reference)}"
                ),
            )
    return _result(
        name, params, started, PASS,
        detail={"interior_vertices": len(interior), "ball_size": len(reference_ball[0])},
    )


def _lamp_state(v: DLVertex, b: int, layers: int) -> tuple[tuple[int, ...], int]:
    """Encode a DL vertex as (lamp configuration, cursor).

    The orange index contributes the digits below the cursor (most
    significant first), the brown index the digits at and above it (least
    significant first).
    """
    h, j, k = v
    digits = [(j // b ** (h - 1 - i)) % b for i in range(h)]
    digits += [(k // b ** (i - h)) % b for i in range(h, layers)]
    return tuple(digits), h


def _slab_edges(b: int, layers: int) -> set:
    """Edges of the lamplighter slab: configurations may change only at the cursor position."""
    edges = set()
    for cur in range(layers):
        for f in itertools.product(range(b), repeat=layers):
            for value in range(b):
                f2 = f[:cur] + (value,) + f[cur + 1 :]
                edges.add(((f, cur), (f2, cur + 1)))
    return edges


def check_lamplighter(g) -> CheckResult:
    """For p = q = b, the truncation is isomorphic to a lamplighter slab.

    States are (f, cursor) with f: positions 0..layers-1 -> Z/b and cursor in
    0..layers; states a cursor step apart are adjacent iff their
    configurations agree away from the lower cursor position.  The explicit
    digit encoding of :func:`_lamp_state` must be a bijection carrying the
    DL edge set exactly onto the slab edge set, moving one lamp per step.
    """
    started = time.perf_counter()
    name, params = "check_lamplighter", _graph_params(g)
    p, q, L = g.params.p, g.params.q, g.params.layers
    if p != q:
        return _result(name, params, started, SKIP, detail={"reason": "not applicable: p != q"})
    b = p
    encoding = {}
    for v in g.vertices():
        state = _lamp_state(DLVertex(*v), b, L)
        f, cur = state
        if len(f) != L or any(not 0 <= d < b for d in f) or not 0 <= cur <= L:
            return _result(name, params, started, FAIL,
                           counterexample=f"vertex {tuple(v)} encodes to out-of-range state {state}")
        encoding[DLVertex(*v)] = state
    if len(set(encoding.values())) != len(encoding):
        seen: dict = {}
        for v, state in encoding.items():
            if state in seen:
                return _result(name, params, started, FAIL,
                               counterexample=f"vertices {tuple(seen[state])} and {tuple(v)} collide on {state}")
            seen[state] = v
    expected_states = (L + 1) * b**L
    if len(encoding) != expected_states:
        return _result(name, params, started, FAIL,
                       counterexample=f"{len(encoding)} vertices vs {expected_states} slab states")

    slab = _slab_edges(b, L)
    image = set()
    for top, bottom in g.edges():
        top, bottom = DLVertex(*top), DLVertex(*bottom)
        f_top, cur_top = _lamp_state(top, b, L)
        f_bot, cur_bot = _lamp_state(bottom, b, L)
        edge = ((f_bot, cur_bot), (f_top, cur_top))
        image.add(edge)
        # Move semantics: exactly the lamp at the lower cursor may change,
        # to the brown child digit downward and the orange child digit upward.
        position = cur_top - 1
        if cur_bot != position or edge not in slab:
            return _result(name, params, started, FAIL,
                           counterexample=f"edge {tuple(top)}-{tuple(bottom)} maps outside the slab")
        if f_bot[position] != bottom.brown % b or f_top[position] != top.orange % b:
            return _result(name, params, started, FAIL,
                           counterexample=f"edge {tuple(top)}-{tuple(bottom)} moves the wrong lamp value")
        if any(f_bot[i] != f_top[i] for i in range(L) if i != position):
            return _result(name, params, started, FAIL,
                           counterexample=f"edge {tuple(top)}-{tuple(bottom)} changes a lamp away from the cursor")
    if image != slab:
        missing = next(iter(slab - image), None)
        extra = next(iter(image - slab), None)
        return _result(name, params, started, FAIL,
                       counterexample=f"edge sets differ (missing: {missing}, extra: {extra})")
    return _result(name, params, started, PASS,
                   detail={"states": expected_states, "slab_edges": len(slab)})


def check_scene_graph_agreement(g, scene: Scene3D) -> CheckResult:
    """Inverting the DL segments' coordinates reproduces the edge set bijectively.

    Also insists that tree-p segments lie in the plane y = 0 and tree-q
    segments in x = 0.
    """
    started = time.perf_counter()
    name, params = "check_scene_graph_agreement", _graph_params(g)
    seen: dict = {}
    for i, seg in enumerate(scene.segments):
        if seg.kind == KIND_TREE_P:
            if seg.a.y != 0 or seg.b.y != 0:
                return _result(name, params, started, FAIL,
                               counterexample=f"segment {i} (tree-p) leaves the plane y=0")
        elif seg.kind == KIND_TREE_Q:
            if seg.a.x != 0 or seg.b.x != 0:
                return _result(name, params, started, FAIL,
                               counterexample=f"segment {i} (tree-q) leaves the plane x=0")
        else:
            try:
                va = invert_dl_position(scene.params, seg.a)
                vb = invert_dl_position(scene.params, seg.b)
            except ValueError as exc:
                return _result(name, params, started, FAIL,
                               counterexample=f"segment {i}: {exc}")
            top, bottom = (va, vb) if va.height > vb.height else (vb, va)
            if top.height - bottom.height != 1 or not g.is_edge(top, bottom):
                return _result(name, params, started, FAIL,
                               counterexample=f"segment {i} joins non-adjacent vertices {tuple(va)}, {tuple(vb)}")
            key = (top, bottom)
            seen[key] = seen.get(key, 0) + 1
    expected: dict = {}
    for top, bottom in g.edges():
        key = (DLVertex(*top), DLVertex(*bottom))
        expected[key] = expected.get(key, 0) + 1
    if seen != expected:
        for key in expected:
            if seen.get(key, 0) != expected[key]:
                return _result(name, params, started, FAIL,
                               counterexample=f"edge {tuple(key[0])}-{tuple(key[1])} drawn "
                                              f"{seen.get(key, 0)} times, expected {expected[key]}")
        for key in seen:
            if key not in expected:
                return _result(name, params, started, FAIL,
                               counterexample=f"drawn edge {tuple(key[0])}-{tuple(key[1])} is not a graph edge")
        return _result(name, params, started, FAIL,
                       counterexample="drawn edge multiset differs from the edge set")
    return _result(name, params, started, PASS, detail={"dl_segments": sum(seen.values())})


CHECKS: dict[str, Callable] = {
    "counts": check_counts,
    "degree_law": check_degree_law,
    "lamplighter": check_lamplighter,
    "level_condition": check_level_condition,
    "local_homogeneity": check_local_homogeneity,
    "scene_graph_agreement": check_scene_graph_agreement,
}


def _sort_key(entry: CheckResult):
    return entry.name, tuple((k, str(v)) for k, v in sorted(entry.params.items()))


def run_checks(g, names=None, radius: int = DEFAULT_BALL_RADIUS, view=DEFAULT_VIEW) -> VerificationReport:
    """Run the selected checks (all, by default) and merge them deterministically.

    ``local_homogeneity`` needs layers >= 2*radius; when the graph is too
    shallow the suite records a skip entry instead of erroring, so the
    default parameters stay usable.  ``radius`` is capped at
    :data:`MAX_BALL_RADIUS` to keep the ball search exhaustive yet fast.
    """
    if names is None:
        selected = list(CHECKS)
    else:
        selected = []
        for raw in names:
            key = raw.removeprefix("check_")
            if key not in CHECKS:
                raise ValueError(f"unknown check {raw!r}; available: {', '.join(CHECKS)}")
            selected.append(key)
    if not 1 <= radius <= MAX_BALL_RADIUS:
        raise ValueError(f"radius must be in [1, {MAX_BALL_RADIUS}], got {radius}")

    entries = []
    for key in selected:
        if key == "local_homogeneity":
            if g.params.layers < 2 * radius:
                started = time.perf_counter()
                entries.append(_result(
                    "check_local_homogeneity", {**_graph_params(g), "radius": radius}, started, SKIP,
                    detail={"reason": f"not applicable: layers < 2*radius ({g.params.layers} < {2 * radius})"},
                ))
            else:
                entries.append(check_local_homogeneity(g, radius))
        elif key == "scene_graph_agreement":
            entries.append(check_scene_graph_agreement(g, build_scene(g, view)))
        else:
            entries.append(CHECKS[key](g))
    return VerificationReport(tuple(sorted(entries, key=_sort_key)))


class MutatedGraph:
    """Read-only view of a DL graph with a few vertices/edges toggled.

    A negative-control tool: the structural checks must fail on a graph that
    was deliberately damaged.  Added vertices may be arbitrary (height,
    orange, brown) triples, valid or not.
    """

    def __init__(self, base: DLGraph, add_edges=(), drop_edges=(), add_vertices=()):
        self.base = base
        self.params = base.params
        self.extra_vertices = tuple(DLVertex(*v) for v in add_vertices)
        self._added = [self._pair(e) for e in add_edges]
        self._dropped = {frozenset(self._pair(e)) for e in drop_edges}

    @staticmethod
    def _pair(edge) -> tuple[DLVertex, DLVertex]:
        a, b = edge
        a, b = DLVertex(*a), DLVertex(*b)
        return (a, b) if a.height >= b.height else (b, a)

    def vertices(self) -> Iterator[DLVertex]:
        yield from self.base.vertices()
        yield from self.extra_vertices

    def edges(self) -> Iterator[tuple[DLVertex, DLVertex]]:
        for edge in self.base.edges():
            if frozenset(edge) not in self._dropped:
                yield edge
        yield from self._added

    def neighbors(self, vertex) -> list[DLVertex]:
        v = DLVertex(*vertex)
        out = []
        if v in self.base:
            out = [w for w in self.base.neighbors(v) if frozenset((v, w)) not in self._dropped]
        for a, b in self._added:
            if v == a:
                out.append(b)
            elif v == b:
                out.append(a)
        return sorted(set(out))

    def degree(self, vertex) -> int:
        return len(self.neighbors(vertex))

    def is_edge(self, a, b) -> bool:
        pair = frozenset((DLVertex(*a), DLVertex(*b)))
        if pair in self._dropped:
            return False
        if any(frozenset(added) == pair for added in self._added):
            return True
        return self.base.is_edge(a, b)
