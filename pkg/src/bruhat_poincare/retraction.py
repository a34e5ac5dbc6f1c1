"""
Retraction sequences on lattice polytopes.

A step removes one vertex ``v`` from the remaining complex (the faces of P
avoiding all earlier vertices). It is allowed when the faces of the
remaining complex that contain ``v`` all lie in a single face ``Q`` and
``v`` is simple in ``Q``; the step contributes t^(2 dim Q) to the
Poincare polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HypothesisViolated, NonGenericHeight, SizeGuardError
from .intlinalg import rank
from .polynomial import IntPolynomial
from .polytope import LatticePolytope, classify_vertex

__all__ = [
    "Orientation", "RetractionStep", "RetractionSequence", "orient_by_h",
    "default_height", "h_retraction", "search_retraction", "validate_sequence",
    "poincare_from_retraction", "smooth_step_certificate", "sequence_to_json",
    "MAX_SEARCH_STATES",
]

MAX_SEARCH_STATES = 10**6


def default_height(n: int) -> tuple[int, ...]:
    """Strictly decreasing powers of two, (2^(n-1), ..., 2, 1)."""
    return tuple(2 ** (n - i) for i in range(1, n + 1))


@dataclass(frozen=True)
class Orientation:
    heights: tuple[int, ...]
    arcs: tuple[tuple[int, int], ...]  # (low, high) vertex indices
    asc: tuple[int, ...]

    def ascending(self, vi: int) -> tuple[int, ...]:
        return tuple(sorted(b for a, b in self.arcs if a == vi))


def orient_by_h(P: LatticePolytope, a) -> Orientation:
    """Direct every edge toward the larger value of <a, x>."""
    a = tuple(int(x) for x in a)
    if len(a) != P.ambient_dim:
        raise ValueError(f"height vector has length {len(a)}, expected {P.ambient_dim}")
    heights = tuple(sum(x * y for x, y in zip(a, v)) for v in P.vertices)
    arcs = []
    asc = [0] * len(P.vertices)
    for i, j in P.edges:
        if heights[i] == heights[j]:
            raise NonGenericHeight(f"height {a} is constant on edge {P.vertices[i]} -- {P.vertices[j]}")
        lo, hi = (i, j) if heights[i] < heights[j] else (j, i)
        arcs.append((lo, hi))
        asc[lo] += 1
    return Orientation(heights, tuple(sorted(arcs)), tuple(asc))


@dataclass(frozen=True)
class RetractionStep:
    remaining: frozenset[int]  # face ids
    chosen_face: int
    chosen_vertex: int
    step_dim: int


@dataclass(frozen=True)
class RetractionSequence:
    steps: tuple[RetractionStep, ...]
    source: str  # "h-induced" or "search"

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.step_dim for s in self.steps)

    @property
    def vertex_order(self) -> tuple[int, ...]:
        return tuple(s.chosen_vertex for s in self.steps)


class _Complex:
    """Face bookkeeping shared by construction, search and validation."""

    def __init__(self, P: LatticePolytope):
        self.P = P
        self.containing = [[] for _ in P.vertices]
        for fid, face in enumerate(P.faces):
            for v in face:
                self.containing[v].append(fid)
        self.edge_count = {}  # (vertex, face id) -> edges of face at vertex
        for fid, face in enumerate(P.faces):
            for a, b in P.edges:
                if a in face and b in face:
                    for v in (a, b):
                        self.edge_count[v, fid] = self.edge_count.get((v, fid), 0) + 1

    def remaining(self, removed: frozenset[int]) -> frozenset[int]:
        return frozenset(fid for fid, face in enumerate(self.P.faces) if not face & removed)

    def free_face(self, v: int, removed: frozenset[int]) -> int | None:
        """The face Q if v may be removed next, else None."""
        P = self.P
        live = [fid for fid in self.containing[v] if not P.faces[fid] & removed]
        top = max(live, key=lambda fid: P.face_dims[fid])
        top_face = P.faces[top]
        if any(not P.faces[fid] <= top_face for fid in live):
            return None
        if self.edge_count.get((v, top), 0) != P.face_dims[top]:
            return None
        return top

    def step(self, v: int, fid: int, removed: frozenset[int]) -> RetractionStep:
        return RetractionStep(self.remaining(removed), fid, v, self.P.face_dims[fid])


def _ascent_face(P: LatticePolytope, vi: int, up: tuple[int, ...]) -> int:
    """Smallest face holding vi and its ascending neighbours."""
    want = frozenset((vi,) + up)
    best = None
    for fid, face in enumerate(P.faces):
        if want <= face and (best is None or len(face) < len(P.faces[best])):
            best = fid
    return best


def h_retraction(P: LatticePolytope, a=None) -> RetractionSequence:
    """Retraction sequence induced by the height <a, x>.

    Vertices are taken by increasing height (ties by coordinates). At each
    vertex the ascending edge directions must be independent and span a
    face whose edges at the vertex are exactly the ascending ones;
    otherwise ``HypothesisViolated`` is raised.
    """
    if a is None:
        a = default_height(P.ambient_dim)
    orient = orient_by_h(P, a)
    order = sorted(range(len(P.vertices)), key=lambda i: (orient.heights[i], P.vertices[i]))
    cx = _Complex(P)
    steps = []
    removed: set[int] = set()
    for vi in order:
        up = orient.ascending(vi)
        v = P.vertices[vi]
        dirs = [[x - y for x, y in zip(P.vertices[j], v)] for j in up]
        if rank(dirs) != len(up):
            raise HypothesisViolated(f"ascending edges at {v} are linearly dependent")
        fid = _ascent_face(P, vi, up)
        if P.face_dims[fid] != len(up):
            raise HypothesisViolated(f"ascending edges at {v} span no face of dimension {len(up)}")
        at_v = {b if a_ == vi else a_ for a_, b in P.edges if vi in (a_, b)} & P.faces[fid]
        if at_v != set(up):
            raise HypothesisViolated(f"face spanned at {v} has non-ascending edges")
        steps.append(cx.step(vi, fid, frozenset(removed)))
        removed.add(vi)
    rs = RetractionSequence(tuple(steps), "h-induced")
    validate_sequence(P, rs)
    return rs


def search_retraction(P: LatticePolytope, max_states: int = MAX_SEARCH_STATES) -> RetractionSequence | None:
    """Depth-first search over removal orders; None proves that no sequence exists.

    Candidates are tried in vertex-index order. Dead states (sets of
    removed vertices) are memoised; exceeding ``max_states`` raises.
    """
    cx = _Complex(P)
    nv = len(P.vertices)
    dead: set[frozenset[int]] = set()
    path: list[tuple[int, int]] = []

    def extend(removed: frozenset[int]) -> bool:
        if len(removed) == nv:
            return True
        if removed in dead:
            return False
        for v in range(nv):
            if v in removed:
                continue
            fid = cx.free_face(v, removed)
            if fid is None:
                continue
            path.append((v, fid))
            if extend(removed | {v}):
                return True
            path.pop()
        dead.add(removed)
        if len(dead) > max_states:
            raise SizeGuardError(f"retraction search exceeded {max_states} states")
        return False

    if not extend(frozenset()):
        return None
    steps = []
    removed: set[int] = set()
    for v, fid in path:
        steps.append(cx.step(v, fid, frozenset(removed)))
        removed.add(v)
    rs = RetractionSequence(tuple(steps), "search")
    validate_sequence(P, rs)
    return rs


def validate_sequence(P: LatticePolytope, rs: RetractionSequence) -> None:
    """Re-check every step against the definition; raises ValueError on failure."""
    cx = _Complex(P)
    if sorted(rs.vertex_order) != list(range(len(P.vertices))):
        raise ValueError("sequence does not remove every vertex exactly once")
    removed: frozenset[int] = frozenset()
    for k, step in enumerate(rs.steps):
        if step.remaining != cx.remaining(removed):
            raise ValueError(f"step {k}: remaining complex is wrong")
        if step.chosen_face not in step.remaining:
            raise ValueError(f"step {k}: chosen face already removed")
        if cx.free_face(step.chosen_vertex, removed) != step.chosen_face:
            raise ValueError(f"step {k}: vertex is not free in the chosen face")
        if step.step_dim != P.face_dims[step.chosen_face]:
            raise ValueError(f"step {k}: wrong step dimension")
        removed = removed | {step.chosen_vertex}
    last = rs.steps[-1]
    if P.faces[last.chosen_face] != {last.chosen_vertex}:
        raise ValueError("sequence does not end on a single vertex")


def poincare_from_retraction(rs: RetractionSequence) -> IntPolynomial:
    """Sum of t^(2 dim Q_i) over the steps."""
    return IntPolynomial.from_exponents(2 * d for d in rs.dims)


def smooth_step_certificate(P: LatticePolytope, rs: RetractionSequence) -> bool:
    """Every chosen vertex is smooth in its chosen face."""
    return all(
        classify_vertex(P, s.chosen_vertex, s.chosen_face).is_smooth for s in rs.steps
    )


def sequence_to_json(P: LatticePolytope, rs: RetractionSequence, a=None) -> dict:
    steps = []
    for s in rs.steps:
        v = P.vertices[s.chosen_vertex]
        entry = {
            "vertex": list(v),
            "face": sorted(list(P.vertices[i]) for i in P.faces[s.chosen_face]),
            "step_dim": s.step_dim,
        }
        if a is not None:
            entry["h"] = sum(x * y for x, y in zip(a, v))
        steps.append(entry)
    return {
        "source": rs.source,
        "steps": steps,
        "poincare": poincare_from_retraction(rs).coeffs_list(),
    }
