"""
Exact lattice polytopes: brute-force hull, face lattice, f-vector and
simple/smooth vertex classification, plus Bruhat interval polytopes.

The hull enumerates every hyperplane through affinely independent point
subsets. It is slow but shares no code with the combinatorial edge
description, which makes it usable as an oracle for it.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .bruhat_graph import edge_set
from .errors import SizeGuardError
from .intlinalg import maximal_minor_gcd, normals_batch, primitive, rank
from .permutations import BruhatInterval, Permutation, interval

__all__ = [
    "Facet", "LatticePolytope", "VertexClassification", "convex_hull",
    "classify_vertex", "fvector", "bip_vertices", "bip_polytope",
    "bip_edges_combinatorial", "moment_vertex", "polytope_to_json",
    "polytope_from_json", "load_polytope", "save_polytope",
    "MAX_HULL_AMBIENT", "MAX_HULL_POINTS",
]

MAX_HULL_AMBIENT = 6
MAX_HULL_POINTS = 200
_CHUNK = 50_000

Point = tuple[int, ...]


class Facet(NamedTuple):
    """Valid inequality <x, normal> <= offset, tight exactly on ``vertices``."""

    normal: Point
    offset: int
    vertices: frozenset[int]


@dataclass(frozen=True)
class VertexClassification:
    vertex: int
    edge_directions: tuple[Point, ...]
    is_simple: bool
    is_smooth: bool


def _affine_rank(points) -> int:
    points = list(points)
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


class LatticePolytope:
    """Vertices, facets and (lazily) the face lattice of a lattice polytope.

    Faces are identified by sorted vertex-index sets; ``faces`` lists the
    non-empty ones, graded by dimension, the polytope itself last.
    """

    def __init__(self, vertices: tuple[Point, ...], dim: int, facets: tuple[Facet, ...]):
        self.vertices = vertices
        self.dim = dim
        self.facets = facets

    def __repr__(self) -> str:
        return f"LatticePolytope(dim={self.dim}, nvertices={len(self.vertices)}, nfacets={len(self.facets)})"

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @cached_property
    def _lattice(self) -> tuple[tuple[frozenset[int], ...], tuple[int, ...]]:
        full = frozenset(range(len(self.vertices)))
        facet_sets = [f.vertices for f in self.facets]
        found = {full}
        queue = list(facet_sets)
        found.update(facet_sets)
        while queue:
            face = queue.pop()
            for g in facet_sets:
                meet = face & g
                if meet and meet not in found:
                    found.add(meet)
                    queue.append(meet)
        dims = {f: _affine_rank(self.vertices[i] for i in sorted(f)) for f in found}
        ordered = sorted(found, key=lambda f: (dims[f], sorted(f)))
        return tuple(ordered), tuple(dims[f] for f in ordered)

    @property
    def faces(self) -> tuple[frozenset[int], ...]:
        return self._lattice[0]

    @property
    def face_dims(self) -> tuple[int, ...]:
        return self._lattice[1]

    def face_id(self, face: frozenset[int]) -> int:
        return self._face_index[frozenset(face)]

    @cached_property
    def _face_index(self) -> dict[frozenset[int], int]:
        return {f: k for k, f in enumerate(self.faces)}

    @cached_property
    def fvector(self) -> tuple[int, ...]:
        counts = [0] * (self.dim + 1)
        for d in self.face_dims:
            counts[d] += 1
        return tuple(counts)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(tuple(sorted(f)) for f, d in zip(self.faces, self.face_dims) if d == 1)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in self.vertices]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(x)) for x in adj)

    def edge_point_pairs(self) -> set[frozenset[Point]]:
        return {frozenset((self.vertices[a], self.vertices[b])) for a, b in self.edges}

    def euler_ok(self) -> bool:
        """Boundary complex Euler relation sum_{i<dim} (-1)^i f_i = 1 - (-1)^dim."""
        f = self.fvector
        return sum((-1) ** i * f[i] for i in range(self.dim)) == 1 - (-1) ** self.dim

    def index_of(self, point) -> int:
        return self.vertices.index(tuple(point))


def _choose_coordinates(diffs: list[list[int]], d: int, n: int) -> list[int]:
    coords: list[int] = []
    for c in range(n):
        trial = coords + [c]
        if rank([[row[k] for k in trial] for row in diffs]) == len(trial):
            coords = trial
            if len(coords) == d:
                break
    return coords


def _facet_planes(Y: np.ndarray, d: int) -> np.ndarray:
    """Outward (normal, offset) rows of all facet hyperplanes of the points Y.

    Every d-subset is tried; its cofactor normal is kept when all points
    lie weakly on one side.
    """
    m = Y.shape[0]
    Yf = Y.astype(np.float64)
    found = []
    combos = itertools.combinations(range(m), d)
    while True:
        chunk = list(itertools.islice(combos, _CHUNK))
        if not chunk:
            break
        idx = np.array(chunk, dtype=np.intp).reshape(len(chunk), d)
        base = Y[idx[:, 0]]
        normals = normals_batch(Y[idx[:, 1:]] - base[:, None, :])
        keep = np.any(normals != 0, axis=1)
        normals, base = normals[keep], base[keep]
        offsets = np.einsum("ij,ij->i", normals, base)
        # float64 BLAS is exact here: all products and sums stay far below 2**53
        vals = Yf @ normals.T.astype(np.float64) - offsets
        below = np.all(vals <= 0, axis=0)
        above = np.all(vals >= 0, axis=0)
        sign = np.where(below, 1, -1)[below | above]
        normals = normals[below | above] * sign[:, None]
        offsets = offsets[below | above] * sign
        if len(normals):
            g = np.gcd.reduce(np.abs(normals), axis=1)
            found.append(np.column_stack([normals // g[:, None], offsets // g]))
    if not found:
        return np.zeros((0, d + 1), dtype=np.int64)
    return np.unique(np.concatenate(found), axis=0)


def convex_hull(points, max_points: int = MAX_HULL_POINTS, max_ambient: int = MAX_HULL_AMBIENT) -> LatticePolytope:
    """Exact hull of integer points by exhaustive hyperplane enumeration.

    Works in the affine hull of the points: coordinates are projected onto
    a subset on which the projection is injective, so lower-dimensional
    polytopes (e.g. those in the hyperplane sum x_i = const) are handled
    without a change of lattice. Facet normals are lifted back with zeros
    in the dropped coordinates.
    """
    pts: list[Point] = []
    seen = set()
    for p in points:
        p = tuple(int(x) for x in p)
        if p not in seen:
            seen.add(p)
            pts.append(p)
    if not pts:
        raise ValueError("convex hull of no points")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("points of mixed dimension")
    if len(pts) > max_points:
        raise SizeGuardError(f"hull limited to {max_points} points, got {len(pts)}")
    if n > max_ambient:
        raise SizeGuardError(f"hull limited to ambient dimension {max_ambient}, got {n}")

    p0 = pts[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    d = rank(diffs) if diffs else 0
    if d == 0:
        return LatticePolytope((p0,), 0, ())

    coords = _choose_coordinates(diffs, d, n)
    Y = np.array([[p[c] for c in coords] for p in pts], dtype=np.int64)
    planes = _facet_planes(Y, d)
    vals = Y @ planes[:, :d].T - planes[:, d]
    raw_facets = []
    for k in range(len(planes)):
        tight = frozenset(np.flatnonzero(vals[:, k] == 0).tolist())
        normal = [0] * n
        for c, x in zip(coords, planes[k, :d]):
            normal[c] = int(x)
        raw_facets.append((tuple(normal), int(planes[k, d]), tight))

    # a point is a vertex iff the facets through it cut out that point alone
    vertex_ids = []
    for i in range(len(pts)):
        through = [t for _, _, t in raw_facets if i in t]
        if through and frozenset.intersection(*through) == {i}:
            vertex_ids.append(i)
    remap = {old: new for new, old in enumerate(vertex_ids)}
    facets = tuple(sorted(
        (Facet(normal, offset, frozenset(remap[i] for i in tight if i in remap))
         for normal, offset, tight in raw_facets),
        key=lambda f: (sorted(f.vertices), f.normal),
    ))
    return LatticePolytope(tuple(pts[i] for i in vertex_ids), d, facets)


def fvector(P: LatticePolytope) -> tuple[int, ...]:
    """Face counts f_0, ..., f_dim; the last entry is the polytope itself."""
    return P.fvector


def classify_vertex(P: LatticePolytope, vi: int, face=None) -> VertexClassification:
    """Simple/smooth status of vertex ``vi`` in ``face`` (default: all of P).

    Smoothness is tested against the lattice of integer points in the
    linear span of the face, translated to the vertex: the primitive edge
    directions must be a basis of it, i.e. the gcd of their maximal minors
    is 1.
    """
    if not 0 <= vi < len(P.vertices):
        raise IndexError(f"vertex index {vi} out of range")
    if face is None:
        face_set = frozenset(range(len(P.vertices)))
    elif isinstance(face, int):
        face_set = P.faces[face]
    else:
        face_set = frozenset(face)
    if vi not in face_set:
        raise ValueError(f"vertex {vi} not in face {sorted(face_set)}")
    face_dim = P.face_dims[P.face_id(face_set)]
    v = P.vertices[vi]
    dirs = []
    for a, b in P.edges:
        if vi in (a, b) and a in face_set and b in face_set:
            other = P.vertices[b if a == vi else a]
            dirs.append(primitive(x - y for x, y in zip(other, v)))
    dirs.sort()
    simple = len(dirs) == face_dim
    smooth = simple and rank(dirs) == face_dim and maximal_minor_gcd(dirs) == 1
    return VertexClassification(vi, tuple(dirs), simple, smooth)


def moment_vertex(u: Permutation) -> Point:
    """(u^{-1}(1), ..., u^{-1}(n))."""
    return u.inverse().word


def bip_vertices(iv: BruhatInterval, via_mu: bool = True) -> list[Point]:
    """Points of an interval, one per member.

    ``via_mu`` gives the moment points of the members (the vertices of
    Q_{v^{-1}, w^{-1}}); otherwise the words themselves (Q_{v, w}).
    """
    if via_mu:
        return [moment_vertex(u) for u in iv.members]
    return [u.word for u in iv.members]


def bip_polytope(v: Permutation, w: Permutation, via_mu: bool = True, **guards) -> LatticePolytope:
    return convex_hull(bip_vertices(interval(v, w), via_mu=via_mu), **guards)


def bip_edges_combinatorial(w: Permutation) -> set[frozenset[Point]]:
    """Edges of Q_{id, w^{-1}} as moment-point pairs, from the reduced edge sets."""
    out = set()
    for u in interval(Permutation.identity(w.n), w):
        for p, q in edge_set(u, w).reduced:
            out.add(frozenset((moment_vertex(u), moment_vertex(u.apply_transposition(p, q)))))
    return out


def polytope_to_json(P: LatticePolytope) -> dict:
    return {
        "vertices": [list(v) for v in P.vertices],
        "facets": [{"normal": list(f.normal), "offset": f.offset} for f in P.facets],
        "fvector": list(P.fvector),
    }


def polytope_from_json(data: dict, **guards) -> LatticePolytope:
    """Rebuild from ``vertices``; optional ``facets``/``fvector`` are checked."""
    if "vertices" not in data:
        raise ValueError("polytope JSON needs a 'vertices' list")
    P = convex_hull(data["vertices"], **guards)
    if "fvector" in data and tuple(data["fvector"]) != P.fvector:
        raise ValueError(f"declared fvector {data['fvector']} != computed {list(P.fvector)}")
    if "facets" in data:
        declared = {(tuple(f["normal"]), f["offset"]) for f in data["facets"]}
        computed = {(f.normal, f.offset) for f in P.facets}
        if declared != computed:
            raise ValueError("declared facets do not match the computed hull")
    return P


def load_polytope(path, **guards) -> LatticePolytope:
    return polytope_from_json(json.loads(Path(path).read_text()), **guards)


def save_polytope(P: LatticePolytope, path) -> None:
    Path(path).write_text(json.dumps(polytope_to_json(P), indent=2) + "\n")
