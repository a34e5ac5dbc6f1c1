"""
Edge data of Bruhat interval polytopes at a vertex.

For u <= w the candidate set collects the value pairs (u(i), u(j)), i < j,
whose transposition moves u by one in length while staying below w. Its
transitive reduction indexes the polytope edges at the vertex of u; the
pairs with u(i) < u(j) are the edges going up under any strictly
decreasing height vector.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalConsistencyError
from .permutations import Permutation, bruhat_leq

__all__ = [
    "BruhatEdgeSet", "AscentGraph", "raw_edges", "transitive_reduction",
    "edge_set", "ascent_count", "ascent_graph", "level_function",
    "edge_direction",
]

Pair = tuple[int, int]


def raw_edges(u: Permutation, w: Permutation) -> frozenset[Pair]:
    """Candidate pairs at u inside [id, w], before reduction."""
    if not bruhat_leq(u, w):
        raise ValueError(f"{u} is not below {w}")
    lu = u.length()
    out = set()
    for i in range(1, u.n + 1):
        for j in range(i + 1, u.n + 1):
            p, q = u(i), u(j)
            v = u.apply_transposition(p, q)
            if abs(v.length() - lu) == 1 and bruhat_leq(v, w):
                out.add((p, q))
    return frozenset(out)


def _successors(edges) -> dict[int, set[int]]:
    succ = defaultdict(set)
    for a, b in edges:
        succ[a].add(b)
    return succ


def _reaches(succ: dict[int, set[int]], src: int, dst: int, skip: Pair) -> bool:
    stack, seen = [src], {src}
    while stack:
        a = stack.pop()
        for b in succ.get(a, ()):
            if (a, b) == skip or b in seen:
                continue
            if b == dst:
                return True
            seen.add(b)
            stack.append(b)
    return False


def _check_acyclic(edges, n: int) -> None:
    indeg = {k: 0 for k in range(1, n + 1)}
    succ = _successors(edges)
    for a, b in edges:
        if a not in indeg or b not in indeg:
            raise ValueError(f"edge {(a, b)} not on nodes 1..{n}")
        indeg[b] += 1
    ready = [k for k, d in indeg.items() if d == 0]
    seen = 0
    while ready:
        a = ready.pop()
        seen += 1
        for b in succ.get(a, ()):
            indeg[b] -= 1
            if indeg[b] == 0:
                ready.append(b)
    if seen != n:
        raise ValueError("digraph has a directed cycle; transitive reduction is not unique")


def transitive_reduction(edges, n: int) -> frozenset[Pair]:
    """Drop every edge (a, b) for which b is reachable from a by another route."""
    edges = frozenset(edges)
    _check_acyclic(edges, n)
    succ = _successors(edges)
    return frozenset(e for e in edges if not _reaches(succ, e[0], e[1], skip=e))


@dataclass(frozen=True)
class BruhatEdgeSet:
    u: Permutation
    w: Permutation
    raw: frozenset[Pair]
    reduced: frozenset[Pair]
    plus: frozenset[Pair]
    minus: frozenset[Pair]

    @property
    def ascent_count(self) -> int:
        return len(self.plus)

    @property
    def decomposable(self) -> frozenset[Pair]:
        return self.raw - self.reduced


def edge_set(u: Permutation, w: Permutation) -> BruhatEdgeSet:
    raw = raw_edges(u, w)
    reduced = transitive_reduction(raw, u.n)
    plus = frozenset((p, q) for p, q in reduced if p < q)
    return BruhatEdgeSet(u, w, raw, reduced, plus, reduced - plus)


def ascent_count(u: Permutation, w: Permutation) -> int:
    return len(edge_set(u, w).plus)


def edge_direction(p: int, q: int, n: int) -> tuple[int, ...]:
    """e_p - e_q, the primitive direction of the edge labelled (p, q)."""
    vec = [0] * n
    vec[p - 1] += 1
    vec[q - 1] -= 1
    return tuple(vec)


@dataclass(frozen=True)
class AscentGraph:
    """Positions 1..n joined when their values form an ascending pair.

    ``components`` lists the maximal ascents as increasing position tuples.
    """

    u: Permutation
    edges: frozenset[Pair]
    components: tuple[tuple[int, ...], ...]

    def component_of(self) -> dict[int, int]:
        return {i: k for k, comp in enumerate(self.components) for i in comp}


def ascent_graph(es: BruhatEdgeSet) -> AscentGraph:
    u = es.u
    edges = frozenset((u.position(p), u.position(q)) for p, q in es.plus)
    out_deg: dict[int, int] = defaultdict(int)
    in_deg: dict[int, int] = defaultdict(int)
    for i, j in edges:
        out_deg[i] += 1
        in_deg[j] += 1
    if any(d > 1 for d in out_deg.values()) or any(d > 1 for d in in_deg.values()):
        raise InternalConsistencyError(f"ascent graph of ({u},{es.w}) branches: {sorted(edges)}")

    nxt = {i: j for i, j in edges}
    starts = [i for i in range(1, u.n + 1) if in_deg[i] == 0]
    components = []
    seen = set()
    for s in starts:
        path = [s]
        while path[-1] in nxt:
            path.append(nxt[path[-1]])
        components.append(tuple(path))
        seen.update(path)
    if len(seen) != u.n:
        raise InternalConsistencyError(f"ascent graph of ({u},{es.w}) has a cycle")
    for comp in components:
        if list(comp) != sorted(comp):
            raise InternalConsistencyError(f"component {comp} is not an increasing path")
    components.sort(key=lambda c: c[0])
    return AscentGraph(u, edges, tuple(components))


def _component_order(graph: AscentGraph) -> dict[int, set[int]]:
    # k -> {k'}: component k sits above component k'
    u = graph.u
    comp = graph.component_of()
    above = defaultdict(set)
    for i in range(1, u.n + 1):
        for j in range(i + 1, u.n + 1):
            if u(i) > u(j) and comp[i] != comp[j]:
                above[comp[i]].add(comp[j])
    return above


def level_function(es: BruhatEdgeSet) -> dict[int, Fraction]:
    """Values p -> f(p), constant along ascending pairs and dropping along descending ones.

    Maximal ascents are ordered by "contains an earlier, larger entry",
    linearised by a topological sort (ties go to the component holding the
    smallest position) and numbered downward from the number of components.
    """
    graph = ascent_graph(es)
    above = _component_order(graph)
    ncomp = len(graph.components)
    indeg = [0] * ncomp
    for k, lows in above.items():
        for k2 in lows:
            indeg[k2] += 1
    # components are sorted by first position, so index order is the tie-break
    ready = sorted(k for k in range(ncomp) if indeg[k] == 0)
    order = []
    while ready:
        k = ready.pop(0)
        order.append(k)
        for k2 in sorted(above.get(k, ())):
            indeg[k2] -= 1
            if indeg[k2] == 0:
                ready.append(k2)
        ready.sort()
    if len(order) != ncomp:
        raise InternalConsistencyError(f"maximal ascents of ({es.u},{es.w}) are not ordered acyclically")

    level = {k: Fraction(ncomp - rank) for rank, k in enumerate(order)}
    u = es.u
    f = {}
    for k, comp in enumerate(graph.components):
        for i in comp:
            f[u(i)] = level[k]
    return dict(sorted(f.items()))
