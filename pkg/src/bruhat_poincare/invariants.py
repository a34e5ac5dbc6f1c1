"""
Cross-checks between the combinatorial formulas and the polytope oracle.

Each check returns a ``CheckResult`` carrying the number of instances
examined and up to a few counterexamples, so callers can report rather
than stop at the first failure.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .bruhat_graph import ascent_graph, edge_direction, edge_set, level_function, raw_edges, transitive_reduction
from .intlinalg import rank
from .permutations import Permutation, all_permutations, interval
from .poincare import a_polynomial, betti_from_fvector, poincare_polynomial
from .polytope import bip_edges_combinatorial, bip_polytope, classify_vertex, moment_vertex
from .retraction import (
    default_height, h_retraction, orient_by_h, poincare_from_retraction,
    search_retraction, smooth_step_certificate,
)

_MAX_EXAMPLES = 5


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    failures: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, example=None) -> None:
        self.checked += 1
        if not ok:
            self.failures += 1
            if len(self.counterexamples) < _MAX_EXAMPLES:
                self.counterexamples.append(example)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "counterexamples": [str(x) for x in self.counterexamples],
        }


def interval_pairs(ws) -> list[tuple[Permutation, Permutation]]:
    return [(u, w) for w in ws for u in interval(Permutation.identity(w.n), w)]


def random_pairs(count: int, ns=(5, 6), seed: int = 0) -> list[tuple[Permutation, Permutation]]:
    """Reproducible (u, w) pairs with u <= w: w uniform in S_n, u uniform in [id, w]."""
    rng = random.Random(seed)
    pools = {n: all_permutations(n) for n in ns}
    out = []
    for _ in range(count):
        n = rng.choice(ns)
        w = rng.choice(pools[n])
        u = rng.choice(interval(Permutation.identity(n), w).members)
        out.append((u, w))
    return out


def _no_intermediate(u: Permutation, pairs, ascending: bool) -> bool:
    for p, q in pairs:
        i, k = sorted((u.position(p), u.position(q)))
        lo, hi = (u(i), u(k)) if ascending else (u(k), u(i))
        if any(lo < u(j) < hi for j in range(i + 1, k)):
            return False
    return True


def _crossing_free(u: Permutation, components) -> bool:
    def cross(I, J):
        return any(i < j and u(i) > u(j) for i in I for j in J)

    return all(
        not (cross(I, J) and cross(J, I))
        for a, I in enumerate(components) for J in components[a + 1:]
    )


def edge_set_checks(pairs) -> list[CheckResult]:
    """Structural properties of the edge sets at every (u, w) pair."""
    names = [
        "raw digraph acyclic",
        "ascending pairs: in/out-degree <= 1",
        "no intermediate value inside an indecomposable pair",
        "maximal ascents pairwise non-crossing",
        "level function separates descending pairs",
        "ascending directions linearly independent",
    ]
    res = {k: CheckResult(k) for k in names}
    for u, w in pairs:
        tag = (str(u), str(w))
        try:
            transitive_reduction(raw_edges(u, w), u.n)
            res[names[0]].record(True)
        except ValueError:
            res[names[0]].record(False, tag)
            continue
        es = edge_set(u, w)
        outs = Counter(p for p, _ in es.plus)
        ins = Counter(q for _, q in es.plus)
        res[names[1]].record(max(outs.values(), default=0) <= 1 and max(ins.values(), default=0) <= 1, tag)
        res[names[2]].record(
            _no_intermediate(u, es.plus, True) and _no_intermediate(u, es.minus, False), tag
        )
        try:
            graph = ascent_graph(es)
            res[names[3]].record(_crossing_free(u, graph.components), tag)
            f = level_function(es)
            ok = all(f[p] == f[q] for p, q in es.plus) and all(f[p] > f[q] for p, q in es.minus)
            res[names[4]].record(ok, tag)
        except Exception as exc:  # noqa: BLE001 - any failure is a counterexample here
            res[names[3]].record(False, (tag, repr(exc)))
            res[names[4]].record(False, (tag, repr(exc)))
        dirs = [edge_direction(p, q, u.n) for p, q in es.plus]
        res[names[5]].record(rank(dirs) == len(dirs), tag)
    return list(res.values())


def polytope_checks(ws, max_n: int = 6) -> list[CheckResult]:
    """Per-w comparisons of Q_{id, w^{-1}} against the combinatorial formulas."""
    names = [
        "hull skeleton equals combinatorial edges",
        "every interval point is a vertex",
        "Euler relation on the face lattice",
        "hull ascents equal a_w(u)",
        "h-retraction exists, Poincare polynomial equals A_w(t^2)",
        "h-retraction vertices smooth in their faces",
        "searched retraction gives the same Poincare polynomial",
        "smooth polytope: Betti numbers from f-vector equal A_w(t^2)",
        "simple vertices are smooth",
        "vertex of the identity is smooth",
        "A_w(1) equals interval size",
        "degree of A_w equals dimension",
        "a_w(u) = 0 only at u = w",
    ]
    res = {k: CheckResult(k) for k in names}
    for w in ws:
        e = Permutation.identity(w.n)
        iv = interval(e, w)
        P = bip_polytope(e, w, max_ambient=max_n)
        tag = str(w)
        res[names[0]].record(P.edge_point_pairs() == bip_edges_combinatorial(w), tag)
        res[names[1]].record(len(P.vertices) == len(iv), tag)
        res[names[2]].record(P.euler_ok(), tag)

        a = default_height(w.n)
        orient = orient_by_h(P, a)
        aw = {u: len(edge_set(u, w).plus) for u in iv}
        res[names[3]].record(all(orient.asc[P.index_of(moment_vertex(u))] == aw[u] for u in iv), tag)

        target = poincare_polynomial(w)
        try:
            rs = h_retraction(P, a)
            res[names[4]].record(poincare_from_retraction(rs) == target, tag)
            res[names[5]].record(smooth_step_certificate(P, rs), tag)
        except Exception as exc:  # noqa: BLE001
            res[names[4]].record(False, (tag, repr(exc)))
            res[names[5]].record(False, (tag, repr(exc)))

        found = search_retraction(P)
        res[names[6]].record(found is not None and poincare_from_retraction(found) == target, tag)

        flags = [classify_vertex(P, i) for i in range(len(P.vertices))]
        if all(c.is_smooth for c in flags):
            res[names[7]].record(betti_from_fvector(P.fvector) == target, tag)
        res[names[8]].record(all(c.is_simple == c.is_smooth for c in flags), tag)
        res[names[9]].record(flags[P.index_of(moment_vertex(e))].is_smooth, tag)

        A = a_polynomial(w)
        res[names[10]].record(A(1) == len(iv), tag)
        res[names[11]].record(A.degree == P.dim, tag)
        res[names[12]].record([u for u in iv if aw[u] == 0] == [w], tag)
    return list(res.values())


def simple_smooth_all_intervals(n: int = 4) -> CheckResult:
    """Simple iff smooth at every vertex of every Q_{v,w} in S_n."""
    res = CheckResult("simple iff smooth on all Bruhat interval polytopes")
    perms = all_permutations(n)
    for w in perms:
        for v in interval(Permutation.identity(n), w):
            P = bip_polytope(v, w, via_mu=False)
            ok = all(
                c.is_simple == c.is_smooth
                for c in (classify_vertex(P, i) for i in range(len(P.vertices)))
            )
            res.record(ok, (str(v), str(w)))
    return res
