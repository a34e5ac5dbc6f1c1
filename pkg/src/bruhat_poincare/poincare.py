"""
A-polynomials of Bruhat intervals and the Poincare polynomials they give.

``a_polynomial(w)`` sums t^(number of ascending edges) over the vertices of
Q_{id, w^{-1}} using the reduced edge sets only; ``richardson_polynomial``
reads ascents off the hull skeleton instead, so the two meet only in tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .bruhat_graph import edge_direction, edge_set
from .errors import HypothesisViolated, SizeGuardError
from .intlinalg import rank
from .permutations import MAX_INTERVAL_N, Permutation, bruhat_leq, interval
from .polynomial import IntPolynomial
from .polytope import bip_polytope, classify_vertex, moment_vertex
from .retraction import default_height, h_retraction, orient_by_h

__all__ = [
    "IntPolynomial", "a_polynomial", "poincare_polynomial", "richardson_polynomial",
    "RichardsonPolynomial", "eulerian_polynomial", "betti_from_fvector",
    "SmoothnessReport", "smoothness_report",
]


def a_polynomial(w: Permutation, max_n: int = MAX_INTERVAL_N) -> IntPolynomial:
    """sum over id <= u <= w of t^(a_w(u))."""
    iv = interval(Permutation.identity(w.n), w, max_n=max_n)
    return IntPolynomial.from_exponents(len(edge_set(u, w).plus) for u in iv)


def poincare_polynomial(w: Permutation, max_n: int = MAX_INTERVAL_N) -> IntPolynomial:
    """Poincare polynomial of the generic torus orbit closure in X_w: A_w(t^2)."""
    return a_polynomial(w, max_n=max_n).stretch(2)


@dataclass(frozen=True)
class RichardsonPolynomial:
    v: Permutation
    w: Permutation
    polynomial: IntPolynomial
    ascents: dict = field(repr=False)  # u -> out-degree of its moment point
    h_retraction_exists: bool

    @property
    def poincare(self) -> IntPolynomial | None:
        """A_{v,w}(t^2) when the height induces a retraction, else None."""
        return self.polynomial.stretch(2) if self.h_retraction_exists else None


def richardson_polynomial(v: Permutation, w: Permutation, a=None, **guards) -> RichardsonPolynomial:
    """Ascent generating function of Q_{v^{-1}, w^{-1}} from its hull skeleton."""
    if not bruhat_leq(v, w):
        raise ValueError(f"{v} is not below {w}")
    iv = interval(v, w)
    P = bip_polytope(v, w, **guards)
    if a is None:
        a = default_height(w.n)
    orient = orient_by_h(P, a)
    ascents = {u: orient.asc[P.index_of(moment_vertex(u))] for u in iv}
    try:
        h_retraction(P, a)
        ok = True
    except HypothesisViolated:
        ok = False
    return RichardsonPolynomial(v, w, IntPolynomial.from_exponents(ascents.values()), ascents, ok)


def eulerian_polynomial(n: int, max_n: int = MAX_INTERVAL_N) -> IntPolynomial:
    """sum over S_n of t^(descents), by direct enumeration."""
    if n > max_n:
        raise SizeGuardError(f"Eulerian enumeration limited to n <= {max_n}")
    if n < 1:
        raise ValueError("n must be positive")
    counts = [0] * n
    for p in itertools.permutations(range(n)):
        counts[sum(1 for x, y in zip(p, p[1:]) if x > y)] += 1
    return IntPolynomial(tuple(counts))


def betti_from_fvector(f, n: int | None = None) -> IntPolynomial:
    """Even Betti numbers of a smooth projective toric variety from its f-vector.

    ``f`` runs over f_0, ..., f_n with f_n = 1. Only meaningful for smooth
    polytopes; a negative result means the input was not one.
    """
    f = [int(x) for x in f]
    if n is None:
        n = len(f) - 1
    if len(f) != n + 1 or f[n] != 1:
        raise ValueError(f"expected f_0..f_{n} ending in f_{n} = 1, got {f}")
    betti = [sum((-1) ** (i - k) * comb(i, k) * f[i] for i in range(k, n + 1)) for k in range(n + 1)]
    if any(b < 0 for b in betti):
        raise ValueError(f"negative Betti number {betti}: polytope not smooth or f-vector malformed")
    return IntPolynomial(tuple(betti)).stretch(2)


@dataclass(frozen=True)
class SmoothnessReport:
    w: Permutation
    vertex_flags: dict  # u -> (is_simple, is_smooth)
    all_smooth: bool
    top_descent_rank: int
    top_descent_count: int
    descent_ranks: dict  # u -> (rank, count) of descending directions at u
    palindromic: bool | None  # only decided when all vertices are smooth

    @property
    def top_independent(self) -> bool:
        return self.top_descent_rank == self.top_descent_count

    @property
    def all_descents_independent(self) -> bool:
        return all(r == c for r, c in self.descent_ranks.values())


def smoothness_report(w: Permutation, **guards) -> SmoothnessReport:
    """Vertex smoothness of Q_{id, w^{-1}} with descending-edge rank data."""
    e = Permutation.identity(w.n)
    iv = interval(e, w)
    P = bip_polytope(e, w, **guards)
    flags = {}
    for u in iv:
        c = classify_vertex(P, P.index_of(moment_vertex(u)))
        flags[u] = (c.is_simple, c.is_smooth)
    ranks = {}
    for u in iv:
        minus = edge_set(u, w).minus
        ranks[u] = (rank([edge_direction(p, q, w.n) for p, q in minus]), len(minus))
    all_smooth = all(s for _, s in flags.values())
    pal = a_polynomial(w).is_palindromic() if all_smooth else None
    top_rank, top_count = ranks[w]
    return SmoothnessReport(w, flags, all_smooth, top_rank, top_count, ranks, pal)
