"""Acceptance criteria 1-10, each run against its time limit.

Every test prints one ``PASS``/``FAIL`` line (visible without ``-s``) and
then asserts, so a failing criterion is both reported and red.
"""

import random
import time
from collections import Counter

import pytest

from bruhat_poincare.bruhat_graph import edge_set, raw_edges, transitive_reduction
from bruhat_poincare.cli import poincare_table
from bruhat_poincare.invariants import edge_set_checks, interval_pairs, random_pairs
from bruhat_poincare.permutations import Permutation, all_permutations
from bruhat_poincare.poincare import (
    a_polynomial, betti_from_fvector, eulerian_polynomial, poincare_polynomial,
)
from bruhat_poincare.polynomial import IntPolynomial
from bruhat_poincare.polytope import bip_edges_combinatorial, bip_polytope, classify_vertex, convex_hull
from bruhat_poincare.retraction import (
    h_retraction, orient_by_h, poincare_from_retraction, search_retraction, smooth_step_certificate,
)

HVEC = (12, 2, -1, -2)

# (u, mu(u), h(mu(u)), a_w(u)) for w = 4231, in height order
TABLE_4231 = [
    ("1234", (1, 2, 3, 4), 5, 3), ("1243", (1, 2, 4, 3), 6, 2), ("1324", (1, 3, 2, 4), 8, 2),
    ("1423", (1, 3, 4, 2), 10, 2), ("1342", (1, 4, 2, 3), 12, 2), ("1432", (1, 4, 3, 2), 13, 1),
    ("2134", (2, 1, 3, 4), 15, 2), ("2143", (2, 1, 4, 3), 16, 1), ("3124", (2, 3, 1, 4), 21, 2),
    ("4123", (2, 3, 4, 1), 24, 2), ("3142", (2, 4, 1, 3), 25, 2), ("4132", (2, 4, 3, 1), 27, 1),
    ("2314", (3, 1, 2, 4), 28, 2), ("2413", (3, 1, 4, 2), 30, 2), ("3214", (3, 2, 1, 4), 31, 1),
    ("4213", (3, 2, 4, 1), 34, 1), ("2341", (4, 1, 2, 3), 42, 2), ("2431", (4, 1, 3, 2), 43, 1),
    ("3241", (4, 2, 1, 3), 45, 1), ("4231", (4, 2, 3, 1), 47, 0),
]
TABLE_3412 = [
    ("1234", (1, 2, 3, 4), 5, 3), ("1243", (1, 2, 4, 3), 6, 2), ("1324", (1, 3, 2, 4), 8, 2),
    ("1423", (1, 3, 4, 2), 10, 2), ("1342", (1, 4, 2, 3), 12, 2), ("1432", (1, 4, 3, 2), 13, 1),
    ("2134", (2, 1, 3, 4), 15, 2), ("2143", (2, 1, 4, 3), 16, 1), ("3124", (2, 3, 1, 4), 21, 2),
    ("3142", (2, 4, 1, 3), 25, 1), ("2314", (3, 1, 2, 4), 28, 2), ("2413", (3, 1, 4, 2), 30, 1),
    ("3214", (3, 2, 1, 4), 31, 1), ("3412", (3, 4, 1, 2), 39, 0),
]

PYRAMID = [(1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, 0, -1), (0, 0, 1)]


@pytest.fixture
def criterion(capsys):
    """Run ``check`` under a wall-clock limit, print the verdict, then assert."""

    def run(number: int, title: str, limit: float | None, check):
        start = time.perf_counter()
        error = None
        try:
            detail = check()
        except AssertionError as exc:
            error, detail = exc, str(exc) or "assertion failed"
        elapsed = time.perf_counter() - start
        slow = limit is not None and elapsed >= limit
        ok = error is None and not slow
        budget = f" / {limit:g} s" if limit is not None else ""
        note = f"  [{detail}]" if detail else ""
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title} ({elapsed:.2f} s{budget}){note}")
        if error is not None:
            raise error
        assert not slow, f"criterion {number} took {elapsed:.2f} s, limit {limit} s"

    return run


def perm(s):
    return Permutation.parse(s)


def test_criterion_01_poincare_polynomials(criterion):
    def check():
        p1 = poincare_polynomial(perm("4231"))
        p2 = poincare_polynomial(perm("3412"))
        assert p1 == IntPolynomial((1, 0, 7, 0, 11, 0, 1)), p1
        assert p2 == IntPolynomial((1, 0, 5, 0, 7, 0, 1)), p2
        return f"{p1}; {p2}"

    criterion(1, "P(Y_4231), P(Y_3412)", 1.0, check)


def test_criterion_02_tables(criterion):
    def check():
        for word, expected in (("4231", TABLE_4231), ("3412", TABLE_3412)):
            rows = poincare_table(perm(word), HVEC)
            got = sorted((r["u"], tuple(r["mu"]), r["h"], r["a"]) for r in rows)
            assert got == sorted(expected), word
        by_u = {r["u"]: r for r in poincare_table(perm("4231"), HVEC)}
        assert by_u["4132"]["h"] == 27 and by_u["1234"]["a"] == 3
        assert {r["u"]: r for r in poincare_table(perm("3412"), HVEC)}["2143"]["a"] == 1
        return "20 + 14 rows"

    criterion(2, "per-vertex tables for 4231 and 3412", 1.0, check)


def test_criterion_03_worked_example(criterion):
    def check():
        raw = raw_edges(perm("2143"), perm("3412"))
        assert raw == {(1, 4), (2, 3), (2, 1), (4, 3)}, raw
        red = transitive_reduction(raw, 4)
        assert red == {(1, 4), (2, 1), (4, 3)}, red
        assert edge_set(perm("2143"), perm("3412")).reduced == red
        return f"raw={sorted(raw)} reduced={sorted(red)}"

    criterion(3, "edge sets at (2143, 3412)", None, check)


def test_criterion_04_pyramid(criterion):
    def check():
        P = convex_hull(PYRAMID)
        a = (-2, -1, 3)
        asc = sorted(orient_by_h(P, a).asc, reverse=True)
        assert asc == [3, 2, 2, 1, 0], asc
        rs = h_retraction(P, a)
        poly = poincare_from_retraction(rs)
        assert sorted(rs.dims, reverse=True) == asc
        assert poly == IntPolynomial((1, 0, 1, 0, 2, 0, 1)), poly
        return f"asc={asc} P={poly}"

    criterion(4, "pyramid pipeline", 1.0, check)


def test_criterion_05_counterexample(criterion):
    def check():
        P = bip_polytope(perm("1324"), perm("4231"))
        assert len(P.vertices) == 16
        simple = sum(classify_vertex(P, i).is_simple for i in range(len(P.vertices)))
        assert simple == 8, simple
        assert search_retraction(P) is None
        return f"{simple}/16 simple, no sequence"

    criterion(5, "Q_{1324,4231} has no retraction", 60.0, check)


def test_criterion_06_eulerian(criterion):
    def check():
        for n in (3, 4, 5):
            A = a_polynomial(Permutation.longest(n))
            assert A == eulerian_polynomial(n), (n, A)
        return "n = 3, 4, 5"

    criterion(6, "A_{w0} equals the Eulerian polynomial", 10.0, check)


def test_criterion_07_skeleton_oracle(criterion):
    def check():
        ws = all_permutations(4) + random.Random(2024).sample(all_permutations(5), 10)
        bad = []
        for w in ws:
            P = bip_polytope(Permutation.identity(w.n), w)
            if P.edge_point_pairs() != bip_edges_combinatorial(w):
                bad.append(str(w))
        assert not bad, bad
        return f"{len(ws)} polytopes, S_5 sample {[str(w) for w in ws[24:]]}"

    criterion(7, "combinatorial 1-skeleton equals hull 1-skeleton", 300.0, check)


def test_criterion_08_height_route(criterion):
    def check():
        e = Permutation.identity(4)
        for w in all_permutations(4):
            P = bip_polytope(e, w)
            target = a_polynomial(w).stretch(2)
            for a in (None, HVEC):
                rs = h_retraction(P, a)
                assert poincare_from_retraction(rs) == target, (w, a)
                assert smooth_step_certificate(P, rs), (w, a)
        return "24 w x 2 height vectors"

    criterion(8, "h-retraction gives A_w(t^2) with smooth steps", 120.0, check)


def test_criterion_09_smooth_betti(criterion):
    def check():
        e = Permutation.identity(4)
        smooth = Counter()
        for w in all_permutations(4):
            P = bip_polytope(e, w)
            if all(classify_vertex(P, i).is_smooth for i in range(len(P.vertices))):
                smooth["smooth"] += 1
                assert betti_from_fvector(P.fvector) == poincare_polynomial(w), w
        assert smooth["smooth"] > 0
        return f"{smooth['smooth']} smooth polytopes"

    criterion(9, "Betti numbers of smooth Q_{id,w^-1}", None, check)


def test_criterion_10_edge_set_properties(criterion):
    def check():
        pairs = interval_pairs(all_permutations(4)) + random_pairs(200, ns=(5, 6), seed=0)
        results = edge_set_checks(pairs)
        failed = [r.to_json() for r in results if not r.passed]
        assert not failed, failed
        return f"{len(pairs)} pairs, {len(results)} properties"

    criterion(10, "edge-set invariants", 300.0, check)
