import itertools
from functools import lru_cache

import pytest
from hypothesis import strategies as st

from bruhat_poincare.permutations import Permutation


def perm(text):
    return Permutation.parse(text)


def perms_of(n):
    return st.permutations(list(range(1, n + 1))).map(lambda w: Permutation(tuple(w)))


@st.composite
def permutations(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    return draw(perms_of(n))


# --- independent oracles -------------------------------------------------

def inversions_by_bubble_sort(word):
    """Adjacent swaps needed to sort the word."""
    w, swaps = list(word), 0
    for _ in range(len(w)):
        for k in range(len(w) - 1):
            if w[k] > w[k + 1]:
                w[k], w[k + 1] = w[k + 1], w[k]
                swaps += 1
    return swaps


@lru_cache(maxsize=None)
def bruhat_up_sets(n):
    """Bruhat order as the transitive closure of u -> t u with larger length."""
    words = list(itertools.permutations(range(1, n + 1)))
    length = {w: inversions_by_bubble_sort(w) for w in words}
    covers = {w: set() for w in words}
    for w in words:
        for a, b in itertools.combinations(range(1, n + 1), 2):
            t = tuple(b if x == a else a if x == b else x for x in w)
            if length[t] > length[w]:
                covers[w].add(t)
    up = {}
    for w in sorted(words, key=lambda x: -length[x]):
        s = {w}
        for t in covers[w]:
            s |= up[t]
        up[w] = frozenset(s)
    return up


def bruhat_leq_oracle(v, w):
    return w.word in bruhat_up_sets(v.n)[v.word]


def reduction_oracle(edges, n):
    """Keep (a, b) unless some c != a, b has a ->* c ->* b (Floyd-Warshall closure)."""
    reach = [[False] * (n + 1) for _ in range(n + 1)]
    for a, b in edges:
        reach[a][b] = True
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            if reach[i][k]:
                for j in range(1, n + 1):
                    if reach[k][j]:
                        reach[i][j] = True
    return {
        (a, b) for a, b in edges
        if not any(reach[a][c] and reach[c][b] for c in range(1, n + 1) if c not in (a, b))
    }


@pytest.fixture
def pyramid_points():
    return [(1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, 0, -1), (0, 0, 1)]
