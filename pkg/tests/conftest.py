import itertools
import random

import pytest
from hypothesis import strategies as st

from packcolor.generators import random_cubic, random_subcubic
from packcolor.graph import Graph

INF = float("inf")


def floyd_warshall(g: Graph) -> list[list[float]]:
    """All-pairs distances without BFS, as an independent oracle."""
    n = g.n
    d = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for u, v in g.edges():
        d[u][v] = d[v][u] = 1
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == INF:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def naive_violations(g: Graph, seq, assignment) -> set[tuple[int, int]]:
    d = floyd_warshall(g)
    bad = set()
    for u, v in itertools.combinations(range(g.n), 2):
        c = assignment[u]
        if c == assignment[v] and d[u][v] <= seq[c - 1]:
            bad.add((u, v))
    return bad


def naive_colorable(g: Graph, seq) -> bool:
    """k^n enumeration over all assignments."""
    d = floyd_warshall(g)
    k = len(seq)
    close = [[(u, v) for u, v in itertools.combinations(range(g.n), 2) if d[u][v] <= seq[c]] for c in range(k)]
    for assignment in itertools.product(range(k), repeat=g.n):
        if all(assignment[u] != c or assignment[v] != c for c in range(k) for u, v in close[c]):
            return True
    return False


def brute_phi(g: Graph, side) -> tuple[int, int]:
    """Potential from scratch (side 0 = red) with a union-find over red edges."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges():
        if side[u] == 0 and side[v] == 0:
            parent[find(u)] = find(v)
    reds = [v for v in range(g.n) if side[v] == 0]
    return sum(1 for s in side if s != 0), -len({find(v) for v in reds})


@st.composite
def subcubic_graphs(draw, min_n=1, max_n=20):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    frac = draw(st.floats(0.0, 0.6))
    return random_subcubic(n, seed, frac)


@st.composite
def cubic_graphs(draw, min_n=4, max_n=40):
    n = draw(st.integers(min_n // 2, max_n // 2)) * 2
    seed = draw(st.integers(0, 2**32 - 1))
    return random_cubic(n, seed)


@pytest.fixture
def rng():
    return random.Random(12345)
