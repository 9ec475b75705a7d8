"""Named graphs, random cubic graphs and cubic completion of subcubic graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, GraphError

# Rejections tolerated per seed before the RNG is reseeded.
RETRY_CAP = 10_000


def petersen() -> Graph:
    """Outer 5-cycle on 0..4, spokes i -- i+5, inner pentagram i+5 -- (i+2)%5+5."""
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((i, i + 5))
        edges.append((i + 5, (i + 2) % 5 + 5))
    return Graph(10, edges, max_degree=3)


def complete(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def k4() -> Graph:
    return complete(4)


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def prism(n: int) -> Graph:
    """C_n x K2: outer cycle 0..n-1, inner cycle n..2n-1, rungs i -- i+n."""
    if n < 3:
        raise GraphError(f"prism needs n >= 3, got {n}")
    edges = []
    for i in range(n):
        j = (i + 1) % n
        edges += [(i, j), (i + n, j + n), (i, i + n)]
    return Graph(2 * n, edges)


def hypercube(d: int) -> Graph:
    n = 1 << d
    return Graph(n, ((u, u ^ (1 << b)) for u in range(n) for b in range(d) if u < u ^ (1 << b)))


def _pairing(n: int, rng: random.Random) -> list[tuple[int, int]] | None:
    stubs = [v for v in range(n) for _ in range(3)]
    rng.shuffle(stubs)
    seen = set()
    edges = []
    for k in range(0, len(stubs), 2):
        u, v = stubs[k], stubs[k + 1]
        if u == v:
            return None
        e = (u, v) if u < v else (v, u)
        if e in seen:
            return None
        seen.add(e)
        edges.append(e)
    return sorted(edges)


def random_cubic(n: int, seed: int) -> Graph:
    """Simple connected cubic graph from the pairing model, deterministic in ``seed``."""
    if n < 4 or n % 2:
        raise GraphError(f"random_cubic needs even n >= 4, got {n}")
    rng = random.Random(seed)
    while True:
        for _ in range(RETRY_CAP):
            edges = _pairing(n, rng)
            if edges is None:
                continue
            g = Graph(n, edges)
            if g.is_connected():
                return g
        rng = random.Random(rng.getrandbits(64))


def random_subcubic(n: int, seed: int, delete_fraction: float = 0.15) -> Graph:
    """Random cubic graph (or n odd: cubic on n+1 minus a vertex) with some edges deleted."""
    rng = random.Random(seed)
    base_n = n if n % 2 == 0 else n + 1
    base = random_cubic(max(base_n, 4), rng.getrandbits(32))
    edges = [(u, v) for u, v in base.edges() if u < n and v < n]
    edges = [e for e in edges if rng.random() >= delete_fraction]
    return Graph(n, edges, max_degree=3)


@dataclass(frozen=True)
class Embedding:
    """``guest`` sits inside ``host`` as the induced subgraph on ``image``."""

    guest: Graph
    host: Graph
    image: tuple[int, ...]


def cubic_complete(g: Graph) -> Embedding:
    """Embed a subcubic graph as an induced subgraph of a cubic graph.

    Each round doubles the current graph and joins the two copies of every
    deficient vertex, which lowers every positive deficiency by one.
    """
    if not g.is_subcubic():
        raise GraphError(f"cubic_complete needs max degree <= 3, got {g.max_degree()}")
    n = g.n
    edges = g.edges()
    deg = [g.degree(v) for v in range(n)]
    while any(d < 3 for d in deg):
        new_edges = list(edges)
        new_edges += [(u + n, v + n) for u, v in edges]
        new_edges += [(v, v + n) for v in range(n) if deg[v] < 3]
        deg = [d + 1 if d < 3 else d for d in deg] * 2
        edges = new_edges
        n *= 2
    host = Graph(n, edges, max_degree=3)
    return Embedding(g, host, tuple(range(g.n)))
