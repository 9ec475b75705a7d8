"""Immutable simple graphs, truncated distance queries, subdivision and text formats."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs or unparseable graph text."""


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Adjacency lists are sorted tuples. Instances are never mutated after
    construction, so one graph can be shared by any number of solvers.
    """

    __slots__ = ("n", "adj", "edge_count")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), max_degree: int | None = None):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise GraphError(f"parallel edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
            m += 1
        if max_degree is not None:
            for u, s in enumerate(nbrs):
                if len(s) > max_degree:
                    raise GraphError(f"vertex {u} has degree {len(s)} > {max_degree}")
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self.edge_count = m

    @classmethod
    def subcubic(cls, n: int, edges: Iterable[tuple[int, int]] = ()) -> "Graph":
        return cls(n, edges, max_degree=3)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def is_subcubic(self) -> bool:
        return self.max_degree() <= 3

    def is_cubic(self) -> bool:
        return all(len(a) == 3 for a in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def check_vertex(self, u: int) -> None:
        if not (isinstance(u, int) and 0 <= u < self.n):
            raise GraphError(f"vertex {u!r} out of range for n={self.n}")

    def ball(self, u: int, radius: int) -> dict[int, int]:
        """Truncated BFS: map every vertex within ``radius`` of ``u`` to its distance."""
        dist = {u: 0}
        frontier = [u]
        adj = self.adj
        for d in range(1, radius + 1):
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if y not in dist:
                        dist[y] = d
                        nxt.append(y)
            if not nxt:
                break
            frontier = nxt
        return dist

    def distances_from(self, u: int) -> list[int]:
        """Full BFS distances from ``u``; -1 marks unreachable vertices."""
        dist = [-1] * self.n
        dist[u] = 0
        q = deque([u])
        while q:
            x = q.popleft()
            for y in self.adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    q.append(y)
        return dist

    def distance_matrix(self) -> list[list[int]]:
        return [self.distances_from(u) for u in range(self.n)]

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``u`` renamed to ``perm[u]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


class DistanceQuery:
    """Reusable truncated-BFS context for ``distance_leq`` queries.

    A visit stamp per vertex replaces clearing a visited array between
    queries. Not thread-safe: one context per caller.
    """

    def __init__(self, g: Graph):
        self.g = g
        self._stamp = [0] * g.n
        self._epoch = 0

    def leq(self, u: int, v: int, d: int) -> bool:
        g = self.g
        g.check_vertex(u)
        g.check_vertex(v)
        if d < 0:
            raise GraphError(f"negative distance bound {d}")
        if u == v:
            return True
        self._epoch += 1
        epoch = self._epoch
        stamp = self._stamp
        adj = g.adj
        stamp[u] = epoch
        frontier = [u]
        for _ in range(d):
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if stamp[y] != epoch:
                        if y == v:
                            return True
                        stamp[y] = epoch
                        nxt.append(y)
            if not nxt:
                return False
            frontier = nxt
        return False


def distance_leq(g: Graph, u: int, v: int, d: int) -> bool:
    """True iff some path of length at most ``d`` joins ``u`` and ``v``."""
    return DistanceQuery(g).leq(u, v, d)


def neighborhood(g: Graph, u: int) -> list[int]:
    g.check_vertex(u)
    return list(g.adj[u])


# -- subdivision ---------------------------------------------------------------


@dataclass(frozen=True)
class SubdividedGraph:
    """1-subdivision of ``base``.

    ``origin[x]`` is ``("original", v)`` for the copy of base vertex ``v``
    (same id) or ``("subdivision", u, v)`` for the midpoint of base edge uv.
    """

    base: Graph
    graph: Graph
    origin: tuple[tuple, ...]

    def is_original(self, x: int) -> bool:
        return self.origin[x][0] == "original"


def subdivide(g: Graph) -> SubdividedGraph:
    n = g.n
    edges = []
    origin: list[tuple] = [("original", v) for v in range(n)]
    for i, (u, v) in enumerate(g.edges()):
        mid = n + i
        origin.append(("subdivision", u, v))
        edges.append((u, mid))
        edges.append((mid, v))
    return SubdividedGraph(g, Graph(n + g.edge_count, edges), tuple(origin))


# -- graph6 --------------------------------------------------------------------

GRAPH6_HEADER = ">>graph6<<"


def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise GraphError("graph6: non-ASCII input") from exc
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise GraphError("graph6: empty input")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise GraphError(f"graph6: byte {ch!r} outside printable range 63..126")
    if s[0] == "~":
        raise GraphError("graph6: only n < 63 is supported (single-byte header)")
    n = ord(s[0]) - 63
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = s[1:]
    if len(body) != nbytes:
        raise GraphError(f"graph6: expected {nbytes} data bytes for n={n}, got {len(body)}")
    bits = []
    for ch in body:
        x = ord(ch) - 63
        bits.extend((x >> k) & 1 for k in range(5, -1, -1))
    if any(bits[nbits:]):
        raise GraphError("graph6: nonzero padding bits")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def write_graph6(g: Graph) -> str:
    n = g.n
    if n >= 63:
        raise GraphError(f"graph6: n={n} too large (n < 63 supported); use edge-list format")
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(n + 63)]
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = (x << 1) | b
        out.append(chr(x + 63))
    return "".join(out)


# -- edge list -----------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` header followed by ``m`` lines ``u v``; ``#`` starts a comment."""
    header = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer token in {raw!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphError(f"line {lineno}: negative header values")
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"line {lineno}: vertex out of range for n={n}")
        if a == b:
            raise GraphError(f"line {lineno}: self-loop at {a}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
        edges.append(key)
    if header is None:
        raise GraphError("edge list: missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphError(f"edge list: header says {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges)


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> Graph:
    """Sniff the format: graph6 header or non-numeric first char means graph6."""
    s = text.lstrip()
    if not s:
        raise GraphError("empty graph input")
    if s.startswith(GRAPH6_HEADER) or not (s[0].isdigit() or s[0] == "#"):
        return parse_graph6(s.splitlines()[0])
    return parse_edge_list(text)
