"""Exhaustive search: packing S-colorability, two disjoint independent sets, and chi_p.

These are ground-truth oracles for small graphs. Search is plain
chronological backtracking so results stay auditable; TIMEOUT is never
reported as UNSAT.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph
from .packing import PackingSequence, SColoring, verify

SAT = "SAT"
UNSAT = "UNSAT"
TIMEOUT = "TIMEOUT"

MAX2IS_LIMIT = 24


class SearchTimeout(Exception):
    pass


@dataclass
class ExactResult:
    status: str
    coloring: SColoring | None = None
    nodes_expanded: int = 0
    elapsed_ms: float = 0.0

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.coloring is not None:
            out["coloring"] = self.coloring.to_json()
        out["nodes_expanded"] = self.nodes_expanded
        out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def bfs_order(g: Graph) -> list[int]:
    """BFS from vertex 0, restarting at the lowest unvisited id per component."""
    seen = [False] * g.n
    order = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
        order.extend(queue)
    return order


@dataclass
class _Deadline:
    cap: float | None
    start: float = field(default_factory=time.perf_counter)

    def expired(self) -> bool:
        return self.cap is not None and time.perf_counter() - self.start > self.cap

    def elapsed_ms(self) -> float:
        return (time.perf_counter() - self.start) * 1000.0


def solve(g: Graph, s: PackingSequence | Sequence[int], time_cap: float | None = None) -> ExactResult:
    """Decide packing ``s``-colorability of ``g`` by backtracking.

    Vertices are taken in BFS order and classes in ascending order. Classes
    sharing the same distance parameter are interchangeable, so a class may
    only open once its lower twin is in use.
    """
    if not isinstance(s, PackingSequence):
        s = PackingSequence(s)
    if time_cap is not None and time_cap <= 0:
        raise ValueError("time_cap must be positive")
    clock = _Deadline(time_cap)
    k = len(s)
    n = g.n
    order = bfs_order(g)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i

    # earlier[i][r]: vertices placed before order[i] within distance r of it
    radii = sorted(set(s))
    rmax = radii[-1]
    earlier: list[dict[int, list[int]]] = []
    for i, v in enumerate(order):
        ball = g.ball(v, rmax)
        earlier.append({r: [u for u, d in ball.items() if d <= r and pos[u] < i] for r in radii})

    # twin[c] = the lower class with the same parameter, or -1
    twin = [-1] * k
    for c in range(1, k):
        if s[c] == s[c - 1]:
            twin[c] = c - 1
    radius_of = list(s)

    color = [-1] * n
    used = [0] * k
    nodes = 0

    def place(i: int) -> bool:
        nonlocal nodes
        if i == n:
            return True
        nodes += 1
        if nodes & 4095 == 0 and clock.expired():
            raise SearchTimeout
        v = order[i]
        near = earlier[i]
        for c in range(k):
            t = twin[c]
            if t >= 0 and used[t] == 0:
                continue
            if any(color[u] == c for u in near[radius_of[c]]):
                continue
            color[v] = c
            used[c] += 1
            if place(i + 1):
                return True
            used[c] -= 1
            color[v] = -1
        return False

    try:
        found = place(0)
    except SearchTimeout:
        return ExactResult(TIMEOUT, None, nodes, clock.elapsed_ms())
    if not found:
        return ExactResult(UNSAT, None, nodes, clock.elapsed_ms())
    coloring = SColoring(s, [c + 1 for c in color])
    report = verify(g, coloring)
    if not report.valid:
        raise AssertionError(f"exact search produced an invalid coloring: {report.violations[:3]}")
    return ExactResult(SAT, coloring, nodes, clock.elapsed_ms())


def max_two_disjoint_independent(g: Graph) -> tuple[int, list[int], list[int]]:
    """Maximum |I1| + |I2| over disjoint independent sets, with a witness.

    Branch and bound over the choice I1 / I2 / neither per vertex.
    """
    n = g.n
    if n > MAX2IS_LIMIT:
        raise ValueError(f"max_two_disjoint_independent supports n <= {MAX2IS_LIMIT}, got {n}")
    order = bfs_order(g)
    adj = g.adj
    side = [0] * n  # 0 none, 1 or 2
    best = [-1, [], []]
    placed = 0
    # sizes of the two sets, used to break the I1/I2 swap symmetry
    counts = [0, 0, 0]

    def rec(i: int) -> None:
        nonlocal placed
        if placed + (n - i) <= best[0]:
            return
        if i == n:
            best[0] = placed
            best[1] = [v for v in range(n) if side[v] == 1]
            best[2] = [v for v in range(n) if side[v] == 2]
            return
        v = order[i]
        for c in (1, 2):
            if c == 2 and counts[1] == 0:
                continue
            if any(side[u] == c for u in adj[v]):
                continue
            side[v] = c
            counts[c] += 1
            placed += 1
            rec(i + 1)
            placed -= 1
            counts[c] -= 1
            side[v] = 0
        rec(i + 1)

    rec(0)
    return best[0], best[1], best[2]


def chi_p(g: Graph, k_max: int = 12, time_cap: float | None = None) -> int | None:
    """Least k <= k_max with a packing (1, 2, ..., k)-coloring; None when unknown."""
    if g.n == 0:
        return 0
    clock = _Deadline(time_cap)
    for k in range(1, k_max + 1):
        remaining = None
        if time_cap is not None:
            remaining = time_cap - clock.elapsed_ms() / 1000.0
            if remaining <= 0:
                return None
        res = solve(g, range(1, k + 1), remaining)
        if res.status == SAT:
            return k
        if res.status == TIMEOUT:
            return None
    return None
