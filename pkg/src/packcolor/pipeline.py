"""From a stable partition to a verified packing (1,1,2,2,3)-coloring.

The red vertices are colored through the graph H that joins red vertices at
distance at most 2. In a stable state every H-component is a tree, an even
cycle or an odd cycle; trees and even cycles get two colors A/B and each odd
cycle gets exactly one C. The final classes are I1, I2, A, B, C. Only C
can clash (two C vertices within distance 3); such a clash is removed by a
potential-raising repair, after which everything is recolored.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .generators import cubic_complete
from .graph import Graph
from .packing import THEOREM_SEQUENCE, SColoring, verify
from .partition import (
    I1,
    I2,
    RED,
    ROTATION,
    EngineDiagnostic,
    PartitionState,
    RepairMove,
    Stabilizer,
    h_neighbors,
    init_partition,
    local_improve,
    net_changes,
    red_partner,
)

TREE = "TREE"
EVEN_CYCLE = "EVEN_CYCLE"
ODD_CYCLE = "ODD_CYCLE"
OTHER = "OTHER"

A, B, C = "A", "B", "C"
CLASS_OF_LABEL = {A: 3, B: 4, C: 5}


@dataclass
class HComponent:
    vertices: list[int]
    tag: str
    p2: tuple[int, int] | None = None
    cycle: list[int] | None = None  # cyclic order from the lowest id, for cycle tags


@dataclass
class HView:
    adj: dict[int, list[int]]
    components: list[HComponent]
    comp_of: dict[int, int]

    @property
    def vertices(self) -> list[int]:
        return sorted(self.adj)

    def edges(self) -> set[tuple[int, int]]:
        return {(u, v) for u, nb in self.adj.items() for v in nb if u < v}

    def max_degree(self) -> int:
        return max((len(nb) for nb in self.adj.values()), default=0)


def _cycle_order(adj: dict[int, list[int]], verts: list[int]) -> list[int]:
    start = min(verts)
    order = [start]
    prev, cur = None, start
    while True:
        a, b = adj[cur]
        nxt = a if a != prev else b
        if nxt == start:
            return order
        order.append(nxt)
        prev, cur = cur, nxt


def build_h(state: PartitionState) -> HView:
    """Exact H: red vertices, joined when their distance in G is at most 2."""
    adj = {u: sorted(h_neighbors(state, u)) for u in state.red}
    comp_of: dict[int, int] = {}
    comps = []
    for s in sorted(adj):
        if s in comp_of:
            continue
        idx = len(comps)
        comp_of[s] = idx
        verts = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp_of:
                    comp_of[y] = idx
                    verts.append(y)
                    stack.append(y)
        verts.sort()
        m = sum(len(adj[v]) for v in verts) // 2
        p2s = []
        for v in verts:
            w = red_partner(state, v)
            if w is not None and v < w:
                p2s.append((v, w))
        if m == len(verts) - 1:
            tag = TREE
        elif m == len(verts) and all(len(adj[v]) == 2 for v in verts):
            tag = ODD_CYCLE if len(verts) % 2 else EVEN_CYCLE
        else:
            tag = OTHER
        comp = HComponent(verts, tag, p2s[0] if len(p2s) == 1 else None)
        if tag in (EVEN_CYCLE, ODD_CYCLE):
            comp.cycle = _cycle_order(adj, verts)
        comps.append(comp)
    return HView(adj, comps, comp_of)


def shape_problems(state: PartitionState, h: HView) -> list[tuple[str, list[int]]]:
    """Stable-state structure violations, each with the vertices to repair around."""
    out = []
    for comp in h.components:
        if comp.tag == OTHER:
            out.append(("component is not a tree or cycle", comp.vertices))
    for v, nb in h.adj.items():
        if len(nb) > 3:
            out.append((f"H-degree {len(nb)} at {v}", [v]))
        elif len(nb) == 3:
            w = red_partner(state, v)
            if w is None:
                out.append((f"H 3-vertex {v} is a red P1", [v]))
            elif len(h.adj[w]) != 1:
                out.append((f"partner {w} of H 3-vertex {v} has H-degree {len(h.adj[w])}", [v, w]))
    return out


def color_h(state: PartitionState, h: HView) -> dict[int, str]:
    """Proper A/B/C coloring of H using C exactly once per odd cycle."""
    out: dict[int, str] = {}
    for comp in h.components:
        if comp.tag == OTHER:
            raise EngineDiagnostic(f"cannot color H-component {comp.vertices[:8]} of unknown shape", state)
        if comp.tag != ODD_CYCLE:
            start = comp.vertices[0]
            out[start] = A
            stack = [start]
            while stack:
                x = stack.pop()
                for y in h.adj[x]:
                    if y not in out:
                        out[y] = B if out[x] == A else A
                        stack.append(y)
            continue
        cyc = comp.cycle
        k = len(cyc)
        if comp.p2 is not None:
            e = min(comp.p2)
            o = max(comp.p2)
            i = cyc.index(e)
            left, right = cyc[(i - 1) % k], cyc[(i + 1) % k]
            c_vertex = right if left == o else left
        else:
            c_vertex = cyc[0]
        j = cyc.index(c_vertex)
        rest = [cyc[(j + t) % k] for t in range(1, k)]
        if rest[-1] < rest[0]:
            rest.reverse()
        out[c_vertex] = C
        for t, v in enumerate(rest):
            out[v] = A if t % 2 == 0 else B
    return out


def assemble(state: PartitionState, hc: dict[int, str]) -> SColoring:
    cls = []
    for v, s in enumerate(state.side):
        if s == I1:
            cls.append(1)
        elif s == I2:
            cls.append(2)
        else:
            cls.append(CLASS_OF_LABEL[hc[v]])
    return SColoring(THEOREM_SEQUENCE, cls)


def find_33_conflict(g: Graph, f: SColoring) -> tuple[int, int] | None:
    """Lowest pair of class-5 vertices within distance 3."""
    fives = [v for v, c in enumerate(f.assignment) if c == 5]
    a = f.assignment
    for u in fives:
        close = [v for v, d in g.ball(u, 3).items() if v > u and a[v] == 5]
        if close:
            return u, min(close)
    return None


# -- cycle realizations and rotations --------------------------------------------


@dataclass
class CycleRealization:
    """An H-cycle traced in G.

    ``steps`` lists (red vertex, connector to the next red vertex) in cycle
    order. When the cycle carries a red P2 the direct P2 edge has no
    connector and is left out, so steps start at the chosen P2 endpoint.
    """

    reds: list[int]
    steps: list[tuple[int, int]]
    p2: tuple[int, int] | None = None


def realize(state: PartitionState, comp: HComponent) -> CycleRealization:
    cyc = list(comp.cycle)
    k = len(cyc)
    p2 = None
    if comp.p2 is not None:
        e, o = min(comp.p2), max(comp.p2)
        i = cyc.index(e)
        if cyc[(i - 1) % k] != o:
            cyc.reverse()
            i = cyc.index(e)
        cyc = cyc[i - 1:] + cyc[:i - 1] if i else cyc[-1:] + cyc[:-1]
        p2 = (o, e)  # cyc[0] = o, cyc[1] = e
    steps = []
    for t in range(k):
        a, b = cyc[t], cyc[(t + 1) % k]
        conn = h_neighbors(state, a).get(b)
        if conn is None and p2 is not None and {a, b} == set(p2):
            continue
        if conn is None or conn == -1:
            raise EngineDiagnostic(f"H-cycle edge {a}-{b} has no black connector", state)
        steps.append((a, conn))
    return CycleRealization(cyc, steps, p2)


def rotate(state: PartitionState, real: CycleRealization, i: int) -> RepairMove:
    """Swap roles along the first ``i`` steps: red vertex joins its connector's side, connector turns red.

    Applied to ``state``; the returned move undoes with ``state.revert(move.changes)``.
    """
    changes = []
    for red, conn in real.steps[:i]:
        s = state.side[conn]
        if state.side[red] != RED or s == RED:
            raise EngineDiagnostic(f"rotation step ({red}, {conn}) is not red/black", state, ROTATION)
        changes.append((conn, s, RED))
        changes.append((red, RED, s))
    state.apply(changes)
    bad = state.conflicts_at(v for v, _, _ in changes)
    if bad:
        state.revert(changes)
        raise EngineDiagnostic(f"rotation by {i} breaks independence on {bad[:3]}", state, ROTATION)
    return RepairMove(changes, ROTATION)


def repair_conflict(state: PartitionState, conflict: tuple[int, int], h: HView,
                    radius: int = 3, max_changes: int = 6) -> RepairMove:
    """Find a potential-raising composite near a 3-3 conflict.

    For each rotation of the two odd cycles involved (identity first), the
    bounded exchange search runs around the red vertices near the conflict;
    the first composite beating the current potential is returned uncommitted.
    """
    g = state.g
    phi0 = state.phi()
    u, v = conflict
    tried = []
    comps = []
    for x in (u, v):
        idx = h.comp_of[x]
        if idx not in comps:
            comps.append(idx)
    for idx in comps:
        real = realize(state, h.components[idx])
        for i in range(len(real.steps) + 1):
            try:
                rot = rotate(state, real, i)
            except EngineDiagnostic:
                tried.append({"component": idx, "rotation": i, "result": "invalid"})
                continue
            try:
                if state.phi() > phi0:
                    return RepairMove(net_changes(rot.changes), ROTATION)
                near = set()
                for x in (u, v):
                    near.update(g.ball(x, 3))
                for red, conn in real.steps[:i]:
                    near.update(g.ball(red, 1))
                for c in sorted(near):
                    m = local_improve(state, c, radius, max_changes, baseline=phi0)
                    if m is not None:
                        trig = ROTATION if i else m.trigger
                        return RepairMove(net_changes(rot.changes + m.changes), trig)
                tried.append({"component": idx, "rotation": i, "result": "no improvement"})
            finally:
                state.revert(rot.changes)
    raise EngineDiagnostic(f"no improving repair for 3-3 conflict {conflict}", state, ROTATION,
                           {"conflict": list(conflict), "tried": tried})


# -- top level ----------------------------------------------------------------------


@dataclass
class SolveStats:
    moves: int = 0
    conflicts_repaired: int = 0
    shape_repairs: int = 0
    host_n: int = 0
    elapsed_ms: float = 0.0
    by_trigger: dict[str, int] = field(default_factory=dict)


@dataclass
class SolveResult:
    coloring: SColoring
    host_coloring: SColoring
    state: PartitionState
    stats: SolveStats


def _repair_shape(stab: Stabilizer, problems) -> RepairMove | None:
    state = stab.state
    g = state.g
    centers = set()
    for _, verts in problems:
        for v in verts:
            centers.update(x for x in g.ball(v, 2) if state.side[x] == RED)
    for radius, max_changes in ((stab.radius, stab.max_changes), (4, 8)):
        for c in sorted(centers):
            m = local_improve(state, c, radius, max_changes)
            if m is not None:
                return m
    return None


def solve(g: Graph, sink: Callable[[RepairMove], None] | None = None, radius: int = 3,
          max_changes: int = 6) -> SolveResult:
    """Packing (1,1,2,2,3)-coloring of a subcubic graph, checked by the verifier before return."""
    t0 = time.perf_counter()
    emb = cubic_complete(g)
    host = emb.host
    state = init_partition(host)
    state.sink = sink
    stab = Stabilizer(state, radius, max_changes)
    stats = SolveStats(host_n=host.n)
    while True:
        stab.run()
        h = build_h(state)
        problems = shape_problems(state, h)
        if problems:
            m = _repair_shape(stab, problems)
            if m is None:
                raise EngineDiagnostic(f"stable state has bad H structure: {problems[0][0]}", state, None,
                                       {"problems": [p for p, _ in problems]})
            stab.commit(m)
            stats.shape_repairs += 1
            continue
        hc = color_h(state, h)
        f = assemble(state, hc)
        conflict = find_33_conflict(host, f)
        if conflict is None:
            break
        stab.commit(repair_conflict(state, conflict, h, radius, max_changes))
        stats.conflicts_repaired += 1
    report = verify(host, f)
    if not report.valid:
        raise EngineDiagnostic(f"assembled coloring fails verification: {report.violations[:3]}", state)
    coloring = f.restrict(emb.image)
    report = verify(g, coloring)
    if not report.valid:
        raise EngineDiagnostic(f"restricted coloring fails verification: {report.violations[:3]}", state)
    stats.moves = len(state.trace)
    for mv in state.trace:
        stats.by_trigger[mv.trigger] = stats.by_trigger.get(mv.trigger, 0) + 1
    stats.elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return SolveResult(coloring, f, state, stats)
