"""Two disjoint independent sets plus the leftover "red" vertices, driven to move closure.

A state assigns every vertex to I1, I2 or RED. Repairs are exchanges of
vertices between the three sides that keep I1 and I2 independent and
strictly raise the potential (|I1| + |I2|, -#components of the red graph),
compared lexicographically. Since the potential takes at most (n+1)^2
values, any sequence of committed repairs terminates.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple

from .graph import Graph

log = logging.getLogger(__name__)

RED, I1, I2 = 0, 1, 2
SIDE_NAMES = {RED: "RED", I1: "I1", I2: "I2"}

FREE_ADD = "FREE_ADD"
P2_MERGE = "P2_MERGE"
P2_SHIFT = "P2_SHIFT"
LOCAL = "LOCAL"
CYCLE_SWAP = "CYCLE_SWAP"
ROTATION = "ROTATION"

# Centers within this distance of a committed change are searched again.
DIRTY_RADIUS = 7


class EngineDiagnostic(RuntimeError):
    """A guarantee derived from the closure argument failed; carries a state dump."""

    def __init__(self, message: str, state: "PartitionState | None" = None, trigger: str | None = None,
                 extra: dict | None = None):
        super().__init__(message)
        self.state = state
        self.trigger = trigger
        self.extra = extra or {}

    def to_json(self) -> dict:
        out = {"diagnostic": str(self), "trigger": self.trigger, "extra": self.extra}
        if self.state is not None:
            out["state"] = self.state.to_json()
        return out


class Potential(NamedTuple):
    size: int
    neg_components: int


Change = tuple[int, int, int]  # (vertex, old side, new side)


@dataclass
class RepairMove:
    changes: list[Change]
    trigger: str
    phi_before: Potential | None = None
    phi_after: Potential | None = None

    def inverse(self) -> list[Change]:
        return [(v, new, old) for v, old, new in reversed(self.changes)]

    def to_json(self) -> dict:
        return {
            "trigger": self.trigger,
            "changes": [[v, SIDE_NAMES[o], SIDE_NAMES[n]] for v, o, n in self.changes],
            "phi_before": list(self.phi_before) if self.phi_before else None,
            "phi_after": list(self.phi_after) if self.phi_after else None,
        }


def net_changes(changes: Iterable[Change]) -> list[Change]:
    """Collapse a sequence of changes to one change per vertex, dropping no-ops."""
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for v, old, new in changes:
        first.setdefault(v, old)
        last[v] = new
    return [(v, first[v], last[v]) for v in first if first[v] != last[v]]


class PartitionState:
    """Side assignment with per-vertex counts of neighbors on each side."""

    def __init__(self, g: Graph, side: Iterable[int]):
        self.g = g
        self.side = list(side)
        if len(self.side) != g.n:
            raise ValueError("side map must cover every vertex")
        self.cnt = [[0, 0, 0] for _ in range(g.n)]
        for v in range(g.n):
            for u in g.adj[v]:
                self.cnt[v][self.side[u]] += 1
        self.trace: list[RepairMove] = []
        self.composites = 0
        self.sink: Callable[[RepairMove], None] | None = None

    @classmethod
    def from_sets(cls, g: Graph, i1: Iterable[int], i2: Iterable[int]) -> "PartitionState":
        side = [RED] * g.n
        for v in i1:
            side[v] = I1
        for v in i2:
            if side[v] != RED:
                raise ValueError(f"vertex {v} in both I1 and I2")
            side[v] = I2
        st = cls(g, side)
        st.check()
        return st

    def copy(self) -> "PartitionState":
        st = PartitionState(self.g, self.side)
        st.composites = self.composites
        return st

    def set(self, v: int, new: int) -> None:
        old = self.side[v]
        if old == new:
            return
        self.side[v] = new
        cnt = self.cnt
        for u in self.g.adj[v]:
            c = cnt[u]
            c[old] -= 1
            c[new] += 1

    def apply(self, changes: Iterable[Change]) -> None:
        for v, old, new in changes:
            if self.side[v] != old:
                raise EngineDiagnostic(f"change on {v} expects {SIDE_NAMES[old]}, found "
                                       f"{SIDE_NAMES[self.side[v]]}", self)
            self.set(v, new)

    def revert(self, changes: Iterable[Change]) -> None:
        for v, old, new in reversed(list(changes)):
            self.set(v, old)

    @property
    def i1(self) -> list[int]:
        return [v for v, s in enumerate(self.side) if s == I1]

    @property
    def i2(self) -> list[int]:
        return [v for v, s in enumerate(self.side) if s == I2]

    @property
    def red(self) -> list[int]:
        return [v for v, s in enumerate(self.side) if s == RED]

    def size(self) -> int:
        return sum(1 for s in self.side if s != RED)

    def red_components(self) -> list[list[int]]:
        side, adj = self.side, self.g.adj
        seen = set()
        comps = []
        for s in range(self.g.n):
            if side[s] != RED or s in seen:
                continue
            seen.add(s)
            comp = [s]
            stack = [s]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if side[y] == RED and y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def phi(self) -> Potential:
        return Potential(self.size(), -len(self.red_components()))

    def conflicts_at(self, vertices: Iterable[int]) -> list[tuple[int, int]]:
        side, adj = self.side, self.g.adj
        bad = []
        for v in vertices:
            s = side[v]
            if s == RED:
                continue
            for u in adj[v]:
                if side[u] == s:
                    bad.append((min(u, v), max(u, v)))
        return sorted(set(bad))

    def check(self) -> None:
        """Recompute everything derived and assert the state invariants."""
        bad = self.conflicts_at(range(self.g.n))
        if bad:
            raise EngineDiagnostic(f"independence violated on edges {bad[:5]}", self)
        for v in range(self.g.n):
            c = [0, 0, 0]
            for u in self.g.adj[v]:
                c[self.side[u]] += 1
            if c != self.cnt[v]:
                raise EngineDiagnostic(f"neighbor-count cache stale at {v}", self)

    def to_json(self) -> dict:
        return {"n": self.g.n, "edges": self.g.edges(), "I1": self.i1, "I2": self.i2, "red": self.red}


def init_partition(g: Graph) -> PartitionState:
    """Greedy maximal independent I1 by ascending id, then I2 greedily in G - I1."""
    side = [RED] * g.n
    for target in (I1, I2):
        for v in range(g.n):
            if side[v] == RED and all(side[u] != target for u in g.adj[v]):
                side[v] = target
    return PartitionState(g, side)


def red_component_delta(state: PartitionState, old_side: dict[int, int]) -> int:
    """Change in the number of red components caused by the changes recorded in ``old_side``.

    ``state`` is already in the new configuration. Components not meeting the
    changed vertices or their neighbors are identical before and after.
    """
    adj, side = state.g.adj, state.side
    touch = set(old_side)
    for v in old_side:
        touch.update(adj[v])

    def count(is_red) -> int:
        seen = set()
        comps = 0
        for s in touch:
            if s in seen or not is_red(s):
                continue
            comps += 1
            seen.add(s)
            stack = [s]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen and is_red(y):
                        seen.add(y)
                        stack.append(y)
        return comps

    after = count(lambda x: side[x] == RED)
    before = count(lambda x: old_side.get(x, side[x]) == RED)
    return after - before


def commit(state: PartitionState, move: RepairMove) -> RepairMove:
    """Apply ``move`` and audit independence plus strict potential increase."""
    n = state.g.n
    before = state.phi()
    state.apply(move.changes)
    bad = state.conflicts_at(v for v, _, _ in move.changes)
    if bad:
        state.revert(move.changes)
        raise EngineDiagnostic(f"{move.trigger} move breaks independence on {bad[:5]}", state, move.trigger,
                               {"move": move.to_json()})
    after = state.phi()
    move.phi_before, move.phi_after = before, after
    if not after > before:
        state.revert(move.changes)
        raise EngineDiagnostic(f"{move.trigger} move does not raise the potential ({before} -> {after})",
                               state, move.trigger, {"move": move.to_json()})
    state.composites += 1
    if state.composites > (n + 1) ** 2:
        raise EngineDiagnostic(f"{state.composites} composites exceed the (n+1)^2 bound", state, move.trigger)
    state.trace.append(move)
    if state.sink is not None:
        state.sink(move)
    return move


def mv_free_add(state: PartitionState) -> RepairMove | None:
    """Lowest-id red vertex missing a neighbor in I1 (tried first) or in I2."""
    side, cnt = state.side, state.cnt
    for v in range(state.g.n):
        if side[v] != RED:
            continue
        if cnt[v][I1] == 0:
            return RepairMove([(v, RED, I1)], FREE_ADD)
        if cnt[v][I2] == 0:
            return RepairMove([(v, RED, I2)], FREE_ADD)
    return None


# -- H graph helpers shared with the coloring pipeline --------------------------


def h_neighbors(state: PartitionState, u: int) -> dict[int, int | None]:
    """Red vertices within distance 2 of red ``u``, mapped to the lowest black connector.

    ``None`` marks a direct red edge.
    """
    side, adj = state.side, state.g.adj
    out: dict[int, int | None] = {}
    for x in adj[u]:
        if side[x] == RED:
            out[x] = None
    for x in adj[u]:
        black = side[x] != RED
        for y in adj[x]:
            if y == u or side[y] != RED or (y in out and out[y] is None):
                continue
            if black:
                prev = out.get(y, -1)
                if prev == -1 or x < prev:
                    out[y] = x
            else:
                out.setdefault(y, -1)  # reached only through a red middle vertex
    return out


def red_partner(state: PartitionState, u: int) -> int | None:
    """The other vertex of ``u``'s red P2, if ``u`` has exactly one red neighbor."""
    reds = [x for x in state.g.adj[u] if state.side[x] == RED]
    return reds[0] if len(reds) == 1 else None


def repair_two_p2(state: PartitionState) -> RepairMove | None:
    """Shift one red P2 along an H-path until it meets another one, then merge.

    Returns the composite (shifts followed by the merge, or by a free add
    that became available midway) or None when every H-component holds at
    most one red P2.
    """
    path = _two_p2_path(state)
    if path is None:
        return None
    first, reds, connectors, last = path
    # first = (u1, u2); reds = [x1..x_{k-1}]; connectors = [w1..wk]; last = (v1, v2)
    u1, u2 = first
    v1, _ = last
    steps: list[Change] = []
    side = state.side
    adj = state.g.adj

    def finish(extra: list[Change], trigger: str) -> RepairMove:
        state.revert(steps)
        return RepairMove(net_changes(steps + extra), trigger)

    while True:
        fa = mv_free_add(state)
        if fa is not None:
            return finish(fa.changes, FREE_ADD)
        w = connectors[0]
        s = side[w]
        if s == RED:
            state.revert(steps)
            raise EngineDiagnostic(f"connector {w} is red", state, P2_SHIFT)
        # the shifting endpoint's off-path black neighbor must sit on the other side
        others = [x for x in adj[u2] if x not in (u1, w)]
        if any(side[x] != 3 - s for x in others):
            state.revert(steps)
            raise EngineDiagnostic(f"P2 endpoint {u2} has an unexpected neighbor side", state, P2_SHIFT,
                                   {"endpoint": u2, "connector": w})
        if not reds:
            # w joins u2 and v1 directly: take both endpoints into w's side
            others_v = [x for x in adj[v1] if x != w and side[x] != RED]
            if any(side[x] == s for x in others_v):
                state.revert(steps)
                raise EngineDiagnostic(f"P2 endpoint {v1} sees the connector side twice", state, P2_MERGE)
            merge = [(w, s, RED), (u2, RED, s), (v1, RED, s)]
            return finish(merge, P2_MERGE)
        shift = [(w, s, RED), (u2, RED, s)]
        state.apply(shift)
        steps.extend(shift)
        u1, u2 = w, reds[0]
        reds = reds[1:]
        connectors = connectors[1:]


def _two_p2_path(state: PartitionState):
    """Closest pair of red P2s in one H-component, realized as a G-path.

    Multi-source BFS over H from all P2 vertices; the first edge joining two
    different sources yields a path whose inner H-vertices are red P1s.
    """
    comps = state.red_components()
    label: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    queue: list[int] = []
    p2s = [c for c in comps if len(c) == 2]
    if len(p2s) < 2:
        return None
    for idx, c in enumerate(p2s):
        for v in c:
            label[v] = idx
            parent[v] = None
            queue.append(v)
    queue.sort()
    head = 0
    meet = None
    while head < len(queue) and meet is None:
        a = queue[head]
        head += 1
        for b, conn in sorted(h_neighbors(state, a).items()):
            if b not in label:
                label[b] = label[a]
                parent[b] = a
                queue.append(b)
            elif label[b] != label[a]:
                meet = (a, b)
                break
    if meet is None:
        return None

    def chain(v: int) -> list[int]:
        out = [v]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out  # v ... root

    a, b = meet
    hpath = list(reversed(chain(a))) + chain(b)  # root_a ... a b ... root_b
    u2, v1 = hpath[0], hpath[-1]
    u1 = red_partner(state, u2)
    v2 = red_partner(state, v1)
    connectors = []
    for x, y in zip(hpath, hpath[1:]):
        conn = h_neighbors(state, x).get(y)
        if conn is None or conn == -1:
            raise EngineDiagnostic(f"H-edge {x}-{y} has no black connector", state, P2_SHIFT)
        connectors.append(conn)
    return (u1, u2), hpath[1:-1], connectors, (v1, v2)


# -- bounded exchange search ------------------------------------------------------


def local_improve(state: PartitionState, center: int, radius: int = 3, max_changes: int = 6,
                  baseline: Potential | None = None) -> RepairMove | None:
    """Search reassignments of at most ``max_changes`` vertices near ``center``.

    Returns the first reassignment found that keeps I1 and I2 independent and
    raises the potential, or None if there is none within the bounds.

    Only minimal reassignments are enumerated: some red vertices enter I1 or
    I2, and each black vertex that then clashes with a neighbor is pushed to
    the other set or to red. Any improving reassignment contains such a
    minimal one, so nothing within the bounds is missed.

    ``baseline`` (a potential lower than the current one) relaxes the
    acceptance test to "beats baseline"; used after neutral rotations.
    """
    g = state.g
    adj = g.adj
    side = state.side
    region = g.ball(center, radius)
    seeds = sorted(v for v in region if side[v] == RED)
    if not seeds:
        return None
    changed: dict[int, int] = {}
    order: list[Change] = []
    delta = [0]  # size change so far
    # when measured against an older baseline, the current state is already ahead
    if baseline is not None:
        cur = state.phi()
        head_size = cur.size - baseline.size
        head_comp = cur.neg_components - baseline.neg_components
    else:
        head_size = head_comp = 0

    def setv(v: int, new: int) -> None:
        old = side[v]
        changed[v] = old
        order.append((v, old, new))
        delta[0] += (new != RED) - (old != RED)
        state.set(v, new)

    def unset() -> None:
        v, old, new = order.pop()
        del changed[v]
        delta[0] -= (new != RED) - (old != RED)
        state.set(v, old)

    def first_conflict() -> int | None:
        best = None
        for v, _, new in order:
            if new == RED:
                continue
            for u in adj[v]:
                if side[u] == new:
                    if u in changed:
                        return -1
                    if best is None or u < best:
                        best = u
        return best

    def improves() -> bool:
        size = delta[0] + head_size
        if size != 0:
            return size > 0
        return head_comp - red_component_delta(state, changed) > 0

    def dfs(last: int) -> bool:
        remaining = max_changes - len(order)
        if delta[0] + head_size + remaining < 0:
            return False
        c = first_conflict()
        if c == -1:
            return False
        if c is not None:
            if remaining == 0 or c not in region:
                return False
            cur = side[c]
            for new in (3 - cur, RED):
                setv(c, new)
                if dfs(last):
                    return True
                unset()
            return False
        if order and improves():
            return True
        if remaining == 0:
            return False
        for i in range(last + 1, len(seeds)):
            v = seeds[i]
            for new in (I1, I2):
                setv(v, new)
                if dfs(i):
                    return True
                unset()
        return False

    found = dfs(-1)
    if not found:
        return None
    changes = list(order)
    state.revert(changes)
    return RepairMove(changes, LOCAL)


@dataclass
class Stabilizer:
    """Drives a state to closure; remembers which centers are known to be stuck."""

    state: PartitionState
    radius: int = 3
    max_changes: int = 6
    clean: set[int] = field(default_factory=set)

    def invalidate(self, move: RepairMove) -> None:
        if not self.clean:
            return
        g = self.state.g
        for v, _, _ in move.changes:
            self.clean.difference_update(g.ball(v, DIRTY_RADIUS))

    def commit(self, move: RepairMove) -> RepairMove:
        commit(self.state, move)
        self.invalidate(move)
        return move

    def step(self) -> RepairMove | None:
        st = self.state
        m = mv_free_add(st)
        if m is not None:
            return self.commit(m)
        m = repair_two_p2(st)
        if m is not None:
            return self.commit(m)
        side = st.side
        for v in range(st.g.n):
            if side[v] != RED or v in self.clean:
                continue
            m = local_improve(st, v, self.radius, self.max_changes)
            if m is not None:
                return self.commit(m)
            self.clean.add(v)
        return None

    def run(self) -> list[RepairMove]:
        moves = []
        while True:
            m = self.step()
            if m is None:
                return moves
            moves.append(m)


def stabilize(state: PartitionState, radius: int = 3, max_changes: int = 6) -> list[RepairMove]:
    """Commit free adds, P2 merges and local exchanges until none applies."""
    return Stabilizer(state, radius, max_changes).run()


def is_stable(state: PartitionState) -> list[str]:
    """The directly checkable closure guarantees; returns the failures."""
    problems = []
    for comp in state.red_components():
        if len(comp) > 2:
            problems.append(f"red component {comp[:5]} has {len(comp)} vertices")
    for v in state.red:
        c = state.cnt[v]
        if c[I1] == 0 or c[I2] == 0:
            problems.append(f"red vertex {v} misses a side")
    if _two_p2_path(state) is not None:
        problems.append("an H-component holds two red P2s")
    return problems


def json_sink(stream) -> Callable[[RepairMove], None]:
    def write(move: RepairMove) -> None:
        stream.write(json.dumps(move.to_json()) + "\n")
    return write
