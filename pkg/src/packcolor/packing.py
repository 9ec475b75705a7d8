"""Packing S-colorings: data model, certifying verifier, weakening and subdivision lift."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .graph import Graph, SubdividedGraph


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class PackingSequence:
    """Non-decreasing positive distance parameters ``s_1 <= ... <= s_k``."""

    s: tuple[int, ...]

    def __init__(self, s: Iterable[int]):
        s = tuple(int(x) for x in s)
        if not s:
            raise ColoringError("packing sequence must be non-empty")
        if any(x < 1 for x in s):
            raise ColoringError(f"packing sequence entries must be positive: {s}")
        if any(a > b for a, b in zip(s, s[1:])):
            raise ColoringError(f"packing sequence must be non-decreasing: {s}")
        object.__setattr__(self, "s", s)

    @classmethod
    def parse(cls, text: str) -> "PackingSequence":
        return cls(int(x) for x in text.replace(" ", "").split(",") if x)

    def __len__(self) -> int:
        return len(self.s)

    def __iter__(self):
        return iter(self.s)

    def __getitem__(self, i: int) -> int:
        return self.s[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.s)) + ")"


THEOREM_SEQUENCE = PackingSequence((1, 1, 2, 2, 3))
# Class index -> color name used for the five-class colorings.
THEOREM_LABELS = {1: "1a", 2: "1b", 3: "2a", 4: "2b", 5: "3"}


@dataclass(frozen=True)
class SColoring:
    """Vertex ``v`` lies in class ``assignment[v]`` (1-indexed)."""

    seq: PackingSequence
    assignment: tuple[int, ...]

    def __init__(self, seq: PackingSequence | Sequence[int], assignment: Sequence[int]):
        if not isinstance(seq, PackingSequence):
            seq = PackingSequence(seq)
        assignment = tuple(assignment)
        k = len(seq)
        for v, c in enumerate(assignment):
            if c is None:
                raise ColoringError(f"vertex {v} is uncolored")
            if not 1 <= c <= k:
                raise ColoringError(f"vertex {v} has class {c} outside 1..{k}")
        object.__setattr__(self, "seq", seq)
        object.__setattr__(self, "assignment", assignment)

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {i: [] for i in range(1, len(self.seq) + 1)}
        for v, c in enumerate(self.assignment):
            out[c].append(v)
        return out

    def restrict(self, image: Sequence[int]) -> "SColoring":
        """Pull back through an embedding: guest vertex ``v`` gets the class of ``image[v]``."""
        return SColoring(self.seq, [self.assignment[x] for x in image])

    def to_json(self) -> dict:
        return {
            "sequence": list(self.seq.s),
            "classes": {str(v): c for v, c in enumerate(self.assignment)},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)

    @classmethod
    def from_json(cls, obj: Mapping, n: int | None = None) -> "SColoring":
        try:
            seq = PackingSequence(obj["sequence"])
            raw = {int(v): int(c) for v, c in obj["classes"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise ColoringError(f"malformed coloring JSON: {exc}") from exc
        size = n if n is not None else (max(raw) + 1 if raw else 0)
        missing = [v for v in range(size) if v not in raw]
        if missing:
            raise ColoringError(f"coloring is partial; missing vertices {missing[:10]}")
        extra = [v for v in raw if not 0 <= v < size]
        if extra:
            raise ColoringError(f"coloring names unknown vertices {extra[:10]}")
        return cls(seq, [raw[v] for v in range(size)])

    @classmethod
    def loads(cls, text: str, n: int | None = None) -> "SColoring":
        return cls.from_json(json.loads(text), n)


@dataclass(frozen=True)
class Violation:
    cls: int
    u: int
    v: int
    distance: int
    required: int  # minimum allowed distance, s_i + 1


@dataclass
class ViolationReport:
    violations: list[Violation]

    @property
    def valid(self) -> bool:
        return not self.violations

    def by_class(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for x in self.violations:
            counts[x.cls] = counts.get(x.cls, 0) + 1
        return counts

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [
                {"class": x.cls, "u": x.u, "v": x.v, "distance": x.distance, "required": x.required}
                for x in self.violations
            ],
        }


def verify(g: Graph, f: SColoring) -> ViolationReport:
    """Every same-class pair closer than ``s_i + 1``, found by radius-``s_i`` BFS."""
    if len(f.assignment) != g.n:
        raise ColoringError(f"coloring covers {len(f.assignment)} vertices, graph has {g.n}")
    out = []
    a = f.assignment
    for u in range(g.n):
        c = a[u]
        s = f.seq[c - 1]
        for v, d in sorted(g.ball(u, s).items()):
            if v > u and a[v] == c:
                out.append(Violation(c, u, v, d, s + 1))
    out.sort(key=lambda x: (x.cls, x.u, x.v))
    return ViolationReport(out)


def weakening_implies(stronger: PackingSequence, weaker: PackingSequence) -> bool:
    """True iff every packing ``stronger``-coloring is also a packing ``weaker``-coloring."""
    a, b = sorted(stronger), sorted(weaker)
    if len(a) != len(b):
        raise ColoringError(f"length mismatch: {len(a)} vs {len(b)}")
    return all(x >= y for x, y in zip(a, b))


def lift(g: Graph, f: SColoring, sub: SubdividedGraph) -> SColoring:
    """Lift a packing (s_1..s_k)-coloring of g to a (1, 2s_1+1, ..., 2s_k+1)-coloring of D(g).

    Subdivision vertices form class 1; original vertex of class i goes to i+1.
    """
    if sub.base != g:
        raise ColoringError("subdivision was not built from this graph")
    report = verify(g, f)
    if report.violations:
        raise ColoringError(f"input coloring is invalid: {len(report.violations)} violation(s)")
    seq = PackingSequence((1, *(2 * s + 1 for s in f.seq)))
    assignment = [1] * sub.graph.n
    for v in range(g.n):
        assignment[v] = f.assignment[v] + 1
    return SColoring(seq, assignment)
