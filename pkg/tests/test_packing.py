import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packcolor import exact
from packcolor.generators import complete, cycle, petersen, random_subcubic
from packcolor.graph import subdivide
from packcolor.packing import (
    ColoringError,
    PackingSequence,
    SColoring,
    Violation,
    lift,
    verify,
    weakening_implies,
)

from .conftest import floyd_warshall, naive_violations, subcubic_graphs

PETERSEN_COLORING = [1, 2, 1, 2, 3, 2, 4, 5, 1, 1]  # I1={0,2,8,9}, I2={1,3,5}, 4:2a, 6:2b, 7:3


def test_sequence_validation():
    assert PackingSequence.parse("1,1,2,2,3").s == (1, 1, 2, 2, 3)
    for bad in ([], [0, 1], [2, 1]):
        with pytest.raises(ColoringError):
            PackingSequence(bad)


def test_coloring_validation():
    with pytest.raises(ColoringError):
        SColoring((1, 2), [1, 3])
    with pytest.raises(ColoringError):
        SColoring((1, 2), [1, None])
    with pytest.raises(ColoringError):
        verify(cycle(4), SColoring((1,), [1, 1, 1]))


def test_verify_examples():
    c4 = cycle(4)
    assert verify(c4, SColoring((1, 2, 3), [1, 2, 1, 3])).valid
    rep = verify(c4, SColoring((1, 2, 3), [2, 1, 2, 3]))
    assert rep.violations == [Violation(2, 0, 2, 2, 3)]
    assert verify(petersen(), SColoring((1, 1, 2, 2, 3), PETERSEN_COLORING)).valid


def test_verify_reports_every_violation():
    g = complete(4)
    rep = verify(g, SColoring((1,), [1, 1, 1, 1]))
    assert len(rep.violations) == 6
    assert rep.by_class() == {1: 6}


@settings(max_examples=80, deadline=None)
@given(subcubic_graphs(max_n=40), st.integers(0, 2**32 - 1))
def test_verify_matches_all_pairs_oracle(g, seed):
    rng = random.Random(seed)
    seq = PackingSequence(sorted(rng.choice((1, 1, 2, 2, 3)) for _ in range(rng.randint(1, 5))))
    f = SColoring(seq, [rng.randint(1, len(seq)) for _ in range(g.n)])
    got = {(x.u, x.v) for x in verify(g, f).violations}
    assert got == naive_violations(g, seq, f.assignment)


def test_weakening_examples():
    assert weakening_implies(PackingSequence((1, 3, 3, 5, 5, 7)), PackingSequence((1, 2, 3, 4, 5, 6)))
    assert not weakening_implies(PackingSequence((1, 1, 2, 2, 3)), PackingSequence((1, 2, 3, 4, 5)))
    s = PackingSequence((1, 1, 2))
    assert weakening_implies(s, s)
    with pytest.raises(ColoringError):
        weakening_implies(s, PackingSequence((1, 1)))


def test_weakening_preserves_validity():
    rng = random.Random(4)
    for _ in range(50):
        g = random_subcubic(rng.randint(2, 10), rng.getrandbits(32), 0.2)
        res = exact.solve(g, (1, 2, 2, 3))
        if res.status != exact.SAT:
            continue
        for weaker in ((1, 1, 2, 3), (1, 2, 2, 2), (1, 1, 1, 1)):
            assert weakening_implies(res.coloring.seq, PackingSequence(weaker))
            assert verify(g, SColoring(weaker, res.coloring.assignment)).valid


def test_lift_c6_bipartition():
    c6 = cycle(6)
    f = SColoring((1, 1), [1, 2, 1, 2, 1, 2])
    sub = subdivide(c6)
    up = lift(c6, f, sub)
    assert up.seq.s == (1, 3, 3)
    assert verify(sub.graph, up).valid
    classes = up.classes()
    assert sorted(classes[1]) == list(range(6, 12))
    d = floyd_warshall(sub.graph)
    for c in (2, 3):
        triple = classes[c]
        assert len(triple) == 3
        assert all(d[u][v] == 4 for u in triple for v in triple if u != v)


def test_lift_k4():
    k4 = complete(4)
    sub = subdivide(k4)
    up = lift(k4, SColoring((1, 1, 2, 2), [1, 2, 3, 4]), sub)
    assert up.seq.s == (1, 3, 3, 5, 5)
    assert verify(sub.graph, up).valid
    assert [len(up.classes()[c]) for c in range(2, 6)] == [1, 1, 1, 1]


def test_lift_singletons_always_valid():
    for seed in range(10):
        g = random_subcubic(8, seed)
        f = SColoring(range(1, g.n + 1), range(1, g.n + 1))
        sub = subdivide(g)
        assert verify(sub.graph, lift(g, f, sub)).valid


def test_lift_rejects_invalid_input():
    c4 = cycle(4)
    with pytest.raises(ColoringError):
        lift(c4, SColoring((1,), [1, 1, 1, 1]), subdivide(c4))


def test_lift_random_valid_colorings():
    rng = random.Random(11)
    done = 0
    while done < 40:
        g = random_subcubic(rng.randint(3, 9), rng.getrandbits(32), 0.2)
        seq = sorted(rng.choice((1, 2, 3)) for _ in range(rng.randint(2, 5)))
        res = exact.solve(g, seq)
        if res.status != exact.SAT:
            continue
        sub = subdivide(g)
        assert verify(sub.graph, lift(g, res.coloring, sub)).valid
        done += 1


def test_json_round_trip():
    f = SColoring((1, 1, 2, 2, 3), PETERSEN_COLORING)
    text = f.dumps()
    obj = json.loads(text)
    assert obj["sequence"] == [1, 1, 2, 2, 3]
    assert obj["classes"]["7"] == 5
    assert SColoring.loads(text, 10) == f


def test_json_rejects_partial_and_malformed():
    with pytest.raises(ColoringError, match="partial"):
        SColoring.loads('{"sequence": [1], "classes": {"0": 1}}', 2)
    with pytest.raises(ColoringError):
        SColoring.loads('{"classes": {"0": 1}}')
    with pytest.raises(ColoringError):
        SColoring.loads('{"sequence": [1], "classes": {"0": 2}}')
