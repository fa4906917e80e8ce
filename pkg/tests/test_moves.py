import random

import pytest

from berge.constructions import gen_H2
from berge.core import Hypergraph
from berge.moves import find_long_cycle, improvement_moves, long_cycle_search
from berge.search import (
    BergeCycle,
    BergePath,
    NoCycleError,
    circumference,
    cycle_from_vertices,
    iter_cycle_sequences,
    validate_cycle,
)
from berge.structures import (
    DccPair,
    DcpPair,
    Lollipop,
    compare,
    enumerate_best,
    free_vertices,
    is_valid,
    path_edges,
    rank,
)
from oracles import lollipop_key, random_hypergraph

C4 = ((0, 1), (1, 2), (2, 3), (3, 0))
C4_CYCLE = BergeCycle((0, 1, 2, 3), (0, 1, 2, 3))


def cycle_graph(n):
    return Hypergraph(n, tuple((i, (i + 1) % n) for i in range(n)), 2)


def test_m1_extends_the_path():
    h = Hypergraph(5, C4 + ((3, 4),), 2)
    lol = Lollipop(C4_CYCLE, BergePath((3,), ()))
    moves = [mv for mv in improvement_moves(h, lol) if mv.name == "m1"]
    assert moves
    for mv in moves:
        assert rank(h, mv.result).r2 == rank(h, lol).r2 + 1


def test_m6_splice_gives_longer_cycle():
    # path 5 -> 6 -> 7 -> 8 hangs off C_6 and 8 sees v_1: dropping v_0 gives length 8
    h = Hypergraph(9, tuple((i, (i + 1) % 6) for i in range(6)) + ((5, 6), (6, 7), (7, 8), (8, 1)), 2)
    cyc = BergeCycle(tuple(range(6)), tuple(range(6)))
    lol = Lollipop(cyc, BergePath((5, 6, 7, 8), (6, 7, 8)))
    longer = [mv for mv in improvement_moves(h, lol) if mv.kind == "longer"]
    assert any(mv.name == "m6" for mv in longer)
    for mv in longer:
        assert len(mv.result) > 6 and validate_cycle(h, mv.result)


def test_m2_detour_keeps_the_whole_cycle():
    # path end 5 sees v_0 and the anchor v_3: cycle 0..3,4,5 uses every cycle vertex
    h = Hypergraph(6, C4[:3] + ((3, 0), (3, 4), (4, 5), (5, 0)), 2)
    lol = Lollipop(C4_CYCLE, BergePath((3, 4, 5), (4, 5)))
    names = {mv.name for mv in improvement_moves(h, lol) if mv.kind == "longer"}
    assert names & {"m2", "m6"}


def test_m8_closes_a_dcp_pair():
    h = Hypergraph(6, C4 + ((4, 5), (4, 5)), 2)
    pair = DcpPair(C4_CYCLE, BergePath((4, 5), (4,)))
    moves = improvement_moves(h, pair, order="S")
    assert any(mv.name == "m8" and isinstance(mv.result, DccPair) for mv in moves)
    assert not any(mv.name == "m8" for mv in improvement_moves(h, pair))


def test_m3_edge_swap():
    h = Hypergraph(6, C4 + ((3, 4), (0, 1, 4)), 0)
    lol = Lollipop(C4_CYCLE, BergePath((3, 4), (4,)))
    moves = [mv for mv in improvement_moves(h, lol) if mv.name == "m3"]
    assert moves and rank(h, moves[0].result).r3 == 1


def test_m7_reroute():
    # u = 4 lies in cycle edges e_0 and e_2; 1 and 3 are joined by the spare edge {1, 5, 3}
    h = Hypergraph(6, ((0, 1, 4), (1, 2), (2, 3, 4), (3, 0), (1, 5, 3)), 0)
    pair = DcpPair(C4_CYCLE, BergePath((4,), ()))
    longer = [mv for mv in improvement_moves(h, pair) if mv.name == "m7"]
    assert longer and all(len(mv.result) > 4 and validate_cycle(h, mv.result) for mv in longer)


def test_neutral_moves_only_on_request():
    rng = random.Random(4)
    for _ in range(40):
        h = random_hypergraph(rng, 6, 3, 8)
        best = enumerate_best(h, "lollipop")
        if best is None:
            continue
        plain = improvement_moves(h, best.structure)
        assert all(mv.kind != "neutral" for mv in plain)
        for mv in improvement_moves(h, best.structure, include_neutral=True):
            if mv.kind == "neutral":
                assert compare(rank(h, mv.result), best.rank) == 0


def test_every_move_improves():
    rng = random.Random(8)
    checked = 0
    for _ in range(40):
        h = random_hypergraph(rng, rng.randint(5, 7), 3, rng.randint(5, 9))
        frontier = []
        for length in range(2, 5):
            for seq in list(iter_cycle_sequences(h, length))[:3]:
                cyc = cycle_from_vertices(h, seq)
                frontier.append(Lollipop(cyc, BergePath((cyc.vertices[-1],), ())))
        for s in frontier[:60]:
            for mv in improvement_moves(h, s, include_neutral=True):
                checked += 1
                if mv.kind == "longer":
                    assert len(mv.result) > len(s.cycle) and validate_cycle(h, mv.result)
                    continue
                assert is_valid(h, mv.result)
                old = lollipop_key(h, s.cycle.vertices, s.cycle.edges, free_vertices(s), path_edges(s))
                new = lollipop_key(h, mv.result.cycle.vertices, mv.result.cycle.edges,
                                   free_vertices(mv.result), path_edges(mv.result))
                assert new > old if mv.kind == "rank" else new == old
                frontier.append(mv.result)
    assert checked > 100


def test_find_long_cycle_examples():
    assert len(find_long_cycle(cycle_graph(6))) == 6
    h, _ = gen_H2(3, 4, 8)
    assert len(find_long_cycle(h)) == circumference(h).length == 6


def test_no_cycle_is_signalled():
    with pytest.raises(NoCycleError):
        find_long_cycle(Hypergraph(4, ((0, 1), (1, 2), (2, 3)), 2))


def test_search_is_deterministic_and_monotone():
    rng = random.Random(12)
    for _ in range(30):
        h = random_hypergraph(rng, 8, 3, 10)
        if not circumference(h).length:
            continue
        a = long_cycle_search(h, seed=3)
        b = long_cycle_search(h, seed=3)
        assert a.to_json() == b.to_json()
        assert a.lengths == sorted(a.lengths) and a.lengths[-1] == len(a.cycle)
        assert validate_cycle(h, a.cycle)
