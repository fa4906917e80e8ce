import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from berge.connectivity import is_k_connected
from berge.core import Hypergraph, min_degree
from berge.search import BergeCycle, BergePath, circumference
from berge.structures import (
    DccPair,
    DcpPair,
    InvalidStructure,
    Lollipop,
    RankVector,
    compare,
    enumerate_best,
    is_valid,
    rank,
    s_sets,
    smalldeg_flags,
    structure_from_json,
    structure_problems,
    structure_to_json,
)
from oracles import best_lollipop_key, best_pair_key, random_hypergraph

C4 = ((0, 1), (1, 2), (2, 3), (3, 0))


def c4_lollipop(extra_cycle_edge):
    # cycle 0,1,2,3 with anchor 3; path 3 -> 4 -> 5
    last = (3, 0, 4, 5) if extra_cycle_edge else (3, 0)
    h = Hypergraph(6, C4[:3] + (last, (3, 4), (0, 4, 5)), 0)
    cyc = BergeCycle((0, 1, 2, 3), (0, 1, 2, 3))
    return h, Lollipop(cyc, BergePath((3, 4, 5), (4, 5)), "ordinary")


def test_rank_direct_count():
    h, lol = c4_lollipop(False)
    assert rank(h, lol).key() == (4, 2, 0, 0)


def test_rank_counts_multiplicity():
    h, lol = c4_lollipop(True)
    assert rank(h, lol).key() == (4, 2, 2, 0)


def test_rank_r4_counts_edges_inside_the_path():
    h = Hypergraph(6, C4 + ((3, 4), (4, 5)), 2)
    lol = Lollipop(BergeCycle((0, 1, 2, 3), (0, 1, 2, 3)), BergePath((3, 4, 5), (4, 5)))
    assert rank(h, lol).key() == (4, 2, 0, 1)


def test_rank_pairs_use_the_whole_path():
    h = Hypergraph(6, C4 + ((4, 5), (0, 1, 4)), 0)
    pair = DcpPair(BergeCycle((0, 1, 2, 3), (5, 1, 2, 3)), BergePath((4, 5), (4,)))
    assert rank(h, pair).key() == (4, 2, 1, 1)
    assert rank(h, pair, order="S").key() == (4, 2, 1, 0, 1)
    tri = Hypergraph(6, C4 + ((4, 5), (4, 5)), 2)
    dcc = DccPair(BergeCycle((0, 1, 2, 3), (0, 1, 2, 3)), BergeCycle((4, 5), (4, 5)))
    assert rank(tri, dcc).key() == (4, 2, 0, 1, 2)


def test_rank_rejects_invalid_structures():
    h, lol = c4_lollipop(False)
    bad = Lollipop(lol.cycle, BergePath((3, 0), (3,)), "ordinary")
    assert structure_problems(h, bad)
    with pytest.raises(InvalidStructure):
        rank(h, bad)


def test_partial_lollipop_validity():
    h = Hypergraph(5, ((0, 1), (1, 2), (2, 0, 3), (3, 4)), 0)
    cyc = BergeCycle((0, 1, 2), (0, 1, 2))
    lol = Lollipop(cyc, BergePath((3, 4), (2, 3), "partial"), "partial")
    assert is_valid(h, lol)
    assert rank(h, lol).key() == (3, 2, 0, 1)
    assert not is_valid(h, Lollipop(cyc, BergePath((3, 4), (3, 2), "partial"), "partial"))


def test_compare_examples():
    assert compare(RankVector("lollipop", 5, 0, 0, 0), RankVector("lollipop", 4, 9, 9, 9)) == 1
    assert compare(RankVector("lollipop", 4, 2, 1, 0), RankVector("lollipop", 4, 2, 0, 9)) == 1
    assert compare(RankVector("lollipop", 4, 2, 0, 0), RankVector("lollipop", 4, 2, 0, 0)) == 0
    assert compare(RankVector("joint", 4, 2, 0, 0, 1), RankVector("joint", 4, 2, 0, 5, 0)) == 1
    with pytest.raises(ValueError):
        compare(RankVector("lollipop", 4, 2, 0, 0), RankVector("dcp", 4, 2, 0, 0))


vectors = st.builds(RankVector, st.just("joint"), *[st.integers(0, 3)] * 4, st.integers(0, 1))


@given(vectors, vectors, vectors)
def test_compare_is_a_total_preorder(a, b, c):
    assert compare(a, b) == -compare(b, a)
    if compare(a, b) >= 0 and compare(b, c) >= 0:
        assert compare(a, c) >= 0
    assert (compare(a, b) == 0) == (a.key() == b.key())


def test_best_lollipop_c5_with_pendant():
    h = Hypergraph(6, tuple((i, (i + 1) % 5) for i in range(5)) + ((0, 5),), 2)
    best = enumerate_best(h, "lollipop")
    assert best.exact and best.rank.key()[:2] == (5, 1)


def test_best_pair_when_only_a_triangle():
    tri = Hypergraph(3, ((0, 1), (1, 2), (0, 2)), 2)
    assert enumerate_best(tri, "dcp") is None
    assert enumerate_best(tri, "dcc") is None
    tri_plus = Hypergraph(4, ((0, 1), (1, 2), (0, 2)), 2)
    assert enumerate_best(tri_plus, "dcp").rank.key() == (3, 1, 0, 0)


def test_best_lollipop_complete_3graph():
    k4 = Hypergraph(4, tuple(combinations(range(4), 3)), 3)
    assert enumerate_best(k4, "lollipop").rank.r1 == circumference(k4).length == 4


def test_enumerate_best_unknown_family():
    with pytest.raises(ValueError):
        enumerate_best(Hypergraph(2, (), 2), "tadpole")


def test_seeded_seven_vertex_instance_matches_brute_force():
    rng = random.Random(2024)
    h = random_hypergraph(rng, 7, 3, 7)
    best = enumerate_best(h, "lollipop")
    assert best.exact and is_valid(h, best.structure)
    assert best.rank.key() == best_lollipop_key(h)


def test_enumerate_best_matches_brute_force():
    rng = random.Random(99)
    for _ in range(60):
        n = rng.randint(3, 6)
        h = random_hypergraph(rng, n, rng.choice([2, 3]), rng.randint(2, 7))
        for family, oracle in (
            ("lollipop", lambda: best_lollipop_key(h)),
            ("dcp", lambda: best_pair_key(h, False)),
            ("dcc", lambda: best_pair_key(h, True)),
        ):
            best = enumerate_best(h, family)
            expected = oracle()
            if expected is None:
                assert best is None
                continue
            assert best.exact and best.rank.key() == expected
            order = "S" if family == "dcc" else None
            assert rank(h, best.structure, order) == best.rank


def test_structure_json_round_trip():
    h = Hypergraph(6, C4 + ((4, 5), (4, 5)), 2)
    for family in ("lollipop", "dcp", "dcc"):
        s = enumerate_best(h, family).structure
        assert structure_from_json(structure_to_json(s)) == s


def test_s_sets_empty():
    h = Hypergraph(5, C4 + ((3, 4),), 2)
    # u_l always lies in f_(l-1), so only the trivial path avoids every f_m
    lol = Lollipop(BergeCycle((0, 1, 2, 3), (0, 1, 2, 3)), BergePath((3,), ()))
    assert s_sets(h, lol) == (frozenset(), frozenset())
    longer = Lollipop(lol.cycle, BergePath((3, 4), (4,)))
    assert s_sets(h, longer) == (frozenset(), frozenset({3}))


def test_s_sets_path_edge():
    h = Hypergraph(5, ((0, 1), (1, 2), (2, 0), (2, 3), (3, 4)), 2)
    lol = Lollipop(BergeCycle((0, 1, 2), (0, 1, 2)), BergePath((2, 3, 4), (3, 4)))
    assert s_sets(h, lol) == (frozenset(), frozenset({3}))


def test_s_sets_neighbours():
    h = Hypergraph(6, C4 + ((3, 4), (4, 5), (5, 3)), 2)
    lol = Lollipop(BergeCycle((0, 1, 2, 3), (0, 1, 2, 3)), BergePath((3, 4, 5), (4, 5)))
    assert s_sets(h, lol) == (frozenset({3}), frozenset({4}))


def test_smalldeg_flags():
    h = Hypergraph(6, C4 + ((3, 4), (4, 5), (5, 3)), 2)
    lol = Lollipop(BergeCycle((0, 1, 2, 3), (0, 1, 2, 3)), BergePath((3, 4, 5), (4, 5)))
    flags = smalldeg_flags(h, lol, 3)
    assert (flags["d_P"], flags["d_H-C-P"], flags["d_C-P"]) == (1, 1, 0)
    assert flags["i"] and flags["iii"] and flags["ii"]


def test_s_sets_bound_on_qualifying_instances():
    """On instances with delta >= k where c < min(2k, n, m), a best lollipop with
    l >= k has |S1 + S2| <= k - 1.  Such instances cannot be 2-connected, so the
    sample also includes graphs with cut vertices."""
    rng = random.Random(17)
    qualifying = 0
    for _ in range(150):
        n = rng.randint(5, 7)
        h = random_hypergraph(rng, n, 3, rng.randint(4, 9))
        k = min(min_degree(h), 4)
        if k < 3 or not is_k_connected(h, 2):
            continue
        best = enumerate_best(h, "lollipop")
        lol = best.structure
        if len(lol.cycle) >= min(2 * k, h.n, h.m) or lol.ell < k:
            continue
        qualifying += 1
        s1, s2 = s_sets(h, lol)
        assert len(s1 | s2) <= k - 1
    # the main theorem says no 2-connected instance qualifies
    assert qualifying == 0
