import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from berge.constructions import gen_H1, gen_H2, gen_Hk
from berge.core import Hypergraph
from berge.search import (
    BergeCycle,
    BergePath,
    circumference,
    cycle_from_vertices,
    has_hamiltonian_berge_cycle,
    iter_cycle_sequences,
    longest_berge_path,
    validate_cycle,
    validate_path,
)
from oracles import berge_cycles, full_paths, random_hypergraph
from oracles import circumference as oracle_circumference


def cycle_graph(n):
    return Hypergraph(n, tuple((i, (i + 1) % n) for i in range(n)), 2)


@st.composite
def small_hypergraphs(draw):
    n = draw(st.integers(2, 7))
    r = draw(st.integers(2, min(4, n)))
    pool = list(combinations(range(n), r))
    edges = draw(st.lists(st.sampled_from(pool), max_size=8))
    return Hypergraph(n, tuple(edges), r)


def canonical(vs):
    """Least rotation/reflection with the least vertex first."""
    c = len(vs)
    i = vs.index(min(vs))
    fwd = vs[i:] + vs[:i]
    if c <= 2:
        return fwd
    bwd = (fwd[0],) + tuple(reversed(fwd[1:]))
    return min(fwd, bwd)


def test_validate_cycle_triangle():
    tri = Hypergraph(3, ((0, 1), (1, 2), (0, 2)), 2)
    assert validate_cycle(tri, BergeCycle((0, 1, 2), (0, 1, 2)))
    assert not validate_cycle(tri, BergeCycle((0, 1, 2), (0, 1, 1)))
    assert not validate_cycle(tri, BergeCycle((0, 1, 2), (1, 0, 2)))


def test_hk_blade_cycles():
    # with k = 3 each blade vertex lies in a single edge, so no cycle passes through a blade
    h, _ = gen_Hk(3, 3, 2)
    assert all(len(vs) == 2 for vs, _ in berge_cycles(h))
    # with k = 4 the cycle x, blade 1, y, blade 2 exists
    h, _ = gen_Hk(4, 4, 2)
    c = cycle_from_vertices(h, (0, 2, 1, 5))
    assert c is not None and validate_cycle(h, c)


def test_length_two_cycle():
    h = Hypergraph(3, ((0, 1, 2), (0, 1, 2)), 3)
    res = circumference(h)
    assert res.length == 2 and validate_cycle(h, res.witness)


@pytest.mark.parametrize(
    "h, expected",
    [
        (cycle_graph(5), 5),
        (gen_Hk(4, 4, 2)[0], 6),
        (gen_H2(3, 4, 8)[0], 6),
        (Hypergraph(4, (), 2), 0),
        (Hypergraph(4, ((0, 1), (0, 2), (0, 3)), 2), 0),
    ],
)
def test_circumference_examples(h, expected):
    res = circumference(h)
    assert res.length == expected and res.exact
    assert res.length == oracle_circumference(h)


@given(small_hypergraphs())
@settings(max_examples=150)
def test_circumference_matches_incidence_graph(h):
    res = circumference(h)
    assert res.exact
    assert res.length == oracle_circumference(h)
    assert res.length <= min(h.n, h.m)
    if res.length:
        assert validate_cycle(h, res.witness)
        longest = sorted(canonical(vs) for vs, _ in berge_cycles(h) if len(vs) == res.length)
        assert res.witness.vertices == longest[0]
    else:
        assert res.witness is None


def test_adding_an_edge_never_shortens():
    rng = random.Random(11)
    for _ in range(80):
        h = random_hypergraph(rng, rng.randint(4, 7), 3, rng.randint(2, 7))
        pool = list(combinations(range(h.n), 3))
        bigger = Hypergraph(h.n, h.edges + (rng.choice(pool),), 3)
        assert circumference(bigger).length >= circumference(h).length


def test_budget_exhaustion_is_flagged():
    h, _ = gen_H2(3, 5, 10)
    res = circumference(h, budget=5)
    assert not res.exact
    assert res.witness is None or validate_cycle(h, res.witness)


@given(small_hypergraphs(), st.integers(2, 7))
@settings(max_examples=80)
def test_cycle_sequences_match_oracle(h, length):
    got = list(iter_cycle_sequences(h, length))
    assert got == sorted(got)
    expected = sorted({canonical(vs) for vs, _ in berge_cycles(h) if len(vs) == length})
    assert got == expected


def test_longest_path_examples():
    assert longest_berge_path(Hypergraph(3, ((0, 1, 2),), 3)).length == 1
    p4 = Hypergraph(4, ((0, 1), (1, 2), (2, 3)), 2)
    res = longest_berge_path(p4)
    assert res.length == 3 and validate_path(p4, res.witness)


def test_longest_path_h1():
    h, _ = gen_H1(3, 4, 2)
    brute = max(len(pe) for s in range(h.n) for _, pe in full_paths(h, s))
    assert longest_berge_path(h).length == brute


@given(small_hypergraphs())
@settings(max_examples=80)
def test_longest_path_matches_brute_force(h):
    brute = max(len(pe) for s in range(h.n) for _, pe in full_paths(h, s))
    res = longest_berge_path(h)
    assert res.length == brute and validate_path(h, res.witness)


def test_partial_path_validation():
    h = Hypergraph(4, ((0, 1, 2), (2, 3, 1)), 3)
    assert validate_path(h, BergePath((2, 3), (0, 1), "partial"))
    assert not validate_path(h, BergePath((3, 2), (0, 1), "partial"))
    assert not validate_path(h, BergePath((2,), (0, 1), "partial"))


def test_hamiltonian_examples():
    k5 = Hypergraph(5, tuple(combinations(range(5), 3)), 3)
    assert has_hamiltonian_berge_cycle(k5)
    star = Hypergraph(4, ((0, 1), (0, 2), (0, 3)), 2)
    assert not has_hamiltonian_berge_cycle(star)


def test_hamiltonian_above_threshold():
    # n = 7, r = 3: delta >= C(3, 2) + 1 = 4 forces a hamiltonian Berge cycle
    rng = random.Random(5)
    pool = list(combinations(range(7), 3))
    tried = 0
    while tried < 20:
        edges = rng.sample(pool, rng.randint(10, len(pool)))
        h = Hypergraph(7, tuple(edges), 3)
        if min(h.degree(v) for v in range(7)) < 4:
            continue
        tried += 1
        assert has_hamiltonian_berge_cycle(h)


def test_cycle_json_round_trip():
    c = BergeCycle((0, 1, 2), (0, 1, 2))
    assert BergeCycle.from_json(c.to_json()) == c
    assert c.to_json() == {"length": 3, "vertices": [0, 1, 2], "edges": [0, 1, 2]}
