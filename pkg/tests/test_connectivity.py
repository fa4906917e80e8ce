import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from berge.connectivity import (
    AlignedPathsResult,
    Graph,
    PreconditionError,
    aligned_disjoint_paths,
    check_aligned_paths,
    hypergraph_connectivity,
    is_biconnected,
    is_k_connected,
    vertex_connectivity,
)
from berge.constructions import gen_H2, gen_Hk
from berge.core import Hypergraph, min_degree
from oracles import aligned_oracle, brute_connectivity, incidence_nx


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return n, edges


def test_small_examples():
    assert vertex_connectivity(Graph.from_edges(4, list(combinations(range(4), 2)))) == 3
    assert vertex_connectivity(Graph.from_edges(3, [(0, 1), (1, 2)])) == 1


def test_h2_incidence_graph_is_3_connected():
    h, _ = gen_H2(3, 4, 8)
    assert vertex_connectivity(Graph.from_hypergraph(h)) == 3
    assert is_k_connected(h, 3)


def test_bowtie_has_cut_vertex():
    h = Hypergraph(5, ((0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)), 2)
    assert not is_k_connected(h, 2)


def test_hk_connectivity():
    h, _ = gen_Hk(3, 3, 3)
    # blade vertices sit in one edge each, so the incidence graph has cut vertices
    assert not is_k_connected(h, 2)
    h, _ = gen_Hk(4, 4, 3)
    assert is_k_connected(h, 2)


@given(graphs())
def test_vertex_connectivity_matches_brute_force(data):
    n, edges = data
    assert vertex_connectivity(Graph.from_edges(n, edges)) == brute_connectivity(n, edges)


@given(graphs())
def test_biconnected_matches_networkx(data):
    n, edges = data
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    expected = n >= 3 and nx.is_biconnected(g)
    assert is_biconnected(Graph.from_edges(n, edges)) == expected


def test_hypergraph_connectivity_bounds():
    rng = random.Random(3)
    for _ in range(60):
        n, r = rng.randint(4, 7), rng.randint(2, 4)
        pool = list(combinations(range(n), r))
        h = Hypergraph(n, tuple(rng.sample(pool, rng.randint(1, min(10, len(pool))))), r)
        kappa = hypergraph_connectivity(h)
        assert kappa <= min(r, min_degree(h))
        assert kappa == nx.node_connectivity(incidence_nx(h))


def test_aligned_paths_c4():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert aligned_disjoint_paths(g, (0, 1, 2), 3) == AlignedPathsResult((0, 3), (0, 1, 2))


def test_aligned_paths_k4():
    g = Graph.from_edges(4, list(combinations(range(4), 2)))
    res = aligned_disjoint_paths(g, (0, 1, 2), 3)
    assert check_aligned_paths(g, (0, 1, 2), 3, res) == []


def test_aligned_paths_errors():
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    with pytest.raises(PreconditionError):
        aligned_disjoint_paths(path, (0, 1, 2), 0)
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    with pytest.raises(ValueError):
        aligned_disjoint_paths(c4, (0, 2), 3)
    with pytest.raises(ValueError):
        aligned_disjoint_paths(c4, (0, 1, 2), 2)


def test_aligned_checker_catches_problems():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert check_aligned_paths(g, (0, 1, 2), 3, AlignedPathsResult((0, 1, 2, 3), (0, 1, 2)))
    assert check_aligned_paths(g, (0, 1, 2), 3, AlignedPathsResult((0, 2), (0, 1, 2)))


def test_aligned_paths_random_graphs():
    rng = random.Random(7)
    done = 0
    while done < 150:
        n = rng.randint(3, 8)
        g = nx.gnp_random_graph(n, rng.uniform(0.4, 0.9), seed=rng.randrange(10**9))
        if not nx.is_connected(g) or not nx.is_biconnected(g):
            continue
        x, y = rng.sample(range(n), 2)
        q = tuple(rng.choice(list(nx.all_simple_paths(g, x, y))))
        z = rng.choice([v for v in range(n) if v != y])
        res = aligned_disjoint_paths(Graph.from_edges(n, list(g.edges())), q, z)
        assert aligned_oracle(g, list(q), z, res.p1, res.p2)
        done += 1
