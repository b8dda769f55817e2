import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamtetra.errors import NoPerfectMatching
from hamtetra.graph import RotGraph
from hamtetra.matching import check_perfect, maximum_matching, perfect_matching

from conftest import nx_to_adj, small_cubic_graphs


def has_perfect_matching_brute(adj):
    """Exhaustive: match the smallest free vertex with each free neighbor."""
    n = len(adj)

    def rec(free):
        if not free:
            return True
        v = min(free)
        return any(rec(free - {v, w}) for w in adj[v] if w in free)

    return n % 2 == 0 and rec(frozenset(range(n)))


def test_examples():
    k4 = perfect_matching(RotGraph([[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]]))
    assert len(k4) == 2
    q3 = perfect_matching(nx_to_adj(nx.hypercube_graph(3)))
    assert len(q3) == 4
    pet = perfect_matching(nx_to_adj(nx.petersen_graph()))
    assert len(pet) == 5


@pytest.mark.parametrize("name,adj", sorted(small_cubic_graphs().items()))
def test_agrees_with_exhaustive_oracle(name, adj):
    assert has_perfect_matching_brute(adj)
    m = perfect_matching(adj)
    assert len(m) == len(adj) // 2
    mate = m.mate()
    assert sorted(mate) == list(range(len(adj)))
    assert all(mate[v] in adj[v] for v in mate)


def test_no_perfect_matching_raises():
    # a star has a maximum matching of size 1
    with pytest.raises(NoPerfectMatching):
        perfect_matching([[1, 2, 3], [0], [0], [0]])
    with pytest.raises(NoPerfectMatching):
        check_perfect({0: [1], 1: [0], 2: []}, [(0, 1)])


@given(st.integers(0, 10**6), st.integers(2, 14), st.floats(0.1, 0.8))
def test_maximum_matching_size_matches_networkx(seed, n, p):
    g = nx.gnp_random_graph(n, p, seed=seed)
    adj = [sorted(g[v]) for v in range(n)]
    mate = maximum_matching(adj)
    size = sum(1 for v in range(n) if mate[v] > v)
    assert size == len(nx.max_weight_matching(g, maxcardinality=True))
    for v in range(n):
        if mate[v] != -1:
            assert mate[mate[v]] == v and mate[v] in adj[v]


@given(st.integers(0, 10**6), st.sampled_from([10, 20, 50, 120]))
def test_random_cubic_graphs(seed, n):
    g = nx.random_regular_graph(3, n, seed=seed)
    adj = [sorted(g[v]) for v in range(n)]
    if nx.has_bridges(g):
        return
    m = perfect_matching(adj)
    assert len(m) == n // 2


def test_deterministic():
    adj = nx_to_adj(nx.dodecahedral_graph())
    assert perfect_matching(adj) == perfect_matching(adj)
