import itertools

import pytest

from minorflow.spqr import P, Q, R, S, check_spqr_axioms, reassemble, spqr


def adj_of(pairs):
    adj = {}
    for u, v in pairs:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def random_biconnected(rng, n):
    # Hamiltonian cycle plus random chords: biconnected by construction.
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = {frozenset((perm[i], perm[(i + 1) % n])) for i in range(n)}
    for _ in range(rng.randint(0, n)):
        u, v = rng.sample(range(n), 2)
        pairs.add(frozenset((u, v)))
    return adj_of(tuple(sorted(p)) for p in pairs)


def kinds(tree):
    return sorted(node.kind for node in tree.nodes.values())


def test_k4_is_one_r_node():
    adj = adj_of(itertools.combinations(range(4), 2))
    tree = spqr(adj)
    assert kinds(tree) == [R]
    assert check_spqr_axioms(tree, adj) == []


def test_cycle_is_one_s_node():
    adj = adj_of([(i, (i + 1) % 6) for i in range(6)])
    tree = spqr(adj)
    assert kinds(tree) == [S]
    assert check_spqr_axioms(tree, adj) == []


def test_two_triangles_sharing_an_edge():
    adj = adj_of([(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    tree = spqr(adj)
    assert kinds(tree) == [P, S, S]
    assert check_spqr_axioms(tree, adj) == []
    assert reassemble(tree) == {frozenset(p) for p in [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]}


def test_single_edge_gives_q_node():
    tree = spqr({0: {1}, 1: {0}})
    assert kinds(tree) == [Q]


def test_non_biconnected_input_raises():
    with pytest.raises(ValueError):
        spqr(adj_of([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]))


def test_axioms_and_reassembly_on_random_graphs(rng):
    for _ in range(120):
        adj = random_biconnected(rng, rng.randint(3, 24))
        tree = spqr(adj)
        assert check_spqr_axioms(tree, adj) == []
