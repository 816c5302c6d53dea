"""Tests for branching-program construction, validation, and compilation."""

import itertools

import pytest

from bplab.bp import (
    Nfbdd,
    Nrobp,
    best_order_size,
    bp_equivalence,
    bp_satisfying_set,
    is_uniform,
    nfbdd_compile,
    path_literals,
    root_leaf_paths,
    uniformize,
    validate_nrobp,
)
from bplab.graphs import (
    cnf_from_graph,
    complete_graph,
    cycle_graph,
    path_graph,
)
from bplab.suites import random_read_once_program

from oracles import accepted_masks, atlas_connected, vertex_cover_masks


def _masks(assignments):
    return {sum(1 << v for v in a.positives()) for a in assignments}


def test_nrobp_constructor_and_sizes():
    z = Nrobp(3, [(0, 1, 1), (0, 1, -1), (1, 2, None)], 0, 2, 1)
    assert z.size_nodes == 3
    assert z.size_edges == 3
    assert z.num_vars == 1
    assert z.edges == ((0, 1, 1), (0, 1, -1), (1, 2, None))
    assert z.out_edges[0] == (0, 1)
    assert z.in_edges[1] == (0, 1)

    with pytest.raises(ValueError, match="need at least one node"):
        Nrobp(0, [], 0, 0, 0)
    with pytest.raises(ValueError, match="root 3 out of range"):
        Nrobp(3, [], 3, 2, 0)
    with pytest.raises(ValueError, match="leaf -1 out of range"):
        Nrobp(3, [], 0, -1, 0)
    with pytest.raises(ValueError, match=r"edge \(0, 5\) out of range"):
        Nrobp(3, [(0, 5, None)], 0, 2, 0)
    with pytest.raises(ValueError, match="label 2 out of range for 1 variables"):
        Nrobp(3, [(0, 1, 2)], 0, 2, 1)
    with pytest.raises(ValueError, match="label 0 out of range"):
        Nrobp(3, [(0, 1, 0)], 0, 2, 1)
    with pytest.raises(ValueError, match="variable count must be nonnegative"):
        Nrobp(1, [], 0, 0, -1)


def test_validate_reports_each_defect():
    cases = [
        (Nrobp(3, [(0, 1, None), (1, 2, None), (1, 1, None)], 0, 2, 1),
         "cycle through nodes"),
        (Nrobp(3, [(0, 2, None), (1, 2, None)], 0, 2, 1),
         "node 1 has no incoming edges but is not the root"),
        (Nrobp(3, [(0, 1, None), (1, 2, None)], 1, 2, 1),
         "declared root 1 has incoming edges"),
        (Nrobp(3, [(0, 1, None), (0, 2, None)], 0, 2, 1),
         "node 1 has no outgoing edges but is not the leaf"),
        (Nrobp(3, [(0, 1, None), (1, 2, None)], 0, 1, 1),
         "declared leaf 1 has outgoing edges"),
        (Nrobp(3, [(0, 1, 1), (1, 2, 1)], 0, 2, 1),
         "variable 0 is read twice along the path through nodes [0, 1, 2]"),
    ]
    for z, expected in cases:
        rep = validate_nrobp(z)
        assert not rep.ok
        assert any(expected in v for v in rep.violations)

    rep = validate_nrobp(Nrobp(4, [(0, 1, None), (2, 3, None)], 0, 1, 1))
    assert any("node 2 is disconnected from the root" in v for v in rep.violations)
    assert any("node 3 is disconnected from the root" in v for v in rep.violations)

    good = Nrobp(3, [(0, 1, 1), (0, 1, -1), (1, 2, 2), (1, 2, -2)], 0, 2, 2)
    assert validate_nrobp(good).ok
    assert validate_nrobp(good).violations == []


def test_is_uniform():
    chain = Nrobp(3, [(0, 1, 1), (0, 1, -1), (1, 2, 2), (1, 2, -2)], 0, 2, 2)
    assert is_uniform(chain)

    # the single path reads nothing but two variables exist
    assert not is_uniform(Nrobp(1, [], 0, 0, 2))

    # two root-leaf paths that read different variable sets
    skew = Nrobp(3, [(0, 1, 1), (1, 2, 2), (0, 2, 2)], 0, 2, 2)
    assert not is_uniform(skew)

    broken = Nrobp(3, [(0, 1, 1), (1, 2, 1)], 0, 2, 1)
    with pytest.raises(ValueError, match="program is not a valid NROBP"):
        is_uniform(broken)


def test_uniformize_preserves_satisfying_set():
    for seed in range(60):
        num_vars = 2 + seed % 5
        z = random_read_once_program(num_vars, seed=seed)
        assert validate_nrobp(z).ok
        u = uniformize(z)
        assert validate_nrobp(u).ok
        assert is_uniform(u)
        assert u.size_edges <= (2 * num_vars + 1) * max(z.size_edges, 1)
        assert bp_satisfying_set(u) == bp_satisfying_set(z)
        assert _masks(bp_satisfying_set(u)) == accepted_masks(z)


def test_uniformize_uniform_input_keeps_size():
    z = nfbdd_compile(cnf_from_graph(complete_graph(2)))
    assert is_uniform(z)
    u = uniformize(z)
    assert (u.size_nodes, u.size_edges) == (z.size_nodes, z.size_edges)
    assert bp_satisfying_set(u) == bp_satisfying_set(z)


def test_uniformize_single_node_program():
    one = Nrobp(1, [], 0, 0, 2)
    u = uniformize(one)
    assert validate_nrobp(u).ok
    assert is_uniform(u)
    assert (u.size_nodes, u.size_edges) == (3, 4)
    assert len(bp_satisfying_set(u)) == 4


def test_nfbdd_compile_smallest_graph():
    z = nfbdd_compile(cnf_from_graph(complete_graph(2)))
    assert (z.size_nodes, z.size_edges) == (4, 5)
    assert z.edges == ((0, 1, 1), (0, 2, -1), (1, 3, 2), (1, 3, -2), (2, 3, 2))
    assert z.var_of == (0, 1, 1, None)
    assert _masks(bp_satisfying_set(z)) == {0b01, 0b10, 0b11}


def test_nfbdd_compile_sizes_frozen():
    expected = {
        "K2": (complete_graph(2), 4, 5),
        "P3": (path_graph(3), 6, 8),
        "P4": (path_graph(4), 8, 11),
        "K3": (complete_graph(3), 6, 8),
        "C4": (cycle_graph(4), 9, 13),
        "K4": (complete_graph(4), 8, 11),
        "C6": (cycle_graph(6), 17, 25),
        "C8": (cycle_graph(8), 25, 37),
    }
    for name, (g, nodes, edges) in expected.items():
        z = nfbdd_compile(cnf_from_graph(g))
        assert (z.size_nodes, z.size_edges) == (nodes, edges), name
        assert _masks(bp_satisfying_set(z)) == vertex_cover_masks(g), name


def test_nfbdd_compile_accepts_vertex_covers_on_atlas():
    for g in atlas_connected(2, 5):
        z = nfbdd_compile(cnf_from_graph(g))
        assert validate_nrobp(z).ok
        assert is_uniform(z)
        assert _masks(bp_satisfying_set(z)) == vertex_cover_masks(g)


def test_nfbdd_compile_order_argument():
    cnf = cnf_from_graph(cycle_graph(4))
    z = nfbdd_compile(cnf, order=(3, 1, 2, 0))
    assert z.size_edges == 12
    assert _masks(bp_satisfying_set(z)) == vertex_cover_masks(cycle_graph(4))
    with pytest.raises(ValueError, match=r"order \(0, 0, 1\) is not a permutation"):
        nfbdd_compile(cnf_from_graph(path_graph(3)), order=(0, 0, 1))
    with pytest.raises(ValueError, match="is not a permutation"):
        nfbdd_compile(cnf, order=(0, 1, 2))


def test_nfbdd_constructor_rejections():
    with pytest.raises(ValueError, match="node 0 has an unlabeled out-edge"):
        Nfbdd(2, [(0, 1, None)], 0, 1, 1)
    with pytest.raises(ValueError, match="node 0 has out-degree 3"):
        Nfbdd(2, [(0, 1, 1), (0, 1, -1), (0, 1, 1)], 0, 1, 1)
    with pytest.raises(ValueError, match=r"node 0 reads two variables \[0, 1\]"):
        Nfbdd(3, [(0, 1, 1), (0, 1, 2), (1, 2, 3), (1, 2, -3)], 0, 2, 3)
    with pytest.raises(ValueError, match="node 0 does not carry opposite literals"):
        Nfbdd(2, [(0, 1, 1), (0, 1, 1)], 0, 1, 1)
    with pytest.raises(ValueError, match="program is not uniform"):
        Nfbdd(2, [(0, 1, 1)], 0, 1, 2)
    with pytest.raises(ValueError, match="not a valid NROBP"):
        Nfbdd(3, [(0, 1, 1), (1, 2, 1), (1, 2, -1)], 0, 2, 1)


def test_best_order_size_frozen_and_capped():
    assert best_order_size(cnf_from_graph(cycle_graph(4))) == (12, (3, 1, 2, 0))
    with pytest.raises(ValueError, match="13 variables exceed the order-search cap 12"):
        best_order_size(cnf_from_graph(path_graph(13)))
    with pytest.raises(ValueError, match="exceed the order-search cap 3"):
        best_order_size(cnf_from_graph(path_graph(4)), cap=3)


def test_best_order_size_matches_permutation_minimum():
    sample = atlas_connected(2, 4) + atlas_connected(5, 5)[:5]
    for g in sample:
        cnf = cnf_from_graph(g)
        best, order = best_order_size(cnf)
        brute = min(
            nfbdd_compile(cnf, order=perm).size_edges
            for perm in itertools.permutations(range(g.n))
        )
        assert best == brute
        assert nfbdd_compile(cnf, order=order).size_edges == best


def test_bp_equivalence():
    cnf = cnf_from_graph(path_graph(4))
    a = nfbdd_compile(cnf)
    b = nfbdd_compile(cnf, order=(3, 1, 2, 0))
    assert bp_equivalence(a, b)

    c = nfbdd_compile(cnf_from_graph(cycle_graph(4)))
    assert not bp_equivalence(a, c)

    d = nfbdd_compile(cnf_from_graph(path_graph(3)))
    with pytest.raises(ValueError, match="variable universes differ: 3 vs 4"):
        bp_equivalence(d, a)


def test_root_leaf_paths_and_literals():
    z = nfbdd_compile(cnf_from_graph(complete_graph(2)))
    paths = root_leaf_paths(z)
    assert paths == [(0, 2), (0, 3), (1, 4)]
    assert path_literals(z, paths[0]) == frozenset({1, 2})
    assert path_literals(z, paths[1]) == frozenset({1, -2})
    assert path_literals(z, paths[2]) == frozenset({-1, 2})
    with pytest.raises(ValueError, match="more than 2 root-leaf paths"):
        root_leaf_paths(z, cap=2)


def test_bp_satisfying_set_matches_path_semantics():
    for seed in range(20):
        z = random_read_once_program(3 + seed % 3, seed=100 + seed)
        assert _masks(bp_satisfying_set(z)) == accepted_masks(z)
    big = nfbdd_compile(cnf_from_graph(path_graph(4)))
    with pytest.raises(ValueError, match="refusing exhaustive enumeration"):
        bp_satisfying_set(big, cap=3)
