import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from uniwiener.graph_core import (
    LEAF,
    GraphError,
    NotUnicyclicError,
    RootedTree,
    UnicyclicGraph,
    canonical_form,
    canonical_shape,
    centroid,
    compose,
    decompose,
    distance_sums,
    from_edges_with_map,
    path_shape,
    position_label,
    shape_code,
    shape_wiener,
    star_shape,
    to_dot,
    vertex_distance_sum,
    wiener_by_bfs,
)

from helpers import nx_wiener, random_unicyclic, to_nx


def path_adj(n):
    return [[u for u in (v - 1, v + 1) if 0 <= u < n] for v in range(n)]


def star_adj(leaves):
    return [list(range(1, leaves + 1))] + [[0] for _ in range(leaves)]


def square_with_adjacent_pendants():
    # cycle 0-1-2-3, pendant 4 on 0 and pendant 5 on 1
    return UnicyclicGraph.from_shapes([(LEAF,), (LEAF,), LEAF, LEAF])


# --------------------------------------------------------------------------
# shapes and rooted trees


def test_shape_basics():
    assert shape_wiener(path_shape(3)) == 10
    assert shape_wiener(star_shape(3)) == 9
    assert shape_wiener(LEAF) == 0
    assert canonical_shape(((), ((),))) == (((),), ())
    assert shape_code(canonical_shape(((), ((),)))) == "((())())"


def test_rooted_tree_from_parents():
    # spider with legs of length 2
    T = RootedTree.from_parents([-1, 0, 0, 0, 1, 2, 3])
    assert T.order == 7
    assert T.height == 2
    assert T.wiener == 48
    assert T.root_degree == 3
    assert sorted(T.degrees, reverse=True) == [3, 2, 2, 2, 1, 1, 1]
    assert T.root_distance_sum == 9
    assert T.depths == (0, 1, 1, 1, 2, 2, 2)
    assert T.subtree_sizes[0] == 7


def test_rooted_tree_canonical_child_order():
    T = RootedTree((LEAF, path_shape(2), star_shape(2)))
    # larger subtrees first, then larger root degree
    assert [len(c) for c in T.shape] == [2, 1, 0]


def test_rooted_tree_errors():
    with pytest.raises(GraphError):
        RootedTree.from_parents([-1, -1])
    with pytest.raises(GraphError):
        RootedTree.from_adjacency([[1], [0], []], 0)
    with pytest.raises(GraphError):
        RootedTree.from_adjacency([[1, 2], [0, 2], [0, 1]], 0)


def test_pseudo_leaf():
    T = RootedTree.from_parents([-1, 0, 1, 1, 0])
    # vertex 1 has two leaf children and its parent
    assert T.is_pseudo_leaf(1)
    assert not T.is_pseudo_leaf(2)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=25), st.randoms(use_true_random=False))
def test_rooted_tree_matches_networkx(n, rnd):
    tree = nx.random_labeled_tree(n, seed=rnd.randrange(10**6)) if hasattr(nx, "random_labeled_tree") else nx.random_tree(n, seed=rnd.randrange(10**6))
    adj = [list(tree.neighbors(v)) for v in range(n)]
    T = RootedTree.from_adjacency(adj, 0)
    assert T.wiener == int(nx.wiener_index(tree))
    assert T.root_distance_sum == sum(nx.single_source_shortest_path_length(tree, 0).values())
    assert T.height == max(nx.single_source_shortest_path_length(tree, 0).values())
    assert sorted(T.degrees) == sorted(d for _, d in tree.degree())


# --------------------------------------------------------------------------
# distances


def test_wiener_by_bfs_examples():
    assert wiener_by_bfs(UnicyclicGraph.cycle(4)) == 8
    assert wiener_by_bfs(path_adj(4)) == 10
    assert wiener_by_bfs(star_adj(3)) == 9


def test_vertex_distance_sum_examples():
    assert vertex_distance_sum(star_adj(3), 0) == 3
    assert vertex_distance_sum(path_adj(4), 0) == 6
    C5 = UnicyclicGraph.cycle(5)
    assert all(vertex_distance_sum(C5, v) == 6 for v in range(5))


def test_distance_errors():
    with pytest.raises(GraphError):
        vertex_distance_sum(path_adj(3), 7)
    with pytest.raises(GraphError):
        wiener_by_bfs([[1], [0], []])


def test_centroid_examples():
    rep = centroid(path_adj(5))
    assert rep.vertices == (2,) and rep.tag == "K1"

    G = square_with_adjacent_pendants()
    rep = centroid(G)
    assert rep.tag == "K2"
    assert set(rep.vertices) == {0, 1}
    assert sorted(rep.distance_sums) == [7, 7, 9, 9, 11, 11]

    rep = centroid(UnicyclicGraph.cycle(6))
    assert rep.tag == "cycle-subset"
    assert rep.vertices == tuple(range(6))


def test_twice_wiener_is_sum_of_distance_sums():
    rng = random.Random(11)
    for _ in range(200):
        G, _, _ = random_unicyclic(rng.randrange(3, 25), rng)
        assert 2 * wiener_by_bfs(G) == sum(distance_sums(G))
        assert wiener_by_bfs(G) == nx_wiener(G)


# --------------------------------------------------------------------------
# structured unicyclic graphs


def test_structured_graph_views():
    G = square_with_adjacent_pendants()
    assert G.girth == 4
    assert G.n == 6
    assert len(G.edges) == 6
    assert G.cycle_degrees == (3, 3, 2, 2)
    assert G.branch_orders == (2, 2, 1, 1)
    assert G.degree_sequence().degrees == (3, 3, 2, 2, 1, 1)
    assert G.branch_of(4) == 0 and G.branch_of(5) == 1 and G.branch_of(2) == 2
    H = to_nx(G)
    assert len(nx.cycle_basis(H)) == 1


def test_girth_too_small():
    with pytest.raises(GraphError):
        UnicyclicGraph.from_shapes([LEAF, LEAF])


def test_position_labels():
    assert UnicyclicGraph.cycle(6).position_labels() == ("u1", "w1", "w2", "w3", "u3", "u2")
    assert UnicyclicGraph.cycle(5).position_labels() == ("u1", "w1", "w2", "u3", "u2")
    assert position_label(0, 3) == "u1"


def test_decompose_examples():
    dec = decompose(square_with_adjacent_pendants())
    assert dec.ell == (1, 1, 0, 0)
    assert dec.alpha == (1, 1, 0, 0)
    dec = decompose(UnicyclicGraph.cycle(7))
    assert dec.ell == (0,) * 7 and dec.alpha == (0,) * 7
    dec = decompose(UnicyclicGraph.from_shapes([path_shape(2), LEAF, LEAF]))
    assert dec.ell == (2, 0, 0)
    assert dec.alpha == (3, 0, 0)
    assert dec.distance_table[0] == (0, 1, 1)


def test_decompose_raw_edges():
    dec = decompose((5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]))
    assert sorted(dec.ell) == [0, 0, 2]
    assert sorted(dec.alpha) == [0, 0, 3]


def test_decompose_compose_round_trip():
    rng = random.Random(5)
    for _ in range(100):
        G, _, _ = random_unicyclic(rng.randrange(3, 20), rng)
        assert compose(G.shapes) == G
        dec = decompose(G)
        assert dec.n == G.n
        assert dec.ell == tuple(b.order - 1 for b in G.branches)


@pytest.mark.parametrize("edges,n", [
    ([(0, 1), (1, 2)], 3),
    ([(0, 1), (1, 2), (2, 0), (0, 1)], 3),
    ([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)], 6),
    ([(0, 0), (0, 1)], 2),
])
def test_from_edges_rejects(edges, n):
    with pytest.raises(NotUnicyclicError):
        UnicyclicGraph.from_edges(n, edges)


def test_from_edges_map_preserves_adjacency():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randrange(3, 30)
        G, edges, mapping = random_unicyclic(n, rng)
        mapped = {frozenset((mapping[a], mapping[b])) for a, b in edges}
        assert mapped == {frozenset(e) for e in G.edges}


# --------------------------------------------------------------------------
# canonical form


def test_canonical_form_distinguishes_the_two_optima():
    a = UnicyclicGraph.from_shapes([((LEAF, LEAF), (LEAF, LEAF)), ((LEAF, LEAF),), (LEAF,), LEAF, (LEAF,), ((LEAF,),)])
    b = UnicyclicGraph.from_shapes([((LEAF, LEAF), (LEAF, LEAF)), ((LEAF,),), (LEAF,), (LEAF,), (LEAF,), ((LEAF,),)])
    assert canonical_form(a) != canonical_form(b)
    assert nx_wiener(a) == nx_wiener(b) == 572
    assert not nx.is_isomorphic(to_nx(a), to_nx(b))


def test_canonical_form_rotation_of_pendant_cycle():
    G = UnicyclicGraph.from_shapes([(LEAF,)] + [LEAF] * 5)
    assert canonical_form(G) == canonical_form(G.dihedral(1))


def test_canonical_form_invariant_under_relabelling():
    rng = random.Random(17)
    for _ in range(300):
        n = rng.randrange(3, 22)
        G, edges, _ = random_unicyclic(n, rng)
        perm = list(range(n))
        rng.shuffle(perm)
        relabelled = [(perm[a], perm[b]) for a, b in edges]
        rng.shuffle(relabelled)
        H = UnicyclicGraph.from_edges(n, relabelled)
        assert canonical_form(G) == canonical_form(H)
        shift = rng.randrange(G.girth)
        assert canonical_form(G.dihedral(shift, rng.random() < 0.5)) == canonical_form(G)


def test_canonical_form_agrees_with_isomorphism():
    rng = random.Random(23)
    graphs = [random_unicyclic(rng.randrange(5, 9), rng)[0] for _ in range(150)]
    for i in range(0, len(graphs), 2):
        G, H = graphs[i], graphs[i + 1]
        same = canonical_form(G) == canonical_form(H)
        assert same == nx.is_isomorphic(to_nx(G), to_nx(H))


# --------------------------------------------------------------------------
# DOT output


def test_dot_output():
    text = to_dot(square_with_adjacent_pendants(), "sq")
    assert text.startswith('graph "sq" {')
    assert '0 [label="u1 (d=3)", shape=doublecircle];' in text
    assert "0 -- 1 [penwidth=2];" in text
    assert text.count("--") == 6
    tree_text = to_dot(path_adj(3))
    assert tree_text.count("--") == 2
