#!/usr/bin/env python

import json
import os
import pytest
import random
import sys

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)
sys.path.append(parent_dir)

from coverlattice import graph, series  # noqa: E402
from coverlattice.graph import BipartiteGraph  # noqa: E402


@pytest.fixture
def g3():
    # x2, x3, y2, y3 induce K_{2,2}; p_1 is incomparable to both.
    return graph.graph_from_poset(3, [(2, 3), (3, 2)])


@pytest.fixture
def c4_with_pendant():
    return BipartiteGraph.of(
        3, [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 3)]
    )


def test_bipartite_graph_validation():
    with pytest.raises(ValueError):
        BipartiteGraph.of(0, [])
    with pytest.raises(ValueError):
        BipartiteGraph.of(2, [(1, 3)])


def test_g3_edges(g3):
    assert g3.sorted_edges() == [(1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]
    assert g3.satisfies_conditions()


def test_conditions():
    assert not BipartiteGraph.of(2, [(1, 1)]).satisfies_conditions()
    # (1, 2) and (2, 3) without (1, 3) breaks (b).
    g = BipartiteGraph.of(3, [(1, 1), (2, 2), (3, 3), (1, 2), (2, 3)])
    assert not g.satisfies_conditions()
    assert graph.chain_graph(3).satisfies_conditions()


def test_parse_graph():
    g = graph.parse_graph('{"n": 2, "edges": [[1, 1], [2, 2], [1, 1]]}')
    assert g == BipartiteGraph.of(2, [(1, 1), (2, 2)])


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[1, 2]",
        '{"n": true, "edges": []}',
        '{"n": 0, "edges": []}',
        '{"n": 2, "edges": {}}',
        '{"n": 2, "edges": [[1]]}',
        '{"n": 2, "edges": [[1, "2"]]}',
        '{"n": 2, "edges": [[1, 1]], "multigraph": true}',
    ],
)
def test_parse_graph_rejects(text):
    with pytest.raises(graph.GraphFormatError):
        graph.parse_graph(text)


def test_parse_graph_index_out_of_range():
    with pytest.raises(graph.GraphFormatError) as e:
        graph.parse_graph('{"n": 2, "edges": [[1, 3]]}')
    assert "out of range" in str(e.value)
    assert e.value.exit_code == 1


def test_write_graph_sorts_edges(g3):
    doc = json.loads(graph.write_graph(g3))
    assert doc == {
        "n": 3,
        "edges": [[1, 1], [2, 2], [2, 3], [3, 2], [3, 3]],
    }
    assert graph.parse_graph(graph.write_graph(g3)) == g3


def test_read_graph(tmp_path, g3):
    path = tmp_path / "g3.json"
    path.write_text(graph.write_graph(g3))
    assert graph.read_graph(str(path)) == g3


def test_isolated_vertices():
    g = BipartiteGraph.of(3, [(1, 1), (2, 2)])
    assert g.isolated_vertices() == ["x3", "y3"]


def test_drop_isolated_vertices(capsys):
    g = BipartiteGraph.of(3, [(1, 1), (3, 3)])
    dropped = graph.drop_isolated_vertices(g)
    assert dropped == BipartiteGraph.of(2, [(1, 1), (2, 2)])
    assert "x2, y2" in capsys.readouterr().err


def test_drop_isolated_vertices_unbalanced():
    path = BipartiteGraph.of(2, [(1, 1), (2, 1)])
    with pytest.raises(graph.NoPerfectMatching):
        graph.drop_isolated_vertices(path)


def test_standardize_is_identity_on_standardized(g3):
    result = graph.standardize(g3)
    assert result.graph == g3
    assert result.is_identity


def test_standardize_relabels_y_side(g3):
    # G_3 with y_1 and y_2 swapped.
    g = BipartiteGraph.of(3, [(1, 2), (2, 1), (3, 3), (2, 3), (3, 1)])
    assert not g.satisfies_conditions()
    result = graph.standardize(g)
    assert result.graph.satisfies_conditions()
    assert result.graph == g3
    assert sorted(result.y_relabeling) == [1, 2, 3]
    assert not result.is_identity


def test_standardize_path_graph():
    path = BipartiteGraph.of(2, [(1, 1), (2, 1)])
    with pytest.raises(graph.NoPerfectMatching) as e:
        graph.standardize(path)
    assert e.value.exit_code == 2


def test_standardize_not_unmixed(c4_with_pendant):
    with pytest.raises(graph.NotStandardizable) as e:
        graph.standardize(c4_with_pendant)
    assert e.value.unmixed is False
    assert e.value.exit_code == 2


def test_perfect_matchings():
    k22 = graph.complete_graph(2)
    assert sorted(graph.perfect_matchings(k22)) == [(1, 2), (2, 1)]
    assert sorted(graph.augmenting_path_matching(k22)) == [1, 2]
    assert graph.augmenting_path_matching(
        BipartiteGraph.of(2, [(1, 1), (2, 1)])
    ) is None


def test_minimal_vertex_covers():
    k11 = graph.complete_graph(1)
    assert graph.minimal_vertex_covers(k11) == [0b01, 0b10]
    assert graph.vertex_labels(1, 0b10) == frozenset({"y1"})


def test_unmixed_bruteforce(g3, c4_with_pendant):
    assert graph.is_unmixed_bruteforce(g3)
    assert not graph.is_unmixed_bruteforce(c4_with_pendant)


def test_vertex_cover_vectors(g3):
    for cover in graph.minimal_vertex_covers(g3):
        assert graph.vertex_cover_vector(g3, cover).is_cover(g3)
        assert graph.vertex_cover_vector(g3, cover, k=2).is_cover(g3)
    assert not graph.VertexCoverVector((1, 0, 0, 0, 0, 0), 1).is_cover(g3)
    with pytest.raises(ValueError):
        graph.VertexCoverVector((1, 0), 1).is_cover(g3)


def test_induced_subgraph(g3):
    sub, index_map = graph.induced_subgraph(g3, [3, 2])
    assert index_map == (2, 3)
    assert sub == graph.complete_graph(2)
    with pytest.raises(ValueError):
        graph.induced_subgraph(g3, [])


def test_has_induced_complete_pair(g3):
    assert graph.has_induced_complete_pair(g3, 2, 3)
    assert not graph.has_induced_complete_pair(g3, 1, 2)


def test_apply_permutation(g3):
    moved = graph.apply_permutation(g3, [3, 1, 2])
    assert moved.sorted_edges() == [(1, 1), (1, 2), (2, 1), (2, 2), (3, 3)]
    with pytest.raises(ValueError):
        graph.apply_permutation(g3, [1, 1, 2])


def test_posets():
    assert graph.chain_graph(3).sorted_edges() == [
        (1, 1),
        (1, 2),
        (1, 3),
        (2, 2),
        (2, 3),
        (3, 3),
    ]
    assert graph.antichain_graph(2).sorted_edges() == [(1, 1), (2, 2)]
    assert len(graph.complete_graph(3).edges) == 9
    assert graph.comes_from_chain(graph.chain_graph(4))
    assert graph.comes_from_antichain(graph.antichain_graph(4))
    assert not graph.comes_from_antichain(graph.chain_graph(2))


def test_g3_and_chain_not_isomorphic(g3):
    chain = graph.chain_graph(3)
    assert not graph.are_isomorphic(g3, chain)
    assert graph.are_isomorphic(g3, graph.apply_permutation(g3, [2, 3, 1]))


@pytest.mark.parametrize("n, count", [(1, 1), (2, 4), (3, 29), (4, 355)])
def test_preorder_graphs(n, count):
    graphs = list(graph.preorder_graphs(n))
    assert len(graphs) == count
    assert len(set(graphs)) == count


def test_preorder_graphs_are_unmixed():
    for g in graph.preorder_graphs(3):
        assert graph.is_unmixed_bruteforce(g)


def test_random_unmixed_graph():
    rng = random.Random(11)
    for _ in range(10):
        g = graph.random_unmixed_graph(5, rng)
        assert g.satisfies_conditions()
        assert graph.standardize(g).is_identity


def relabel(g, rng):
    """Permutes the x side and the y side independently."""
    sx = list(range(1, g.n + 1))
    sy = list(range(1, g.n + 1))
    rng.shuffle(sx)
    rng.shuffle(sy)
    return BipartiteGraph.of(
        g.n, ((sx[i - 1], sy[j - 1]) for i, j in g.edges)
    )


def test_standardize_two_by_two():
    g = BipartiteGraph.of(2, [(1, 2), (2, 1)])
    result = graph.standardize(g)
    assert result.graph == graph.antichain_graph(2)
    assert result.y_relabeling == (2, 1)


def test_standardize_relabeled_graphs():
    rng = random.Random(5)
    for k in range(200):
        n = 2 + k % 4
        g = graph.random_unmixed_graph(n, rng, density=0.35)
        result = graph.standardize(relabel(g, rng))
        assert result.graph.satisfies_conditions()
        assert series.vertex_cover_series(result.graph) == (
            series.vertex_cover_series(g)
        )
        again = graph.standardize(result.graph)
        assert again.is_identity
        assert again.graph == result.graph


def test_standardized_graphs_are_unmixed():
    rng = random.Random(3)
    graphs = [g for n in range(1, 5) for g in graph.preorder_graphs(n)]
    graphs += [
        graph.random_unmixed_graph(5, rng, density=0.3) for _ in range(40)
    ]
    for g in graphs:
        moved = relabel(g, rng)
        std = graph.standardize(moved).graph
        assert graph.is_unmixed_bruteforce(moved)
        assert graph.is_unmixed_bruteforce(std)


def test_induced_subgraphs_keep_conditions():
    rng = random.Random(9)
    graphs = [g for n in range(1, 5) for g in graph.preorder_graphs(n)]
    graphs += [
        graph.random_unmixed_graph(n, rng, density=0.3)
        for n in (5, 6)
        for _ in range(10)
    ]
    for g in graphs:
        for ground in range(1, 1 << g.n):
            subset = [i for i in range(1, g.n + 1) if ground >> (i - 1) & 1]
            sub, index_map = graph.induced_subgraph(g, subset)
            assert sub.satisfies_conditions()
            assert list(index_map) == subset
