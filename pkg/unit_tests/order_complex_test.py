#!/usr/bin/env python

import os
import pytest
import sys

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)
sys.path.append(parent_dir)

from coverlattice import graph, lattice, order_complex  # noqa: E402
from coverlattice.order_complex import FVector  # noqa: E402
from coverlattice.rational import RationalSeries  # noqa: E402
from coverlattice.utils import LimitExceeded  # noqa: E402


@pytest.fixture
def g3():
    return graph.graph_from_poset(3, [(2, 3), (3, 2)])


def complex_of(g):
    return order_complex.order_complex(lattice.build_lattice(g))


def test_g3_f_and_h_vectors(g3):
    faces = complex_of(g3)
    assert faces.f_vector == FVector((1, 4, 5, 2), 3)
    assert order_complex.h_vector(faces.f_vector).h == (1, 1, 0, 0)
    assert order_complex.basic_h_vector(g3).h == (1, 1, 0, 0)


@pytest.mark.parametrize(
    "g, f, h",
    [
        (graph.chain_graph(3), (1, 4, 6, 4, 1), (1, 0, 0, 0, 0)),
        (graph.complete_graph(4), (1, 2, 1), (1, 0, 0)),
        (graph.antichain_graph(2), (1, 4, 5, 2), (1, 1, 0, 0)),
        (graph.antichain_graph(3), (1, 8, 19, 18, 6), (1, 4, 1, 0, 0)),
    ],
)
def test_named_vectors(g, f, h):
    faces = complex_of(g)
    assert faces.f_vector.f == f
    assert order_complex.h_vector(faces.f_vector).h == h


def test_fvector_validation():
    with pytest.raises(ValueError):
        FVector((2, 1), 1)
    with pytest.raises(ValueError):
        FVector((1, 2), 2)


def test_faces(g3):
    faces = complex_of(g3)
    listed = faces.faces()
    assert len(listed) == sum(faces.f_vector.f)
    assert () in listed
    assert (0, 1, 7) in listed
    assert (1, 6) not in listed
    with pytest.raises(LimitExceeded):
        faces.faces(limit=2)


def test_basic_cover_series(g3):
    assert order_complex.basic_cover_series(g3) == RationalSeries.of(
        [1, 1], 3
    )
    assert order_complex.basic_cover_series(g3, []) == RationalSeries.of(
        [1], 1
    )
    assert order_complex.basic_cover_series(
        graph.complete_graph(3)
    ) == RationalSeries.of([1], 2)
    # G_{2,3} is K_{2,2}.
    assert order_complex.basic_cover_series(g3, [2, 3]) == (
        RationalSeries.of([1], 2)
    )


def test_h_vector_identities_on_corpus():
    for n in range(1, 5):
        for g in graph.preorder_graphs(n):
            lat = lattice.build_lattice(g)
            r = lattice.rank(lat)
            faces = order_complex.order_complex(lat)
            h = order_complex.h_vector(faces.f_vector).h
            assert len(h) == r + 2
            assert all(v >= 0 for v in h)
            assert h[r] == 0 and h[r + 1] == 0
            assert h[1] == len(lat) - r - 1
            assert sum(h) == faces.f_vector.f[-1]
            assert sum(h) == lattice.count_maximal_chains(lat)


def test_h_vector_invariant_under_reduction():
    for g in graph.preorder_graphs(4):
        _, reduced = lattice.cm_reduce(g)
        assert (
            order_complex.basic_h_vector(g).h
            == order_complex.basic_h_vector(reduced).h
        )
