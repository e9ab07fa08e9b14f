"""This file includes the bipartite graph type, its file format and the
standardization into a bipartition satisfying conditions (a) and (b).

A graph on n matched pairs has vertices x_1..x_n and y_1..y_n. An edge is
stored as the ordered pair (i, j) meaning {x_i, y_j}; the orientation matters
because condition (b) is not symmetric in the two sides.

Vertex sets are bitmasks over 2n bits: bit i - 1 is x_i, bit n + j - 1 is y_j.
"""

import itertools
import json
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple

import networkx as nx
from networkx.algorithms import bipartite

from coverlattice import global_vars
from coverlattice.utils import (
    CoverLatticeError,
    check_limit,
    popcount,
    warn,
)


class GraphFormatError(CoverLatticeError):
    pass


class NoPerfectMatching(CoverLatticeError):
    exit_code = 2


class NotStandardizable(CoverLatticeError):
    """No tried perfect matching yields condition (b).

    `unmixed` is the brute-force unmixedness verdict, or None when the graph
    is too large for the exhaustive oracle.
    """

    exit_code = 2

    def __init__(self, msg, unmixed=None):
        super().__init__(msg)
        self.unmixed = unmixed


@dataclass(frozen=True)
class BipartiteGraph:
    n: int
    edges: FrozenSet[Tuple[int, int]]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("A graph needs n >= 1, got {}".format(self.n))
        for i, j in self.edges:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(
                    "Edge ({}, {}) out of range 1..{}".format(i, j, self.n)
                )

    @classmethod
    def of(cls, n, edges):
        return cls(n, frozenset((int(i), int(j)) for i, j in edges))

    def has_edge(self, i, j):
        return (i, j) in self.edges

    def x_neighbors(self, i):
        return sorted(j for a, j in self.edges if a == i)

    def sorted_edges(self):
        return sorted(self.edges)

    def isolated_vertices(self):
        """Returns labels such as "x3" and "y1" of vertices without edges."""
        xs = {i for i, _ in self.edges}
        ys = {j for _, j in self.edges}
        out = ["x{}".format(i) for i in range(1, self.n + 1) if i not in xs]
        out += ["y{}".format(j) for j in range(1, self.n + 1) if j not in ys]
        return out

    def satisfies_conditions(self):
        """Checks (a): every (i, i) is an edge, and (b): (i, j) and (j, k)
        force (i, k) for distinct i, j, k."""
        if any((i, i) not in self.edges for i in range(1, self.n + 1)):
            return False
        for i, j in self.edges:
            if i == j:
                continue
            for k in self.x_neighbors(j):
                if k != i and k != j and (i, k) not in self.edges:
                    return False
        return True

    def to_networkx(self):
        g = nx.Graph()
        g.add_nodes_from((("x", i) for i in range(1, self.n + 1)), bipartite=0)
        g.add_nodes_from((("y", j) for j in range(1, self.n + 1)), bipartite=1)
        g.add_edges_from((("x", i), ("y", j)) for i, j in self.edges)
        return g


@dataclass(frozen=True)
class VertexCoverVector:
    c: Tuple[int, ...]
    k: int

    def is_cover(self, graph):
        n = graph.n
        if len(self.c) != 2 * n:
            raise ValueError("Cover vector needs {} entries".format(2 * n))
        return all(
            self.c[i - 1] + self.c[n + j - 1] >= self.k for i, j in graph.edges
        )


@dataclass(frozen=True)
class Standardization:
    graph: BipartiteGraph
    # y_relabeling[j - 1] is the new index of y_j; x indices are kept.
    y_relabeling: Tuple[int, ...]

    @property
    def is_identity(self):
        return all(j == k for j, k in enumerate(self.y_relabeling, 1))


def vertex_label(n, bit):
    return "x{}".format(bit + 1) if bit < n else "y{}".format(bit - n + 1)


def vertex_labels(n, mask):
    return frozenset(
        vertex_label(n, bit) for bit in range(2 * n) if mask >> bit & 1
    )


def vertex_cover_vector(graph, cover_mask, k=1):
    c = tuple(k if cover_mask >> bit & 1 else 0 for bit in range(2 * graph.n))
    return VertexCoverVector(c, k)


def parse_graph(text):
    """Parses the JSON graph format {"n": int, "edges": [[i, j], ...]}.

    Duplicate edges are dropped silently.
    """
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, TypeError) as e:
        raise GraphFormatError("Malformed graph document: {}".format(e))
    if not isinstance(doc, dict):
        raise GraphFormatError("Graph document must be a JSON object")
    if doc.get("multigraph"):
        raise GraphFormatError("Multigraphs are not supported")

    n = doc.get("n")
    if not _is_int(n):
        raise GraphFormatError("Field n must be an integer, got {!r}".format(n))
    if n < 1:
        raise GraphFormatError("Field n must be at least 1, got {}".format(n))

    edges = doc.get("edges")
    if not isinstance(edges, list):
        raise GraphFormatError("Field edges must be a list")
    pairs = set()
    for edge in edges:
        if (
            not isinstance(edge, list)
            or len(edge) != 2
            or not all(_is_int(v) for v in edge)
        ):
            raise GraphFormatError("Malformed edge {!r}".format(edge))
        i, j = edge
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphFormatError(
                "Edge [{}, {}] has an index out of range 1..{}".format(i, j, n)
            )
        pairs.add((i, j))
    return BipartiteGraph(n, frozenset(pairs))


def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)


def read_graph(path):
    with open(path, encoding="utf-8") as f:
        return parse_graph(f.read())


def write_graph(graph):
    return json.dumps(
        {"n": graph.n, "edges": [list(e) for e in graph.sorted_edges()]}
    )


def drop_isolated_vertices(graph):
    """Removes isolated vertices and reindexes each side compactly."""
    isolated = graph.isolated_vertices()
    if not isolated:
        return graph
    xs = sorted({i for i, _ in graph.edges})
    ys = sorted({j for _, j in graph.edges})
    if len(xs) != len(ys) or not xs:
        raise NoPerfectMatching(
            "Dropping isolated vertices {} leaves {} x and {} y "
            "vertices".format(", ".join(isolated), len(xs), len(ys))
        )
    warn("Dropping isolated vertices: {}".format(", ".join(isolated)))
    x_index = {i: k for k, i in enumerate(xs, 1)}
    y_index = {j: k for k, j in enumerate(ys, 1)}
    return BipartiteGraph.of(
        len(xs), ((x_index[i], y_index[j]) for i, j in graph.edges)
    )


def perfect_matchings(graph) -> Iterator[Tuple[int, ...]]:
    """Yields every perfect matching as m with x_i matched to y_{m[i - 1]}."""
    n = graph.n
    neighbors = [graph.x_neighbors(i) for i in range(1, n + 1)]
    used = set()
    current: List[int] = []

    def extend(i):
        if i > n:
            yield tuple(current)
            return
        for j in neighbors[i - 1]:
            if j in used:
                continue
            used.add(j)
            current.append(j)
            yield from extend(i + 1)
            current.pop()
            used.discard(j)

    yield from extend(1)


def augmenting_path_matching(graph) -> Optional[Tuple[int, ...]]:
    """Returns a perfect matching found by Hopcroft-Karp, or None."""
    g = graph.to_networkx()
    top = [("x", i) for i in range(1, graph.n + 1)]
    matching = bipartite.hopcroft_karp_matching(g, top_nodes=top)
    if any(x not in matching for x in top):
        return None
    return tuple(matching[x][1] for x in top)


def _candidate_matchings(graph, first):
    diagonal = tuple(range(1, graph.n + 1))
    seen = set()
    head = [first]
    if all(graph.has_edge(i, i) for i in diagonal):
        head.insert(0, diagonal)
    for matching in itertools.chain(head, perfect_matchings(graph)):
        if matching not in seen:
            seen.add(matching)
            yield matching


def _align(graph, matching):
    y_relabeling = [0] * graph.n
    for i, j in enumerate(matching, 1):
        y_relabeling[j - 1] = i
    edges = ((i, y_relabeling[j - 1]) for i, j in graph.edges)
    return Standardization(
        BipartiteGraph.of(graph.n, edges), tuple(y_relabeling)
    )


def standardize(graph, max_matchings=None):
    """Relabels the y side so that a perfect matching becomes the diagonal
    and condition (b) holds.

    The diagonal is tried first, so a standardized graph is returned with the
    identity relabeling. After that the Hopcroft-Karp matching and then every
    perfect matching are tried, at most `max_matchings` in total.

    Raises:
        NoPerfectMatching: the graph has isolated vertices or no perfect
            matching.
        NotStandardizable: no tried matching satisfies (b).
    """
    if max_matchings is None:
        max_matchings = global_vars.max_matchings

    isolated = graph.isolated_vertices()
    if isolated:
        raise NoPerfectMatching(
            "Graph has isolated vertices: {}".format(", ".join(isolated))
        )
    first = augmenting_path_matching(graph)
    if first is None:
        raise NoPerfectMatching("Graph has no perfect matching")

    tried = 0
    for matching in _candidate_matchings(graph, first):
        if tried >= max_matchings:
            break
        tried += 1
        candidate = _align(graph, matching)
        if candidate.graph.satisfies_conditions():
            return candidate

    unmixed = None
    if 2 * graph.n <= global_vars.max_exhaustive_vertices:
        unmixed = is_unmixed_bruteforce(graph)
    if unmixed:
        warn(
            "Brute force finds the graph unmixed but none of {} tried "
            "matchings satisfies condition (b)".format(tried)
        )
    raise NotStandardizable(
        "No perfect matching out of {} tried satisfies condition (b) "
        "(brute-force unmixed: {})".format(tried, unmixed),
        unmixed=unmixed,
    )


def minimal_vertex_covers(graph):
    """Returns every inclusion-minimal vertex cover as a vertex bitmask.

    Covers are grown by branching on the first uncovered edge, so only
    candidates that are not supersets of an earlier branch get checked.
    """
    n = graph.n
    edge_masks = [
        (1 << (i - 1), 1 << (n + j - 1)) for i, j in graph.sorted_edges()
    ]
    candidates = set()

    def branch(cover, k):
        while k < len(edge_masks) and cover & sum(edge_masks[k]):
            k += 1
        if k == len(edge_masks):
            candidates.add(cover)
            return
        for bit in edge_masks[k]:
            branch(cover | bit, k + 1)

    branch(0, 0)

    def covers(mask):
        return all(mask & (a | b) for a, b in edge_masks)

    minimal = [
        c
        for c in candidates
        if not any(
            covers(c & ~(1 << bit)) for bit in range(2 * n) if c >> bit & 1
        )
    ]
    return sorted(minimal, key=lambda c: (popcount(c), c))


def is_unmixed_bruteforce(graph, limit=None):
    """True iff every minimal vertex cover has exactly n vertices."""
    if limit is None:
        limit = global_vars.max_exhaustive_vertices
    check_limit(2 * graph.n, limit, "Vertex count 2n")
    return all(popcount(c) == graph.n for c in minimal_vertex_covers(graph))


def induced_subgraph(graph, subset: Iterable[int]):
    """Returns G_F reindexed to 1..|F| and the index map.

    `index_map[k - 1]` is the original index of the new index k.
    """
    index_map = tuple(sorted(set(subset)))
    if not index_map:
        raise ValueError("Induced subgraph needs a nonempty subset")
    if index_map[0] < 1 or index_map[-1] > graph.n:
        raise ValueError(
            "Subset {} out of range 1..{}".format(index_map, graph.n)
        )
    position = {i: k for k, i in enumerate(index_map, 1)}
    edges = (
        (position[i], position[j])
        for i, j in graph.edges
        if i in position and j in position
    )
    return BipartiteGraph.of(len(index_map), edges), index_map


def has_induced_complete_pair(graph, i, j):
    """True iff x_i, x_j, y_i, y_j induce a complete bipartite K_{2,2}."""
    return all(graph.has_edge(a, b) for a in (i, j) for b in (i, j))


def apply_permutation(graph, sigma):
    """Returns the graph with edges (sigma(i), sigma(j)).

    `sigma` is a sequence with sigma[i - 1] the image of i.
    """
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, graph.n + 1)):
        raise ValueError(
            "{} is not a permutation of 1..{}".format(sigma, graph.n)
        )
    return BipartiteGraph.of(
        graph.n, ((sigma[i - 1], sigma[j - 1]) for i, j in graph.edges)
    )


def graph_from_poset(n, relations=()):
    """Returns G(P): edges {x_i, y_j} for p_i <= p_j in the reflexive and
    transitive closure of `relations`."""
    order = nx.DiGraph()
    order.add_nodes_from(range(1, n + 1))
    order.add_edges_from(relations)
    closure = nx.transitive_closure(order, reflexive=True)
    return BipartiteGraph.of(n, closure.edges())


def complete_graph(n):
    return BipartiteGraph.of(n, itertools.product(range(1, n + 1), repeat=2))


def chain_graph(n):
    return graph_from_poset(n, ((i, i + 1) for i in range(1, n)))


def antichain_graph(n):
    return graph_from_poset(n)


def comes_from_antichain(graph):
    return graph.edges == {(i, i) for i in range(1, graph.n + 1)}


def comes_from_chain(graph):
    """True iff the edge relation is a total order, so after relabeling the
    graph is G(P) for a chain P."""
    if not graph.satisfies_conditions():
        return False
    return all(
        graph.has_edge(i, j) != graph.has_edge(j, i)
        for i, j in itertools.combinations(range(1, graph.n + 1), 2)
    )


def are_isomorphic(first, second):
    """Exhaustive (VF2) isomorphism test of the two graphs."""
    return nx.is_isomorphic(first.to_networkx(), second.to_networkx())


def preorder_graphs(n, limit=4):
    """Yields every graph on n pairs satisfying (a) and (b).

    These are exactly the preorders on [n]: every standardized unmixed graph
    on n pairs appears once.
    """
    check_limit(n, limit, "Corpus size n")
    off_diagonal = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if i != j
    ]
    diagonal = [(i, i) for i in range(1, n + 1)]
    for choice in itertools.product((False, True), repeat=len(off_diagonal)):
        edges = diagonal + [e for e, on in zip(off_diagonal, choice) if on]
        graph = BipartiteGraph.of(n, edges)
        if graph.satisfies_conditions():
            yield graph


def random_unmixed_graph(n, rng, density=0.3):
    """Returns a random standardized graph: the closure of a random relation.

    `rng` is a `random.Random`.
    """
    relations = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if i != j and rng.random() < density
    ]
    return graph_from_poset(n, relations)
