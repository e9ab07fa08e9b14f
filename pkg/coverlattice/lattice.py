"""This file includes the cover lattice L_G of a standardized graph, its
minimal vertex covers, the Cohen-Macaulay reduction and the lattice maps
nu and phi between cover lattices.

Lattice elements are bitmasks over {p_1..p_n}: bit k - 1 is p_k. An element
alpha encodes the minimal cover that takes x_k for p_k in alpha and y_k
otherwise.
"""

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, Tuple

from coverlattice import global_vars
from coverlattice.graph import (
    has_induced_complete_pair,
    induced_subgraph,
    minimal_vertex_covers,
    vertex_labels,
)
from coverlattice.utils import (
    CoverLatticeError,
    bits,
    check_limit,
    mask_of,
    popcount,
    subset_key,
    submasks,
)

# Entries kept per subset cache, keyed by (graph, F).
SUBSET_CACHE_SIZE = 4096


class NonGradedLattice(CoverLatticeError):
    exit_code = 2


class NotIsomorphism(CoverLatticeError):
    exit_code = 3


class NotInLattice(CoverLatticeError):
    pass


@dataclass(frozen=True)
class CoverLattice:
    n: int
    # Sorted by (cardinality, lexicographic index list); the position of an
    # element is the index of its u variable.
    elements: Tuple[int, ...]
    # Indices the lattice lives on; all of [n] for L_G, F for L_{G_F}.
    ground: int

    @property
    def bottom(self):
        return 0

    @property
    def top(self):
        return self.ground

    @cached_property
    def _positions(self) -> Dict[int, int]:
        return {alpha: k for k, alpha in enumerate(self.elements)}

    def __contains__(self, alpha):
        return alpha in self._positions

    def __len__(self):
        return len(self.elements)

    def index(self, alpha):
        try:
            return self._positions[alpha]
        except KeyError:
            raise NotInLattice("{} is not in the lattice".format(bits(alpha)))

    def is_sublattice(self):
        """Checks that bottom and top are present and that the elements are
        closed under union and intersection."""
        if self.bottom not in self or self.top not in self:
            return False
        return all(
            a | b in self and a & b in self
            for a in self.elements
            for b in self.elements
        )

    def upper_neighbors(self, alpha):
        return upper_neighbors(self, alpha)

    @cached_property
    def covering_pairs(self):
        return tuple(
            (alpha, beta)
            for alpha in self.elements
            for beta in upper_neighbors(self, alpha)
        )

    @cached_property
    def incomparable_pairs(self):
        return tuple(
            (a, b)
            for k, a in enumerate(self.elements)
            for b in self.elements[k + 1:]
            if not comparable(a, b)
        )


@dataclass(frozen=True)
class LatticeMap:
    domain: CoverLattice
    # For the completion map phi the codomain is the subposet S of L_G.
    codomain: CoverLattice
    table: Tuple[Tuple[int, int], ...]

    def __call__(self, alpha):
        return dict(self.table)[alpha]

    def is_isomorphism(self):
        """Bijective onto the codomain, preserving and reflecting order."""
        images = [beta for _, beta in self.table]
        if sorted(a for a, _ in self.table) != sorted(self.domain.elements):
            return False
        if len(set(images)) != len(images):
            return False
        if set(images) != set(self.codomain.elements):
            return False
        return all(
            (a1 & a2 == a1) == (b1 & b2 == b1)
            for a1, b1 in self.table
            for a2, b2 in self.table
        )

    def to_dict(self):
        return {
            "domain_ground": bits(self.domain.ground),
            "table": [[bits(a), bits(b)] for a, b in self.table],
        }


def comparable(a, b):
    return a & b == a or a & b == b


def minimal_covers_bruteforce(graph, limit=None):
    """Returns all minimal vertex covers as sets of labels like "x1", "y2"."""
    if limit is None:
        limit = global_vars.max_exhaustive_vertices
    check_limit(2 * graph.n, limit, "Vertex count 2n")
    return [vertex_labels(graph.n, c) for c in minimal_vertex_covers(graph)]


def covers_to_lattice(graph, covers):
    """Maps covers C (label sets) to alpha = {p_k : x_k in C}."""
    return sorted(
        {
            mask_of(int(v[1:]) for v in cover if v.startswith("x"))
            for cover in covers
        },
        key=subset_key,
    )


@lru_cache(maxsize=SUBSET_CACHE_SIZE)
def subset_lattice(graph, ground):
    """Returns L_{G_F} for the index set F given as the bitmask `ground`,
    keeping the original indices.

    The elements are the down-sets of the edge relation: subsets alpha of F
    with p_j in alpha forcing p_i in alpha for every edge (i, j) inside F.
    """
    check_limit(popcount(ground), global_vars.max_lattice_n, "Lattice size n")
    indices = bits(ground)
    requires = {
        j: mask_of(
            i for i in indices if i != j and graph.has_edge(i, j)
        )
        for j in indices
    }
    elements = [
        alpha
        for alpha in submasks(ground)
        if all(requires[j] & ~alpha == 0 for j in bits(alpha))
    ]
    return CoverLattice(
        graph.n, tuple(sorted(elements, key=subset_key)), ground
    )


def build_lattice(graph):
    return subset_lattice(graph, (1 << graph.n) - 1)


def upper_neighbors(lattice, alpha):
    if alpha not in lattice:
        raise NotInLattice("{} is not in the lattice".format(bits(alpha)))
    above = [b for b in lattice.elements if b != alpha and b & alpha == alpha]
    return [
        b for b in above if not any(c != b and c & b == c for c in above)
    ]


def _chain_lengths(lattice):
    """Shortest and longest covering-path length from bottom to each
    element."""
    shortest = {lattice.bottom: 0}
    longest = {lattice.bottom: 0}
    # Elements are sorted by cardinality, a linear extension of the order.
    for alpha in lattice.elements:
        for beta in upper_neighbors(lattice, alpha):
            s, t = shortest[alpha] + 1, longest[alpha] + 1
            shortest[beta] = min(shortest.get(beta, s), s)
            longest[beta] = max(longest.get(beta, t), t)
    return shortest, longest


def rank(lattice):
    """Returns the common length of the maximal chains.

    Raises:
        NonGradedLattice: two maximal chains have different lengths.
    """
    shortest, longest = _chain_lengths(lattice)
    if shortest[lattice.top] != longest[lattice.top]:
        raise NonGradedLattice(
            "Maximal chains have lengths between {} and {}".format(
                shortest[lattice.top], longest[lattice.top]
            )
        )
    return longest[lattice.top]


def maximal_chains(lattice):
    rank(lattice)
    chains = []

    def extend(chain):
        ups = upper_neighbors(lattice, chain[-1])
        if not ups:
            chains.append(tuple(chain))
        for beta in ups:
            extend(chain + [beta])

    extend([lattice.bottom])
    return chains


def count_maximal_chains(lattice):
    counts = {lattice.bottom: 1}
    for alpha in lattice.elements:
        for beta in upper_neighbors(lattice, alpha):
            counts[beta] = counts.get(beta, 0) + counts[alpha]
    return counts[lattice.top]


def is_cohen_macaulay(graph):
    return rank(build_lattice(graph)) == graph.n


def is_cohen_macaulay_subset(graph, ground):
    """Whether G_F is Cohen-Macaulay; the empty F counts as one."""
    return rank(subset_lattice(graph, ground)) == popcount(ground)


def cm_reduce(graph):
    """Returns (F, G_F) with F the lexicographically smallest maximal subset
    of [n] without an induced K_{i,j} for i != j in F.

    Raises:
        NotIsomorphism: G_F is not Cohen-Macaulay or L_{G_F} is not
            isomorphic to L_G through nu.
    """
    chosen = []
    for j in range(1, graph.n + 1):
        if not any(has_induced_complete_pair(graph, i, j) for i in chosen):
            chosen.append(j)
    reduced, _ = induced_subgraph(graph, chosen)
    if not is_cohen_macaulay(reduced):
        raise NotIsomorphism(
            "Reduction to {} is not Cohen-Macaulay".format(chosen)
        )
    lattice_embedding(graph, chosen)
    return tuple(chosen), reduced


def lattice_embedding(graph, subset):
    """Returns nu: L_{G_F} -> L_G, adding p_j for j outside F whenever some
    p_i of the element has an induced K_{i,j}.

    Raises:
        NotIsomorphism: nu is not a lattice isomorphism for this F.
    """
    reduced, index_map = induced_subgraph(graph, subset)
    inside = mask_of(index_map)
    outside = [j for j in range(1, graph.n + 1) if not inside >> (j - 1) & 1]
    domain = build_lattice(reduced)
    table = []
    for alpha in domain.elements:
        lifted = mask_of(index_map[k - 1] for k in bits(alpha))
        extra = mask_of(
            j
            for j in outside
            if any(has_induced_complete_pair(graph, i, j) for i in bits(lifted))
        )
        table.append((alpha, lifted | extra))
    nu = LatticeMap(domain, build_lattice(graph), tuple(table))
    if not nu.is_isomorphism():
        raise NotIsomorphism(
            "nu from F = {} is not a lattice isomorphism".format(
                list(index_map)
            )
        )
    return nu


def _split(graph, subset):
    inside = mask_of(set(subset))
    full = (1 << graph.n) - 1
    if inside == 0 or inside == full or inside & ~full:
        raise ValueError(
            "F must be a proper nonempty subset of 1..{}".format(graph.n)
        )
    return inside, full & ~inside


def delta_completion(graph, subset, alpha):
    """Returns alpha united with the largest delta inside P_n(F) such that the
    union lies in L_G; alpha must lie in L_{G_Fbar}."""
    inside, outside = _split(graph, subset)
    if alpha not in subset_lattice(graph, outside):
        raise NotInLattice(
            "{} is not in the lattice of the complement of F".format(
                bits(alpha)
            )
        )
    delta = 0
    for beta in build_lattice(graph).elements:
        if beta & outside == alpha:
            delta |= beta & inside
    return alpha | delta


def completion_image(graph, subset):
    """Returns S: the beta in L_G with no nonempty A inside F such that
    beta united with P_n(A) is an upper neighbour of beta."""
    inside, _ = _split(graph, subset)
    lattice = build_lattice(graph)
    image = []
    for beta in lattice.elements:
        ups = set(upper_neighbors(lattice, beta))
        if not any(beta | a in ups for a in submasks(inside) if a):
            image.append(beta)
    return image


def completion_map(graph, subset, verify=True):
    """Returns phi: L_{G_Fbar} -> S, alpha -> alpha + delta_alpha.

    Raises:
        NotIsomorphism: with `verify`, when phi is not a poset isomorphism.
    """
    _, outside = _split(graph, subset)
    domain = subset_lattice(graph, outside)
    image = CoverLattice(
        graph.n,
        tuple(sorted(completion_image(graph, subset), key=subset_key)),
        (1 << graph.n) - 1,
    )
    table = tuple(
        (alpha, delta_completion(graph, subset, alpha))
        for alpha in domain.elements
    )
    phi = LatticeMap(domain, image, table)
    if verify and not phi.is_isomorphism():
        raise NotIsomorphism(
            "phi for F = {} is not a poset isomorphism".format(sorted(subset))
        )
    return phi


def verify_cover_bijection(graph, i, j):
    """Checks the correspondence M(H) -> M(G) for an induced K_{i,j}, where H
    drops x_j and y_j: C goes to C + x_j when x_i is in C, else C + y_j."""
    if not has_induced_complete_pair(graph, i, j) or i == j:
        raise ValueError("No induced K_{{{},{}}} in the graph".format(i, j))
    n = graph.n
    check_limit(2 * n, global_vars.max_exhaustive_vertices, "Vertex count 2n")
    rest, index_map = induced_subgraph(
        graph, [k for k in range(1, n + 1) if k != j]
    )
    lifted = set()
    for cover in minimal_vertex_covers(rest):
        mask = 0
        for k, original in enumerate(index_map, 1):
            if cover >> (k - 1) & 1:
                mask |= 1 << (original - 1)
            if cover >> (rest.n + k - 1) & 1:
                mask |= 1 << (n + original - 1)
        if mask >> (i - 1) & 1:
            mask |= 1 << (j - 1)
        else:
            mask |= 1 << (n + j - 1)
        lifted.add(mask)
    covers = minimal_vertex_covers(graph)
    return len(lifted) == len(covers) and lifted == set(covers)


def lattice_to_dict(lattice):
    return {
        "n": lattice.n,
        "elements": [bits(alpha) for alpha in lattice.elements],
    }


def dump_lattice(lattice):
    return json.dumps(lattice_to_dict(lattice))
