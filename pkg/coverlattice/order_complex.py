"""This file includes the order complex of a cover lattice, its f- and
h-vectors and the Hilbert series of the basic cover algebra."""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from sympy import ZZ, Poly

from coverlattice import global_vars
from coverlattice.lattice import (
    SUBSET_CACHE_SIZE,
    build_lattice,
    comparable,
    rank,
    subset_lattice,
)
from coverlattice.rational import (
    ONE_MINUS_Z,
    RationalSeries,
    coefficients,
    z,
)
from coverlattice.utils import check_limit, mask_of


@dataclass(frozen=True)
class FVector:
    # (f_{-1}, f_0, ..., f_{d-1})
    f: Tuple[int, ...]
    d: int

    def __post_init__(self):
        if not self.f or self.f[0] != 1:
            raise ValueError("An f-vector starts with f_-1 = 1")
        if len(self.f) != self.d + 1:
            raise ValueError(
                "f-vector {} does not have d + 1 = {} entries".format(
                    self.f, self.d + 1
                )
            )


@dataclass(frozen=True)
class HVector:
    h: Tuple[int, ...]

    def as_poly(self):
        return Poly(list(reversed(self.h)), z, domain=ZZ)


@dataclass(frozen=True)
class FaceComplex:
    """Order complex of a lattice: the faces are its chains."""

    lattice: object
    f_vector: FVector

    def faces(self, limit=None):
        """Lists every face (chain) explicitly, smallest first."""
        if limit is None:
            limit = global_vars.max_face_listing
        check_limit(len(self.lattice), limit, "Lattice size")
        elements = self.lattice.elements
        out = [()]
        for size in range(1, self.f_vector.d + 1):
            for chain in itertools.combinations(elements, size):
                if all(comparable(a, b) for a, b in zip(chain, chain[1:])):
                    out.append(chain)
        return out


def order_complex(lattice):
    """Builds the order complex with faces counted by size.

    Chains are counted by their largest element over the elements in a linear
    extension, so no chain is materialized.
    """
    d = rank(lattice) + 1
    elements = lattice.elements
    # ending[k][s]: chains of s elements whose largest element is elements[k]
    ending = []
    for k, beta in enumerate(elements):
        counts = [0] * (d + 1)
        counts[1] = 1
        for m in range(k):
            alpha = elements[m]
            if alpha & beta == alpha:
                for s in range(1, d):
                    counts[s + 1] += ending[m][s]
        ending.append(counts)
    f = [1] + [sum(row[s] for row in ending) for s in range(1, d + 1)]
    return FaceComplex(lattice, FVector(tuple(f), d))


def h_vector(f_vector):
    """Returns h with sum f_{i-1} z^i (1 - z)^(d - i) = sum h_j z^j."""
    d = f_vector.d
    total = Poly(0, z, domain=ZZ)
    for i, f in enumerate(f_vector.f):
        total += Poly(f * z**i, z, domain=ZZ) * ONE_MINUS_Z ** (d - i)
    h = coefficients(total)
    return HVector(tuple(h + [0] * (d + 1 - len(h))))


@lru_cache(maxsize=SUBSET_CACHE_SIZE)
def subset_h_vector(graph, ground):
    return h_vector(order_complex(subset_lattice(graph, ground)).f_vector)


@lru_cache(maxsize=SUBSET_CACHE_SIZE)
def subset_basic_series(graph, ground):
    """Hilbert series h^F / (1 - z)^(r_F + 1) of the basic cover algebra of
    G_F, F given as a bitmask.

    The empty F has the one-element lattice, hence r = 0 and h = (1, 0),
    which is the convention 1 / (1 - z).
    """
    r = rank(subset_lattice(graph, ground))
    return RationalSeries(subset_h_vector(graph, ground).as_poly(), r + 1)


def basic_cover_series(graph, subset=None):
    """Hilbert series of the basic cover algebra of G_F; F defaults to [n],
    so a graph passed alone gives its own basic cover algebra."""
    if subset is None:
        ground = (1 << graph.n) - 1
    else:
        ground = mask_of(subset)
    return subset_basic_series(graph, ground)


def basic_h_vector(graph):
    return h_vector(order_complex(build_lattice(graph)).f_vector)
