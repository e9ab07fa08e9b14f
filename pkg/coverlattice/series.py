"""This file includes the Hilbert series of the vertex cover algebra A(G)
assembled from the basic cover algebras of all induced subgraphs G_F, and the
consequences drawn from it: h-polynomial, multiplicity and its bounds,
Gorenstein symmetry and the K_{n,n} test."""

from concurrent.futures import ProcessPoolExecutor

from sympy import Poly, factorial

from coverlattice import global_vars
from coverlattice.lattice import (
    build_lattice,
    count_maximal_chains,
    is_cohen_macaulay_subset,
    rank,
    subset_lattice,
)
from coverlattice.order_complex import subset_basic_series, subset_h_vector
from coverlattice.rational import (
    RationalSeries,
    coefficients,
    int_poly,
    one_minus_z_power,
    z_power,
)
from coverlattice.utils import CoverLatticeError, popcount


class SeriesMismatch(CoverLatticeError):
    """Two independent computations of the same invariant disagree."""

    exit_code = 3


def _sweep(graph, term):
    """Maps `term(graph, ground)` over every subset F of [n], in subset
    order. Large sweeps run in worker processes; the order of the results
    never depends on the number of workers."""
    grounds = range(1 << graph.n)
    workers = global_vars.threads
    if workers > 1 and graph.n >= global_vars.parallel_min_n:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(
                pool.map(term, [graph] * len(grounds), grounds, chunksize=64)
            )
    return [term(graph, ground) for ground in grounds]


def _series_term(graph, ground):
    """H of the basic cover algebra of G_F times (z / (1 - z))^(n - |F|)."""
    missing = graph.n - popcount(ground)
    basic = subset_basic_series(graph, ground)
    return RationalSeries(
        basic.numerator * z_power(missing), basic.denom_power + missing
    )


def _h_term(graph, ground):
    """h^F(z) (1 - z)^(|F| - r_F) z^(n - |F|)."""
    size = popcount(ground)
    r = rank(subset_lattice(graph, ground))
    h = subset_h_vector(graph, ground).as_poly()
    return h * one_minus_z_power(size - r) * z_power(graph.n - size)


def _multiplicity_term(graph, ground):
    """(e of the basic cover algebra, maximal-chain count) for CM G_F."""
    if not is_cohen_macaulay_subset(graph, ground):
        return None
    lattice = subset_lattice(graph, ground)
    e = subset_basic_series(graph, ground).multiplicity()
    return e, count_maximal_chains(lattice)


def _all_terms(graph, ground):
    return (
        _series_term(graph, ground),
        _h_term(graph, ground),
        _multiplicity_term(graph, ground),
    )


def _sum_series(graph, terms):
    total = RationalSeries.of([0], 0)
    for term in terms:
        total = total + term
    total = RationalSeries(total.numerator, total.denom_power + graph.n)
    if total.denom_power != 2 * graph.n + 1:
        raise SeriesMismatch(
            "Hilbert series has denominator power {}, expected {}".format(
                total.denom_power, 2 * graph.n + 1
            )
        )
    return total


def _sum_h(series, terms):
    h = int_poly([0])
    for term in terms:
        h += term
    if h != series.numerator:
        raise SeriesMismatch(
            "h-polynomial {} differs from the series numerator {}".format(
                coefficients(h), coefficients(series.numerator)
            )
        )
    return h


def _sum_multiplicity(h, terms):
    terms = [t for t in terms if t is not None]
    e = sum(t[0] for t in terms)
    chains = sum(t[1] for t in terms)
    at_one = int(h.eval(1))
    if not e == at_one == chains:
        raise SeriesMismatch(
            "Multiplicity sum {}, h(1) = {} and chain count {} "
            "disagree".format(e, at_one, chains)
        )
    return e


def vertex_cover_series(graph):
    """Hilbert series of A(G) as the sum over F of the basic cover series of
    G_F times (z / (1 - z))^(n - |F|), over (1 - z)^n."""
    return _sum_series(graph, _sweep(graph, _series_term))


def h_polynomial(graph, series=None):
    """h(z) as the sum over F of h^F(z) (1 - z)^(|F| - r_F) z^(n - |F|),
    checked against the numerator of `series` (computed when not given)."""
    if series is None:
        series = vertex_cover_series(graph)
    return _sum_h(series, _sweep(graph, _h_term))


def multiplicity(graph, h=None):
    """e(A(G)) summed over the Cohen-Macaulay G_F, the empty F included.

    Cross-checked against h(1) and against the total number of maximal
    chains of the lattices of the Cohen-Macaulay G_F. `h` is the
    h-polynomial, computed when not given.
    """
    if h is None:
        h = h_polynomial(graph)
    return _sum_multiplicity(h, _sweep(graph, _multiplicity_term))


def hilbert_data(graph):
    """Returns (series, h, e) from a single sweep over the subsets of [n],
    with the same cross-checks as the three separate functions."""
    terms = _sweep(graph, _all_terms)
    series = _sum_series(graph, [t[0] for t in terms])
    h = _sum_h(series, [t[1] for t in terms])
    return series, h, _sum_multiplicity(h, [t[2] for t in terms])


def clear_caches():
    """Drops the per-subset lattices, h-vectors and basic series."""
    subset_lattice.cache_clear()
    subset_h_vector.cache_clear()
    subset_basic_series.cache_clear()


def multiplicity_bounds(n):
    """Returns (n + 1, n! * sum_{l=0}^{n} 1/l!) as integers."""
    if n < 1:
        raise ValueError("Bounds need n >= 1, got {}".format(n))
    upper = sum(factorial(n) / factorial(k) for k in range(n + 1))
    return n + 1, int(upper)


def check_gorenstein_symmetry(h, n):
    """True iff h has degree n with h_n = 1 and h_i = h_{n-i}.

    `h` is a sympy polynomial or an ascending coefficient list.
    """
    if isinstance(h, Poly):
        h = coefficients(h)
    h = list(h)
    while h and h[-1] == 0:
        h.pop()
    if len(h) != n + 1 or h[n] != 1:
        return False
    return all(h[i] == h[n - i] for i in range(n + 1))


def a_invariant(graph):
    return vertex_cover_series(graph).a_invariant()


def knn_series(n):
    return RationalSeries.of([1] * (n + 1), 2 * n + 1)


def is_knn_by_series(graph, series=None):
    """True iff the Hilbert series is (1 + ... + z^n) / (1 - z)^(2n + 1),
    checked against |L_G| = 2."""
    if series is None:
        series = vertex_cover_series(graph)
    by_series = series == knn_series(graph.n)
    structural = len(build_lattice(graph)) == 2
    if by_series != structural:
        raise SeriesMismatch(
            "Series test says {} but |L_G| = 2 says {}".format(
                by_series, structural
            )
        )
    return by_series
