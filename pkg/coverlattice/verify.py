"""This file runs every independent check of a standardized graph's
results: the Groebner basis, the series formulas, the structural identities
and, at the full level, direct counting and the lattice isomorphisms."""

from dataclasses import dataclass

from coverlattice import global_vars, toric
from coverlattice.graph import (
    apply_permutation,
    comes_from_antichain,
    comes_from_chain,
)
from coverlattice.lattice import (
    build_lattice,
    cm_reduce,
    completion_map,
    rank,
    subset_lattice,
)
from coverlattice.order_complex import subset_h_vector
from coverlattice.series import (
    check_gorenstein_symmetry,
    h_polynomial,
    is_knn_by_series,
    multiplicity,
    multiplicity_bounds,
    vertex_cover_series,
)
from coverlattice.rational import coefficients
from coverlattice.utils import CoverLatticeError, LimitExceeded

PASS = "pass"
FAIL = "fail"
SKIP = "skip"

LEVELS = ("fast", "full")


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "status": self.status, "detail": self.detail}


def _run(name, check):
    """Runs `check()`, which returns True/False or (ok, detail)."""
    try:
        result = check()
    except LimitExceeded as e:
        return Check(name, SKIP, str(e))
    except CoverLatticeError as e:
        return Check(name, FAIL, str(e))
    if isinstance(result, tuple):
        ok, detail = result
    else:
        ok, detail = result, ""
    return Check(name, PASS if ok else FAIL, detail)


def all_passed(checks):
    return all(c.status != FAIL for c in checks)


def verify_graph(graph, level="fast", max_degree=None):
    """Returns the list of `Check`s for a standardized graph."""
    if level not in LEVELS:
        raise ValueError("Unknown verification level: {}".format(level))
    if max_degree is None:
        max_degree = global_vars.max_degree
    n = graph.n
    lattice = build_lattice(graph)
    order = toric.order_for(graph, lattice)
    basis = toric.groebner_basis(graph, lattice)
    series = vertex_cover_series(graph)
    h = series.h

    def basis_in_ideal():
        bad = [
            k
            for k, b in enumerate(basis)
            if not toric.toric_relation_holds(b, graph, lattice)
        ]
        return not bad, "binomials outside Q_G: {}".format(bad) if bad else ""

    def buchberger():
        failures = toric.buchberger_failures(basis, order)
        return not failures, "; ".join(failures[:5])

    def basis_size():
        expected = len(lattice.covering_pairs) + len(lattice.incomparable_pairs)
        return len(basis) == expected, "{} binomials, expected {}".format(
            len(basis), expected
        )

    def initial_ideal_series():
        gens = toric.initial_ideal(basis)
        if not all(g.is_squarefree() for g in gens):
            return False, "initial ideal has a non-squarefree generator"
        other = toric.monomial_quotient_series(order.num_vars, gens)
        return other == series, "{} vs {}".format(other, series)

    def formulas_agree():
        return coefficients(h_polynomial(graph, series)) == h

    def gorenstein():
        return check_gorenstein_symmetry(h, n), "h = {}".format(h)

    def a_invariant():
        a = series.a_invariant()
        return a == -n - 1, "a = {}".format(a)

    def h1_identity():
        h1 = h[1] if len(h) > 1 else 0
        return h1 == len(lattice) - 1, "h_1 = {}, |L_G| = {}".format(
            h1, len(lattice)
        )

    def bounds():
        e = multiplicity(graph, series.numerator)
        lower, upper = multiplicity_bounds(n)
        ok = lower <= e <= upper
        ok = ok and (e == lower) == is_knn_by_series(graph, series)
        ok = ok and (e == upper) == comes_from_antichain(graph)
        return ok, "{} <= {} <= {}".format(lower, e, upper)

    def chain_lattice():
        is_chain = not lattice.incomparable_pairs and len(lattice) == n + 1
        ok = comes_from_chain(graph) == is_chain
        if is_chain:
            ok = ok and len(basis) == n
        return ok, "L_G is {}a chain, {} binomials".format(
            "" if is_chain else "not ", len(basis)
        )

    def stanley_reisner():
        return toric.stanley_reisner_check(lattice)

    def direct_counts(top_degree):
        def check():
            bad = []
            for d in range(top_degree + 1):
                count = toric.hilbert_function_direct(
                    graph, d, max_degree=max(top_degree, max_degree)
                )
                if count != series.coefficient(d):
                    bad.append((d, count, series.coefficient(d)))
            return not bad, "mismatches (d, count, series): {}".format(bad)

        return check

    checks = [
        _run("basis_in_toric_ideal", basis_in_ideal),
        _run("basis_size", basis_size),
        _run("buchberger", buchberger),
        _run("initial_ideal_series", initial_ideal_series),
        _run("series_formulas_agree", formulas_agree),
        _run("gorenstein_symmetry", gorenstein),
        _run("a_invariant", a_invariant),
        _run("h1_identity", h1_identity),
        _run("multiplicity_bounds", bounds),
        _run("chain_lattice", chain_lattice),
        _run("stanley_reisner", stanley_reisner),
        _run("direct_counting", direct_counts(min(2, max_degree))),
    ]
    if level == "full":
        checks += _full_checks(graph, series, max_degree, direct_counts)
    return checks


def _full_checks(graph, series, max_degree, direct_counts):
    n = graph.n
    full = (1 << n) - 1

    def basic_h_vectors():
        bad = []
        for ground in range(1, full + 1):
            r = rank(subset_lattice(graph, ground))
            h = subset_h_vector(graph, ground).h
            if any(v < 0 for v in h) or h[r] != 0 or h[r + 1] != 0:
                bad.append((ground, h))
        return not bad, "h^F violating h_r = h_(r+1) = 0: {}".format(bad)

    def reduction():
        subset, reduced = cm_reduce(graph)
        return rank(build_lattice(reduced)) == len(subset), "F = {}".format(
            list(subset)
        )

    def completions():
        for ground in range(1, full):
            subset = [i for i in range(1, n + 1) if ground >> (i - 1) & 1]
            completion_map(graph, subset)
        return True

    def permutation_invariance():
        sigma = [i % n + 1 for i in range(1, n + 1)]
        other = vertex_cover_series(apply_permutation(graph, sigma))
        return other == series, "sigma = {}".format(sigma)

    checks = [
        _run("basic_h_vectors", basic_h_vectors),
        _run("cm_reduction", reduction),
        _run("completion_maps", completions),
        _run("permutation_invariance", permutation_invariance),
        _run("direct_counting_full", direct_counts(max_degree)),
    ]
    return checks
