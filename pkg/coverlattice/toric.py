"""This file includes the reduced Groebner basis of the toric ideal Q_G of
the vertex cover algebra and the engines that check it independently.

Variables of B_G are indexed x_1..x_n (0..n-1), y_1..y_n (n..2n-1) and then
one u per lattice element in the lattice's (cardinality, lexicographic)
order. That order is a linear extension of u_alpha > u_beta for beta inside
alpha, read from the smallest variable u_{} to the largest u_{top}.
"""

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from sympy import ZZ, Poly

from coverlattice import global_vars
from coverlattice.lattice import build_lattice, comparable, upper_neighbors
from coverlattice.rational import RationalSeries, int_poly, z
from coverlattice.utils import bits, check_limit


@dataclass(frozen=True)
class Monomial:
    exponents: Tuple[int, ...]

    @classmethod
    def one(cls, num_vars):
        return cls((0,) * num_vars)

    @classmethod
    def of(cls, num_vars, variables):
        exponents = [0] * num_vars
        for v in variables:
            exponents[v] += 1
        return cls(tuple(exponents))

    @property
    def degree(self):
        return sum(self.exponents)

    def is_squarefree(self):
        return all(e <= 1 for e in self.exponents)

    def divides(self, other):
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other):
        return Monomial(
            tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )


@dataclass(frozen=True)
class Binomial:
    lead: Monomial
    trail: Monomial


@dataclass(frozen=True)
class MonomialOrder:
    """Lex on x_1 > ... > x_n > y_1 > ... > y_n, ties broken by degree
    reverse lexicographic order on the u variables."""

    n: int
    lattice_size: int

    @property
    def num_vars(self):
        return 2 * self.n + self.lattice_size

    def key(self, exponents):
        """Sort key: a larger key is a larger monomial."""
        split = 2 * self.n
        u = exponents[split:]
        return (tuple(exponents[:split]), sum(u), tuple(-e for e in u))

    def greater(self, first, second):
        return self.key(first.exponents) > self.key(second.exponents)


def variable_names(n, lattice):
    names = ["x{}".format(i) for i in range(1, n + 1)]
    names += ["y{}".format(j) for j in range(1, n + 1)]
    names += [
        "u{{{}}}".format(",".join(str(k) for k in bits(alpha)))
        for alpha in lattice.elements
    ]
    return names


def order_for(graph, lattice):
    return MonomialOrder(graph.n, len(lattice))


def _xy_variables(graph, mask, y_side):
    offset = graph.n if y_side else 0
    return [offset + i - 1 for i in bits(mask)]


def groebner_basis(graph, lattice=None):
    """Returns the closed-form reduced Groebner basis of Q_G.

    One binomial x_{beta-alpha} u_alpha - y_{beta-alpha} u_beta per covering
    pair alpha < beta, then u_alpha u_beta - u_{alpha|beta} u_{alpha&beta}
    per unordered incomparable pair. The lead is the first monomial.
    """
    if lattice is None:
        lattice = build_lattice(graph)
    order = order_for(graph, lattice)
    size = order.num_vars
    u = 2 * graph.n
    basis = []
    for alpha in lattice.elements:
        for beta in upper_neighbors(lattice, alpha):
            diff = beta & ~alpha
            lead = Monomial.of(
                size,
                _xy_variables(graph, diff, False) + [u + lattice.index(alpha)],
            )
            trail = Monomial.of(
                size,
                _xy_variables(graph, diff, True) + [u + lattice.index(beta)],
            )
            basis.append(_binomial(lead, trail, order))
    for alpha, beta in lattice.incomparable_pairs:
        lead = Monomial.of(
            size, [u + lattice.index(alpha), u + lattice.index(beta)]
        )
        trail = Monomial.of(
            size,
            [u + lattice.index(alpha | beta), u + lattice.index(alpha & beta)],
        )
        basis.append(_binomial(lead, trail, order))
    return basis


def _binomial(lead, trail, order):
    if not order.greater(lead, trail):
        raise ValueError(
            "Lead {} is not above trail {}".format(
                lead.exponents, trail.exponents
            )
        )
    return Binomial(lead, trail)


def minimalize(monomials):
    """Returns the minimal generators among `monomials`, sorted."""
    out = []
    for m in sorted(set(monomials), key=lambda m: (m.degree, m.exponents)):
        if not any(g.divides(m) for g in out):
            out.append(m)
    return out


def initial_ideal(basis):
    return minimalize(b.lead for b in basis)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form(poly, basis, order):
    """Fully reduces `poly` ({exponents: coefficient}) modulo the binomials.

    Each binomial is lead - trail, so removing c * q * lead adds c * q * trail.
    """
    pairs = [(b.lead.exponents, b.trail.exponents) for b in basis]
    poly = {m: c for m, c in poly.items() if c}
    remainder = {}
    while poly:
        top = max(poly, key=order.key)
        c = poly.pop(top)
        for lead, trail in pairs:
            if _divides(lead, top):
                m = _add(_sub(top, lead), trail)
                c2 = poly.get(m, 0) + c
                if c2:
                    poly[m] = c2
                else:
                    poly.pop(m, None)
                break
        else:
            remainder[top] = c
    return remainder


def s_polynomial(first, second):
    lcm = _lcm(first.lead.exponents, second.lead.exponents)
    a = _add(_sub(lcm, first.lead.exponents), first.trail.exponents)
    b = _add(_sub(lcm, second.lead.exponents), second.trail.exponents)
    poly = {a: -1}
    poly[b] = poly.get(b, 0) + 1
    return {m: c for m, c in poly.items() if c}


def buchberger_failures(basis, order, limit=None):
    """Lists every way `basis` fails to be a reduced Groebner basis: a lead
    not above its trail, a lead or trail divisible by another lead, or an
    S-polynomial with a nonzero normal form."""
    if limit is None:
        limit = global_vars.max_buchberger_lattice
    check_limit(order.lattice_size, limit, "Lattice size")
    failures = []
    for k, b in enumerate(basis):
        if not order.greater(b.lead, b.trail):
            failures.append(
                "binomial {}: lead is not the initial term".format(k)
            )
        for m, other in enumerate(basis):
            if m != k and other.lead.divides(b.lead):
                failures.append(
                    "binomial {}: lead divisible by lead {}".format(k, m)
                )
            if other.lead.divides(b.trail):
                failures.append(
                    "binomial {}: trail divisible by lead {}".format(k, m)
                )
    for k, m in itertools.combinations(range(len(basis)), 2):
        rest = normal_form(s_polynomial(basis[k], basis[m]), basis, order)
        if rest:
            failures.append(
                "S({}, {}) has a normal form with {} terms".format(
                    k, m, len(rest)
                )
            )
    return failures


def buchberger_verify(basis, order, limit=None):
    return not buchberger_failures(basis, order, limit)


def _pivot_numerator(generators):
    """Numerator of the Hilbert series of the quotient by the monomial ideal
    on `generators` (exponent tuples), by pivoting on the most frequent
    variable: N(I) = N(I + (v)) + z N(I : v)."""
    one_minus = {}

    def coprime_product(gens):
        result = int_poly([1])
        for g in gens:
            d = sum(g)
            if d not in one_minus:
                one_minus[d] = int_poly([1] + [0] * (d - 1) + [-1])
            result *= one_minus[d]
        return result

    @lru_cache(maxsize=None)
    def numerator(gens):
        if any(sum(g) == 0 for g in gens):
            return int_poly([0])
        counts = [sum(1 for g in gens if g[v]) for v in range(num_vars)]
        pivot = max(range(num_vars), key=lambda v: (counts[v], -v))
        if counts[pivot] <= 1:
            return coprime_product(gens)
        unit = tuple(1 if v == pivot else 0 for v in range(num_vars))
        added = _minimal_tuples([g for g in gens if not g[pivot]] + [unit])
        quotient = _minimal_tuples(
            [
                tuple(e - 1 if v == pivot and e else e for v, e in enumerate(g))
                for g in gens
            ]
        )
        return numerator(added) + Poly(z, z, domain=ZZ) * numerator(quotient)

    gens = list(generators)
    if not gens:
        return int_poly([1])
    num_vars = len(gens[0])
    return numerator(_minimal_tuples(gens))


def _minimal_tuples(exponents):
    out = []
    for e in sorted(set(exponents), key=lambda e: (sum(e), e)):
        if not any(_divides(g, e) for g in out):
            out.append(e)
    return frozenset(out)


def monomial_quotient_series(num_vars, generators):
    """Hilbert series of the polynomial ring on `num_vars` degree-one
    variables modulo the ideal generated by the monomials."""
    gens = [
        g.exponents if isinstance(g, Monomial) else tuple(g) for g in generators
    ]
    if any(len(g) != num_vars for g in gens):
        raise ValueError("Generators must have {} exponents".format(num_vars))
    return RationalSeries(_pivot_numerator(gens), num_vars)


def series_via_initial_ideal(graph):
    lattice = build_lattice(graph)
    gens = initial_ideal(groebner_basis(graph, lattice))
    return monomial_quotient_series(2 * graph.n + len(lattice), gens)


def _u_key(exponents):
    return (sum(exponents), tuple(-e for e in exponents))


def stanley_reisner_check(lattice):
    """Checks that the initial ideal of the toric ideal of the basic cover
    algebra, under the reverse lexicographic order on the u variables, is the
    Stanley-Reisner ideal of the order complex."""
    size = len(lattice)

    def u_monomial(*elements):
        exponents = [0] * size
        for alpha in elements:
            exponents[lattice.index(alpha)] += 1
        return tuple(exponents)

    initial = set()
    for alpha, beta in lattice.incomparable_pairs:
        first = u_monomial(alpha, beta)
        second = u_monomial(alpha | beta, alpha & beta)
        initial.add(max(first, second, key=_u_key))

    non_faces = set()
    # A set of lattice elements is a chain iff its elements are pairwise
    # comparable, so no minimal non-face has more than two elements; the
    # scan over three-element sets confirms it.
    for face_size in (2, 3):
        for subset in itertools.combinations(lattice.elements, face_size):
            is_chain = all(
                comparable(a, b) for a, b in itertools.combinations(subset, 2)
            )
            if is_chain:
                continue
            proper = itertools.combinations(subset, face_size - 1)
            if face_size == 2 or all(
                all(comparable(a, b) for a, b in itertools.combinations(p, 2))
                for p in proper
            ):
                non_faces.add(u_monomial(*subset))
    return initial == non_faces


def _compositions(total, parts):
    """Yields tuples of `parts` nonnegative integers summing to `total`."""
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cuts + (total + parts - 1,):
            out.append(c - prev - 1)
            prev = c
        yield tuple(out)


def hilbert_function_direct(graph, degree, max_n=None, max_degree=None):
    """Counts the monomials x^a y^b t^k of degree `degree` in A(G).

    x^a y^b t^k lies in A(G) iff x^a y^b is divisible by a product of k
    minimal-cover monomials; its degree is |a| + |b| - k(n - 1). Every such
    product has a_i + b_i = k for all i, so only exponents with a_i + b_i at
    least k are enumerated.
    """
    if max_n is None:
        max_n = global_vars.max_direct_n
    if max_degree is None:
        max_degree = global_vars.max_degree
    n = graph.n
    check_limit(n, max_n, "Direct counting n")
    check_limit(degree, max_degree, "Direct counting degree")

    covers = []
    for alpha in build_lattice(graph).elements:
        a = tuple(1 if alpha >> i & 1 else 0 for i in range(n))
        covers.append((a, tuple(1 - e for e in a)))

    @lru_cache(maxsize=None)
    def in_power(a, b, k, start):
        if k == 0:
            return True
        for idx in range(start, len(covers)):
            ca, cb = covers[idx]
            if _divides(ca, a) and _divides(cb, b):
                if in_power(_sub(a, ca), _sub(b, cb), k - 1, idx):
                    return True
        return False

    total = 0
    for k in range(degree + 1):
        for surplus in _compositions(degree - k, n):
            sums = [k + s for s in surplus]
            for a in itertools.product(*(range(s + 1) for s in sums)):
                b = tuple(s - e for s, e in zip(sums, a))
                if in_power(a, b, k, 0):
                    total += 1
    return total


def toric_relation_holds(binomial, graph, lattice):
    """True iff both monomials of `binomial` map to the same x^a y^b t^k,
    sending u_alpha to the cover monomial of alpha times t."""
    n = graph.n

    def image(monomial):
        e = monomial.exponents
        xy = list(e[: 2 * n])
        for k, alpha in enumerate(lattice.elements):
            power = e[2 * n + k]
            for i in range(n):
                xy[i if alpha >> i & 1 else n + i] += power
        return tuple(xy), sum(e[2 * n:])

    return image(binomial.lead) == image(binomial.trail)


def format_monomial(monomial, names):
    factors = []
    for name, e in zip(names, monomial.exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append("{}^{}".format(name, e))
    return "*".join(factors) or "1"


def monomial_to_dict(monomial, names):
    return {name: e for name, e in zip(names, monomial.exponents) if e}


def basis_to_dict(basis, graph, lattice):
    names = variable_names(graph.n, lattice)
    return {
        "u_order": names[2 * graph.n:],
        "basis": [
            {
                "lead": monomial_to_dict(b.lead, names),
                "trail": monomial_to_dict(b.trail, names),
            }
            for b in basis
        ],
    }


def format_basis(basis, graph, lattice, as_json=False):
    """One binomial per line with the lead first, or the JSON variant."""
    if as_json:
        return json.dumps(basis_to_dict(basis, graph, lattice), indent=2)
    names = variable_names(graph.n, lattice)
    return "\n".join(
        "{} - {}".format(
            format_monomial(b.lead, names), format_monomial(b.trail, names)
        )
        for b in basis
    )
