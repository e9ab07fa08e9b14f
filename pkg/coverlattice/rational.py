"""This file includes exact rational Hilbert series numerator / (1 - z)^d.

Numerators are sympy polynomials in `z` over the integers.
"""

from dataclasses import dataclass

from sympy import ZZ, Poly, binomial, symbols

z = symbols("z")

ONE_MINUS_Z = Poly(1 - z, z, domain=ZZ)


def int_poly(coefficients):
    """Builds an integer polynomial from ascending coefficients."""
    coefficients = list(coefficients) or [0]
    return Poly(list(reversed(coefficients)), z, domain=ZZ)


def coefficients(poly):
    """Returns the ascending coefficient list, trailing zeros trimmed."""
    if poly.is_zero:
        return []
    return [int(c) for c in reversed(poly.all_coeffs())]


def z_power(k):
    return Poly(z**k, z, domain=ZZ)


def one_minus_z_power(k):
    return ONE_MINUS_Z**k


@dataclass(frozen=True)
class RationalSeries:
    numerator: Poly
    denom_power: int

    def __post_init__(self):
        num = self.numerator
        if not isinstance(num, Poly):
            num = Poly(num, z, domain=ZZ)
        d = self.denom_power
        if d < 0:
            num = num * one_minus_z_power(-d)
            d = 0
        if num.is_zero:
            d = 0
        # Canonical form: the numerator is not divisible by 1 - z.
        while d > 0 and num.eval(1) == 0:
            num = num.exquo(ONE_MINUS_Z)
            d -= 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denom_power", d)

    @classmethod
    def of(cls, coeffs, denom_power):
        return cls(int_poly(coeffs), denom_power)

    @property
    def h(self):
        return coefficients(self.numerator)

    def __add__(self, other):
        return series_add(self, other)

    def __mul__(self, other):
        return series_mul(self, other)

    def coefficient(self, k):
        """Returns the coefficient of z^k in the power series expansion."""
        d = self.denom_power
        total = 0
        for i, c in enumerate(self.h):
            if i > k:
                break
            if d == 0:
                total += c if i == k else 0
            else:
                total += c * int(binomial(k - i + d - 1, d - 1))
        return total

    def multiplicity(self):
        return int(self.numerator.eval(1))

    def a_invariant(self):
        return self.numerator.degree() - self.denom_power

    def to_dict(self):
        return {"h": self.h, "denom_power": self.denom_power}

    def __str__(self):
        terms = []
        for i, c in enumerate(self.h):
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else "z^{}".format(i))
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else ""
            else:
                coef = str(c)
            terms.append(coef + mono)
        num = " + ".join(terms).replace("+ -", "- ") or "0"
        return "({}) / (1 - z)^{}".format(num, self.denom_power)


def series_add(a, b):
    d = max(a.denom_power, b.denom_power)
    num = a.numerator * one_minus_z_power(d - a.denom_power)
    num += b.numerator * one_minus_z_power(d - b.denom_power)
    return RationalSeries(num, d)


def series_mul(a, b):
    return RationalSeries(
        a.numerator * b.numerator, a.denom_power + b.denom_power
    )
