"""Exact rational polynomial algebra on the reference tetrahedron.

Sparse trivariate polynomials in the natural coordinates (xi, eta, zeta)
with :class:`fractions.Fraction` coefficients, plus closed-form integration
over the reference domain

    0 <= xi <= 1 - eta - zeta,   0 <= eta <= 1 - zeta,   0 <= zeta <= 1.

Every constant coefficient table in this package is generated through this
module, so it doubles as the ground-truth oracle for the floating-point
evaluation paths.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

Exponents = tuple[int, int, int]
Scalar = Union[int, Fraction]


class TriPoly:
    """Polynomial in (xi, eta, zeta) stored as a sparse exponent->coefficient map.

    Coefficients are exact :class:`Fraction` values; zero coefficients are
    never stored, so two polynomials are equal iff their term maps are equal.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponents, Scalar] | Iterable[tuple[Exponents, Scalar]] | None = None):
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        acc: dict[Exponents, Fraction] = {}
        for expo, coeff in items:
            a, b, c = expo
            if a < 0 or b < 0 or c < 0:
                raise ValueError(f"negative exponent in term {expo}")
            key = (int(a), int(b), int(c))
            acc[key] = acc.get(key, Fraction(0)) + Fraction(coeff)
        self.terms = {k: v for k, v in acc.items() if v != 0}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "TriPoly":
        return cls()

    @classmethod
    def constant(cls, value: Scalar) -> "TriPoly":
        return cls({(0, 0, 0): value})

    @classmethod
    def monomial(cls, exponents: Exponents, coeff: Scalar = 1) -> "TriPoly":
        return cls({exponents: coeff})

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Exponents, Fraction]]:
        return iter(self.terms.items())

    def __call__(self, xi, eta, zeta):
        """Evaluate; exact for Fraction/int arguments, floating otherwise."""
        return sum(
            coeff * xi**a * eta**b * zeta**c for (a, b, c), coeff in self.terms.items()
        )

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for expo, coeff in other.terms.items():
            val = out.get(expo, Fraction(0)) + coeff
            if val:
                out[expo] = val
            else:
                out.pop(expo, None)
        return _wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return _wrap({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            if other == 0:
                return TriPoly()
            return _wrap({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, TriPoly):
            return NotImplemented
        out: dict[Exponents, Fraction] = {}
        for (a1, b1, c1), x in self.terms.items():
            for (a2, b2, c2), y in other.terms.items():
                key = (a1 + a2, b1 + b2, c1 + c2)
                val = out.get(key, Fraction(0)) + x * y
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        return _wrap(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = TriPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Rational)):
            other = TriPoly.constant(other)
        if not isinstance(other, TriPoly):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "TriPoly(0)"
        parts = []
        for (a, b, c), coeff in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "".join(
                f"{name}^{e}" if e > 1 else name
                for name, e in (("xi", a), ("eta", b), ("zeta", c))
                if e
            )
            parts.append(f"{coeff}{'*' + mono if mono else ''}")
        return "TriPoly(" + " + ".join(parts) + ")"


def _coerce(value) -> TriPoly | None:
    if isinstance(value, TriPoly):
        return value
    if isinstance(value, (int, Fraction, Rational)):
        return TriPoly.constant(value)
    return None


def _wrap(terms: dict[Exponents, Fraction]) -> TriPoly:
    poly = TriPoly.__new__(TriPoly)
    poly.terms = terms
    return poly


#: The coordinate polynomials and the barycentric complement 1 - xi - eta - zeta.
XI = TriPoly.monomial((1, 0, 0))
ETA = TriPoly.monomial((0, 1, 0))
ZETA = TriPoly.monomial((0, 0, 1))
ONE = TriPoly.constant(1)
LAMBDA0 = ONE - XI - ETA - ZETA


def monomial_integral(a: int, b: int, c: int, d: int = 0) -> Fraction:
    """Exact integral of xi^a eta^b zeta^c (1-xi-eta-zeta)^d over the reference tetrahedron.

    Uses the factorial identity a! b! c! d! / (a+b+c+d+3)!; the offset 3 is
    the simplex dimension. With all exponents zero this is the reference
    volume 1/6.
    """
    if min(a, b, c, d) < 0:
        raise ValueError("exponents must be non-negative")
    num = factorial(a) * factorial(b) * factorial(c) * factorial(d)
    return Fraction(num, factorial(a + b + c + d + 3))


def integrate_over_reference(poly: TriPoly) -> Fraction:
    """Exact integral of a polynomial over the reference tetrahedron."""
    total = Fraction(0)
    for (a, b, c), coeff in poly.terms.items():
        total += coeff * monomial_integral(a, b, c)
    return total
