"""Exact Laurent polynomials in one variable q with half-integer exponents.

Exponents live in (1/2)Z and are stored as doubled integers, so q^{3/2} is
the key 3 and q^2 is the key 4.  Coefficients are exact rationals.  All
arithmetic is exact; nothing in this module ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


class LaurentPoly:
    """A finite sum  sum_e c_e q^(e/2)  with c_e rational, keyed by doubled e.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if not isinstance(e, int):
                    raise TypeError(f"doubled exponent must be int, got {e!r}")
                c = Fraction(c)
                if c:
                    clean[e] = c
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def const(cls, c: Scalar) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def q_power(cls, n: int, coeff: Scalar = 1) -> "LaurentPoly":
        """coeff * q^n for integer n."""
        return cls({2 * n: coeff})

    @classmethod
    def half_power(cls, doubled: int, coeff: Scalar = 1) -> "LaurentPoly":
        """coeff * q^(doubled/2)."""
        return cls({doubled: coeff})

    @classmethod
    def from_int_coeffs(cls, coeffs: Mapping[int, Scalar]) -> "LaurentPoly":
        """Build from a map {integer exponent: coefficient}."""
        return cls({2 * e: c for e, c in coeffs.items()})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        """Copy of the {doubled exponent: coefficient} map."""
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: Fraction(1)}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def constant_coeff(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def monomial_data(self) -> tuple[int, Fraction]:
        """(doubled exponent, coefficient) of a monomial; error otherwise."""
        if not self.is_monomial():
            raise ValueError(f"not a monomial: {self}")
        [(e, c)] = self._terms.items()
        return e, c

    def has_integer_exponents(self) -> bool:
        return all(e % 2 == 0 for e in self._terms)

    def has_integer_coeffs(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def has_nonnegative_coeffs(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def min_doubled_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return min(self._terms)

    def max_doubled_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return max(self._terms)

    def int_coeffs(self) -> dict[int, int]:
        """{integer exponent: integer coefficient}; error if not of that shape."""
        if not self.has_integer_exponents():
            raise ValueError(f"non-integer exponents in {self}")
        if not self.has_integer_coeffs():
            raise ValueError(f"non-integer coefficients in {self}")
        return {e // 2: int(c) for e, c in sorted(self._terms.items())}

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = terms
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["LaurentPoly", Scalar]) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        terms: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = terms
        return out

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            return LaurentPoly.zero()
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e: a * c for e, a in self._terms.items()}
        return out

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            raise TypeError("exponent must be int")
        if n < 0:
            e, c = self.monomial_data()
            return LaurentPoly({n * e: Fraction(1, 1) / c ** (-n)})
        acc = LaurentPoly.one()
        base = self
        k = n
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    # -- substitution and evaluation ----------------------------------------

    def substitute_power(self, k: int) -> "LaurentPoly":
        """q -> q^k for a nonzero integer k (the Adams operation on q)."""
        if k == 0:
            raise ValueError("q -> q^0 collapses the grading")
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e * k: c for e, c in self._terms.items()}
        return out

    def evaluate(self, x: Scalar) -> Fraction:
        """Value at q = x, requiring integer exponents (x nonzero if any are negative)."""
        x = Fraction(x)
        total = Fraction(0)
        for e, c in self._terms.items():
            if e % 2:
                raise ValueError(f"cannot evaluate half-integer exponent {e}/2 at a rational")
            total += c * x ** (e // 2)
        return total

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict[str, str]:
        """{doubled exponent (as str): "num/den"}; the CLI/cache wire format."""
        return {str(e): f"{c.numerator}/{c.denominator}" for e, c in sorted(self._terms.items())}

    @classmethod
    def from_json_dict(cls, data: Mapping[str, str]) -> "LaurentPoly":
        terms: dict[int, Fraction] = {}
        for e, c in data.items():
            num, _, den = c.partition("/")
            terms[int(e)] = Fraction(int(num), int(den) if den else 1)
        return cls(terms)

    def to_flat_string(self, var: str = "q") -> str:
        """Lossy "c0+c1*q+..." rendering used by CSV output."""
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items()):
            if e == 0:
                parts.append(str(c))
            else:
                p = f"{e // 2}" if e % 2 == 0 else f"({e}/2)"
                parts.append(f"{c}*{var}^{p}")
        return "+".join(parts).replace("+-", "-")

    # -- dunder plumbing -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                parts.append(str(c))
                continue
            exp = str(e // 2) if e % 2 == 0 else f"{e}/2"
            if c == 1:
                parts.append(f"q^{exp}")
            elif c == -1:
                parts.append(f"-q^{exp}")
            else:
                parts.append(f"{c}*q^{exp}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


#: the monomial q (doubled exponent 2)
Q_VAR = LaurentPoly.q_power(1)


def lagrange_interpolate(points: Iterable[tuple[Scalar, Scalar]]) -> LaurentPoly:
    """Exact Lagrange interpolation through (x, y) pairs, as a polynomial in q.

    The x values must be pairwise distinct.  The result has integer exponents
    (it is an honest polynomial, possibly with rational coefficients).
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    result = LaurentPoly.zero()
    for j, (xj, yj) in enumerate(pts):
        if not yj:
            continue
        basis = LaurentPoly.const(yj)
        for m, (xm, _) in enumerate(pts):
            if m == j:
                continue
            denom = xj - xm
            basis = basis * LaurentPoly({2: Fraction(1, 1) / denom, 0: -xm / denom})
        result = result + basis
    return result
