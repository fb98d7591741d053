"""Truncated multigraded series over exact Laurent coefficients.

A GradedSeries stores, for every degree d inside a truncation box, a
LaurentPoly coefficient of z^d.  The box is a componentwise bound with an
optional total-degree cap; both are lower sets, so truncated ring and
plethystic arithmetic stay exact within the box.

Two plethystic exponentials are supported, differing in the Adams operation:
mode "z" scales only the z-grading (z^d -> z^{kd}); mode "qz" additionally
raises q -> q^k in the coefficients.
"""

from __future__ import annotations

import itertools
import warnings
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Mapping

from .laurent import LaurentPoly
from .quiver import DimVector

MODES = ("z", "qz")


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined on positive integers")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        else:
            p += 1
    if n > 1:
        result = -result
    return result


class Box:
    """Truncation region: degrees d with d <= bounds componentwise and,
    if total is set, |d| <= total."""

    __slots__ = ("bounds", "total")

    def __init__(self, bounds: Iterable[int], total: int | None = None):
        self.bounds = DimVector(bounds)
        self.total = total

    def __contains__(self, d) -> bool:
        d = tuple(d)
        if len(d) != len(self.bounds):
            return False
        if any(x < 0 or x > b for x, b in zip(d, self.bounds)):
            return False
        return self.total is None or sum(d) <= self.total

    def degrees(self) -> list[DimVector]:
        """All degrees in the box, sorted by total degree then lex."""
        out = [DimVector(t) for t in itertools.product(*(range(b + 1) for b in self.bounds))
               if self.total is None or sum(t) <= self.total]
        out.sort(key=lambda d: (sum(d), d))
        return out

    def max_total(self) -> int:
        cap = sum(self.bounds)
        return cap if self.total is None else min(cap, self.total)

    def meet(self, other: "Box") -> "Box":
        if self == other:
            return self
        warnings.warn("mixing truncation boxes; using the componentwise minimum",
                      stacklevel=3)
        bounds = DimVector(min(a, b) for a, b in zip(self.bounds, other.bounds, strict=True))
        totals = [t for t in (self.total, other.total) if t is not None]
        return Box(bounds, min(totals) if totals else None)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Box) and self.bounds == other.bounds
                and self.total == other.total)

    def __hash__(self) -> int:
        return hash((self.bounds, self.total))

    def __repr__(self) -> str:
        if self.total is None:
            return f"Box({list(self.bounds)})"
        return f"Box({list(self.bounds)}, total={self.total})"


class GradedSeries:
    """Map degree -> LaurentPoly, truncated to a Box.  Immutable by convention."""

    __slots__ = ("box", "coeffs")

    def __init__(self, box: Box, coeffs: Mapping[DimVector, LaurentPoly] | None = None):
        self.box = box
        store: dict[DimVector, LaurentPoly] = {}
        if coeffs:
            for d, c in coeffs.items():
                d = DimVector(d)
                if d not in box:
                    raise ValueError(f"degree {tuple(d)} outside box {box}")
                if not c.is_zero():
                    store[d] = c
        self.coeffs = store

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, box: Box) -> "GradedSeries":
        return cls(box)

    @classmethod
    def one(cls, box: Box) -> "GradedSeries":
        n = len(box.bounds)
        return cls(box, {DimVector.zero(n): LaurentPoly.one()})

    @classmethod
    def monomial(cls, box: Box, degree, coeff: LaurentPoly | int = 1) -> "GradedSeries":
        if isinstance(coeff, int):
            coeff = LaurentPoly.const(coeff)
        return cls(box, {DimVector(degree): coeff})

    # -- access ------------------------------------------------------------

    def coeff(self, d) -> LaurentPoly:
        return self.coeffs.get(DimVector(d), LaurentPoly.zero())

    def constant_term(self) -> LaurentPoly:
        return self.coeff(DimVector.zero(len(self.box.bounds)))

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[DimVector]:
        return sorted(self.coeffs, key=lambda d: (sum(d), d))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self.box == other.box and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        parts = [f"({self.coeffs[d]})*z^{tuple(d)}" for d in self.support()[:6]]
        more = " + ..." if len(self.coeffs) > 6 else ""
        return f"GradedSeries[{' + '.join(parts) or '0'}{more}]"

    # -- ring operations -----------------------------------------------------

    def _common_box(self, other: "GradedSeries") -> Box:
        return self.box.meet(other.box)

    def _restricted(self, box: Box) -> "GradedSeries":
        if box == self.box:
            return self
        return GradedSeries(box, {d: c for d, c in self.coeffs.items() if d in box})

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        box = self._common_box(other)
        a = self._restricted(box)
        b = other._restricted(box)
        coeffs = dict(a.coeffs)
        for d, c in b.coeffs.items():
            s = coeffs.get(d, LaurentPoly.zero()) + c
            if s.is_zero():
                coeffs.pop(d, None)
            else:
                coeffs[d] = s
        out = GradedSeries.__new__(GradedSeries)
        out.box, out.coeffs = box, coeffs
        return out

    def __neg__(self) -> "GradedSeries":
        out = GradedSeries.__new__(GradedSeries)
        out.box = self.box
        out.coeffs = {d: -c for d, c in self.coeffs.items()}
        return out

    def __sub__(self, other: "GradedSeries") -> "GradedSeries":
        return self + (-other)

    def __mul__(self, other) -> "GradedSeries":
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if isinstance(other, LaurentPoly):
            out = GradedSeries.__new__(GradedSeries)
            out.box = self.box
            out.coeffs = {d: p for d, c in self.coeffs.items()
                          if not (p := c * other).is_zero()}
            return out
        if not isinstance(other, GradedSeries):
            return NotImplemented
        box = self._common_box(other)
        a = self._restricted(box)
        b = other._restricted(box)
        coeffs: dict[DimVector, LaurentPoly] = {}
        for d1, c1 in a.coeffs.items():
            for d2, c2 in b.coeffs.items():
                d = d1 + d2
                if d in box:
                    s = coeffs.get(d, LaurentPoly.zero()) + c1 * c2
                    if s.is_zero():
                        coeffs.pop(d, None)
                    else:
                        coeffs[d] = s
        out = GradedSeries.__new__(GradedSeries)
        out.box, out.coeffs = box, coeffs
        return out

    __rmul__ = __mul__

    def inverse(self) -> "GradedSeries":
        """Multiplicative inverse; the constant term must be a unit (a nonzero
        monomial)."""
        c0 = self.constant_term()
        if c0.is_zero() or not c0.is_monomial():
            raise ValueError(f"constant term {c0} is not a unit")
        e0, a0 = c0.monomial_data()
        c0_inv = LaurentPoly({-e0: Fraction(1, 1) / a0})
        n = len(self.box.bounds)
        zero_deg = DimVector.zero(n)
        # f = c0 (1 + h) with h of positive degrees; invert by geometric series.
        h = (self - GradedSeries.monomial(self.box, zero_deg, c0)) * c0_inv
        result = GradedSeries.one(self.box)
        power = GradedSeries.one(self.box)
        for n in range(1, self.box.max_total() + 1):
            power = power * h
            if power.is_zero():
                break
            result = result + (power if n % 2 == 0 else -power)
        return result * c0_inv

    # -- Adams operations and plethystic Exp/Log -------------------------------

    def adams(self, k: int, mode: str) -> "GradedSeries":
        """psi_k: z^d -> z^{kd}; in mode "qz" also q -> q^k.  Degrees leaving
        the box are silently truncated."""
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if k < 1:
            raise ValueError("Adams index must be >= 1")
        if k == 1:
            return self
        coeffs = {}
        for d, c in self.coeffs.items():
            kd = k * d
            if kd in self.box:
                coeffs[kd] = c.substitute_power(k) if mode == "qz" else c
        return GradedSeries(self.box, coeffs)

    def exp(self) -> "GradedSeries":
        """Plain exponential of a series with zero constant term."""
        if not self.constant_term().is_zero():
            raise ValueError("exp requires zero constant term")
        result = GradedSeries.one(self.box)
        power = GradedSeries.one(self.box)
        for n in range(1, self.box.max_total() + 1):
            power = power * self
            if power.is_zero():
                break
            result = result + power * Fraction(1, factorial(n))
        return result

    def log(self) -> "GradedSeries":
        """Plain logarithm of a series with constant term 1."""
        if not self.constant_term().is_one():
            raise ValueError("log requires constant term 1")
        h = self - GradedSeries.one(self.box)
        result = GradedSeries.zero(self.box)
        power = GradedSeries.one(self.box)
        for n in range(1, self.box.max_total() + 1):
            power = power * h
            if power.is_zero():
                break
            result = result + power * Fraction((-1) ** (n + 1), n)
        return result

    def exp_plethystic(self, mode: str) -> "GradedSeries":
        """Exp(f) = exp(sum_k psi_k(f)/k); f must have zero constant term."""
        if not self.constant_term().is_zero():
            raise ValueError("Exp requires zero constant term")
        return exp_from_adams_family(lambda k: self.adams(k, mode), self.box)

    def log_plethystic(self, mode: str) -> "GradedSeries":
        """Log(g) = sum_k mu(k)/k psi_k(log g); g must have constant term 1."""
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        ell = self.log()
        acc = GradedSeries.zero(self.box)
        for k in range(1, self.box.max_total() + 1):
            mu = mobius(k)
            if mu:
                acc = acc + ell.adams(k, mode) * Fraction(mu, k)
        return acc

    def substitute_power(self, k: int) -> "GradedSeries":
        """q -> q^k in every coefficient (z-grading untouched)."""
        return GradedSeries(self.box,
                            {d: c.substitute_power(k) for d, c in self.coeffs.items()})

    def evaluate(self, x) -> dict[DimVector, Fraction]:
        """Evaluate every coefficient at q = x."""
        return {d: c.evaluate(x) for d, c in self.coeffs.items()}

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict[str, dict[str, str]]:
        return {",".join(map(str, d)): self.coeffs[d].to_json_dict()
                for d in self.support()}

    @classmethod
    def from_json_dict(cls, box: Box, data: Mapping[str, Mapping[str, str]]) -> "GradedSeries":
        coeffs = {}
        for key, val in data.items():
            d = DimVector(int(x) for x in key.split(","))
            coeffs[d] = LaurentPoly.from_json_dict(val)
        return cls(box, coeffs)


def exp_from_adams_family(family: Callable[[int], GradedSeries], box: Box) -> "GradedSeries":
    """exp(sum_{k>=1} family(k)/k), with family(k) the k-th Adams image.

    The generic engine behind both Exp variants; it also serves callers whose
    coefficients are numeric (where the q -> q^k substitution must happen
    before evaluation and is supplied by the caller).
    """
    acc = GradedSeries.zero(box)
    for k in range(1, box.max_total() + 1):
        fk = family(k)
        if fk.box != box:
            raise ValueError("Adams family must live in the target box")
        if not fk.constant_term().is_zero():
            raise ValueError("Adams images must have zero constant term")
        if fk.is_zero():
            continue
        acc = acc + fk * Fraction(1, k)
    return acc.exp()


# -- free-algebra characters ------------------------------------------------------


def free_assoc_char(f: GradedSeries) -> GradedSeries:
    """Character 1/(1-f) of the tensor algebra on generators with character f."""
    if not f.constant_term().is_zero():
        raise ValueError("generator series must have zero constant term")
    return (GradedSeries.one(f.box) - f).inverse()


def free_lie_char(f: GradedSeries) -> GradedSeries:
    """Character of the free Lie algebra on generators with character f, under
    the evenly-graded PBW convention: Log_{q,z}(1/(1-f)).

    Odd cohomological exponents are rejected (super-signs are out of scope).
    """
    if not f.constant_term().is_zero():
        raise ValueError("generator series must have zero constant term")
    for c in f.coeffs.values():
        if any(e % 4 != 0 for e in c.terms):
            raise ValueError("free_lie_char requires even cohomological exponents")
    return free_assoc_char(f).log_plethystic("qz")


def tensor_hcstar(f: GradedSeries, u: LaurentPoly, qterms: int = 32) -> GradedSeries:
    """Multiply f by the character 1/(1-u) of a polynomial ring on one
    generator of weight u.

    u must be a single monomial with |exponent| >= 1.  Since 1/(1-u) has
    infinite q-support, the geometric series is truncated to `qterms` terms;
    callers needing exact values evaluate at numeric q instead.
    """
    e, _ = u.monomial_data()
    if abs(e) < 2:
        raise ValueError("tensor weight must have |exponent| >= 1")
    geom = LaurentPoly.zero()
    term = LaurentPoly.one()
    for _ in range(qterms):
        geom = geom + term
        term = term * u
    return f * geom
