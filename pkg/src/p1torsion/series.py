"""Truncated Laurent series in one variable t with ConstExpr coefficients.

Series are immutable. Every series records the degree window [min_degree,
order] it is valid on; arithmetic tracks the tightest valid truncation
(a product of series valid to N1, N2 with minimal degrees m1, m2 is valid to
min(N1 + m2, N2 + m1)). Poles are capped at t^-2, the worst case occurring in
any of the assembled torsion quantities (cos(.)/(t sin(t/2)) ~ 2/t^2).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Optional

import mpmath as mp

from .numerics import ConstExpr, harmonic

MIN_DEGREE_CAP = -2
DEFAULT_ORDER = 40


class ParityError(ValueError):
    """A series had nonzero coefficients of the forbidden parity."""


class SingularityError(ZeroDivisionError):
    """Division by a series whose leading coefficient vanishes."""


class LaurentSeries:
    """Finite coefficient window of sum_{m>=m0} a_m t^m, a_m ConstExpr."""

    __slots__ = ("min_degree", "order", "_coeffs")

    def __init__(self, coeffs: Mapping[int, ConstExpr], min_degree: int, order: int):
        if min_degree < MIN_DEGREE_CAP:
            raise ValueError(f"min_degree {min_degree} below cap {MIN_DEGREE_CAP}")
        if order < min_degree:
            raise ValueError("order below min_degree")
        self.min_degree = min_degree
        self.order = order
        self._coeffs = {
            d: c for d, c in coeffs.items()
            if min_degree <= d <= order and not c.is_zero()
        }

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(order: int = DEFAULT_ORDER) -> "LaurentSeries":
        return LaurentSeries({}, 0, order)

    @staticmethod
    def constant(c, order: int = DEFAULT_ORDER) -> "LaurentSeries":
        expr = c if isinstance(c, ConstExpr) else ConstExpr.rational(c)
        return LaurentSeries({0: expr}, 0, order)

    @staticmethod
    def monomial(degree: int, c=1, order: int = DEFAULT_ORDER) -> "LaurentSeries":
        expr = c if isinstance(c, ConstExpr) else ConstExpr.rational(c)
        return LaurentSeries({degree: expr}, min(degree, 0), max(order, degree))

    # -- queries ---------------------------------------------------------------

    def coeff(self, degree: int) -> ConstExpr:
        if degree > self.order:
            raise IndexError(f"degree {degree} beyond valid order {self.order}")
        return self._coeffs.get(degree, ConstExpr())

    def degrees(self) -> list[int]:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_even(self) -> bool:
        return all(d % 2 == 0 for d in self._coeffs)

    def is_odd(self) -> bool:
        return all(d % 2 == 1 for d in self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        window = range(max(self.min_degree, other.min_degree),
                       min(self.order, other.order) + 1)
        return all(self.coeff(d) == other.coeff(d) for d in window)

    def __repr__(self) -> str:
        if self.is_zero():
            return f"O(t^{self.order + 1})"
        parts = [f"({self._coeffs[d]})*t^{d}" for d in self.degrees()]
        return " + ".join(parts) + f" + O(t^{self.order + 1})"

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        order = min(self.order, other.order)
        lo = min(self.min_degree, other.min_degree)
        coeffs: dict[int, ConstExpr] = {}
        for d in set(self._coeffs) | set(other._coeffs):
            if d <= order:
                coeffs[d] = self._coeffs.get(d, ConstExpr()) + other._coeffs.get(d, ConstExpr())
        return LaurentSeries(coeffs, lo, order)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries({d: -c for d, c in self._coeffs.items()},
                             self.min_degree, self.order)

    def scale(self, factor) -> "LaurentSeries":
        if not isinstance(factor, ConstExpr):
            factor = ConstExpr.rational(factor)
        return LaurentSeries({d: c * factor for d, c in self._coeffs.items()},
                             self.min_degree, self.order)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by t^k."""
        return LaurentSeries({d + k: c for d, c in self._coeffs.items()},
                             self.min_degree + k, self.order + k)

    def __mul__(self, other) -> "LaurentSeries":
        if isinstance(other, (int, Fraction, ConstExpr)):
            return self.scale(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        order = min(self.order + other.min_degree, other.order + self.min_degree)
        lo = self.min_degree + other.min_degree
        coeffs: dict[int, ConstExpr] = {}
        for d1, c1 in self._coeffs.items():
            for d2, c2 in other._coeffs.items():
                d = d1 + d2
                if d <= order:
                    prod = c1 * c2
                    coeffs[d] = coeffs.get(d, ConstExpr()) + prod
        if lo < MIN_DEGREE_CAP:
            # allowed only when the overly-deep coefficients actually vanish
            for d in list(coeffs):
                if d < MIN_DEGREE_CAP:
                    if not coeffs[d].is_zero():
                        raise SingularityError(
                            f"product has a pole of order {-d} > 2")
                    del coeffs[d]
            lo = MIN_DEGREE_CAP
        return LaurentSeries(coeffs, lo, order)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "LaurentSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return LaurentSeries(self._coeffs, self.min_degree, order)

    def tighten(self) -> "LaurentSeries":
        """Raise min_degree to the actual valuation (coefficients inside the
        old window are known, so vanishing ones sharpen order tracking)."""
        lo = min(self._coeffs, default=0)
        return LaurentSeries(self._coeffs, max(self.min_degree, min(lo, self.order)), self.order)

    def invert(self) -> "LaurentSeries":
        """1/self. The leading coefficient must be a nonzero rational."""
        if self.is_zero():
            raise SingularityError("division by the zero series")
        lead_deg = self.degrees()[0]
        lead = self._coeffs[lead_deg]
        if not lead.is_rational():
            raise SingularityError("leading coefficient is not rational")
        lead_val = lead.rational_value()
        if lead_val == 0:
            raise SingularityError("leading coefficient vanishes")
        # self = lead * t^L * (1 + u) with u of positive valuation
        n_terms = self.order - lead_deg
        u = (self.shift(-lead_deg).scale(Fraction(1, 1) / lead_val)
             - LaurentSeries.constant(1, n_terms)).truncate(n_terms).tighten()
        inv = LaurentSeries.constant(1, n_terms)
        power = LaurentSeries.constant(1, n_terms)
        for k in range(1, n_terms + 1):
            power = power * u
            if power.min_degree > n_terms or power.is_zero():
                break
            power = power.truncate(min(n_terms, power.order))
            inv = inv + power.scale((-1) ** k)
        return inv.scale(Fraction(1, 1) / lead_val).shift(-lead_deg)

    def __truediv__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self * other.invert()

    # -- evaluation ----------------------------------------------------------------

    def evaluate(self, t, logt=None, dps: int = 50):
        """Numeric value sum a_m t^m; needs t != 0 when poles are present."""
        with mp.workdps(dps + 10):
            tv = mp.mpf(t)
            if tv == 0 and self.min_degree < 0 and any(d < 0 for d in self._coeffs):
                raise ZeroDivisionError("evaluating a pole at t = 0")
            if logt is None and tv > 0:
                logt = mp.log(tv)
            total = mp.mpf(0)
            for d in self.degrees():
                total += self._coeffs[d].eval(dps=dps + 10, logt_value=logt) * tv ** d
        with mp.workdps(dps):
            return +total

    def to_json(self, dps: Optional[int] = None) -> dict:
        from .numerics import const_to_json
        entries = []
        for d in self.degrees():
            entry = {"deg": d, "expr": const_to_json(self._coeffs[d])}
            if dps is not None and not self._coeffs[d].has_logt():
                entry["numeric"] = mp.nstr(self._coeffs[d].eval(dps=dps), dps)
            entries.append(entry)
        return {"var": "t", "min_degree": self.min_degree, "order": self.order,
                "coeffs": entries}


# ---------------------------------------------------------------------------
# Elementary builders (exact rational Taylor/Laurent coefficients)
# ---------------------------------------------------------------------------

def build_cos_scaled(a, order: int = DEFAULT_ORDER) -> LaurentSeries:
    """cos(a t / 2)."""
    a = Fraction(a)
    coeffs = {}
    fact = Fraction(1)
    for j in range(0, order // 2 + 1):
        if j > 0:
            fact *= (2 * j - 1) * (2 * j)
        coeffs[2 * j] = ConstExpr.rational((-1) ** j * (a / 2) ** (2 * j) / fact)
    return LaurentSeries(coeffs, 0, order)


def build_sin_scaled(a, order: int = DEFAULT_ORDER) -> LaurentSeries:
    """sin(a t / 2)."""
    a = Fraction(a)
    coeffs = {}
    fact = Fraction(1)
    for j in range(0, (order + 1) // 2):
        if j > 0:
            fact *= (2 * j) * (2 * j + 1)
        coeffs[2 * j + 1] = ConstExpr.rational((-1) ** j * (a / 2) ** (2 * j + 1) / fact)
    return LaurentSeries(coeffs, 0, order)


def build_exp_scaled(a, order: int = DEFAULT_ORDER) -> LaurentSeries:
    """exp(a t / 2)."""
    a = Fraction(a)
    coeffs = {}
    term = Fraction(1)
    for k in range(order + 1):
        if k > 0:
            term *= (a / 2) / k
        coeffs[k] = ConstExpr.rational(term)
    return LaurentSeries(coeffs, 0, order)


def build_inv_sin_half(order: int = DEFAULT_ORDER) -> LaurentSeries:
    """1/sin(t/2) = 2/t + t/12 + 7 t^3/2880 + ...; min_degree -1."""
    return build_sin_scaled(1, order + 2).invert().truncate(order)


def build(kind: str, order: int = DEFAULT_ORDER, a=None, c=None) -> LaurentSeries:
    """Dispatch over the builder kinds used by the torsion formulas."""
    if kind == "cos_scaled":
        return build_cos_scaled(a, order)
    if kind == "sin_scaled":
        return build_sin_scaled(a, order)
    if kind == "exp_scaled":
        return build_exp_scaled(a, order)
    if kind == "inv_sin_half":
        return build_inv_sin_half(order)
    if kind == "const":
        return LaurentSeries.constant(c, order)
    raise ValueError(f"unknown builder kind {kind!r}")


# ---------------------------------------------------------------------------
# Harmonic-weight operators
# ---------------------------------------------------------------------------

def star(phi: LaurentSeries) -> LaurentSeries:
    """t^{2m} -> t^{2m} (2 H_{2m+1} - H_m) for m >= 0; the t^{-2} term maps to 0.

    The input must be even with min_degree >= -2.
    """
    if not phi.is_even():
        raise ParityError("star operator needs an even series")
    coeffs: dict[int, ConstExpr] = {}
    for d in phi.degrees():
        m = d // 2
        if m == -1:
            continue
        weight = 2 * harmonic(2 * m + 1) - harmonic(m)
        coeffs[d] = phi.coeff(d) * ConstExpr.rational(weight)
    return LaurentSeries(coeffs, max(phi.min_degree, 0), phi.order)


def hash_weight(phi: LaurentSeries) -> ConstExpr:
    """sum_{m>=1} a_{2m} (2 H_{2m-1} - H_{m-1}); the constant term drops out.

    The input must be an even power series (min_degree >= 0).
    """
    if phi.min_degree < 0:
        raise ParityError("# operator needs a power series (no poles)")
    if not phi.is_even():
        raise ParityError("# operator needs an even series")
    total = ConstExpr()
    for d in phi.degrees():
        m = d // 2
        if m == 0:
            continue
        weight = 2 * harmonic(2 * m - 1) - harmonic(m - 1)
        total = total + phi.coeff(d) * ConstExpr.rational(weight)
    return total
