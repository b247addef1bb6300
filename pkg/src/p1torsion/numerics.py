"""Exact coefficient arithmetic: rationals, symbolic constants, precision reals.

Every series coefficient and cohomology-class coefficient in this package is a
ConstExpr: a finite Q-linear combination of a small, totally ordered basis of
transcendental symbols

    ONE            the rational unit
    GAMMA          the Euler-Mascheroni constant (= -Gamma'(1))
    ZETA_PRIME(-m) zeta'(-m) for odd m >= 1
    LOG(p)         log p for prime p (log n is factored into primes)
    LOG_T          the formal symbol log t

Keeping log n in prime-factored form and zeta(-m) folded into the rational
part makes cancellations exact set-differences rather than numeric near-zeros.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional

import mpmath as mp

Rational = Fraction

_GUARD_DPS = 10


class SymbolProductError(TypeError):
    """Raised when multiplying two non-rational ConstExpr values."""


class EvaluationError(ValueError):
    """Raised when a symbolic value cannot be evaluated numerically."""


# ---------------------------------------------------------------------------
# Symbols
# ---------------------------------------------------------------------------

# kind ranks fix the canonical total order used for deterministic summation.
_KIND_RANK = {"ONE": 0, "GAMMA": 1, "ZETA_PRIME": 2, "LOG": 3, "LOG_T": 4}


@dataclass(frozen=True, order=False)
class ConstSymbol:
    """One basis symbol. ``arg`` is m for ZETA_PRIME(-m), p for LOG(p), else 0."""

    kind: str
    arg: int = 0

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown symbol kind {self.kind!r}")
        if self.kind == "ZETA_PRIME":
            if self.arg < 1 or self.arg % 2 == 0:
                raise ValueError("ZETA_PRIME symbols exist only for odd m >= 1")
        elif self.kind == "LOG":
            if self.arg < 2:
                raise ValueError("LOG symbols need an integer argument >= 2")
        elif self.arg != 0:
            raise ValueError(f"{self.kind} takes no argument")

    def sort_key(self) -> tuple[int, int]:
        return (_KIND_RANK[self.kind], self.arg)

    def __lt__(self, other: "ConstSymbol") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.kind == "ZETA_PRIME":
            return f"ZETA_PRIME(-{self.arg})"
        if self.kind == "LOG":
            return f"LOG({self.arg})"
        return self.kind


ONE = ConstSymbol("ONE")
GAMMA = ConstSymbol("GAMMA")
LOG_T = ConstSymbol("LOG_T")

_SYMBOL_RE = re.compile(r"^(ONE|GAMMA|LOG_T|ZETA_PRIME\(-(\d+)\)|LOG\((\d+)\))$")


def symbol_from_string(text: str) -> ConstSymbol:
    m = _SYMBOL_RE.match(text)
    if not m:
        raise ValueError(f"unparseable symbol {text!r}")
    if m.group(2) is not None:
        return ConstSymbol("ZETA_PRIME", int(m.group(2)))
    if m.group(3) is not None:
        return ConstSymbol("LOG", int(m.group(3)))
    return ConstSymbol(text)


def _prime_factors(n: int) -> Iterator[tuple[int, int]]:
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            yield d, e
        d += 1
    if n > 1:
        yield n, 1


# ---------------------------------------------------------------------------
# ConstExpr
# ---------------------------------------------------------------------------

class ConstExpr:
    """Finite map ConstSymbol -> Fraction, with no zero coefficients stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[ConstSymbol, Fraction]] = None):
        clean: dict[ConstSymbol, Fraction] = {}
        if terms:
            for sym, coeff in terms.items():
                c = Fraction(coeff)
                if c:
                    clean[sym] = c
        self._terms = clean

    # -- constructors -------------------------------------------------------

    @staticmethod
    def rational(value) -> "ConstExpr":
        return ConstExpr({ONE: Fraction(value)})

    @staticmethod
    def gamma(coeff=1) -> "ConstExpr":
        return ConstExpr({GAMMA: Fraction(coeff)})

    @staticmethod
    def zeta_prime(m: int, coeff=1) -> "ConstExpr":
        return ConstExpr({ConstSymbol("ZETA_PRIME", m): Fraction(coeff)})

    @staticmethod
    def log_t(coeff=1) -> "ConstExpr":
        return ConstExpr({LOG_T: Fraction(coeff)})

    @staticmethod
    def log_int(n: int, coeff=1) -> "ConstExpr":
        """log n, stored prime-factored so that e.g. log 4 == 2 log 2 exactly."""
        if n < 1:
            raise ValueError("log_int needs n >= 1")
        terms = {ConstSymbol("LOG", p): Fraction(coeff) * e for p, e in _prime_factors(n)}
        return ConstExpr(terms)

    @staticmethod
    def log_rational(q) -> "ConstExpr":
        """log q for a positive rational q."""
        q = Fraction(q)
        if q <= 0:
            raise ValueError("log_rational needs q > 0")
        return ConstExpr.log_int(q.numerator) - ConstExpr.log_int(q.denominator)

    # -- queries -------------------------------------------------------------

    def terms(self) -> list[tuple[ConstSymbol, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def coeff(self, sym: ConstSymbol) -> Fraction:
        return self._terms.get(sym, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(sym == ONE for sym in self._terms)

    def has_logt(self) -> bool:
        return LOG_T in self._terms

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not a rational constant: {self}")
        return self.coeff(ONE)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "ConstExpr") -> "ConstExpr":
        if not isinstance(other, ConstExpr):
            return NotImplemented
        terms = dict(self._terms)
        for sym, c in other._terms.items():
            terms[sym] = terms.get(sym, Fraction(0)) + c
        return ConstExpr(terms)

    def __sub__(self, other: "ConstExpr") -> "ConstExpr":
        return self + (-other)

    def __neg__(self) -> "ConstExpr":
        return ConstExpr({s: -c for s, c in self._terms.items()})

    def scale(self, factor) -> "ConstExpr":
        f = Fraction(factor)
        return ConstExpr({s: c * f for s, c in self._terms.items()})

    def __mul__(self, other) -> "ConstExpr":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, ConstExpr):
            if other.is_rational():
                return self.scale(other.coeff(ONE))
            if self.is_rational():
                return other.scale(self.coeff(ONE))
            raise SymbolProductError(
                f"product of two non-rational constants: ({self}) * ({other})"
            )
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ConstExpr.rational(other)
        if not isinstance(other, ConstExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for sym, c in self.terms():
            if sym == ONE:
                parts.append(str(c))
            elif c == 1:
                parts.append(str(sym))
            elif c == -1:
                parts.append(f"-{sym}")
            else:
                parts.append(f"{c}*{sym}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- numeric evaluation ----------------------------------------------------

    def eval(self, dps: int = 50, logt_value=None) -> mp.mpf:
        """Substitute numeric values for all symbols and return the sum.

        ``logt_value`` must be supplied when a LOG_T term is present.
        Summation runs in canonical symbol order at a guarded precision, so
        the result is independent of construction order.
        """
        from . import specfun  # deferred: specfun builds on this module

        with mp.workdps(dps + _GUARD_DPS):
            total = mp.mpf(0)
            for sym, c in self.terms():
                coeff = mp.mpf(c.numerator) / c.denominator
                if sym == ONE:
                    val = mp.mpf(1)
                elif sym == GAMMA:
                    val = +mp.euler
                elif sym == LOG_T:
                    if logt_value is None:
                        raise EvaluationError("LOG_T present but no logt_value given")
                    val = mp.mpf(logt_value)
                elif sym.kind == "LOG":
                    val = mp.log(sym.arg)
                else:  # ZETA_PRIME
                    val = specfun.zeta_prime_neg(sym.arg, dps=dps + _GUARD_DPS)
                total += coeff * val
            result = total
        with mp.workdps(dps):
            return +result


ZERO_EXPR = ConstExpr()
ONE_EXPR = ConstExpr.rational(1)


# ---------------------------------------------------------------------------
# Harmonic numbers
# ---------------------------------------------------------------------------

_harmonic_cache: list[Fraction] = [Fraction(0)]


def harmonic(m: int) -> Fraction:
    """H_m = sum_{j=1..m} 1/j as an exact rational; harmonic(0) = 0."""
    if m < 0:
        raise ValueError("harmonic needs m >= 0")
    while len(_harmonic_cache) <= m:
        j = len(_harmonic_cache)
        _harmonic_cache.append(_harmonic_cache[-1] + Fraction(1, j))
    return _harmonic_cache[m]


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def const_to_json(e: ConstExpr) -> dict:
    return {
        "terms": [
            {"symbol": str(sym), "num": str(c.numerator), "den": str(c.denominator)}
            for sym, c in e.terms()
        ]
    }


def const_from_json(data: Mapping) -> ConstExpr:
    terms: dict[ConstSymbol, Fraction] = {}
    for item in data["terms"]:
        sym = symbol_from_string(item["symbol"])
        terms[sym] = terms.get(sym, Fraction(0)) + Fraction(int(item["num"]), int(item["den"]))
    return ConstExpr(terms)


def eval_const(e: ConstExpr, dps: int = 50, logt_value=None) -> mp.mpf:
    """Module-level alias for ConstExpr.eval."""
    return e.eval(dps=dps, logt_value=logt_value)
