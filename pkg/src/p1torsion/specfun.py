"""Special-function values consumed by the torsion formulas.

Provides exact zeta values at non-positive integers, high-precision zeta
derivatives there, the Lerch zeta function and its s-derivative at negative
integers, the sine/cosine/exponential integrals, the rotation-equivariant
R-series, and the (non-equivariant) R-class series.

The Lerch continuation runs through Hurwitz's formula

    zeta_L(s, phi) = (2pi)^s Gamma(1-s)/(2 pi i)
                     * [e^{i pi s/2} zeta(1-s, 1-a) - e^{-i pi s/2} zeta(1-s, a)]

with a = phi/(2 pi), and the Hurwitz zeta function (plus its analytic
s-derivative) is computed by Euler-Maclaurin summation in-house so the
continuation path is independent of the closed-form path.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .numerics import ConstExpr, harmonic
from .series import DEFAULT_ORDER, LaurentSeries

_GUARD = 10


# ---------------------------------------------------------------------------
# Bernoulli numbers and zeta at non-positive integers (exact)
# ---------------------------------------------------------------------------

_bernoulli_cache: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """B_n (with B_1 = -1/2), exact, by the defining recurrence."""
    if n < 0:
        raise ValueError("bernoulli needs n >= 0")
    while len(_bernoulli_cache) <= n:
        m = len(_bernoulli_cache)
        # sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
        acc = Fraction(0)
        binom = 1
        for j in range(m):
            acc += binom * _bernoulli_cache[j]
            binom = binom * (m + 1 - j) // (j + 1)
        _bernoulli_cache.append(-acc / (m + 1))
    return _bernoulli_cache[n]


def zeta_neg(m: int) -> Fraction:
    """zeta(-m) = -B_{m+1}/(m+1) for integer m >= 0."""
    if m < 0:
        raise ValueError("zeta_neg needs m >= 0")
    return -bernoulli(m + 1) / (m + 1)


# ---------------------------------------------------------------------------
# Hurwitz zeta by Euler-Maclaurin, with analytic s-derivative
# ---------------------------------------------------------------------------

def _pochhammer_and_derivative(s, n: int):
    """(s)_n = s(s+1)...(s+n-1) and its derivative in s."""
    p = mp.mpf(1) if not isinstance(s, mp.mpc) else mp.mpc(1)
    dp = 0 * p
    for i in range(n):
        dp = dp * (s + i) + p
        p = p * (s + i)
    return p, dp


def hurwitz_zeta(s, a, dps: int = 50, derivative: bool = False):
    """zeta(s, a) = sum_{n>=0} (n+a)^{-s}, continued by Euler-Maclaurin.

    With derivative=True, returns d/ds zeta(s, a) instead (term-by-term
    analytic derivative of the same Euler-Maclaurin formula).  Valid for
    real or complex s != 1 and a > 0.
    """
    with mp.workdps(dps + _GUARD):
        s = mp.mpmathify(s)
        a = mp.mpf(a)
        if s == 1:
            raise ValueError("Hurwitz zeta has a pole at s = 1")
        # Choose the shift N and correction depth J for the target precision.
        N = max(int(mp.ceil(abs(s))) + 10, int(1.4 * (dps + _GUARD)))
        J = dps + _GUARD
        X = N + a
        logX = mp.log(X)
        head = mp.mpf(0)
        for n in range(N):
            base = (n + a) ** (-s)
            head += -mp.log(n + a) * base if derivative else base
        pole = X ** (1 - s) / (s - 1)
        if derivative:
            pole = X ** (1 - s) * (-logX / (s - 1) - 1 / (s - 1) ** 2)
        mid = X ** (-s) / 2
        if derivative:
            mid = -logX * X ** (-s) / 2
        tail = mp.mpf(0)
        prev = mp.inf
        for j in range(1, J + 1):
            b = bernoulli(2 * j)
            coeff = mp.mpf(b.numerator) / b.denominator / mp.factorial(2 * j)
            p, dp = _pochhammer_and_derivative(s, 2 * j - 1)
            power = X ** (-s - 2 * j + 1)
            if derivative:
                term = coeff * (dp - p * logX) * power
            else:
                term = coeff * p * power
            if abs(term) > prev:
                break  # asymptotic series started diverging
            tail += term
            prev = abs(term)
            if prev < mp.mpf(10) ** (-(dps + _GUARD) - 5):
                break
        result = head + pole + mid + tail
    with mp.workdps(dps):
        return +result


def stieltjes_gamma1(a, dps: int = 50):
    """Generalized Stieltjes constant gamma_1(a).

    gamma_1(a) = lim_N [sum_{n=0}^{N} log(n+a)/(n+a) - log^2(N+a)/2],
    accelerated by Euler-Maclaurin corrections for f(x) = log(x)/x, whose
    derivatives are f^{(n)}(x) = (-1)^n n! (log x - H_n)/x^{n+1}.
    """
    with mp.workdps(dps + _GUARD):
        a = mp.mpf(a)
        N = int(1.4 * (dps + _GUARD)) + 10
        X = N + a
        logX = mp.log(X)
        total = mp.fsum(mp.log(n + a) / (n + a) for n in range(N))
        total -= logX ** 2 / 2
        total += logX / (2 * X)  # the f(X)/2 endpoint term
        prev = mp.inf
        for j in range(1, dps + _GUARD):
            b = bernoulli(2 * j)
            coeff = mp.mpf(b.numerator) / b.denominator / mp.factorial(2 * j)
            h = harmonic(2 * j - 1)
            deriv = -mp.factorial(2 * j - 1) * (logX - mp.mpf(h.numerator) / h.denominator) / X ** (2 * j)
            term = -coeff * deriv
            if abs(term) > prev:
                break
            total += term
            prev = abs(term)
            if prev < mp.mpf(10) ** (-(dps + _GUARD) - 5):
                break
        result = total
    with mp.workdps(dps):
        return +result


# ---------------------------------------------------------------------------
# zeta'(-m)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def zeta_prime_neg(m: int, dps: int = 50):
    """zeta'(-m) for odd m >= 1 via the functional equation.

    Logarithmic differentiation of zeta(s) = 2^s pi^{s-1} sin(pi s/2)
    Gamma(1-s) zeta(1-s) at s = -m (where the cotangent term vanishes) gives

        zeta'(-m) = zeta(-m) [log(2 pi) - psi(m+1) - zeta'(m+1)/zeta(m+1)].
    """
    if m < 1 or m % 2 == 0:
        raise ValueError("zeta_prime_neg is defined here only for odd m >= 1")
    with mp.workdps(dps + _GUARD):
        zneg = zeta_neg(m)
        zneg_v = mp.mpf(zneg.numerator) / zneg.denominator
        ratio = mp.zeta(m + 1, derivative=1) / mp.zeta(m + 1)
        result = zneg_v * (mp.log(2 * mp.pi) - mp.digamma(m + 1) - ratio)
    with mp.workdps(dps):
        return +result


# ---------------------------------------------------------------------------
# Lerch zeta at negative integers: closed form and continuation
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _negapolylog_poly(k: int) -> tuple[int, ...]:
    """Coefficients of P_k with Li_{-k}(z) = P_k(z)/(1-z)^{k+1}, P_0 = z.

    The recurrence P_{k+1}(z) = z (P_k'(z)(1-z) + (k+1) P_k(z)) follows from
    applying z d/dz to P_k/(1-z)^{k+1}.
    """
    if k == 0:
        return (0, 1)
    p = _negapolylog_poly(k - 1)
    dp = tuple(i * c for i, c in enumerate(p))[1:]  # P'
    # P'(z)(1-z):
    a = list(dp) + [0]
    for i in range(len(dp)):
        a[i + 1] -= dp[i]
    # + k*P
    for i, c in enumerate(p):
        if i < len(a):
            a[i] += k * c
        else:
            a.append(k * c)
    # times z
    return tuple([0] + a)


def _check_phi(phi):
    if mp.almosteq(mp.exp(1j * mp.mpf(phi)), 1, rel_eps=mp.mpf(10) ** -30,
                   abs_eps=mp.mpf(10) ** -30):
        raise ValueError("phi must not be congruent to 0 mod 2*pi")


def lerch_neg(k: int, phi, dps: int = 50):
    """zeta_L(-k, phi) = Li_{-k}(e^{i phi}) as an exact rational function of
    z = e^{i phi}, evaluated numerically."""
    if k < 0:
        raise ValueError("lerch_neg needs k >= 0")
    with mp.workdps(dps + _GUARD):
        _check_phi(phi)
        z = mp.exp(1j * mp.mpf(phi))
        num = mp.polyval(list(reversed(_negapolylog_poly(k))), z)
        result = num / (1 - z) ** (k + 1)
    with mp.workdps(dps):
        return +result


def lerch_prime_neg(k: int, phi, dps: int = 50):
    """d/ds zeta_L(s, phi) at s = -k, by the analytic derivative of the
    Hurwitz-formula continuation.

    For k >= 1 the two Hurwitz zeta values sit at 1+k, away from the pole;
    for k = 0 the 1/s poles of the bracket cancel and the limit is expressed
    through psi and the generalized Stieltjes constant gamma_1.
    """
    if k < 0:
        raise ValueError("lerch_prime_neg needs k >= 0")
    wdps = dps + _GUARD
    with mp.workdps(wdps):
        phi = mp.mpf(phi)
        _check_phi(phi)
        a = mp.fmod(phi / (2 * mp.pi), 1)
        if a < 0:
            a += 1
        if k == 0:
            # F(s) = C(s) B(s) with C(0) = 1/(2 pi i), C'(0)/C(0) = log 2pi + gamma,
            # B(s) = B0 + B1 s + O(s^2):
            #   B0 = psi(a) - psi(1-a) - i pi
            #   B1 = gamma_1(1-a) - gamma_1(a) - (i pi/2)(psi(1-a) + psi(a))
            B0 = mp.digamma(a) - mp.digamma(1 - a) - 1j * mp.pi
            B1 = (stieltjes_gamma1(1 - a, wdps) - stieltjes_gamma1(a, wdps)
                  - 0.5j * mp.pi * (mp.digamma(1 - a) + mp.digamma(a)))
            result = ((mp.log(2 * mp.pi) + mp.euler) * B0 + B1) / (2j * mp.pi)
        else:
            s = mp.mpf(-k)
            w = 1 - s
            C = (2 * mp.pi) ** s * mp.gamma(w) / (2j * mp.pi)
            dC = C * (mp.log(2 * mp.pi) - mp.digamma(w))
            e_plus = mp.exp(1j * mp.pi * s / 2)
            e_minus = mp.exp(-1j * mp.pi * s / 2)
            z1 = hurwitz_zeta(w, 1 - a, wdps)
            z2 = hurwitz_zeta(w, a, wdps)
            dz1 = hurwitz_zeta(w, 1 - a, wdps, derivative=True)
            dz2 = hurwitz_zeta(w, a, wdps, derivative=True)
            B = e_plus * z1 - e_minus * z2
            # d/ds zeta(1-s, x) = -zeta_w(1-s, x)
            dB = (0.5j * mp.pi * e_plus * z1 - e_plus * dz1
                  + 0.5j * mp.pi * e_minus * z2 + e_minus * dz2)
            result = dC * B + C * dB
    with mp.workdps(dps):
        return +result


def lerch_value(s, phi, dps: int = 50):
    """zeta_L(s, phi) for general s != 1, 2, 3, ... by the same continuation.

    Used as the continuation-path oracle; at s = -k it must match lerch_neg.
    """
    wdps = dps + _GUARD
    with mp.workdps(wdps):
        s = mp.mpmathify(s)
        phi = mp.mpf(phi)
        _check_phi(phi)
        a = mp.fmod(phi / (2 * mp.pi), 1)
        if a < 0:
            a += 1
        if s == 1:
            raise ValueError("zeta_L(1, phi) is outside this continuation")
        if mp.isint(s) and s > 1:
            # Gamma(1-s) has a simple pole and the bracket vanishes; the
            # product tends to (residue of C) * B'(n).
            n = int(s)
            e_plus = mp.exp(1j * mp.pi * n / 2)
            e_minus = mp.exp(-1j * mp.pi * n / 2)
            z1 = hurwitz_zeta(1 - n, 1 - a, wdps)
            z2 = hurwitz_zeta(1 - n, a, wdps)
            dz1 = hurwitz_zeta(1 - n, 1 - a, wdps, derivative=True)
            dz2 = hurwitz_zeta(1 - n, a, wdps, derivative=True)
            dB = (0.5j * mp.pi * e_plus * z1 - e_plus * dz1
                  + 0.5j * mp.pi * e_minus * z2 + e_minus * dz2)
            res_C = (2 * mp.pi) ** n / (2j * mp.pi) * (-(-1) ** (n - 1)
                                                       / mp.factorial(n - 1))
            result = res_C * dB
        else:
            C = (2 * mp.pi) ** s * mp.gamma(1 - s) / (2j * mp.pi)
            B = (mp.exp(1j * mp.pi * s / 2) * hurwitz_zeta(1 - s, 1 - a, wdps)
                 - mp.exp(-1j * mp.pi * s / 2) * hurwitz_zeta(1 - s, a, wdps))
            result = C * B
    with mp.workdps(dps):
        return +result


# ---------------------------------------------------------------------------
# Sine, cosine and exponential integrals
# ---------------------------------------------------------------------------

def _sici_taylor(x, dps: int):
    """(Si(x), Cin(x)) by Taylor series with enough guard digits to absorb
    the ~0.434*x digits of cancellation."""
    boost = int(0.45 * abs(x)) + _GUARD
    with mp.workdps(dps + boost):
        x = mp.mpf(x)
        x2 = x * x
        si_term = mp.mpf(x)      # (-1)^j x^{2j+1}/(2j+1)!
        si = mp.mpf(x)
        cin_term = mp.mpf(1)     # (-1)^j x^{2j}/(2j)!
        cin = mp.mpf(0)
        eps = mp.mpf(10) ** (-(dps + boost))
        k = 1
        while True:
            si_term *= -x2 / ((2 * k) * (2 * k + 1))
            si += si_term / (2 * k + 1)
            cin_term *= -x2 / ((2 * k - 1) * (2 * k))
            cin += cin_term / (2 * k)
            if abs(si_term) < eps and abs(cin_term) < eps:
                break
            k += 1
        si_v, cin_v = +si, +cin
    with mp.workdps(dps):
        return +si_v, +cin_v


def _sici_asymptotic(x, dps: int):
    """(Si(x), Ci(x)) from the auxiliary expansions
    f(x) ~ sum (-1)^k (2k)!/x^{2k+1}, g(x) ~ sum (-1)^k (2k+1)!/x^{2k+2},
    truncated at the smallest term."""
    with mp.workdps(dps + _GUARD):
        x = mp.mpf(x)
        f = mp.mpf(0)
        g = mp.mpf(0)
        term_f = 1 / x
        term_g = 1 / (x * x)
        k = 0
        prev_f = mp.inf
        while abs(term_f) < prev_f:
            f += term_f
            g += term_g
            prev_f = abs(term_f)
            k += 1
            term_f *= -(2 * k - 1) * (2 * k) / (x * x)
            term_g *= -(2 * k) * (2 * k + 1) / (x * x)
        sx, cx = mp.sin(x), mp.cos(x)
        si = mp.pi / 2 - f * cx - g * sx
        ci = f * sx - g * cx
    with mp.workdps(dps):
        return +si, +ci


def _sici_crossover(dps: int) -> float:
    # Asymptotic remainder is bounded below by ~e^{-x}; x must exceed
    # dps*ln(10) before the expansion can reach dps digits.
    return 2.4 * dps + 10


def si(x, dps: int = 50):
    """Si(x) = int_0^x sin(t)/t dt."""
    xv = mp.mpf(x)
    if xv < 0:
        return -si(-xv, dps)
    if xv <= _sici_crossover(dps):
        return _sici_taylor(xv, dps)[0]
    return _sici_asymptotic(xv, dps)[0]


def ci(x, dps: int = 50):
    """Ci(x) = -int_x^inf cos(t)/t dt, for x > 0."""
    xv = mp.mpf(x)
    if xv <= 0:
        raise ValueError("ci needs x > 0")
    if xv <= _sici_crossover(dps):
        cin = _sici_taylor(xv, dps)[1]
        with mp.workdps(dps):
            return +(mp.euler + mp.log(xv) + cin)
    return _sici_asymptotic(xv, dps)[1]


def ei(x, dps: int = 50):
    """Ei(x) = -int_{-x}^inf e^{-t}/t dt, implemented for x < 0 (the only
    case the formulas need): Ei(x) = gamma + log|x| + sum x^k/(k k!)."""
    xv = mp.mpf(x)
    if xv >= 0:
        raise ValueError("ei is implemented for x < 0 only")
    with mp.workdps(dps + _GUARD):
        total = mp.euler + mp.log(-xv)
        term = mp.mpf(1)
        k = 1
        eps = mp.mpf(10) ** (-(dps + _GUARD))
        while True:
            term *= xv / k
            total += term / k
            if abs(term) < eps:
                break
            k += 1
        result = total
    with mp.workdps(dps):
        return +result


def si_ci_ei(x, dps: int = 50):
    """(Si(x), Ci(x), Ei(-x)) for x > 0."""
    xv = mp.mpf(x)
    if xv <= 0:
        raise ValueError("si_ci_ei needs x > 0")
    return si(xv, dps), ci(xv, dps), ei(-xv, dps)


# ---------------------------------------------------------------------------
# R-series
# ---------------------------------------------------------------------------

def r_rot_series(order: int = DEFAULT_ORDER) -> LaurentSeries:
    """R^rot(t) = (gamma + log t)/t - sum_{m odd} zeta'(-m)(-1)^{(m+1)/2} t^m/m!

    as a symbolic Laurent series (the t^{-1} coefficient stays GAMMA + LOG_T).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    coeffs = {-1: ConstExpr.gamma() + ConstExpr.log_t()}
    fact = Fraction(1)
    for m in range(1, order + 1):
        fact *= m
        if m % 2 == 1:
            sign = (-1) ** ((m + 1) // 2)
            coeffs[m] = ConstExpr.zeta_prime(m, -Fraction(sign, 1) / fact)
    return LaurentSeries(coeffs, -1, order)


def r_rot_value(t, dps: int = 50):
    """R^rot(t) numerically, for 0 < t < 2 pi.

    The zeta'(-m) terms decay geometrically like (t/2pi)^m, so the sum is
    truncated adaptively rather than at a fixed order.
    """
    with mp.workdps(dps + _GUARD):
        tv = mp.mpf(t)
        if not 0 < tv < 2 * mp.pi:
            raise ValueError("r_rot_value needs 0 < t < 2*pi")
        total = (mp.euler + mp.log(tv)) / tv
        eps = mp.mpf(10) ** (-(dps + _GUARD))
        m = 1
        tpow = tv
        fact = mp.mpf(1)
        while True:
            sign = (-1) ** ((m + 1) // 2)
            term = zeta_prime_neg(m, dps + _GUARD) * sign * tpow / fact
            total -= term
            if abs(term) < eps and m > 5:
                break
            tpow *= tv * tv
            fact *= (m + 1) * (m + 2)
            m += 2
        result = total
    with mp.workdps(dps):
        return +result


def gs_r_series(order: int = DEFAULT_ORDER) -> LaurentSeries:
    """The R-class generating series
    sum_{m odd} (2 zeta'(-m) + H_m zeta(-m)) x^m / m!  (odd, symbolic)."""
    if order < 1:
        raise ValueError("order must be >= 1")
    coeffs = {}
    fact = Fraction(1)
    for m in range(1, order + 1):
        fact *= m
        if m % 2 == 1:
            expr = (ConstExpr.zeta_prime(m, 2)
                    + ConstExpr.rational(harmonic(m) * zeta_neg(m)))
            coeffs[m] = expr.scale(Fraction(1, 1) / fact)
    return LaurentSeries(coeffs, 0, order)
