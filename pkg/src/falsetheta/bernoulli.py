"""Exact Bernoulli numbers/polynomials and the bivariate Gaussian derivative
data feeding the Euler-Maclaurin closed form of the kernel Taylor
coefficients.

Everything here is exact: Fractions in, Fractions out.  The Gaussian is
f(x) = exp(-x1^2 - 10 x1 x2 - x2^2); its partial derivatives at 0 come from
the multinomial expansion, and the recurrence-generated polynomial route
(GaussianDerivative) is kept as an independent cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import ValidationError

__all__ = [
    "bernoulli_number",
    "bernoulli_poly",
    "periodic_bernoulli",
    "PeriodicBernoulli",
    "GaussianDerivative",
    "gaussian_derivative_at_zero",
    "half_gaussian_moment",
    "gaussian_boundary_integral",
]

_BERNOULLI = [Fraction(1)]


def bernoulli_number(n: int) -> Fraction:
    """B_n (B_1 = -1/2 convention), exact."""
    if n < 0:
        raise ValidationError("n must be >= 0")
    while len(_BERNOULLI) <= n:
        m = len(_BERNOULLI)
        acc = Fraction(0)
        binom = 1  # C(m+1, j)
        for j in range(m):
            acc += binom * _BERNOULLI[j]
            binom = binom * (m + 1 - j) // (j + 1)
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[n]


@lru_cache(maxsize=256)
def _poly_int_coeffs(n: int):
    """Integer data for B_n(x): (denominator D, [c_0..c_n]) with
    B_n(x) = (sum c_k x^k) / D."""
    coeffs = []
    binom = 1  # C(n, k)
    for k in range(n + 1):
        coeffs.append(binom * bernoulli_number(n - k))
        binom = binom * (n - k) // (k + 1)
    den = 1
    for c in coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    return den, [int(c * den) for c in coeffs]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def bernoulli_poly(n: int, x) -> Fraction:
    """B_n(x) at a rational point, exact via integer Horner."""
    x = Fraction(x)
    den, coeffs = _poly_int_coeffs(n)
    p, q = x.numerator, x.denominator
    # integer evaluation of sum c_k p^k q^(n-k), divided by D q^n at the end
    acc = 0
    ppow = 1
    for k in range(n + 1):
        acc += coeffs[k] * ppow * q ** (n - k)
        ppow *= p
    return Fraction(acc, den * q ** n)


@lru_cache(maxsize=65536)
def periodic_bernoulli(n: int, x: Fraction) -> Fraction:
    """B~_n(x) = B_n(x - floor(x)); rejects integer x for n = 1 (jump point)."""
    x = Fraction(x)
    frac = x - (x.numerator // x.denominator)
    if n == 1 and frac == 0:
        raise ValidationError("periodic Bernoulli of degree 1 is discontinuous at integers")
    return bernoulli_poly(n, frac)


class PeriodicBernoulli:
    """Callable B~_n with the degree fixed at construction."""

    def __init__(self, degree: int):
        if degree < 0:
            raise ValidationError("degree must be >= 0")
        self.degree = degree

    def __call__(self, x) -> Fraction:
        return periodic_bernoulli(self.degree, Fraction(x))


class GaussianDerivative:
    """Recurrence-generated polynomials P with d^{n1} d^{n2} f = P * f for
    f = exp(-x1^2 - 10 x1 x2 - x2^2); P_{0,0} = 1, deg P = n1 + n2."""

    def __init__(self):
        self._polys = {(0, 0): {(0, 0): 1}}

    def polynomial(self, n1: int, n2: int) -> dict:
        """P_{n1,n2} as {(e1, e2): integer coefficient}."""
        key = (n1, n2)
        if key in self._polys:
            return self._polys[key]
        if n1 >= 1:
            prev = self.polynomial(n1 - 1, n2)
            out = {}
            for (e1, e2), c in prev.items():
                if e1 >= 1:
                    _add(out, (e1 - 1, e2), e1 * c)
                _add(out, (e1 + 1, e2), -2 * c)
                _add(out, (e1, e2 + 1), -10 * c)
        else:
            prev = self.polynomial(n1, n2 - 1)
            out = {}
            for (e1, e2), c in prev.items():
                if e2 >= 1:
                    _add(out, (e1, e2 - 1), e2 * c)
                _add(out, (e1, e2 + 1), -2 * c)
                _add(out, (e1 + 1, e2), -10 * c)
        out = {k: v for k, v in out.items() if v}
        self._polys[key] = out
        return out

    def value_at_zero(self, n1: int, n2: int) -> int:
        return self.polynomial(n1, n2).get((0, 0), 0)

    def value(self, n1: int, n2: int, x1: float, x2: float) -> float:
        import math

        p = sum(c * x1 ** e1 * x2 ** e2 for (e1, e2), c in self.polynomial(n1, n2).items())
        return p * math.exp(-x1 * x1 - 10 * x1 * x2 - x2 * x2)


def _add(d, k, v):
    d[k] = d.get(k, 0) + v


@lru_cache(maxsize=16384)
def gaussian_derivative_at_zero(n1: int, n2: int) -> int:
    """f^{(n1,n2)}(0,0) via the multinomial expansion of exp(-x1^2-10x1x2-x2^2)."""
    if (n1 + n2) % 2:
        return 0
    total = Fraction(0)
    for j in range(min(n1, n2) + 1):
        if (n1 - j) % 2 or (n2 - j) % 2:
            continue
        i = (n1 - j) // 2
        l = (n2 - j) // 2
        total += Fraction((-1) ** (i + j + l) * 10 ** j, factorial(i) * factorial(j) * factorial(l))
    total *= factorial(n1) * factorial(n2)
    if total.denominator != 1:
        raise AssertionError("Gaussian derivative at 0 must be an integer")
    return int(total)


def half_gaussian_moment(m: int) -> Fraction | None:
    """int_0^inf x^m e^{-x^2} dx for odd m: ((m-1)/2)!/2, exact.
    Even m involve sqrt(pi) and are not needed (returns None)."""
    if m % 2 == 0:
        return None
    return Fraction(factorial((m - 1) // 2), 2)


@lru_cache(maxsize=256)
def _hermite_coeffs(n: int):
    """Physicists' Hermite polynomial coefficients [c_0..c_n]."""
    a, b = [1], [0, 2]
    if n == 0:
        return tuple(a)
    for m in range(1, n):
        nxt = [0] * (m + 2)
        for i, c in enumerate(b):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(a):
            nxt[i] -= 2 * m * c
        a, b = b, nxt
    return tuple(b)


@lru_cache(maxsize=256)
def gaussian_boundary_integral(r: int) -> Fraction:
    """int_0^inf f^{(2r+1,0)}(0, x) dx, exact.

    Completing the square gives d1^n f(0,x) = (-1)^n H_n(5x) e^{-x^2}; only
    odd powers of x appear for odd n, so the half-Gaussian moments are
    rational."""
    n = 2 * r + 1
    total = Fraction(0)
    for m, c in enumerate(_hermite_coeffs(n)):
        if c == 0:
            continue
        mom = half_gaussian_moment(m)
        if mom is None:
            raise AssertionError("even Hermite coefficient in an odd polynomial")
        total += c * Fraction(5) ** m * mom
    return -total
