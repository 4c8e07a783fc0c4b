"""Signature (1,1) quadratic form, shifted lattices, and cone-weighted point counts.

The whole package is built on the even binary form Q(x) = 12 x1^2 - 2 x2^2
(Gram matrix diag(24, -4)) together with three eight-element families of
lattice shifts.  Coefficients of the associated false-indefinite theta
functions count lattice points of ``Z^2 + mu`` inside sign cones:

* exponent n > 0: weight (1 + sgn(2 x1 + x2) sgn(2 x1 - x2)) / 2,
* exponent n < 0: weight (1 - sgn(3 x1 + x2) sgn(3 x1 - x2)) / 2,

with sgn(0) = 0, so points on a boundary ray automatically enter with
weight 1/2.

All enumeration is done in scaled integer coordinates X1 = 24 x1, X2 = 4 x2
(so 48 Q = X1^2 - 6 X2^2 and every sign test is exact).  Float sign tests are
NOT safe here: the rays 3 x1 = +-x2 contain lattice points for the third
shift family and binary rounding of 1/12 misclassifies them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "GRAM",
    "BETA",
    "DELTA",
    "ShiftVector",
    "ShiftFamily",
    "SHIFT_FAMILIES",
    "quadratic_form",
    "bilinear_form",
    "coefficient_table",
    "coefficient_at",
    "shifted_count",
    "shifted_class_count",
]

GRAM = ((24, 0), (0, -4))

#: exponent grid offsets of the three series (exponents live in Z + BETA[j])
BETA = (Fraction(1, 48), Fraction(25, 48), Fraction(23, 24))

#: exponent offsets after division by the eta function
DELTA = (Fraction(-1, 48), Fraction(23, 48), Fraction(11, 12))


def quadratic_form(x1, x2):
    """Q(x) = 12 x1^2 - 2 x2^2, exact for Fraction/int input."""
    return 12 * x1 * x1 - 2 * x2 * x2


def bilinear_form(x1, x2, y1, y2):
    """B(x, y) = x^T A y = 24 x1 y1 - 4 x2 y2."""
    return 24 * x1 * y1 - 4 * x2 * y2


@dataclass(frozen=True)
class ShiftVector:
    """A shift mu in A^{-1}Z^2 / Z^2, reduced mod 1 (mu1 has denominator
    dividing 24, mu2 dividing 4)."""

    mu1: Fraction
    mu2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "mu1", Fraction(self.mu1) % 1)
        object.__setattr__(self, "mu2", Fraction(self.mu2) % 1)
        if 24 % self.mu1.denominator or 4 % self.mu2.denominator:
            raise ValueError(f"shift {self} is not on the A^-1 Z^2 grid")

    @property
    def scaled(self) -> tuple[int, int]:
        """(24 mu1, 4 mu2) as integers."""
        return int(24 * self.mu1), int(4 * self.mu2)

    def negated(self) -> "ShiftVector":
        return ShiftVector(-self.mu1, -self.mu2)


@dataclass(frozen=True)
class ShiftFamily:
    """The signed shift families S_j^+ / S_j^- driving component j."""

    j: int
    plus: tuple[ShiftVector, ...]
    minus: tuple[ShiftVector, ...]

    def signed(self):
        for mu in self.plus:
            yield 1, mu
        for mu in self.minus:
            yield -1, mu


def _family(j, plus, minus):
    mk = lambda pairs: tuple(ShiftVector(Fraction(*a), Fraction(*b)) for a, b in pairs)
    return ShiftFamily(j, mk(plus), mk(minus))


SHIFT_FAMILIES = (
    _family(
        0,
        [((7, 24), (0, 1)), ((17, 24), (0, 1)), ((11, 24), (1, 2)), ((13, 24), (1, 2))],
        [((1, 24), (0, 1)), ((23, 24), (0, 1)), ((5, 24), (1, 2)), ((19, 24), (1, 2))],
    ),
    _family(
        1,
        [((11, 24), (0, 1)), ((13, 24), (0, 1)), ((7, 24), (1, 2)), ((17, 24), (1, 2))],
        [((5, 24), (0, 1)), ((19, 24), (0, 1)), ((1, 24), (1, 2)), ((23, 24), (1, 2))],
    ),
    _family(
        2,
        [((5, 12), (1, 4)), ((7, 12), (1, 4)), ((5, 12), (3, 4)), ((7, 12), (3, 4))],
        [((1, 12), (1, 4)), ((11, 12), (1, 4)), ((1, 12), (3, 4)), ((11, 12), (3, 4))],
    ),
)


def _check_j(j):
    if j not in (0, 1, 2):
        raise ValueError(f"component index must be 0, 1 or 2, got {j!r}")


def _positive_side(acc, idx_min, limit48, b48, sign, p1, p2):
    # cone |2 x1| > |x2| forces 4 x1^2 < Q <= limit, so |x1| <= sqrt(limit)/2
    amax = int(math.isqrt(limit48 // 48)) // 2 + 2
    for a in range(-amax, amax + 1):
        X1 = 24 * a + p1
        # |X2| <= |X1|/3 inside the cone (X2 = 4 x2, |x2| <= 2|x1|)
        bmax = abs(X1) // 12 + 2
        b = np.arange(-bmax, bmax + 1, dtype=np.int64)
        X2 = 4 * b + p2
        Q48 = X1 * X1 - 6 * X2 * X2
        w = 1 + np.sign(2 * X1 + 6 * X2) * np.sign(2 * X1 - 6 * X2)
        mask = (Q48 > 0) & (Q48 <= limit48) & (w != 0)
        if mask.any():
            idx = (Q48[mask] - b48) // 48
            np.add.at(acc, idx - idx_min, sign * w[mask])


def _negative_side(acc, idx_min, limit48, b48, sign, p1, p2):
    # weight nonzero needs |x2| >= 3|x1|, so |n| = 2 x2^2 - 12 x1^2 >= 6 x1^2
    amax = int(math.isqrt(limit48 // 288)) + 2
    for a in range(-amax, amax + 1):
        X1 = 24 * a + p1
        bmax = int(math.isqrt((limit48 + X1 * X1) // 6)) // 4 + 2
        b = np.arange(-bmax, bmax + 1, dtype=np.int64)
        X2 = 4 * b + p2
        Q48 = X1 * X1 - 6 * X2 * X2
        w = 1 - np.sign(3 * X1 + 6 * X2) * np.sign(3 * X1 - 6 * X2)
        mask = (Q48 < 0) & (Q48 >= -limit48) & (w != 0)
        if mask.any():
            idx = (Q48[mask] - b48) // 48
            np.add.at(acc, idx - idx_min, sign * w[mask])


@lru_cache(maxsize=32)
def coefficient_table(j: int, limit: int):
    """Bulk Fourier coefficients of component j on the grid n = idx + BETA[j].

    Returns ``(idx_min, quarters)`` where ``quarters[i]`` is the integer
    4 * d_j(idx_min + i + BETA[j]) and the grid covers |n| <= limit.  The
    array is cached and must not be mutated.
    """
    _check_j(j)
    if limit < 1:
        raise ValueError("limit must be >= 1")
    beta = BETA[j]
    b48 = int(48 * beta)
    idx_min = -(limit + 2)
    acc = np.zeros(2 * limit + 5, dtype=np.int64)
    limit48 = 48 * limit
    for sign, mu in SHIFT_FAMILIES[j].signed():
        p1, p2 = mu.scaled
        _positive_side(acc, idx_min, limit48, b48, sign, p1, p2)
        _negative_side(acc, idx_min, limit48, b48, sign, p1, p2)
    acc.setflags(write=False)
    return idx_min, acc


def coefficient_at(j: int, n: Fraction) -> Fraction:
    """d_j(n) for a single grid point n in Z + BETA[j], n != 0, exact."""
    _check_j(j)
    n = Fraction(n)
    if n == 0:
        raise ValueError("n = 0 is not on the coefficient grid")
    idx = n - BETA[j]
    if idx.denominator != 1:
        raise ValueError(f"n = {n} is not on the grid Z + {BETA[j]}")
    limit = int(abs(n)) + 2
    idx_min, acc = coefficient_table(j, limit)
    return Fraction(int(acc[int(idx) - idx_min]), 4)


def shifted_count(mu: ShiftVector, n: Fraction) -> Fraction:
    """Weighted point count a_mu(n) for one shift (sum of cone weights)."""
    n = Fraction(n)
    if n == 0:
        raise ValueError("n = 0 not supported")
    p1, p2 = mu.scaled
    n48 = 48 * n
    if n48.denominator != 1:
        raise ValueError(f"{n} not on the 1/48 grid")
    n48 = int(n48)
    total = Fraction(0)
    if n > 0:
        amax = int(math.isqrt(max(n48 // 48, 1))) // 2 + 2
        for a in range(-amax, amax + 1):
            X1 = 24 * a + p1
            for b in range(-(abs(X1) // 12 + 2), abs(X1) // 12 + 3):
                X2 = 4 * b + p2
                if X1 * X1 - 6 * X2 * X2 == n48:
                    s = _sgn(2 * X1 + 6 * X2) * _sgn(2 * X1 - 6 * X2)
                    total += Fraction(1 + s, 2)
    else:
        amax = int(math.isqrt(-n48 // 288 + 1)) + 2
        for a in range(-amax, amax + 1):
            X1 = 24 * a + p1
            bmax = int(math.isqrt((-n48 + X1 * X1) // 6 + 1)) // 4 + 2
            for b in range(-bmax, bmax + 1):
                X2 = 4 * b + p2
                if X1 * X1 - 6 * X2 * X2 == n48:
                    s = _sgn(3 * X1 + 6 * X2) * _sgn(3 * X1 - 6 * X2)
                    total += Fraction(1 - s, 2)
    return total


def shifted_class_count(c: int, mu: ShiftVector, r1: int, r2: int, n: Fraction) -> Fraction:
    """Residue-refined count a_{c,mu,r}(n): only points x = mu + r + c Z^2,
    with the exponent scaled so that a_mu(n) = sum over 0 <= r1,r2 < c."""
    if c < 1 or not (0 <= r1 < c and 0 <= r2 < c):
        raise ValueError("need c >= 1 and 0 <= r1, r2 < c")
    # the grid Z^2 + (mu+r)/c with exponent c^2 Q is the sublattice
    # x = mu + r mod c of Z^2 + mu with exponent Q, so count there directly
    n = Fraction(n)
    if n == 0:
        raise ValueError("n = 0 not supported")
    p1, p2 = mu.scaled
    n48 = 48 * n
    if n48.denominator != 1:
        raise ValueError(f"{n} not on the 1/48 grid")
    n48 = int(n48)
    total = Fraction(0)
    # points x in Z^2 + mu with x - mu = r mod c and Q(x) = n
    if n > 0:
        amax = int(math.isqrt(max(n48 // 48, 1))) // 2 + 2
        arange = [a for a in range(-amax, amax + 1) if (a - r1) % c == 0]
        for a in arange:
            X1 = 24 * a + p1
            for b in range(-(abs(X1) // 12 + 2), abs(X1) // 12 + 3):
                if (b - r2) % c:
                    continue
                X2 = 4 * b + p2
                if X1 * X1 - 6 * X2 * X2 == n48:
                    s = _sgn(2 * X1 + 6 * X2) * _sgn(2 * X1 - 6 * X2)
                    total += Fraction(1 + s, 2)
    else:
        amax = int(math.isqrt(-n48 // 288 + 1)) + 2
        for a in range(-amax, amax + 1):
            if (a - r1) % c:
                continue
            X1 = 24 * a + p1
            bmax = int(math.isqrt((-n48 + X1 * X1) // 6 + 1)) // 4 + 2
            for b in range(-bmax, bmax + 1):
                if (b - r2) % c:
                    continue
                X2 = 4 * b + p2
                if X1 * X1 - 6 * X2 * X2 == n48:
                    s = _sgn(3 * X1 + 6 * X2) * _sgn(3 * X1 - 6 * X2)
                    total += Fraction(1 - s, 2)
    return total


def _sgn(x):
    return (x > 0) - (x < 0)


def family_closed_under(matrix, j) -> bool:
    """True if the integer matrix (a b; c d) maps both signed families of
    component j to themselves mod 1."""
    a, b, c, d = matrix
    fam = SHIFT_FAMILIES[j]
    for part in (fam.plus, fam.minus):
        image = sorted(((a * mu.mu1 + b * mu.mu2) % 1, (c * mu.mu1 + d * mu.mu2) % 1) for mu in part)
        if image != sorted((mu.mu1, mu.mu2) for mu in part):
            return False
    return True
