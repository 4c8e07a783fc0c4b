"""Fourier coefficients of the Maass-form components and their statistics.

``d_coefficient`` returns the exact rational Fourier coefficient d_j(n) by
shifted-lattice enumeration (both signs of n); ``partial_sum_density``
compares partial sums against the lattice-density prediction; ``evaluate_U``
sums the K-Bessel Fourier expansion for numeric modularity checks.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import k0 as _bessel_k0

from .errors import ValidationError
from .quadform import (
    BETA,
    SHIFT_FAMILIES,
    ShiftVector,
    coefficient_at,
    coefficient_table,
    quadratic_form,
    shifted_count,
)

__all__ = [
    "LATTICE_DENSITY",
    "MaassCoefficient",
    "DensityReport",
    "d_coefficient",
    "density_constant",
    "partial_sum_density",
    "shift_density",
    "evaluate_U",
    "default_cutoff",
    "write_coefficient_csv",
]

#: area constant of the cone regions, log(sqrt(2)+sqrt(3))/sqrt(6)
LATTICE_DENSITY = math.log(math.sqrt(2) + math.sqrt(3)) / math.sqrt(6)


@dataclass(frozen=True)
class MaassCoefficient:
    """A single Fourier coefficient: grid point n and its exact value."""

    j: int
    n: Fraction
    value: Fraction


def d_coefficient(j: int, n) -> Fraction:
    """Exact d_j(n) for n in Z + BETA[j], n != 0 (negative n allowed)."""
    n = Fraction(n)
    if n == 0:
        raise ValidationError("n = 0 is not in the coefficient grid")
    if (n - BETA[j % 3]).denominator != 1:
        raise ValidationError(f"n = {n} is not on the grid Z + {BETA[j % 3]}")
    return coefficient_at(j, n)


def density_constant(j: int, r: int, c: int) -> float:
    """Density of the signed coefficient sums in the class n = r + BETA[j] mod c.

    LATTICE_DENSITY/(2 c^2) times the signed number of lattice residue
    classes hitting the exponent class; identically 0 for c = 1 because the
    two shift families cancel.
    """
    if c < 1 or not 0 <= r < c:
        raise ValidationError("need c >= 1 and 0 <= r < c")
    beta = BETA[j]
    signed_count = 0
    for sign, mu in SHIFT_FAMILIES[j].signed():
        for r1 in range(c):
            for r2 in range(c):
                q = quadratic_form(mu.mu1 + r1, mu.mu2 + r2)
                if ((q - beta - r) / c).denominator == 1:
                    signed_count += sign
    return LATTICE_DENSITY * signed_count / (2 * c * c)


@dataclass(frozen=True)
class DensityReport:
    j: int
    r: int
    c: int
    X: float
    positive_sum: Fraction
    negative_sum: Fraction
    prediction: float


def partial_sum_density(j: int, r: int, c: int, X) -> DensityReport:
    """Partial sums of d_j over 0 < n <= X (and -X <= n < 0) restricted to the
    residue class n = r + BETA[j] (mod c), with the density prediction."""
    if c < 1 or not 0 <= r < c:
        raise ValidationError("need c >= 1 and 0 <= r < c")
    if X < 0:
        raise ValidationError("X must be >= 0")
    pred = density_constant(j, r, c) * float(X)
    if X == 0:
        return DensityReport(j, r, c, float(X), Fraction(0), Fraction(0), pred)
    limit = int(math.floor(X)) + 1
    idx_min, quarters = coefficient_table(j, limit)
    beta = float(BETA[j])
    idx = np.arange(idx_min, idx_min + len(quarters))
    n = idx + beta
    pos = (n > 0) & (n <= float(X)) & ((idx - r) % c == 0)
    neg = (n < 0) & (n >= -float(X)) & ((idx - r) % c == 0)
    pos_sum = Fraction(int(quarters[pos].sum()), 4)
    neg_sum = Fraction(int(quarters[neg].sum()), 4)
    return DensityReport(j, r, c, float(X), pos_sum, neg_sum, pred)


def shift_density(mu: ShiftVector, X, side: int = 1) -> float:
    """(sum_{0<|n|<=X} a_mu(n)) / X over one half of the grid for one shift
    (side=+1: exponents in (0, X]; side=-1: in [-X, 0)).  Converges to
    LATTICE_DENSITY as X grows."""
    if X <= 0:
        raise ValidationError("X must be positive")
    if side not in (1, -1):
        raise ValidationError("side must be +-1")
    p1, p2 = mu.scaled
    limit48 = int(48 * X)
    total = 0  # accumulates 2 * weight, integer
    if side > 0:
        amax = int(math.isqrt(limit48 // 48)) // 2 + 2
        for a in range(-amax, amax + 1):
            X1 = 24 * a + p1
            bmax = abs(X1) // 12 + 2
            b = np.arange(-bmax, bmax + 1, dtype=np.int64)
            X2 = 4 * b + p2
            Q48 = X1 * X1 - 6 * X2 * X2
            w = 1 + np.sign(2 * X1 + 6 * X2) * np.sign(2 * X1 - 6 * X2)
            total += int(w[(Q48 > 0) & (Q48 <= limit48)].sum())
    else:
        amax = int(math.isqrt(limit48 // 288)) + 2
        for a in range(-amax, amax + 1):
            X1 = 24 * a + p1
            bmax = int(math.isqrt((limit48 + X1 * X1) // 6)) // 4 + 2
            b = np.arange(-bmax, bmax + 1, dtype=np.int64)
            X2 = 4 * b + p2
            Q48 = X1 * X1 - 6 * X2 * X2
            w = 1 - np.sign(3 * X1 + 6 * X2) * np.sign(3 * X1 - 6 * X2)
            total += int(w[(Q48 < 0) & (Q48 >= -limit48)].sum())
    return total / (2.0 * float(X))


def evaluate_U(j: int, tau: complex, n_cut: int | None = None, tol: float = 1e-12) -> complex:
    """Truncated Fourier sum sqrt(im tau) * sum d_j(n) K_0(2 pi |n| im) e(n re).

    ``n_cut`` bounds |n|; default picks the smallest cutoff whose K-Bessel
    tail (with the sqrt-growth coefficient bound) is below 1e-16.  A warning
    is issued if the tail bound exceeds ``tol``.
    """
    tau = complex(tau)
    t2 = tau.imag
    if t2 <= 0:
        raise ValidationError("tau must be in the upper half plane")
    if n_cut is None:
        n_cut = default_cutoff(t2)
    tail = math.sqrt(n_cut) * math.exp(-2 * math.pi * n_cut * t2)
    if tail > tol:
        warnings.warn(
            f"evaluate_U truncation tail bound {tail:.2e} exceeds tol {tol:.2e}",
            stacklevel=2)
    idx_min, quarters = coefficient_table(j, n_cut + 1)
    beta = float(BETA[j])
    idx = np.arange(idx_min, idx_min + len(quarters))
    n = idx + beta
    d = quarters / 4.0
    x = 2 * math.pi * np.abs(n) * t2
    keep = (d != 0) & (np.abs(n) <= n_cut) & (x < 700.0)
    phase = np.exp(2j * math.pi * n[keep] * tau.real)
    return math.sqrt(t2) * complex(np.sum(d[keep] * _bessel_k0(x[keep]) * phase))


def default_cutoff(t2: float) -> int:
    """Smallest N with sqrt(N) exp(-2 pi N t2) < 1e-16."""
    n = 1
    while math.sqrt(n) * math.exp(-2 * math.pi * n * t2) >= 1e-16:
        n += 1
        if n > 10 ** 7:
            raise ValidationError(f"tau too close to the real axis (im = {t2})")
    return n


def write_coefficient_csv(path, j: int, n_max: int):
    """Dump d_j over the grid |n| <= n_max as CSV rows
    (j, n_numerator, n_denominator, value)."""
    idx_min, quarters = coefficient_table(j, n_max)
    beta = BETA[j]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["j", "n_numerator", "n_denominator", "value"])
        for i, q in enumerate(quarters):
            n = (idx_min + i) + beta
            if abs(n) > n_max or q == 0:
                continue
            writer.writerow([j, n.numerator, n.denominator, str(Fraction(int(q), 4))])
