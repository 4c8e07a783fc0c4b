"""Multiplier systems: theta-group Gauss sums, the 3x3 vector multiplier, the
Dedekind eta multiplier, and the combined arc multiplier of the main formula.

All phases are rationals with denominator dividing 48|c|; they are reduced
exactly in integer arithmetic before any complex exponential is taken, so the
float route loses nothing beyond the final exp, and the mpmath route evaluates
the same exact buckets at any requested precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np

from .errors import IdentityError, ValidationError
from .quadform import SHIFT_FAMILIES, ShiftVector

__all__ = [
    "ModularMatrix",
    "ModularTriple",
    "MultiplierMatrix",
    "gauss_multiplier",
    "psi_vector",
    "psi_vector_mp",
    "dedekind_sum",
    "eta_multiplier",
    "eta_multiplier_phase",
    "circle_multiplier",
    "circle_multiplier_mp",
]

_DET_A_SQRT = math.sqrt(96)  # |det A| = 96


@dataclass(frozen=True)
class ModularMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValidationError(f"determinant of {self} is not 1")

    def __matmul__(self, other: "ModularMatrix") -> "ModularMatrix":
        return ModularMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)


T_MATRIX = ModularMatrix(1, 1, 0, 1)
S_MATRIX = ModularMatrix(0, -1, 1, 0)


@dataclass(frozen=True)
class ModularTriple:
    """Arc data (h, k, h') with h h' = -1 (mod k), 0 <= h' < k, and the
    associated matrix (h, -(h h' + 1)/k; k, -h')."""

    h: int
    k: int
    h_prime: int
    matrix: ModularMatrix

    @classmethod
    def from_arc(cls, h: int, k: int) -> "ModularTriple":
        if k < 1:
            raise ValidationError("k must be >= 1")
        if not 0 <= h < k and not (k == 1 and h == 0):
            raise ValidationError(f"need 0 <= h < k, got h={h}, k={k}")
        if math.gcd(h, k) != 1:
            raise ValidationError(f"h={h} and k={k} are not coprime")
        if k == 1:
            h_prime = 0
        else:
            h_prime = (-pow(h, -1, k)) % k
        matrix = ModularMatrix(h, -(h * h_prime + 1) // k, k, -h_prime)
        return cls(h, k, h_prime, matrix)


class MultiplierMatrix:
    """3x3 complex multiplier, indexed (j, l)."""

    def __init__(self, entries):
        self.entries = np.asarray(entries, dtype=complex)
        if self.entries.shape != (3, 3):
            raise ValidationError("multiplier matrices are 3x3")

    def __getitem__(self, jl):
        return self.entries[jl]

    def __matmul__(self, other):
        return MultiplierMatrix(self.entries @ other.entries)

    def unitarity_defect(self) -> float:
        return float(np.max(np.abs(self.entries @ self.entries.conj().T - np.eye(3))))

    def __repr__(self):
        return f"MultiplierMatrix({self.entries!r})"


def _gauss_buckets(M: ModularMatrix, mu: ShiftVector, nu: ShiftVector):
    """Exact phase histogram of the c != 0 Gauss sum.

    Returns (D, counts) with D = 48|c|; the multiplier is
    (1/(|c| sqrt 96)) * sum_b counts[b] e^{2 pi i b / D}.
    """
    a, b, c, d = M.entries
    p1, p2 = mu.scaled
    q1, q2 = nu.scaled
    cc = abs(c)
    D = 48 * cc
    m1 = np.arange(cc, dtype=np.int64)
    X1 = 24 * m1 + p1  # (cc,)
    m2 = np.arange(cc, dtype=np.int64)
    X2 = 4 * m2 + p2  # (cc,)
    part1 = a * (X1 * X1) - 2 * q1 * X1  # depends on m1 only
    part2 = -6 * a * (X2 * X2) + 12 * q2 * X2  # m2 only
    const = d * (q1 * q1 - 6 * q2 * q2)
    P = part1[:, None] + part2[None, :] + const
    if c < 0:
        P = -P
    counts = np.bincount((P % D).ravel(), minlength=D)
    return D, counts


def gauss_multiplier(M: ModularMatrix, mu: ShiftVector, nu: ShiftVector) -> complex:
    """Theta multiplier psi_{M,Q}(mu, nu) for Q(x) = 12 x1^2 - 2 x2^2."""
    a, b, c, d = M.entries
    if c == 0:
        sign = 1 if d > 0 else -1
        target = ShiftVector(sign * nu.mu1, sign * nu.mu2)
        if (mu.mu1, mu.mu2) != (target.mu1, target.mu2):
            return 0j
        # e^{2 pi i a b Q(mu)}; 48 Q(mu) = p1^2 - 6 p2^2
        p1, p2 = mu.scaled
        num = (a * b * (p1 * p1 - 6 * p2 * p2)) % 48
        return cmath.exp(2j * cmath.pi * num / 48)
    D, counts = _gauss_buckets(M, mu, nu)
    idx = np.nonzero(counts)[0]
    val = np.sum(counts[idx] * np.exp(2j * np.pi * idx / D))
    return complex(val) / (abs(c) * _DET_A_SQRT)


def _gauss_multiplier_mp(M, mu, nu):
    """Same multiplier at the current mpmath precision."""
    a, b, c, d = M.entries
    if c == 0:
        sign = 1 if d > 0 else -1
        target = ShiftVector(sign * nu.mu1, sign * nu.mu2)
        if (mu.mu1, mu.mu2) != (target.mu1, target.mu2):
            return mp.mpc(0)
        p1, p2 = mu.scaled
        num = (a * b * (p1 * p1 - 6 * p2 * p2)) % 48
        return mp.expjpi(mp.mpf(2 * num) / 48)
    D, counts = _gauss_buckets(M, mu, nu)
    total = mp.mpc(0)
    for bidx in np.nonzero(counts)[0]:
        total += int(counts[bidx]) * mp.expjpi(mp.mpf(2 * int(bidx)) / D)
    return total / (abs(c) * mp.sqrt(96))


def _psi_entry(M, j, ell, gauss, tol=1e-12, check_reps=True):
    fam = SHIFT_FAMILIES[j]
    reps = SHIFT_FAMILIES[ell].plus if check_reps else SHIFT_FAMILIES[ell].plus[:1]
    vals = []
    for nu in reps:
        v = sum(gauss(M, mu, nu) for mu in fam.plus) - sum(gauss(M, mu, nu) for mu in fam.minus)
        vals.append(v)
    for v in vals[1:]:
        if abs(v - vals[0]) > tol:
            raise IdentityError(
                f"multiplier entry ({j},{ell}) of {M} depends on the representative: "
                f"spread {abs(v - vals[0]):.3e}")
    return vals[0]


def psi_vector(M: ModularMatrix, check_reps: bool = True) -> MultiplierMatrix:
    """The 3x3 multiplier of the component vector under M, assembled from
    Gauss sums; verifies independence of the representative in each family."""
    entries = [[_psi_entry(M, j, ell, gauss_multiplier, check_reps=check_reps)
                for ell in range(3)] for j in range(3)]
    return MultiplierMatrix(entries)


def psi_vector_mp(M: ModularMatrix):
    """Multiplier matrix at the current mpmath precision (list of lists)."""
    return [[_psi_entry(M, j, ell, _gauss_multiplier_mp, tol=1e-10, check_reps=False)
             for ell in range(3)] for j in range(3)]


def dedekind_sum(h_prime: int, k: int) -> Fraction:
    """s(h', k) = sum_{r=1}^{k-1} (r/k)(h' r/k - floor(h' r / k) - 1/2), exact."""
    if k < 1:
        raise ValidationError("k must be a positive integer")
    total = Fraction(0)
    for r in range(1, k):
        hr = Fraction(h_prime * r, k)
        total += Fraction(r, k) * (hr - math.floor(hr) - Fraction(1, 2))
    return total


def eta_multiplier_phase(M: ModularMatrix) -> Fraction:
    """Exact x with eta multiplier = e^{i pi x}, x reduced into (-1, 1]."""
    a, b, c, d = M.entries
    if c <= 0:
        raise ValidationError("eta multiplier is defined here for c > 0 only")
    x = Fraction(a + d, 12 * c) - Fraction(1, 4) + dedekind_sum(-d, c)
    x %= 2
    if x > 1:
        x -= 2
    return x


def eta_multiplier(M: ModularMatrix) -> complex:
    """nu_eta(M) = e^{i pi ((a+d)/(12c) - 1/4 + s(-d, c))} for c > 0."""
    x = eta_multiplier_phase(M)
    return cmath.exp(1j * cmath.pi * float(x))


def circle_multiplier(triple: ModularTriple, check_reps: bool = True) -> MultiplierMatrix:
    """Arc multiplier e^{-i pi/4} Psi_{M_{h,k}} / nu_eta(M_{h,k}).

    The scalar prefactor is combined at the exact phase level, so for
    (h, k) = (0, 1) the result equals Psi_S exactly (prefactor 1)."""
    x = Fraction(-1, 4) - eta_multiplier_phase(triple.matrix)
    x %= 2
    psi = psi_vector(triple.matrix, check_reps=check_reps)
    if x == 0:
        return psi
    factor = cmath.exp(1j * cmath.pi * float(x))
    return MultiplierMatrix(factor * psi.entries)


def circle_multiplier_mp(triple: ModularTriple):
    """Arc multiplier as a 3x3 list at the current mpmath precision."""
    x = Fraction(-1, 4) - eta_multiplier_phase(triple.matrix)
    x %= 2
    psi = psi_vector_mp(triple.matrix)
    if x == 0:
        return psi
    factor = mp.expjpi(mp.mpf(x.numerator) / x.denominator)
    return [[factor * psi[j][l] for l in range(3)] for j in range(3)]
