"""The arc integral kernel: Taylor coefficients at 0 by the Euler-Maclaurin
closed form (exact), and direct numeric evaluation by accelerated symmetric
sums (independent cross-route).

The kernel attached to component ``ell`` and a reduced fraction h'/k is the
symmetric (conditionally convergent) sum

    Phi_{ell,h'/k}(t) = sum* d_ell(m) e^{2 pi i h' m / k} / (t - m)

over the grid m in Z + BETA[ell].  Its derivatives at t = 0 satisfy

    sum* d_ell(m) e^{2 pi i h' m / k} / m^{r+1} = -Phi^{(r)}_{ell,h'/k}(0)/r!

and the Psi-weighted aggregates over ell have the exact closed form
implemented in ``aggregated_taylor_exact`` /  ``aggregated_taylor_buckets``.
For k = 1 all aggregates are rational multiples of pi^{2r+2}; the classical
reference values (r <= 4) are frozen in ``REFERENCE_AGGREGATES``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath as mp
import numpy as np

from .bernoulli import (
    gaussian_boundary_integral,
    gaussian_derivative_at_zero,
    periodic_bernoulli,
)
from .errors import ToleranceError, ValidationError
from .modular import ModularTriple
from .quadform import BETA, SHIFT_FAMILIES, coefficient_at, coefficient_table

__all__ = [
    "REFERENCE_AGGREGATES",
    "aggregated_taylor_exact",
    "aggregated_taylor_buckets",
    "phi_taylor",
    "phi_taylor_individual_exact",
    "KernelTaylorTable",
    "symmetric_moment",
    "phi_eval",
    "phi_star",
    "kernel_poles",
    "default_truncation",
]

#: frozen reference values: (j, r) -> rational multiple of pi^(2r+2)
REFERENCE_AGGREGATES = {
    (0, 0): Fraction(0), (1, 0): Fraction(4), (2, 0): Fraction(4),
    (0, 1): Fraction(16), (1, 1): Fraction(23, 3), (2, 1): Fraction(50, 3),
    (0, 2): Fraction(284, 3), (1, 2): Fraction(9745, 72), (2, 2): Fraction(2929, 18),
    (0, 3): Fraction(32881, 18), (1, 3): Fraction(3965831, 2592), (2, 3): Fraction(769033, 324),
    (0, 4): Fraction(20222423, 648), (1, 4): Fraction(4241759521, 124416),
    (2, 4): Fraction(359054305, 7776),
}

#: Psi_S as exact numbers a + b*sqrt(2): (a, b)
_PSI_S_EXACT = (
    ((Fraction(1, 2), 0), (Fraction(1, 2), 0), (0, Fraction(1, 2))),
    ((Fraction(1, 2), 0), (Fraction(1, 2), 0), (0, Fraction(-1, 2))),
    ((0, Fraction(1, 2)), (0, Fraction(-1, 2)), (0, 0)),
)


# ---------------------------------------------------------------------------
# deep Taylor tables at controlled multiprecision (arc kernels)
# ---------------------------------------------------------------------------
#
# The exact-Fraction route below is kept for the small depths the public
# Taylor table needs; the Circle-Method arcs need depths ~50-80 where exact
# rational brackets cost minutes.  These helpers evaluate the same closed
# form with mpmath reals at a requested precision, cached independently of
# the numerator h (the Bernoulli arguments and bracket values do not involve
# h; only the phase buckets do).


@lru_cache(maxsize=512)
def _mp_poly_coeffs(n: int, prec: int):
    """Bernoulli polynomial coefficients of degree n as mpf at ``prec`` digits."""
    from .bernoulli import bernoulli_number

    out = []
    binom = 1
    with mp.workdps(prec):
        for k in range(n + 1):
            b = bernoulli_number(n - k)
            out.append(binom * mp.mpf(b.numerator) / b.denominator)
            binom = binom * (n - k) // (k + 1)
    return tuple(out)


_BERN_MP_CACHE: dict = {}


def _bern_vector_mp(x: Fraction, nmax: int, prec: int):
    """[Btilde_0(x) .. Btilde_nmax(x)] as mpf at ``prec`` digits (cached)."""
    frac = x - (x.numerator // x.denominator)
    key = (frac, prec)
    vec = _BERN_MP_CACHE.get(key)
    if vec is not None and len(vec) > nmax:
        return vec
    if frac == 0:
        raise ValidationError("integer Bernoulli argument reached the kernel table")
    with mp.workdps(prec):
        xm = mp.mpf(frac.numerator) / frac.denominator
        vec = []
        for n in range(nmax + 1):
            coeffs = _mp_poly_coeffs(n, prec)
            acc = mp.mpf(0)
            for c in reversed(coeffs):
                acc = acc * xm + c
            vec.append(acc)
    _BERN_MP_CACHE[key] = vec
    return vec


@lru_cache(maxsize=256)
def _mu_bracket_mp(k: int, p1: int, p2: int, depth: int, prec: int):
    """h-independent bracket vectors for one shift at one arc denominator.

    Returns a tuple of (base, values) with base = (X1^2 - 6 X2^2) mod 48k the
    phase generator (to be multiplied by h) and values[r] the mpf bracket for
    0 <= r <= depth, already summed over alpha and the k^2 lattice residues
    that share the same base.
    """
    from .bernoulli import gaussian_boundary_integral, gaussian_derivative_at_zero

    D = 48 * k
    nmax = 2 * depth + 2
    with mp.workdps(prec):
        jvals = [mp.mpf(gaussian_boundary_integral(r).numerator)
                 / gaussian_boundary_integral(r).denominator for r in range(depth + 1)]
        fvals = {}
        for r in range(depth + 1):
            for n1 in range(0, 2 * r + 1):
                key = (n1, 2 * r - n1)
                if key not in fvals:
                    fvals[key] = mp.mpf(gaussian_derivative_at_zero(*key))
        inv_fact = [mp.mpf(1) / mp.factorial(i) for i in range(nmax + 1)]
        buckets: dict[int, list] = {}
        for r1 in range(k):
            X1 = 24 * r1 + p1
            for r2 in range(k):
                X2 = 4 * r2 + p2
                base = (X1 * X1 - 6 * X2 * X2) % D
                for alpha in range(4):
                    xm = Fraction(2 * X1 - 6 * X2 - 24 * k * alpha, 96 * k)
                    xp = Fraction(2 * X1 + 6 * X2 + 24 * k * alpha, 96 * k)
                    bm = _bern_vector_mp(xm, nmax, prec)
                    bp = _bern_vector_mp(xp, nmax, prec)
                    acc = buckets.setdefault(base, [mp.mpf(0)] * (depth + 1))
                    for r in range(depth + 1):
                        val = -(bm[2 * r + 2] + bp[2 * r + 2]) * inv_fact[2 * r + 2] * jvals[r]
                        for n1 in range(0, 2 * r + 1):
                            n2 = 2 * r - n1
                            fv = fvals[(n1, n2)]
                            if fv:
                                val += bm[n1 + 1] * bp[n2 + 1] \
                                    * inv_fact[n1 + 1] * inv_fact[n2 + 1] * fv
                        acc[r] += val
    return tuple((base, tuple(vals)) for base, vals in sorted(buckets.items()))


def aggregated_taylor_mp(j: int, triple, depth: int, prec: int):
    """[sum_l Psi_{M_{h,k}}(j,l) Phi^{(r)}_{l,h'/k}(0) for r <= depth] as mpc
    values at ``prec`` digits, via the multiprecision closed form."""
    k, h = triple.k, triple.h
    D = 48 * k
    with mp.workdps(prec):
        totals = [mp.mpc(0)] * (depth + 1)
        phase_cache = {}
        for sign, mu in SHIFT_FAMILIES[j].signed():
            p1, p2 = mu.scaled
            for base, vals in _mu_bracket_mp(k, p1, p2, depth, prec):
                b = (h * base) % D
                ph = phase_cache.get(b)
                if ph is None:
                    ph = mp.expjpi(mp.mpf(2 * b) / D)
                    phase_cache[b] = ph
                sph = sign * ph
                for r in range(depth + 1):
                    totals[r] += sph * vals[r]
        out = []
        for r in range(depth + 1):
            out.append(totals[r] * mp.mpf(4) ** (2 * r + 2) / (8 * k) * mp.pi ** (2 * r + 2))
        return out


# ---------------------------------------------------------------------------
# Euler-Maclaurin closed form
# ---------------------------------------------------------------------------

def _bracket(p1: int, p2: int, alpha: int, r1: int, r2: int, k: int, r: int) -> Fraction:
    """The exact Bernoulli/Gaussian bracket for one (shift, alpha, r1, r2).

    The two periodic-Bernoulli arguments never hit integers for the shipped
    shift families (their fractional parts are 2 mu1 +- mu2 mod 1, which are
    never 0); ``periodic_bernoulli`` would raise on the degree-1 jump if a
    foreign shift family ever violated this.
    """
    xm = Fraction(2 * (p1 + 24 * r1) - 6 * (p2 + 4 * r2) - 24 * k * alpha, 96 * k)
    xp = Fraction(2 * (p1 + 24 * r1) + 6 * (p2 + 4 * r2) + 24 * k * alpha, 96 * k)
    total = -(periodic_bernoulli(2 * r + 2, xm) + periodic_bernoulli(2 * r + 2, xp)) \
        / math.factorial(2 * r + 2) * gaussian_boundary_integral(r)
    for n1 in range(2 * r + 1):
        n2 = 2 * r - n1
        fv = gaussian_derivative_at_zero(n1, n2)
        if fv == 0:
            continue
        total += periodic_bernoulli(n1 + 1, xm) * periodic_bernoulli(n2 + 1, xp) \
            * Fraction(fv, math.factorial(n1 + 1) * math.factorial(n2 + 1))
    return total


@lru_cache(maxsize=4096)
def _mu_buckets(k: int, h: int, p1: int, p2: int, r: int):
    """Exact phase histogram of the closed form for one shift.

    Returns a tuple of (bucket, Fraction) pairs: the shift's contribution is
    sum over pairs of value * e^{2 pi i bucket/(48k)}, before the
    (4 pi)^{2r+2}/(8k) prefactor.
    """
    buckets: dict[int, Fraction] = {}
    D = 48 * k
    for r1 in range(k):
        X1 = 24 * r1 + p1
        for r2 in range(k):
            X2 = 4 * r2 + p2
            b = (h * (X1 * X1 - 6 * X2 * X2)) % D
            for alpha in range(4):
                v = _bracket(p1, p2, alpha, r1, r2, k, r)
                if v:
                    buckets[b] = buckets.get(b, Fraction(0)) + v
    return tuple(sorted(buckets.items()))


def aggregated_taylor_buckets(j: int, r: int, triple: ModularTriple):
    """Exact bucket representation of sum_l Psi_{M_{h,k}}(j,l) Phi^{(r)}_{l,h'/k}(0).

    Returns (prefactor, D, pairs): value = prefactor * pi^{2r+2} *
    sum value_b e^{2 pi i b / D} with prefactor = 4^{2r+2}/(8k) rational.
    """
    if r < 0:
        raise ValidationError("r must be >= 0")
    k, h = triple.k, triple.h
    buckets: dict[int, Fraction] = {}
    for sign, mu in SHIFT_FAMILIES[j].signed():
        p1, p2 = mu.scaled
        for b, v in _mu_buckets(k, h, p1, p2, r):
            buckets[b] = buckets.get(b, Fraction(0)) + sign * v
    prefactor = Fraction(4) ** (2 * r + 2) / (8 * k)
    return prefactor, 48 * k, tuple(sorted(buckets.items()))


def aggregated_taylor_exact(j: int, r: int) -> Fraction:
    """k = 1 aggregate as the exact rational coefficient of pi^{2r+2}."""
    prefactor, D, pairs = aggregated_taylor_buckets(j, r, ModularTriple.from_arc(0, 1))
    total = Fraction(0)
    for b, v in pairs:
        if b % D:
            raise AssertionError("nontrivial phase in a k=1 aggregate")
        total += v
    return prefactor * total


def phi_taylor_individual_exact(ell: int, r: int):
    """Phi^{(r)}_{ell,0}(0) for k = 1 as an exact pair (a, b) meaning
    (a + b sqrt 2) pi^{2r+2}, obtained from the aggregates via the exact
    involution property of the inversion multiplier."""
    a = Fraction(0)
    b = Fraction(0)
    for j in range(3):
        agg = aggregated_taylor_exact(j, r)
        pa, pb = _PSI_S_EXACT[ell][j]
        a += pa * agg
        b += pb * agg
    return a, b


def phi_taylor(ell: int, r: int, triple: ModularTriple | None = None):
    """The aggregated kernel Taylor value for row ``ell`` (the j-index of the
    aggregation), as a float for k = 1 and complex for general arcs."""
    if triple is None:
        triple = ModularTriple.from_arc(0, 1)
    if triple.k == 1:
        return float(aggregated_taylor_exact(ell, r)) * math.pi ** (2 * r + 2)
    prefactor, D, pairs = aggregated_taylor_buckets(ell, r, triple)
    total = sum(float(v) * np.exp(2j * np.pi * b / D) for b, v in pairs)
    return complex(total) * float(prefactor) * math.pi ** (2 * r + 2)


@dataclass
class KernelTaylorTable:
    """Exact k = 1 Taylor data: per-component values and Psi-weighted
    aggregates, with a verification hook against the frozen references."""

    r_max: int
    entries: dict = field(default_factory=dict)      # (ell, r, 0, 1) -> float
    aggregated: dict = field(default_factory=dict)   # (j, r) -> float
    aggregated_exact: dict = field(default_factory=dict)  # (j, r) -> Fraction

    @classmethod
    def build(cls, r_max: int = 4) -> "KernelTaylorTable":
        table = cls(r_max)
        sqrt2 = math.sqrt(2)
        for r in range(r_max + 1):
            for j in range(3):
                exact = aggregated_taylor_exact(j, r)
                table.aggregated_exact[(j, r)] = exact
                table.aggregated[(j, r)] = float(exact) * math.pi ** (2 * r + 2)
            for ell in range(3):
                a, b = phi_taylor_individual_exact(ell, r)
                table.entries[(ell, r, 0, 1)] = (float(a) + float(b) * sqrt2) \
                    * math.pi ** (2 * r + 2)
        return table

    def reference_defect(self) -> float:
        """Worst relative error against the frozen (j, r <= 4) references;
        exact arithmetic makes this 0.0 unless something is broken."""
        worst = 0.0
        for (j, r), ref in REFERENCE_AGGREGATES.items():
            if r > self.r_max:
                continue
            got = self.aggregated_exact[(j, r)]
            if ref == 0:
                worst = max(worst, abs(float(got)))
            else:
                worst = max(worst, abs(float((got - ref) / ref)))
        return worst


# ---------------------------------------------------------------------------
# symmetric-sum (numeric) route
# ---------------------------------------------------------------------------

def default_truncation(k: int) -> int:
    """Spec default window for the accelerated symmetric sums."""
    return max(10 ** 4, 200 * k * k)


@lru_cache(maxsize=64)
def _sorted_grid(ell: int, limit: int):
    """Grid values m, coefficients d (floats; halves are exact), and the
    stable |m|-ordering used by every windowed sum."""
    idx_min, quarters = coefficient_table(ell, limit)
    idx = np.arange(idx_min, idx_min + len(quarters))
    m = idx + float(BETA[ell])
    d = quarters / 4.0
    ordering = np.argsort(np.abs(m), kind="stable")
    return idx[ordering], m[ordering], d[ordering]


def _windowed_mean(absm, csum, limit, window_fraction=0.5):
    lo = np.searchsorted(absm, limit * window_fraction)
    hi = np.searchsorted(absm, limit)
    if hi - lo < 8:
        raise ValidationError("truncation window too small for averaging")
    window = csum[lo:hi]
    mean = complex(np.mean(window))
    return mean


def symmetric_moment(ell: int, h_prime: int, k: int, r: int, limit: int | None = None,
                     exclude: float = 0.0):
    """Accelerated symmetric sum  sum* d(m) e^{2 pi i h' m / k} / m^{r+1}
    over |m| > exclude, with a self-consistency error estimate.

    Conditionally convergent for r = 0; the limit is taken over symmetric
    windows and stabilized by averaging the partial sums over the last
    half-decade of window ends (the oscillatory boundary terms of the
    counting function are mean zero).  Returns (value, error_estimate).
    """
    if limit is None:
        limit = default_truncation(k)
    idx, m, d = _sorted_grid(ell, int(limit))
    phase = np.exp(2j * np.pi * ((h_prime * (idx % k)) % k) / k) \
        * np.exp(2j * np.pi * h_prime * float(BETA[ell]) / k)
    term = d * phase / m ** (r + 1)
    if exclude:
        term = np.where(np.abs(m) > exclude, term, 0)
    csum = np.cumsum(term)
    absm = np.abs(m)
    full = _windowed_mean(absm, csum, limit)
    half = _windowed_mean(absm, csum, limit // 2)
    err = abs(full - half)
    return full, err


def kernel_poles(ell: int, radius: float = 2.0):
    """Grid points |m| <= radius with nonzero coefficient: the poles of the
    kernel inside that radius, as (m, d_ell(m)) with exact values."""
    beta = BETA[ell]
    out = []
    i = -int(math.ceil(radius)) - 2
    while True:
        m = beta + i
        if m > radius:
            break
        if m != 0 and abs(m) <= radius:
            d = coefficient_at(ell, m)
            if d:
                out.append((m, d))
        i += 1
    return out


def phi_eval(ell: int, triple: ModularTriple, t, tol: float = 1e-6,
             limit: int | None = None):
    """Direct numeric kernel value Phi_{ell,h'/k}(t) for real t in [0, 1/24].

    Rearranged as  sum d(m) e^{...} [1/(t-m) + 1/m]  (absolutely convergent)
    minus the accelerated symmetric sum of d(m) e^{...}/m.  Raises
    ToleranceError (carrying the achieved bound) if the self-consistency
    estimate exceeds ``tol``.  The t = BETA[0] pole of the ell = 0 component
    must go through phi_star instead.
    """
    t = float(t)
    if not 0 <= t <= 1 / 24 + 1e-15:
        raise ValidationError("t must lie in [0, 1/24]")
    if ell == 0 and abs(t - float(BETA[0])) < 1e-12:
        raise ValidationError("t = 1/48 is the kernel pole; use phi_star")
    k, h_prime = triple.k, triple.h_prime
    if limit is None:
        limit = default_truncation(k)
    idx, m, d = _sorted_grid(ell, int(limit))
    phase = np.exp(2j * np.pi * ((h_prime * (idx % k)) % k) / k) \
        * np.exp(2j * np.pi * h_prime * float(BETA[ell]) / k)
    # absolutely convergent part: d e [1/(t-m) + 1/m] = d e t/((t-m) m)
    term = d * phase * t / ((t - m) * m)
    csum = np.cumsum(term)
    absm = np.abs(m)
    part_full = _windowed_mean(absm, csum, limit)
    part_half = _windowed_mean(absm, csum, limit // 2)
    moment, moment_err = symmetric_moment(ell, h_prime, k, 0, limit)
    achieved = abs(part_full - part_half) + moment_err
    if achieved > tol:
        raise ToleranceError(
            f"phi_eval self-consistency {achieved:.2e} exceeds tol {tol:.2e} "
            f"at truncation {limit}", achieved=achieved)
    value = part_full - moment
    if h_prime % k == 0:
        return float(value.real)
    return complex(value)


def phi_star(ell: int, triple: ModularTriple, t, tol: float = 1e-6,
             limit: int | None = None):
    """Pole-removed kernel: Phi minus the t = 1/48 pole of the ell = 0
    component (identical to phi_eval for ell in {1, 2})."""
    if ell != 0:
        return phi_eval(ell, triple, t, tol, limit)
    t = float(t)
    k, h_prime = triple.k, triple.h_prime
    if limit is None:
        limit = default_truncation(k)
    beta0 = float(BETA[0])
    d0 = float(coefficient_at(0, BETA[0]))
    pole_phase = np.exp(2j * np.pi * h_prime * beta0 / k)
    idx, m, d = _sorted_grid(0, int(limit))
    phase = np.exp(2j * np.pi * ((h_prime * (idx % k)) % k) / k) \
        * np.exp(2j * np.pi * h_prime * beta0 / k)
    # remove the 1/48 pole up front (its rearranged contribution is
    # d0 e [1/(t - beta0) + 1/beta0], singular when t sits on the pole)
    pole_idx = int(np.argmin(np.abs(m - beta0)))
    denom = (t - m) * m
    denom[pole_idx] = 1.0
    term = d * phase * t / denom
    term[pole_idx] = 0.0
    csum = np.cumsum(term)
    absm = np.abs(m)
    part_full = _windowed_mean(absm, csum, limit)
    part_half = _windowed_mean(absm, csum, limit // 2)
    moment, moment_err = symmetric_moment(0, h_prime, k, 0, limit)
    achieved = abs(part_full - part_half) + moment_err
    if achieved > tol:
        raise ToleranceError(
            f"phi_star self-consistency {achieved:.2e} exceeds tol {tol:.2e}",
            achieved=achieved)
    # moment still contains the pole's 1/m term; take it out explicitly
    value = part_full - (moment - d0 * pole_phase / beta0)
    if h_prime % k == 0:
        return float(value.real)
    return complex(value)
