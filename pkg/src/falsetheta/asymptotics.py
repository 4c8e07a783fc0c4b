"""Special functions, the convergent partition formula, the Circle-Method
main-sum evaluator, and the leading exponential expansion.

The main sum compares against exact integer coefficients that reach ~1e63 at
n = 4000 while carrying only an O(n^{3/4}) error, so the evaluator runs in
mpmath with n-adaptive precision.  Arcs k <= ARC_EXACT_MAX evaluate the
kernel from its exact Euler-Maclaurin Taylor data (pole-subtracted power
series, geometric in t/2); higher arcs contribute less than ~1e7 absolute and
use the float64 symmetric-sum kernel.  Kernel data is cached independently
of n and reused across the whole scan.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp
import numpy as np

from .errors import IdentityError, ToleranceError, ValidationError
from .kernel import (
    aggregated_taylor_buckets,
    aggregated_taylor_exact,
    aggregated_taylor_mp,
    kernel_poles,
    symmetric_moment,
)
from .modular import (
    ModularTriple,
    circle_multiplier,
    dedekind_sum,
    eta_multiplier_phase,
    psi_vector_mp,
)
from .quadform import BETA, DELTA
from . import qseries

__all__ = [
    "AsymptoticReport",
    "LeadingExpansion",
    "bessel_I_half",
    "bessel_I_threehalves",
    "rademacher_p",
    "theorem_main_sum",
    "leading_expansion",
    "corollary_check",
    "radial_limit_diagnostic",
    "pv_pole_integral",
    "ARC_EXACT_MAX",
]

#: largest k whose arc kernel uses the exact Euler-Maclaurin Taylor route
ARC_EXACT_MAX = 6

#: shared truncation window of the float-arc symmetric-sum kernels
FLOAT_MOMENT_LIMIT = 60_000

#: Taylor depth of the float-arc kernels (pole radius 2 gives ~48^-r decay)
FLOAT_TAYLOR_DEPTH = 10

_POLE_RADIUS = 2.0


# ---------------------------------------------------------------------------
# Bessel I at half-integer order
# ---------------------------------------------------------------------------

def bessel_I_half(x: float) -> float:
    """I_{1/2}(x) = sqrt(2/(pi x)) sinh(x); series below x=0.5 to dodge the
    0/0 cancellation."""
    if x <= 0:
        raise ValidationError("argument must be positive")
    if x < 0.5:
        x2 = x * x
        s = 1 + x2 / 6 * (1 + x2 / 20 * (1 + x2 / 42 * (1 + x2 / 72)))
        return math.sqrt(2 * x / math.pi) * s
    return math.sqrt(2 / (math.pi * x)) * math.sinh(x)


def bessel_I_threehalves(x: float) -> float:
    """I_{3/2}(x) = sqrt(2/(pi x)) (cosh x - sinh x / x)."""
    if x <= 0:
        raise ValidationError("argument must be positive")
    if x < 0.5:
        # cosh x - sinh x / x = sum_{m>=1} x^{2m} 2m/(2m+1)!
        x2 = x * x
        s = 0.0
        term = x2 / 3.0
        m = 1
        while abs(term) > 1e-20:
            s += term
            m += 1
            term = x2 ** m * (2 * m) / math.factorial(2 * m + 1)
        return math.sqrt(2 / (math.pi * x)) * s
    return math.sqrt(2 / (math.pi * x)) * (math.cosh(x) - math.sinh(x) / x)


# ---------------------------------------------------------------------------
# convergent series for the ordinary partition function
# ---------------------------------------------------------------------------

@lru_cache(maxsize=100000)
def _kloosterman_A(k: int, n: int) -> float:
    """A_k(n) = sum over h coprime to k of e^{pi i s(h,k) - 2 pi i n h / k},
    in the classical convention that makes the exact formula literally true."""
    total = 0j
    for h in range(k):
        if math.gcd(h, k) != 1 and k > 1:
            continue
        x = Fraction(dedekind_sum(h, k)) - Fraction(2 * n * h, k)
        x %= 2
        total += cmath.exp(1j * cmath.pi * float(x))
    if abs(total.imag) > 1e-8 * max(1.0, abs(total.real)):
        raise IdentityError(f"A_{k}({n}) should be real, got {total}")
    return total.real


def rademacher_p(n: int, k_max: int) -> float:
    """Truncated convergent series for p(n):
    (2 pi / (24n-1)^{3/4}) sum_{k<=k_max} A_k(n)/k I_{3/2}(pi sqrt(24n-1)/(6k))."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    if k_max < 1:
        raise ValidationError("k_max must be >= 1")
    x = 24 * n - 1
    total = 0.0
    for k in range(1, k_max + 1):
        total += _kloosterman_A(k, n) / k * bessel_I_threehalves(math.pi * math.sqrt(x) / (6 * k))
    return 2 * math.pi / x ** 0.75 * total


# ---------------------------------------------------------------------------
# exact-phase helpers
# ---------------------------------------------------------------------------

def _mp_expjpi(x: Fraction):
    """e^{i pi x} for exact rational x at the current precision."""
    x = Fraction(x) % 2
    return mp.expjpi(mp.mpf(x.numerator) / x.denominator)


def _phase2(frac: Fraction):
    """e^{2 pi i frac} (float) from an exact rational reduced mod 1."""
    f = Fraction(frac) % 1
    return cmath.exp(2j * cmath.pi * (f.numerator / f.denominator))


# ---------------------------------------------------------------------------
# arc kernels: exact Euler-Maclaurin route (k <= ARC_EXACT_MAX)
# ---------------------------------------------------------------------------

def _arc_dps(k: int, n_delta: Fraction) -> int:
    """Working digits for the k-th arc: its term is ~ e^{4 pi sqrt((n+D)/24)/k}."""
    growth = 4 * math.pi * math.sqrt(float(n_delta) / 24) / k
    return 30 + int(growth / math.log(10)) + 1


def _dps_bucket(dps: int) -> int:
    """Round the precision up to coarse buckets so the n-scan reuses caches."""
    return max(40, 20 * ((dps + 19) // 20))


class _ExactArcKernel:
    """sum_l psi_{h,k}(j,l) Phi_{l,h'/k}(t) as [pole at 1/48] + [explicit
    small poles] + [power series], all mpmath values at ``dps`` digits.

    Built from the exact Euler-Maclaurin buckets; the Taylor cancellation
    between the aggregate and the subtracted small poles is performed with
    40 guard digits.
    """

    def __init__(self, j: int, triple: ModularTriple, dps: int):
        self.j = j
        self.triple = triple
        self.dps = dps
        k, h_prime = triple.k, triple.h_prime
        depth = int((dps + 8) * math.log(10) / math.log(24 * _POLE_RADIUS)) + 6
        self.depth = depth
        # the closed-form brackets cancel internally by ~1 digit per order
        # (boundary-integral part against the f-part), and the small-pole
        # subtraction costs another ~log10(48) per order at the deep end
        prec = dps + depth + 30
        with mp.workdps(prec):
            scalar = _mp_expjpi(Fraction(-1, 4) - eta_multiplier_phase(triple.matrix))
            psi = psi_vector_mp(triple.matrix)
            psi_row = [scalar * psi[j][ell] for ell in range(3)]
            poles = []  # (m, residue) over all components, |m| <= radius
            for ell in range(3):
                for m, d in kernel_poles(ell, _POLE_RADIUS):
                    res = psi_row[ell] * int(2 * d) * _mp_expjpi(2 * Fraction(h_prime) * m / k) / 2
                    poles.append((m, res))
            aggregates = aggregated_taylor_mp(j, triple, depth, prec)
            taylor = []
            for r in range(depth + 1):
                coeff = scalar * aggregates[r] / mp.factorial(r)
                for m, res in poles:
                    coeff += res / (mp.mpf(m.numerator) / m.denominator) ** (r + 1)
                taylor.append(coeff)
        # round down to working precision
        with mp.workdps(dps):
            self.taylor = [+c for c in taylor]
            self.pole_coefficient = next(+r for m, r in poles if m == BETA[0])
            self.other_poles = [(mp.mpf(m.numerator) / m.denominator, +r)
                                for m, r in poles if m != BETA[0]]
            tail = abs(self.taylor[-1]) * mp.mpf(1) / 24 ** depth
            scale = abs(self.taylor[0]) + 1
            if tail > scale * mp.mpf(10) ** (-dps + 10):
                raise ToleranceError(
                    f"arc kernel Taylor depth {depth} insufficient at k={triple.k}",
                    achieved=float(tail / scale))

    def smooth_eval(self, t):
        """Kernel minus its 1/48 pole term, at mpf t in [0, 1/24]."""
        acc = mp.mpc(0)
        for c in reversed(self.taylor):
            acc = acc * t + c
        for m, res in self.other_poles:
            acc += res / (t - m)
        return acc


@lru_cache(maxsize=None)
def _exact_arc_kernel(j: int, h: int, k: int, dps_bucket: int) -> _ExactArcKernel:
    return _ExactArcKernel(j, ModularTriple.from_arc(h, k), dps_bucket)


# ---------------------------------------------------------------------------
# arc kernels: float symmetric-sum route (k > ARC_EXACT_MAX)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _float_arc_kernel(j: int, h: int, k: int):
    """(psi_row, pole_coefficient, [(m, res)], taylor) in complex128."""
    triple = ModularTriple.from_arc(h, k)
    h_prime = triple.h_prime
    psi = circle_multiplier(triple, check_reps=False)
    psi_row = [complex(psi[j, ell]) for ell in range(3)]
    pole_coeff = 0j
    poles = []
    taylor = np.zeros(FLOAT_TAYLOR_DEPTH + 1, dtype=complex)
    for ell in range(3):
        if psi_row[ell] == 0:
            continue
        for m, d in kernel_poles(ell, _POLE_RADIUS):
            res = psi_row[ell] * float(d) * _phase2(Fraction(h_prime) * m / k)
            if m == BETA[0]:
                pole_coeff += res
            else:
                poles.append((float(m), res))
        for r in range(FLOAT_TAYLOR_DEPTH + 1):
            moment, _err = symmetric_moment(ell, h_prime, k, r,
                                            limit=FLOAT_MOMENT_LIMIT, exclude=_POLE_RADIUS)
            taylor[r] += psi_row[ell] * (-moment)
    return pole_coeff, tuple(poles), taylor


# ---------------------------------------------------------------------------
# principal-value machinery
# ---------------------------------------------------------------------------

def pv_pole_integral(smooth, a: float = 0.0, b: float = 1 / 24, pole: float = 1 / 48,
                     nodes: int = 128):
    """PV integral of smooth(t)/(t - pole) over [a, b] by explicit subtraction:
    int (smooth(t) - smooth(pole))/(t - pole) dt + smooth(pole) log((b-pole)/(pole-a)).

    The log term vanishes identically when the pole is the midpoint, so a
    constant integrand gives exactly 0.
    """
    if not a < pole < b:
        raise ValidationError("pole must lie inside (a, b)")
    fp = smooth(pole)
    x, w = np.polynomial.legendre.leggauss(nodes)
    total = 0.0 + 0j if isinstance(fp, complex) else 0.0
    for lo, hi in ((a, pole), (pole, b)):
        mid, half = (lo + hi) / 2, (hi - lo) / 2
        t = mid + half * x
        vals = np.array([smooth(ti) for ti in t])
        total = total + half * np.sum(w * (vals - fp) / (t - pole))
    log_term = math.log((b - pole) / (pole - a))
    return total + fp * log_term


def _pv_sinh_mp(coeff, c, quad_degree: int):
    """PV int_0^{1/24} sinh(c sqrt(1/24 - t)) / (t - 1/48) dt times coeff,
    in the substitution t = 1/24 - v^2 where the integrand is analytic."""
    V0 = mp.sqrt(mp.mpf(1) / 24)
    vs = mp.sqrt(mp.mpf(1) / 48)

    def F(v):
        return 2 * v * mp.sinh(c * v) / (v + vs)

    Fs = F(vs)

    def dq(v):
        return (F(v) - Fs) / (v - vs)

    integral = mp.quadgl(dq, [0, vs, V0], maxdegree=quad_degree)
    return -coeff * (integral + Fs * mp.log((V0 - vs) / vs))


def _arc_integral_mp(kern: _ExactArcKernel, c, quad_degree: int):
    """PV int_0^{1/24} K(t) sinh(c sqrt(1/24 - t)) dt for an exact-route arc."""
    V0 = mp.sqrt(mp.mpf(1) / 24)

    def smooth_part(v):
        t = mp.mpf(1) / 24 - v * v
        return kern.smooth_eval(t) * 2 * v * mp.sinh(c * v)

    smooth, err = mp.quadgl(smooth_part, [0, V0], maxdegree=quad_degree, error=True)
    if err > max(abs(smooth), mp.mpf(1)) * mp.mpf(10) ** (-(kern.dps - 14)):
        raise ToleranceError(
            f"arc quadrature did not converge at degree {quad_degree} "
            f"(k={kern.triple.k})", achieved=float(err))
    return smooth + _pv_sinh_mp(kern.pole_coefficient, c, quad_degree)


def _arc_integral_float(j: int, h: int, k: int, c: float, nodes: int):
    """Same integral for a float-route arc (k > ARC_EXACT_MAX)."""
    pole_coeff, poles, taylor = _float_arc_kernel(j, h, k)
    V0 = math.sqrt(1 / 24)
    x, w = np.polynomial.legendre.leggauss(nodes)
    v = V0 / 2 * (x + 1)
    wv = V0 / 2 * w
    t = 1 / 24 - v * v
    kern = np.zeros_like(t, dtype=complex)
    for r in range(len(taylor) - 1, -1, -1):
        kern = kern * t + taylor[r]
    for m, res in poles:
        kern = kern + res / (t - m)
    smooth = np.sum(wv * kern * 2 * v * np.sinh(c * v))
    # PV part, same subtraction as the mp route
    vs = math.sqrt(1 / 48)

    def F(vv):
        return 2 * vv * np.sinh(c * vv) / (vv + vs)

    Fs = F(vs)
    total_pv = 0.0
    for lo, hi in ((0.0, vs), (vs, V0)):
        mid, half = (lo + hi) / 2, (hi - lo) / 2
        vv = mid + half * x
        total_pv += half * np.sum(w * (F(vv) - Fs) / (vv - vs))
    pv = -(total_pv + Fs * math.log((V0 - vs) / vs))
    return complex(smooth + pole_coeff * pv)


# ---------------------------------------------------------------------------
# the main-sum evaluator
# ---------------------------------------------------------------------------

@dataclass
class AsymptoticReport:
    j: int
    n: int
    main_sum: float
    exact: int | None
    residual: float | None
    residual_over_n34: float | None
    imaginary_defect: float
    dps: int

    def to_dict(self):
        return {
            "j": self.j,
            "n": self.n,
            "exact": None if self.exact is None else str(self.exact),
            "main_sum": self.main_sum,
            "residual": self.residual,
            "n34_ratio": self.residual_over_n34,
        }


def theorem_main_sum(j: int, n: int, quad_nodes: int = 64, tol: float = 1e-9,
                     exact: int | None = None, with_exact: bool = False,
                     k_cap: int | None = None) -> AsymptoticReport:
    """Evaluate the double sum of the main asymptotic formula for alpha_j(n)
    over the arcs k <= floor(sqrt(n)), with principal-value kernel integrals.

    The result must be real to ``tol`` relative (the complex arc terms cancel
    in conjugate pairs); the imaginary part is asserted and discarded.
    ``with_exact`` computes the exact coefficient for the residual columns;
    ``k_cap`` truncates the arc sum early (single-arc comparisons).
    """
    if j not in (0, 1, 2):
        raise ValidationError("j must be 0, 1 or 2")
    if n < 1:
        raise ValidationError("n must be >= 1")
    n_delta = n + DELTA[j]
    kmax = math.isqrt(n)
    if k_cap is not None:
        kmax = min(kmax, k_cap)
    dps_total = _arc_dps(1, n_delta)
    with mp.workdps(dps_total):
        sqrt_nd = mp.sqrt(mp.mpf(n_delta.numerator) / n_delta.denominator)
        total = mp.mpc(0)
        for k in range(1, kmax + 1):
            c = 4 * mp.pi * sqrt_nd / k
            arc_sum = mp.mpc(0)
            if k <= ARC_EXACT_MAX:
                dps_k = _dps_bucket(_arc_dps(k, n_delta))
                cv0 = float(c) * math.sqrt(1 / 24)
                nodes_needed = int(0.6 * cv0 + 2.2 * dps_k) + 24
                quad_degree = max(4, math.ceil(math.log2(nodes_needed / 3)) + 1)
                for h in _coprime_residues(k):
                    kern = _exact_arc_kernel(j, h, k, dps_k)
                    with mp.workdps(dps_k):
                        integral = _arc_integral_mp(kern, +c, quad_degree)
                        term = _mp_expjpi(_lambda_phase(j, n, h, k)) * integral
                    arc_sum += term
            else:
                nodes = max(quad_nodes, 32 + int(float(c) * math.sqrt(1 / 24)))
                for h in _coprime_residues(k):
                    integral = _arc_integral_float(j, h, k, float(c), nodes)
                    lam = _phase2(_lambda_phase(j, n, h, k) / 2)
                    arc_sum += mp.mpc(lam * integral)
            total += arc_sum / mp.sqrt(k)
        total *= mp.sqrt(2) / (mp.pi * sqrt_nd)
        imag_defect = float(abs(total.imag) / max(abs(total.real), mp.mpf(1)))
        if imag_defect > tol:
            raise IdentityError(
                f"main sum should be real to {tol:.1e}, imaginary defect {imag_defect:.2e}")
        main = total.real
        if exact is None and with_exact:
            exact = qseries.alpha(j, n)[n]
        if exact is not None:
            residual = float(mp.mpf(exact) - main)
            ratio = residual / n ** 0.75
        else:
            residual = ratio = None
        return AsymptoticReport(j, n, float(main), exact, residual, ratio,
                                imag_defect, dps_total)


def _coprime_residues(k: int):
    return [h for h in range(k)] if k == 1 else [h for h in range(k) if math.gcd(h, k) == 1]


def _lambda_phase(j: int, n: int, h: int, k: int) -> Fraction:
    """Exact x (mod 2) with the arc phase e^{i pi x} =
    e^{-2 pi i (h'/24 + (n+Delta_j) h)/k}."""
    triple = ModularTriple.from_arc(h, k)
    x = -2 * (Fraction(triple.h_prime, 24) + (n + DELTA[j]) * h) / k
    return x % 2


# ---------------------------------------------------------------------------
# leading exponential expansion
# ---------------------------------------------------------------------------

@dataclass
class LeadingExpansion:
    """alpha_j(n) ~ (e^{4 pi sqrt((n+delta)/24)}/(n+delta)) sum a_r (n+delta)^{-r/2};
    the first nonzero a_r leads (a_0 = 0 for j = 0, which shifts the visible
    prefactor to (n+delta)^{-3/2})."""

    j: int
    coefficients: list
    delta: Fraction

    @property
    def first_nonzero(self) -> int:
        return next(r for r, a in enumerate(self.coefficients) if a != 0)

    def estimate(self, n: int, terms: int) -> float:
        """Truncation with ``terms`` nonvanishing leading terms."""
        nd = float(n + self.delta)
        pref = math.exp(4 * math.pi * math.sqrt(nd / 24)) / nd
        top = self.first_nonzero + terms
        if top > len(self.coefficients):
            raise ValidationError("not enough expansion coefficients")
        return pref * sum(a * nd ** (-r / 2) for r, a in enumerate(self.coefficients[:top]))


def leading_expansion(j: int, N: int) -> LeadingExpansion:
    """First N expansion coefficients from the exact kernel Taylor data via
    the chain rule for (1-12u) K(u(1-6u)) at u = 0."""
    if j not in (0, 1, 2):
        raise ValidationError("j must be 0, 1 or 2")
    if N < 1:
        raise ValidationError("N must be >= 1")
    if N > 32:
        raise ValidationError("expansion depth capped at 32 (exact Taylor data)")
    # c_m: Taylor coefficients of the aggregated kernel, exact pi-polynomials
    c = [
        {2 * r + 2: aggregated_taylor_exact(j, r) / math.factorial(r)}
        for r in range(N)
    ]
    out = []
    for s in range(N):
        g_s: dict[int, Fraction] = {}
        for m_idx in range(s + 1):
            # [u^s] (1-12u) v(u)^m for v = u(1-6u)
            w = _compose_coefficient(m_idx, s) - 12 * _compose_coefficient(m_idx, s - 1)
            if w == 0:
                continue
            for p, q in c[m_idx].items():
                g_s[p] = g_s.get(p, Fraction(0)) + q * w
        # a_s = 4 sqrt3 s! g_s / (4 pi sqrt6)^{s+2}
        value = 0.0
        for p, q in g_s.items():
            value += float(q) * math.pi ** (p - s - 2)
        value *= 4 * math.sqrt(3) * math.factorial(s) / (4 ** (s + 2) * 6 ** ((s + 2) / 2))
        out.append(value)
    return LeadingExpansion(j, out, DELTA[j])


def _compose_coefficient(m: int, s: int) -> int:
    """[u^s] (u - 6u^2)^m = C(m, s-m) (-6)^(s-m)."""
    if s < m or s > 2 * m:
        return 0
    return math.comb(m, s - m) * (-6) ** (s - m)


@dataclass
class CorollaryRow:
    j: int
    n: int
    exact: int
    estimates: list
    residuals: list
    relative_errors: list


def corollary_check(j: int, n_list, terms: int = 3, alpha_table=None,
                    slope_tolerance: float = 0.15):
    """Exact coefficients vs the 1..terms-term truncations of the leading
    expansion, with the residual-decay slope assertion (each added term
    should shrink the residual like (n+delta)^{-1/2}, i.e. log-log slope
    -1/2 within ``slope_tolerance``)."""
    n_list = sorted(n_list)
    if len(n_list) < 2:
        raise ValidationError("need at least two n values")
    exp = leading_expansion(j, terms + 2 + (1 if j == 0 else 0))
    if alpha_table is None:
        alpha_table = qseries.alpha(j, max(n_list))
    rows = []
    for n in n_list:
        exact = alpha_table[n]
        ests = [exp.estimate(n, t) for t in range(1, terms + 1)]
        residuals = [float(exact) - e for e in ests]
        rels = [abs(r) / float(exact) for r in residuals]
        rows.append(CorollaryRow(j, n, exact, ests, residuals, rels))
    # slope test on successive residual ratios
    logs_n = [math.log(float(n + DELTA[j])) for n in n_list]
    for t in range(1, terms):
        ratios = []
        for row in rows:
            if row.residuals[t - 1] == 0 or row.residuals[t] == 0:
                raise IdentityError("vanishing residual in slope test")
            ratios.append(abs(row.residuals[t] / row.residuals[t - 1]))
        slope = _fit_slope(logs_n, [math.log(r) for r in ratios])
        if abs(slope + 0.5) > slope_tolerance:
            raise IdentityError(
                f"residual decay slope for term {t}->{t+1} is {slope:.3f}, "
                f"expected -0.5 +- {slope_tolerance}")
    return rows


def _fit_slope(xs, ys):
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


# ---------------------------------------------------------------------------
# radial-limit diagnostic
# ---------------------------------------------------------------------------

def radial_limit_diagnostic(j: int, h: int, k: int, V_list, terms: int = 4):
    """Compare u_j(h/k + iV/k^2) (from the exact q-expansion) against the
    kernel-Taylor prediction (k/2 pi^2) sum_r (V/2 pi)^r [aggregated r-value].

    Returns rows (V, series_value, prediction, difference); the difference
    should scale like V^terms as V decreases (the expansion is asymptotic,
    so ``terms`` must stay small)."""
    triple = ModularTriple.from_arc(h, k)
    rows = []
    order = max(int(40 * k * k / (2 * math.pi * min(V_list))) + 10, 64)
    u = qseries.u_series(j, order)
    beta = float(BETA[j])
    aggs = []
    for r in range(terms):
        pref, D, pairs = aggregated_taylor_buckets(j, r, triple)
        agg = sum(float(v) * cmath.exp(2j * cmath.pi * b / D) for b, v in pairs)
        aggs.append(agg * float(pref) * math.pi ** (2 * r + 2))
    for V in sorted(V_list, reverse=True):
        tau = h / k + 1j * V / k ** 2
        q = cmath.exp(2j * cmath.pi * tau)
        series = sum(c * q ** (beta + i) for i, c in enumerate(u.coeffs) if c)
        pred = k / (2 * math.pi ** 2) * sum(
            (V / (2 * math.pi)) ** r * aggs[r] for r in range(terms))
        rows.append((V, series, pred, abs(series - pred)))
    return rows
