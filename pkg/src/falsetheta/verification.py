"""The acceptance checks behind ``falsetheta verify`` and the test suite.

Each check group runs one numbered criterion at its stated tolerance and
yields CheckResult rows; the CLI prints one line per check and exits nonzero
on any failure.  All checks are deterministic: fixed inputs, ordered
reductions, seeded randomness.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = ["CheckResult", "run", "GROUPS"]


@dataclass
class CheckResult:
    group: str
    name: str
    passed: bool
    detail: str
    elapsed: float

    def line(self, with_timing: bool = False) -> str:
        """Report line; timings are opt-in so that reports stay byte-identical
        across runs and thread counts."""
        status = "PASS" if self.passed else "FAIL"
        suffix = f"; {self.elapsed:.2f}s" if with_timing else ""
        return f"[{status}] {self.group}: {self.name} ({self.detail}{suffix})"


def _check(group, name, condition, detail, t0):
    return CheckResult(group, name, bool(condition), detail, time.time() - t0)


# -- criterion 1: generating-function ground truth --------------------------

def check_generating(threads=1):
    from . import qseries

    t0 = time.time()
    got = qseries.podeu(9)
    yield _check("generating", "first ten parity-separated counts",
                 got == [1, 1, 1, 2, 3, 3, 4, 5, 8, 8], f"got {got}", t0)
    t0 = time.time()
    a0 = qseries.alpha(0, 11)
    ref0 = [-1, 0, 1, 1, 4, 4, 9, 11, 19, 23, 37, 44]
    yield _check("generating", "alpha_0 table", a0 == ref0, f"got {a0}", t0)
    t0 = time.time()
    a1 = qseries.alpha(1, 10)
    ref1 = [1, 3, 5, 9, 14, 22, 31, 48, 65, 92, 126]
    yield _check("generating", "alpha_1 table", a1 == ref1, f"got {a1}", t0)


# -- criterion 2: exact identity suite ---------------------------------------

def check_identities(threads=1):
    from . import qseries

    t0 = time.time()
    s1 = qseries.sigma_hypergeometric(200)
    s2 = qseries.sigma_theta(200)
    yield _check("identities", "sigma two routes to order 200",
                 s1.coeffs == s2.coeffs, "exact coefficient equality", t0)
    t0 = time.time()
    try:
        qseries.decomposition_check(500)
        ok, msg = True, "exact for n <= 500"
    except Exception as exc:  # IdentityError carries the first failure
        ok, msg = False, str(exc)
    yield _check("identities", "parity decomposition n <= 500", ok, msg, t0)


# -- criterion 3: lattice/series duality -------------------------------------

def check_duality(threads=1):
    from . import qseries
    from .quadform import BETA, coefficient_table

    t0 = time.time()
    worst = None
    for j in range(3):
        series = qseries.u_series(j, 201)  # raises on internal route mismatch
        idx_min, quarters = coefficient_table(j, 202)
        for m in range(201):
            lattice = Fraction(int(quarters[m - idx_min]), 4)
            if lattice != series[m]:
                worst = (j, m, lattice, series[m])
    yield _check("duality", "lattice count equals series coefficient, n <= 200, all j",
                 worst is None, "exact equality" if worst is None else f"mismatch {worst}", t0)


# -- criterion 4: multiplier matrices ----------------------------------------

def check_multipliers(threads=1):
    import cmath

    from .modular import ModularTriple, S_MATRIX, T_MATRIX, circle_multiplier, psi_vector

    t0 = time.time()
    z48 = cmath.exp(2j * cmath.pi / 48)
    expected_T = np.diag([z48, z48 ** 25, z48 ** 46])
    err_T = float(np.max(np.abs(psi_vector(T_MATRIX).entries - expected_T)))
    yield _check("multipliers", "translation multiplier", err_T < 1e-12, f"err {err_T:.2e}", t0)

    t0 = time.time()
    r2 = math.sqrt(2)
    expected_S = 0.5 * np.array([[1, 1, r2], [1, 1, -r2], [r2, -r2, 0]])
    PS = psi_vector(S_MATRIX)
    err_S = float(np.max(np.abs(PS.entries - expected_S)))
    yield _check("multipliers", "inversion multiplier", err_S < 1e-12, f"err {err_S:.2e}", t0)

    t0 = time.time()
    err_inv = float(np.max(np.abs((PS @ PS).entries - np.eye(3))))
    yield _check("multipliers", "inversion multiplier squares to identity",
                 err_inv < 1e-12, f"err {err_inv:.2e}", t0)

    t0 = time.time()
    arc = circle_multiplier(ModularTriple.from_arc(0, 1))
    same = np.array_equal(arc.entries, PS.entries)
    yield _check("multipliers", "arc (0,1) multiplier equals inversion multiplier exactly",
                 same, "bitwise equal" if same else "differs", t0)

    t0 = time.time()
    import random

    rng = random.Random(20260809)
    worst = 0.0
    for _ in range(20):
        m1 = _random_word(rng)
        m2 = _random_word(rng)
        lhs = psi_vector(m1 @ m2)
        rhs = psi_vector(m1) @ psi_vector(m2)
        worst = max(worst, float(np.max(np.abs(lhs.entries - rhs.entries))))
    yield _check("multipliers", "cocycle over 20 random pairs", worst < 1e-10,
                 f"worst {worst:.2e}", t0)


def _random_word(rng, length=6):
    from .modular import S_MATRIX, T_MATRIX

    m = T_MATRIX
    for _ in range(length):
        m = m @ (S_MATRIX if rng.random() < 0.5 else T_MATRIX)
    return m


# -- criterion 5: kernel Taylor table ----------------------------------------

def check_kernel_table(threads=1):
    from .kernel import (KernelTaylorTable, phi_taylor_individual_exact,
                         symmetric_moment)

    t0 = time.time()
    table = KernelTaylorTable.build(4)
    defect = table.reference_defect()
    yield _check("kernel-table", "all 15 reference aggregates (relative 1e-10)",
                 defect < 1e-10, f"defect {defect:.1e} (exact arithmetic)", t0)
    t0 = time.time()
    zero_entry = abs(table.aggregated[(0, 0)])
    yield _check("kernel-table", "(j,r)=(0,0) aggregate exactly 0 (1e-12)",
                 zero_entry < 1e-12, f"|value| = {zero_entry}", t0)
    t0 = time.time()
    worst = 0.0
    sqrt2 = math.sqrt(2)
    for r in range(3):
        for ell in range(3):
            a, b = phi_taylor_individual_exact(ell, r)
            target = -(float(a) + float(b) * sqrt2) * math.pi ** (2 * r + 2) / math.factorial(r)
            got, _est = symmetric_moment(ell, 0, 1, r, limit=400_000)
            worst = max(worst, abs(got.real - target) / abs(target))
    yield _check("kernel-table", "symmetric-sum cross-route r <= 2 (relative 1e-6)",
                 worst < 1e-6, f"worst rel {worst:.2e}", t0)


# -- criterion 6: convergent partition series --------------------------------

def check_rademacher(threads=1):
    from . import asymptotics, qseries

    t0 = time.time()
    p = qseries.partition_numbers(200)
    worst = 0.0
    for n in range(1, 201):
        approx = asymptotics.rademacher_p(n, math.isqrt(n) + 5)
        worst = max(worst, abs(approx - p[n]))
    yield _check("rademacher", "series rounds to p(n) for n <= 200",
                 worst < 0.5, f"worst distance {worst:.2e}", t0)


# -- criterion 7: leading exponential expansion -------------------------------

def check_corollary(threads=1):
    from . import asymptotics, qseries

    for j in (1, 2):
        t0 = time.time()
        table = qseries.alpha(j, 4000)
        exp = asymptotics.leading_expansion(j, 5)
        rel = abs(table[4000] - exp.estimate(4000, 1)) / table[4000]
        yield _check("corollary", f"one-term estimate at n=4000, j={j} (2%)",
                     rel < 0.02, f"rel {rel:.4f}", t0)
        t0 = time.time()
        try:
            asymptotics.corollary_check(j, [1000, 2000, 4000], terms=3,
                                        alpha_table=table, slope_tolerance=0.15)
            ok, msg = True, "slopes -0.5 within 0.15"
        except Exception as exc:
            ok, msg = False, str(exc)
        yield _check("corollary", f"residual decay slopes, j={j}", ok, msg, t0)
    t0 = time.time()
    exp0 = asymptotics.leading_expansion(0, 4)
    ok = exp0.coefficients[0] == 0 and exp0.first_nonzero == 1
    yield _check("corollary", "j=0 expansion led by the second coefficient",
                 ok, f"coefficients {exp0.coefficients[:2]}", t0)


# -- criterion 8: main-sum scan ------------------------------------------------

SCAN_POINTS = (500, 1000, 2000, 4000)


def check_theorem(threads=1):
    from . import asymptotics, qseries

    for j in range(3):
        t0 = time.time()
        table = qseries.alpha(j, SCAN_POINTS[-1])

        def one(n, jj=j, tab=table):
            return asymptotics.theorem_main_sum(jj, n, exact=tab[n])

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                reports = list(pool.map(one, SCAN_POINTS))
        else:
            reports = [one(n) for n in SCAN_POINTS]
        ratios = [abs(r.residual_over_n34) for r in reports]
        imag = max(r.imaginary_defect for r in reports)
        detail = " ".join(f"n={r.n}:{r.residual_over_n34:+.2e}" for r in reports)
        # bounded (generous absolute cap) and non-increasing in trend
        slope = _log_slope(SCAN_POINTS, [max(x, 1e-12) for x in ratios])
        bounded = max(ratios) < 1.0
        yield _check("theorem", f"j={j} |residual|/n^(3/4) bounded, trend slope <= 0.1",
                     bounded and slope <= 0.1 and imag < 1e-9,
                     f"{detail}; slope {slope:+.2f}; imag {imag:.1e}", t0)


def _log_slope(xs, ys):
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    n = len(lx)
    mx, my = sum(lx) / n, sum(ly) / n
    return sum((a - mx) * (b - my) for a, b in zip(lx, ly)) / sum((a - mx) ** 2 for a in lx)


# -- criterion 9: lattice density ----------------------------------------------

def check_density(threads=1):
    from .maass import LATTICE_DENSITY, partial_sum_density, shift_density
    from .quadform import SHIFT_FAMILIES

    X = 10 ** 4
    for j in range(3):
        t0 = time.time()
        report = partial_sum_density(j, 0, 1, X)
        # prediction is identically 0 (the signed families cancel); the
        # deviation is measured in units of the density constant
        dev = max(abs(float(report.positive_sum) / X - report.prediction / X),
                  abs(float(report.negative_sum) / X - report.prediction / X))
        yield _check("density", f"signed partial sums vs prediction, j={j} (5% of A)",
                     dev <= 0.05 * LATTICE_DENSITY,
                     f"deviation {dev:.5f} vs {0.05 * LATTICE_DENSITY:.5f}", t0)
    t0 = time.time()
    worst = 0.0
    for fam in SHIFT_FAMILIES:
        for mu in fam.plus + fam.minus:
            for side in (1, -1):
                density = shift_density(mu, X, side)
                worst = max(worst, abs(density - LATTICE_DENSITY) / LATTICE_DENSITY)
    yield _check("density", "per-shift counting density equals A (5%)",
                 worst <= 0.05, f"worst rel deviation {worst:.4f}", t0)


GROUPS = {
    "generating": check_generating,
    "identities": check_identities,
    "duality": check_duality,
    "multipliers": check_multipliers,
    "kernel-table": check_kernel_table,
    "rademacher": check_rademacher,
    "corollary": check_corollary,
    "theorem": check_theorem,
    "density": check_density,
}

#: groups that finish in seconds (used by the determinism double-run)
FAST_GROUPS = ("generating", "identities", "duality", "multipliers",
               "rademacher", "density")


def run(groups=None, threads: int = 1):
    names = list(GROUPS) if groups is None else list(groups)
    results = []
    for name in names:
        if name not in GROUPS:
            from .errors import ValidationError

            raise ValidationError(f"unknown check group {name!r}; "
                                  f"available: {', '.join(GROUPS)}")
        results.extend(GROUPS[name](threads=threads))
    return results
