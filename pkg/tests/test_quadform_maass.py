"""Shifted-lattice counts, Maass-form coefficients, densities, and the
K-Bessel Fourier evaluation.  The naive double-loop oracle here is fully
independent of the production enumerator (Fractions, no scaling tricks)."""

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from falsetheta import maass, qseries
from falsetheta.errors import ValidationError
from falsetheta.quadform import (
    BETA,
    SHIFT_FAMILIES,
    ShiftVector,
    coefficient_at,
    family_closed_under,
    shifted_class_count,
    shifted_count,
)


def sgn(x):
    return (x > 0) - (x < 0)


def naive_d(j, n, span=40):
    """Independent reference: raw Fraction double loop over both cones."""
    total = Fraction(0)
    fam = SHIFT_FAMILIES[j]
    for sign, mu in fam.signed():
        for a in range(-span, span + 1):
            for b in range(-span, span + 1):
                x1, x2 = mu.mu1 + a, mu.mu2 + b
                q = 12 * x1 * x1 - 2 * x2 * x2
                if q != n:
                    continue
                if n > 0:
                    w = Fraction(1 + sgn(2 * x1 + x2) * sgn(2 * x1 - x2), 2)
                else:
                    w = Fraction(1 - sgn(3 * x1 + x2) * sgn(3 * x1 - x2), 2)
                total += sign * w
    return total / 2


# -- shift families -------------------------------------------------------------

def test_families_have_eight_members_and_close_under_the_hyperbolic_rotation():
    for fam in SHIFT_FAMILIES:
        assert len(fam.plus) == len(fam.minus) == 4
        assert family_closed_under((5, 2, 12, 5), fam.j)


def test_shift_vector_validation():
    with pytest.raises(ValueError):
        ShiftVector(Fraction(1, 5), Fraction(0))
    v = ShiftVector(Fraction(25, 24), Fraction(-1, 4))
    assert (v.mu1, v.mu2) == (Fraction(1, 24), Fraction(3, 4))


# -- coefficients ---------------------------------------------------------------

def test_smallest_positive_coefficient():
    assert maass.d_coefficient(0, Fraction(1, 48)) == -1


def test_d_matches_u1_series():
    u1 = qseries.u_series(1, 11)
    for m in range(11):
        assert maass.d_coefficient(1, BETA[1] + m) == u1[m]


def test_d_against_naive_double_loop():
    for j in range(3):
        for m in (0, 1, 2, -1, -2, -3):
            n = BETA[j] + m
            if n == 0:
                continue
            assert coefficient_at(j, n) == naive_d(j, n, span=12), (j, n)


def test_d_rejects_bad_grid_points():
    with pytest.raises(ValidationError):
        maass.d_coefficient(0, 0)
    with pytest.raises(ValidationError):
        maass.d_coefficient(0, Fraction(1, 3))


def test_residue_classes_partition_the_count():
    c = 5
    for j, fam in enumerate(SHIFT_FAMILIES):
        mu = fam.plus[0]
        for m in (0, 1, 3, -2):
            n = BETA[j] + m
            if n == 0:
                continue
            total = sum(shifted_class_count(c, mu, r1, r2, n)
                        for r1 in range(c) for r2 in range(c))
            assert total == shifted_count(mu, n), (j, n)


def test_half_weights_appear_on_boundary_rays():
    # the third family's negative side hits the rays 3 x1 = +- x2
    mu = SHIFT_FAMILIES[2].minus[0]
    assert shifted_count(mu, Fraction(-1, 24)) == Fraction(1, 2)


# -- densities ------------------------------------------------------------------

def test_density_constant_value():
    # reference value is quoted to eight decimals
    assert abs(maass.LATTICE_DENSITY - 0.46794065) < 1e-8


def test_density_constant_from_cone_areas():
    # quadrature oracle: area of {|x2| <= 2 x1, 12 x1^2 - 2 x2^2 <= 1} * 2
    xs = np.linspace(0, 0.5, 4001)[1:]
    width = np.zeros_like(xs)
    for i, x1 in enumerate(xs):
        lo = math.sqrt(max(12 * x1 * x1 - 1, 0) / 2)
        hi = 2 * x1
        width[i] = 2 * max(hi - lo, 0)
    area = 2 * float(np.trapezoid(width, xs))
    assert abs(area - maass.LATTICE_DENSITY) < 1e-3


def test_signed_density_constants_vanish_at_c1():
    for j in range(3):
        assert maass.density_constant(j, 0, 1) == 0.0


def test_density_constants_sum_independent_of_c():
    for j in range(3):
        for c in (1, 2, 3, 5):
            assert abs(sum(maass.density_constant(j, r, c) for r in range(c))) < 1e-15


def test_partial_sum_density_zero_window():
    rep = maass.partial_sum_density(0, 0, 1, 0)
    assert rep.positive_sum == rep.negative_sum == 0


def test_partial_sums_track_prediction():
    X = 10 ** 4
    for j in range(3):
        rep = maass.partial_sum_density(j, 0, 1, X)
        assert abs(float(rep.positive_sum) / X) < 0.05 * maass.LATTICE_DENSITY
        assert abs(float(rep.negative_sum) / X) < 0.05 * maass.LATTICE_DENSITY


def test_per_shift_density_at_1e4():
    mu = SHIFT_FAMILIES[0].plus[0]
    for side in (1, -1):
        rel = abs(maass.shift_density(mu, 10 ** 4, side) - maass.LATTICE_DENSITY)
        assert rel / maass.LATTICE_DENSITY < 0.05


def test_partial_sum_error_shape():
    # |sum - prediction| <= C max(c^2, c sqrt(X)); fit C over a small grid
    worst = 0.0
    for c, r in ((2, 1), (3, 2)):
        for X in (400, 1600, 6400):
            rep = maass.partial_sum_density(1, r, c, X)
            err = abs(float(rep.positive_sum) - rep.prediction)
            worst = max(worst, err / max(c * c, c * math.sqrt(X)))
    assert worst < 5.0, f"fitted constant {worst}"


# -- Fourier evaluation -----------------------------------------------------------

PSI_S = np.array([[0.5, 0.5, 0.5 * math.sqrt(2)],
                  [0.5, 0.5, -0.5 * math.sqrt(2)],
                  [0.5 * math.sqrt(2), -0.5 * math.sqrt(2), 0.0]])


@pytest.mark.parametrize("tau", [0.23 + 0.9j, -0.37 + 1.13j])
def test_evaluate_U_inversion_modularity(tau):
    for j in range(3):
        lhs = maass.evaluate_U(j, -1 / tau)
        rhs = sum(PSI_S[j][l] * maass.evaluate_U(l, tau) for l in range(3))
        assert abs(lhs - rhs) < 1e-8


def test_evaluate_U_translation_phase():
    tau = 0.3 + 0.8j
    for j in range(3):
        lhs = maass.evaluate_U(j, tau + 1)
        rhs = cmath.exp(2j * math.pi * float(BETA[j])) * maass.evaluate_U(j, tau)
        assert abs(lhs - rhs) < 1e-12


def test_evaluate_U_real_on_imaginary_axis():
    for j in range(3):
        v1 = maass.evaluate_U(j, 2j)
        v2 = maass.evaluate_U(j, 2j, n_cut=maass.default_cutoff(2.0) + 7)
        assert abs(v1.imag) < 1e-10
        assert abs(v1 - v2) < 1e-12  # two truncations agree


def test_evaluate_U_warns_on_hopeless_cutoff():
    with pytest.warns(UserWarning):
        maass.evaluate_U(0, 0.5j, n_cut=3)


def test_evaluate_U_rejects_lower_half_plane():
    with pytest.raises(ValidationError):
        maass.evaluate_U(0, 1 - 1j)


def test_coefficient_csv_schema(tmp_path):
    path = tmp_path / "d.csv"
    maass.write_coefficient_csv(path, 0, 3)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "j,n_numerator,n_denominator,value"
    assert "0,1,48,-1" in lines[1:]
