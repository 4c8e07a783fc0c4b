"""Multiplier systems: Gauss sums, the 3x3 vector multiplier, Dedekind sums,
the eta multiplier, and the combined arc multiplier."""

import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from falsetheta import modular as md
from falsetheta import qseries
from falsetheta.errors import ValidationError
from falsetheta.quadform import SHIFT_FAMILIES, ShiftVector


def all_classes():
    return [ShiftVector(Fraction(i, 24), Fraction(j, 4))
            for i in range(24) for j in range(4)]


def random_word(rng, length=6):
    m = md.T_MATRIX
    for _ in range(length):
        m = m @ (md.S_MATRIX if rng.random() < 0.5 else md.T_MATRIX)
    return m


# -- matrices ---------------------------------------------------------------------

def test_determinant_validation():
    with pytest.raises(ValidationError):
        md.ModularMatrix(1, 1, 1, 1)


def test_triple_construction():
    tr = md.ModularTriple.from_arc(0, 1)
    assert (tr.h_prime, tr.matrix.entries) == (0, (0, -1, 1, 0))
    tr = md.ModularTriple.from_arc(1, 2)
    assert tr.h_prime == 1 and tr.matrix.entries == (1, -1, 2, -1)
    tr = md.ModularTriple.from_arc(3, 7)
    assert (3 * tr.h_prime) % 7 == 6 and 0 <= tr.h_prime < 7
    with pytest.raises(ValidationError):
        md.ModularTriple.from_arc(2, 4)


# -- Gauss sums ---------------------------------------------------------------------

def test_translation_phase_on_a_shift():
    mu = ShiftVector(Fraction(7, 24), Fraction(0))
    got = md.gauss_multiplier(md.T_MATRIX, mu, mu)
    # quadratic value 49/48 gives the primitive 48th root of unity
    assert abs(got - cmath.exp(2j * cmath.pi / 48)) < 1e-15


def test_inversion_multiplier_closed_form():
    for mu in SHIFT_FAMILIES[0].plus[:2] + SHIFT_FAMILIES[2].minus[:2]:
        for nu in SHIFT_FAMILIES[1].plus[:2]:
            got = md.gauss_multiplier(md.S_MATRIX, mu, nu)
            expected = cmath.exp(-2j * cmath.pi * float(
                24 * mu.mu1 * nu.mu1 - 4 * mu.mu2 * nu.mu2)) / (4 * math.sqrt(6))
            assert abs(got - expected) < 1e-15


@pytest.mark.parametrize("matrix", [
    md.S_MATRIX, md.T_MATRIX, md.ModularMatrix(2, 1, 1, 1),
    md.ModularMatrix(5, 2, 12, 5), md.ModularMatrix(1, 0, 4, 1),
])
def test_gauss_matrix_unitary_on_all_classes(matrix):
    classes = all_classes()
    G = np.array([[md.gauss_multiplier(matrix, mu, nu) for nu in classes] for mu in classes])
    assert np.max(np.abs(G @ G.conj().T - np.eye(96))) < 1e-12


def test_gauss_matrix_unitary_random_words():
    rng = random.Random(99)
    classes = all_classes()
    for _ in range(3):
        matrix = random_word(rng, 5)
        G = np.array([[md.gauss_multiplier(matrix, mu, nu) for nu in classes] for mu in classes])
        assert np.max(np.abs(G @ G.conj().T - np.eye(96))) < 1e-12


# -- vector multiplier ------------------------------------------------------------------

def test_psi_T():
    z48 = cmath.exp(2j * cmath.pi / 48)
    expected = np.diag([z48, z48 ** 25, z48 ** 46])
    got = md.psi_vector(md.T_MATRIX)
    assert np.max(np.abs(got.entries - expected)) < 1e-12


def test_psi_S_and_involution():
    r2 = math.sqrt(2)
    expected = 0.5 * np.array([[1, 1, r2], [1, 1, -r2], [r2, -r2, 0]])
    got = md.psi_vector(md.S_MATRIX)
    assert np.max(np.abs(got.entries - expected)) < 1e-12
    assert np.max(np.abs((got @ got).entries - np.eye(3))) < 1e-12
    assert got.unitarity_defect() < 1e-12


def test_psi_diagonal_phase_orders():
    got = md.psi_vector(md.T_MATRIX)
    for idx, order in ((0, 48), (1, 48), (2, 24)):
        assert abs(got[idx, idx] ** order - 1) < 1e-12


def test_cocycle_random_pairs():
    rng = random.Random(12345)
    worst = 0.0
    for _ in range(20):
        m1, m2 = random_word(rng), random_word(rng)
        lhs = md.psi_vector(m1 @ m2)
        rhs = md.psi_vector(m1) @ md.psi_vector(m2)
        worst = max(worst, float(np.max(np.abs(lhs.entries - rhs.entries))))
    assert worst < 1e-10, worst


def test_psi_unitarity_random():
    rng = random.Random(5150)
    for _ in range(5):
        assert md.psi_vector(random_word(rng)).unitarity_defect() < 1e-12


# -- Dedekind sums -----------------------------------------------------------------------

def test_dedekind_base_cases():
    assert md.dedekind_sum(0, 1) == 0
    assert md.dedekind_sum(1, 3) == Fraction(1, 18)


def test_dedekind_reciprocity():
    rng = random.Random(7)
    done = 0
    while done < 12:
        k = rng.randrange(2, 60)
        h = rng.randrange(1, k)
        if math.gcd(h, k) != 1:
            continue
        lhs = md.dedekind_sum(h, k) + md.dedekind_sum(k, h)
        rhs = Fraction(-1, 4) + (Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)) / 12
        assert lhs == rhs
        done += 1


# -- eta multiplier ------------------------------------------------------------------------

def eta_numeric(tau, order=200):
    series = qseries.eta(order)
    q = cmath.exp(2j * cmath.pi * tau)
    return sum(complex(c) * q ** (float(series.offset) + i)
               for i, c in enumerate(series.coeffs) if c)


def test_eta_multiplier_is_a_phase():
    rng = random.Random(31)
    for _ in range(10):
        m = random_word(rng)
        if m.c <= 0:
            continue
        assert abs(abs(md.eta_multiplier(m)) - 1) < 1e-14


def test_eta_multiplier_rejects_nonpositive_c():
    with pytest.raises(ValidationError):
        md.eta_multiplier(md.T_MATRIX)


def test_eta_inversion_against_series():
    tau = 1.3j
    lhs = eta_numeric(-1 / tau)
    rhs = cmath.sqrt(-1j * tau) * eta_numeric(tau)
    assert abs(lhs - rhs) < 1e-12
    assert abs(md.eta_multiplier(md.S_MATRIX) - cmath.exp(-1j * cmath.pi / 4)) < 1e-15


def test_eta_arc_transformation():
    tr = md.ModularTriple.from_arc(1, 2)
    Z = 0.7
    lhs = eta_numeric(tr.h / tr.k + 1j * Z / tr.k ** 2, 400)
    rhs = md.eta_multiplier(tr.matrix) * cmath.sqrt(1j * tr.k / Z) \
        * eta_numeric(tr.h_prime / tr.k + 1j / Z, 400)
    assert abs(lhs - rhs) < 1e-10


# -- arc multiplier -------------------------------------------------------------------------

def test_arc_multiplier_at_0_1_equals_inversion_multiplier_exactly():
    arc = md.circle_multiplier(md.ModularTriple.from_arc(0, 1))
    psi_s = md.psi_vector(md.S_MATRIX)
    assert np.array_equal(arc.entries, psi_s.entries)


def test_arc_multiplier_1_2_rows_unitary():
    arc = md.circle_multiplier(md.ModularTriple.from_arc(1, 2))
    assert np.all(np.isfinite(arc.entries))
    assert arc.unitarity_defect() < 1e-12
    assert np.max(np.abs(arc.entries)) <= 1 + 1e-12


@pytest.mark.parametrize("k", range(1, 13))
def test_arc_multiplier_determinant_modulus(k):
    for h in range(k):
        if math.gcd(h, k) != 1 and k > 1:
            continue
        triple = md.ModularTriple.from_arc(h, k)
        arc = md.circle_multiplier(triple, check_reps=False)
        psi = md.psi_vector(triple.matrix, check_reps=False)
        assert abs(abs(np.linalg.det(arc.entries)) - abs(np.linalg.det(psi.entries))) < 1e-10


def test_mp_multiplier_agrees_with_float():
    import mpmath as mp

    with mp.workdps(40):
        tr = md.ModularTriple.from_arc(2, 5)
        a = md.circle_multiplier(tr).entries
        b = md.circle_multiplier_mp(tr)
        worst = max(abs(complex(b[j][l]) - a[j, l]) for j in range(3) for l in range(3))
    assert worst < 1e-14
