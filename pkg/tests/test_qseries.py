"""Exact series engine and generating functions.

Brute-force oracles live in this file and share no code with the library
paths they check (direct polynomial products, exhaustive partition
enumeration).
"""

import json
from fractions import Fraction

import pytest

from falsetheta import qseries
from falsetheta.errors import IdentityError, ValidationError


# -- independent oracles -----------------------------------------------------

def poly_mul(a, b, order):
    out = [0] * order
    for i, x in enumerate(a[:order]):
        if x:
            for k, y in enumerate(b[: order - i]):
                out[i + k] += x * y
    return out


def product_oracle(factors, order):
    """Expand prod (1 + c q^e) term by term."""
    out = [0] * order
    out[0] = 1
    for c, e in factors:
        f = [0] * order
        f[0] = 1
        if e < order:
            f[e] = c
        out = poly_mul(out, f, order)
    return out


def partitions_into(n, parts):
    """Count partitions of n with parts from the (sorted) list, repetition ok."""
    counts = [1] + [0] * n
    for p in parts:
        for v in range(p, n + 1):
            counts[v] += counts[v - p]
    return counts


def podeu_oracle(n):
    """Exhaustive: choose distinct odd parts, then even parts all larger."""
    total = 0
    odd_sets = [(0, 0)]  # (sum, largest)
    def extend(s, largest):
        for p in range(largest + 2, n - s + 1, 2):
            yield s + p, p
            yield from extend(s + p, p)
    odd_sets += list(extend(0, -1))
    for s, largest in odd_sets:
        rest = n - s
        evens = [e for e in range(2, rest + 1, 2) if e > largest]
        total += partitions_into(rest, evens)[rest]
    return total


def r_odd_oracle(n):
    total = 0
    def rec(remaining, max_odd):
        nonlocal total
        if remaining == 0:
            total += 1
            return
        p = min(max_odd, remaining)
        if p % 2 == 0:
            p -= 1
        while p >= 1:
            rec(remaining - p, p - 2)
            p -= 2
    rec(n, n + 1)
    return total


# -- pochhammer ---------------------------------------------------------------

def test_pochhammer_qq_expansion():
    got = qseries.pochhammer(1, 1, 7)
    oracle = product_oracle([(-1, e) for e in range(1, 7)], 7)
    assert got.coefficients() == oracle == [1, -1, -1, 0, 0, 1, 0]


def test_pochhammer_minus_q_leading():
    assert qseries.pochhammer(-1, 1, 10)[0] == 1


def test_pochhammer_rejects_bad_order():
    with pytest.raises(ValidationError):
        qseries.pochhammer(1, 1, 0)
    with pytest.raises(ValidationError):
        qseries.pochhammer(2, 1, 5)


def test_inverse_even_pochhammer_counts_partitions(partition_table):
    inv = qseries.pochhammer(1, 2, 41).inverse()
    for k in range(20):
        assert inv.coefficient(2 * k) == partition_table[k]
        assert inv.coefficient(2 * k + 1) == 0


# -- sigma --------------------------------------------------------------------

def test_sigma_constant_term():
    assert qseries.sigma_hypergeometric(5)[0] == 1


def test_sigma_routes_agree_and_first_values():
    hyper = qseries.sigma_hypergeometric(200)
    theta = qseries.sigma_theta(200)
    assert hyper.coeffs == theta.coeffs
    assert hyper.coefficients(12) == [1, 1, -1, 2, -2, 1, 0, 1, -2, 0, 2, 0]


def test_sigma_q1_coefficient():
    # only (n, j) = (1, +-1) contribute exponent 1
    assert qseries.sigma_theta(3)[1] == 1


def test_sigma_star_definitional_expansion():
    # brute force 2 sum (-1)^n q^{n^2} / (q; q^2)_n with direct inversion
    order = 16
    total = [0] * order
    for n in range(4):
        den = [Fraction(x) for x in product_oracle([(-1, 2 * j + 1) for j in range(n)], order)]
        inv = [Fraction(0)] * order
        inv[0] = 1 / den[0]
        for m in range(1, order):
            inv[m] = -sum(den[k] * inv[m - k] for k in range(1, m + 1)) / den[0]
        s = 2 * (-1) ** n
        for i in range(order - n * n):
            total[i + n * n] += s * inv[i]
    got = qseries.sigma_star(order)
    assert [Fraction(c) for c in got.coefficients()] == total


# -- u components -------------------------------------------------------------

def test_u0_leading_coefficient():
    assert qseries.u_series(0, 3)[0] == -1


def test_u_offsets():
    assert qseries.u_series(0, 2).offset == Fraction(1, 48)
    assert qseries.u_series(1, 2).offset == Fraction(25, 48)
    assert qseries.u_series(2, 2).offset == Fraction(23, 24)


def test_u2_frozen_values():
    # derived from the lattice route (no closed display exists for j=2)
    assert qseries.u_series(2, 12).coefficients() == [2, 2, 2, 0, 0, 0, -2, -2, 0, -2, -2, 0]


def test_alpha_grid_after_eta_division():
    assert qseries.alpha_series(1, 5).offset == Fraction(23, 48)
    assert qseries.alpha_series(0, 5).offset == Fraction(-1, 48)


# -- alpha / podeu / r_o --------------------------------------------------------

def test_alpha_tables_match_displayed_expansions():
    assert qseries.alpha(0, 11) == [-1, 0, 1, 1, 4, 4, 9, 11, 19, 23, 37, 44]
    assert qseries.alpha(1, 10) == [1, 3, 5, 9, 14, 22, 31, 48, 65, 92, 126]


def test_podeu_first_ten():
    assert qseries.podeu(9) == [1, 1, 1, 2, 3, 3, 4, 5, 8, 8]
    assert qseries.podeu(0) == [1]


def test_podeu_against_exhaustive_enumeration():
    table = qseries.podeu(40)
    for n in range(41):
        assert table[n] == podeu_oracle(n), n


def test_r_odd_distinct_against_enumeration():
    table = qseries.r_odd_distinct(40)
    assert table[0] == 1
    for n in range(41):
        assert table[n] == r_odd_oracle(n), n


def test_decomposition_holds():
    assert qseries.decomposition_check(500)


# -- series mechanics ------------------------------------------------------------

def test_eta_inverse_round_trip():
    e = qseries.eta(60)
    one = e * e.inverse()
    assert one.coefficient(0) == 1
    assert all(one[i] == 0 for i in range(1, 60))


def test_truncation_read_is_an_error():
    s = qseries.sigma_theta(10)
    with pytest.raises(ValidationError):
        s[10]
    assert s[9] is not None
    assert s.coefficient(Fraction(1, 2)) == 0  # off-grid exponents are exact zeros


def test_offset_mismatch_rejected():
    a = qseries.u_series(0, 5)
    b = qseries.u_series(1, 5)
    with pytest.raises(ValidationError):
        _ = a + b


def test_integer_finalization_rejects_fractions():
    s = qseries.QExpansion(Fraction(0), (Fraction(1, 2),), 3)
    with pytest.raises(IdentityError):
        s.integer_coefficients()


def test_json_export_schema():
    payload = json.loads(qseries.u_series(0, 4).to_json())
    assert payload == {"offset": "1/48", "coeffs": ["-1", "1", "2", "0"], "order": 4}


def test_coefficient_growth_bound():
    series = qseries.u_series(1, 400)
    worst = max(abs(c) / (m + 25 / 48) ** 0.5 for m, c in enumerate(series.coeffs) if c)
    assert worst < 10.0, f"growth constant {worst}"


def test_multiplication_truncation_propagates():
    a = qseries.sigma_theta(10)
    b = qseries.sigma_theta(20)
    assert (a * b).order == 10
