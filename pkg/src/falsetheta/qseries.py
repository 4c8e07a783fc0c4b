"""Exact formal q-series and the generating functions of the parity-separated
partition counts.

Series live on the exponent grid ``offset + Z`` with ``48 * offset`` an
integer; coefficients are exact (Python ints, Fractions where a formula
introduces halves).  Reading a coefficient at or beyond the truncation order
raises, it never silently returns 0.

The integer sequences produced here (p, r_o, p_od^eu, alpha_j) are the ground
truth the asymptotic machinery is tested against.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import IdentityError, ValidationError
from .quadform import BETA, DELTA, SHIFT_FAMILIES, coefficient_table

__all__ = [
    "QExpansion",
    "pochhammer",
    "eta",
    "partition_numbers",
    "sigma_hypergeometric",
    "sigma_theta",
    "sigma_star",
    "u_series",
    "alpha",
    "podeu",
    "r_odd_distinct",
    "decomposition_check",
]

log = logging.getLogger(__name__)


def _require_order(order):
    if not isinstance(order, int) or order < 1:
        raise ValidationError(f"truncation order must be a positive integer, got {order!r}")


@dataclass(frozen=True)
class QExpansion:
    """Truncated series sum_i coeffs[i] * q^(offset + i).

    ``order`` is the truncation order: coefficients of exponents
    >= offset + order are unknown.  Instances are immutable.
    """

    offset: Fraction
    coeffs: tuple
    order: int

    def __post_init__(self):
        object.__setattr__(self, "offset", Fraction(self.offset))
        if 48 % self.offset.denominator:
            raise ValidationError(f"offset {self.offset} not on the 1/48 grid")
        if len(self.coeffs) > self.order:
            raise ValidationError("more coefficients than the truncation order allows")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    # -- access ------------------------------------------------------------

    def __getitem__(self, i: int):
        """Coefficient at exponent offset + i (0 for i < 0)."""
        if i >= self.order:
            raise ValidationError(
                f"coefficient at index {i} is beyond truncation order {self.order}")
        if i < 0 or i >= len(self.coeffs):
            return 0
        return self.coeffs[i]

    def coefficient(self, exponent):
        """Coefficient at a rational exponent; off-grid exponents are exact 0."""
        e = Fraction(exponent) - self.offset
        if e.denominator != 1:
            return 0
        return self[int(e)]

    def coefficients(self, count=None):
        n = self.order if count is None else count
        return [self[i] for i in range(n)]

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self):
        return QExpansion(self.offset, tuple(-c for c in self.coeffs), self.order)

    def scaled(self, factor):
        return QExpansion(self.offset, tuple(factor * c for c in self.coeffs), self.order)

    def shifted(self, delta):
        """Multiply by q^delta."""
        return QExpansion(self.offset + Fraction(delta), self.coeffs, self.order)

    def __add__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        lo = min(self.offset, other.offset)
        da, db = self.offset - lo, other.offset - lo
        if da.denominator != 1 or db.denominator != 1:
            raise ValidationError(
                f"offsets {self.offset} and {other.offset} differ by a non-integer")
        da, db = int(da), int(db)
        order = min(self.order + da, other.order + db)
        out = [0] * order
        for i, c in enumerate(self.coeffs):
            if i + da < order:
                out[i + da] = c
        for i, c in enumerate(other.coeffs):
            if i + db < order:
                out[i + db] += c
        return QExpansion(lo, out, order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        order = min(self.order, other.order)
        out = [0] * order
        for i, a in enumerate(self.coeffs):
            if a == 0 or i >= order:
                continue
            top = min(len(other.coeffs), order - i)
            for k in range(top):
                b = other.coeffs[k]
                if b:
                    out[i + k] += a * b
        return QExpansion(self.offset + other.offset, out, order)

    def inverse(self):
        """Multiplicative inverse; requires a unit leading coefficient."""
        if not self.coeffs or self.coeffs[0] == 0:
            raise ValidationError("cannot invert a series with vanishing leading term")
        c0 = self.coeffs[0]
        inv0 = Fraction(1, 1) / c0 if c0 not in (1, -1) else c0
        out = [inv0] + [0] * (self.order - 1)
        for n in range(1, self.order):
            acc = 0
            top = min(n, len(self.coeffs) - 1)
            for k in range(1, top + 1):
                if self.coeffs[k]:
                    acc += self.coeffs[k] * out[n - k]
            out[n] = -acc * inv0 if c0 != 1 else -acc
        return QExpansion(-self.offset, out, self.order)

    # -- finalization ----------------------------------------------------------

    def integer_coefficients(self):
        """Assert exactness (denominator 1) and return plain ints."""
        out = []
        for i, c in enumerate(self.coeffs):
            f = Fraction(c)
            if f.denominator != 1:
                raise IdentityError(f"coefficient {c} at index {i} is not an integer")
            out.append(int(f))
        out.extend(0 for _ in range(self.order - len(out)))
        return out

    def to_json(self) -> str:
        return json.dumps({
            "offset": f"{self.offset.numerator}/{self.offset.denominator}",
            "coeffs": [str(c) for c in self.coefficients()],
            "order": self.order,
        })


def _one(order):
    return QExpansion(Fraction(0), (1,), order)


def pochhammer(a_sign: int, step: int, order: int) -> QExpansion:
    """Truncated infinite product prod_{n>=1} (1 - a_sign^n q^(step n)).

    a_sign=+1, step=1 is (q;q)_inf; a_sign=-1, step=1 is (-q;-q)_inf;
    a_sign=+1, step=2 is (q^2;q^2)_inf.
    """
    if a_sign not in (1, -1):
        raise ValidationError(f"a_sign must be +-1, got {a_sign!r}")
    if not isinstance(step, int) or step < 1:
        raise ValidationError(f"step must be a positive integer, got {step!r}")
    _require_order(order)
    coeffs = [0] * order
    coeffs[0] = 1
    n = 1
    while step * n < order:
        e = step * n
        s = a_sign ** n
        # multiply in place by (1 - s q^e)
        for i in range(order - 1, e - 1, -1):
            coeffs[i] -= s * coeffs[i - e]
        n += 1
    return QExpansion(Fraction(0), coeffs, order)


def _divide_geometric(coeffs, e, sign):
    """In place division by (1 + sign * q^e): c'_i = c_i - sign * c'_{i-e}."""
    for i in range(e, len(coeffs)):
        coeffs[i] -= sign * coeffs[i - e]


def partition_numbers(n_max: int):
    """p(0..n_max) by the pentagonal-number recurrence, exact."""
    if n_max < 0:
        raise ValidationError("n_max must be >= 0")
    p = [0] * (n_max + 1)
    p[0] = 1
    pent = _pentagonal_offsets(n_max)
    for n in range(1, n_max + 1):
        acc = 0
        for g, sign in pent:
            if g > n:
                break
            acc += sign * p[n - g]
        p[n] = acc
    return p


def _pentagonal_offsets(n_max):
    """[(g_m, sign)] for the generalized pentagonal numbers g_m <= n_max,
    with sign (-1)^(m+1) as they appear in 1/(q;q)_inf recurrences."""
    out = []
    m = 1
    while True:
        for g in (m * (3 * m - 1) // 2, m * (3 * m + 1) // 2):
            if g <= n_max:
                out.append((g, 1 if m % 2 else -1))
        if m * (3 * m - 1) // 2 > n_max:
            break
        m += 1
    out.sort()
    return out


def eta(order: int) -> QExpansion:
    """Dedekind eta: q^(1/24) * (q;q)_inf, truncated."""
    _require_order(order)
    return pochhammer(1, 1, order).shifted(Fraction(1, 24))


def sigma_hypergeometric(order: int) -> QExpansion:
    """sum_{n>=0} q^(n(n+1)/2) / (-q;q)_n, the q-hypergeometric route."""
    _require_order(order)
    total = [0] * order
    inv = [0] * order  # running 1/(-q;q)_n
    inv[0] = 1
    n = 0
    while n * (n + 1) // 2 < order:
        if n > 0:
            _divide_geometric(inv, n, 1)
        shift = n * (n + 1) // 2
        for i in range(order - shift):
            if inv[i]:
                total[i + shift] += inv[i]
        n += 1
    return QExpansion(Fraction(0), total, order)


def sigma_theta(order: int) -> QExpansion:
    """The same series as a false-indefinite theta sum:
    sum_{n>=0, |j|<=n} (-1)^(n+j) q^(n(3n+1)/2 - j^2) (1 - q^(2n+1))."""
    _require_order(order)
    total = [0] * order
    n = 0
    while n * (n + 1) // 2 < order:  # min exponent over |j|<=n is n(n+1)/2
        base = n * (3 * n + 1) // 2
        for j in range(-n, n + 1):
            e = base - j * j
            s = -1 if (n + j) % 2 else 1
            if e < order:
                total[e] += s
            if e + 2 * n + 1 < order:
                total[e + 2 * n + 1] -= s
        n += 1
    return QExpansion(Fraction(0), total, order)


def sigma_star(order: int) -> QExpansion:
    """The companion series 2 sum_{n>=0} (-1)^n q^(n^2) / (q;q^2)_n."""
    _require_order(order)
    total = [0] * order
    inv = [0] * order  # running 1/(q;q^2)_n
    inv[0] = 1
    n = 0
    while n * n < order:
        if n > 0:
            _divide_geometric(inv, 2 * n - 1, -1)
        shift = n * n
        s = -1 if n % 2 else 1
        for i in range(order - shift):
            if inv[i]:
                total[i + shift] += 2 * s * inv[i]
        n += 1
    return QExpansion(Fraction(0), total, order)


def _u_from_sigma(j, order):
    """Components 0 and 1 from the parity split of sigma(q^(1/2))."""
    sig = sigma_theta(2 * order + 1)
    if j == 0:
        coeffs = tuple(-sig[2 * m] for m in range(order))
    else:
        coeffs = tuple(sig[2 * m + 1] for m in range(order))
    return QExpansion(BETA[j], coeffs, order)


def _u_from_lattice(j, order):
    """Any component from the cone-weighted shifted-lattice sum."""
    idx_min, quarters = coefficient_table(j, order + 1)
    coeffs = []
    for m in range(order):
        q = int(quarters[m - idx_min])
        if q % 4:
            raise IdentityError(f"u_{j} lattice coefficient at index {m} is not an integer")
        coeffs.append(q // 4)
    return QExpansion(BETA[j], coeffs, order)


def u_series(j: int, order: int) -> QExpansion:
    """The j-th false-indefinite theta component as a q-series.

    For j in {0,1} both available routes (parity split of the sigma series,
    and the shifted-lattice sum) are computed and must agree exactly; j=2
    only has the lattice route.
    """
    if j not in (0, 1, 2):
        raise ValidationError(f"j must be 0, 1 or 2, got {j!r}")
    _require_order(order)
    lattice = _u_from_lattice(j, order)
    if j in (0, 1):
        split = _u_from_sigma(j, order)
        if split.coeffs != lattice.coeffs:
            bad = next(i for i in range(order) if split[i] != lattice[i])
            raise IdentityError(
                f"u_{j} route disagreement at index {bad}: "
                f"sigma split {split[bad]} vs lattice {lattice[bad]}")
    _log_growth(j, lattice)
    return lattice


def _log_growth(j, series):
    # empirical constant for the |coefficient| <= C sqrt(n) bound
    worst = max(
        (abs(c) / math.sqrt(m + float(BETA[j])) for m, c in enumerate(series.coeffs) if c),
        default=0.0,
    )
    log.info("u_%d growth constant over %d terms: max |c_n|/sqrt(n) = %.3f",
             j, series.order, worst)


def alpha(j: int, n_max: int):
    """alpha_j(0..n_max): coefficients of u_j / eta, exact integers.

    Division by eta uses the sparse pentagonal recurrence
    (u = alpha * eta termwise), which is exact and O(n^{3/2}).
    """
    if j not in (0, 1, 2):
        raise ValidationError(f"j must be 0, 1 or 2, got {j!r}")
    if n_max < 0:
        raise ValidationError("n_max must be >= 0")
    u = u_series(j, n_max + 1).integer_coefficients()
    pent = _pentagonal_offsets(n_max)
    out = [0] * (n_max + 1)
    for n in range(n_max + 1):
        acc = u[n]
        for g, sign in pent:
            if g > n:
                break
            acc += sign * out[n - g]
        out[n] = acc
    return out


def alpha_series(j: int, n_max: int) -> QExpansion:
    """alpha coefficients packaged on their exponent grid Z + DELTA[j]."""
    return QExpansion(DELTA[j], alpha(j, n_max), n_max + 1)


def r_odd_distinct(n_max: int):
    """r_o(0..n_max): partitions into distinct odd parts, prod (1+q^(2n+1))."""
    if n_max < 0:
        raise ValidationError("n_max must be >= 0")
    order = n_max + 1
    coeffs = [0] * order
    coeffs[0] = 1
    n = 0
    while 2 * n + 1 < order:
        e = 2 * n + 1
        for i in range(order - 1, e - 1, -1):
            coeffs[i] += coeffs[i - e]
        n += 1
    return coeffs


def podeu(n_max: int):
    """p_od^eu(0..n_max): partitions whose even parts exceed their odd parts,
    odd parts distinct, even parts unrestricted.

    Built from the product form of the generating function,
    (1 - sigma(-q)/2 + (-q;-q)_inf/2) / (q^2;q^2)_inf.
    """
    if n_max < 0:
        raise ValidationError("n_max must be >= 0")
    order = n_max + 1
    sig = sigma_theta(order)
    mqmq = pochhammer(-1, 1, order)
    numer = [Fraction(0)] * order
    numer[0] = Fraction(1)
    for i in range(order):
        s = sig[i] if i % 2 == 0 else -sig[i]  # sigma(-q)
        numer[i] += Fraction(mqmq[i] - s, 2)
    # divide by (q^2;q^2)_inf: pentagonal recurrence in q^2
    pent = _pentagonal_offsets(n_max // 2)
    out = [Fraction(0)] * order
    for n in range(order):
        acc = numer[n]
        for g, sign in pent:
            if 2 * g > n:
                break
            acc += sign * out[n - 2 * g]
        out[n] = acc
    result = []
    for i, c in enumerate(out):
        if c.denominator != 1:
            raise IdentityError(f"p_od^eu({i}) came out non-integral: {c}")
        result.append(int(c))
    return result


def decomposition_check(n_max: int) -> bool:
    """Exact identity tying everything together:
    2 p_od^eu(2n)   = 2 p(n) + r_o(2n)   + alpha_0(n)
    2 p_od^eu(2n+1) =          r_o(2n+1) + alpha_1(n)   for 0 <= n <= n_max.
    Raises IdentityError on any failure."""
    if n_max < 0:
        raise ValidationError("n_max must be >= 0")
    f = podeu(2 * n_max + 1)
    p = partition_numbers(n_max)
    ro = r_odd_distinct(2 * n_max + 1)
    a0 = alpha(0, n_max)
    a1 = alpha(1, n_max)
    for n in range(n_max + 1):
        if 2 * f[2 * n] != 2 * p[n] + ro[2 * n] + a0[n]:
            raise IdentityError(f"even decomposition fails at n={n}")
        if 2 * f[2 * n + 1] != ro[2 * n + 1] + a1[n]:
            raise IdentityError(f"odd decomposition fails at n={n}")
    return True
