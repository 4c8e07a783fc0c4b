"""Exact and asymptotic coefficients of the false-indefinite theta functions
attached to partitions with parts separated by parity.

The package computes the integer sequences (partition counts, their
theta-quotient coefficients alpha_j) exactly, the Fourier coefficients of the
associated Maass-form components by shifted-lattice counting, every multiplier
system entering the modular transformation, the arc integral kernel and its
Taylor table, and the Circle-Method main sum with its leading exponential
expansion.  Every computed quantity has an independent exact or numeric
cross-route exercised by the test suite and by ``falsetheta verify``.
"""

from .errors import IdentityError, ToleranceError, ValidationError
from .quadform import BETA, DELTA, SHIFT_FAMILIES, ShiftFamily, ShiftVector
from .qseries import (
    QExpansion,
    alpha,
    decomposition_check,
    eta,
    partition_numbers,
    pochhammer,
    podeu,
    r_odd_distinct,
    sigma_hypergeometric,
    sigma_star,
    sigma_theta,
    u_series,
)
from .maass import (
    LATTICE_DENSITY,
    MaassCoefficient,
    d_coefficient,
    density_constant,
    evaluate_U,
    partial_sum_density,
)
from .modular import (
    ModularMatrix,
    ModularTriple,
    MultiplierMatrix,
    circle_multiplier,
    dedekind_sum,
    eta_multiplier,
    gauss_multiplier,
    psi_vector,
)
from .bernoulli import GaussianDerivative, PeriodicBernoulli
from .kernel import (
    KernelTaylorTable,
    aggregated_taylor_exact,
    phi_eval,
    phi_star,
    phi_taylor,
    symmetric_moment,
)
from .asymptotics import (
    AsymptoticReport,
    LeadingExpansion,
    bessel_I_half,
    bessel_I_threehalves,
    corollary_check,
    leading_expansion,
    radial_limit_diagnostic,
    rademacher_p,
    theorem_main_sum,
)

__version__ = "0.1.0"
