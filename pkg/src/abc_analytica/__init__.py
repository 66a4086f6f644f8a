"""Zero counting for analytic functions: Mason-type inequalities on disks.

The exact layer (:mod:`.exact`) handles Gaussian-rational polynomials;
:mod:`.numeric` and :mod:`.blaschke` supply quadrature, root finding and
finite Blaschke products; :mod:`.functionals` and :mod:`.verifiers` put
them together into checkable reports.
"""

from .blaschke import (
    BlaschkeProduct,
    blaschke_counts,
    blaschke_from_zeros,
    blaschke_lcm,
    blaschke_radical,
    d_alpha_norm_sq,
    dirichlet_norm_sq,
    taylor_coefficients,
)
from .domain import UNIT_DISK, Domain
from .errors import (
    AbcAnalyticaError,
    ConvergenceError,
    HypothesisViolation,
    InconsistencyError,
    InputError,
    ZeroNearBoundaryError,
)
from .exact import GaussianRational, Polynomial, mason_check, n_theorem_check, poly_gcd, wronskian_poly
from .functionals import FunctionalValues, compute_functionals
from .numeric import DEFAULT_SPEC, PowerSeries, QuadratureSpec
from .verifiers import (
    AnalyticSystem,
    VerificationReport,
    build_system,
    check_divisibility,
    inner_system,
    limit_demo,
    run_example,
    verify_carleson_formula,
    verify_dalpha_comparability,
    verify_prop3,
    verify_theorem1,
    verify_theorem2,
    verify_theorem4,
    verify_vs_inequality,
)

__version__ = "0.1.0"

__all__ = [
    "AbcAnalyticaError",
    "AnalyticSystem",
    "BlaschkeProduct",
    "ConvergenceError",
    "DEFAULT_SPEC",
    "Domain",
    "FunctionalValues",
    "GaussianRational",
    "HypothesisViolation",
    "InconsistencyError",
    "InputError",
    "Polynomial",
    "PowerSeries",
    "QuadratureSpec",
    "UNIT_DISK",
    "VerificationReport",
    "ZeroNearBoundaryError",
    "blaschke_counts",
    "blaschke_from_zeros",
    "blaschke_lcm",
    "blaschke_radical",
    "build_system",
    "check_divisibility",
    "compute_functionals",
    "d_alpha_norm_sq",
    "dirichlet_norm_sq",
    "inner_system",
    "limit_demo",
    "mason_check",
    "n_theorem_check",
    "poly_gcd",
    "run_example",
    "taylor_coefficients",
    "verify_carleson_formula",
    "verify_dalpha_comparability",
    "verify_prop3",
    "verify_theorem1",
    "verify_theorem2",
    "verify_theorem4",
    "verify_vs_inequality",
    "wronskian_poly",
]
