"""Systems ``f_0..f_{n+1}`` and the checks run on them.

A system is built once (zeros, Blaschke products, Wronskian) and then
handed to the individual verifiers, each of which returns a
:class:`VerificationReport`.  Two input paths exist:

* polynomial path: exact Gaussian-rational polynomials.  The Wronskian,
  its derivative and the divisibility identity are exact; zeros come from
  the exact squarefree decomposition followed by Aberth on each factor.
* series path: truncated power series with complex float coefficients.
  Zero counts are cross-checked against the winding number and against
  the half-length truncation.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np
from scipy import special

from .blaschke import (
    BlaschkeProduct,
    blaschke_from_zeros,
    blaschke_lcm,
    blaschke_product,
    blaschke_radical,
    boundary_derivative_modulus,
    d_alpha_norm_sq,
    kernel_diagonal_coefficients,
    multiply_series,
    taylor_coefficients,
)
from .domain import UNIT_DISK, Domain, Location, contains
from .errors import HypothesisViolation, InconsistencyError, InputError, ZeroNearBoundaryError
from .exact import (
    GaussianRational,
    Polynomial,
    det_cofactor,
    poly_lcm,
    squarefree_decomposition,
    squarefree_part,
    wronskian_derivative_poly,
    wronskian_matrix,
    wronskian_poly,
)
from .functionals import (
    FunctionalValues,
    check_boundary_invertibility,
    compute_functionals,
    kappa_functional,
    lambda_alpha_functional,
    mu_functional,
)
from .numeric import (
    DEFAULT_SPEC,
    PowerSeries,
    QuadratureSpec,
    area_integral_disk,
    boundary_integral,
    cluster_roots,
    poly_roots,
    weighted_area_integral,
    winding_count,
)

__all__ = [
    "AnalyticSystem",
    "VerificationReport",
    "Divisibility",
    "LimitTable",
    "EQUALITY_RTOL",
    "InnerWronskian",
    "build_system",
    "inner_system",
    "check_divisibility",
    "verify_theorem1",
    "verify_theorem2",
    "verify_prop3",
    "verify_theorem4",
    "verify_carleson_formula",
    "verify_vs_inequality",
    "verify_dalpha_comparability",
    "r_alpha",
    "monomial_bracket",
    "limit_demo",
    "example_system",
    "run_example",
]

EQUALITY_RTOL = 1e-6
EQUALITY_RATIONALE = (
    "equality_tol = 1e-6 * (1 + |rhs|) sits well above the stacked quadrature error "
    "(about 1e-9 per functional) and well below any genuine integer-scale slack"
)
DIVISIBILITY_TOL = 1e-8
THEOREM4_TAIL = 1e-13
THEOREM4_MIN_ORDER = 256
THEOREM4_MAX_ORDER = 2**21


# ---------------------------------------------------------------------------
# reports


def _num(x):
    """JSON-friendly float: non-finite values become strings."""
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else str(x)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_num(obj.real), _num(obj.imag)]
    if isinstance(obj, (Fraction, GaussianRational, Polynomial)):
        return str(obj)
    if hasattr(obj, "to_json"):
        return _jsonable(obj.to_json())
    return str(obj)


@dataclass
class VerificationReport:
    """Outcome of one check.

    ``slack = rhs - lhs``; the checked statement is always ``lhs <= rhs``
    (the Vinogradov-Shirokov report orders its sides accordingly).
    """

    theorem: str
    status: str
    lhs: float | None = None
    rhs: float | None = None
    functionals: FunctionalValues | None = None
    counts: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    @property
    def slack(self) -> float | None:
        if self.lhs is None or self.rhs is None:
            return None
        return self.rhs - self.lhs

    @property
    def ok(self) -> bool:
        return self.status in ("holds", "equality")

    def to_dict(self) -> dict:
        return _jsonable(
            {
                "theorem": self.theorem,
                "status": self.status,
                "lhs": self.lhs,
                "rhs": self.rhs,
                "slack": self.slack,
                "functionals": self.functionals.to_json() if self.functionals else None,
                "counts": self.counts,
                "diagnostics": self.diagnostics,
            }
        )


def _classify(lhs: float, rhs: float, floor: float | None = None) -> str:
    slack = rhs - lhs
    etol = EQUALITY_RTOL * (1.0 + abs(rhs))
    if floor is not None and slack < -floor:
        return "fails"
    if abs(slack) <= etol:
        return "equality"
    return "holds" if slack > 0 else "fails"


# ---------------------------------------------------------------------------
# systems


@dataclass
class AnalyticSystem:
    """``f_0..f_{n+1}`` on ``domain`` with every derived object.

    ``fs`` includes ``f_{n+1}``, which is always recomputed as the sum of
    the others.  ``zero_sets[j]`` lists the ``(location, multiplicity)``
    zeros of ``f_j`` inside the domain.
    """

    domain: Domain
    fs: tuple
    path: str
    zero_sets: tuple
    Bs: tuple
    W: Any
    bigB: BlaschkeProduct
    calB: BlaschkeProduct
    diagnostics: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.fs) - 2

    @property
    def inputs(self) -> tuple:
        return self.fs[:-1]

    def summary(self) -> dict:
        out = {
            "path": self.path,
            "n": self.n,
            "domain": self.domain.to_json(),
            "zero_sets": [[{"z": [z.real, z.imag], "m": m} for z, m in zs] for zs in self.zero_sets],
            "N_bigB": self.bigB.N,
            "N_calB": self.calB.N,
        }
        if self.path == "polynomial":
            out["W"] = self.W.to_strings()
        return out


def _coerce(f):
    if isinstance(f, (Polynomial, PowerSeries)):
        return f
    if isinstance(f, str):
        return Polynomial.parse(f)
    if isinstance(f, (int, Fraction, GaussianRational)):
        return Polynomial.constant(f)
    raise InputError(f"unsupported function object {f!r}")


def _classify_zeros(j: int, points: Sequence[tuple[complex, int]], domain: Domain) -> list[tuple[complex, int]]:
    inside = []
    for z, m in points:
        loc = contains(domain, z)
        if loc is Location.BOUNDARY_BAND:
            raise ZeroNearBoundaryError(f"zero of f_{j} at {complex(z)!r} lies in the boundary guard band")
        if loc is Location.INSIDE:
            inside.append((complex(z), int(m)))
    return inside


def _polynomial_zeros(j: int, p: Polynomial, domain: Domain) -> list[tuple[complex, int]]:
    if p.is_zero():
        raise HypothesisViolation(f"f_{j} vanishes identically (infinitely many zeros)")
    points = []
    for factor, mult in squarefree_decomposition(p):
        for r in poly_roots(factor.to_complex()):
            points.append((complex(r), mult))
    return _classify_zeros(j, points, domain)


def _series_zero_count(f: PowerSeries, domain: Domain, spec: QuadratureSpec) -> tuple[list, int]:
    c = f.trimmed(0.0)
    if len(c) <= 1:
        return [], 0
    clusters = cluster_roots(poly_roots(c))
    return clusters, winding_count(f, domain, spec)


def _series_zeros(j: int, f: PowerSeries, domain: Domain, spec: QuadratureSpec) -> list[tuple[complex, int]]:
    if not np.any(f.coeffs):
        raise HypothesisViolation(f"f_{j} vanishes identically (infinitely many zeros)")
    try:
        clusters, wind = _series_zero_count(f, domain, spec)
    except ZeroNearBoundaryError as exc:
        raise ZeroNearBoundaryError(f"zero of f_{j} too close to the boundary") from exc
    inside = _classify_zeros(j, clusters, domain)
    count = sum(m for _, m in inside)
    if count != wind:
        raise HypothesisViolation(
            f"zero count of f_{j} from roots ({count}) disagrees with the winding number ({wind})"
        )
    # the zeros of a genuine finite-zero function do not move in or out of
    # the domain when the truncation is halved
    if f.order >= 8:
        try:
            half = winding_count(f.truncate(f.order // 2), domain, spec)
        except ZeroNearBoundaryError:
            half = None
        if half != wind:
            raise HypothesisViolation(
                f"zero count of f_{j} changes under truncation; finitely many zeros not confirmed"
            )
    return inside


def build_system(fs: Sequence, domain: Domain = UNIT_DISK, spec: QuadratureSpec = DEFAULT_SPEC) -> AnalyticSystem:
    """Assemble ``f_0..f_{n+1}``, their zeros, ``B_j``, ``W``, LCM and radical.

    ``fs`` holds ``f_0..f_n`` as :class:`Polynomial`, :class:`PowerSeries`
    or polynomial strings.  Any series input switches the whole system to
    the series path.
    """
    funcs = [_coerce(f) for f in fs]
    if len(funcs) < 2:
        raise InputError("need at least two functions f_0, f_1")
    n = len(funcs) - 1
    diagnostics: dict[str, Any] = {}

    if all(isinstance(f, Polynomial) for f in funcs):
        path = "polynomial"
        W = wronskian_poly(funcs)
        if W.is_zero():
            raise HypothesisViolation("functions are linearly dependent (W = 0)")
        total = sum(funcs[1:], funcs[0])
        full = funcs + [total]
        _polynomial_self_tests(funcs, total, W)
        diagnostics["self_tests"] = ["derivative_routes_agree", "column_replacement_invariant"]
        zero_sets = [_polynomial_zeros(j, f, domain) for j, f in enumerate(full)]
    else:
        path = "series"
        order = max(f.order if isinstance(f, PowerSeries) else f.degree for f in funcs)
        funcs = [
            PowerSeries(f.coeffs, order, f.tail_sq_bound)
            if isinstance(f, PowerSeries)
            else PowerSeries.from_polynomial(f, order)
            for f in funcs
        ]
        total = funcs[0]
        for f in funcs[1:]:
            total = total + f
        full = funcs + [total]
        W = det_cofactor(wronskian_matrix(funcs))
        scale = math.prod(float(np.max(np.abs(f.coeffs))) for f in funcs)
        if not np.max(np.abs(W.coeffs)) > 1e-12 * scale:
            raise HypothesisViolation("functions are linearly dependent (W = 0)")
        zero_sets = [_series_zeros(j, f, domain, spec) for j, f in enumerate(full)]
        diagnostics["warning"] = "smoothness hypotheses asserted by construction (truncated series)"

    Bs = tuple(blaschke_from_zeros(domain, zs) for zs in zero_sets)
    bigB = blaschke_lcm(Bs)
    calB = blaschke_radical(blaschke_product(Bs))
    return AnalyticSystem(
        domain=domain,
        fs=tuple(full),
        path=path,
        zero_sets=tuple(tuple(zs) for zs in zero_sets),
        Bs=Bs,
        W=W,
        bigB=bigB,
        calB=calB,
        diagnostics=diagnostics,
    )


def _polynomial_self_tests(funcs: list[Polynomial], total: Polynomial, W: Polynomial) -> None:
    if wronskian_derivative_poly(funcs) != W.derivative():
        raise InconsistencyError("last-row-bumped determinant disagrees with W'")
    for j in range(len(funcs)):
        swapped = funcs[:j] + [total] + funcs[j + 1:]
        if wronskian_poly(swapped) != W:
            raise InconsistencyError(f"replacing column {j} by f_(n+1) changed W")


class InnerWronskian:
    """``W = -c theta'``, the Wronskian of ``(theta, c)``.

    Evaluated in closed form and expanded from the Taylor series of
    ``theta``; no polynomial stands in for ``theta``, so zeros arbitrarily
    close to the circle are fine.
    """

    def __init__(self, theta: BlaschkeProduct, c: complex):
        self.theta = theta
        self.c = complex(c)

    def __call__(self, z):
        return -self.c * self.theta.derivative(z)

    def derivative(self, k: int = 1):
        raise InputError("W' is not available for inner-function systems")

    def taylor(self, M: int) -> PowerSeries:
        T = taylor_coefficients(self.theta, M + 1).coeffs
        return PowerSeries(-self.c * T[1:] * np.arange(1, M + 2), M)


def inner_system(theta: BlaschkeProduct, c: complex = 2.0) -> AnalyticSystem:
    """The ``n = 1`` system ``f_0 = theta``, ``f_1 = c`` with ``|c| > 1``.

    ``f_2 = theta + c`` has no zeros on the closed disk because
    ``|theta| <= 1 < |c|``, so ``bigB = theta`` and ``calB`` is its radical.
    Only Theorem 4 applies; the other verifiers need ``W'``.
    """
    if theta.domain != UNIT_DISK:
        raise InputError("inner systems live on the unit disk")
    if not abs(c) > 1:
        raise InputError("|c| must exceed 1 so that theta + c is zero-free")
    if theta.N == 0:
        raise HypothesisViolation("functions are linearly dependent (W = 0)")
    one = BlaschkeProduct(UNIT_DISK)
    zeros = tuple((loc, m) for loc, m in theta.locations)
    return AnalyticSystem(
        domain=UNIT_DISK,
        fs=(theta, complex(c), lambda z: theta(z) + c),
        path="inner",
        zero_sets=(zeros, (), ()),
        Bs=(theta, one, one),
        W=InnerWronskian(theta, c),
        bigB=blaschke_lcm([theta]),
        calB=blaschke_radical(theta),
        diagnostics={"construction": "f_0 = theta, f_1 = c, |c| > 1"},
    )


# ---------------------------------------------------------------------------
# divisibility


@dataclass
class Divisibility:
    ok: bool
    F: Callable
    residual: float
    exact: bool


def _factor_unit(w_a: complex) -> complex:
    # matches the normalized factor (conj(a)/|a|)(a - w)/(1 - conj(a) w) = u (w - a)/(1 - conj(a) w)
    return 1.0 + 0j if w_a == 0 else -np.conj(w_a) / abs(w_a)


def _make_F(sys: AnalyticSystem) -> Callable:
    n = sys.n
    c, R = sys.domain.center, sys.domain.radius
    W = sys.W
    factors = [(w_a, _factor_unit(w_a), n - m_a) for w_a, m_a in sys.bigB.zeros]
    deriv_cache: dict[int, Any] = {}

    def dW(j):
        if j not in deriv_cache:
            deriv_cache[j] = W.derivative(j) if j else W
        return deriv_cache[j]

    def factor(w, w_a, u):
        return u * (w - w_a) / (1.0 - np.conj(w_a) * w)

    def F(z):
        z = np.asarray(z, dtype=complex)
        w = (z - c) / R
        out = np.asarray(W(z), dtype=complex) * np.ones(w.shape)
        with np.errstate(divide="ignore", invalid="ignore"):
            for w_a, u, e in factors:
                out = out * factor(w, w_a, u) ** e
        # removable singularities: W / (w - a)^k by its Taylor quotient
        for idx, (w_a, u, e) in enumerate(factors):
            if e >= 0:
                continue
            k = -e
            near = np.abs(w - w_a) < 1e-3
            if not np.any(near):
                continue
            wn = w[near]
            a_z = c + R * w_a
            q = np.zeros(wn.shape, dtype=complex)
            for j in range(k, k + 14):
                q += complex(dW(j)(a_z)) * R**j / math.factorial(j) * (wn - w_a) ** (j - k)
            val = q * ((1.0 - np.conj(w_a) * wn) / u) ** k
            for jdx, (w_b, u_b, e_b) in enumerate(factors):
                if jdx != idx:
                    val = val * factor(wn, w_b, u_b) ** e_b
            out[near] = val
        return out if out.ndim else complex(out)

    return F


def _divisibility_residual(sys: AnalyticSystem) -> float:
    """Largest scaled Taylor coefficient of W that must vanish at a zero of ``bigB``."""
    n, c, R = sys.n, sys.domain.center, sys.domain.radius
    zeta = sys.domain.boundary_points(1024)
    scale = float(np.max(np.abs(sys.W(zeta)))) or 1.0
    worst = 0.0
    for w_a, m_a in sys.bigB.zeros:
        a_z = c + R * w_a
        for j in range(max(m_a - n, 0)):
            dj = sys.W.derivative(j) if j else sys.W
            worst = max(worst, abs(complex(dj(a_z))) * R**j / math.factorial(j) / scale)
    return worst


def check_divisibility(sys: AnalyticSystem) -> Divisibility:
    """Check that ``W * calB^n`` is divisible by ``bigB``; return ``F = W calB^n / bigB``.

    Polynomial path: ``lcm(f_0..f_{n+1})`` must divide ``W * rad^n`` exactly,
    where ``rad`` is the LCM of the squarefree parts; this is the global
    form of the vanishing-order comparison and implies it at every zero
    inside the domain.  Series path: the Taylor coefficients of ``W`` that
    must vanish at each zero of ``bigB`` are at most ``1e-8`` relative to
    ``max |W|`` on the boundary.
    """
    residual = _divisibility_residual(sys)
    if sys.path == "polynomial":
        nonzero = [f for f in sys.fs if not f.is_zero()]
        L = poly_lcm(nonzero)
        rad = poly_lcm([squarefree_part(f) for f in nonzero])
        ok = ((sys.W * rad**sys.n) % L).is_zero()
        exact = True
    else:
        ok = residual <= DIVISIBILITY_TOL
        exact = False
    if not ok:
        raise InconsistencyError(f"W * calB^n is not divisible by bigB (residual {residual:.3e})")
    return Divisibility(ok=ok, F=_make_F(sys), residual=residual, exact=exact)


# ---------------------------------------------------------------------------
# Theorems 1, 2 and Proposition 3


def _system_counts(sys: AnalyticSystem) -> dict:
    return {
        "N_bigB": sys.bigB.N,
        "N_calB": sys.calB.N,
        "sum_N_fj": sum(B.N for B in sys.Bs),
        "sum_distinct_fj": sum(B.distinct for B in sys.Bs),
    }


def _inequality(sys: AnalyticSystem, theorem: str, which: str, spec: QuadratureSpec, extra: dict | None = None):
    counts = _system_counts(sys)
    diagnostics = {"path": sys.path, "n": sys.n, "equality_tol_rationale": EQUALITY_RATIONALE}
    diagnostics.update(sys.diagnostics)
    diagnostics.update(extra or {})
    if sys.path == "polynomial":
        diagnostics["W"] = sys.W.to_strings()
    try:
        vals = compute_functionals(sys.W, sys.domain, spec)
    except HypothesisViolation as exc:
        diagnostics["reason"] = str(exc)
        return VerificationReport(theorem, "hypothesis_violated", counts=counts, diagnostics=diagnostics)
    lhs = float(sys.bigB.N)
    if which == "lambda":
        rhs = vals.lambda_sq + sys.n * vals.mu**2 * sys.calB.N
    else:
        rhs = vals.kappa + sys.n * vals.mu * sys.calB.N
    diagnostics["equality_tol"] = EQUALITY_RTOL * (1.0 + abs(rhs))
    return VerificationReport(theorem, _classify(lhs, rhs), lhs, rhs, vals, counts, diagnostics)


def verify_theorem1(sys: AnalyticSystem, spec: QuadratureSpec = DEFAULT_SPEC) -> VerificationReport:
    """``N(bigB) <= lambda^2 + n mu^2 N(calB)``."""
    return _inequality(sys, "theorem1", "lambda", spec)


def verify_theorem2(sys: AnalyticSystem, spec: QuadratureSpec = DEFAULT_SPEC) -> VerificationReport:
    """``N(bigB) <= kappa + n mu N(calB)``."""
    return _inequality(sys, "theorem2", "kappa", spec)


def verify_prop3(sys: AnalyticSystem, spec: QuadratureSpec = DEFAULT_SPEC, variant: str = "a") -> VerificationReport:
    """The unit-disk versions for functions merely analytic on the disk.

    Same formulas as Theorems 1 and 2; ``||1/W||_inf`` is read as the
    reciprocal of the essential infimum of ``|W|`` on the circle.
    """
    if variant not in ("a", "b"):
        raise InputError(f"variant must be 'a' or 'b', got {variant!r}")
    if sys.domain != UNIT_DISK:
        raise InputError("Proposition 3 is stated on the unit disk")
    extra = {"inverse_sup": "essential infimum of |W| on T, sampled estimate"}
    if sys.path != "polynomial":
        extra["finiteness"] = "zero counts validated by winding number and half-order truncation"
    return _inequality(sys, f"prop3{variant}", "lambda" if variant == "a" else "kappa", spec, extra)


# ---------------------------------------------------------------------------
# Theorem 4 and the D_alpha lemma


def _adaptive_order(B: BlaschkeProduct, tail: float = THEOREM4_TAIL) -> int:
    rho = max((abs(w) for w, _ in B.zeros), default=0.0)
    if rho == 0.0:
        return max(THEOREM4_MIN_ORDER, B.N + 1)
    m = math.ceil(math.log(tail) / math.log(rho))
    return int(min(max(m, THEOREM4_MIN_ORDER), THEOREM4_MAX_ORDER))


def _as_series(f, order: int) -> PowerSeries:
    if hasattr(f, "taylor"):
        return f.taylor(order)
    if isinstance(f, PowerSeries):
        return PowerSeries(f.coeffs, order)
    return PowerSeries.from_polynomial(f, order)


def r_alpha(f, theta: BlaschkeProduct, alpha: float, order: int | None = None) -> float:
    """``||f theta||^2_{D_alpha} - ||f||^2_{D_alpha}`` from Taylor coefficients."""
    if theta.domain != UNIT_DISK:
        raise InputError("D_alpha quantities live on the unit disk")
    M = order or _adaptive_order(theta)
    if isinstance(f, Polynomial):
        M += max(f.degree, 0)
    elif isinstance(f, PowerSeries):
        M = max(M, f.order)
    fs = _as_series(f, M)
    return d_alpha_norm_sq(multiply_series(theta, fs), alpha) - d_alpha_norm_sq(fs, alpha)


def verify_theorem4(
    sys: AnalyticSystem, alpha: float, spec: QuadratureSpec = DEFAULT_SPEC, order: int | None = None
) -> VerificationReport:
    """Norm content of ``c_alpha ||bigB||^2 <= lambda_alpha^2 + n mu^2 ||calB||^2``.

    ``c_alpha`` has no constructive value, so the report carries
    ``implied_c = (lambda_alpha^2 + n mu^2 ||calB||^2) / ||bigB||^2`` and the
    status only says whether it is positive.  ``order`` fixes the Taylor
    truncation; by default it grows until ``rho^M <= 1e-13``.
    """
    if not 0 < alpha < 1:
        raise InputError("alpha must lie in (0, 1)")
    if sys.domain != UNIT_DISK:
        raise InputError("Theorem 4 is stated on the unit disk")
    counts = _system_counts(sys)
    M = order or _adaptive_order(sys.bigB)
    diagnostics: dict[str, Any] = {"alpha": alpha, "order": M, "path": sys.path}
    try:
        bounds = check_boundary_invertibility(sys.W, UNIT_DISK, spec)
    except HypothesisViolation as exc:
        diagnostics["reason"] = str(exc)
        return VerificationReport("theorem4", "hypothesis_violated", counts=counts, diagnostics=diagnostics)
    TB = taylor_coefficients(sys.bigB, M)
    Tc = taylor_coefficients(sys.calB, M)
    norm_big = d_alpha_norm_sq(TB, alpha)
    norm_cal = d_alpha_norm_sq(Tc, alpha)
    Wser = _as_series(sys.W, M) if hasattr(sys.W, "taylor") else (
        sys.W if isinstance(sys.W, PowerSeries) else PowerSeries.from_polynomial(sys.W)
    )
    lam = lambda_alpha_functional(Wser, alpha, spec, bounds)
    mu = mu_functional(sys.W, UNIT_DISK, spec, bounds)
    rhs = lam + sys.n * mu**2 * norm_cal
    implied_c = rhs / norm_big if norm_big > 0 else math.inf
    r_val = r_alpha(sys.W, sys.calB**sys.n, alpha, order=M) if sys.calB.N else 0.0
    diagnostics.update(
        {
            "lhs_norm_sq": norm_big,
            "rhs_norm_sq": rhs,
            "implied_c": implied_c,
            "calB_norm_sq": norm_cal,
            "tail_bound_bigB": TB.tail_sq_bound,
            "R_alpha_W_calB_n": r_val,
            "note": "c_alpha is nonconstructive; only implied_c > 0 is asserted",
        }
    )
    status = "holds" if implied_c > 0 and r_val >= -1e-8 else "fails"
    vals = FunctionalValues(
        lambda_sq=math.nan,
        mu=mu,
        kappa=math.nan,
        lambda_alpha_sq=lam,
        diagnostics={"min_boundary_modulus": bounds.min_modulus, "inverse_sup": "sampled estimate"},
    )
    return VerificationReport("theorem4", status, norm_big, rhs, vals, counts, diagnostics)


def monomial_bracket(alpha: float, kmax: int = 4096) -> tuple[float, float]:
    """Range of ``||z^k||^2_{D_alpha} / area-side`` over ``k >= 1``.

    For ``theta = z^k`` the area side is ``sum_{j<k} B(j+1, 1-alpha)``; the
    ratio starts at ``1 - alpha`` (k = 1) and tends to ``alpha / Gamma(1-alpha)``.
    """
    j = np.arange(kmax)
    I = np.cumsum(special.beta(j + 1.0, 1.0 - alpha))
    k = j + 1.0
    ratios = k**alpha / I
    limit = alpha / special.gamma(1.0 - alpha)
    return float(min(ratios.min(), limit)), float(max(ratios.max(), limit))


COMPARABILITY_QUADRATURE_RHO = 0.95


def _comparability_area(theta: BlaschkeProduct, alpha: float, M: int) -> float:
    # (1/pi) int K(z,z) (1-|z|^2)^(-alpha) dA with K(z,z) = sum_k |e_k(z)|^2;
    # the moments of the radial weight are B(n+1, 1-alpha)
    s = kernel_diagonal_coefficients(theta, M)
    n = np.arange(M + 1, dtype=float)
    return float(np.dot(s, special.beta(n + 1.0, 1.0 - alpha)))


def verify_dalpha_comparability(
    theta: BlaschkeProduct,
    alpha: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    samples: Sequence = (),
    order: int | None = None,
) -> VerificationReport:
    """Compare ``||theta||^2_{D_alpha}`` with ``(1/pi) int (1-|theta|^2)/(1-|z|^2)^(1+alpha) dA``.

    The report's ``lhs`` is the coefficient side, ``rhs`` the area side,
    ``diagnostics["ratio"]`` their quotient.  The area side comes from the
    model-space kernel expansion (exact up to truncation at ``z^M``); when
    every zero has modulus at most 0.95 it is cross-checked by 2-D
    quadrature.  ``samples`` are functions
    ``f`` on which ``R_alpha(f, theta) >= 0`` is checked.
    """
    if not 0 < alpha < 1:
        raise InputError("alpha must lie in (0, 1)")
    if theta.domain != UNIT_DISK:
        raise InputError("D_alpha quantities live on the unit disk")
    if theta.N == 0:
        raise InputError("theta must have at least one zero")
    M = order or _adaptive_order(theta)
    T = taylor_coefficients(theta, M)
    coef = d_alpha_norm_sq(T, alpha)
    area = _comparability_area(theta, alpha, M)
    rho = max(abs(w) for w, _ in theta.zeros)
    area_quad = None
    if rho <= COMPARABILITY_QUADRATURE_RHO:
        area_quad = weighted_area_integral(
            lambda z: theta.one_minus_modulus_sq_ratio(z) * (1.0 + np.abs(z)) ** (-alpha),
            UNIT_DISK,
            -alpha,
            spec,
        )
        if abs(area_quad - area) > 1e-6 * (1.0 + area):
            raise InconsistencyError(f"area side: kernel series {area!r} vs quadrature {area_quad!r}")
    if not (math.isfinite(coef) and math.isfinite(area) and area > 0):
        raise InconsistencyError(f"nonfinite comparability integral (coef {coef!r}, area {area!r})")
    ratio = coef / area
    r_vals = [r_alpha(_coerce(f), theta, alpha, order=M) for f in samples]
    r_min = min(r_vals) if r_vals else None
    lo, hi = monomial_bracket(alpha)
    status = "holds" if r_min is None or r_min >= -1e-8 else "fails"
    diagnostics = {
        "alpha": alpha,
        "order": M,
        "ratio": ratio,
        "area_quadrature": area_quad,
        "C_cap": max(ratio, 1.0 / ratio),
        "monomial_bracket": [lo, hi],
        "R_alpha_min": r_min,
        "R_alpha": r_vals,
        "note": "comparability constants are nonconstructive; the bracket is empirical",
    }
    return VerificationReport(
        "dalpha_comparability", status, coef, area, counts={"N_theta": theta.N}, diagnostics=diagnostics
    )


# ---------------------------------------------------------------------------
# Lemmas 1 and 2


def _lemma_status(lhs: float, rhs: float, tol: float, name: str) -> str:
    diff = abs(lhs - rhs)
    if diff <= tol:
        return "equality"
    if diff <= 10 * tol:
        return "fails"
    raise InconsistencyError(f"{name}: sides differ by {diff:.3e} (> 10 * tol)")


def verify_carleson_formula(
    f, theta: BlaschkeProduct, spec: QuadratureSpec = DEFAULT_SPEC, tol: float = 1e-6
) -> VerificationReport:
    """``||f theta||^2_D = ||f||^2_D + (1/2pi) int |f|^2 |theta'| ds``, both sides by quadrature."""
    f = _coerce(f)
    dom = theta.domain
    df = f.derivative()
    dth = theta.derivative()
    lhs = area_integral_disk(lambda z: df(z) * theta(z) + f(z) * dth(z), dom, 0.0, spec)
    f_norm = area_integral_disk(df, dom, 0.0, spec)
    bterm = boundary_integral(
        lambda z: np.abs(f(z)) ** 2 * boundary_derivative_modulus(theta, z), dom, "L1", spec
    )
    rhs = f_norm + bterm
    status = _lemma_status(lhs, rhs, tol, "Carleson formula")
    diagnostics = {"f_dirichlet_sq": f_norm, "boundary_term": bterm, "difference": lhs - rhs, "tol": tol}
    return VerificationReport("carleson", status, lhs, rhs, counts={"N_theta": theta.N}, diagnostics=diagnostics)


def verify_vs_inequality(
    f, theta: BlaschkeProduct, spec: QuadratureSpec = DEFAULT_SPEC, floor: float = 1e-8
) -> VerificationReport:
    """``(1/2pi) int |f| |theta'| ds <= ||(f theta)'||_{L^1}``.

    The report's ``lhs`` is the left side above, ``rhs`` the ``L^1`` norm of
    ``(f theta)'``, so ``slack >= -floor`` means the inequality holds.
    """
    f = _coerce(f)
    dom = theta.domain
    df = f.derivative()
    dth = theta.derivative()
    big = boundary_integral(lambda z: df(z) * theta(z) + f(z) * dth(z), dom, "L1", spec)
    small = boundary_integral(lambda z: np.abs(f(z)) * boundary_derivative_modulus(theta, z), dom, "L1", spec)
    status = _classify(small, big, floor=floor)
    if status == "fails" and small - big > 10 * max(floor, spec.tol * (1 + big)):
        raise InconsistencyError(f"Vinogradov-Shirokov inequality violated by {small - big:.3e}")
    return VerificationReport(
        "vinogradov_shirokov", status, small, big, counts={"N_theta": theta.N}, diagnostics={"floor": floor}
    )


# ---------------------------------------------------------------------------
# limit demo and worked examples


@dataclass
class LimitTable:
    degree: int
    rows: list
    skipped: list
    monotone: bool

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["R", "kappa", "mu", "R_times_kappa_minus_m"])
        for r in self.rows:
            writer.writerow([repr(r["R"]), repr(r["kappa"]), repr(r["mu"]), repr(r["R_times_kappa_minus_m"])])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"degree": self.degree, "rows": self.rows, "skipped": self.skipped, "monotone": self.monotone}


def limit_demo(
    W, R_schedule: Sequence[float] = (2, 5, 10, 50, 100), spec: QuadratureSpec = DEFAULT_SPEC
) -> LimitTable:
    """``kappa`` and ``mu`` of ``W`` on growing disks ``R D``.

    Asserts ``|kappa(R_max) - m| <= 5 m / R_max`` and
    ``mu(R_max) <= 1 + 5 s / R_max`` with ``m = deg W`` and
    ``s = sum_{k<m} |c_k| / |c_m|``.
    """
    W = _coerce(W)
    if W.is_zero():
        raise InputError("W must be a nonzero polynomial")
    m = W.degree
    c = np.abs(W.to_complex())
    s = float(c[:-1].sum() / c[-1]) if m > 0 else 0.0
    rows, skipped = [], []
    for R in sorted(float(r) for r in R_schedule):
        dom = Domain(0j, R)
        try:
            bounds = check_boundary_invertibility(W, dom, spec)
        except HypothesisViolation:
            warnings.warn(f"W vanishes on |z| = {R}; skipped", stacklevel=2)
            skipped.append(R)
            continue
        kappa = kappa_functional(W, dom, spec, bounds)
        mu = mu_functional(W, dom, spec, bounds)
        rows.append({"R": R, "kappa": kappa, "mu": mu, "R_times_kappa_minus_m": R * (kappa - m)})
    if not rows:
        raise InputError("every radius in the schedule was skipped")
    last = rows[-1]
    R_max = last["R"]
    if abs(last["kappa"] - m) > 5 * m / R_max or last["mu"] > 1 + 5 * s / R_max + 1e-12:
        raise InconsistencyError(f"limit demo off at R = {R_max}: kappa {last['kappa']!r}, mu {last['mu']!r}")
    gaps = [abs(r["kappa"] - m) for r in rows]
    monotone = all(b <= a + 1e-12 for a, b in zip(gaps, gaps[1:]))
    return LimitTable(m, rows, skipped, monotone)


def _exact_eps(eps) -> GaussianRational:
    if isinstance(eps, GaussianRational):
        return eps
    if isinstance(eps, float):
        return GaussianRational(Fraction(str(eps)))
    return GaussianRational(Fraction(eps))


def _fff(n: int, eps: GaussianRational) -> list[Polynomial]:
    return [Polynomial.constant(1)] + [
        Polynomial.monomial(j, eps / math.factorial(j)) for j in range(1, n + 1)
    ]


def example_system(
    which: int,
    n: int = 2,
    eps=None,
    m: int = 5,
    domain: Domain = UNIT_DISK,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> AnalyticSystem:
    """The system of one of the two sharpness examples.

    Example 1 takes ``f_0 = 1``, ``f_j = eps z^j / j!`` on any disk holding
    0 with ``eps < exp(-diameter)`` (default 0.1).  Example 2 lives on the
    unit disk and replaces ``f_n`` by ``eps z^m / m!`` (``m > n``,
    ``eps < 1/e``, default 0.25).  ``eps`` is converted exactly from its
    decimal representation.
    """
    if n < 1:
        raise InputError("n must be at least 1")
    if which == 1:
        e = _exact_eps(0.1 if eps is None else eps)
        bound = math.exp(-domain.diameter)
        if not 0 < float(e.re) < bound or e.im:
            raise InputError(f"ε must satisfy ε<e^{{−Δ}} (0 < ε < {bound:.6g} for Δ = {domain.diameter:g})")
        if contains(domain, 0j) is not Location.INSIDE:
            raise InputError("Example 1 needs 0 inside the domain")
        fs = _fff(n, e)
    elif which == 2:
        e = _exact_eps(0.25 if eps is None else eps)
        if domain != UNIT_DISK:
            raise InputError("Example 2 lives on the unit disk")
        if not 0 < float(e.re) < 1 / math.e or e.im:
            raise InputError("ε must satisfy 0<ε<1/e")
        if m <= n:
            raise InputError("m must exceed n")
        fs = _fff(n - 1, e) + [Polynomial.monomial(m, e / math.factorial(m))]
    else:
        raise InputError(f"unknown example {which!r}")
    return build_system(fs, domain, spec)


def run_example(
    which: int,
    n: int = 2,
    eps=None,
    m: int = 5,
    domain: Domain = UNIT_DISK,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> tuple[VerificationReport, VerificationReport]:
    """Theorems 1 and 2 on :func:`example_system`; both must come out as equalities."""
    sys = example_system(which, n, eps, m, domain, spec)
    reports = (verify_theorem1(sys, spec), verify_theorem2(sys, spec))
    for r in reports:
        r.diagnostics["example"] = which
        if r.status != "equality":
            raise InconsistencyError(f"example {which}: {r.theorem} came out {r.status} (slack {r.slack!r})")
    return reports
