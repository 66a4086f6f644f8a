"""Norm functionals of the Wronskian: lambda^2, mu, kappa and lambda_alpha^2.

All of them are invariant under ``W -> cW``.  ``||1/W||_inf`` on the
boundary is taken as the reciprocal of the sampled-and-refined minimum of
``|W|``; for the continuous ``W`` produced here that is the essential
supremum.  ``W'`` always comes from exact differentiation (polynomials or
truncated series), never from finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .blaschke import d_alpha_norm_sq
from .domain import UNIT_DISK, Domain
from .errors import HypothesisViolation, InputError
from .numeric import DEFAULT_SPEC, PowerSeries, QuadratureSpec, area_integral_disk, boundary_extremum, boundary_integral

__all__ = [
    "BoundaryModulus",
    "FunctionalValues",
    "check_boundary_invertibility",
    "lambda_functional",
    "mu_functional",
    "kappa_functional",
    "lambda_alpha_functional",
    "compute_functionals",
    "INVERTIBILITY_THRESHOLD",
]

INVERTIBILITY_THRESHOLD = 1e-10


@dataclass(frozen=True)
class BoundaryModulus:
    min_modulus: float
    max_modulus: float


@dataclass
class FunctionalValues:
    lambda_sq: float
    mu: float
    kappa: float
    lambda_alpha_sq: float | None = None
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "lambda_sq": self.lambda_sq,
            "mu": self.mu,
            "kappa": self.kappa,
            "lambda_alpha_sq": self.lambda_alpha_sq,
            "diagnostics": self.diagnostics,
        }


def _with_derivative(W):
    if isinstance(W, tuple) and len(W) == 2:
        return W
    if hasattr(W, "derivative"):
        return W, W.derivative()
    raise InputError("W must provide derivative() (or be given as a (W, dW) pair)")


def check_boundary_invertibility(
    W, domain: Domain = UNIT_DISK, spec: QuadratureSpec = DEFAULT_SPEC, threshold: float = INVERTIBILITY_THRESHOLD
) -> BoundaryModulus:
    """Boundary extrema of ``|W|``; raises unless ``min |W| > threshold * max |W|``."""
    f = W[0] if isinstance(W, tuple) else W
    mod = lambda z: np.abs(f(z))  # noqa: E731
    hi = boundary_extremum(mod, domain, "max", spec)
    lo = boundary_extremum(mod, domain, "min", spec)
    if not hi > 0 or lo <= threshold * hi:
        raise HypothesisViolation("W vanishes (numerically) on boundary; theorem hypotheses violated")
    return BoundaryModulus(lo, hi)


def lambda_functional(W, domain: Domain = UNIT_DISK, spec: QuadratureSpec = DEFAULT_SPEC, bounds=None) -> float:
    """``lambda^2 = ||W'||^2_{L^2(domain)} / min_{boundary} |W|^2``."""
    f, df = _with_derivative(W)
    bounds = bounds or check_boundary_invertibility(f, domain, spec)
    return area_integral_disk(df, domain, 0.0, spec) / bounds.min_modulus**2


def mu_functional(W, domain: Domain = UNIT_DISK, spec: QuadratureSpec = DEFAULT_SPEC, bounds=None) -> float:
    """``mu = max |W| / min |W|`` over the boundary (always >= 1)."""
    f = W[0] if isinstance(W, tuple) else W
    bounds = bounds or check_boundary_invertibility(f, domain, spec)
    return max(1.0, bounds.max_modulus / bounds.min_modulus)


def kappa_functional(W, domain: Domain = UNIT_DISK, spec: QuadratureSpec = DEFAULT_SPEC, bounds=None) -> float:
    """``kappa = (1/2pi) int |W'| ds / min |W|`` over the boundary."""
    f, df = _with_derivative(W)
    bounds = bounds or check_boundary_invertibility(f, domain, spec)
    return boundary_integral(df, domain, "L1", spec) / bounds.min_modulus


def lambda_alpha_functional(W, alpha: float, spec: QuadratureSpec = DEFAULT_SPEC, bounds=None) -> float:
    """``lambda_alpha^2 = ||W||^2_{D_alpha} / min_T |W|^2`` on the unit disk.

    ``W`` is a :class:`PowerSeries` or anything with ``to_complex()``
    giving its Taylor coefficients at 0.
    """
    if not 0 < alpha <= 1:
        raise InputError("alpha must lie in (0, 1]")
    series = W if isinstance(W, PowerSeries) else PowerSeries.from_polynomial(W)
    bounds = bounds or check_boundary_invertibility(series, UNIT_DISK, spec)
    return d_alpha_norm_sq(series, alpha) / bounds.min_modulus**2


def compute_functionals(
    W, domain: Domain = UNIT_DISK, spec: QuadratureSpec = DEFAULT_SPEC, alpha: float | None = None
) -> FunctionalValues:
    """All functionals at once, sharing one boundary-extremum pass."""
    f, df = _with_derivative(W)
    bounds = check_boundary_invertibility(f, domain, spec)
    values = FunctionalValues(
        lambda_sq=lambda_functional((f, df), domain, spec, bounds),
        mu=mu_functional(f, domain, spec, bounds),
        kappa=kappa_functional((f, df), domain, spec, bounds),
        diagnostics={
            "min_boundary_modulus": bounds.min_modulus,
            "max_boundary_modulus": bounds.max_modulus,
            "inverse_sup": "sampled estimate",
        },
    )
    if alpha is not None:
        if domain != UNIT_DISK:
            raise InputError("lambda_alpha is defined on the unit disk only")
        values.lambda_alpha_sq = lambda_alpha_functional(W, alpha, spec, bounds)
    return values
