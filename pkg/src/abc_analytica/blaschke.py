"""Finite Blaschke products on a disk.

Zeros are stored after the conformal map, i.e. as points of the unit
disk; LCM, radical and zero counts do not care about coordinates, and
evaluation composes with ``phi`` exactly once.

Two normalizations are supported.  With ``normalized=True`` (default) each
factor is ``(conj(a)/|a|) (a - w) / (1 - conj(a) w)``, so on the unit disk
``B(0) > 0`` whenever ``B(0) != 0``.  With ``normalized=False`` the factor is
``(w - a) / (1 - conj(a) w)``.  The two differ by a unimodular constant,
which changes no modulus, norm or count.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy import signal

from .domain import GUARD, UNIT_DISK, ConformalMap, Domain, Location, affine_map, contains
from .errors import InconsistencyError, InputError
from .numeric import DEFAULT_SPEC, PowerSeries, QuadratureSpec, area_integral_disk, boundary_integral

__all__ = [
    "BlaschkeProduct",
    "blaschke_from_zeros",
    "blaschke_eval",
    "blaschke_lcm",
    "blaschke_radical",
    "blaschke_product",
    "blaschke_counts",
    "boundary_derivative_modulus",
    "dirichlet_norm_sq",
    "taylor_coefficients",
    "d_alpha_norm_sq",
    "multiply_series",
    "kernel_diagonal_coefficients",
    "MERGE_TOL",
]

MERGE_TOL = 1e-6


def _merge(zeros: Iterable[tuple[complex, int]], combine) -> tuple[tuple[complex, int], ...]:
    merged: list[list] = []
    for w, m in zeros:
        for item in merged:
            if abs(item[0] - w) <= MERGE_TOL:
                item[1] = combine(item[1], m)
                break
        else:
            merged.append([complex(w), int(m)])
    merged.sort(key=lambda t: (round(abs(t[0]), 12), round(math.atan2(t[0].imag, t[0].real), 12)))
    return tuple((w, m) for w, m in merged)


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product on ``domain``.

    ``zeros`` holds ``(w, m)`` pairs with ``w = phi(a)`` inside the unit
    disk and ``m >= 1``; locations are pairwise distinct.  The empty
    product is the constant 1.
    """

    domain: Domain = UNIT_DISK
    zeros: tuple = ()
    normalized: bool = True
    cmap: ConformalMap | None = field(default=None, compare=False, repr=False)

    @property
    def phi(self) -> ConformalMap:
        return self.cmap if self.cmap is not None else affine_map(self.domain)

    @property
    def locations(self) -> list[tuple[complex, int]]:
        """Zeros in the coordinates of the domain."""
        inv = self.phi.inverse
        return [(complex(inv(np.array([w]))[0]), m) for w, m in self.zeros]

    @property
    def N(self) -> int:
        return sum(m for _, m in self.zeros)

    @property
    def distinct(self) -> int:
        return len(self.zeros)

    def _with(self, zeros) -> "BlaschkeProduct":
        return BlaschkeProduct(self.domain, tuple(zeros), self.normalized, self.cmap)

    # -- evaluation ---------------------------------------------------------

    def _factor_consts(self):
        a = np.array([w for w, _ in self.zeros], dtype=complex)
        m = np.array([k for _, k in self.zeros], dtype=int)
        if self.normalized:
            with np.errstate(invalid="ignore", divide="ignore"):
                u = np.where(a == 0, 1.0, -np.conj(a) / np.abs(a))
        else:
            u = np.ones_like(a)
        return a, m, u

    def _w(self, z, check=True):
        w = np.asarray(self.phi.forward(np.asarray(z, dtype=complex)), dtype=complex)
        if check and np.any(np.abs(w) > 1.0 + GUARD):
            raise InputError("point outside the closed domain")
        return w

    def __call__(self, z):
        w = self._w(z)
        out = np.ones(w.shape, dtype=complex)
        a, m, u = self._factor_consts()
        for ak, mk, uk in zip(a, m, u):
            out *= (uk * (w - ak) / (1.0 - np.conj(ak) * w)) ** mk
        return out

    def derivative(self, z=None):
        """``B'(z)`` (product rule over the factors, times ``phi'``).

        Called without arguments returns an evaluator, so a Blaschke
        product can be passed wherever ``f.derivative()`` is expected.
        """
        if z is None:
            return lambda zz: self.derivative(zz)
        zz = np.asarray(z, dtype=complex)
        w = self._w(zz)
        a, m, u = self._factor_consts()
        if len(a) == 0:
            return np.zeros(w.shape, dtype=complex)
        facs = [uk * (w - ak) / (1.0 - np.conj(ak) * w) for ak, uk in zip(a, u)]
        dfacs = [uk * (1.0 - abs(ak) ** 2) / (1.0 - np.conj(ak) * w) ** 2 for ak, uk in zip(a, u)]
        powers = [f**mk for f, mk in zip(facs, m)]
        k = len(a)
        prefix = [np.ones(w.shape, dtype=complex)]
        for p in powers[:-1]:
            prefix.append(prefix[-1] * p)
        suffix = [np.ones(w.shape, dtype=complex)]
        for p in reversed(powers[1:]):
            suffix.append(suffix[-1] * p)
        suffix.reverse()
        out = np.zeros(w.shape, dtype=complex)
        for i in range(k):
            out += m[i] * facs[i] ** (m[i] - 1) * dfacs[i] * prefix[i] * suffix[i]
        return out * np.asarray(self.phi.derivative(zz))

    def one_minus_modulus_sq_ratio(self, z):
        """``(1 - |B|^2) / (1 - |phi(z)|^2)`` computed without cancellation.

        Uses ``1 - |b_a(w)|^2 = (1 - |a|^2)(1 - |w|^2) / |1 - conj(a) w|^2``
        for each factor.
        """
        w = self._w(z)
        s = 1.0 - np.abs(w) ** 2
        a, m, _ = self._factor_consts()
        log_mod = np.zeros(w.shape)
        qs = []
        # at a zero of B the log is -inf and expm1 maps it back to the exact ratio 1/s
        with np.errstate(invalid="ignore", divide="ignore"):
            for ak, mk in zip(a, m):
                q = (1.0 - abs(ak) ** 2) / np.abs(1.0 - np.conj(ak) * w) ** 2
                qs.append((q, mk))
                log_mod += mk * np.log1p(-q * s)
            ratio = -np.expm1(log_mod) / s
        # s -> 0 limit is sum m q, i.e. the boundary |B'| in w-coordinates
        limit = sum(mk * q for q, mk in qs) if qs else np.zeros(w.shape)
        return np.where(s > 1e-300, ratio, limit)

    # -- algebra ------------------------------------------------------------

    def __mul__(self, other: "BlaschkeProduct") -> "BlaschkeProduct":
        return blaschke_product([self, other])

    def __pow__(self, k: int) -> "BlaschkeProduct":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        return self._with((w, m * k) for w, m in self.zeros if k)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"zeros": [{"z": [a.real, a.imag], "m": m} for a, m in self.locations]}

    @classmethod
    def from_json(cls, obj: dict, domain: Domain = UNIT_DISK) -> "BlaschkeProduct":
        try:
            zeros = [(complex(*item["z"]), int(item["m"])) for item in obj["zeros"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad Blaschke product description: {obj!r}") from exc
        return blaschke_from_zeros(domain, zeros)


def blaschke_from_zeros(
    domain: Domain,
    zeros: Sequence[tuple[complex, int]],
    normalized: bool = True,
    cmap: ConformalMap | None = None,
) -> BlaschkeProduct:
    """Build the Blaschke product with the given ``(location, multiplicity)`` zeros.

    Locations are points of ``domain``; repeated locations (within
    ``MERGE_TOL`` after mapping) have their multiplicities added.
    """
    phi = cmap if cmap is not None else affine_map(domain)
    mapped = []
    for z, m in zeros:
        if int(m) != m or m < 1:
            raise InputError(f"multiplicity must be a positive integer, got {m!r} at {z!r}")
        loc = contains(domain, z)
        if loc is not Location.INSIDE:
            raise InputError(f"zero {complex(z)!r} is not strictly inside the domain ({loc.value})")
        mapped.append((complex(phi.forward(np.array([complex(z)]))[0]), int(m)))
    return BlaschkeProduct(domain, _merge(mapped, lambda x, y: x + y), normalized, cmap)


def blaschke_eval(B: BlaschkeProduct, z):
    return B(z)


def _same_domain(Bs: Sequence[BlaschkeProduct]) -> BlaschkeProduct:
    if not Bs:
        return BlaschkeProduct()
    first = Bs[0]
    for B in Bs[1:]:
        if B.domain != first.domain:
            raise InputError("Blaschke products live on different domains")
    return first


def blaschke_lcm(Bs: Sequence[BlaschkeProduct]) -> BlaschkeProduct:
    """Union of the zero sets, each with its largest multiplicity."""
    first = _same_domain(Bs)
    return first._with(_merge((z for B in Bs for z in B.zeros), max))


def blaschke_product(Bs: Sequence[BlaschkeProduct]) -> BlaschkeProduct:
    first = _same_domain(Bs)
    return first._with(_merge((z for B in Bs for z in B.zeros), lambda x, y: x + y))


def blaschke_radical(B: BlaschkeProduct) -> BlaschkeProduct:
    return B._with((w, 1) for w, _ in B.zeros)


class Counts(NamedTuple):
    N: int
    distinct: int


def blaschke_counts(B: BlaschkeProduct) -> Counts:
    return Counts(B.N, B.distinct)


def boundary_derivative_modulus(B: BlaschkeProduct, zeta):
    """``|B'(zeta)|`` for boundary points, in closed form.

    On the unit circle every factor's logarithmic derivative
    ``(1 - |a|^2) / ((w - a)(1 - conj(a) w))`` has the same argument, so
    ``|B'| = |phi'| * sum_k m_k (1 - |a_k|^2) / |w - a_k|^2``.
    """
    zeta = np.asarray(zeta, dtype=complex)
    w = np.asarray(B.phi.forward(zeta), dtype=complex)
    total = np.zeros(w.shape)
    for a, m in B.zeros:
        total += m * (1.0 - abs(a) ** 2) / np.abs(w - a) ** 2
    return total * np.abs(np.asarray(B.phi.derivative(zeta)))


class DirichletNormSq(NamedTuple):
    area: float
    boundary: float
    N: int


def dirichlet_norm_sq(B: BlaschkeProduct, spec: QuadratureSpec = DEFAULT_SPEC) -> DirichletNormSq:
    """``||B||_D^2`` by area quadrature of ``|B'|^2`` and by ``(1/2pi) int |B'| ds``.

    Both must agree (and equal the zero count); a disagreement larger
    than ``10 tol (1 + N)`` raises :class:`InconsistencyError`.
    """
    area = area_integral_disk(B.derivative(), B.domain, 0.0, spec)
    bdry = boundary_integral(lambda z: boundary_derivative_modulus(B, z), B.domain, "L1", spec)
    if abs(area - bdry) > 10 * spec.tol * (1 + B.N):
        raise InconsistencyError(f"quadrature inconsistency: area {area!r} vs boundary {bdry!r}")
    return DirichletNormSq(area, bdry, B.N)


def _sections(B: BlaschkeProduct):
    """First-order sections ``(num, den)``, one per zero (with repetition)."""
    out = []
    for a, m in B.zeros:
        if a == 0:
            num = np.array([0.0, 1.0 + 0j])
        elif B.normalized:
            u = np.conj(a) / abs(a)
            num = np.array([u * a, -u])
        else:
            num = np.array([-a, 1.0 + 0j])
        den = np.array([1.0 + 0j, -np.conj(a)])
        out.extend([(num, den)] * m)
    return out


def _dirichlet_tail(B: BlaschkeProduct, M: int) -> float:
    rho = max((abs(a) for a, _ in B.zeros), default=0.0)
    if rho == 0.0:
        return 0.0 if M >= B.N else float("inf")
    r = 1.0 / math.sqrt(rho)
    t = 2 * np.pi * np.arange(4096) / 4096
    w = r * np.exp(1j * t)
    vals = np.ones_like(w)
    for num, den in _sections(B):
        vals *= (num[0] + num[1] * w) / (den[0] + den[1] * w)
    bound = 1.1 * float(np.max(np.abs(vals)))
    # |c_k| <= bound * rho^(k/2);  sum_{k>M} k x^k with x = rho
    x = rho
    tail = x ** (M + 1) * ((M + 1) - M * x) / (1 - x) ** 2
    return bound**2 * tail


def _apply_sections(B: BlaschkeProduct, coeffs: np.ndarray) -> np.ndarray:
    # a cascade of first-order sections stays stable when poles cluster
    # near the circle, unlike one high-order filter
    for num, den in _sections(B):
        coeffs = signal.lfilter(num, den, coeffs)
    return coeffs


@functools.lru_cache(maxsize=8)
def taylor_coefficients(B: BlaschkeProduct, M: int = 256) -> PowerSeries:
    """Taylor coefficients of ``B o phi^{-1}`` at 0 up to ``z^M``.

    ``B`` is rational, so the series is the impulse response of a cascade
    of first-order filters, one per zero.  ``tail_sq_bound`` of the result
    bounds ``sum_{k>M} k |c_k|^2`` via a Cauchy estimate on the circle of
    radius ``1/sqrt(rho)``, ``rho = max |phi(a_k)|``.  Results are cached
    (the coefficient array is read-only).
    """
    if M < 0:
        raise InputError("order must be nonnegative")
    impulse = np.zeros(M + 1, dtype=complex)
    impulse[0] = 1.0
    return PowerSeries(_apply_sections(B, impulse), M, tail_sq_bound=_dirichlet_tail(B, M))


def multiply_series(B: BlaschkeProduct, g: PowerSeries, M: int | None = None) -> PowerSeries:
    """Coefficients of ``B * g`` up to ``z^M`` (default: the order of ``g``).

    Runs ``g`` through the filter cascade, so the cost is linear in ``M``.
    """
    M = g.order if M is None else M
    c = np.zeros(M + 1, dtype=complex)
    k = min(len(g.coeffs), M + 1)
    c[:k] = g.coeffs[:k]
    return PowerSeries(_apply_sections(B, c), M)


def kernel_diagonal_coefficients(B: BlaschkeProduct, M: int) -> np.ndarray:
    """``s_n = sum_k |e_k^(n)|^2`` for the Takenaka-Malmquist basis of the model space.

    ``e_k = sqrt(1-|a_k|^2) / (1 - conj(a_k) w) * prod_{j<k} b_j`` is
    orthonormal in ``H^2`` and ``sum_k |e_k(w)|^2 = (1-|B|^2)/(1-|w|^2)``,
    so any radial-weight integral of that kernel is ``sum_n s_n m_n`` with
    the weight's moments ``m_n``.
    """
    out = np.zeros(M + 1)
    prefix = np.zeros(M + 1, dtype=complex)
    prefix[0] = 1.0
    for num, den in _sections(B):
        a = -np.conj(den[1])
        e = signal.lfilter([math.sqrt(1.0 - abs(a) ** 2)], den, prefix)
        out += np.abs(e) ** 2
        prefix = signal.lfilter(num, den, prefix)
    return out


def d_alpha_norm_sq(f: PowerSeries, alpha: float) -> float:
    """``sum_{k>=1} k^alpha |f_k|^2`` over the available coefficients.

    For ``alpha <= 1`` the neglected tail is at most ``f.tail_sq_bound``.
    """
    if not 0 < alpha <= 1:
        raise InputError("alpha must lie in (0, 1]")
    c = np.asarray(f.coeffs if isinstance(f, PowerSeries) else f, dtype=complex)
    k = np.arange(len(c), dtype=float)
    return float(np.sum(k[1:] ** alpha * np.abs(c[1:]) ** 2))
