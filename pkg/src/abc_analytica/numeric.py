"""Floating-point kernel: truncated power series, polynomial roots,
winding numbers and quadrature on circles and disks.

Evaluators are plain callables mapping a complex ndarray to a complex (or
real) ndarray of the same shape.  Anything exposing ``__call__`` and
``derivative()`` (``exact.Polynomial``, :class:`PowerSeries`) can be used
where a function *and* its derivative are needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import optimize, signal, special

from .domain import UNIT_DISK, Domain
from .errors import ConvergenceError, InputError, ZeroNearBoundaryError

__all__ = [
    "QuadratureSpec",
    "DEFAULT_SPEC",
    "PowerSeries",
    "series_arith",
    "poly_roots",
    "cluster_roots",
    "winding_count",
    "boundary_integral",
    "boundary_extremum",
    "weighted_area_integral",
    "area_integral_disk",
]

Evaluator = Callable[[np.ndarray], np.ndarray]

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureSpec:
    """Knobs shared by every quadrature routine.

    ``boundary_nodes`` is the starting trapezoid size (doubled until two
    successive values differ by less than ``tol``), ``radial_nodes`` the
    starting Gauss-Jacobi size.  ``refine_limit`` caps the number of
    doublings; ``sup_nodes`` is the dense grid used for boundary extrema.
    """

    boundary_nodes: int = 256
    radial_nodes: int = 32
    refine_limit: int = 12
    tol: float = 1e-11
    sup_nodes: int = 4096
    guard: float = 1e-8

    def __post_init__(self):
        n = self.boundary_nodes
        if n < 64 or n & (n - 1):
            raise InputError("boundary_nodes must be a power of two >= 64")
        if not self.tol > 0:
            raise InputError("tol must be positive")
        if self.radial_nodes < 2 or self.refine_limit < 1:
            raise InputError("radial_nodes >= 2 and refine_limit >= 1 required")
        if self.sup_nodes < 4096:
            raise InputError("sup_nodes must be at least 4096")

    def replace(self, **changes) -> "QuadratureSpec":
        fields = {k: getattr(self, k) for k in self.__dataclass_fields__}
        fields.update(changes)
        return QuadratureSpec(**fields)


DEFAULT_SPEC = QuadratureSpec()


# ---------------------------------------------------------------------------
# power series


class PowerSeries:
    """Truncated power series ``sum_{k<=M} c_k z^k`` about the origin.

    Arithmetic is closed at the smaller truncation order of the operands.
    ``tail_sq_bound``, when known, bounds ``sum_{k>M} k |c_k|^2`` for the
    function the series was cut from (``None`` if unknown, ``0.0`` if the
    series is exact, e.g. a polynomial).
    """

    __slots__ = ("coeffs", "tail_sq_bound")

    def __init__(self, coeffs, order: int | None = None, tail_sq_bound: float | None = None):
        c = np.asarray(coeffs, dtype=complex).ravel()
        if order is None:
            order = max(len(c) - 1, 0)
        if order < 0:
            raise InputError("truncation order must be nonnegative")
        out = np.zeros(order + 1, dtype=complex)
        k = min(len(c), order + 1)
        out[:k] = c[:k]
        out.setflags(write=False)
        self.coeffs = out
        self.tail_sq_bound = tail_sq_bound

    @classmethod
    def from_polynomial(cls, p, order: int | None = None) -> "PowerSeries":
        """Exact polynomial (anything with ``to_complex()``) as a series."""
        c = p.to_complex() if hasattr(p, "to_complex") else np.asarray(p, dtype=complex)
        if order is None:
            order = len(c) - 1
        return cls(c, order, tail_sq_bound=0.0 if order >= len(c) - 1 else None)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs[: order + 1], order)

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"PowerSeries(order={self.order}, coeffs={self.coeffs[:6]}...)"

    def _other(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        if np.isscalar(other):
            return PowerSeries([other], self.order)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        m = min(self.order, o.order) if isinstance(other, PowerSeries) else self.order
        return PowerSeries(self.coeffs[: m + 1] + o.coeffs[: m + 1], m)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.coeffs, self.order, self.tail_sq_bound)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if np.isscalar(other):
            tail = None if self.tail_sq_bound is None else self.tail_sq_bound * abs(other) ** 2
            return PowerSeries(self.coeffs * other, self.order, tail)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        m = min(self.order, other.order)
        return PowerSeries(np.convolve(self.coeffs[: m + 1], other.coeffs[: m + 1])[: m + 1], m)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if np.isscalar(other):
            return self * (1.0 / other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        m = min(self.order, other.order)
        den = other.coeffs[: m + 1]
        if den[0] == 0:
            raise InputError("non-invertible at 0")
        impulse = np.zeros(m + 1, dtype=complex)
        impulse[0] = 1.0
        # the series of num/den is the impulse response of the IIR filter num/den
        return PowerSeries(signal.lfilter(self.coeffs[: m + 1], den, impulse), m)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = PowerSeries([1.0], self.order)
        for _ in range(k):
            out = out * self
        return out

    def derivative(self, k: int = 1) -> "PowerSeries":
        c = self.coeffs
        for _ in range(k):
            if len(c) <= 1:
                c = np.zeros(1, dtype=complex)
                break
            c = c[1:] * np.arange(1, len(c))
        return PowerSeries(c, max(len(c) - 1, 0))

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def to_complex(self) -> np.ndarray:
        return np.asarray(self.coeffs)

    def trimmed(self, rtol: float = 0.0) -> np.ndarray:
        """Coefficients with negligible trailing entries removed."""
        c = np.asarray(self.coeffs)
        if not len(c):
            return c
        cut = rtol * np.max(np.abs(c))
        k = len(c)
        while k > 1 and abs(c[k - 1]) <= cut:
            k -= 1
        return c[:k]


def series_arith(a: PowerSeries, b: PowerSeries | None, op: str) -> PowerSeries:
    """Dispatch ``add``/``mul``/``div``/``derivative`` (``b`` unused for the last)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "derivative":
        return a.derivative()
    raise InputError(f"unknown series operation {op!r}")


# ---------------------------------------------------------------------------
# roots


_TINY = np.finfo(float).tiny


def _backward_scale(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    return np.polynomial.polynomial.polyval(np.abs(z), np.abs(coeffs))


def poly_roots(coeffs, max_sweeps: int = 500, tol: float = 1e-10) -> np.ndarray:
    """All roots (with multiplicity) of ``sum coeffs[k] z^k`` by Aberth-Ehrlich.

    Exact zeros at the origin are split off first; the iteration starts
    from the companion-matrix eigenvalues.  It stops once
    every root satisfies the backward-error test
    ``|p(z)| <= 8 n eps sum |c_k| |z|^k``; a couple of extra sweeps then
    polish simple roots.  Raises :class:`ConvergenceError` with the best
    iterate if ``max_sweeps`` is exhausted.
    """
    c = np.asarray(coeffs, dtype=complex).ravel()
    nz = np.flatnonzero(c)
    if len(nz) == 0 or nz[-1] < 1:
        raise InputError("poly_roots needs degree >= 1")
    c = c[: nz[-1] + 1]
    if not np.all(np.isfinite(c)):
        raise InputError("non-finite coefficient")
    n_origin = int(nz[0])
    c = c[n_origin:]
    c = c / c[-1]
    n = len(c) - 1
    if n == 0:
        return np.zeros(n_origin, dtype=complex)
    if n == 1:
        return np.concatenate([np.zeros(n_origin, dtype=complex), [-c[0]]])

    dc = c[1:] * np.arange(1, n + 1)
    # companion-matrix eigenvalues are a backward-stable start even when the
    # root moduli span hundreds of orders of magnitude; the small rotated
    # offsets keep repeated eigenvalues apart so the Aberth sums stay finite
    z = np.polynomial.polynomial.polyroots(c).astype(complex)
    z = z + 1e-9 * (1.0 + np.abs(z)) * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    done = np.zeros(n, dtype=bool)
    polish = 0
    for _ in range(max_sweeps):
        pz = np.polynomial.polynomial.polyval(z, c)
        dpz = np.polynomial.polynomial.polyval(z, dc)
        scale = _backward_scale(c, z)
        # the floor keeps the test satisfiable when the scale is subnormal
        done = np.abs(pz) <= 8 * n * EPS * scale + _TINY
        if done.all():
            polish += 1
            if polish > 2:
                break
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            w = ratio / (1.0 - ratio * s)
        w = np.where(np.isfinite(w), w, 0.0)
        w[done & (polish == 0)] = 0.0
        z = z - w
    else:
        pz = np.polynomial.polynomial.polyval(z, c)
        raise ConvergenceError(
            f"Aberth iteration did not converge in {max_sweeps} sweeps",
            estimates=np.concatenate([np.zeros(n_origin, dtype=complex), z]),
            residuals=np.abs(pz),
        )
    roots = np.concatenate([np.zeros(n_origin, dtype=complex), z])
    full = np.asarray(coeffs, dtype=complex).ravel()[: nz[-1] + 1]
    resid = np.abs(np.polynomial.polynomial.polyval(roots, full))
    bound = tol * np.max(np.abs(full)) * np.maximum(1.0, np.abs(roots)) ** (len(full) - 1)
    if np.any(resid > bound):
        raise ConvergenceError("root residuals above tolerance", estimates=roots, residuals=resid)
    return roots


def cluster_roots(roots, radius: float = 1e-6) -> list[tuple[complex, int]]:
    """Single-linkage clusters of ``roots``; returns ``(centroid, size)`` pairs.

    ``radius`` is relative to ``max(1, max |root|)``.
    """
    r = np.asarray(roots, dtype=complex).ravel()
    if len(r) == 0:
        return []
    eps = radius * max(1.0, float(np.max(np.abs(r))))
    parent = list(range(len(r)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(r)):
        close = np.flatnonzero(np.abs(r[i + 1:] - r[i]) <= eps) + i + 1
        for j in close:
            a, b = find(i), find(int(j))
            if a != b:
                parent[b] = a
    groups: dict[int, list[int]] = {}
    for i in range(len(r)):
        groups.setdefault(find(i), []).append(i)
    out = [(complex(np.mean(r[idx])), len(idx)) for idx in groups.values()]
    out.sort(key=lambda t: (round(t[0].real, 12), round(t[0].imag, 12)))
    return out


# ---------------------------------------------------------------------------
# contours


def _circle(domain: Domain, t: np.ndarray) -> np.ndarray:
    return domain.center + domain.radius * np.exp(1j * t)


def winding_count(f: Evaluator, domain: Domain = UNIT_DISK, spec: QuadratureSpec = DEFAULT_SPEC) -> int:
    """Winding number of ``f`` around 0 along the boundary circle of ``domain``.

    Arcs are bisected until every argument increment is below pi/2, so the
    returned integer is exact whenever ``f`` stays away from zero on the
    contour.  A sample with ``|f| <= guard * max|f|`` is taken as a zero on
    the contour and rejected.
    """
    n = spec.boundary_nodes
    t = 2 * np.pi * np.arange(n + 1) / n
    vals = np.asarray(f(_circle(domain, t)), dtype=complex)
    vals[-1] = vals[0]
    if not np.all(np.isfinite(vals)):
        raise InputError("evaluator returned non-finite values on the contour")
    scale = float(np.max(np.abs(vals)))
    threshold = spec.guard * scale
    if scale == 0 or np.min(np.abs(vals)) <= threshold:
        raise ZeroNearBoundaryError("zero too close to boundary")

    total = 0.0
    stack = [(t[i], vals[i], t[i + 1], vals[i + 1], 0) for i in range(n - 1, -1, -1)]
    max_depth = 40
    while stack:
        t0, v0, t1, v1, depth = stack.pop()
        step = np.angle(v1 / v0)
        if abs(step) < np.pi / 2:
            total += step
            continue
        if depth >= max_depth:
            raise ZeroNearBoundaryError("zero too close to boundary")
        tm = 0.5 * (t0 + t1)
        vm = complex(f(_circle(domain, np.array([tm])))[0])
        if abs(vm) <= threshold:
            raise ZeroNearBoundaryError("zero too close to boundary")
        stack.append((tm, vm, t1, v1, depth + 1))
        stack.append((t0, v0, tm, vm, depth + 1))
    k = total / (2 * np.pi)
    return int(round(k))


def boundary_integral(
    g: Evaluator, domain: Domain = UNIT_DISK, kind: str = "L1", spec: QuadratureSpec = DEFAULT_SPEC
) -> float:
    """``(1/2pi) int |g| ds`` over the boundary (``kind="L1"``) or ``max |g|`` (``"sup"``).

    The L1 value is a periodic trapezoid rule, doubled until two successive
    values differ by less than ``tol * (1 + |value|)``.
    """
    if kind == "sup":
        return boundary_extremum(lambda z: np.abs(g(z)), domain, "max", spec)
    if kind != "L1":
        raise InputError(f"unknown boundary norm {kind!r}")
    n = spec.boundary_nodes
    t = 2 * np.pi * np.arange(n) / n
    vals = np.abs(np.asarray(g(_circle(domain, t))))
    if not np.all(np.isfinite(vals)):
        raise InputError("integrand not finite on the boundary")
    total = float(np.sum(vals))
    prev = domain.radius * total / n
    for _ in range(spec.refine_limit):
        t_mid = t[:n] + np.pi / n
        mid = np.abs(np.asarray(g(_circle(domain, t_mid))))
        if not np.all(np.isfinite(mid)):
            raise InputError("integrand not finite on the boundary")
        total += float(np.sum(mid))
        n *= 2
        t = 2 * np.pi * np.arange(n) / n
        cur = domain.radius * total / n
        if abs(cur - prev) <= spec.tol * (1.0 + abs(cur)):
            return cur
        prev = cur
    raise ConvergenceError("boundary integral did not converge", estimates=(prev, cur))


def boundary_extremum(
    h: Callable[[np.ndarray], np.ndarray],
    domain: Domain = UNIT_DISK,
    mode: str = "max",
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> float:
    """Max or min over the boundary circle of a real function ``h``.

    Dense sampling on ``spec.sup_nodes`` points, then a bounded Brent
    search in the neighbourhood of the three best nodes.  As a maximum
    estimator this is a refined lower bound (an upper bound for minima).
    """
    if mode not in ("max", "min"):
        raise InputError("mode must be 'max' or 'min'")
    n = max(spec.sup_nodes, spec.boundary_nodes)
    t = 2 * np.pi * np.arange(n) / n
    vals = np.asarray(h(_circle(domain, t)), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise InputError("function not finite on the boundary")
    sign = 1.0 if mode == "min" else -1.0
    order = np.argsort(sign * vals, kind="stable")[:3]
    best = float(vals[order[0]])
    step = 2 * np.pi / n

    def obj(s):
        return sign * float(np.asarray(h(_circle(domain, np.array([s]))))[0])

    for i in order:
        res = optimize.minimize_scalar(
            obj, bounds=(t[i] - step, t[i] + step), method="bounded", options={"xatol": 1e-13}
        )
        cand = sign * res.fun
        if (mode == "max" and cand > best) or (mode == "min" and cand < best):
            best = float(cand)
    return best


# ---------------------------------------------------------------------------
# area integrals


def _gauss_jacobi(n: int, w: float):
    """Nodes/weights for int_0^1 (1-r)^w r q(r) dr."""
    x, wts = special.roots_jacobi(n, w, 1.0)
    r = 0.5 * (1.0 + x)
    return r, wts * 2.0 ** (-w - 2.0)


def _ring_means(h, domain: Domain, radii: np.ndarray, spec: QuadratureSpec, max_nodes: int):
    """Angular means ``(1/2pi) int h(c + R r e^{it}) dt`` for every ring radius.

    All rings start on a shared grid; rings that have not settled are then
    refined one by one with nested doubling.
    """
    n = spec.boundary_nodes
    t = 2 * np.pi * np.arange(n) / n
    pts = domain.center + domain.radius * radii[:, None] * np.exp(1j * t)[None, :]
    vals = np.asarray(h(pts), dtype=float)
    sums = vals.sum(axis=1)
    t_mid = t + np.pi / n
    pts = domain.center + domain.radius * radii[:, None] * np.exp(1j * t_mid)[None, :]
    sums2 = sums + np.asarray(h(pts), dtype=float).sum(axis=1)
    m1 = sums / n
    m2 = sums2 / (2 * n)
    if not (np.all(np.isfinite(m1)) and np.all(np.isfinite(m2))):
        raise InputError("area integrand not finite")
    ring_tol = 0.1 * spec.tol
    means = m2.copy()
    todo = np.flatnonzero(np.abs(m2 - m1) > ring_tol * (1.0 + np.abs(m2)))
    for i in todo:
        total = sums2[i]
        k = 2 * n
        prev = m2[i]
        while True:
            if k >= max_nodes:
                raise ConvergenceError(
                    f"angular rule did not converge on ring r={radii[i]:.6g}", estimates=(prev, total / k)
                )
            tm = 2 * np.pi * (np.arange(k) + 0.5) / k
            total += float(np.sum(h(domain.center + domain.radius * radii[i] * np.exp(1j * tm))))
            k *= 2
            cur = total / k
            if abs(cur - prev) <= ring_tol * (1.0 + abs(cur)):
                means[i] = cur
                break
            prev = cur
    return means


def weighted_area_integral(
    h: Callable[[np.ndarray], np.ndarray],
    domain: Domain = UNIT_DISK,
    weight_exponent: float = 0.0,
    spec: QuadratureSpec = DEFAULT_SPEC,
    max_angular_nodes: int = 2**20,
) -> float:
    """``(1/pi) int_domain h(z) (1 - rho)^w dA`` with ``rho = |z - c| / R``.

    Tensor rule: Gauss-Jacobi in ``rho`` (absorbing the endpoint weight and
    the polar Jacobian) times a periodic trapezoid in angle.  The radial
    size doubles until successive values differ by less than
    ``tol * (1 + |value|)``.  ``w`` must exceed -1.
    """
    w = float(weight_exponent)
    if not w > -1.0:
        raise InputError("weight exponent must be > -1")
    n = spec.radial_nodes
    prev = None
    for _ in range(spec.refine_limit):
        r, wts = _gauss_jacobi(n, w)
        means = _ring_means(h, domain, r, spec, max_angular_nodes)
        # (1/pi) * R^2 * 2pi * int_0^1 (1-r)^w r mean(r) dr
        cur = 2.0 * domain.radius**2 * float(np.dot(wts, means))
        if prev is not None and abs(cur - prev) <= spec.tol * (1.0 + abs(cur)):
            return cur
        prev = cur
        n *= 2
    raise ConvergenceError("area integral did not converge", estimates=(prev, cur))


def area_integral_disk(
    g: Evaluator,
    domain: Domain = UNIT_DISK,
    weight_exponent: float = 0.0,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> float:
    """``(1/pi) int |g|^2 (1 - rho)^w dA`` over the disk."""
    return weighted_area_integral(lambda z: np.abs(g(z)) ** 2, domain, weight_exponent, spec)
