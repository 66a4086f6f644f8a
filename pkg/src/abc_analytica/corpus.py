"""Seeded random test families.

Every generator takes an explicit ``seed`` or falls back to the
``ABC_ANALYTICA_SEED`` environment variable (a decimal unsigned integer,
default 0), so a corpus is reproducible from one number.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .blaschke import BlaschkeProduct, blaschke_from_zeros
from .domain import UNIT_DISK, Location, contains
from .errors import InputError
from .exact import GaussianRational, Polynomial, poly_gcd, wronskian_poly
from .numeric import PowerSeries, poly_roots

__all__ = [
    "SEED_ENV",
    "corpus_seed",
    "random_gaussian_rational",
    "random_polynomial",
    "coprime_pairs",
    "admissible_systems",
    "random_blaschke",
    "blaschke_corpus",
    "complex_polynomials",
    "LemmaCase",
    "lemma_corpus",
    "verifier_corpus",
    "series_systems",
    "radial_family",
]

SEED_ENV = "ABC_ANALYTICA_SEED"


def corpus_seed(seed: int | None = None) -> int:
    if seed is not None:
        return int(seed)
    raw = os.environ.get(SEED_ENV, "0").strip()
    if not raw.isdigit():
        raise InputError(f"{SEED_ENV} must be a decimal unsigned integer, got {raw!r}")
    return int(raw)


def _rng(seed: int | None) -> np.random.Generator:
    return np.random.default_rng(corpus_seed(seed))


def random_gaussian_rational(rng: np.random.Generator, bound: int = 20, imaginary: bool = True) -> GaussianRational:
    """Real and imaginary parts ``p/q`` with ``|p| <= bound``, ``1 <= q <= bound``."""
    def part():
        return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))

    return GaussianRational(part(), part() if imaginary and rng.random() < 0.5 else 0)


def random_polynomial(rng: np.random.Generator, max_degree: int = 8, bound: int = 20) -> Polynomial:
    deg = int(rng.integers(0, max_degree + 1))
    coeffs = [random_gaussian_rational(rng, bound) for _ in range(deg + 1)]
    while not coeffs[-1]:
        coeffs[-1] = random_gaussian_rational(rng, bound)
    return Polynomial(coeffs)


def coprime_pairs(count: int = 1000, seed: int | None = None, max_degree: int = 8, bound: int = 20):
    """``count`` relatively prime pairs ``(a, b)``, not all of ``a, b, a+b`` constant."""
    rng = _rng(seed)
    out = []
    while len(out) < count:
        a = random_polynomial(rng, max_degree, bound)
        b = random_polynomial(rng, max_degree, bound)
        if a.is_constant() and b.is_constant():
            continue
        if poly_gcd(a, b).is_constant():
            out.append((a, b))
    return out


def admissible_systems(count: int = 200, seed: int | None = None, ns=(2, 3), max_degree: int = 6, bound: int = 20):
    """Lists ``p_0..p_n`` whose ``n+2`` members (with the sum) are pairwise
    coprime and linearly independent.
    """
    rng = _rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.choice(ns))
        ps = [random_polynomial(rng, max_degree, bound) for _ in range(n + 1)]
        full = ps + [sum(ps[1:], ps[0])]
        if any(p.is_zero() for p in full):
            continue
        if not all(poly_gcd(full[i], full[j]).is_constant() for i in range(n + 2) for j in range(i + 1, n + 2)):
            continue
        if wronskian_poly(ps).is_zero():
            continue
        out.append(ps)
    return out


def _disk_point(rng: np.random.Generator, radius: float = 0.9) -> complex:
    r = radius * math.sqrt(rng.random())
    t = 2 * math.pi * rng.random()
    return complex(r * math.cos(t), r * math.sin(t))


def random_blaschke(rng: np.random.Generator, max_zeros: int = 10, radius: float = 0.9) -> BlaschkeProduct:
    N = int(rng.integers(1, max_zeros + 1))
    zeros = []
    while sum(m for _, m in zeros) < N:
        m = int(min(rng.integers(1, 3), N - sum(k for _, k in zeros)))
        zeros.append((_disk_point(rng, radius), m))
    return blaschke_from_zeros(UNIT_DISK, zeros)


def blaschke_corpus(count: int = 50, seed: int | None = None, max_zeros: int = 10) -> list[BlaschkeProduct]:
    rng = _rng(seed)
    return [random_blaschke(rng, max_zeros) for _ in range(count)]


def complex_polynomials(count: int = 50, seed: int | None = None, max_degree: int = 10) -> list[np.ndarray]:
    """Coefficient vectors with standard complex normal entries."""
    rng = _rng(seed)
    return [
        rng.standard_normal(d + 1) + 1j * rng.standard_normal(d + 1)
        for d in rng.integers(1, max_degree + 1, size=count)
    ]


@dataclass(frozen=True)
class LemmaCase:
    f: Polynomial
    theta: BlaschkeProduct


def lemma_corpus(count: int = 30, seed: int | None = None) -> list[LemmaCase]:
    """``f`` of degree <= 4 (every fifth case ``f = 1``), ``theta`` with ``N <= 5``."""
    rng = _rng(seed)
    cases = []
    for i in range(count):
        f = Polynomial.constant(1) if i % 5 == 0 else random_polynomial(rng, 4, 5)
        cases.append(LemmaCase(f, random_blaschke(rng, 5)))
    return cases


def _pool_point(rng: np.random.Generator) -> GaussianRational:
    while True:
        re, im = (int(v) for v in rng.integers(-9, 10, size=2))
        if re * re + im * im <= 81:
            return GaussianRational(Fraction(re, 10), Fraction(im, 10))


def verifier_corpus(count: int = 40, seed: int | None = None, max_n: int = 3, max_degree: int = 8) -> list[list[Polynomial]]:
    """Polynomial systems ``f_0..f_n`` for the theorem verifiers.

    Zeros come from a shared pool of Gaussian-rational points with modulus
    at most 0.9, so zero sets overlap and LCM and radical differ.  Systems
    whose sum ``f_{n+1}`` has a zero near the circle, or whose Wronskian
    vanishes, are redrawn; every kept system has at least one zero inside.
    """
    rng = _rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(1, max_n + 1))
        pool = [_pool_point(rng) for _ in range(4)]
        fs = []
        for _ in range(n + 1):
            k = int(rng.integers(0, min(4, max_degree) + 1))
            roots = [pool[int(i)] for i in rng.integers(0, len(pool), size=k)]
            fs.append(Polynomial.from_roots(roots, lead=random_gaussian_rational(rng, 5)))
        total = sum(fs[1:], fs[0])
        if total.is_zero() or total.degree > max_degree or wronskian_poly(fs).is_zero():
            continue
        if total.degree >= 1:
            if any(contains(UNIT_DISK, r) is Location.BOUNDARY_BAND for r in poly_roots(total.to_complex())):
                continue
        if all(f.is_constant() for f in fs):
            continue
        out.append(fs)
    return out


def series_systems(order: int = 40, eps: float = 0.1) -> list[list[PowerSeries]]:
    """Truncated-series systems: exponential tails on monomials.

    ``f_0 = 1`` and ``f_j = eps z^(k_j) e^z / k_j!``; the sum stays zero-free
    on the closed disk because ``eps e (e - 1) < 1``.
    """
    exp = np.array([1.0 / math.factorial(k) for k in range(order + 1)])

    def tail(k):
        c = np.zeros(order + 1)
        c[k:] = eps * exp[: order + 1 - k] / math.factorial(k)
        return PowerSeries(c, order)

    one = PowerSeries([1.0], order)
    return [
        [one, tail(2)],
        [one, tail(3)],
        [one, tail(1), tail(2)],
        [one, tail(2), tail(5)],
        [one, tail(1), tail(2), tail(3)],
    ]


def radial_family(K: int) -> BlaschkeProduct:
    """Blaschke product with simple zeros at ``1 - 2^-k``, ``k = 1..K``."""
    if K < 1:
        raise InputError("K must be positive")
    return blaschke_from_zeros(UNIT_DISK, [(1.0 - 2.0**-k, 1) for k in range(1, K + 1)])
