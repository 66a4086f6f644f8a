"""Exact polynomial algebra over the Gaussian rationals Q(i).

Everything here is exact: coefficients are stored as integer triples
``(a, b, d)`` meaning ``(a + b i) / d`` in lowest terms, so gcds, radicals
and Wronskians carry no rounding at all.  Numeric evaluation is available
through :meth:`Polynomial.__call__` for use by the analytic modules.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .errors import HypothesisViolation, InputError

__all__ = [
    "GaussianRational",
    "Polynomial",
    "MasonReport",
    "poly_gcd",
    "poly_lcm",
    "squarefree_part",
    "squarefree_decomposition",
    "distinct_zero_count",
    "wronskian_matrix",
    "wronskian_poly",
    "wronskian_derivative_poly",
    "det_cofactor",
    "det_bareiss",
    "mason_check",
    "n_theorem_check",
]


class GaussianRational:
    """An element ``re + im*i`` of Q(i), kept in canonical reduced form."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            self._a, self._b, self._d = re._a, re._b, re._d
            return
        if isinstance(re, str) and im == 0:
            parsed = GaussianRational.parse(re)
            self._a, self._b, self._d = parsed._a, parsed._b, parsed._d
            return
        x = Fraction(re)
        y = Fraction(im)
        q, s = x.denominator, y.denominator
        d = q * s // math.gcd(q, s)
        # already in lowest terms since both fractions are
        self._a = x.numerator * (d // q)
        self._b = y.numerator * (d // s)
        self._d = d

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        if d < 0:
            a, b, d = -a, -b, -d
        g = math.gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        obj = object.__new__(cls)
        obj._a, obj._b, obj._d = a, b, d
        return obj

    # -- parsing / formatting --------------------------------------------

    _NUM = r"(?:\d+/\d+|\d+\.\d*|\.\d+|\d+)"
    _PURE_IM = re.compile(rf"([+-]?)({_NUM})?[·*]?[ij]")
    _GENERAL = re.compile(rf"([+-]?{_NUM})(?:([+-])({_NUM})?[·*]?[ij])?")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"3"``, ``"-1/2"``, ``"2i"``, ``"1/2-3/4·i"``, ``"(1+i)"`` ...

        This is the coefficient format of problem files.
        """
        s = text.strip().replace(" ", "")
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        m = cls._PURE_IM.fullmatch(s)
        if m:
            mag = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            return cls(0, -mag if m.group(1) == "-" else mag)
        m = cls._GENERAL.fullmatch(s)
        if not m:
            raise InputError(f"cannot parse Gaussian rational {text!r}")
        real = Fraction(m.group(1))
        if m.group(2) is None:
            return cls(real)
        mag = Fraction(m.group(3)) if m.group(3) else Fraction(1)
        return cls(real, -mag if m.group(2) == "-" else mag)

    def __str__(self) -> str:
        re_part = str(self.re)
        if self._b == 0:
            return re_part
        im = self.im
        sign = "-" if im < 0 else "+"
        return f"{re_part}{sign}{abs(im)}·i"

    def __repr__(self) -> str:
        return f"GaussianRational({str(self)!r})"

    # -- accessors ---------------------------------------------------------

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self._a, -self._b, self._d)

    def abs_sq(self) -> Fraction:
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Rational)):
            f = Fraction(other)
            return GaussianRational._raw(f.numerator, 0, f.denominator)
        if isinstance(other, complex) and other.imag == 0:
            return GaussianRational(Fraction(other.real))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._d == o._d:
            return GaussianRational._raw(self._a + o._a, self._b + o._b, self._d)
        return GaussianRational._raw(
            self._a * o._d + o._a * self._d,
            self._b * o._d + o._b * self._d,
            self._d * o._d,
        )

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b, d = self._a, self._b, self._d
        c, e, f = o._a, o._b, o._d
        return GaussianRational._raw(a * c - b * e, a * e + b * c, d * f)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self._a * self._a + self._b * self._b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational._raw(self._d * self._a, -self._d * self._b, n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))


ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)


def _gr(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return GaussianRational.parse(x)
    if isinstance(x, complex):
        return GaussianRational(Fraction(x.real), Fraction(x.imag))
    if isinstance(x, float):
        return GaussianRational(Fraction(x))
    return GaussianRational(x)


class Polynomial:
    """Immutable polynomial in ``z`` with Gaussian-rational coefficients.

    ``coeffs[k]`` is the coefficient of ``z**k``; trailing zeros are
    stripped, so the zero polynomial has ``coeffs == ()`` and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_gr(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _from_trimmed(cls, cs) -> "Polynomial":
        obj = object.__new__(cls)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(obj, "coeffs", tuple(cs))
        return obj

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Polynomial":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "Polynomial":
        p = cls([lead])
        for r in roots:
            p = p * cls([-_gr(r), 1])
        return p

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        """Small expression parser for demos: ``"z^2-1"``, ``"3/2*z^3+(1+2i)z-7"``, ``"z^2/200"``."""
        return _parse_poly_expr(text)

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "Polynomial":
        return cls(GaussianRational.parse(s) for s in items)

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    # -- basic properties ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> GaussianRational:
        if not self.coeffs:
            return ZERO
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == Polynomial([other]).coeffs
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({self.to_strings()!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c)
            if c.im != 0:
                cs = f"({cs})"
            if k == 0:
                terms.append(cs)
            else:
                mono = "z" if k == 1 else f"z^{k}"
                terms.append(mono if cs == "1" else ("-" + mono if cs == "-1" else f"{cs}*{mono}"))
        return " + ".join(reversed(terms)).replace("+ -", "- ")

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Rational, GaussianRational)):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for k, c in enumerate(b):
            cs[k] = cs[k] + c
        return Polynomial._from_trimmed(cs)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_trimmed([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational, GaussianRational)):
            s = _gr(other)
            return Polynomial._from_trimmed([c * s for c in self.coeffs])
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return Polynomial._from_trimmed(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Polynomial([ONE])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = o.degree
        if len(rem) - 1 < db:
            return Polynomial(), self
        inv = o.lc.inverse()
        quot = [ZERO] * (len(rem) - db)
        bc = o.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c * inv
            quot[k - db] = q
            for j in range(db + 1):
                if bc[j]:
                    rem[k - db + j] = rem[k - db + j] - q * bc[j]
        return Polynomial._from_trimmed(quot), Polynomial._from_trimmed(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def derivative(self, k: int = 1) -> "Polynomial":
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [c * i for i, c in enumerate(cs)][1:]
        return Polynomial._from_trimmed(cs)

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        inv = self.lc.inverse()
        return Polynomial._from_trimmed([c * inv for c in self.coeffs])

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lc == ONE

    # -- evaluation ---------------------------------------------------------

    def to_complex(self) -> np.ndarray:
        """Coefficients (ascending) as a complex128 array."""
        if not self.coeffs:
            return np.zeros(1, dtype=complex)
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    def eval_exact(self, x) -> GaussianRational:
        x = _gr(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, z):
        """Evaluate in floating point (Horner).  Works elementwise on arrays."""
        return np.polynomial.polynomial.polyval(z, self.to_complex())

    def scale(self) -> float:
        """Largest coefficient modulus."""
        return max((abs(complex(c)) for c in self.coeffs), default=0.0)


# ---------------------------------------------------------------------------
# expression sugar

_TERM = re.compile(
    r"(?P<coef>\([^()]*\)|[0-9./]+(?:[·*]?[ij])?|[ij])?\*?(?P<var>z(?:\^(?P<exp>\d+))?)?(?:/(?P<div>\d+))?"
)


def _parse_poly_expr(text: str) -> Polynomial:
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise InputError("empty polynomial expression")
    terms = []
    depth = 0
    start = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start:
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    acc: dict[int, GaussianRational] = {}
    for term in terms:
        sign = 1
        body = term
        if body[:1] in "+-":
            sign = -1 if body[0] == "-" else 1
            body = body[1:]
        m = _TERM.fullmatch(body)
        if not body or not m or (m.group("coef") is None and m.group("var") is None):
            raise InputError(f"cannot parse polynomial term {term!r} in {text!r}")
        coef = GaussianRational.parse(m.group("coef")) if m.group("coef") else ONE
        if m.group("div"):
            coef = coef / int(m.group("div"))
        if m.group("var") is None:
            k = 0
        else:
            k = int(m.group("exp")) if m.group("exp") else 1
        acc[k] = acc.get(k, ZERO) + coef * sign
    deg = max(acc)
    return Polynomial([acc.get(k, ZERO) for k in range(deg + 1)])


# ---------------------------------------------------------------------------
# gcd and friends


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd via the Euclidean remainder sequence over Q(i).

    Each remainder is made monic before the next step, which keeps the
    rational coefficients from growing without bound.
    """
    if p.is_zero() and q.is_zero():
        raise InputError("undefined gcd")
    a, b = p.monic(), q.monic()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a


def poly_lcm(polys: Sequence[Polynomial]) -> Polynomial:
    """Monic least common multiple of nonzero polynomials."""
    result = Polynomial([ONE])
    for p in polys:
        if p.is_zero():
            raise InputError("lcm of the zero polynomial")
        g = poly_gcd(result, p)
        result = (result * p.monic()).exact_div(g)
    return result


def squarefree_part(p: Polynomial) -> Polynomial:
    """``p / gcd(p, p')`` made monic; its degree counts the distinct roots."""
    if p.is_zero():
        raise InputError("squarefree part of the zero polynomial")
    if p.is_constant():
        return Polynomial([ONE])
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: monic squarefree, pairwise coprime ``s_k`` with ``p = c * prod s_k**k``.

    Only factors of positive degree are returned.
    """
    if p.is_zero():
        raise InputError("squarefree decomposition of the zero polynomial")
    if p.is_constant():
        return []
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    k = 1
    while not b.is_constant():
        g = poly_gcd(b, d) if not d.is_zero() else b.monic()
        if not g.is_constant():
            out.append((g, k))
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        k += 1
    return out


def distinct_zero_count(p: Polynomial) -> int:
    return squarefree_part(p).degree


# ---------------------------------------------------------------------------
# determinants and Wronskians


def det_cofactor(matrix: Sequence[Sequence]):
    """Laplace expansion along the first row.  Works over any commutative ring."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * det_cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def det_bareiss(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Fraction-free (Bareiss) elimination; every division is exact."""
    m = [list(row) for row in matrix]
    n = len(m)
    sign = 1
    prev = Polynomial([ONE])
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Polynomial()
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]).exact_div(prev)
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def wronskian_matrix(fs: Sequence, rows: Sequence[int] | None = None) -> list[list]:
    """Rows are successive derivatives ``f_j^{(k)}``, k = 0..n (or the given orders)."""
    n = len(fs) - 1
    orders = range(n + 1) if rows is None else rows
    return [[f.derivative(k) if k else f for f in fs] for k in orders]


def wronskian_poly(fs: Sequence[Polynomial]) -> Polynomial:
    """Exact Wronskian determinant of ``fs``.

    Cofactor expansion for up to four functions, Bareiss elimination above
    that.  The zero polynomial signals linear dependence.
    """
    if not fs:
        raise InputError("Wronskian of an empty list")
    mat = wronskian_matrix(list(fs))
    if len(fs) <= 4:
        return det_cofactor(mat)
    return det_bareiss(mat)


def wronskian_derivative_poly(fs: Sequence[Polynomial]) -> Polynomial:
    """``W'`` as the determinant whose last row holds the (n+1)-st derivatives."""
    n = len(fs) - 1
    mat = wronskian_matrix(list(fs), rows=list(range(n)) + [n + 1])
    if len(fs) <= 4:
        return det_cofactor(mat)
    return det_bareiss(mat)


# ---------------------------------------------------------------------------
# Theorems A and B


@dataclass(frozen=True)
class MasonReport:
    holds: bool
    lhs: int
    rhs: int


def mason_check(a: Polynomial, b: Polynomial) -> MasonReport:
    """Check ``max(deg a, deg b, deg c) < N~(abc)`` for ``c = a + b``."""
    c = a + b
    if not poly_gcd(a, b).is_constant():
        raise HypothesisViolation("not relatively prime")
    if a.is_constant() and b.is_constant() and c.is_constant():
        raise HypothesisViolation("trivial input")
    lhs = max(a.degree, b.degree, c.degree)
    # a, b, c are pairwise coprime here, so N~(abc) splits over the factors;
    # this avoids a gcd on the degree-3d product
    rhs = sum(distinct_zero_count(p) for p in (a, b, c) if not p.is_zero())
    return MasonReport(holds=lhs < rhs, lhs=lhs, rhs=rhs)


def n_theorem_check(ps: Sequence[Polynomial], zero_sets: str = "pairwise") -> MasonReport:
    """Check ``max deg p_j <= n N~(p_0...p_{n+1}) - n(n+1)/2``.

    ``ps`` holds ``p_0..p_n``; ``p_{n+1}`` is formed here.  With
    ``zero_sets="common"`` only the joint intersection of all zero sets must
    be empty, and ``N~(prod)`` is replaced by ``sum_j N~(p_j)`` (the
    Gundersen-Hayman variant).
    """
    if zero_sets not in ("pairwise", "common"):
        raise InputError(f"zero_sets must be 'pairwise' or 'common', got {zero_sets!r}")
    ps = list(ps)
    n = len(ps) - 1
    if n < 1:
        raise InputError("need at least two polynomials")
    if wronskian_poly(ps).is_zero():
        raise HypothesisViolation("linearly dependent")
    full = ps + [sum(ps[1:], ps[0])]
    if zero_sets == "pairwise":
        for i, j in combinations(range(n + 2), 2):
            if not poly_gcd(full[i], full[j]).is_constant():
                raise HypothesisViolation(f"zero sets of p_{i} and p_{j} intersect")
        # pairwise coprime: N~ of the product is the sum of the N~(p_j)
        ntilde = sum(distinct_zero_count(p) for p in full)
    else:
        g = full[0]
        for p in full[1:]:
            g = poly_gcd(g, p)
        if not g.is_constant():
            raise HypothesisViolation("all zero sets share a common point")
        ntilde = sum(distinct_zero_count(p) for p in full)
    lhs = max(p.degree for p in full)
    rhs = n * ntilde - n * (n + 1) // 2
    return MasonReport(holds=lhs <= rhs, lhs=lhs, rhs=rhs)
