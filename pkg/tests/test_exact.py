from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given
from hypothesis import strategies as st

from abc_analytica.errors import HypothesisViolation, InputError
from abc_analytica.exact import (
    GaussianRational,
    Polynomial,
    det_bareiss,
    det_cofactor,
    distinct_zero_count,
    mason_check,
    n_theorem_check,
    poly_gcd,
    poly_lcm,
    squarefree_decomposition,
    squarefree_part,
    wronskian_derivative_poly,
    wronskian_matrix,
    wronskian_poly,
)

Z = sp.Symbol("z")
P = Polynomial.parse


def to_sympy(p: Polynomial) -> sp.Expr:
    return sp.expand(
        sum(
            (sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(c.im.numerator, c.im.denominator))
            * Z**k
            for k, c in enumerate(p.coeffs)
        )
    )


def sympy_monic(expr) -> sp.Expr:
    poly = sp.Poly(expr, Z, extension=sp.I)
    return sp.expand(poly.monic().as_expr())


gaussian = st.builds(
    lambda a, b, d: GaussianRational(Fraction(a, d), Fraction(b, d)),
    st.integers(-6, 6),
    st.integers(-6, 6),
    st.integers(1, 4),
)
small_roots = st.lists(
    st.builds(lambda a, b: GaussianRational(a, b), st.integers(-3, 3), st.integers(-2, 2)), min_size=0, max_size=5
)
polys = st.lists(gaussian, min_size=1, max_size=6).map(Polynomial)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


# --- Gaussian rationals and parsing ---------------------------------------

def test_gaussian_rational_field_ops():
    a = GaussianRational(1, 2)
    b = GaussianRational(Fraction(1, 3), -1)
    assert a * a.inverse() == 1
    assert (a + b) - b == a
    assert a * b == GaussianRational(Fraction(1, 3) + 2, Fraction(2, 3) - 1)
    assert complex(a / b) == pytest.approx(complex(1, 2) / complex(1 / 3, -1))
    with pytest.raises(ZeroDivisionError):
        GaussianRational(0).inverse()


@pytest.mark.parametrize("text", ["3/4", "-2i", "1+2i", "-1/3-5/7i"])
def test_gaussian_rational_string_roundtrip(text):
    g = GaussianRational.parse(text)
    assert GaussianRational.parse(str(g)) == g


def test_polynomial_parser_forms():
    assert P("z^2/200") == Polynomial([0, 0, Fraction(1, 200)])
    assert P("3/2*z^3+(1+2i)z-7") == Polynomial([-7, GaussianRational(1, 2), 0, Fraction(3, 2)])
    assert P("0").is_zero() and P("0").degree == -1


@given(polys)
def test_polynomial_string_roundtrip(p):
    assert Polynomial.from_strings(p.to_strings()) == p


# --- gcd / lcm / squarefree ----------------------------------------------

def test_gcd_of_monomials_is_smaller_power():
    # the common factor of z^2 and z^3 is z^2
    assert poly_gcd(P("z^2"), P("z^3")) == P("z^2")


def test_gcd_shared_root():
    assert poly_gcd(P("z^2-1"), P("z-1")) == P("z-1")


def test_gcd_of_products():
    p = Polynomial.from_roots([1, 1, -2])
    q = Polynomial.from_roots([1, 3])
    assert poly_gcd(p, q) == P("z-1")


def test_gcd_of_zeros_undefined():
    with pytest.raises(InputError, match="undefined gcd"):
        poly_gcd(Polynomial(), Polynomial())


@given(nonzero_polys, nonzero_polys)
def test_gcd_matches_sympy(p, q):
    ours = poly_gcd(p, q)
    assert ours.is_monic()
    assert sp.expand(to_sympy(ours) - sympy_monic(sp.gcd(to_sympy(p), to_sympy(q), extension=sp.I))) == 0


@given(small_roots, small_roots)
def test_gcd_divides_and_lcm_is_multiple(r1, r2):
    p, q = Polynomial.from_roots(r1, lead=2), Polynomial.from_roots(r2, lead=GaussianRational(0, 3))
    g, L = poly_gcd(p, q), poly_lcm([p, q])
    assert (p % g).is_zero() and (q % g).is_zero()
    assert (L % p).is_zero() and (L % q).is_zero()
    assert g.degree + L.degree == p.degree + q.degree


@pytest.mark.parametrize(
    "p, expected",
    [("z^3", "z"), ("z^2+1", "z^2+1"), ("7", "1")],
)
def test_squarefree_part_simple(p, expected):
    assert squarefree_part(P(p)) == P(expected)


def test_squarefree_part_of_repeated_root():
    p = Polynomial.from_roots([1, 1, -1])
    assert squarefree_part(p) == Polynomial.from_roots([1, -1])


@pytest.mark.parametrize("p, count", [("z^5", 1), ("z^4-z^2", 3), ("7", 0)])
def test_distinct_zero_count(p, count):
    assert distinct_zero_count(P(p)) == count


def test_squarefree_of_zero_rejected():
    with pytest.raises(InputError):
        squarefree_part(Polynomial())
    with pytest.raises(InputError):
        distinct_zero_count(Polynomial())


@given(small_roots, st.integers(1, 3))
def test_squarefree_counts_distinct_roots(roots, extra):
    # multiplicities by construction: repeat the first root extra times
    p = Polynomial.from_roots(roots + roots[:1] * extra)
    assert distinct_zero_count(p) == len(set(roots))
    assert squarefree_part(squarefree_part(p)) == squarefree_part(p)


@given(nonzero_polys)
def test_squarefree_matches_sympy_sqf_degree(p):
    expected = sp.Poly(to_sympy(p), Z, extension=sp.I).sqf_part().degree() if p.degree > 0 else 0
    assert distinct_zero_count(p) == expected


@given(small_roots.filter(bool))
def test_yun_reconstructs_polynomial(roots):
    p = Polynomial.from_roots(roots, lead=3)
    parts = squarefree_decomposition(p)
    prod = Polynomial.constant(p.lc)
    for s, k in parts:
        prod = prod * s**k
    assert prod == p
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            assert poly_gcd(parts[i][0], parts[j][0]).is_constant()


# --- Wronskians -----------------------------------------------------------

def test_wronskian_examples():
    eps = Fraction(1, 10)
    fs = [Polynomial.constant(1), Polynomial.monomial(1, eps), Polynomial.monomial(2, eps / 2)]
    assert wronskian_poly(fs) == Polynomial.constant(Fraction(1, 100))
    assert wronskian_poly([P("1"), P("z")]) == P("1")
    assert wronskian_poly([P("1"), P("z"), P("z^2+z")]) == P("2")


def test_wronskian_of_dependent_functions_vanishes():
    assert wronskian_poly([P("z+1"), P("2z+2")]).is_zero()


@given(st.lists(nonzero_polys, min_size=2, max_size=4))
def test_wronskian_matches_sympy(fs):
    ours = wronskian_poly(fs)
    theirs = sp.wronskian([to_sympy(f) for f in fs], Z)
    assert sp.expand(to_sympy(ours) - theirs) == 0


@given(st.lists(nonzero_polys, min_size=2, max_size=4), st.data())
def test_wronskian_alternates_under_swaps(fs, data):
    i, j = data.draw(st.sampled_from([(a, b) for a in range(len(fs)) for b in range(a + 1, len(fs))]))
    swapped = list(fs)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert wronskian_poly(swapped) == -wronskian_poly(fs)


@given(st.lists(nonzero_polys, min_size=2, max_size=4))
def test_wronskian_degree_bound(fs):
    W = wronskian_poly(fs)
    n = len(fs) - 1
    assume(not W.is_zero())
    assert W.degree <= sum(f.degree for f in fs) - n * (n + 1) // 2


@given(st.lists(nonzero_polys, min_size=2, max_size=4))
def test_wronskian_derivative_row_rule(fs):
    assert wronskian_derivative_poly(fs) == wronskian_poly(fs).derivative()


@given(st.lists(nonzero_polys, min_size=2, max_size=4))
def test_wronskian_column_replacement_by_sum(fs):
    total = sum(fs[1:], fs[0])
    W = wronskian_poly(fs)
    for j in range(len(fs)):
        assert wronskian_poly(fs[:j] + [total] + fs[j + 1:]) == W


@given(st.lists(nonzero_polys, min_size=2, max_size=6))
def test_bareiss_agrees_with_cofactor(fs):
    mat = wronskian_matrix(fs)
    assert det_bareiss(mat) == det_cofactor(mat)


# --- Mason and the n-function version ------------------------------------

def test_mason_examples():
    r = mason_check(P("1"), P("z^2-1"))
    assert (r.lhs, r.rhs, r.holds) == (2, 3, True)
    r = mason_check(P("z^4"), P("1"))
    assert (r.lhs, r.rhs, r.holds) == (4, 5, True)


def test_mason_errors():
    with pytest.raises(HypothesisViolation, match="not relatively prime"):
        mason_check(P("z"), P("-z"))
    with pytest.raises(HypothesisViolation, match="trivial input"):
        mason_check(P("2"), P("3"))


@given(small_roots.filter(bool), small_roots.filter(bool), st.integers(3, 5))
def test_fermat_power_sums_have_many_distinct_roots(ra, rb, k):
    a, b = Polynomial.from_roots(ra), Polynomial.from_roots(rb, lead=2)
    assume(poly_gcd(a, b).is_constant())
    C = a**k + b**k
    d = max(a.degree, b.degree)
    assert mason_check(a**k, b**k).holds
    # so a^k + b^k = c^k (with N~(c) <= d) is impossible for k >= 3
    assert distinct_zero_count(C) > (k - 2) * d


@given(nonzero_polys, nonzero_polys)
def test_mason_holds_on_random_coprime_pairs(a, b):
    assume(not (a.is_constant() and b.is_constant()))
    assume(poly_gcd(a, b).is_constant())
    r = mason_check(a, b)
    assert r.holds and r.lhs < r.rhs


def test_n_theorem_examples():
    r = n_theorem_check([P("1"), P("z^2-1")])
    assert (r.lhs, r.rhs, r.holds) == (2, 2, True)
    scaled = [P("1"), P("z/10"), P("z^2/200")]
    # p_1 and p_2 share the zero 0, so only the common-zero-set mode accepts it
    with pytest.raises(HypothesisViolation, match="p_1 and p_2"):
        n_theorem_check(scaled)
    r = n_theorem_check(scaled, zero_sets="common")
    # N~ = 0 + 1 + 1 + 2 (p_3 = 1 + z/10 + z^2/200 has roots -10 +- 10i)
    assert (r.lhs, r.rhs, r.holds) == (2, 5, True)
    with pytest.raises(HypothesisViolation, match="linearly dependent"):
        n_theorem_check([P("z+1"), P("z+1"), P("z^2")])


def test_n_theorem_shared_zero_modes():
    # p_0 and p_1 share the root 0, but no point is common to all four
    ps = [P("z"), P("z^2+z"), P("1")]
    with pytest.raises(HypothesisViolation, match="intersect"):
        n_theorem_check(ps)
    r = n_theorem_check(ps, zero_sets="common")
    assert r.holds
    with pytest.raises(InputError):
        n_theorem_check(ps, zero_sets="bogus")


@given(nonzero_polys, nonzero_polys)
def test_n1_specialisation_matches_mason(a, b):
    assume(not (a.is_constant() and b.is_constant()))
    assume(poly_gcd(a, b).is_constant())
    m, r = mason_check(a, b), n_theorem_check([a, b])
    assert r.lhs == m.lhs and r.rhs == m.rhs - 1 and r.holds == m.holds
