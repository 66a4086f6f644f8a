import json
import math
import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abc_analytica.blaschke import blaschke_from_zeros
from abc_analytica.corpus import radial_family, series_systems, verifier_corpus
from abc_analytica.domain import UNIT_DISK, Domain
from abc_analytica.errors import HypothesisViolation, InputError, ZeroNearBoundaryError
from abc_analytica.exact import GaussianRational, Polynomial
from abc_analytica.numeric import PowerSeries
from abc_analytica.verifiers import (
    VerificationReport,
    build_system,
    check_divisibility,
    example_system,
    inner_system,
    limit_demo,
    monomial_bracket,
    r_alpha,
    run_example,
    verify_carleson_formula,
    verify_dalpha_comparability,
    verify_prop3,
    verify_theorem1,
    verify_theorem2,
    verify_theorem4,
    verify_vs_inequality,
)

P = Polynomial.parse
ZETA = UNIT_DISK.boundary_points(1024)


def zero_set(B):
    return sorted((complex(round(w.real, 12), round(w.imag, 12)), m) for w, m in B.zeros)


@pytest.fixture(scope="module")
def corpus_systems():
    return [build_system(fs) for fs in verifier_corpus(40, seed=1)]


# --- system assembly -------------------------------------------------------

def test_example1_system_structure():
    sys = example_system(1, n=2, eps=0.1)
    assert [zero_set(B) for B in sys.Bs] == [[], [(0j, 1)], [(0j, 2)], []]
    assert zero_set(sys.bigB) == [(0j, 2)] and zero_set(sys.calB) == [(0j, 1)]
    assert sys.W == Polynomial.constant(Fraction(1, 100))
    assert sys.diagnostics["self_tests"] == ["derivative_routes_agree", "column_replacement_invariant"]


def test_example2_system_structure():
    sys = example_system(2, n=2, eps=0.25, m=5)
    assert zero_set(sys.bigB) == [(0j, 5)] and zero_set(sys.calB) == [(0j, 1)]
    assert sys.W.degree == 3 and all(not c for c in sys.W.coeffs[:3])


def test_boundary_zero_of_sum_is_rejected():
    with pytest.raises(ZeroNearBoundaryError, match="f_2"):
        build_system([P("1"), P("z-2")])


def test_dependent_inputs_rejected():
    with pytest.raises(HypothesisViolation, match="linearly dependent"):
        build_system([P("z+1"), P("3z+3")])
    with pytest.raises(InputError):
        build_system([P("z")])


def test_series_with_unconfirmed_finite_zero_set_rejected():
    # truncations of sum (z / 0.8)^k have zeros on |z| = 0.8 whose number grows
    # with the order: no finite zero set is confirmed
    order = 40
    geo = PowerSeries(0.8 ** -np.arange(order + 1.0), order)
    with pytest.raises(HypothesisViolation, match="finitely many zeros"):
        build_system([PowerSeries([1.0], order), geo])


def test_identically_zero_series_rejected():
    with pytest.raises(HypothesisViolation):
        build_system([PowerSeries([1.0], 8), PowerSeries([0.0], 8)])


# --- divisibility ----------------------------------------------------------

def test_divisibility_examples():
    d1 = check_divisibility(example_system(1, n=2, eps=0.1))
    assert d1.exact and np.allclose(d1.F(ZETA), 0.01)
    d2 = check_divisibility(example_system(2))
    vals = d2.F(ZETA)
    assert np.allclose(vals, vals[0]) and abs(vals[0]) > 0
    d3 = check_divisibility(build_system([P("1"), P("z^2/8")]))
    assert np.allclose(d3.F(ZETA), 0.25)
    assert np.allclose(d3.F(np.array([0.0, 0.3j])), 0.25)


def test_divisibility_on_corpus(corpus_systems):
    for sys in corpus_systems:
        d = check_divisibility(sys)
        assert d.ok and d.exact
        assert np.max(np.abs(np.abs(d.F(ZETA)) - np.abs(sys.W(ZETA)))) <= 1e-8 * max(1.0, np.max(np.abs(sys.W(ZETA))))


def test_divisibility_on_series_systems():
    for fs in series_systems():
        sys = build_system(fs)
        d = check_divisibility(sys)
        assert d.ok and not d.exact and d.residual <= 1e-8
        assert np.max(np.abs(np.abs(d.F(ZETA)) - np.abs(sys.W(ZETA)))) <= 1e-8


# --- Theorems 1, 2 and Proposition 3 --------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_example1_equalities(n):
    sys = example_system(1, n=n)
    for r in (verify_theorem1(sys), verify_theorem2(sys), verify_prop3(sys, variant="a"), verify_prop3(sys, variant="b")):
        assert r.status == "equality" and r.lhs == n and abs(r.slack) <= 1e-6


def test_example2_equalities():
    sys = example_system(2, n=2, m=5, eps=0.25)
    for r in (verify_theorem1(sys), verify_theorem2(sys), verify_prop3(sys, variant="a"), verify_prop3(sys, variant="b")):
        assert r.status == "equality" and r.lhs == 5 and r.rhs == pytest.approx(5, abs=1e-6)


def test_run_example_pairs_and_range_checks():
    t1, t2 = run_example(1, n=2, eps=0.1)
    assert t1.lhs == t2.lhs == 2
    t1, t2 = run_example(2, n=2, m=5, eps=0.25)
    assert t1.lhs == t2.lhs == 5
    with pytest.raises(InputError, match="ε must satisfy ε<e"):
        run_example(1, n=2, eps=0.5)
    with pytest.raises(InputError, match="1/e"):
        run_example(2, eps=0.5)
    with pytest.raises(InputError, match="m must exceed n"):
        run_example(2, n=3, m=3)


small = st.builds(
    lambda a, b: GaussianRational(Fraction(a, 10), Fraction(b, 10)), st.integers(-4, 4), st.integers(-4, 4)
)


@settings(max_examples=15, deadline=None)
@given(st.lists(small, min_size=6, max_size=6))
def test_perturbed_example2_still_holds(shifts):
    # move the zeros of f_1 and f_2 off the origin, keeping them well inside
    eps = Fraction(1, 4)
    f1 = Polynomial.from_roots(shifts[:1], lead=eps)
    f2 = Polynomial.from_roots(shifts[1:], lead=eps / 120)
    try:
        sys = build_system([P("1"), f1, f2])
    except HypothesisViolation:
        return
    for r in (verify_theorem1(sys), verify_theorem2(sys)):
        assert r.ok and r.slack > -1e-6


def test_disjoint_zero_sets_decompose():
    # f_3 = z^2 + 3z + 3/4 has roots near -0.275 and -2.72: five simple zeros inside
    fs = [P("z-1/2"), P("2z+1"), P("z^2+1/4")]
    sys = build_system(fs)
    assert sys.bigB.N == sum(B.N for B in sys.Bs) == sys.calB.N == 5
    for r in (verify_theorem1(sys), verify_theorem2(sys)):
        assert r.counts["N_bigB"] == r.counts["sum_N_fj"]
        assert r.counts["N_calB"] == r.counts["sum_distinct_fj"]
        assert r.ok
    t2 = verify_theorem2(sys)
    f = t2.functionals
    assert t2.rhs == pytest.approx(f.kappa + sys.n * f.mu * t2.counts["sum_distinct_fj"])


def test_corpus_never_fails(corpus_systems):
    seen = set()
    for sys in corpus_systems:
        for r in (verify_theorem1(sys), verify_theorem2(sys), verify_prop3(sys, variant="a"), verify_prop3(sys, variant="b")):
            seen.add(r.status)
            assert r.status in ("holds", "equality")
    assert "holds" in seen


def test_series_systems_satisfy_prop3():
    for fs in series_systems():
        sys = build_system(fs)
        assert sys.path == "series"
        for variant in ("a", "b"):
            r = verify_prop3(sys, variant=variant)
            assert r.ok
            assert "finiteness" in r.diagnostics


def test_boundary_vanishing_W_is_reported():
    # W = f_1' = 1 - z^2 vanishes at +-1 while every f_j is zero-free near the circle
    sys = build_system([P("3"), P("z-z^3/3")])
    r = verify_theorem1(sys)
    assert r.status == "hypothesis_violated" and "vanishes" in r.diagnostics["reason"]


def test_prop3_requires_unit_disk():
    sys = example_system(1, n=1, domain=Domain(0j, 0.5), eps=0.1)
    with pytest.raises(InputError):
        verify_prop3(sys)


def test_report_json_handles_nonfinite():
    r = VerificationReport("x", "holds", 1.0, math.inf, diagnostics={"v": math.nan})
    out = json.loads(json.dumps(r.to_dict()))
    assert out["rhs"] == "inf" and out["diagnostics"]["v"] == "nan"


# --- Theorem 4 ------------------------------------------------------------

def test_theorem4_example2_closed_form():
    for alpha in (0.25, 0.5, 0.75):
        r = verify_theorem4(example_system(2), alpha)
        assert r.status == "holds"
        assert r.diagnostics["implied_c"] == pytest.approx((3**alpha + 2) / 5**alpha, rel=1e-12)


def test_theorem4_single_zero_system():
    sys = build_system([P("1"), P("z/2")])
    r = verify_theorem4(sys, 0.5)
    assert r.diagnostics["implied_c"] == pytest.approx(r.functionals.lambda_alpha_sq + 1 * r.functionals.mu**2)


@pytest.mark.parametrize("K", [5, 10, 15])
def test_theorem4_radial_family(K):
    r = verify_theorem4(inner_system(radial_family(K)), 0.5)
    c = r.diagnostics["implied_c"]
    assert r.status == "holds" and math.isfinite(c) and c > 0
    assert r.diagnostics["R_alpha_W_calB_n"] >= -1e-8


def test_theorem4_input_checks():
    sys = example_system(2)
    for bad in (0.0, 1.0):
        with pytest.raises(InputError):
            verify_theorem4(sys, bad)
    with pytest.raises(InputError):
        inner_system(radial_family(2), c=0.5)


@settings(max_examples=20, deadline=None)
@given(
    st.lists(st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False), min_size=1, max_size=5),
    st.sampled_from([0.25, 0.5, 0.75]),
)
def test_r_alpha_is_nonnegative(cs, alpha):
    theta = blaschke_from_zeros(UNIT_DISK, [(0.5, 1), (-0.3j, 2)])
    assert r_alpha(PowerSeries(cs, 16), theta, alpha) >= -1e-8


# --- comparability --------------------------------------------------------

@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
def test_comparability_for_z(alpha):
    r = verify_dalpha_comparability(blaschke_from_zeros(UNIT_DISK, [(0, 1)]), alpha)
    assert r.lhs == pytest.approx(1)
    assert r.rhs == pytest.approx(1 / (1 - alpha), rel=1e-10)
    assert r.diagnostics["ratio"] == pytest.approx(1 - alpha, rel=1e-10)


def test_comparability_for_z_squared():
    r = verify_dalpha_comparability(blaschke_from_zeros(UNIT_DISK, [(0, 2)]), 0.5)
    assert r.lhs == pytest.approx(math.sqrt(2))
    assert r.diagnostics["area_quadrature"] == pytest.approx(r.rhs, rel=1e-6)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
def test_radial_comparability_ratios_stay_bracketed(alpha):
    lo, hi = monomial_bracket(alpha)
    ratios = [verify_dalpha_comparability(radial_family(K), alpha).diagnostics["ratio"] for K in range(1, 11)]
    assert all(lo / 2 <= q <= 2 * hi for q in ratios)
    assert max(ratios) / min(ratios) < 2


def test_monomial_bracket_endpoints():
    lo, hi = monomial_bracket(0.5)
    assert hi == pytest.approx(0.5)
    assert lo == pytest.approx(0.5 / math.gamma(0.5), rel=1e-3)


# --- lemmas ---------------------------------------------------------------

@pytest.mark.parametrize(
    "f, zeros, expected",
    [("1", [(0, 3)], 3.0), ("z", [(0, 1)], 2.0), ("1+z", [(0.5, 1)], None)],
)
def test_carleson_examples(f, zeros, expected):
    r = verify_carleson_formula(f, blaschke_from_zeros(UNIT_DISK, zeros))
    assert r.status == "equality"
    if expected is not None:
        assert r.lhs == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize(
    "f, zeros, status",
    [("1", [(0, 4)], "equality"), ("z+2", [(0, 1)], "holds"), ("1", [(0.5, 1)], "equality")],
)
def test_vs_examples(f, zeros, status):
    r = verify_vs_inequality(f, blaschke_from_zeros(UNIT_DISK, zeros))
    assert r.status == status


# --- limit demo -----------------------------------------------------------

def test_limit_demo_examples():
    t = limit_demo(P("z^3+1"), (2, 10))
    row = t.rows[-1]
    assert row["kappa"] == pytest.approx(3000 / 999, rel=1e-10)
    assert row["mu"] == pytest.approx(1001 / 999, rel=1e-10)
    for r in limit_demo(P("4"), (1, 3)).rows:
        assert r["kappa"] == 0 and r["mu"] == 1
    for r in limit_demo(P("5z^2"), (1, 3, 7)).rows:
        assert r["kappa"] == pytest.approx(2, rel=1e-12) and r["mu"] == pytest.approx(1, abs=1e-12)


def test_limit_demo_skips_bad_radius_and_bounds_tail():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        t = limit_demo(P("z-2"), (2, 5, 10, 50))
    assert t.skipped == [2.0] and caught
    tails = [r["R_times_kappa_minus_m"] for r in t.rows]
    assert max(abs(x) for x in tails) < 10
    assert t.to_csv().splitlines()[0] == "R,kappa,mu,R_times_kappa_minus_m"
