import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from abc_analytica.domain import UNIT_DISK, Domain, Location, affine_map, contains
from abc_analytica.errors import InputError
from abc_analytica.numeric import area_integral_disk, boundary_integral

centers = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
radii = st.floats(0.1, 10.0)
domains = st.builds(Domain, centers, radii)


def test_affine_map_examples():
    ident = affine_map(UNIT_DISK)
    z = np.array([0.3 + 0.1j, -0.5j])
    assert np.allclose(ident.forward(z), z)
    assert np.allclose(affine_map(Domain(0j, 4.0)).forward(2.0), 0.5)
    assert affine_map(Domain(1 + 0j, 2.0)).forward(3.0) == pytest.approx(1.0)


@pytest.mark.parametrize("z, loc", [(0, Location.INSIDE), (1, Location.BOUNDARY_BAND), (2, Location.OUTSIDE)])
def test_contains_examples(z, loc):
    assert contains(UNIT_DISK, z) is loc


def test_guard_band_width_is_relative():
    dom = Domain(5j, 100.0)
    assert contains(dom, 5j + 100.0 * (1 - 1e-9)) is Location.BOUNDARY_BAND
    assert contains(dom, 5j + 100.0 * (1 - 1e-7)) is Location.INSIDE


@pytest.mark.parametrize("bad", [0.0, -1.0, float("inf")])
def test_bad_radius_rejected(bad):
    with pytest.raises(InputError):
        Domain(0j, bad)


def test_domain_json_roundtrip():
    dom = Domain(1 - 2j, 0.5)
    assert Domain.from_json(dom.to_json()) == dom
    with pytest.raises(InputError):
        Domain.from_json({"radius": 1})


@given(domains)
def test_boundary_maps_to_unit_circle(dom):
    phi = affine_map(dom)
    assert np.allclose(np.abs(phi.forward(dom.boundary_points(64))), 1.0)
    assert abs(phi.forward(dom.center)) == 0


@given(domains, st.complex_numbers(max_magnitude=0.99))
def test_inverse_and_derivative(dom, w):
    phi = affine_map(dom)
    z = phi.inverse(w)
    assert phi.forward(z) == pytest.approx(w, abs=1e-12)
    assert contains(dom, z) is not Location.OUTSIDE
    h = 1e-6
    fd = (phi.forward(z + h) - phi.forward(z)) / h
    assert phi.derivative(np.array([z]))[0] == pytest.approx(fd, rel=1e-6)


@given(domains)
def test_dirichlet_integral_is_conformally_invariant(dom):
    # g = w^2 + w with w = (z - c) / R; on the unit disk sum k |c_k|^2 = 2 + 1
    c, R = dom.center, dom.radius
    dg = lambda z: (2 * (z - c) / R + 1) / R  # noqa: E731
    assert area_integral_disk(dg, dom) == pytest.approx(2 * 1 + 1 * 1, rel=1e-10)
    assert boundary_integral(lambda z: R * dg(z), dom, "L1") / R == pytest.approx(
        boundary_integral(lambda w: 2 * w + 1, UNIT_DISK, "L1"), rel=1e-10
    )
