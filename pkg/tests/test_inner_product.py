import math

import numpy as np
import pytest

from photonmodes.modes import (PlaneWaveLabel, CylindricalLabel, SphericalLabel,
                               plane_wave, cylindrical_mode, spherical_mode)
from photonmodes.inner_product import (QuadratureSpec, WavePacket, Superposition,
                                       inner, inner_field_strength_form, current,
                                       GaussianBumpScalar, gauge_shift,
                                       bessel_overlap, bessel_overlap_closed_form,
                                       smeared_radial_delta, discrete_orthonormality,
                                       averaged_oscillatory_integral,
                                       damped_oscillatory_integral)
from photonmodes.errors import NonConvergenceError
from photonmodes import fdiff


PACKET_QUAD = QuadratureSpec(r_max=50.0, n_r=128, n_theta=8, n_phi=8)


@pytest.fixture(scope="module")
def packet():
    return WavePacket(l=1, m=0, s=+1, center=1.0, width=0.2, n_nodes=48)


# ---------------------------------------------------------------------------
# Current
# ---------------------------------------------------------------------------

def test_current_positive_density_for_plane_wave():
    mode = plane_wave(PlaneWaveLabel((0.2, -0.4, 0.7), +1))
    t, x, y, z = np.array([0.1]), np.array([0.5]), np.array([0.3]), np.array([-0.2])
    j = current(mode, mode, t, x, y, z)
    assert np.abs(j[..., 0].imag).max() < 1e-18
    assert j[..., 0].real.min() > 0


def test_current_zero_field():
    mode = plane_wave(PlaneWaveLabel((0.0, 0.0, 1.0), +1))
    zero = Superposition([(0.0, mode)])
    j = current(mode, zero, 0.0, np.array([0.4]), np.array([0.1]), np.array([0.2]))
    assert np.abs(j).max() == 0.0


def test_current_conservation_fd():
    m1 = cylindrical_mode(CylindricalLabel(1.2, 0.5, 1, +1))
    m2 = spherical_mode(SphericalLabel(1.0, 1, 0, +1))
    pts = (np.array([0.1]), np.array([1.0]), np.array([0.6]), np.array([0.8]))

    def jf(t, x, y, z):
        return current(m1, m2, t, x, y, z)

    div = None
    for mu, sign in ((0, 1.0), (1, -1.0), (2, -1.0), (3, -1.0)):
        term = sign * fdiff.partial(jf, pts, mu, 0.01)[..., mu]
        div = term if div is None else div + term
    assert np.abs(div).max() < 1e-6 * np.abs(jf(*pts)).max()


# ---------------------------------------------------------------------------
# Packet norms and sesquilinearity
# ---------------------------------------------------------------------------

def test_packet_norm_matches_g_squared(packet):
    val = inner(packet, packet, PACKET_QUAD)
    expected = packet.norm_expected()
    assert abs(val.imag) < 1e-10
    assert abs(val.real - expected) < 1e-3 * expected


def test_packet_norm_slice_independent(packet):
    v0 = inner(packet, packet, PACKET_QUAD).real
    v1 = inner(packet, packet, QuadratureSpec(r_max=50.0, n_r=128, n_theta=8,
                                              n_phi=8, t_slice=1.0)).real
    assert abs(v1 - v0) < 1e-3 * v0


def test_inner_positivity_and_sesquilinearity(packet, rng):
    other = WavePacket(l=1, m=1, s=-1, center=1.1, width=0.2, n_nodes=48)
    a, b = 0.8 - 0.3j, -0.4 + 0.9j
    sup = Superposition([(a, packet), (b, other)])
    norm = inner(sup, sup, PACKET_QUAD)
    assert norm.real > 0
    third = WavePacket(l=2, m=0, s=+1, center=0.95, width=0.18, n_nodes=48)
    lhs = inner(sup, third, PACKET_QUAD)
    rhs = (np.conj(a) * inner(packet, third, PACKET_QUAD)
           + np.conj(b) * inner(other, third, PACKET_QUAD))
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


def test_kronecker_sector_orthogonality(packet):
    other_m = WavePacket(l=1, m=1, s=+1, center=1.0, width=0.2, n_nodes=48)
    other_s = WavePacket(l=1, m=0, s=-1, center=1.0, width=0.2, n_nodes=48)
    nrm = packet.norm_expected()
    assert abs(inner(packet, other_m, PACKET_QUAD)) < 1e-10 * nrm
    assert abs(inner(packet, other_s, PACKET_QUAD)) < 1e-10 * nrm


def test_inner_error_estimate_and_nonconvergence():
    mode = plane_wave(PlaneWaveLabel((0.0, 0.0, 1.0), +1))
    spec = QuadratureSpec(chart="cartesian", box_half=3.0, n_box=24)
    val, err = inner(mode, mode, spec, return_error=True)
    assert err < 1e-6 * abs(val)
    wild = plane_wave(PlaneWaveLabel((0.0, 0.0, 40.0), +1))
    wild2 = plane_wave(PlaneWaveLabel((40.0, 0.0, 0.0), +1))
    with pytest.raises(NonConvergenceError):
        inner(wild, wild2, QuadratureSpec(chart="cartesian", box_half=3.0, n_box=5,
                                          tol=1e-9), return_error=True)


# ---------------------------------------------------------------------------
# Gauge transformations
# ---------------------------------------------------------------------------

def test_gauge_shift_constant_lambda_is_identity():
    mode = plane_wave(PlaneWaveLabel((0.0, 0.3, 0.9), +1))
    lam = GaussianBumpScalar(center=(0, 0, 0), width=math.inf, c0=3.0)
    shifted = gauge_shift(mode, lam)
    pts = (0.1, 0.4, -0.2, 0.6)
    assert np.allclose(shifted.evaluate(*pts), mode.evaluate(*pts))
    assert np.abs(lam.gradient(*pts)).max() == 0.0


def test_gauge_invariance_of_field_strength_form(rng):
    box = QuadratureSpec(chart="cartesian", box_half=6.5, n_box=64)
    la = PlaneWaveLabel((0.0, 0.0, 1.2), +1)
    lb = PlaneWaveLabel((0.0, 0.3, 0.9), +1)
    base = inner_field_strength_form(plane_wave(la), plane_wave(lb), box)
    lam = GaussianBumpScalar(center=(0.2, -0.3, 0.1), width=0.8, c0=1.1,
                             linear=(0.3, -0.2, 0.4))
    shifted = gauge_shift(plane_wave(lb), lam)
    val = inner_field_strength_form(plane_wave(la), shifted, box)
    assert abs(val - base) < 1e-8 * abs(base)
    # while the Coulomb gauge is violated: div(A + grad L) = laplacian(L) != 0
    hess = lam.hessian(0.0, 0.2, -0.3, 0.1)
    lap = hess[1, 1] + hess[2, 2] + hess[3, 3]
    assert abs(lap) > 1e-3


# ---------------------------------------------------------------------------
# Bessel overlap tables (both regularizations)
# ---------------------------------------------------------------------------

def test_overlap_equal_argument_cross():
    # int_0^inf J_{1/2}(r) J_{3/2}(r) dr = 1/2
    spec = QuadratureSpec(tail="averaged")
    got = bessel_overlap("sph_cross", 1, 1.0, 1.0, spec)
    assert abs(got - 0.5) < 1e-3


def test_overlap_ordered_cross_zero():
    # J_{l-1/2} with the larger momentum: the integral vanishes
    spec = QuadratureSpec(tail="averaged")
    got = bessel_overlap("sph_cross", 1, 2.0, 1.0, spec)
    assert abs(got) < 1e-3


def test_overlap_tables_both_methods():
    ospec = QuadratureSpec(tail="averaged")
    dspec = QuadratureSpec(tail="damped")
    for kind, order, k1, k2 in (("sph_inv_r", 1, 1.0, 2.0), ("sph_inv_r", 2, 1.0, 1.0),
                                ("sph_cross", 1, 1.0, 2.0), ("sph_cross", 2, 0.7, 0.7)):
        cf = bessel_overlap_closed_form(kind, order, k1, k2)
        va = bessel_overlap(kind, order, k1, k2, ospec)
        vd = bessel_overlap(kind, order, k1, k2, dspec)
        scale = max(k1, k2)
        assert abs(va - cf) * scale < 1e-3
        assert abs(vd - cf) * scale < 1e-3
        assert abs(va - vd) * scale < 5e-4


def test_smeared_delta_rows():
    spec = QuadratureSpec(tail="averaged")
    num, want = smeared_radial_delta("cyl_rho", 2, 1.0, 1.05, 0.05, spec)
    assert abs(num - want) < 0.02 * abs(want)
    num, want = smeared_radial_delta("sph_r", 1, 1.0, 1.05, 0.05, spec)
    assert abs(num - want) < 0.02 * abs(want)


def test_regularization_consistency_simple_integrand():
    # both tail handlers reproduce int_0^inf e^{-r/20} cos(r) dr exactly enough
    spec = QuadratureSpec()
    f = lambda r: np.exp(-r / 20.0) * np.cos(r)
    want = (1.0 / 20.0) / ((1.0 / 20.0) ** 2 + 1.0)
    assert abs(averaged_oscillatory_integral(f, [1.0], spec) - want) < 1e-6
    assert abs(damped_oscillatory_integral(f, [1.0], spec) - want) < 1e-5


# ---------------------------------------------------------------------------
# Gram matrices
# ---------------------------------------------------------------------------

GRAM_QUAD = QuadratureSpec(tail_r0=300.0, tail_rounds=4)


def test_gram_spherical_sector():
    g = discrete_orthonormality("spherical", {"p0": 1.0}, {"l_max": 2}, GRAM_QUAD)
    assert len(g.labels) == 16          # (2l+1) summed over l=1,2, times two helicities
    assert np.allclose(np.diag(g.matrix), 1.0)
    assert g.max_offdiag < 1e-8


def test_gram_cylindrical_sector_and_helicity_blocks():
    g = discrete_orthonormality("cylindrical", {"p0": 1.0, "pz": 0.3},
                                {"m_max": 2}, GRAM_QUAD)
    assert g.max_offdiag < 1e-8
    for i, (m, s) in enumerate(g.labels):
        for j, (mp, sp_) in enumerate(g.labels):
            if s != sp_ and m == mp:
                assert abs(g.matrix[i, j]) < 1e-8


def test_gram_single_label():
    g = discrete_orthonormality("cylindrical", {"p0": 1.0, "pz": 0.0},
                                {"m_max": 0}, GRAM_QUAD)
    # a single m with two helicities: 2x2, unit diagonal
    assert g.matrix.shape == (2, 2)
    assert np.allclose(np.diag(g.matrix), 1.0)
