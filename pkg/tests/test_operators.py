import math

import numpy as np
import pytest

from photonmodes.modes import (PlaneWaveLabel, CylindricalLabel, SphericalLabel,
                               plane_wave, cylindrical_mode, spherical_mode,
                               field_strength, sample_grid, GridSpec)
from photonmodes.operators import (P_lower, P_upper, L1, L2, L3, L_plus,
                                   L_minus, lie_derivative, angular_momentum_squared,
                                   helicity_dual, dalembertian_residual,
                                   divergence_residual, bracket, expected_bracket,
                                   commutator_check, check_all_brackets,
                                   pauli_lubanski_residual, eigen_residual,
                                   DualField,
                                   lie_derivative_tensor2)
from photonmodes.errors import AsymmetryError, StencilError
from photonmodes.validation import _dyad_field


# ---------------------------------------------------------------------------
# Lie derivatives
# ---------------------------------------------------------------------------

def test_p0_eigenvalue_plane_wave():
    mode = plane_wave(PlaneWaveLabel((0.0, 0.0, 2.0), +1))
    pts = (0.1, 0.4, -0.2, 0.7)
    a = mode.evaluate(*pts)
    for method in ("analytic", "fd"):
        lv = lie_derivative(P_upper(0), mode, *pts, method=method)
        tol = 1e-12 if method == "analytic" else 1e-7
        assert np.abs(lv - 2.0 * a).max() < tol * np.abs(a).max()


def test_l3_annihilates_cylindrical_dyads():
    f = _dyad_field("cylindrical", "eps_minus")
    fz = _dyad_field("cylindrical", "axial")
    pts = (0.0, 1.1, 0.6, 0.4)
    for field in (f, fz):
        lv = lie_derivative(L3(), field, *pts, h=0.004, method="fd")
        assert np.abs(lv).max() < 1e-8
    # and P0, P3 trivially
    for xi in (P_upper(0), P_upper(3)):
        assert np.abs(lie_derivative(xi, f, *pts, h=0.004, method="fd")).max() < 1e-8


def test_ladder_action_on_spherical_dyads():
    # Lie_{L+-} eps-(spherical) = csc(theta) e^{+-i phi} eps-; the csc factor
    # is required by the composite action on A_a (it produces the
    # e^{+-i phi} csc(theta) A_-+ terms of the component decomposition)
    pts = (0.0, 0.9, 0.5, 1.2)
    r = math.sqrt(sum(c * c for c in pts[1:]))
    csc = r / math.hypot(pts[1], pts[2])
    phi = math.atan2(pts[2], pts[1])
    for pm, xi in ((+1, L_plus()), (-1, L_minus())):
        factor = csc * np.exp(1j * pm * phi)
        f = _dyad_field("spherical", "eps_minus")
        ref = f(*pts)
        lv = lie_derivative(xi, f, *pts, h=0.004, method="fd")
        assert np.abs(lv - factor * ref).max() < 1e-7
        g = _dyad_field("spherical", "eps_plus")
        refg = g(*pts)
        lvg = lie_derivative(xi, g, *pts, h=0.004, method="fd")
        assert np.abs(lvg + factor * refg).max() < 1e-7
        fr = _dyad_field("spherical", "axial")
        assert np.abs(lie_derivative(xi, fr, *pts, h=0.004, method="fd")).max() < 1e-8


def test_angular_momentum_squared_eigenvalues():
    pts = (np.array([0.1]), np.array([0.8]), np.array([-0.5]), np.array([0.9]))
    for l in (1, 2):
        mode = spherical_mode(SphericalLabel(1.0, l, 0, +1))
        a = mode.evaluate(*pts)
        l2 = angular_momentum_squared(mode, *pts, h=0.008)
        assert np.abs(l2 - l * (l + 1) * a).max() < 1e-6 * np.abs(a).max()


def test_l3_twice_on_m3_mode():
    mode = cylindrical_mode(CylindricalLabel(1.1, 0.2, 3, +1))
    pts = (np.array([0.0]), np.array([1.2]), np.array([0.4]), np.array([0.3]))
    from photonmodes.operators import LieField
    once = LieField(L3(), mode, h=0.008)
    twice = lie_derivative(L3(), once, *pts, h=0.008, method="fd")
    a = mode.evaluate(*pts)
    assert np.abs(twice - 9.0 * a).max() < 1e-5 * np.abs(a).max()


# ---------------------------------------------------------------------------
# Helicity dual
# ---------------------------------------------------------------------------

def test_dual_involution(rng):
    for _ in range(100):
        g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        f = g - g.T
        assert np.abs(helicity_dual(helicity_dual(f)) - f).max() < 1e-12 * np.abs(f).max()


def test_dual_eigenvalue_and_zero():
    mode = plane_wave(PlaneWaveLabel((0.0, 0.0, 1.0), +1))
    f = field_strength(mode, 0.0, 0.2, 0.3, 0.4)
    assert np.abs(helicity_dual(f) - f).max() < 1e-10 * np.abs(f).max()
    assert np.abs(helicity_dual(np.zeros((4, 4)))).max() == 0.0


def test_dual_asymmetry_guard(rng):
    bad = rng.normal(size=(4, 4))
    with pytest.raises(AsymmetryError):
        helicity_dual(bad + bad.T + 0.1)


# ---------------------------------------------------------------------------
# Grid residual operators
# ---------------------------------------------------------------------------

class _Manufactured:
    """A = (x^1)^2 (dz)_a: Box A = -2 (dz)_a, not a Maxwell solution."""

    p0 = 1.0
    label = None

    def evaluate(self, t, x, y, z):
        t, x, y, z = np.broadcast_arrays(*(np.asarray(c, float) for c in (t, x, y, z)))
        out = np.zeros(t.shape + (4,), dtype=complex)
        out[..., 3] = x**2
        return out


class _ManufacturedDiv:
    """A = x^1 (dx^1)_a: div A = eta^{11} d_1 x = -1."""

    p0 = 1.0
    label = None

    def evaluate(self, t, x, y, z):
        t, x, y, z = np.broadcast_arrays(*(np.asarray(c, float) for c in (t, x, y, z)))
        out = np.zeros(t.shape + (4,), dtype=complex)
        out[..., 1] = x
        return out


def _small_grid(mode, h=0.02, n=8, center=(0.5, 0.4, 0.6)):
    ext = h * (n - 1)
    cx, cy, cz = center
    return sample_grid(mode, GridSpec(
        t=(-ext / 2, ext / 2, n), x=(cx, cx + ext, n),
        y=(cy, cy + ext, n), z=(cz, cz + ext, n)))


def test_dalembertian_detects_nonzero_box():
    grid = _small_grid(_Manufactured())
    # Box (x^2 dz) = -2 dz; amplitude |A| ~ max(x^2) on the grid
    rep = dalembertian_residual(grid)
    expect = 2.0 / np.abs(grid.values).max()
    assert rep.residual == pytest.approx(expect, rel=1e-8)


def test_dalembertian_zero_field():
    grid = _small_grid(_Manufactured())
    grid.values = np.zeros_like(grid.values)
    assert dalembertian_residual(grid).residual == 0.0


def test_divergence_detects_sign():
    grid = _small_grid(_ManufacturedDiv())
    rep = divergence_residual(grid)
    expect = 1.0 / np.abs(grid.values).max()
    assert rep.residual == pytest.approx(expect, rel=1e-8)


def test_stencil_underflow_error():
    mode = plane_wave(PlaneWaveLabel((0.0, 0.0, 1.0), +1))
    grid = sample_grid(mode, GridSpec(t=(0, 0.03, 4), x=(0, 0.07, 8),
                                      y=(0, 0.07, 8), z=(0, 0.07, 8)))
    with pytest.raises(StencilError):
        dalembertian_residual(grid)


def test_mode_residuals_small():
    for mode in (plane_wave(PlaneWaveLabel((0.5, -0.3, 0.9), -1)),
                 cylindrical_mode(CylindricalLabel(1.2, 0.4, 1, +1))):
        grid = _small_grid(mode, h=0.01, n=10, center=(0.8, 0.6, 0.5))
        assert dalembertian_residual(grid).residual < 1e-6
        rep = divergence_residual(grid)
        assert rep.residual < 1e-6 and rep.extra["a0_max"] < 1e-12


# ---------------------------------------------------------------------------
# Brackets
# ---------------------------------------------------------------------------

def test_basic_brackets():
    assert expected_bracket("P1", "P2") == {}
    got = bracket(P_lower(1), P_lower(2))
    assert np.abs(got.const).max() == 0 and np.abs(got.lin).max() == 0
    # [L1, L2] = i L3 (specialization of the M-M relation)
    lhs = bracket(L1(), L2())
    l3 = L3()
    assert np.array_equal(lhs.lin, 1j * l3.lin)
    assert np.array_equal(lhs.const, 1j * l3.const)
    # [P0, L3] = 0: consistency of the cylindrical complete set
    got = bracket(P_lower(0), L3())
    assert np.abs(got.const).max() == 0 and np.abs(got.lin).max() == 0


def test_all_structure_constants():
    assert check_all_brackets() == 45


def test_commutator_check_single():
    out = commutator_check("P1", "M12")
    # [P_1, M_12] = i eta_11 P_2 = -i P_2
    assert out == {"P2": -1j}


# ---------------------------------------------------------------------------
# Composite identities
# ---------------------------------------------------------------------------

def test_pauli_lubanski_identity():
    mode = spherical_mode(SphericalLabel(1.0, 1, 0, +1))
    res = pauli_lubanski_residual(mode, np.array([0.1]), np.array([0.9]),
                                  np.array([-0.4]), np.array([0.8]), h=0.01)
    assert res < 1e-6


def test_dual_field_translation_eigenvalues():
    mode = cylindrical_mode(CylindricalLabel(1.3, 0.5, 2, +1))
    dual = DualField(mode)
    pts = (np.array([0.2]), np.array([1.0]), np.array([0.5]), np.array([0.7]))
    ref = dual.evaluate(*pts)
    lt = lie_derivative_tensor2(P_upper(0), dual.evaluate, *pts, h=0.01)
    assert np.abs(lt - 1.3 * ref).max() < 1e-6 * np.abs(ref).max()


def test_eigen_residual_definition():
    a = np.array([1.0, 2.0])
    res = eigen_residual(2.0 * a, a, 2.0)
    assert res.residual == 0.0
    res = eigen_residual(2.0 * a + 0.1, a, 2.0)
    assert res.residual == pytest.approx(np.linalg.norm([0.1, 0.1]) / np.linalg.norm(a))
