"""The conserved-current inner product, wave packets and overlap integrals.

On the Coulomb-gauge solution space the inner product is the constant-time
slice integral of the current

    j'_a[A, A'] = i [ (d_a conj(A)_b) A'^b - conj(A)^b d_a A'_b ],

    (A, A') = int_Sigma j'_0 d^3x.

Because every field here is a positive-energy eigen- or wave-packet field,
the time derivatives entering j'_0 are taken analytically; the spatial
quadrature is a tensor rule on a truncated slice (Gauss-Legendre radially
and in cos(theta), uniform in phi -- exact for the trigonometric angular
content of the harmonics).

Radial overlap integrals of Bessel products are conditionally convergent;
they are regularized two independent ways and both must agree:

- 'averaged': truncation at R plus iterated two-point (Cesaro-style)
  averaging of partial sums at half-period lags of each beat frequency,
- 'damped':   exponential damper exp(-eta r) with Richardson extrapolation
  eta -> 0 over (eta, eta/2, eta/4).

Delta-normalization in the continuous labels is always verified through
square-integrable wave packets or Gaussian-smeared overlaps, never by
pointwise evaluation of a distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field, replace

import numpy as np

from .errors import NonConvergenceError
from .charts import ETA_DIAG
from .harmonics import bessel_j
from .modes import SphericalLabel, CylindricalLabel, spherical_mode, sph_radial_profiles
from .harmonics import sph_harmonic_values

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# Quadrature specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureSpec:
    """Slice-quadrature and oscillatory-tail parameters.

    chart selects the slice rule ('spherical' ball of radius r_max or
    'cartesian' box of half-width box_half); tail selects the radial
    regularization for overlap integrals."""

    chart: str = "spherical"
    t_slice: float = 0.0
    r_max: float = 40.0
    n_r: int = 96
    n_theta: int = 20
    n_phi: int = 24
    box_half: float = 6.0
    n_box: int = 40
    tail: str = "averaged"        # averaged | damped | none
    tail_r0: float = 150.0
    tail_rounds: int = 3
    tail_eta: float = 0.02
    gl_order: int = 16
    tol: float = 1e-3

    def __post_init__(self):
        for nm in ("n_r", "n_theta", "n_phi", "n_box"):
            if getattr(self, nm) < 4:
                raise ValueError(f"{nm} must be >= 4")
        if self.tail == "damped" and self.tail_eta <= 0:
            raise ValueError("tail_eta must be > 0 for the damped regularization")
        if self.tail not in ("averaged", "damped", "none"):
            raise ValueError(f"unknown tail method {self.tail!r}")


def slice_nodes(spec: QuadratureSpec):
    """Quadrature nodes (t, x, y, z) and weights on the t = t_slice slice,
    all flattened to 1-D arrays.  Weights include the volume element."""
    if spec.chart == "spherical":
        xr, wr = np.polynomial.legendre.leggauss(spec.n_r)
        r = 0.5 * (xr + 1.0) * (spec.r_max - 1e-9) + 1e-9
        wr = wr * 0.5 * spec.r_max
        xu, wu = np.polynomial.legendre.leggauss(spec.n_theta)
        theta = np.arccos(xu)
        phi = np.arange(spec.n_phi) * TWO_PI / spec.n_phi
        R, TH, PH = np.meshgrid(r, theta, phi, indexing="ij")
        W = np.broadcast_to((wr * r**2)[:, None, None] * wu[None, :, None]
                            * (TWO_PI / spec.n_phi), R.shape)
        x = R * np.sin(TH) * np.cos(PH)
        y = R * np.sin(TH) * np.sin(PH)
        z = R * np.cos(TH)
    elif spec.chart == "cartesian":
        xg, wg = np.polynomial.legendre.leggauss(spec.n_box)
        ax = xg * spec.box_half
        wax = wg * spec.box_half
        x, y, z = np.meshgrid(ax, ax, ax, indexing="ij")
        W = wax[:, None, None] * wax[None, :, None] * wax[None, None, :]
    else:
        raise ValueError(f"unknown slice chart {spec.chart!r}")
    x, y, z = x.ravel(), y.ravel(), z.ravel()
    return np.full(x.shape, spec.t_slice), x, y, z, W.ravel()


_slice_points = slice_nodes


# ---------------------------------------------------------------------------
# Currents and the inner product
# ---------------------------------------------------------------------------

def current(a_field, b_field, t, x, y, z):
    """j'_a[A, A'] = i [ (d_a conj(A)_b) A'^b - conj(A)^b d_a A'_b ]."""
    ga = a_field.gradient(t, x, y, z)
    gb = b_field.gradient(t, x, y, z)
    av = a_field.evaluate(t, x, y, z)
    bv = b_field.evaluate(t, x, y, z)
    up = ETA_DIAG  # raises the contracted index
    term1 = np.einsum("...ab,b,...b->...a", np.conj(ga), up, bv)
    term2 = np.einsum("...b,b,...ab->...a", np.conj(av), up, gb)
    return 1j * (term1 - term2)


def _j0_timeslice(a_field, b_field, t, x, y, z):
    """j'_0 using analytic time derivatives (fields are energy superpositions)."""
    da = a_field.d_dt(t, x, y, z)
    db = b_field.d_dt(t, x, y, z)
    av = a_field.evaluate(t, x, y, z)
    bv = b_field.evaluate(t, x, y, z)
    return 1j * np.einsum("b,...b->...", ETA_DIAG,
                          np.conj(da) * bv - np.conj(av) * db)


def inner(a_field, b_field, spec: QuadratureSpec, return_error=False):
    """(A, A') by slice quadrature of j'_0; optionally also a node-doubling
    error estimate (NonConvergenceError if it exceeds 10x spec.tol)."""
    t, x, y, z, w = _slice_points(spec)
    val = complex(np.sum(w * _j0_timeslice(a_field, b_field, t, x, y, z)))
    if not return_error:
        return val
    fine = replace(spec, n_r=2 * spec.n_r, n_theta=2 * spec.n_theta,
                   n_phi=2 * spec.n_phi, n_box=2 * spec.n_box)
    t, x, y, z, w = _slice_points(fine)
    val2 = complex(np.sum(w * _j0_timeslice(a_field, b_field, t, x, y, z)))
    err = abs(val2 - val)
    scale = max(abs(val2), 1e-300)
    if err > 10.0 * spec.tol * scale:
        raise NonConvergenceError(
            f"slice quadrature not converged: doubling changed the result by "
            f"{err/scale:.3g} relative")
    return val2, err


def inner_field_strength_form(a_field, b_field, spec: QuadratureSpec):
    """The field-strength form of the inner product,
    (F, F') = int i [ conj(F)_{0b} A'^b - conj(A)^b F'_{0b} ] d^3x.

    Gauge invariant for A -> A + grad(Lambda) with compact Lambda; used by
    the gauge-invariance checks."""
    t, x, y, z, w = _slice_points(spec)
    ga = a_field.gradient(t, x, y, z)
    gb = b_field.gradient(t, x, y, z)
    fa = ga - np.swapaxes(ga, -1, -2)
    fb = gb - np.swapaxes(gb, -1, -2)
    av = a_field.evaluate(t, x, y, z)
    bv = b_field.evaluate(t, x, y, z)
    j0 = 1j * np.einsum("b,...b->...", ETA_DIAG,
                        np.conj(fa[..., 0, :]) * bv - np.conj(av) * fb[..., 0, :])
    return complex(np.sum(w * j0))


# ---------------------------------------------------------------------------
# Superpositions, gauge shifts, wave packets
# ---------------------------------------------------------------------------

class Superposition:
    """Finite linear combination sum_k c_k F_k of fields (same interface)."""

    def __init__(self, terms):
        self.terms = list(terms)

    def evaluate(self, t, x, y, z):
        return sum(c * f.evaluate(t, x, y, z) for c, f in self.terms)

    def d_dt(self, t, x, y, z, order=1):
        return sum(c * f.d_dt(t, x, y, z, order=order) for c, f in self.terms)

    def gradient(self, t, x, y, z):
        return sum(c * f.gradient(t, x, y, z) for c, f in self.terms)


class GaussianBumpScalar:
    """Compact-support-like scalar Lambda = (c0 + c.x) exp(-|x-x0|^2 / w^2),
    static in time; supplies value, spacetime gradient and spatial Hessian."""

    def __init__(self, center, width, c0=1.0, linear=(0.0, 0.0, 0.0)):
        self.center = np.asarray(center, dtype=float)
        self.width = float(width)
        self.c0 = float(c0)
        self.linear = np.asarray(linear, dtype=float)

    def _poly_env(self, x, y, z):
        dx = np.stack([x - self.center[0], y - self.center[1], z - self.center[2]], axis=-1)
        poly = self.c0 + dx @ self.linear
        env = np.exp(-np.sum(dx * dx, axis=-1) / self.width**2)
        return dx, poly, env

    def value(self, t, x, y, z):
        _, poly, env = self._poly_env(x, y, z)
        return poly * env

    def gradient(self, t, x, y, z):
        """Spacetime gradient (d_t Lambda = 0)."""
        dx, poly, env = self._poly_env(x, y, z)
        dpoly = np.broadcast_to(self.linear, dx.shape)
        denv = -2.0 * dx / self.width**2
        spatial = (dpoly + poly[..., None] * denv) * env[..., None]
        out = np.zeros(spatial.shape[:-1] + (4,), dtype=complex)
        out[..., 1:] = spatial
        return out

    def hessian(self, t, x, y, z):
        """d_mu d_nu Lambda (spatial block only)."""
        dx, poly, env = self._poly_env(x, y, z)
        w2 = self.width**2
        dpoly = np.broadcast_to(self.linear, dx.shape)
        g = -2.0 * dx / w2
        spatial = (dpoly[..., :, None] * g[..., None, :]
                   + dpoly[..., None, :] * g[..., :, None]
                   + poly[..., None, None] * (g[..., :, None] * g[..., None, :]
                                              - (2.0 / w2) * np.eye(3)))
        out = np.zeros(spatial.shape[:-2] + (4, 4), dtype=complex)
        out[..., 1:, 1:] = spatial * env[..., None, None]
        return out


class GaugeShiftedField:
    """A -> A + grad(Lambda); no longer Coulomb but the field-strength-form
    inner product is unchanged."""

    def __init__(self, base, lam: GaussianBumpScalar):
        self.base = base
        self.lam = lam

    def evaluate(self, t, x, y, z):
        return self.base.evaluate(t, x, y, z) + self.lam.gradient(t, x, y, z)

    def d_dt(self, t, x, y, z, order=1):
        # static Lambda: time derivatives of the shift vanish
        return self.base.d_dt(t, x, y, z, order=order)

    def gradient(self, t, x, y, z):
        return self.base.gradient(t, x, y, z) + self.lam.hessian(t, x, y, z)


def gauge_shift(a_field, lam: GaussianBumpScalar) -> GaugeShiftedField:
    return GaugeShiftedField(a_field, lam)


class WavePacket:
    """Square-integrable superposition of multipole modes over the energy,

        psi = int g(p0) |p0, l, m, s> dp0,
        g(p) = (pi w^2)^{-1/4} exp(-(p - center)^2 / (2 w^2)),

    discretized by Gauss-Legendre nodes over center +- 6 w.  Its norm under
    the conserved-current inner product equals int |g|^2 dp0 (= 1 up to
    Gaussian truncation), which norm_expected() computes with an independent
    dense 1-D rule."""

    def __init__(self, l, m, s, center=1.0, width=0.2, n_nodes=32):
        if center - 4.0 * width <= 0:
            raise ValueError("packet support must stay at positive energy")
        self.l, self.m, self.s = l, m, s
        self.center, self.width = float(center), float(width)
        xg, wg = np.polynomial.legendre.leggauss(n_nodes)
        lo = max(center - 6.0 * width, 0.02 * center)
        hi = center + 6.0 * width
        self.p_nodes = 0.5 * (xg + 1.0) * (hi - lo) + lo
        self.p_weights = wg * 0.5 * (hi - lo)
        self.amplitudes = self.p_weights * self._g(self.p_nodes)
        self.modes = [spherical_mode(SphericalLabel(p0=p, l=l, m=m, s=s))
                      for p in self.p_nodes]

    def _g(self, p):
        w = self.width
        return (math.pi * w**2) ** -0.25 * np.exp(-((p - self.center) ** 2) / (2.0 * w**2))

    def evaluate(self, t, x, y, z):
        return sum(a * md.evaluate(t, x, y, z) for a, md in zip(self.amplitudes, self.modes))

    def d_dt(self, t, x, y, z, order=1):
        return sum(a * (-1j * md.p0) ** order * md.evaluate(t, x, y, z)
                   for a, md in zip(self.amplitudes, self.modes))

    def gradient(self, t, x, y, z):
        return sum(a * md.gradient(t, x, y, z) for a, md in zip(self.amplitudes, self.modes))

    def norm_expected(self, n=4001):
        p = np.linspace(self.center - 8.0 * self.width, self.center + 8.0 * self.width, n)
        return float(np.trapezoid(self._g(p) ** 2, p))


# ---------------------------------------------------------------------------
# Regularized oscillatory radial integrals
# ---------------------------------------------------------------------------

def _composite_gl(f, a, b, seg_len, order=16):
    if b <= a:
        return 0.0
    nseg = max(1, int(math.ceil((b - a) / seg_len)))
    edges = np.linspace(a, b, nseg + 1)
    xg, wg = np.polynomial.legendre.leggauss(order)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    return float(np.sum(weights * f(nodes)))


def _averaging_lattice(freqs, rounds):
    """Offsets/weights of iterated two-point averaging at half-period lags."""
    lattice = [(0.0, 1.0)]
    for w in freqs:
        if w <= 1e-9:
            continue
        lag = math.pi / w
        for _ in range(rounds):
            lattice = [(off, wt * 0.5) for off, wt in lattice] + \
                      [(off + lag, wt * 0.5) for off, wt in lattice]
    merged = {}
    for off, wt in lattice:
        merged[round(off, 12)] = merged.get(round(off, 12), 0.0) + wt
    return sorted(merged.items())


def _averaged_at(f, r0, freqs, rounds, seg, order):
    lattice = _averaging_lattice(sorted(freqs), rounds)
    base = _composite_gl(f, 0.0, r0, seg, order)
    cumulative = {}
    prev_off, prev_v = 0.0, base
    for off, _ in lattice:
        if off > prev_off:
            prev_v = prev_v + _composite_gl(f, r0 + prev_off, r0 + off, seg, order)
            prev_off = off
        cumulative[off] = prev_v
    return sum(wt * cumulative[off] for off, wt in lattice)


def averaged_oscillatory_integral(f, freqs, spec: QuadratureSpec):
    """Truncation plus iterated half-period averaging of partial sums (one
    averaging stage per beat frequency, spec.tail_rounds deep), then a
    two-point Richardson step in the truncation radius, 2 S(2R) - S(R),
    which removes the ~1/R contribution of the slowly decaying
    non-oscillatory part of Bessel-product tails."""
    fast = max(freqs) if freqs else 1.0
    seg = min(0.25 * TWO_PI / max(fast, 1e-9), 2.0)
    s1 = _averaged_at(f, spec.tail_r0, freqs, spec.tail_rounds, seg, spec.gl_order)
    s2 = _averaged_at(f, 2.0 * spec.tail_r0, freqs, spec.tail_rounds, seg, spec.gl_order)
    return 2.0 * s2 - s1


def damped_oscillatory_integral(f, freqs, spec: QuadratureSpec):
    """Exact head integral plus an exponentially damped tail,

        I(eta) = int_0^{k/eta} f + int_{k/eta}^inf e^{-eta (r - k/eta)} f(r) dr,

    Richardson-extrapolated eta -> 0 through (eta, eta/2, eta/4).  Tying the
    head length to k/eta makes the error of the slowly decaying ~1/r^2 part
    of Bessel-product tails exactly linear in eta, so the polynomial
    extrapolation removes it."""
    fast = max(freqs) if freqs else 1.0
    seg = min(0.25 * TWO_PI / max(fast, 1e-9), 2.0)
    kappa = 3.0
    etas = [spec.tail_eta, spec.tail_eta / 2.0, spec.tail_eta / 4.0]
    vals = []
    for eta in etas:
        r0 = kappa / eta   # head must scale with 1/eta to keep the error linear
        r_max = r0 + 10.0 / eta
        head = _composite_gl(f, 0.0, r0, seg, spec.gl_order)
        vals.append(head + _composite_gl(
            lambda r, e=eta, rr=r0: np.exp(-e * (r - rr)) * f(r), r0, r_max, seg, spec.gl_order))
    # Neville to eta = 0 through the three points
    x = np.array(etas)
    p = list(vals)
    for level in range(1, 3):
        for i in range(3 - level):
            p[i] = p[i + 1] + (p[i] - p[i + 1]) * x[i + level] / (x[i + level] - x[i])
    return p[0]


def oscillatory_integral(f, freqs, spec: QuadratureSpec):
    if spec.tail == "averaged":
        return averaged_oscillatory_integral(f, freqs, spec)
    if spec.tail == "damped":
        return damped_oscillatory_integral(f, freqs, spec)
    seg = min(0.25 * TWO_PI / max(max(freqs) if freqs else 1.0, 1e-9), 2.0)
    return _composite_gl(f, 0.0, spec.tail_r0, seg, spec.gl_order)


# ---------------------------------------------------------------------------
# Bessel overlap tables
# ---------------------------------------------------------------------------

def _beat_freqs(k1, k2, min_sep=5e-2):
    freqs = [k1 + k2]
    if abs(k1 - k2) > min_sep:
        freqs.append(abs(k1 - k2))
    return freqs


def bessel_overlap(kind, order, k1, k2, spec: QuadratureSpec):
    """Regularized radial overlap integral.

    kind: 'sph_inv_r'  int (1/r) J_{l+1/2}(k1 r) J_{l+1/2}(k2 r) dr
          'sph_cross'  int       J_{l-1/2}(k1 r) J_{l+1/2}(k2 r) dr
          'sph_r'      int   r   J_{l+1/2}(k1 r) J_{l+1/2}(k2 r) dr   (delta row)
          'cyl_rho'    int  rho  J_m(k1 rho) J_m(k2 rho) drho          (delta row)
    with order = l or m."""
    if kind == "sph_inv_r":
        nu1 = nu2 = order + 0.5
        weight = lambda r: 1.0 / r
    elif kind == "sph_cross":
        nu1, nu2 = order - 0.5, order + 0.5
        weight = lambda r: np.ones_like(r)
    elif kind == "sph_r":
        nu1 = nu2 = order + 0.5
        weight = lambda r: r
    elif kind == "cyl_rho":
        nu1 = nu2 = order
        weight = lambda r: r
    else:
        raise ValueError(f"unknown overlap kind {kind!r}")

    def f(r):
        return weight(r) * bessel_j(nu1, k1 * r) * bessel_j(nu2, k2 * r)

    return oscillatory_integral(f, _beat_freqs(k1, k2), spec)


def bessel_overlap_closed_form(kind, order, k1, k2):
    """Closed-form value, or None for the delta-normalized rows (those are
    only meaningful smeared; see smeared_radial_delta)."""
    if kind == "sph_inv_r":
        lo, hi = min(k1, k2), max(k1, k2)
        return (1.0 / (2.0 * order + 1.0)) * (lo / hi) ** (order + 0.5)
    if kind == "sph_cross":
        if k1 < k2:
            return (1.0 / k1) * (k1 / k2) ** (order + 0.5)
        if k1 == k2:
            return 1.0 / (2.0 * k1)
        return 0.0
    return None


def smeared_radial_delta(kind, order, k_fixed, center, sigma, spec: QuadratureSpec, n_k=48):
    """Gaussian-smeared delta row: returns (numeric, expected) for

        int dk' G(k'; center, sigma) int_0^inf w(r) J(k r) J(k' r) dr
            = G(k_fixed; center, sigma) / k_fixed,

    kind 'cyl_rho' (w = rho, J = J_m) or 'sph_r' (w = r, J = J_{l+1/2})."""
    nu = order if kind == "cyl_rho" else order + 0.5
    xg, wg = np.polynomial.legendre.leggauss(n_k)
    lo, hi = center - 6.0 * sigma, center + 6.0 * sigma
    if lo <= 0:
        raise ValueError("smearing window must stay positive")
    kn = 0.5 * (xg + 1.0) * (hi - lo) + lo
    wk = wg * 0.5 * (hi - lo)
    gauss = np.exp(-((kn - center) ** 2) / (2.0 * sigma**2)) / (sigma * math.sqrt(TWO_PI))

    r_max = 12.0 / sigma
    def f(r):
        jk = bessel_j(nu, np.outer(kn, r).ravel()).reshape(len(kn), -1)
        kernel = np.einsum("k,kr->r", wk * gauss, jk)
        return r * bessel_j(nu, k_fixed * r) * kernel

    seg = min(0.25 * TWO_PI / (center + k_fixed), 2.0)
    numeric = _composite_gl(f, 0.0, r_max, seg, spec.gl_order)
    expected = float(np.exp(-((k_fixed - center) ** 2) / (2.0 * sigma**2))
                     / (sigma * math.sqrt(TWO_PI)) / k_fixed)
    return numeric, expected


# ---------------------------------------------------------------------------
# Discrete-sector Gram matrices
# ---------------------------------------------------------------------------

@dataclass
class GramResult:
    family: str
    labels: list
    matrix: np.ndarray           # normalized by the diagonal
    diagonal: np.ndarray
    fixed: dict
    max_offdiag: float = dataclass_field(init=False)

    def __post_init__(self):
        off = self.matrix.copy()
        off[np.diag_indices_from(off)] = 0.0
        self.max_offdiag = float(np.abs(off).max()) if off.size else 0.0


def _angular_overlap(n, l, m, lp, mp, n_theta, n_phi):
    """int conj(Y[n,l,m]) Y[n,lp,mp] sin(theta) dtheta dphi, exact rule."""
    xu, wu = np.polynomial.legendre.leggauss(n_theta)
    theta = np.arccos(xu)
    phi = np.arange(n_phi) * TWO_PI / n_phi
    TH, PH = np.meshgrid(theta, phi, indexing="ij")
    ya = sph_harmonic_values(n, l, m, TH, PH)
    yb = sph_harmonic_values(n, lp, mp, TH, PH)
    w = wu[:, None] * (TWO_PI / n_phi)
    return complex(np.sum(w * np.conj(ya) * yb))


def discrete_orthonormality(family, fixed, ranges, spec: QuadratureSpec) -> GramResult:
    """Gram matrix over a discrete-label sector at shared continuous labels.

    family='spherical': fixed={'p0': ...}, ranges={'l_max': L}; labels run
    over l = 1..L, |m| <= l, s = +-1.  family='cylindrical':
    fixed={'p0': ..., 'pz': ...}, ranges={'m_max': M}; labels run over
    |m| <= M, s = +-1 (transverse-plane Gram at fixed longitudinal factor).

    Angular integrals use exact-degree rules; radial integrals share one
    regularized truncation protocol so the normalization is uniform.
    """
    if family == "spherical":
        return _gram_spherical(fixed["p0"], ranges["l_max"], spec)
    if family == "cylindrical":
        return _gram_cylindrical(fixed["p0"], fixed["pz"], ranges["m_max"], spec)
    raise ValueError(f"unknown family {family!r}")


def _gram_spherical(p0, l_max, spec):
    labels = [(l, m, s) for l in range(1, l_max + 1)
              for m in range(-l, l + 1) for s in (+1, -1)]
    n_theta = 2 * l_max + 6
    n_phi = 4 * l_max + 8

    radial_cache = {}

    def radial(sector, l, s, lp, sp_):
        key = (sector, l, s, lp, sp_)
        if key not in radial_cache:
            idx = {"axial": 0, "minus": 1, "plus": 2}[sector]

            def f(r):
                fa = sph_radial_profiles(SphericalLabel(p0, l, 0, s), r)[idx]
                fb = sph_radial_profiles(SphericalLabel(p0, lp, 0, sp_), r)[idx]
                return (np.conj(fa) * fb * r**2).real

            def g(r):
                fa = sph_radial_profiles(SphericalLabel(p0, l, 0, s), r)[idx]
                fb = sph_radial_profiles(SphericalLabel(p0, lp, 0, sp_), r)[idx]
                return (np.conj(fa) * fb * r**2).imag

            re = oscillatory_integral(f, [2.0 * p0], spec)
            im = oscillatory_integral(g, [2.0 * p0], spec)
            radial_cache[key] = re + 1j * im
        return radial_cache[key]

    n = len(labels)
    gram = np.zeros((n, n), dtype=complex)
    for i, (l, m, s) in enumerate(labels):
        for j, (lp, mp, sp_) in enumerate(labels):
            if j < i:
                continue
            total = 0.0j
            for sector, nsw in (("axial", 0), ("minus", -1), ("plus", 1)):
                ang = _angular_overlap(nsw, l, m, lp, mp, n_theta, n_phi)
                if abs(ang) < 1e-14:
                    continue
                total += radial(sector, l, s, lp, sp_) * ang
            gram[i, j] = 2.0 * p0 * total
            gram[j, i] = np.conj(gram[i, j])
    diag = np.real(np.diag(gram)).copy()
    norm = gram / np.sqrt(np.outer(diag, diag))
    return GramResult("spherical", labels, norm, diag, {"p0": p0})


def _gram_cylindrical(p0, pz, m_max, spec):
    from .modes import cyl_dyad_coefficients

    labels = [(m, s) for m in range(-m_max, m_max + 1) for s in (+1, -1)]
    alpha = math.sqrt(max(p0**2 - pz**2, 0.0))
    n_phi = 8 * m_max + 8
    phi = np.arange(n_phi) * TWO_PI / n_phi
    wphi = TWO_PI / n_phi

    radial_cache = {}

    def radial(k):
        if k not in radial_cache:
            def f(rho):
                jk = bessel_j(abs(k), alpha * rho)
                return rho * jk * jk
            radial_cache[k] = oscillatory_integral(f, [2.0 * alpha], spec)
        return radial_cache[k]

    coeffs = {(m, s): cyl_dyad_coefficients(CylindricalLabel(p0, pz, m, s))
              for (m, s) in labels}
    n = len(labels)
    gram = np.zeros((n, n), dtype=complex)
    for i, (m, s) in enumerate(labels):
        for j, (mp, sp_) in enumerate(labels):
            if j < i:
                continue
            ang = np.sum(np.exp(1j * (mp - m) * phi)) * wphi
            if abs(ang) < 1e-13:
                continue
            ca = coeffs[(m, s)]
            cb = coeffs[(mp, sp_)]
            total = (np.conj(ca[0]) * cb[0] * radial(m)
                     + np.conj(ca[1]) * cb[1] * radial(m - 1)
                     + np.conj(ca[2]) * cb[2] * radial(m + 1))
            gram[i, j] = 2.0 * p0 * ang * total
            gram[j, i] = np.conj(gram[i, j])
    diag = np.real(np.diag(gram)).copy()
    norm = gram / np.sqrt(np.outer(diag, diag))
    return GramResult("cylindrical", labels, norm, diag, {"p0": p0, "pz": pz})
