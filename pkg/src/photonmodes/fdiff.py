"""Fourth-order central finite differences for callables and grids.

Callables take (t, x, y, z) with numpy broadcasting and return arrays whose
leading dimensions follow the coordinates.  All stencils are the classic
5-point 4th-order central formulas; halving h must shrink the truncation
error by ~16x, which the test suite checks.
"""

from __future__ import annotations

import numpy as np

from .errors import StencilError

# offsets and weights for d/dx (4th order)
D1_OFFSETS = (-2, -1, 1, 2)
D1_WEIGHTS = (1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0)

# offsets and weights for d^2/dx^2 (4th order)
D2_OFFSETS = (-2, -1, 0, 1, 2)
D2_WEIGHTS = (-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0)

DEFAULT_H = 0.01
BOUNDARY_RING = 2   # interior trim for grid stencils


def partial(f, coords, axis, h=DEFAULT_H, order=1):
    """4th-order partial derivative of callable f along one spacetime axis.

    coords is a (t, x, y, z) tuple of scalars/arrays; axis in 0..3.
    """
    coords = [np.asarray(c, dtype=float) for c in coords]
    offsets, weights = (D1_OFFSETS, D1_WEIGHTS) if order == 1 else (D2_OFFSETS, D2_WEIGHTS)
    acc = None
    for off, w in zip(offsets, weights):
        if w == 0.0:
            continue
        shifted = list(coords)
        shifted[axis] = shifted[axis] + off * h
        val = w * f(*shifted)
        acc = val if acc is None else acc + val
    return acc / h**order


def gradient4(f, coords, h=DEFAULT_H):
    """All four partials of f, stacked on a new leading axis [mu]."""
    return np.stack([partial(f, coords, mu, h) for mu in range(4)])


def grid_partial(values, axis, h, order=1):
    """Stencil derivative of a sampled array along one axis.

    The returned array is trimmed by BOUNDARY_RING nodes at both ends of the
    differentiated axis only; callers must track the shrinking interior."""
    n = values.shape[axis]
    if n < 5:
        raise StencilError(
            f"axis {axis} has {n} nodes; the 4th-order stencil needs >= 5 "
            f"(boundary ring width {BOUNDARY_RING})")
    offsets, weights = (D1_OFFSETS, D1_WEIGHTS) if order == 1 else (D2_OFFSETS, D2_WEIGHTS)
    core = [slice(None)] * values.ndim
    core[axis] = slice(BOUNDARY_RING, n - BOUNDARY_RING)
    out = np.zeros_like(values[tuple(core)])
    for off, w in zip(offsets, weights):
        if w == 0.0:
            continue
        sl = [slice(None)] * values.ndim
        sl[axis] = slice(BOUNDARY_RING + off, n - BOUNDARY_RING + off or None)
        out = out + w * values[tuple(sl)]
    return out / h**order


def trim_interior(values, axes):
    """Cut BOUNDARY_RING nodes from both ends of each axis in axes."""
    sl = [slice(None)] * values.ndim
    for ax in axes:
        sl[ax] = slice(BOUNDARY_RING, values.shape[ax] - BOUNDARY_RING)
    return values[tuple(sl)]
