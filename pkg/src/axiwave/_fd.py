"""Finite-difference first derivative on a uniformly spaced open segment.

Fourth-order centered stencil in the interior, fourth-order one-sided
stencils at the two nodes next to each end.  Used wherever a derivative
must not reach across the origin (the integrands of this calculus jump
there), and for the explicit derivative factors of composed operators.
"""

from __future__ import annotations

import numpy as np

# one-sided 5-point first-derivative stencils, O(h^4)
_EDGE0 = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
_EDGE1 = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0


def derivative(values: np.ndarray, spacing: float) -> np.ndarray:
    """d/dx of samples on x_j = x0 + j*spacing, no periodic wrap."""
    f = np.asarray(values)
    n = f.shape[0]
    if n < 5:
        raise ValueError("need at least 5 nodes for the 4th-order stencil")
    out = np.empty_like(f, dtype=complex if np.iscomplexobj(f) else float)
    out[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / 12.0
    out[0] = _EDGE0 @ f[:5]
    out[1] = _EDGE1 @ f[:5]
    out[-2] = -(_EDGE1 @ f[-1:-6:-1])
    out[-1] = -(_EDGE0 @ f[-1:-6:-1])
    return out / spacing


def derivative_per_half(values: np.ndarray, n_half: int, spacing: float) -> np.ndarray:
    """d/dlambda on a symmetric axis grid, each half-line differentiated
    separately so the stencil never straddles the origin."""
    out = np.empty_like(np.asarray(values, dtype=complex))
    out[:n_half] = derivative(values[:n_half], spacing)
    out[n_half:] = derivative(values[n_half:], spacing)
    return out


def derivative_matrix(n: int, spacing: float) -> np.ndarray:
    """Dense matrix of `derivative` on an n-node segment."""
    d = np.zeros((n, n))
    rows = np.arange(2, n - 2)
    for off, c in ((-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0)):
        d[rows, rows + off] = c / 12.0
    d[0, :5] = _EDGE0
    d[1, :5] = _EDGE1
    d[-2, -5:] = -_EDGE1[::-1]
    d[-1, -5:] = -_EDGE0[::-1]
    return d / spacing
