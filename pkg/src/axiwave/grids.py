"""Symmetric axis grids, field containers and weighted inner products.

The computational domain is a straight line through the coordinate origin,
sampled at half-integer offsets

    lambda_j = +/- (j + 1/2) h ,      j = 0 .. n_half-1 ,

so no node sits at the origin and every factor 1/lambda, 1/sqrt|lambda|
stays finite on the grid.  The conjugate momentum grid uses the same offset
pattern with spacing dk = pi / extent; with that choice the discrete
Fourier map between the two grids is exactly unitary.

Fields come in two representations:

    f-rep : raw samples psi(lambda)
    g-rep : weighted samples g = sqrt|lambda| * psi(lambda)

The two inner products are nodal (midpoint) quadratures of the volume
integrals restricted to the axis; the r^2 Jacobian of the line restriction
is part of the measure:

    unit  :  h * sum  lambda_j^2   conj(a_j) b_j      (plain volume product)
    inv_r :  h * sum  |lambda_j|   conj(a_j) b_j      (1/r weighted product)

In g-rep the inv_r product is the flat sum  h * sum conj(g_a) g_b, which is
what makes the weighted derivative -i d/dlambda self-adjoint there.

Momentum profiles live on the signed conjugate grid: kappa > 0 encodes
magnitude kappa moving along +n, kappa < 0 magnitude |kappa| along -n.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

F_REP = "f"
G_REP = "g"

_REPS = (F_REP, G_REP)
_FIELD_WEIGHTS = ("unit", "inv_r")
_SPECTRAL_WEIGHTS = ("inv_k", "k")


class GridMismatchError(ValueError):
    """Raised when two fields/profiles do not share a grid."""


@dataclass(frozen=True, eq=False)
class AxisGrid:
    """Symmetric half-offset sampling of a line through the origin."""

    n_half: int
    h: float
    nodes: np.ndarray = field(repr=False)

    @property
    def extent(self) -> float:
        return self.n_half * self.h

    @property
    def size(self) -> int:
        return 2 * self.n_half

    def conjugate(self) -> "SpectralGrid":
        return make_spectral_grid(self.n_half, np.pi / self.extent, axis=self)

    def positive_nodes(self) -> np.ndarray:
        """r_j = (j + 1/2) h, the positive half of the grid."""
        return self.nodes[self.n_half:]

    def interior_mask(self, fraction: float = 0.6) -> np.ndarray:
        """Boolean mask keeping the central `fraction` of nodes.

        The excluded band sits at the truncation edges |lambda| ~ extent,
        where finite-domain transforms are wrong by construction.
        """
        return np.abs(self.nodes) <= fraction * self.extent

    def same_as(self, other: "AxisGrid") -> bool:
        return self.n_half == other.n_half and self.h == other.h


@dataclass(frozen=True, eq=False)
class SpectralGrid:
    """Signed momentum grid conjugate to an AxisGrid (same offset pattern)."""

    n_half: int
    dk: float
    nodes: np.ndarray = field(repr=False)
    axis: "AxisGrid | None" = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return 2 * self.n_half

    @property
    def extent(self) -> float:
        return self.n_half * self.dk

    def axis_grid(self) -> AxisGrid:
        """The configuration grid this momentum grid is conjugate to."""
        if self.axis is not None:
            return self.axis
        return make_grid(self.n_half, np.pi / self.dk)

    def positive_nodes(self) -> np.ndarray:
        return self.nodes[self.n_half:]

    def interior_mask(self, fraction: float = 0.6) -> np.ndarray:
        return np.abs(self.nodes) <= fraction * self.extent

    def same_as(self, other: "SpectralGrid") -> bool:
        return self.n_half == other.n_half and self.dk == other.dk


def _offset_nodes(n_half: int, spacing: float) -> np.ndarray:
    half = (np.arange(n_half) + 0.5) * spacing
    return np.concatenate([-half[::-1], half])


def make_grid(n_half: int, extent: float) -> AxisGrid:
    """Build the symmetric half-offset grid with n_half nodes per side.

    The spacing is h = extent / n_half; nodes are +/-(j + 1/2) h.  Grids
    coarser than 8 nodes per side cannot support any of the quadratures
    used here and are rejected.
    """
    if not isinstance(n_half, (int, np.integer)) or n_half < 8:
        raise ValueError("grid too coarse: need n_half >= 8")
    extent = float(extent)
    if not np.isfinite(extent) or extent <= 0.0:
        raise ValueError("extent must be finite and positive")
    h = extent / n_half
    nodes = _offset_nodes(n_half, h)
    nodes.setflags(write=False)
    # construction-time invariants: antisymmetric, increasing, no origin node
    assert np.all(nodes[1:] > nodes[:-1])
    assert np.array_equal(nodes, -nodes[::-1])
    assert np.all(nodes != 0.0)
    return AxisGrid(n_half=int(n_half), h=h, nodes=nodes)


def make_spectral_grid(n_half: int, dk: float,
                       axis: AxisGrid | None = None) -> SpectralGrid:
    if n_half < 8:
        raise ValueError("grid too coarse: need n_half >= 8")
    if not np.isfinite(dk) or dk <= 0.0:
        raise ValueError("dk must be finite and positive")
    nodes = _offset_nodes(n_half, float(dk))
    nodes.setflags(write=False)
    return SpectralGrid(n_half=int(n_half), dk=float(dk), nodes=nodes, axis=axis)


@dataclass(frozen=True, eq=False)
class AxialField:
    """Complex samples of a field along the axis, in f- or g-representation."""

    grid: AxisGrid
    rep: str
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.rep not in _REPS:
            raise ValueError(f"unknown representation {self.rep!r}")
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.grid.size,):
            raise ValueError("values length must equal node count")
        object.__setattr__(self, "values", vals)

    def copy_with(self, values: np.ndarray, rep: str | None = None) -> "AxialField":
        return AxialField(self.grid, self.rep if rep is None else rep, values)


@dataclass(frozen=True, eq=False)
class SpectralProfile:
    """Complex momentum-space samples phi(kappa) on the signed grid."""

    grid: SpectralGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.grid.size,):
            raise ValueError("values length must equal kappa node count")
        object.__setattr__(self, "values", vals)

    def copy_with(self, values: np.ndarray) -> "SpectralProfile":
        return SpectralProfile(self.grid, values)


def sample_field(generator, grid: AxisGrid, rep: str = F_REP) -> AxialField:
    """Evaluate `generator(lambda)` at every node, no smoothing.

    The generator may be scalar or vectorized; non-finite values at any
    node are rejected.
    """
    try:
        vals = np.asarray(generator(grid.nodes), dtype=complex)
        if vals.shape != grid.nodes.shape:
            raise TypeError
    except TypeError:
        vals = np.array([generator(x) for x in grid.nodes], dtype=complex)
    if not np.all(np.isfinite(vals)):
        raise ValueError("generator produced non-finite values on the grid")
    return AxialField(grid, rep, vals)


def convert_rep(fld: AxialField, target: str) -> AxialField:
    """Convert between f- and g-representation (multiply/divide sqrt|lambda|)."""
    if target not in _REPS:
        raise ValueError(f"unknown representation {target!r}")
    if target == fld.rep:
        return fld
    root = np.sqrt(np.abs(fld.grid.nodes))
    if target == G_REP:
        return AxialField(fld.grid, G_REP, fld.values * root)
    return AxialField(fld.grid, F_REP, fld.values / root)


def apply_parity(fld: AxialField) -> AxialField:
    """Reflection lambda -> -lambda; exact on the symmetric grid."""
    return fld.copy_with(fld.values[::-1].copy())


def _check_same_grid(a: AxialField, b: AxialField):
    if not a.grid.same_as(b.grid):
        raise GridMismatchError("fields live on different grids")


def inner_product(a: AxialField, b: AxialField, weight: str = "unit") -> complex:
    """Weighted nodal inner product, conjugate-linear in the first argument.

    weight="unit" is the axis restriction of the plain volume product
    (measure lambda^2 h); weight="inv_r" restricts the 1/r-weighted product
    (measure |lambda| h).  Fields are converted to f-rep internally.
    """
    _check_same_grid(a, b)
    if weight not in _FIELD_WEIGHTS:
        raise ValueError(f"unknown weight {weight!r}")
    fa = convert_rep(a, F_REP).values
    fb = convert_rep(b, F_REP).values
    lam = a.grid.nodes
    w = lam * lam if weight == "unit" else np.abs(lam)
    return complex(np.sum(w * np.conj(fa) * fb) * a.grid.h)


def norm(a: AxialField, weight: str = "inv_r") -> float:
    return float(np.sqrt(inner_product(a, a, weight).real))


def spectral_inner_product(a: SpectralProfile, b: SpectralProfile,
                           weight: str = "inv_k") -> complex:
    """Momentum-space inner product on the signed grid.

    weight="inv_k" is the scale-invariant product sum conj(a) b dk/|kappa|
    (invariant under the Doppler rescaling of a boost); weight="k" is its
    energy-weighted partner sum |kappa| conj(a) b dk, the one tied to the
    configuration-space inv_r product by the unitary analysis map.
    """
    if not a.grid.same_as(b.grid):
        raise GridMismatchError("profiles live on different kappa grids")
    if weight not in _SPECTRAL_WEIGHTS:
        raise ValueError(f"unknown weight {weight!r}")
    ak = np.abs(a.grid.nodes)
    w = 1.0 / ak if weight == "inv_k" else ak
    return complex(np.sum(w * np.conj(a.values) * b.values) * a.grid.dk)


def spectral_norm(a: SpectralProfile, weight: str = "inv_k") -> float:
    return float(np.sqrt(spectral_inner_product(a, a, weight).real))


def line_density(fld: AxialField) -> np.ndarray:
    """Per-node density |lambda| |f|^2 = |g|^2 in the 1/r line measure.

    A unit-amplitude plane wave in g-rep has constant density, matching the
    even distribution of an axis wave along its propagation axis.
    """
    g = convert_rep(fld, G_REP).values
    return (g.real ** 2 + g.imag ** 2)
