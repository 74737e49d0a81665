"""The operator zoo: radial momenta, the positive Hamiltonian, boost
generators, and residual harnesses for their algebra.

Every factory returns a LinearOperatorHandle whose `apply` maps axis
fields to axis fields (input representation is preserved).  Derivatives
that appear inside compositions with the signed Hilbert transforms are
taken per half-line (4th-order stencils that never straddle the origin):
the integrands of this calculus generically jump at the origin, and a
full-line derivative would ring there.  The weighted momentum pbar is the
exception: in g-representation it is exactly -i d/dlambda, realized
spectrally, which makes it self-adjoint for the 1/r product to rounding.

Operator conventions on the axis (n is the unit axis direction,
sgn = sign(lambda), r = |lambda|):

    pt        = -i (1/lambda) d/dlambda (lambda .)         unit-weight symmetric
    pbar      = -i r^{-1/2} d/dlambda r^{1/2}              1/r-weight symmetric
    pbar0     = -(1/sqrt r) d_r Hplus sqrt(r)              (left form)
              = -(1/sqrt r) Hminus d_r sqrt(r)             (right form)
              = synthesize |kappa| analyze                 (spectral form)
    s^0, s.n  = -1/r ,  1/lambda                           multipliers
    t^0       = i sgn r^{-1/2} d/dlambda r^{1/2},  t.n = pbar
    N'        = i sgn (lambda d/dlambda + 2)               local boost factor
    N         = (r^{-1/2} Hminus r^{1/2}) (i N')           full boost generator
              = (i N') (r^{-1/2} Hplus r^{1/2})            (second ordering)

with i N' = -sgn (lambda d/dlambda + 2), the axial dilation factor.

The residual harnesses quantify commutator and adjoint identities on
probe suites, reporting interior norms (edge bands excluded).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ._fd import derivative_per_half
from .grids import AxialField, AxisGrid, convert_rep, inner_product
from .spectral import analyze_fast, spectral_derivative, synthesize_fast
from .transforms import BackendMismatchError, hilbert_signed


@dataclass(frozen=True, eq=False)
class LinearOperatorHandle:
    """A composable linear map on axis fields with a declared adjoint."""

    label: str
    grid: AxisGrid
    apply: Callable[[AxialField], AxialField] = field(repr=False)
    adjoint_weight: str | None = None
    adjoint_label: str | None = None

    def __call__(self, fld: AxialField) -> AxialField:
        return self.apply(fld)


def _wrap(label: str, grid: AxisGrid, fn_f: Callable[[np.ndarray], np.ndarray],
          adjoint_weight=None, adjoint_label=None) -> LinearOperatorHandle:
    """Build a handle from a function acting on f-representation values."""

    def apply(fld: AxialField) -> AxialField:
        if not fld.grid.same_as(grid):
            raise ValueError(f"{label}: field lives on a different grid")
        f = convert_rep(fld, "f")
        out = AxialField(grid, "f", fn_f(f.values))
        return convert_rep(out, fld.rep)

    return LinearOperatorHandle(label=label, grid=grid, apply=apply,
                                adjoint_weight=adjoint_weight,
                                adjoint_label=adjoint_label)


def compose(a: LinearOperatorHandle, b: LinearOperatorHandle,
            label: str | None = None) -> LinearOperatorHandle:
    """Handle applying b first, then a."""
    lab = label or f"{a.label}*{b.label}"
    return LinearOperatorHandle(label=lab, grid=b.grid,
                                apply=lambda fld: a.apply(b.apply(fld)))


def _dhalf(values: np.ndarray, grid: AxisGrid) -> np.ndarray:
    return derivative_per_half(values, grid.n_half, grid.h)


def radial_momentum_tilde(grid: AxisGrid) -> LinearOperatorHandle:
    """pt f = -i (1/lambda) d/dlambda (lambda f), uniform in sign(lambda).

    Symmetric under the unit weight for fields whose lambda*f is
    continuous through the origin; a violation shows up as the surface
    term probed by `adjoint_residual`.
    """
    lam = grid.nodes

    def fn(f):
        return -1j * _dhalf(lam * f, grid) / lam

    return _wrap("pt", grid, fn, adjoint_weight="unit", adjoint_label="pt")


def pbar(grid: AxisGrid) -> LinearOperatorHandle:
    """pbar f = -i (d/dlambda + 1/(2 lambda)) f; exactly -i d/dlambda on g.

    Realized spectrally in g-representation, hence self-adjoint for the
    1/r product up to rounding.
    """
    root = np.sqrt(np.abs(grid.nodes))

    def fn(f):
        return -1j * spectral_derivative(root * f, grid) / root

    return _wrap("pbar", grid, fn, adjoint_weight="inv_r", adjoint_label="pbar")


def _probe_for_checks(grid: AxisGrid) -> AxialField:
    lam = grid.nodes
    g = np.exp(-((lam / (0.2 * grid.extent)) ** 2)) * np.exp(0.25j * lam
                                                             * np.pi / grid.h
                                                             * 0.1)
    return convert_rep(AxialField(grid, "g", g), "f")


def pbar0(grid: AxisGrid, form: str = "spectral", backend: str = "spectral",
          cross_check_tol: float | None = None) -> LinearOperatorHandle:
    """The positive nonlocal Hamiltonian, momentum-space symbol |kappa|.

    form="left"   : -(1/sqrt r) d_r Hplus sqrt(r)
    form="right"  : -(1/sqrt r) Hminus d_r sqrt(r)
    form="spectral": multiplication by |kappa| between the unitary maps.

    The three are independent discretizations of the same operator; their
    pairwise disagreement is part of the verification ledger (see
    `pbar0_triangle_residual`).  With `cross_check_tol` set, construction
    compares the requested form against the others on a smooth probe and
    raises BackendMismatchError on disagreement beyond the tolerance.
    """
    if form not in ("left", "right", "spectral"):
        raise ValueError(f"unknown form {form!r}")
    if cross_check_tol is not None:
        gap = pbar0_triangle_residual(grid, [_probe_for_checks(grid)])
        if gap > cross_check_tol:
            raise BackendMismatchError(
                f"pbar0 forms disagree by {gap:.3e} "
                f"(tol {cross_check_tol:.3e})")
    lam = grid.nodes
    root = np.sqrt(np.abs(lam))
    sgn = np.sign(lam)
    sg = grid.conjugate()
    absk = np.abs(sg.nodes)

    if form == "spectral":
        def fn(f):
            phi = analyze_fast(AxialField(grid, "f", f))
            return synthesize_fast(phi.copy_with(absk * phi.values)).values
    elif form == "left":
        def fn(f):
            u = hilbert_signed(AxialField(grid, "g", root * f), "plus",
                               backend=backend)
            return -sgn * _dhalf(u.values, grid) / root
    else:
        def fn(f):
            v = sgn * _dhalf(root * f, grid)
            w = hilbert_signed(AxialField(grid, "g", v), "minus",
                               backend=backend)
            return -w.values / root

    return _wrap(f"pbar0[{form}]", grid, fn, adjoint_weight="inv_r",
                 adjoint_label=f"pbar0[{form}]")


def pbar0_triangle_residual(grid: AxisGrid, probes: Sequence[AxialField],
                            mask_fraction: float = 0.6) -> float:
    """Worst pairwise interior disagreement among the three pbar0 forms."""
    forms = [pbar0(grid, f) for f in ("left", "right", "spectral")]
    mask = grid.interior_mask(mask_fraction)
    worst = 0.0
    for f in probes:
        outs = [convert_rep(h.apply(f), "g").values for h in forms]
        scale = max(np.linalg.norm(o[mask]) for o in outs)
        for i in range(3):
            for j in range(i + 1, 3):
                gap = np.linalg.norm((outs[i] - outs[j])[mask])
                worst = max(worst, gap / scale)
    return worst


def four_vector_ops(grid: AxisGrid, which: str):
    """Time and axial components of the 4-vector multiplier/derivative pairs.

    which="s": the multiplication pair (-1/r, 1/lambda).
    which="t": (i sgn r^{-1/2} d_lambda r^{1/2}, pbar).
    """
    lam = grid.nodes
    if which == "s":
        s0 = _wrap("s0", grid, lambda f: -f / np.abs(lam))
        s3 = _wrap("s3", grid, lambda f: f / lam)
        return s0, s3
    if which == "t":
        root = np.sqrt(np.abs(lam))
        sgn = np.sign(lam)

        def fn_t0(f):
            return 1j * sgn * _dhalf(root * f, grid) / root

        t0 = _wrap("t0", grid, fn_t0)
        t3 = pbar(grid)
        return t0, t3
    raise ValueError(f"unknown four-vector family {which!r}")


def boost_generator_local(grid: AxisGrid) -> LinearOperatorHandle:
    """N' = i sgn(lambda) (lambda d/dlambda + 2), the local boost factor.

    Realized through the g-representation, where the same operator reads
    i sgn (lambda d/dlambda + 3/2) on smooth samples.
    """
    lam = grid.nodes
    sgn = np.sign(lam)
    root = np.sqrt(np.abs(lam))

    def fn(f):
        g = root * f
        return 1j * sgn * (lam * _dhalf(g, grid) + 1.5 * g) / root

    return _wrap("N'", grid, fn)


def boost_generator_config(grid: AxisGrid, ordering: str = "h_first",
                           backend: str = "spectral",
                           cross_check_tol: float | None = None
                           ) -> LinearOperatorHandle:
    """Axial boost generator N, Hilbert factor on either side.

    ordering="h_first": N = (r^{-1/2} Hminus r^{1/2}) (r grad - 2 rhat d_r r)
    ordering="h_last" : N = (r grad - 2 rhat d_r r) (r^{-1/2} Hplus r^{1/2})

    Both reduce on the axis to conjugations of H (lambda d/dlambda + 3/2)
    acting on g; the orderings differ only by discretization and are
    cross-checked by `boost_ordering_residual`, or at construction when
    `cross_check_tol` is given (BackendMismatchError on disagreement).
    """
    if ordering not in ("h_first", "h_last"):
        raise ValueError(f"unknown ordering {ordering!r}")
    if cross_check_tol is not None:
        gap = boost_ordering_residual(grid, [_probe_for_checks(grid)])
        if gap > cross_check_tol:
            raise BackendMismatchError(
                f"boost generator orderings disagree by {gap:.3e} "
                f"(tol {cross_check_tol:.3e})")
    lam = grid.nodes
    sgn = np.sign(lam)
    root = np.sqrt(np.abs(lam))

    def dilation_g(g):
        # sqrt(r) (r grad - 2 rhat d_r r).n (1/sqrt r) = -sgn (lambda d + 3/2)
        return -sgn * (lam * _dhalf(g, grid) + 1.5 * g)

    if ordering == "h_first":
        def fn(f):
            u = dilation_g(root * f)
            v = hilbert_signed(AxialField(grid, "g", u), "minus",
                               backend=backend)
            return v.values / root
    else:
        def fn(f):
            w = hilbert_signed(AxialField(grid, "g", root * f), "plus",
                               backend=backend)
            return dilation_g(w.values) / root

    return _wrap(f"N[{ordering}]", grid, fn, adjoint_weight="inv_r",
                 adjoint_label=f"N[{ordering}]")


def boost_ordering_residual(grid: AxisGrid, probes: Sequence[AxialField],
                            mask_fraction: float = 0.6) -> float:
    n1 = boost_generator_config(grid, "h_first")
    n2 = boost_generator_config(grid, "h_last")
    mask = grid.interior_mask(mask_fraction)
    worst = 0.0
    for f in probes:
        a = convert_rep(n1.apply(f), "g").values
        b = convert_rep(n2.apply(f), "g").values
        scale = max(np.linalg.norm(a[mask]), np.linalg.norm(b[mask]))
        worst = max(worst, np.linalg.norm((a - b)[mask]) / scale)
    return worst


def linearity_residual(handle: LinearOperatorHandle, rng,
                       n_pairs: int = 5) -> float:
    """max |H(aa+bb) - a H a - b H b| / scale over random probe pairs."""
    grid = handle.grid
    worst = 0.0
    for _ in range(n_pairs):
        a = AxialField(grid, "f", rng.normal(size=grid.size)
                       + 1j * rng.normal(size=grid.size))
        b = AxialField(grid, "f", rng.normal(size=grid.size)
                       + 1j * rng.normal(size=grid.size))
        al, be = complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal())
        combo = AxialField(grid, "f", al * a.values + be * b.values)
        lhs = handle.apply(combo).values
        rhs = al * handle.apply(a).values + be * handle.apply(b).values
        scale = max(np.linalg.norm(rhs), 1e-30)
        worst = max(worst, np.linalg.norm(lhs - rhs) / scale)
    return worst


def commutator_residual(a: LinearOperatorHandle, b: LinearOperatorHandle,
                        expected: LinearOperatorHandle | None,
                        scale: complex, probes: Sequence[AxialField],
                        mask_fraction: float = 0.6) -> float:
    """max over probes of ||(AB - BA - scale*expected) f||_int / ||f||_int.

    Norms are flat g-representation norms over the interior mask (the 1/r
    inner product restricted to the retained nodes).
    """
    if len(probes) == 0:
        raise ValueError("empty probe list")
    grid = a.grid
    mask = grid.interior_mask(mask_fraction)
    worst = 0.0
    for f in probes:
        ab = a.apply(b.apply(f))
        ba = b.apply(a.apply(f))
        resid = convert_rep(ab, "g").values - convert_rep(ba, "g").values
        if expected is not None:
            resid = resid - scale * convert_rep(expected.apply(f), "g").values
        fg = convert_rep(f, "g").values
        worst = max(worst, np.linalg.norm(resid[mask]) /
                    np.linalg.norm(fg[mask]))
    return worst


def adjoint_residual(a: LinearOperatorHandle, b: LinearOperatorHandle,
                     weight: str, probes: Sequence[AxialField]) -> float:
    """max |<x, A y>_w - <B x, y>_w| / max(|x||Ay|, |Bx||y|) over probe pairs.

    The denominator carries the operator output norms so that residuals of
    operators with very different scales are comparable.  weight must be
    "unit" or "inv_r".
    """
    if weight not in ("unit", "inv_r"):
        raise ValueError("adjoint weight must be 'unit' or 'inv_r'")
    if len(probes) < 2:
        raise ValueError("need at least two probes")
    worst = 0.0
    for x, y in zip(probes[:-1], probes[1:]):
        ay = a.apply(y)
        bx = b.apply(x)
        gap = abs(inner_product(x, ay, weight) - inner_product(bx, y, weight))
        den = max(
            np.sqrt(inner_product(x, x, weight).real
                    * inner_product(ay, ay, weight).real),
            np.sqrt(inner_product(bx, bx, weight).real
                    * inner_product(y, y, weight).real),
        )
        worst = max(worst, gap / den)
    return worst


def rayleigh_quotient(handle: LinearOperatorHandle, f: AxialField,
                      weight: str = "inv_r") -> float:
    num = inner_product(f, handle.apply(f), weight).real
    den = inner_product(f, f, weight).real
    return num / den


def spectral_multiplier(grid: AxisGrid, symbol: Callable[[np.ndarray], np.ndarray],
                        label: str = "multiplier") -> LinearOperatorHandle:
    """Operator diagonal in momentum space with the given symbol(kappa)."""
    sg = grid.conjugate()
    mult = np.asarray(symbol(sg.nodes), dtype=complex)

    def fn(f):
        phi = analyze_fast(AxialField(grid, "f", f))
        return synthesize_fast(phi.copy_with(mult * phi.values)).values

    return _wrap(label, grid, fn)
