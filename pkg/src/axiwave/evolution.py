"""Time propagation for the axis fields: scalar, second-order wave,
two-component spinor and complex three-vector forms.

Everything propagates in the weighted representation g = sqrt|l| psi,
where the first-order evolution i dg/dt = H dg/dlambda (H the full-line
Hilbert transform) is diagonal in momentum space with symbol |kappa|:

    scalar   g(t) = Finv exp(-i |kappa| t) F g0          (positive branch)
    wave     ghat(t) = cos(|k| t) ghat0 + sin(|k| t)/|k| ghatdot0
    spinor   upper/lower components carry symbols +kappa / -kappa
    vector   circular combinations F1 -/+ i F2 carry symbols +kappa / -kappa

The spectral propagators are exact in time.  A classical RK4 stepper of
the composed Hamiltonian is kept as a cross-check for the scalar case;
its step must respect dt <= 2 sqrt(2) h / pi, obtained from |R(iy)| <= 1
for RK4 on the imaginary axis (|y| <= 2 sqrt 2) and the spectral radius
max|kappa| < pi/h of the discrete Hamiltonian.

The scalar density rho = |g|^2 + |Hg|^2 is pointwise non-negative by
construction and satisfies a discrete continuity law with the axial
current J = -2 Im(conj(g) Hg); the residual of that law converges at
second order in the joint (h, dt) refinement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .grids import AxialField, AxisGrid, convert_rep
from .spectral import fourier_full, fourier_full_inverse
from .transforms import hilbert_signed

RK4_STABILITY_FACTOR = 2.0 * np.sqrt(2.0) / np.pi  # dt <= this * h


@dataclass(frozen=True, eq=False)
class SpinorField:
    """Two-component field (upper, lower) on an axis grid."""

    grid: AxisGrid
    rep: str
    up: np.ndarray = field(repr=False)
    down: np.ndarray = field(repr=False)

    def __post_init__(self):
        u = np.asarray(self.up, dtype=complex)
        d = np.asarray(self.down, dtype=complex)
        if u.shape != (self.grid.size,) or d.shape != (self.grid.size,):
            raise ValueError("component lengths must equal node count")
        object.__setattr__(self, "up", u)
        object.__setattr__(self, "down", d)

    def component(self, idx: int) -> AxialField:
        return AxialField(self.grid, self.rep, self.up if idx == 0 else self.down)


@dataclass(frozen=True, eq=False)
class VectorField3:
    """Complex 3-vector field (electric + i magnetic) on an axis grid."""

    grid: AxisGrid
    rep: str
    values: np.ndarray = field(repr=False)  # shape (3, 2 n_half)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (3, self.grid.size):
            raise ValueError("expected shape (3, node count)")
        object.__setattr__(self, "values", v)

    def component(self, idx: int) -> AxialField:
        return AxialField(self.grid, self.rep, self.values[idx])


@dataclass(frozen=True, eq=False)
class EvolutionResult:
    times: np.ndarray
    snapshots: list
    diagnostics: dict

    def __post_init__(self):
        if len(self.snapshots) != len(self.times):
            raise ValueError("one snapshot per time")


def _check_times(t_grid) -> np.ndarray:
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 1 or t[0] != 0.0:
        raise ValueError("time grid must start at 0")
    if t.size > 1 and not np.all(np.diff(t) > 0.0):
        raise ValueError("time grid must be strictly increasing")
    return t


def _g_of(fld: AxialField) -> np.ndarray:
    return convert_rep(fld, "g").values


def _field_from_g(grid, g, rep):
    return convert_rep(AxialField(grid, "g", g), rep)


def hilbert_full_line(g: np.ndarray, grid: AxisGrid,
                      backend: str = "spectral") -> np.ndarray:
    """Plain full-line Hilbert transform H = -sgn . Hplus on raw samples."""
    out = hilbert_signed(AxialField(grid, "g", g), "plus", backend=backend)
    return -np.sign(grid.nodes) * out.values


def density_current(psi: AxialField, backend: str = "spectral"):
    """Non-negative density and axial current of the first-order flow.

    rho = |g|^2 + |Hg|^2  (pointwise >= 0 by construction),
    J   = -2 Im(conj(g) Hg), positive for forward-moving waves.
    """
    g = _g_of(psi)
    hg = hilbert_full_line(g, psi.grid, backend)
    rho = (g.real ** 2 + g.imag ** 2) + (hg.real ** 2 + hg.imag ** 2)
    j = -2.0 * np.imag(np.conj(g) * hg)
    return rho, j


def sigma_density(psi: AxialField, dpsi_dt: AxialField) -> np.ndarray:
    """Second-order conserved density i (psi* dt psi - CC); indefinite."""
    g = _g_of(psi)
    gdot = _g_of(dpsi_dt)
    return -2.0 * np.imag(np.conj(g) * gdot)


def _scalar_diagnostics(grid, g, backend="spectral"):
    hg = hilbert_full_line(g, grid, backend)
    rho = np.abs(g) ** 2 + np.abs(hg) ** 2
    return {
        "norm": float(np.sqrt(np.sum(np.abs(g) ** 2) * grid.h)),
        "min_rho": float(np.min(rho)),
        "max_rho": float(np.max(rho)),
    }


def _hamiltonian_g(grid: AxisGrid):
    """g-level stepped Hamiltonian, left factorization with the
    trig-interpolant radial derivative.

    Differentiating the sine/cosine interpolants maps their coefficient
    spaces into each other exactly, which collapses
    -sgn d_r (Hplus g) into the parity-split composition
    (Fc~ k Fc) on the even part + (Fs~ k Fs) on the odd part.  That
    operator is Hermitian and positive to rounding (the same matrix the
    unitary-map route produces), so the stepped norm cannot grow; the
    finite-difference left/right factorizations keep their own ledger in
    the operators module.
    """
    from .transforms import _trig_sum
    n = grid.n_half
    dk = grid.conjugate().dk
    k = grid.conjugate().positive_nodes()

    def apply(g):
        plus, minus = g[n:], g[n - 1::-1]
        even = 0.5 * (plus + minus)
        odd = 0.5 * (plus - minus)
        out_e = _trig_sum(k * _trig_sum(even, grid.h, "cos"), dk, "cos")
        out_o = _trig_sum(k * _trig_sum(odd, grid.h, "sin"), dk, "sin")
        op = out_e + out_o
        om = out_e - out_o
        return np.concatenate([om[::-1], op])

    return apply


def propagate_scalar(psi0: AxialField, t_grid: Sequence[float],
                     method: str = "spectral",
                     dt: float | None = None) -> EvolutionResult:
    """First-order evolution i dt psi = p0 psi (positive branch only).

    method="spectral" multiplies by exp(-i |kappa| t), exact in time;
    method="rk4" steps the composed left-form Hamiltonian and serves as an
    independent cross-check.  The RK4 substep obeys
    dt <= 2 sqrt(2) h / pi (spectral radius bound); default h/4.
    """
    t = _check_times(t_grid)
    grid = psi0.grid
    g0 = _g_of(psi0)
    snaps, norms, minr, maxr = [], [], [], []

    if method == "spectral":
        sg = grid.conjugate()
        absk = np.abs(sg.nodes)
        ghat0 = fourier_full(g0, grid)
        for ti in t:
            g = fourier_full_inverse(np.exp(-1j * absk * ti) * ghat0, sg)
            snaps.append(_field_from_g(grid, g, psi0.rep))
            d = _scalar_diagnostics(grid, g)
            norms.append(d["norm"]); minr.append(d["min_rho"]); maxr.append(d["max_rho"])
    elif method == "rk4":
        dt_max = RK4_STABILITY_FACTOR * grid.h
        dt = grid.h / 4.0 if dt is None else float(dt)
        if dt > dt_max:
            raise ValueError(
                f"rk4 step {dt:.3e} violates the stability bound "
                f"2*sqrt(2)*h/pi = {dt_max:.3e}")
        ham = _hamiltonian_g(grid)

        def rhs(g):
            return -1j * ham(g)

        g = g0.copy()
        t_now = 0.0
        for ti in t:
            while t_now < ti - 1e-12:
                step = min(dt, ti - t_now)
                k1 = rhs(g)
                k2 = rhs(g + 0.5 * step * k1)
                k3 = rhs(g + 0.5 * step * k2)
                k4 = rhs(g + step * k3)
                g = g + step / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
                t_now += step
            snaps.append(_field_from_g(grid, g, psi0.rep))
            d = _scalar_diagnostics(grid, g)
            norms.append(d["norm"]); minr.append(d["min_rho"]); maxr.append(d["max_rho"])
    else:
        raise ValueError(f"unknown method {method!r}")

    return EvolutionResult(times=t, snapshots=snaps, diagnostics={
        "norm": np.array(norms), "min_rho": np.array(minr),
        "max_rho": np.array(maxr),
        "continuity_residual": continuity_residuals_from_snapshots(
            t, snaps, grid),
    })


def continuity_residuals_from_snapshots(times, snapshots, grid,
                                        mask_fraction: float = 0.6):
    """Centered-difference residual dt rho + dlambda J per interior snapshot.

    Entries for the first and last snapshot are NaN (no centered stencil).
    Relative to the peak |dt rho| of the triple.
    """
    n = len(snapshots)
    out = np.full(n, np.nan)
    if n < 3:
        return out
    rhos, js = [], []
    for s in snapshots:
        rho, j = density_current(s)
        rhos.append(rho)
        js.append(j)
    mask = grid.interior_mask(mask_fraction)
    lam_h = grid.h
    for i in range(1, n - 1):
        dt2 = times[i + 1] - times[i - 1]
        drho = (rhos[i + 1] - rhos[i - 1]) / dt2
        dj = np.gradient(js[i], lam_h)
        resid = (drho + dj)[mask]
        scale = np.max(np.abs(drho[mask]))
        out[i] = np.max(np.abs(resid)) / scale if scale > 0 else 0.0
    return out


def propagate_wave(psi0: AxialField, dpsi0_dt: AxialField,
                   t_grid: Sequence[float]) -> EvolutionResult:
    """Second-order wave form; supports both frequency signs.

    ghat(t) = cos(|k| t) ghat0 + sin(|k| t)/|k| ghatdot0, exact in time.
    Snapshots are (psi, dpsi_dt) pairs; diagnostics carry the indefinite
    second-order density extrema.
    """
    t = _check_times(t_grid)
    grid = psi0.grid
    if not grid.same_as(dpsi0_dt.grid):
        raise ValueError("initial data live on different grids")
    sg = grid.conjugate()
    absk = np.abs(sg.nodes)
    a = fourier_full(_g_of(psi0), grid)
    b = fourier_full(_g_of(dpsi0_dt), grid)
    snaps, smin, smax = [], [], []
    for ti in t:
        c, s = np.cos(absk * ti), np.sin(absk * ti)
        ghat = c * a + s / absk * b
        ghat_dot = -absk * s * a + c * b
        g = fourier_full_inverse(ghat, sg)
        gdot = fourier_full_inverse(ghat_dot, sg)
        psi = _field_from_g(grid, g, psi0.rep)
        psidot = _field_from_g(grid, gdot, psi0.rep)
        snaps.append((psi, psidot))
        sig = -2.0 * np.imag(np.conj(g) * gdot)
        smin.append(float(np.min(sig)))
        smax.append(float(np.max(sig)))
    return EvolutionResult(times=t, snapshots=snaps, diagnostics={
        "sigma_min": np.array(smin), "sigma_max": np.array(smax)})


def propagate_weyl(psi0: SpinorField, t_grid: Sequence[float]) -> EvolutionResult:
    """Massless two-component evolution i dt Psi = sigma . pbar Psi.

    On the axis sigma . pbar is diagonal: the upper component carries the
    momentum-space symbol +kappa (forward mover), the lower -kappa.
    """
    t = _check_times(t_grid)
    grid = psi0.grid
    sg = grid.conjugate()
    kap = sg.nodes
    gu = fourier_full(_g_of(psi0.component(0)), grid)
    gd = fourier_full(_g_of(psi0.component(1)), grid)
    snaps, norm_u, norm_d = [], [], []
    for ti in t:
        u = fourier_full_inverse(np.exp(-1j * kap * ti) * gu, sg)
        d = fourier_full_inverse(np.exp(+1j * kap * ti) * gd, sg)
        up = _field_from_g(grid, u, psi0.rep)
        dn = _field_from_g(grid, d, psi0.rep)
        snaps.append(SpinorField(grid, psi0.rep, up.values, dn.values))
        norm_u.append(float(np.sqrt(np.sum(np.abs(u) ** 2) * grid.h)))
        norm_d.append(float(np.sqrt(np.sum(np.abs(d) ** 2) * grid.h)))
    return EvolutionResult(times=t, snapshots=snaps, diagnostics={
        "norm_up": np.array(norm_u), "norm_down": np.array(norm_d)})


def weyl_hamiltonian(grid: AxisGrid):
    """Handle applying sigma . pbar to a SpinorField (g-level spectral)."""
    from .operators import pbar
    p = pbar(grid)

    def apply(psi: SpinorField) -> SpinorField:
        up = p.apply(psi.component(0))
        dn = p.apply(psi.component(1))
        return SpinorField(grid, psi.rep, up.values, -dn.values)

    return apply


MAXWELL_CONSTRAINT_MSG = (
    "transversality constraint violated: the axial evolution requires "
    "pbar . F = 0, i.e. a vanishing axial component F3")


def propagate_maxwell(f0: VectorField3, t_grid: Sequence[float],
                      constraint_tol: float = 1e-12) -> EvolutionResult:
    """Source-free spin-1 evolution dt F = pbar x F with pbar . F = 0.

    The circular combinations G-+ = F1 -+ i F2 are eigenmodes: G- (the
    combination (w, i w, 0) of the forward wave) carries symbol +kappa and
    translates in +n, G+ carries -kappa and translates in -n.  F3 is never
    sourced and must vanish at input.
    """
    t = _check_times(t_grid)
    grid = f0.grid
    scale = np.max(np.abs(f0.values)) or 1.0
    if np.max(np.abs(f0.values[2])) > constraint_tol * scale:
        raise ValueError(MAXWELL_CONSTRAINT_MSG)
    sg = grid.conjugate()
    kap = sg.nodes
    g1 = _g_of(f0.component(0))
    g2 = _g_of(f0.component(1))
    gp = fourier_full(g1 + 1j * g2, grid)   # symbol -kappa
    gm = fourier_full(g1 - 1j * g2, grid)   # symbol +kappa
    snaps, norms = [], []
    for ti in t:
        p = fourier_full_inverse(np.exp(+1j * kap * ti) * gp, sg)
        m = fourier_full_inverse(np.exp(-1j * kap * ti) * gm, sg)
        c1 = 0.5 * (p + m)
        c2 = (p - m) / 2j
        f1 = _field_from_g(grid, c1, f0.rep)
        f2 = _field_from_g(grid, c2, f0.rep)
        snaps.append(VectorField3(grid, f0.rep, np.stack(
            [f1.values, f2.values, np.zeros(grid.size, dtype=complex)])))
        norms.append(float(np.sqrt(
            (np.sum(np.abs(c1) ** 2) + np.sum(np.abs(c2) ** 2)) * grid.h)))
    return EvolutionResult(times=t, snapshots=snaps, diagnostics={
        "norm": np.array(norms)})


def packet_centroid(psi: AxialField) -> float:
    """Density-weighted axis position of a scalar snapshot."""
    rho, _ = density_current(psi)
    return float(np.sum(psi.grid.nodes * rho) / np.sum(rho))
