"""Acceptance suite: the ten verification criteria, each at its stated
tolerance, printing one pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.
"""

import subprocess
import sys

import numpy as np
import pytest

from conftest import gaussian_packet, rel_err
from axiwave.grids import AxialField, convert_rep, make_grid
from axiwave.evolution import propagate_scalar
from axiwave.operators import (boost_generator_config, commutator_residual,
                               pbar, pbar0)
from axiwave.verify import RunConfig, run_verification

TOL = {}


@pytest.fixture(scope="module")
def report():
    return run_verification(RunConfig())


def entry(report, label):
    match = [e for e in report.entries if e.label == label]
    assert match, f"missing ledger entry {label!r}"
    return match[0]


def check(report, labels, criterion, description):
    entries = [entry(report, lab) for lab in labels]
    ok = all(e.passed for e in entries)
    worst = max((e.residual / e.tolerance if e.tolerance else np.inf)
                for e in entries)
    status = "PASS" if ok else "FAIL"
    print(f"criterion {criterion:>2}: {status}  {description} "
          f"(worst residual/tolerance = {worst:.2e})")
    assert ok, f"criterion {criterion} failed: " + ", ".join(
        f"{e.label}={e.residual:.2e}>{e.tolerance:.2e}"
        for e in entries if not e.passed)


def test_criterion_1_unitarity(report):
    check(report, ["unitary round-trip", "unitary round-trip order",
                   "profile round-trip"],
          1, "unitary round-trip = identity, order >= 1.8 or at floor")


def test_criterion_2_transform_ledger(report):
    check(report, ["ledger even hilbert", "ledger odd hilbert",
                   "even-odd inversion", "odd-even inversion",
                   "signed inversion +-", "signed inversion -+",
                   "hilbert backends agree", "derivative intertwining"],
          2, "trig/Hilbert composition ledger and backend agreement")


def test_criterion_3_hamiltonian_triangle(report):
    check(report, ["hamiltonian triangle", "squared hamiltonian",
                   "hamiltonian positivity"],
          3, "left/right/spectral forms agree, square matches, positive")


def test_criterion_4_eigenaction(report):
    cfg = RunConfig()
    assert (cfg.packet_k / 2.0) * cfg.packet_width >= 20
    check(report, ["hamiltonian eigenaction"],
          4, "p0 on windowed wave = k (k*width >= 20)")


def test_criterion_5_adjoint_suite(report):
    check(report, ["radial momentum symmetric", "origin surface term",
                   "weighted momentum self-adjoint", "signed hilbert adjoints",
                   "boost generator hermitian"],
          5, "symmetry/adjoint ledger incl. origin surface term")


def test_criterion_6_poincare(report):
    check(report, ["boost-energy commutator", "boost-momentum commutator",
                   "local boost with 1/r pair (time)",
                   "local boost with 1/r pair (axial)",
                   "local boost with derivative pair (time)",
                   "local boost with derivative pair (axial)"],
          6, "boost commutator suite at the fine grid")
    # refinement: fixed physical probes, both h and the truncation edge
    # refine (the Hilbert factors carry domain-truncation error at fixed
    # extent, so the honest ladder grows the box as it shrinks h)
    def resid(n, big_l):
        grid = make_grid(n, big_l)
        rng = np.random.default_rng(99)
        lam = grid.nodes
        ps = []
        for _ in range(4):
            g = np.zeros(grid.size, dtype=complex)
            for _ in range(4):
                c = rng.uniform(-12.0, 12.0)
                w = rng.uniform(3.2, 8.0)
                k = rng.uniform(-2.5, 2.5)
                amp = rng.normal() + 1j * rng.normal()
                g += amp * np.exp(-(((lam - c) / w) ** 2)) * np.exp(1j * k * lam)
            ps.append(convert_rep(AxialField(grid, "g", g), "f"))
        return commutator_residual(
            boost_generator_config(grid, "h_first"), pbar0(grid, "spectral"),
            pbar(grid), 1j, ps, mask_fraction=0.6 * 40.0 / big_l)

    ladder = [resid(256, 40.0), resid(512, 40.0 * np.sqrt(2.0)),
              resid(1024, 80.0)]
    print("    commutator refinement: "
          + " -> ".join(f"{r:.2e}" for r in ladder))
    assert ladder[2] < ladder[1] < ladder[0]


def test_criterion_7_evolution(report):
    check(report, ["norm conservation (spectral)", "norm conservation (rk4)",
                   "density positivity", "continuity order",
                   "packet speed (scalar)", "packet speed (spinor)",
                   "packet speed (vector)", "vector wave translates"],
          7, "norms, positivity, continuity order, packet speeds")


def test_criterion_8_kinematics(report):
    check(report, ["null preservation", "aberration consistency",
                   "doppler consistency", "parallel doppler",
                   "beam norm invariance"],
          8, "null/aberration/Doppler exactness, beam norm drift <= 0.5%")


def test_criterion_9_lorentz_scalar(report):
    check(report, ["finite vs infinitesimal boost",
                   "generator cancellation across modules"],
          9, "boost flow matches the generators across modules")


def test_criterion_10_determinism(tmp_path):
    # tolerances hold at the stated desk scale, so the contract runs there
    cmd = [sys.executable, "-m", "axiwave.cli", "verify", "--grid-size", "256",
           "--extent", "40"]
    outs = []
    codes = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        proc = subprocess.run(cmd + ["--out", str(path)],
                              capture_output=True, text=True)
        codes.append(proc.returncode)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    # exit-code contract: 0 pass, 1 forced failure, 2 usage error
    assert codes == [0, 0]
    forced = subprocess.run(cmd + ["--tol-scale", "0",
                                   "--out", str(tmp_path / "d.json")],
                            capture_output=True)
    usage = subprocess.run([sys.executable, "-m", "axiwave.cli", "bogus"],
                           capture_output=True)
    assert forced.returncode == 1
    assert usage.returncode == 2
    print("criterion 10: PASS  byte-identical serial reports, "
          "exit codes 0/1/2 honored")


def test_rk4_spectral_cross_check_at_t1():
    # supporting evidence for criterion 7: the two propagators agree at t=1
    grid = make_grid(256, 40.0)
    pkt = gaussian_packet(grid, 4.0, width=6.0, center=-6.0)
    spec = propagate_scalar(pkt, [0.0, 1.0], method="spectral")
    rk = propagate_scalar(pkt, [0.0, 1.0], method="rk4", dt=grid.h / 4.0)
    a = convert_rep(spec.snapshots[1], "g").values
    b = convert_rep(rk.snapshots[1], "g").values
    assert rel_err(b, a, grid.interior_mask(0.6)) <= 1e-2


def test_seed_robustness_verdicts_stable():
    # residuals move with the seed, verdicts do not
    outcomes = []
    residuals = []
    for seed in (3, 5, 7, 11, 13):
        rep = run_verification(RunConfig(seed=seed, probe_count=4))
        outcomes.append(tuple(e.passed for e in rep.entries))
        residuals.append(tuple(e.residual for e in rep.entries))
    assert all(o == outcomes[0] for o in outcomes)
    assert all(all(o) for o in outcomes)
    assert any(r != residuals[0] for r in residuals[1:])
