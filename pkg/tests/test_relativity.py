import numpy as np
import pytest

from conftest import rel_err
from axiwave.grids import (SpectralProfile, convert_rep, make_grid,
                           spectral_norm)
from axiwave.relativity import (BeamState, BoostParams, FourMomentum,
                                aberrate_direction, boost_beam,
                                boost_four_momentum, doppler_factor,
                                momentum_boost_generator,
                                observation_aberration)
from axiwave.spectral import synthesize
from axiwave.operators import boost_generator_config

EZ = np.array([0.0, 0.0, 1.0])
EX = np.array([1.0, 0.0, 0.0])


def test_four_momentum_validation():
    FourMomentum(1.0, [0.0, 0.0, 1.0])
    with pytest.raises(ValueError, match="null"):
        FourMomentum(1.0, [0.0, 0.0, 0.5])
    with pytest.raises(ValueError):
        FourMomentum(-1.0, [0.0, 0.0, -1.0])


def test_boost_params_validation():
    b = BoostParams(0.6, EZ)
    assert b.gamma * np.sqrt(1 - 0.36) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        BoostParams(1.0, EZ)
    with pytest.raises(ValueError):
        BoostParams(0.5, [1.0, 1.0, 0.0])


def test_boost_examples():
    b = BoostParams(0.6, EZ)
    k = boost_four_momentum(FourMomentum(1.0, EZ), b)
    assert k.k0 == pytest.approx(0.5, abs=1e-12)
    np.testing.assert_allclose(k.k, [0.0, 0.0, 0.5], atol=1e-12)
    # transverse case
    kt = boost_four_momentum(FourMomentum(1.0, EX), b)
    assert kt.k0 == pytest.approx(1.25, abs=1e-12)
    np.testing.assert_allclose(kt.k, [1.0, 0.0, -0.75], atol=1e-12)
    assert kt.k0 ** 2 == pytest.approx(1.0 + 0.75 ** 2)
    # v = 0 identity
    k0 = boost_four_momentum(FourMomentum(2.0, 2 * EX), BoostParams(0.0, EZ))
    assert k0.k0 == 2.0 and np.all(k0.k == 2 * EX)


def test_null_preservation_random():
    rng = np.random.default_rng(60)
    for _ in range(200):
        d = rng.normal(size=3)
        d /= np.linalg.norm(d)
        scale = rng.uniform(0.1, 10.0)
        k = FourMomentum(scale, scale * d)
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        b = BoostParams(rng.uniform(-0.95, 0.95), axis)
        kp = boost_four_momentum(k, b)
        assert abs(kp.k0 - np.linalg.norm(kp.k)) <= 1e-10 * kp.k0


def test_boost_composition_law():
    v1, v2 = 0.5, 0.3
    v12 = (v1 + v2) / (1 + v1 * v2)
    k = FourMomentum(1.0, EX)
    b1 = boost_four_momentum(boost_four_momentum(k, BoostParams(v1, EZ)),
                             BoostParams(v2, EZ))
    b2 = boost_four_momentum(k, BoostParams(v12, EZ))
    assert b1.k0 == pytest.approx(b2.k0, rel=1e-12)
    np.testing.assert_allclose(b1.k, b2.k, rtol=1e-12)


def test_aberration_formula_values():
    # observation form: theta = pi/2, v = 0.5 -> cos theta' = 0.5
    assert observation_aberration(0.0, 0.5) == pytest.approx(0.5)
    # v = 0 identity
    n = np.array([0.6, 0.0, 0.8])
    np.testing.assert_allclose(aberrate_direction(n, BoostParams(0.0, EZ)), n)


def test_aberration_equals_normalized_boost():
    rng = np.random.default_rng(61)
    for _ in range(1000):
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        b = BoostParams(rng.uniform(-0.99, 0.99), axis)
        via_formula = aberrate_direction(n, b)
        kp = boost_four_momentum(FourMomentum(1.0, n), b)
        via_boost = kp.k / np.linalg.norm(kp.k)
        assert np.max(np.abs(via_formula - via_boost)) <= 1e-12
        assert abs(np.linalg.norm(via_formula) - 1.0) <= 1e-12


def test_doppler_values_and_oracle():
    b = BoostParams(0.6, EZ)
    assert doppler_factor(EZ, b) == pytest.approx(0.5, abs=1e-12)
    assert doppler_factor(-EZ, b) == pytest.approx(2.0, abs=1e-12)
    # against the 4-vector boost, random directions
    rng = np.random.default_rng(62)
    for _ in range(100):
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        v = rng.uniform(-0.9, 0.9)
        bb = BoostParams(v, EZ)
        kp = boost_four_momentum(FourMomentum(1.0, n), bb)
        assert doppler_factor(n, bb) == pytest.approx(kp.k0, rel=1e-12)
        # forward/backward product = gamma^2 (1 - v^2 c^2)
        prod = doppler_factor(n, bb) * doppler_factor(n, BoostParams(-v, EZ))
        c = n @ EZ
        assert prod == pytest.approx(bb.gamma ** 2 * (1 - v * v * c * c),
                                     rel=1e-12)


def forward_beam(k0=8.0, width_k=1.2):
    grid = make_grid(256, 40.0)
    sg = grid.conjugate()
    kap = sg.nodes
    vals = np.where(kap > 0, np.exp(-(((kap - k0) / width_k) ** 2)), 0.0)
    return BeamState(EZ, SpectralProfile(sg, vals.astype(complex)))


def test_parallel_boost_peak_halves():
    beam = forward_beam(k0=8.0)
    out = boost_beam(beam, BoostParams(0.6, EZ))
    assert len(out) == 1
    new = out[0]
    np.testing.assert_allclose(new.direction, EZ)
    kap = new.profile.grid.nodes
    peak = kap[np.argmax(np.abs(new.profile.values))]
    assert abs(peak - 4.0) <= new.profile.grid.dk


def test_boost_beam_v0_identity():
    beam = forward_beam()
    out = boost_beam(beam, BoostParams(0.0, EZ))
    assert len(out) == 1
    np.testing.assert_array_equal(out[0].profile.values, beam.profile.values)


def test_inv_k_norm_preserved_parallel():
    beam = forward_beam(k0=8.0, width_k=1.0)
    before = spectral_norm(beam.profile, "inv_k")
    out = boost_beam(beam, BoostParams(0.6, EZ))[0]
    after = spectral_norm(out.profile, "inv_k")
    assert abs(after - before) / before <= 5e-3


def test_general_boost_splits_branches():
    grid = make_grid(256, 40.0)
    sg = grid.conjugate()
    kap = sg.nodes
    vals = (np.exp(-(((kap - 8.0) / 1.2) ** 2))
            + np.exp(-(((kap + 6.0) / 1.0) ** 2))).astype(complex)
    beam = BeamState(EZ, SpectralProfile(sg, vals))
    b = BoostParams(0.5, EX)
    fwd, bwd = boost_beam(beam, b)
    np.testing.assert_allclose(fwd.direction, aberrate_direction(EZ, b),
                               atol=1e-12)
    np.testing.assert_allclose(bwd.direction, aberrate_direction(-EZ, b),
                               atol=1e-12)
    # each output is single-sided in kappa
    n = sg.n_half
    assert np.all(fwd.profile.values[:n] == 0.0)
    assert np.all(bwd.profile.values[:n] == 0.0)
    # transverse boost: magnitudes scale by gamma on both branches
    peak_f = sg.nodes[np.argmax(np.abs(fwd.profile.values))]
    assert abs(peak_f - b.gamma * 8.0) <= 2 * sg.dk


def test_inv_k_drift_refines_with_kappa_grid():
    # interpolation budget at least halves per dk halving (cubic order)
    drifts = []
    for extent, n in ((40.0, 256), (80.0, 512)):
        sg = make_grid(n, extent).conjugate()
        kap = sg.nodes
        vals = np.where(kap > 0, np.exp(-(((kap - 8.0) / 1.0) ** 2)),
                        0.0).astype(complex)
        beam = BeamState(EZ, SpectralProfile(sg, vals))
        before = spectral_norm(beam.profile, "inv_k")
        out = boost_beam(beam, BoostParams(0.6, EZ))[0]
        drifts.append(abs(spectral_norm(out.profile, "inv_k") - before)
                      / before)
    assert drifts[1] <= 0.5 * drifts[0]


def test_resample_outside_support_warns():
    # packet pressed against the top of the kappa grid: the redshifted
    # output samples the profile beyond its support
    beam = forward_beam(k0=20.0, width_k=2.0)
    with pytest.warns(UserWarning, match="outside the source support"):
        boost_beam(beam, BoostParams(0.6, EZ))


def test_generator_two_routes_agree():
    grid = make_grid(2048, 160.0)
    sg = grid.conjugate()
    kap = sg.nodes
    phi = SpectralProfile(sg, (kap * np.exp(-kap ** 2)).astype(complex))
    a = momentum_boost_generator(phi, "spectral").values
    c = momentum_boost_generator(phi, "fd").values
    scale = np.max(np.abs(a))
    assert np.max(np.abs(a - c)) <= 1e-6 * scale
    want = 1j * kap * (1.0 - 2.0 * kap ** 2) * np.exp(-kap ** 2)
    assert np.max(np.abs(a - want)) <= 1e-8 * scale


def test_infinitesimal_boost_matches_generator():
    # finite parallel boost vs phi - i dv N_k phi on a forward profile:
    # residual O(dv^2) with a stable constant under dv halving
    beam = forward_beam(k0=8.0, width_k=1.0)
    gen = momentum_boost_generator(beam.profile).values
    consts = []
    for dv in (1e-3, 5e-4):
        out = boost_beam(beam, BoostParams(dv, EZ))[0].profile.values
        lin = beam.profile.values - 1j * dv * gen
        resid = np.max(np.abs(out - lin))
        consts.append(resid / dv ** 2)
    assert consts[0] == pytest.approx(consts[1], rel=0.15)


def test_cross_module_generator_cancellation():
    # synthesize(boost(dv) phi) ~ (1 - i dv N_config) synthesize(phi)
    grid = make_grid(512, 40.0)
    sg = grid.conjugate()
    kap = sg.nodes
    phi = SpectralProfile(sg, np.where(
        kap > 0, np.exp(-(((kap - 8.0) / 1.0) ** 2)), 0.0).astype(complex))
    beam = BeamState(EZ, phi)
    psi = synthesize(phi)
    psi_g = convert_rep(psi, "g").values
    n_conf = boost_generator_config(grid, "h_first")
    dv = 2e-4
    boosted = boost_beam(beam, BoostParams(dv, EZ))[0].profile
    delta_actual = convert_rep(synthesize(boosted), "g").values - psi_g
    delta_pred = -1j * dv * convert_rep(n_conf.apply(psi), "g").values
    mask = grid.interior_mask(0.6)
    assert rel_err(delta_actual, delta_pred, mask) <= 0.05
