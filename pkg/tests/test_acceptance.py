"""Acceptance suite: every exit criterion at its stated tolerance.

Each test prints one `[acceptance] criterion NN ... PASS/FAIL` line (run
pytest with -s or check captured output) and then asserts.  Criteria are
desk-scale; the whole module stays well under the five-minute budget.
"""

import time

import numpy as np
import pytest

from qmlab import cli
from qmlab import doubleslit as ds
from qmlab import dynamics as dyn
from qmlab import gridwave as gw
from qmlab import hilbert as hb
from qmlab import relativistic as rel
from qmlab import spin as sp
from qmlab.rng import generator

HBAR = 1.0


def record(number, label, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] criterion {number:2d} ({label}): {status} [{detail}]")
    assert ok, f"criterion {number} ({label}): {detail}"


def test_criterion_01_free_packet_uniform_motion():
    start = time.perf_counter()
    grid = gw.Grid1D(-60.0, 120.0 / 2048, 2048)
    sigma = 1.0
    psi = gw.gaussian_packet(grid, -15.0, 2.0, sigma)
    times = np.linspace(0.0, 10 * sigma / 2.0, 21)  # spans 10 packet widths
    xs = np.array([gw.expectation_x(dyn.free_evolve_exact(psi, t)) for t in times])
    ps = np.array([gw.expectation_p(dyn.free_evolve_exact(psi, t)) for t in times])
    slope = np.polyfit(times, xs, 1)[0]
    slope_err = abs(slope - ps[0] / psi.mass) / abs(ps[0] / psi.mass)
    p_drift = np.abs(ps - ps[0]).max()
    wall = time.perf_counter() - start
    record(
        1,
        "free packet",
        slope_err <= 1e-6 and p_drift <= 1e-10 and wall < 2.0,
        f"slope_err={slope_err:.2e}, p_drift={p_drift:.2e}, wall={wall:.2f}s",
    )


def test_criterion_02_uncertainty_bound():
    grid = gw.Grid1D(-30.0, 60.0 / 1024, 1024)
    rng = generator(2024)
    basis = [gw.hermite_basis(grid, k) for k in range(10)]
    worst = np.inf
    for _ in range(500):
        coeff = rng.standard_normal(10) + 1j * rng.standard_normal(10)
        state = gw.grid_wavefunction(grid, sum(c * b.amp for c, b in zip(coeff, basis)))
        dx_std, dp_std = gw.uncertainties(state)
        worst = min(worst, dx_std * dp_std)
    sat_err = 0.0
    for sigma in (0.9, 1.7):
        dx_std, dp_std = gw.uncertainties(gw.gaussian_packet(grid, 0.0, 1.0, sigma))
        sat_err = max(sat_err, abs(dx_std * dp_std - HBAR / 2) / (HBAR / 2))
    record(
        2,
        "uncertainty bound",
        worst >= HBAR / 2 - 1e-9 and sat_err <= 1e-6,
        f"min_product={worst:.12f}, saturation_err={sat_err:.2e}",
    )


def test_criterion_03_transform_isometry():
    grid = gw.Grid1D(-15.0, 30.0 / 256, 256)
    rng = generator(3)
    worst = 0.0
    for _ in range(200):
        amp = rng.standard_normal(grid.n) + 1j * rng.standard_normal(grid.n)
        state = gw.grid_wavefunction(grid, amp)
        phi = gw.to_momentum(state)
        worst = max(worst, abs(gw.momentum_norm_squared(phi) - gw.norm_squared(state)))
    record(3, "transform isometry", worst <= 1e-12, f"max_mismatch={worst:.2e}")


def test_criterion_04_norm_and_energy_conservation():
    grid = gw.Grid1D(-20.0, 40.0 / 256, 256)
    psi = gw.gaussian_packet(grid, 0.5, 0.0, np.sqrt(0.5))
    well = dyn.harmonic_potential(grid, 1.0, 1.0)
    _, log = dyn.split_step_evolve(psi, well, 2e-4, 10_000, log_every=100)
    norm_drift = np.abs(log.norm - 1.0).max()
    energy_drift = np.abs(log.energy - log.energy[0]).max() / abs(log.energy[0])
    record(
        4,
        "norm and energy conservation",
        norm_drift <= 1e-8 and energy_drift <= 1e-8,
        f"norm_drift={norm_drift:.2e}, energy_drift={energy_drift:.2e}",
    )


def test_criterion_05_mean_force_law():
    grid = gw.Grid1D(-20.0, 40.0 / 256, 256)
    force = 0.5
    psi = gw.gaussian_packet(grid, 0.0, 0.0, 1.0)
    _, log = dyn.split_step_evolve(psi, dyn.linear_potential(grid, force), 1e-3, 1000, log_every=10)
    dpdt = (log.p_mean[2:] - log.p_mean[:-2]) / (log.times[2:] - log.times[:-2])
    lin_err = np.abs(dpdt + force).max()
    omega, sigma = 1.0, np.sqrt(0.5)
    coherent = gw.gaussian_packet(grid, 1.0, 0.0, sigma)
    well = dyn.harmonic_potential(grid, 1.0, omega)
    _, harm_log = dyn.split_step_evolve(coherent, well, 1e-3, 3000, log_every=10)
    harm_resid = dyn.ehrenfest_residual(harm_log, well)
    scale = omega**2 * sigma
    record(
        5,
        "mean force law",
        lin_err <= 1e-6 and harm_resid <= 1e-4 * scale,
        f"linear_err={lin_err:.2e}, harmonic_resid={harm_resid:.2e} (scale {scale:.2f})",
    )


def test_criterion_06_double_slit():
    start = time.perf_counter()
    cfg = ds.SlitScreenConfig()  # default 512 x 256 configuration
    runs = {m: ds.double_slit_run(cfg, m) for m in ("both", "slit1", "slit2")}
    wall = time.perf_counter() - start
    both, one, two = runs["both"], runs["slit1"], runs["slit2"]
    maxima = ds.intensity_maxima(both.y, both.intensity)
    spacing = ds.central_fringe_spacing(both.y, both.intensity)
    predicted = ds.fraunhofer_spacing(cfg)
    spacing_err = abs(spacing - predicted) / predicted
    raw_b = both.transmitted * both.intensity
    raw_sum = one.transmitted * one.intensity + two.transmitted * two.intensity
    l1 = float(np.abs(raw_b - raw_sum).sum() / np.abs(raw_b).sum())
    center = slice(cfg.ny // 2 - 26, cfg.ny // 2 + 26)
    band = both.intensity[center]
    visibility = float((band.max() - band.min()) / (band.max() + band.min()))
    record(
        6,
        "double slit",
        len(maxima) >= 3
        and spacing_err <= 0.10
        and l1 > 0.2
        and visibility > 0.5
        and wall < 30.0,
        f"maxima={len(maxima)}, spacing_err={spacing_err:.3f}, l1={l1:.3f}, "
        f"visibility={visibility:.2f}, wall={wall:.1f}s",
    )


def test_criterion_07_spin_algebra():
    worst_comm = 0.0
    worst_ladder = 0.0
    for two_j in range(1, 41):
        j = two_j / 2
        s = sp.spin_matrices(j, HBAR)
        worst_comm = max(worst_comm, sp.check_su2(s))
        for i, m in enumerate(s.m_values):
            e = np.zeros(s.dim, dtype=complex)
            e[i] = 1.0
            for op, shift in ((s.jplus, 1), (s.jminus, -1)):
                expected = (j * (j + 1) - m * (m + shift)) * HBAR**2
                worst_ladder = max(
                    worst_ladder, abs(np.linalg.norm(op @ e) ** 2 - expected)
                )
    half = sp.spin_matrices(0.5, HBAR)
    exact = (
        np.array_equal(half.jx, np.array([[0, HBAR / 2], [HBAR / 2, 0]], dtype=complex))
        and np.array_equal(half.jy, np.array([[0, -0.5j * HBAR], [0.5j * HBAR, 0]]))
        and np.array_equal(half.jz, np.diag([HBAR / 2, -HBAR / 2]).astype(complex))
    )
    record(
        7,
        "spin algebra",
        worst_comm <= 1e-12 and worst_ladder <= 1e-12 and exact,
        f"commutator={worst_comm:.2e}, ladder={worst_ladder:.2e}, pauli_exact={exact}",
    )


def test_criterion_08_ring_spectrum_integers():
    worst_int = 0.0
    worst_half = np.inf
    for n in (16, 64):
        eig = sp.orbital_ring_spectrum(n, HBAR)
        frac = eig / HBAR - np.round(eig / HBAR)
        worst_int = max(worst_int, np.abs(frac).max())
        worst_half = min(worst_half, (0.5 - np.abs(frac)).min())
    record(
        8,
        "ring integer spectrum",
        worst_int <= 1e-9 and worst_half >= 0.1,
        f"integer_err={worst_int:.2e}, half_integer_distance={worst_half:.3f}",
    )


def test_criterion_09_larmor():
    alpha, beta = 0.6, 0.8j
    omega0 = 1.7
    s = sp.spin_matrices(0.5, HBAR)
    h = hb.Observable(omega0 * s.jz)
    psi0 = hb.make_state([alpha, beta])
    closed_err = flip_err = muz_err = 0.0
    for t in np.linspace(0.0, 3 * 2 * np.pi / omega0, 40):
        closed = sp.larmor_evolve(alpha, beta, omega0, float(t))
        spectral = hb.evolve_isolated(h, psi0, float(t), HBAR)
        closed_err = max(closed_err, np.abs(closed.amp - spectral.amp).max())
        flipped = sp.larmor_evolve(alpha, beta, omega0, float(t) + 2 * np.pi / omega0)
        flip_err = max(flip_err, np.abs(flipped.amp + closed.amp).max())
        _, _, mu_z = sp.magnetic_moment_means(alpha, beta, omega0, 1.0, float(t))
        muz_err = max(muz_err, abs(mu_z - HBAR / 2 * (0.36 - 0.64)))
    record(
        9,
        "larmor precession",
        closed_err <= 1e-12 and flip_err <= 1e-12 and muz_err <= 1e-12,
        f"closed_vs_spectral={closed_err:.2e}, flip={flip_err:.2e}, mu_z={muz_err:.2e}",
    )


def test_criterion_10_two_spin():
    _, _, _, s2, basis = sp.couple_two_spins(HBAR)
    eig = np.linalg.eigvalsh(s2)
    spec_err = np.abs(eig - np.array([0.0, 2 * HBAR**2, 2 * HBAR**2, 2 * HBAR**2])).max()
    p = sp.exchange_operator(2)
    ex_err = 0.0
    for i in range(4):
        expected = 1.0 if i < 3 else -1.0
        v = basis.theta[:, i]
        ex_err = max(ex_err, np.abs(p @ v - expected * v).max())
    record(
        10,
        "two-spin coupling",
        spec_err <= 1e-12 and ex_err <= 1e-12,
        f"spectrum_err={spec_err:.2e}, exchange_err={ex_err:.2e}",
    )


def test_criterion_11_entangled_pair_sampling():
    start = time.perf_counter()
    alpha, beta = 0.6, 0.8
    psi = hb.make_state([0.0, alpha, beta, 0.0])
    n = 100_000
    counts = sp.epr_joint_counts(psi, n, seed=2026)
    wall = time.perf_counter() - start
    forbidden = int(counts[0, 0] + counts[1, 1])
    freq = counts[0, 1] / n
    sigma = np.sqrt(alpha**2 * (1 - alpha**2) / n)
    dev = abs(freq - alpha**2)
    record(
        11,
        "entangled pair correlations",
        forbidden == 0 and dev <= 3 * sigma and wall < 5.0,
        f"forbidden={forbidden}, dev={dev:.2e} (3sigma={3 * sigma:.2e}), wall={wall:.2f}s",
    )


def test_criterion_12_born_sampling():
    rng = generator(26)
    worst_z = 0.0
    n = 100_000
    for pair in range(20):
        dim = int(rng.integers(2, 9))
        psi = hb.random_state(dim, rng)
        obs = hb.Observable(hb.random_hermitian(dim, rng))
        records = hb.measure_probabilities(psi, obs)
        counts = hb.sample_outcomes(psi, obs, n, seed=1000 + pair)
        for idx, recd in enumerate(records):
            var = recd.probability * (1 - recd.probability)
            if var <= 0:
                continue
            z = abs(counts[idx] / n - recd.probability) / np.sqrt(var / n)
            worst_z = max(worst_z, float(z))
    record(12, "born sampling", worst_z <= 3.0, f"worst_zscore={worst_z:.2f}")


def test_criterion_13_indefinite_density():
    grid = gw.Grid1D(-24.0, 48.0 / 512, 512)
    mixed = rel.kg_mixed_packet(grid, 0.0, 2.0, 0.0, 2.0, mass=1.0)
    min_mixed = rel.kg_density(mixed).min()
    q0 = rel.kg_charge(mixed)
    state = mixed
    drift = 0.0
    for _ in range(1000):
        state = rel.kg_evolve(state, 0.003, 1)
        drift = max(drift, abs(rel.kg_charge(state) - q0))
    positive = rel.kg_packet(grid, 0.0, 0.0, 2.0, mass=5.0)
    min_pos = rel.kg_density(positive).min()
    record(
        13,
        "indefinite conserved density",
        min_mixed < -0.01 and drift <= 1e-10 and min_pos >= -1e-12,
        f"min_mixed={min_mixed:.3f}, charge_drift={drift:.2e}, min_positive={min_pos:.2e}",
    )


def test_criterion_14_kg_nonrelativistic_limit():
    m, p_over_m = 1.0, 0.03
    p0 = p_over_m * m
    sigma_x = 1.0 / (2 * (p0 / 6))
    grid = gw.Grid1D(-1200.0, 2400.0 / 4096, 4096)
    state = rel.kg_packet(grid, 0.0, p0, sigma_x, mass=m)
    period = 2 * np.pi / (p0**2 / (2 * m))
    phase_err, l2 = rel.kg_nonrelativistic_mismatch(state, period)
    record(
        14,
        "kg nonrelativistic limit",
        phase_err <= 1e-3,
        f"relative_phase_err={phase_err:.2e}, l2={l2:.2e} (p/m={p_over_m})",
    )


def test_criterion_15_dirac():
    g = rel.build_gammas()
    mats = [g.g1, g.g2, g.g3, g.g4]
    eye = np.eye(4, dtype=complex)
    clifford = 0.0
    for i, gi in enumerate(mats):
        expect = eye if i == 3 else -eye
        clifford = max(clifford, float(np.abs(gi @ gi - expect).max()))
        for j in range(i + 1, 4):
            clifford = max(clifford, float(np.abs(gi @ mats[j] + mats[j] @ gi).max()))
    sq_err = spec_err = 0.0
    swapped = -np.inf
    for p in (0.0, 0.3, 0.8):
        h = rel.dirac_hamiltonian([p, 0.0, 0.0], 1.0)
        sq_err = max(sq_err, float(np.abs(h @ h - (p**2 + 1.0) * eye).max()))
        mode = rel.dirac_mode(p, 1.0)
        e = np.sqrt(p**2 + 1.0)
        spec_err = max(
            spec_err, float(np.abs(mode.energies - np.array([-e, -e, e, e])).max())
        )
        swapped = max(swapped, rel.swapped_state_energy(mode))
    box_resid = rel.dirac_square_check(64)
    record(
        15,
        "dirac equation",
        clifford == 0.0
        and sq_err <= 1e-12
        and spec_err <= 1e-12
        and box_resid < 1e-9
        and swapped < 0,
        f"clifford={clifford:.1e}, H^2={sq_err:.1e}, spectrum={spec_err:.1e}, "
        f"D^2={box_resid:.1e}, swapped_energy={swapped:.3f}",
    )


def test_criterion_16_determinism(tmp_path):
    config = tmp_path / "epr.cfg"
    config.write_text(
        "[run]\nexperiment = epr\nseed = 99\n[params]\nn_samples = 30000\n"
        "born_pairs = 4\nborn_samples = 30000\n",
        encoding="utf-8",
    )
    m1 = cli.run(config, out=tmp_path / "r1")
    m2 = cli.run(config, out=tmp_path / "r2")
    identical = all(
        (tmp_path / "r1" / name).read_bytes() == (tmp_path / "r2" / name).read_bytes()
        for name in m1["artifacts"]
    ) and m1["artifacts"] == m2["artifacts"]
    record(
        16,
        "determinism",
        identical,
        f"{len(m1['artifacts'])} artifacts byte-identical",
    )
