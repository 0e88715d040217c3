"""Named, reproducible experiments with built-in assertion sets.

Each experiment draws all randomness from its integer seed, writes one or
more CSV traces (f64 printed with 17 significant digits, so identical
config + seed reproduces identical bytes), and returns a list of assertion
records; the CLI collects these into a run manifest.
"""

from __future__ import annotations

import numpy as np

from . import doubleslit as ds
from . import dynamics as dyn
from . import gridwave as gw
from . import hilbert as hb
from . import relativistic as rel
from . import spin as sp
from .rng import generator


def _write_csv(path, header, columns):
    columns = [np.asarray(c) for c in columns]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in zip(*columns):
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def _check(name, value, threshold, passed):
    return {
        "name": name,
        "value": float(value),
        "threshold": threshold,
        "passed": bool(passed),
    }


# ---------------------------------------------------------------------------
# free-packet: uniform free motion, conservation laws, mean-force law


def run_free_packet(params, seed, outdir):
    n = int(params["n"])
    grid = gw.Grid1D(-params["length"] / 2, params["length"] / n, n)
    psi = gw.gaussian_packet(
        grid, params["x0"], params["p0"], params["sigma_x"], params["mass"]
    )
    times = np.linspace(0.0, params["t_max"], int(params["samples"]))
    xs, ps = [], []
    for t in times:
        evolved = dyn.free_evolve_exact(psi, t)
        xs.append(gw.expectation_x(evolved))
        ps.append(gw.expectation_p(evolved))
    xs, ps = np.array(xs), np.array(ps)
    slope = np.polyfit(times, xs, 1)[0]
    expected = ps[0] / params["mass"]
    slope_err = abs(slope - expected) / abs(expected)
    p_drift = np.abs(ps - ps[0]).max()
    _write_csv(
        outdir / "trajectory_free.csv",
        ["t", "x_mean", "p_mean"],
        [times, xs, ps],
    )

    # harmonic well: norm and energy conservation over many split steps
    g2 = gw.Grid1D(-20.0, 40.0 / 256, 256)
    omega = params["omega"]
    sigma = np.sqrt(1.0 / (2 * omega))
    coherent = gw.gaussian_packet(g2, params["x0_harmonic"], 0.0, sigma)
    well = dyn.harmonic_potential(g2, 1.0, omega)
    _, log = dyn.split_step_evolve(
        coherent, well, params["dt"], int(params["steps"]), log_every=100
    )
    norm_drift = np.abs(log.norm - 1.0).max()
    energy_drift = np.abs(log.energy - log.energy[0]).max() / abs(log.energy[0])
    _write_csv(
        outdir / "trajectory_harmonic.csv",
        ["t", "x_mean", "p_mean", "norm", "energy"],
        [log.times, log.x_mean, log.p_mean, log.norm, log.energy],
    )

    # mean-force law: constant force, then scale-normalized harmonic residual
    force = params["force"]
    lin = dyn.linear_potential(g2, force)
    flat = gw.gaussian_packet(g2, 0.0, 0.0, 1.0)
    _, lin_log = dyn.split_step_evolve(flat, lin, 1e-3, 1000, log_every=10)
    dpdt = (lin_log.p_mean[2:] - lin_log.p_mean[:-2]) / (
        lin_log.times[2:] - lin_log.times[:-2]
    )
    force_resid = np.abs(dpdt + force).max()
    _, harm_log = dyn.split_step_evolve(coherent, well, 1e-3, 3000, log_every=10)
    harm_resid = dyn.ehrenfest_residual(harm_log, well)
    harm_scale = omega**2 * sigma
    _write_csv(
        outdir / "trajectory_linear.csv",
        ["t", "x_mean", "p_mean"],
        [lin_log.times, lin_log.x_mean, lin_log.p_mean],
    )

    return [
        _check("free_slope_relative_error", slope_err, "<= 1e-6", slope_err <= 1e-6),
        _check("free_momentum_drift", p_drift, "<= 1e-10", p_drift <= 1e-10),
        _check("harmonic_norm_drift", norm_drift, "<= 1e-8", norm_drift <= 1e-8),
        _check(
            "harmonic_energy_drift", energy_drift, "<= 1e-8", energy_drift <= 1e-8
        ),
        _check(
            "linear_force_residual", force_resid, "<= 1e-6", force_resid <= 1e-6
        ),
        _check(
            "harmonic_mean_force_residual",
            harm_resid,
            f"<= 1e-4 * {harm_scale:g}",
            harm_resid <= 1e-4 * harm_scale,
        ),
    ]


# ---------------------------------------------------------------------------
# uncertainty: product bound, Gaussian saturation, transform isometry


def run_uncertainty(params, seed, outdir):
    n = int(params["n"])
    grid = gw.Grid1D(-params["length"] / 2, params["length"] / n, n)
    rng = generator(seed)
    basis = [gw.hermite_basis(grid, k) for k in range(int(params["n_modes"]))]
    products, dxs, dps = [], [], []
    for _ in range(int(params["n_states"])):
        coeff = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
        amp = sum(c * b.amp for c, b in zip(coeff, basis))
        state = gw.grid_wavefunction(grid, amp)
        dx_std, dp_std = gw.uncertainties(state)
        dxs.append(dx_std)
        dps.append(dp_std)
        products.append(dx_std * dp_std)
    products = np.array(products)
    min_product = products.min()
    _write_csv(
        outdir / "uncertainty.csv",
        ["index", "dx", "dp", "product"],
        [np.arange(len(products)), dxs, dps, products],
    )

    saturation_err = 0.0
    for sigma in (0.8, 1.3, 2.4):
        packet = gw.gaussian_packet(grid, 0.0, 1.0, sigma)
        dx_std, dp_std = gw.uncertainties(packet)
        saturation_err = max(saturation_err, abs(dx_std * dp_std - 0.5) / 0.5)

    diffs = []
    for _ in range(int(params["n_plancherel"])):
        amp = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        state = gw.grid_wavefunction(grid, amp)
        phi = gw.to_momentum(state)
        diffs.append(abs(gw.momentum_norm_squared(phi) - gw.norm_squared(state)))
    diffs = np.array(diffs)
    _write_csv(
        outdir / "plancherel.csv",
        ["index", "norm_mismatch"],
        [np.arange(len(diffs)), diffs],
    )

    return [
        _check(
            "uncertainty_product_bound",
            min_product,
            ">= hbar/2 - 1e-9",
            min_product >= 0.5 - 1e-9,
        ),
        _check(
            "gaussian_saturation_relative_error",
            saturation_err,
            "<= 1e-6",
            saturation_err <= 1e-6,
        ),
        _check(
            "plancherel_max_mismatch", diffs.max(), "<= 1e-12", diffs.max() <= 1e-12
        ),
    ]


# ---------------------------------------------------------------------------
# double-slit


def run_double_slit(params, seed, outdir):
    cfg = ds.SlitScreenConfig(
        nx=int(params["nx"]),
        ny=int(params["ny"]),
        dx=params["dx"],
        dy=params["dy"],
        barrier_x=params["barrier_x"],
        barrier_thickness=params["barrier_thickness"],
        slit1_center=-params["slit_separation"] / 2,
        slit2_center=params["slit_separation"] / 2,
        slit_width=params["slit_width"],
        screen_x=params["screen_x"],
        packet_x0=params["packet_x0"],
        packet_sigma_x=params["packet_sigma_x"],
        packet_sigma_y=params["packet_sigma_y"],
        p0=params["p0"],
        max_steps=int(params["max_steps"]),
    )
    results = {m: ds.double_slit_run(cfg, m) for m in ("both", "slit1", "slit2")}
    both, one, two = results["both"], results["slit1"], results["slit2"]
    _write_csv(
        outdir / "intensity.csv",
        ["y", "i_both", "i_slit1", "i_slit2"],
        [both.y, both.intensity, one.intensity, two.intensity],
    )
    maxima = ds.intensity_maxima(both.y, both.intensity)
    spacing = ds.central_fringe_spacing(both.y, both.intensity)
    predicted = ds.fraunhofer_spacing(cfg)
    spacing_err = abs(spacing - predicted) / predicted
    raw_b = both.transmitted * both.intensity
    raw_sum = one.transmitted * one.intensity + two.transmitted * two.intensity
    l1 = float(np.abs(raw_b - raw_sum).sum() / np.abs(raw_b).sum())
    ny = cfg.ny
    center = slice(ny // 2 - 26, ny // 2 + 26)
    band = both.intensity[center]
    visibility = float((band.max() - band.min()) / (band.max() + band.min()))
    return [
        _check("interior_maxima", len(maxima), ">= 3", len(maxima) >= 3),
        _check(
            "fringe_spacing_relative_error", spacing_err, "<= 0.10", spacing_err <= 0.10
        ),
        _check("one_slit_sum_l1_distance", l1, "> 0.2", l1 > 0.2),
        _check("central_visibility", visibility, "> 0.5", visibility > 0.5),
    ]


# ---------------------------------------------------------------------------
# larmor


def run_larmor(params, seed, outdir):
    alpha = params["alpha_re"] + 1j * params["alpha_im"]
    beta = params["beta_re"] + 1j * params["beta_im"]
    nrm = np.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
    alpha, beta = alpha / nrm, beta / nrm
    omega0 = params["omega0"]
    gamma_ratio = params["gamma_ratio"]
    period = 2 * np.pi / omega0
    times = np.linspace(0.0, 3 * period, int(params["samples"]), endpoint=False)
    mu_x, mu_y, mu_z = sp.magnetic_moment_means(
        alpha, beta, omega0, gamma_ratio, times
    )
    _write_csv(
        outdir / "larmor.csv", ["t", "mu_x", "mu_y", "mu_z"], [times, mu_x, mu_y, mu_z]
    )

    s = sp.spin_matrices(0.5)
    hfield = hb.Observable(omega0 * s.jz)
    psi0 = hb.make_state([alpha, beta])
    closed_err = 0.0
    flip_err = 0.0
    for t in times[:: max(1, len(times) // 30)]:
        closed = sp.larmor_evolve(alpha, beta, omega0, float(t))
        spectral = hb.evolve_isolated(hfield, psi0, float(t))
        closed_err = max(closed_err, float(np.abs(closed.amp - spectral.amp).max()))
        flipped = sp.larmor_evolve(alpha, beta, omega0, float(t) + period)
        flip_err = max(flip_err, float(np.abs(flipped.amp + closed.amp).max()))
    muz_drift = float(np.abs(mu_z - mu_z[0]).max())
    return [
        _check(
            "closed_form_vs_spectral", closed_err, "<= 1e-12", closed_err <= 1e-12
        ),
        _check("sign_flip_after_half_turn", flip_err, "<= 1e-12", flip_err <= 1e-12),
        _check("mu_z_drift", muz_drift, "<= 1e-12", muz_drift <= 1e-12),
    ]


# ---------------------------------------------------------------------------
# spin-spectrum


def run_spin_spectrum(params, seed, outdir):
    two_js, su2_res, j2_res = [], [], []
    ladder_err = 0.0
    for two_j in range(1, int(params["max_two_j"]) + 1):
        j = two_j / 2
        s = sp.spin_matrices(j)
        su2_res.append(sp.check_su2(s))
        j2 = s.jx @ s.jx + s.jy @ s.jy + s.jz @ s.jz
        j2_res.append(np.linalg.norm(j2 - j * (j + 1) * np.eye(s.dim)))
        two_js.append(two_j)
        for i, m in enumerate(s.m_values):
            e = np.zeros(s.dim, dtype=complex)
            e[i] = 1.0
            for op, shift in ((s.jplus, 1), (s.jminus, -1)):
                expected = j * (j + 1) - m * (m + shift)
                ladder_err = max(
                    ladder_err, abs(np.linalg.norm(op @ e) ** 2 - expected)
                )
    _write_csv(
        outdir / "su2_residuals.csv",
        ["two_j", "commutator_residual", "j2_residual"],
        [two_js, su2_res, j2_res],
    )
    half = sp.spin_matrices(0.5)
    pauli_exact = (
        np.array_equal(half.jx, np.array([[0, 0.5], [0.5, 0]], dtype=complex))
        and np.array_equal(half.jy, np.array([[0, -0.5j], [0.5j, 0]]))
        and np.array_equal(half.jz, np.diag([0.5, -0.5]).astype(complex))
    )

    ring = sp.orbital_ring_spectrum(int(params["ring_n"]))
    frac = ring - np.round(ring)
    integer_err = np.abs(frac).max()
    half_integer_dist = float((0.5 - np.abs(frac)).min())
    _write_csv(
        outdir / "ring_spectrum.csv",
        ["index", "eigenvalue"],
        [np.arange(len(ring)), ring],
    )
    return [
        _check(
            "su2_commutator_residual",
            max(su2_res),
            "<= 1e-12",
            max(su2_res) <= 1e-12,
        ),
        _check("j_squared_residual", max(j2_res), "<= 1e-12", max(j2_res) <= 1e-12),
        _check("pauli_matrices_exact", float(pauli_exact), "exact", pauli_exact),
        _check("ladder_norm_error", ladder_err, "<= 1e-12", ladder_err <= 1e-12),
        _check(
            "ring_integer_eigenvalues", integer_err, "<= 1e-9", integer_err <= 1e-9
        ),
        _check(
            "ring_clear_of_half_integers",
            half_integer_dist,
            ">= 0.1",
            half_integer_dist >= 0.1,
        ),
    ]


# ---------------------------------------------------------------------------
# two-spin


def run_two_spin(params, seed, outdir):
    _, _, sz, s2, basis = sp.couple_two_spins()
    eigenvalues = np.linalg.eigvalsh(s2)
    spectrum_err = float(
        np.abs(eigenvalues - np.array([0.0, 2.0, 2.0, 2.0])).max()
    )
    p = sp.exchange_operator(2)
    exchange_vals = []
    exchange_err = 0.0
    for i in range(4):
        v = basis.theta[:, i]
        expected = 1.0 if i < 3 else -1.0
        exchange_vals.append(expected)
        exchange_err = max(exchange_err, float(np.abs(p @ v - expected * v).max()))
    p2_err = float(np.abs(p @ p - np.eye(4)).max())
    commute_err = float(np.abs(hb.commutator(p, s2)).max())
    _write_csv(
        outdir / "twospin.csv",
        ["index", "s2_eigenvalue", "exchange_eigenvalue"],
        [np.arange(4), eigenvalues, exchange_vals],
    )
    return [
        _check(
            "total_spin_spectrum", spectrum_err, "<= 1e-12", spectrum_err <= 1e-12
        ),
        _check(
            "exchange_eigenvalues", exchange_err, "<= 1e-12", exchange_err <= 1e-12
        ),
        _check("exchange_squares_to_identity", p2_err, "== 0", p2_err == 0.0),
        _check(
            "exchange_commutes_with_total_spin",
            commute_err,
            "<= 1e-12",
            commute_err <= 1e-12,
        ),
    ]


# ---------------------------------------------------------------------------
# epr: correlated pair sampling plus generic Born-rule frequencies


def run_epr(params, seed, outdir):
    alpha, beta = params["alpha"], params["beta"]
    nrm = np.sqrt(alpha**2 + beta**2)
    alpha, beta = alpha / nrm, beta / nrm
    psi = hb.make_state([0.0, alpha, beta, 0.0])
    n = int(params["n_samples"])
    counts = sp.epr_joint_counts(psi, n, seed)
    again = sp.epr_joint_counts(psi, n, seed)
    deterministic = bool(np.array_equal(counts, again))
    probs = np.array([[0.0, alpha**2], [beta**2, 0.0]])
    labels_1 = [0.5, 0.5, -0.5, -0.5]
    labels_2 = [0.5, -0.5, 0.5, -0.5]
    _write_csv(
        outdir / "epr_counts.csv",
        ["s1", "s2", "count", "frequency", "probability"],
        [
            labels_1,
            labels_2,
            counts.reshape(-1),
            counts.reshape(-1) / n,
            probs.reshape(-1),
        ],
    )
    forbidden = int(counts[0, 0] + counts[1, 1])
    sigma_pm = np.sqrt(alpha**2 * (1 - alpha**2) / n)
    dev_pm = abs(counts[0, 1] / n - alpha**2)
    dev_mp = abs(counts[1, 0] / n - beta**2)

    # generic Born sampling on random (state, observable) pairs
    pair_rows, outcome_rows, count_rows, prob_rows, z_rows = [], [], [], [], []
    worst_z = 0.0
    rng = generator(seed + 1)
    n_born = int(params["born_samples"])
    for pair in range(int(params["born_pairs"])):
        dim = int(rng.integers(2, 9))
        state = hb.random_state(dim, rng)
        obs = hb.Observable(hb.random_hermitian(dim, rng))
        records = hb.measure_probabilities(state, obs)
        drawn = hb.sample_outcomes(state, obs, n_born, seed + 7919 * (pair + 1))
        for idx, rec in enumerate(records):
            sigma = np.sqrt(max(rec.probability * (1 - rec.probability), 1e-300) / n_born)
            z = abs(drawn[idx] / n_born - rec.probability) / max(sigma, 1e-15)
            if rec.probability * (1 - rec.probability) > 0:
                worst_z = max(worst_z, float(z))
            pair_rows.append(pair)
            outcome_rows.append(idx)
            count_rows.append(drawn[idx])
            prob_rows.append(rec.probability)
            z_rows.append(z)
    _write_csv(
        outdir / "born.csv",
        ["pair", "outcome", "count", "probability", "zscore"],
        [pair_rows, outcome_rows, count_rows, prob_rows, z_rows],
    )
    return [
        _check("forbidden_joint_outcomes", forbidden, "== 0", forbidden == 0),
        _check(
            "joint_plus_minus_frequency",
            dev_pm,
            f"<= 3 sigma = {3 * sigma_pm:.3e}",
            dev_pm <= 3 * sigma_pm,
        ),
        _check(
            "joint_minus_plus_frequency",
            dev_mp,
            f"<= 3 sigma = {3 * sigma_pm:.3e}",
            dev_mp <= 3 * sigma_pm,
        ),
        _check("born_worst_zscore", worst_z, "<= 3", worst_z <= 3.0),
        _check("same_seed_reproduces_counts", float(deterministic), "exact", deterministic),
    ]


# ---------------------------------------------------------------------------
# kg-density


def run_kg_density(params, seed, outdir):
    n = int(params["n"])
    grid = gw.Grid1D(-params["length"] / 2, params["length"] / n, n)
    mixed = rel.kg_mixed_packet(
        grid, 0.0, params["p_positive"], params["p_negative"], params["sigma_x"]
    )
    positive = rel.kg_packet(
        grid, 0.0, 0.0, params["sigma_x"], mass=params["heavy_mass"]
    )
    min_mixed = float(rel.kg_density(mixed).min())
    min_positive = float(rel.kg_density(positive).min())
    _write_csv(
        outdir / "kg_density.csv",
        ["x", "p_mixed", "p_positive"],
        [grid.x, rel.kg_density(mixed), rel.kg_density(positive)],
    )
    q0 = rel.kg_charge(mixed)
    charges = [q0]
    state = mixed
    steps = int(params["steps"])
    for _ in range(steps):
        state = rel.kg_evolve(state, params["dt"], 1)
        charges.append(rel.kg_charge(state))
    charges = np.array(charges)
    drift = float(np.abs(charges - q0).max())
    _write_csv(
        outdir / "kg_charge.csv",
        ["step", "charge"],
        [np.arange(len(charges)), charges],
    )
    k_table = np.linspace(0.0, 8.0, 81)
    _write_csv(
        outdir / "kg_dispersion.csv",
        ["k", "omega"],
        [k_table, rel.kg_dispersion(k_table, 1.0)],
    )

    m = params["limit_mass"]
    p0 = params["limit_p_over_m"] * m
    sigma_x = 1.0 / (2 * (p0 / 6))
    big = gw.Grid1D(-1200.0, 2400.0 / 4096, 4096)
    slow = rel.kg_packet(big, 0.0, p0, sigma_x, mass=m)
    period = 2 * np.pi / (p0**2 / (2 * m))
    phase_err, l2 = rel.kg_nonrelativistic_mismatch(slow, period)
    return [
        _check("mixed_density_minimum", min_mixed, "< -0.01", min_mixed < -0.01),
        _check(
            "positive_density_nonnegative",
            min_positive,
            ">= -1e-12",
            min_positive >= -1e-12,
        ),
        _check("charge_drift", drift, "<= 1e-10", drift <= 1e-10),
        _check(
            "nonrelativistic_phase_error", phase_err, "<= 1e-3", phase_err <= 1e-3
        ),
        _check("nonrelativistic_l2_mismatch", l2, "<= 1e-2", l2 <= 1e-2),
    ]


# ---------------------------------------------------------------------------
# dirac-spectrum


def run_dirac_spectrum(params, seed, outdir):
    g = rel.build_gammas()
    mats = [g.g1, g.g2, g.g3, g.g4]
    eye = np.eye(4, dtype=complex)
    clifford = 0.0
    for i, gi in enumerate(mats):
        expect = eye if i == 3 else -eye
        clifford = max(clifford, float(np.abs(gi @ gi - expect).max()))
        for j in range(i + 1, 4):
            clifford = max(clifford, float(np.abs(gi @ mats[j] + mats[j] @ gi).max()))

    mass = params["mass"]
    p_values = np.linspace(0.0, params["p_max"], int(params["n_momenta"]))
    rows = {"p": [], "e1": [], "e2": [], "e3": [], "e4": [], "small_ratio": []}
    square_err = 0.0
    spectrum_err = 0.0
    swapped_max = -np.inf
    for p in p_values:
        h = rel.dirac_hamiltonian([p, 0.0, 0.0], mass)
        square_err = max(
            square_err,
            float(np.abs(h @ h - (p**2 + mass**2) * eye).max()),
        )
        mode = rel.dirac_mode(p, mass)
        e = np.sqrt(p**2 + mass**2)
        spectrum_err = max(
            spectrum_err,
            float(np.abs(mode.energies - np.array([-e, -e, e, e])).max()),
        )
        swapped_max = max(swapped_max, rel.swapped_state_energy(mode))
        rows["p"].append(p)
        for idx in range(4):
            rows[f"e{idx + 1}"].append(mode.energies[idx])
        rows["small_ratio"].append(mode.small_component_ratio())
    rng = generator(seed)
    for _ in range(5):
        pv = rng.standard_normal(3)
        h = rel.dirac_hamiltonian(pv, mass)
        square_err = max(
            square_err, float(np.abs(h @ h - (pv @ pv + mass**2) * eye).max())
        )
    _write_csv(
        outdir / "dirac_spectrum.csv",
        ["p", "e1", "e2", "e3", "e4", "small_ratio"],
        [rows["p"], rows["e1"], rows["e2"], rows["e3"], rows["e4"], rows["small_ratio"]],
    )
    square_op_resid = rel.dirac_square_check(int(params["n_grid"]), seed)
    return [
        _check("clifford_relations", clifford, "== 0 (exact)", clifford == 0.0),
        _check("hamiltonian_square", square_err, "<= 1e-12", square_err <= 1e-12),
        _check(
            "branch_spectrum_error", spectrum_err, "<= 1e-12", spectrum_err <= 1e-12
        ),
        _check(
            "square_equals_wave_operator",
            square_op_resid,
            "< 1e-9",
            square_op_resid < 1e-9,
        ),
        _check(
            "swapped_state_energy_max", swapped_max, "< 0", swapped_max < 0.0
        ),
    ]


# ---------------------------------------------------------------------------
# dirac-limit


def run_dirac_limit(params, seed, outdir):
    mass = params["mass"]
    fractions = np.linspace(params["p_over_m_min"], params["p_over_m_max"], 12)
    errors = np.array(
        [rel.dirac_nonrel_phase_error(f * mass, mass) for f in fractions]
    )
    _write_csv(
        outdir / "dirac_limit.csv", ["p_over_m", "phase_error"], [fractions, errors]
    )
    worst = float(errors.max())

    grid = gw.Grid1D(-16.0, 32.0 / 256, 256)
    rng = generator(seed)
    field = rng.standard_normal((grid.n, 4)) + 1j * rng.standard_normal((grid.n, 4))
    field /= np.linalg.norm(field)
    drift = 0.0
    for t in (0.9, 17.3):
        out = rel.dirac_evolve_free(field, grid, t, mass)
        drift = max(drift, abs(float(np.linalg.norm(out)) - 1.0))

    alpha1 = rel.alpha_matrices()[0]
    vals, vecs = np.linalg.eigh(alpha1)
    mover = vecs[:, np.argmax(vals)]
    envelope = np.exp(-(grid.x**2) / 4).astype(complex)
    light = envelope[:, None] * mover[None, :]
    shift = 32
    out = rel.dirac_evolve_free(light, grid, shift * grid.dx, mass=0.0)
    light_err = float(np.abs(out - np.roll(light, shift, axis=0)).max())
    return [
        _check("slow_limit_phase_error", worst, "<= 1e-3", worst <= 1e-3),
        _check("free_evolution_norm_drift", drift, "< 1e-12", drift < 1e-12),
        _check(
            "massless_light_cone_translation", light_err, "< 1e-6", light_err < 1e-6
        ),
    ]


# ---------------------------------------------------------------------------
# registry


class Experiment:
    def __init__(self, name, description, runner, defaults, positive_keys=()):
        self.name = name
        self.description = description
        self.runner = runner
        self.defaults = defaults
        self.positive_keys = frozenset(positive_keys)


EXPERIMENTS = {
    e.name: e
    for e in [
        Experiment(
            "free-packet",
            "uniform motion of a free packet (<x> linear, <p> constant) and "
            "norm/energy conservation plus the mean-force law in wells",
            run_free_packet,
            {
                "n": 2048,
                "length": 120.0,
                "x0": -15.0,
                "p0": 2.0,
                "sigma_x": 1.0,
                "mass": 1.0,
                "t_max": 5.0,
                "samples": 21,
                "omega": 1.0,
                "x0_harmonic": 0.5,
                "dt": 2e-4,
                "steps": 10000,
                "force": 0.5,
            },
            positive_keys=(
                "n", "length", "sigma_x", "mass", "t_max", "samples",
                "omega", "dt", "steps",
            ),
        ),
        Experiment(
            "uncertainty",
            "position-momentum product bound dx*dp >= hbar/2 with Gaussian "
            "saturation, and the transform isometry on random states",
            run_uncertainty,
            {
                "n": 1024,
                "length": 60.0,
                "n_states": 500,
                "n_modes": 10,
                "n_plancherel": 200,
            },
            positive_keys=("n", "length", "n_states", "n_modes", "n_plancherel"),
        ),
        Experiment(
            "double-slit",
            "two-slit interference fringes: count, spacing against the "
            "far-field two-source formula, and non-additivity of intensities",
            run_double_slit,
            {
                "nx": 512,
                "ny": 256,
                "dx": 0.2,
                "dy": 0.26,
                "barrier_x": 12.1,
                "barrier_thickness": 0.42,
                "slit_separation": 4.19,
                "slit_width": 1.1,
                "screen_x": 25.1,
                "packet_x0": 7.3,
                "packet_sigma_x": 1.2,
                "packet_sigma_y": 5.0,
                "p0": 6.0,
                "max_steps": 5000,
            },
            positive_keys=(
                "nx", "ny", "dx", "dy", "barrier_x", "barrier_thickness",
                "slit_separation", "slit_width", "screen_x", "packet_x0",
                "packet_sigma_x", "packet_sigma_y", "p0", "max_steps",
            ),
        ),
        Experiment(
            "larmor",
            "spin-1/2 precession in a static field: closed form vs spectral "
            "evolution, sign flip after one turn, constant z-moment",
            run_larmor,
            {
                "alpha_re": 0.6,
                "alpha_im": 0.0,
                "beta_re": 0.8,
                "beta_im": 0.0,
                "omega0": 1.5,
                "gamma_ratio": 1.0,
                "samples": 600,
            },
            positive_keys=("omega0", "gamma_ratio", "samples"),
        ),
        Experiment(
            "spin-spectrum",
            "ladder-built spin matrices: commutation residuals up to 2j = 40, "
            "ladder norms, and the integer-only ring rotation spectrum",
            run_spin_spectrum,
            {"max_two_j": 40, "ring_n": 64},
            positive_keys=("max_two_j", "ring_n"),
        ),
        Experiment(
            "two-spin",
            "coupled pair of spin-1/2 particles: singlet/triplet eigenvalues "
            "0 and 2 hbar^2 and the exchange symmetry signs",
            run_two_spin,
            {},
        ),
        Experiment(
            "epr",
            "correlated measurements on an entangled pair (forbidden joint "
            "outcomes never occur) and sampled outcome frequencies vs "
            "projection probabilities",
            run_epr,
            {
                "alpha": 0.6,
                "beta": 0.8,
                "n_samples": 100000,
                "born_pairs": 20,
                "born_samples": 100000,
            },
            positive_keys=("n_samples", "born_pairs", "born_samples"),
        ),
        Experiment(
            "kg-density",
            "indefinite conserved density of the second-order relativistic "
            "equation and its slow-particle reduction",
            run_kg_density,
            {
                "n": 512,
                "length": 48.0,
                "sigma_x": 2.0,
                "p_positive": 2.0,
                "p_negative": 0.0,
                "heavy_mass": 5.0,
                "dt": 0.003,
                "steps": 1000,
                "limit_mass": 1.0,
                "limit_p_over_m": 0.03,
            },
            positive_keys=(
                "n", "length", "sigma_x", "heavy_mass", "dt", "steps",
                "limit_mass", "limit_p_over_m",
            ),
        ),
        Experiment(
            "dirac-spectrum",
            "anticommuting matrix algebra, squared first-order Hamiltonian, "
            "doubly degenerate +/- energy branches, negative-energy states",
            run_dirac_spectrum,
            {"mass": 1.0, "p_max": 0.9, "n_momenta": 19, "n_grid": 64},
            positive_keys=("mass", "p_max", "n_momenta", "n_grid"),
        ),
        Experiment(
            "dirac-limit",
            "slow-particle limit of the first-order relativistic equation and "
            "light-cone propagation of the massless right-mover",
            run_dirac_limit,
            {"mass": 1.0, "p_over_m_min": 0.01, "p_over_m_max": 0.05},
            positive_keys=("mass", "p_over_m_min", "p_over_m_max"),
        ),
    ]
}
