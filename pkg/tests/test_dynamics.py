"""Tests for split-step propagation, exact free evolution, and diagnostics."""

import numpy as np
import pytest

from qmlab import dynamics as dyn
from qmlab import gridwave as gw
from qmlab.errors import StabilityViolation, TooFewSamples


def make_grid(n=256, length=40.0):
    return gw.Grid1D(-length / 2, length / n, n)


def coherent_state(grid, x0, mass=1.0, omega=1.0, hbar=1.0):
    sigma = np.sqrt(hbar / (2 * mass * omega))
    return gw.gaussian_packet(grid, x0, 0.0, sigma, mass, hbar)


def test_split_step_matches_exact_free():
    g = make_grid()
    psi = gw.gaussian_packet(g, -3.0, 1.5, sigma_x=1.0)
    out, _ = dyn.split_step_evolve(psi, dyn.free_potential(g), dt=5e-4, steps=500)
    ref = dyn.free_evolve_exact(psi, 500 * 5e-4)
    assert np.abs(out.amp - ref.amp).max() < 1e-8


def test_split_step_norm_conservation():
    g = make_grid()
    psi = coherent_state(g, 1.0)
    v = dyn.harmonic_potential(g, mass=1.0, omega=1.0)
    _, log = dyn.split_step_evolve(psi, v, dt=1e-3, steps=1000, log_every=100)
    assert np.abs(log.norm - 1.0).max() <= 1e-10


def test_split_step_harmonic_classical_center():
    # Ehrenfest for the oscillator: <x>(t) = x0 cos(omega t) exactly
    g = make_grid()
    x0, omega = 1.0, 1.0
    psi = coherent_state(g, x0, omega=omega)
    v = dyn.harmonic_potential(g, mass=1.0, omega=omega)
    dt = 1e-3
    steps = int(round(2 * np.pi / dt))
    _, log = dyn.split_step_evolve(psi, v, dt, steps, log_every=20)
    assert np.abs(log.x_mean - x0 * np.cos(omega * log.times)).max() < 1e-4


def test_split_step_second_order_in_dt():
    g = make_grid()
    psi = coherent_state(g, 0.8)
    v = dyn.harmonic_potential(g, mass=1.0, omega=1.0)
    t_final = 0.48
    ref, _ = dyn.split_step_evolve(psi, v, t_final / 1600, 1600)
    coarse, _ = dyn.split_step_evolve(psi, v, t_final / 200, 200)
    fine, _ = dyn.split_step_evolve(psi, v, t_final / 400, 400)
    e_coarse = np.linalg.norm(coarse.amp - ref.amp)
    e_fine = np.linalg.norm(fine.amp - ref.amp)
    ratio = e_coarse / e_fine
    assert ratio >= 3.5
    # Richardson order estimate
    assert 1.8 <= np.log2(ratio) <= 2.2


def test_stability_guard():
    g = make_grid()
    psi = coherent_state(g, 0.5)
    with pytest.raises(StabilityViolation):
        dyn.split_step_evolve(psi, dyn.free_potential(g), dt=1.0, steps=1)
    strong = dyn.custom_potential(g, 100.0 * np.cos(g.x))
    with pytest.raises(StabilityViolation):
        dyn.split_step_evolve(psi, strong, dt=1e-2, steps=1)


def test_free_evolve_exact_identity_and_drift():
    g = gw.Grid1D(-60.0, 120.0 / 2048, 2048)
    psi = gw.gaussian_packet(g, -15.0, 2.0, sigma_x=1.0)
    out0 = dyn.free_evolve_exact(psi, 0.0)
    assert np.abs(out0.amp - psi.amp).max() < 1e-14
    times = np.linspace(0.0, 5.0, 21)
    xs = np.array([gw.expectation_x(dyn.free_evolve_exact(psi, t)) for t in times])
    ps = np.array([gw.expectation_p(dyn.free_evolve_exact(psi, t)) for t in times])
    # uniform drift: <x>(t) = <x>(0) + (<p>/m) t
    assert np.abs(xs - (xs[0] + ps[0] * times)).max() < 1e-8
    assert np.abs(ps - ps[0]).max() < 1e-10
    slope = np.polyfit(times, xs, 1)[0]
    assert abs(slope - ps[0] / psi.mass) <= 1e-6 * abs(ps[0] / psi.mass)


def test_energy_free_packet_quadrature_oracle():
    g = make_grid(n=512, length=60.0)
    p0, sigma = 2.0, 1.2
    psi = gw.gaussian_packet(g, 0.0, p0, sigma)
    phi = gw.to_momentum(psi)
    oracle = np.trapezoid(phi.p**2 * np.abs(phi.amp) ** 2, dx=phi.dp) / (2 * psi.mass)
    e = dyn.energy(psi, dyn.free_potential(g))
    assert e == pytest.approx(oracle, abs=1e-10)
    # Gaussian kinetic moment: p0^2/2m + hbar^2/(8 m sigma^2)
    assert e == pytest.approx(p0**2 / 2 + 1 / (8 * sigma**2), rel=1e-8)


def test_energy_hermite_ground_state():
    g = make_grid(n=512, length=40.0)
    omega = 1.0
    h0 = gw.hermite_basis(g, 0, omega=omega)
    v = dyn.harmonic_potential(g, mass=1.0, omega=omega)
    assert dyn.energy(h0, v) == pytest.approx(omega / 2, rel=1e-6)


def test_energy_drift_many_steps():
    g = make_grid()
    psi = coherent_state(g, 0.5)
    v = dyn.harmonic_potential(g, mass=1.0, omega=1.0)
    _, log = dyn.split_step_evolve(psi, v, dt=2e-4, steps=2000, log_every=100)
    e0 = log.energy[0]
    assert np.abs(log.energy - e0).max() / abs(e0) < 1e-8


def test_ehrenfest_free():
    g = make_grid()
    psi = gw.gaussian_packet(g, 0.0, 1.0, sigma_x=1.0)
    _, log = dyn.split_step_evolve(psi, dyn.free_potential(g), 1e-3, 100, log_every=10)
    assert dyn.ehrenfest_residual(log, dyn.free_potential(g)) < 1e-10


def test_ehrenfest_linear_constant_force():
    g = make_grid()
    force = 0.5
    v = dyn.linear_potential(g, force)
    psi = gw.gaussian_packet(g, 0.0, 0.0, sigma_x=1.0)
    _, log = dyn.split_step_evolve(psi, v, 1e-3, 1000, log_every=10)
    t, p = log.times, log.p_mean
    dpdt = (p[2:] - p[:-2]) / (t[2:] - t[:-2])
    assert np.abs(dpdt + force).max() < 1e-6
    assert dyn.ehrenfest_residual(log, v) < 1e-6


def test_ehrenfest_harmonic_residual():
    g = make_grid()
    omega, x0 = 1.0, 1.0
    sigma = np.sqrt(0.5)
    psi = coherent_state(g, x0, omega=omega)
    v = dyn.harmonic_potential(g, mass=1.0, omega=omega)
    _, log = dyn.split_step_evolve(psi, v, 1e-3, 3000, log_every=10)
    assert dyn.ehrenfest_residual(log, v) < 1e-4 * (omega**2 * sigma)


def test_ehrenfest_too_few_samples():
    g = make_grid()
    psi = gw.gaussian_packet(g, 0.0, 0.0, sigma_x=1.0)
    _, log = dyn.split_step_evolve(psi, dyn.free_potential(g), 1e-3, 3)
    with pytest.raises(TooFewSamples):
        dyn.ehrenfest_residual(log, dyn.free_potential(g))
