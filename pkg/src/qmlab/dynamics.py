"""Time propagation on 1-D grids.

Split-step (Strang) spectral propagation for a particle in a static
potential, exact momentum-space propagation for the free particle, and the
trajectory diagnostics (norm, energy, mean position/momentum, mean force)
used by the conservation and mean-trajectory checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import StabilityViolation, PacketNearBoundary, TooFewSamples
from .gridwave import (
    Grid1D,
    GridWavefunction,
    grid_wavefunction,
    require_normalized,
    support_margin_ok,
)

STABILITY_LIMIT = 0.5


@dataclass(frozen=True)
class Potential:
    """Static potential sampled on the grid, with its spatial derivative.

    `grad` is analytic for the tagged shapes (harmonic, linear) and a
    spectral derivative otherwise.
    """

    grid: Grid1D
    samples: np.ndarray
    grad: np.ndarray
    kind: str = "custom"

    def __post_init__(self):
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("potential must be finite everywhere")


def free_potential(grid) -> Potential:
    z = np.zeros(grid.n)
    return Potential(grid, z, z.copy(), kind="free")


def harmonic_potential(grid, mass, omega, center=0.0) -> Potential:
    x = grid.x - center
    return Potential(grid, 0.5 * mass * omega**2 * x**2, mass * omega**2 * x, "harmonic")


def linear_potential(grid, force) -> Potential:
    """V = force * x, so the classical force on the particle is -force."""
    x = grid.x
    return Potential(grid, force * x, np.full(grid.n, float(force)), "linear")


def custom_potential(grid, samples) -> Potential:
    samples = np.asarray(samples, dtype=float)
    grad = np.fft.ifft(1j * grid.k * np.fft.fft(samples)).real
    return Potential(grid, samples, grad, "custom")


@dataclass(frozen=True)
class TrajectoryLog:
    """Diagnostics sampled during propagation (times strictly increasing)."""

    times: np.ndarray
    x_mean: np.ndarray
    p_mean: np.ndarray
    norm: np.ndarray
    energy: np.ndarray
    grad_v_mean: np.ndarray


def _check_stability(grid, v_samples, dt, mass, hbar):
    k_max = np.pi / grid.dx
    e_kin_max = (hbar * k_max) ** 2 / (2 * mass)
    if dt * np.abs(v_samples).max() / hbar >= STABILITY_LIMIT:
        raise StabilityViolation("dt * max|V| / hbar exceeds the stability guard")
    if dt * e_kin_max / hbar >= STABILITY_LIMIT:
        raise StabilityViolation("dt * E_kin_max / hbar exceeds the stability guard")


def _diagnostics(amp, grid, kin_energy, v_samples, grad_v, hbar):
    s0, s1, _ = kernels.weighted_moments(amp, grid.x)
    norm = s0 * grid.dx
    x_mean = s1 / s0
    spec = np.fft.fft(amp)
    w = np.abs(spec) ** 2
    wsum = w.sum()
    p_mean = float((hbar * grid.k * w).sum() / wsum)
    kin = float((kin_energy * w).sum() / wsum)
    dens = np.abs(amp) ** 2
    pot = float((v_samples * dens).sum() / s0)
    gv = float((grad_v * dens).sum() / s0)
    return x_mean, p_mean, norm, kin + pot, gv


def split_step_evolve(
    psi: GridWavefunction,
    v: Potential,
    dt: float,
    steps: int,
    log_every: int = 1,
) -> tuple[GridWavefunction, TrajectoryLog]:
    """Strang-split propagation: half potential, full kinetic, half potential.

    Second-order accurate in dt and exactly norm-preserving up to rounding.
    Logs diagnostics every `log_every` steps (plus the initial state).
    """
    require_normalized(psi)
    grid, mass, hbar = psi.grid, psi.mass, psi.hbar
    _check_stability(grid, v.samples, dt, mass, hbar)
    half_v = np.exp(-0.5j * v.samples * dt / hbar)
    kin_energy = (hbar * grid.k) ** 2 / (2 * mass)
    kinetic = np.exp(-1j * kin_energy * dt / hbar)
    amp = np.array(psi.amp, dtype=complex)

    times, xs, ps, norms, energies, gvs = [], [], [], [], [], []

    def log(t):
        x_mean, p_mean, nrm, erg, gv = _diagnostics(
            amp, grid, kin_energy, v.samples, v.grad, hbar
        )
        times.append(t)
        xs.append(x_mean)
        ps.append(p_mean)
        norms.append(nrm)
        energies.append(erg)
        gvs.append(gv)

    log(0.0)
    for step in range(1, steps + 1):
        kernels.apply_phase(amp, half_v)
        spec = np.fft.fft(amp)
        kernels.apply_phase(spec, kinetic)
        amp = np.fft.ifft(spec)
        kernels.apply_phase(amp, half_v)
        if step % log_every == 0 or step == steps:
            log(step * dt)
    out = GridWavefunction(grid, amp, mass, hbar)
    if not support_margin_ok(out):
        raise PacketNearBoundary("support margin broken during propagation")
    traj = TrajectoryLog(
        np.array(times),
        np.array(xs),
        np.array(ps),
        np.array(norms),
        np.array(energies),
        np.array(gvs),
    )
    return out, traj


def free_evolve_exact(psi: GridWavefunction, t: float) -> GridWavefunction:
    """Free evolution: each momentum mode picks up e^{-i p^2 t / (2 m hbar)}."""
    require_normalized(psi)
    grid = psi.grid
    phase = np.exp(-1j * psi.hbar * grid.k**2 * t / (2 * psi.mass))
    amp = np.fft.ifft(phase * np.fft.fft(psi.amp))
    return GridWavefunction(grid, amp, psi.mass, psi.hbar)


def energy(psi: GridWavefunction, v: Potential) -> float:
    """<H> = kinetic part in momentum space + potential quadrature."""
    require_normalized(psi)
    grid = psi.grid
    spec = np.fft.fft(psi.amp)
    w = np.abs(spec) ** 2
    kin = float(((psi.hbar * grid.k) ** 2 / (2 * psi.mass) * w).sum() / w.sum())
    pot = float((v.samples * np.abs(psi.amp) ** 2).sum() * grid.dx)
    return kin + pot


def ehrenfest_residual(log: TrajectoryLog, v: Potential) -> float:
    """max over t of |d<p>/dt + <dV/dx>| from centered differences."""
    if len(log.times) < 5:
        raise TooFewSamples(f"{len(log.times)} samples, need at least 5")
    t, p = log.times, log.p_mean
    dpdt = (p[2:] - p[:-2]) / (t[2:] - t[:-2])
    return float(np.abs(dpdt + log.grad_v_mean[1:-1]).max())
