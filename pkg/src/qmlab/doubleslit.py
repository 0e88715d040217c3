"""Two-slit interference experiment on a 2-D grid.

A Gaussian packet travels in +x toward an opaque barrier pierced by one or
two slits; the wavefunction is forced to zero on the barrier cells at each
half-step, outflow is soaked up by a sponge absorber on the grid edges, and
the probability flux through the screen column is time-integrated into the
arrival intensity I(y).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
import scipy.fft as sfft

from . import kernels
from .errors import ConfigError, NoTransmission, StabilityViolation

_FFT_WORKERS = 2
STABILITY_LIMIT = 0.5
MIN_TRANSMISSION = 1e-6
# relative flux increment per check interval below which the screen
# accumulation is considered saturated
SATURATION_RTOL = 3e-3
CHECK_INTERVAL = 50


@dataclass(frozen=True)
class SlitScreenConfig:
    """Geometry and numerics of a slit-screen run.

    Axis 0 is x (propagation), axis 1 is y (transverse); the y grid is
    symmetric about 0 so mirror-image configurations are exactly mirrored.
    """

    nx: int = 512
    ny: int = 256
    dx: float = 0.2
    dy: float = 0.26
    barrier_x: float = 12.1
    barrier_thickness: float = 0.42
    slit1_center: float = -2.095
    slit2_center: float = 2.095
    slit_width: float = 1.1
    screen_x: float = 25.1
    packet_x0: float = 7.3
    packet_sigma_x: float = 1.2
    packet_sigma_y: float = 5.0
    p0: float = 6.0
    absorber_strength: float = 20.0
    absorber_fraction: float = 0.08
    mass: float = 1.0
    hbar: float = 1.0
    dt: float | None = None
    max_steps: int = 5000

    def __post_init__(self):
        if self.slit_width < 4 * self.dy:
            raise ConfigError(
                f"slit_width {self.slit_width} < 4*dy = {4 * self.dy}"
            )
        if abs(self.slit2_center - self.slit1_center) < self.slit_width:
            raise ConfigError("slits overlap: |y2 - y1| < slit_width")
        if self.screen_x <= self.barrier_x + self.barrier_thickness / 2:
            raise ConfigError("screen_x must lie beyond the barrier")
        if self.p0 <= 0:
            raise ConfigError("p0 must be positive (packet travels toward +x)")
        if self.packet_x0 + 2 * self.packet_sigma_x >= self.barrier_x:
            raise ConfigError("packet_x0 too close to the barrier")
        x_len = self.nx * self.dx
        if self.screen_x >= x_len * (1 - self.absorber_fraction):
            raise ConfigError("screen_x lies inside the absorber region")

    @property
    def x(self) -> np.ndarray:
        return self.dx * np.arange(self.nx)

    @property
    def y(self) -> np.ndarray:
        return (np.arange(self.ny) - (self.ny - 1) / 2) * self.dy

    @property
    def slit_separation(self) -> float:
        return abs(self.slit2_center - self.slit1_center)

    @property
    def screen_distance(self) -> float:
        return self.screen_x - self.barrier_x

    def stable_dt(self) -> float:
        e_kin_max = (
            self.hbar**2
            * ((np.pi / self.dx) ** 2 + (np.pi / self.dy) ** 2)
            / (2 * self.mass)
        )
        return 0.48 * self.hbar / e_kin_max


def mirrored(cfg: SlitScreenConfig) -> SlitScreenConfig:
    """The y -> -y reflection of a configuration."""
    return replace(
        cfg, slit1_center=-cfg.slit2_center, slit2_center=-cfg.slit1_center
    )


@dataclass(frozen=True)
class DoubleSlitResult:
    y: np.ndarray
    intensity: np.ndarray  # normalized: integral over y = 1
    transmitted: float  # time-integrated flux through the screen
    steps: int


def _mask(cfg: SlitScreenConfig, mode: str) -> np.ndarray:
    x, y = cfg.x, cfg.y
    barrier = np.abs(x[:, None] - cfg.barrier_x) <= cfg.barrier_thickness / 2
    s1 = np.abs(y[None, :] - cfg.slit1_center) <= cfg.slit_width / 2
    s2 = np.abs(y[None, :] - cfg.slit2_center) <= cfg.slit_width / 2
    open_rows = {"both": s1 | s2, "slit1": s1, "slit2": s2}[mode]
    return np.where(barrier & ~open_rows, 0.0, 1.0)


def _sponge(cfg: SlitScreenConfig, dt: float) -> np.ndarray:
    """Quadratic absorbing ramp on the outer edges, applied per half-step."""
    x, y = cfg.x, cfg.y
    wx = cfg.nx * cfg.dx * cfg.absorber_fraction
    wy = cfg.ny * cfg.dy * cfg.absorber_fraction
    rx = (
        np.clip((x[0] + wx - x) / wx, 0, None) ** 2
        + np.clip((x - (x[-1] - wx)) / wx, 0, None) ** 2
    )
    ry = (
        np.clip((y[0] + wy - y) / wy, 0, None) ** 2
        + np.clip((y - (y[-1] - wy)) / wy, 0, None) ** 2
    )
    ramp = rx[:, None] + ry[None, :]
    return np.exp(-cfg.absorber_strength * dt / 2 * ramp)


def double_slit_run(cfg: SlitScreenConfig, mode: str = "both") -> DoubleSlitResult:
    """Propagate the packet past the barrier and accumulate screen intensity.

    Runs until the time-integrated flux through the screen column saturates
    (or max_steps); returns the intensity normalized to unit integral along
    with the raw transmitted weight.
    """
    if mode not in ("both", "slit1", "slit2"):
        raise ConfigError(f"unknown mode {mode!r}")
    dt = cfg.dt if cfg.dt is not None else cfg.stable_dt()
    e_kin_max = (
        cfg.hbar**2 * ((np.pi / cfg.dx) ** 2 + (np.pi / cfg.dy) ** 2) / (2 * cfg.mass)
    )
    if dt * e_kin_max / cfg.hbar >= STABILITY_LIMIT:
        raise StabilityViolation("dt * E_kin_max / hbar exceeds the stability guard")

    x, y = cfg.x, cfg.y
    xg, yg = x[:, None], y[None, :]
    psi = np.exp(
        -((xg - cfg.packet_x0) ** 2) / (4 * cfg.packet_sigma_x**2)
        - yg**2 / (4 * cfg.packet_sigma_y**2)
    ) * np.exp(1j * cfg.p0 * xg / cfg.hbar)
    psi = psi.astype(complex)
    psi /= np.sqrt((np.abs(psi) ** 2).sum() * cfg.dx * cfg.dy)

    absorb = np.ascontiguousarray(_mask(cfg, mode) * _sponge(cfg, dt))
    kx = 2 * np.pi * np.fft.fftfreq(cfg.nx, cfg.dx)
    ky = 2 * np.pi * np.fft.fftfreq(cfg.ny, cfg.dy)
    kinetic = np.exp(
        -1j * cfg.hbar * (kx[:, None] ** 2 + ky[None, :] ** 2) * dt / (2 * cfg.mass)
    )
    kinetic = np.ascontiguousarray(kinetic)

    js = int(round((cfg.screen_x - x[0]) / cfg.dx))
    intensity = np.zeros(cfg.ny)
    flux_coef = cfg.hbar / cfg.mass * dt / (2 * cfg.dx)
    # screen must not sit before the packet reaches it: floor on the step count
    min_steps = int((cfg.screen_x - cfg.packet_x0) / (cfg.p0 / cfg.mass) / dt)
    min_steps += 2 * CHECK_INTERVAL

    steps = 0
    last_total = 0.0
    absorb_flat = absorb.reshape(-1)
    kinetic_flat = kinetic.reshape(-1)
    while steps < cfg.max_steps:
        for _ in range(CHECK_INTERVAL):
            kernels.apply_real(psi.reshape(-1), absorb_flat)
            spec = sfft.fft2(psi, workers=_FFT_WORKERS)
            kernels.apply_phase(spec.reshape(-1), kinetic_flat)
            psi = sfft.ifft2(spec, workers=_FFT_WORKERS)
            kernels.apply_real(psi.reshape(-1), absorb_flat)
            kernels.flux_line(psi[js], psi[js - 1], psi[js + 1], intensity, flux_coef)
            steps += 1
        total = intensity.sum() * cfg.dy
        if (
            steps > min_steps
            and total > MIN_TRANSMISSION
            and abs(total - last_total) < SATURATION_RTOL * abs(total)
        ):
            break
        last_total = total

    transmitted = float(intensity.sum() * cfg.dy)
    if transmitted < MIN_TRANSMISSION:
        raise NoTransmission(f"transmitted weight {transmitted:.3e}")
    return DoubleSlitResult(y, intensity / transmitted, transmitted, steps)


def intensity_maxima(
    y: np.ndarray, intensity: np.ndarray, min_rel_height: float = 0.05
) -> list[float]:
    """Interior local maxima above a relative height, sub-cell refined."""
    peak = intensity.max()
    dy = y[1] - y[0]
    out = []
    for i in range(1, len(y) - 1):
        a, b, c = intensity[i - 1], intensity[i], intensity[i + 1]
        if b > a and b >= c and b > min_rel_height * peak:
            out.append(float(y[i] + 0.5 * (a - c) / (a - 2 * b + c) * dy))
    return out


def central_fringe_spacing(y: np.ndarray, intensity: np.ndarray) -> float:
    """Distance from the central maximum to its first-order neighbours."""
    pos = intensity_maxima(y, intensity)
    if len(pos) < 3:
        raise NoTransmission("fewer than three interference maxima")
    center = min(range(len(pos)), key=lambda i: abs(pos[i]))
    if center == 0 or center == len(pos) - 1:
        raise NoTransmission("central maximum has no neighbours")
    return (pos[center + 1] - pos[center - 1]) / 2


def fraunhofer_spacing(cfg: SlitScreenConfig) -> float:
    """Far-field two-source prediction 2 pi hbar L_s / (p0 d)."""
    return (
        2
        * np.pi
        * cfg.hbar
        * cfg.screen_distance
        / (cfg.p0 * cfg.slit_separation)
    )
