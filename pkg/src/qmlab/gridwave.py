"""Wavefunctions on uniform 1-D grids.

Position/momentum representations are linked by the hbar-scaled Fourier
transform (analysis kernel e^{-i p x / hbar} / sqrt(2 pi hbar)); momentum
derivatives are spectral, which makes the round-trip and Plancherel
identities exact to rounding.  Grids are periodic, so moments are only
trusted for states with a verified support margin away from the edges.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    GridTooNarrow,
    NotNormalized,
    PacketNearBoundary,
    PacketTooNarrow,
    QmlabError,
)

NORMALIZATION_ATOL = 1e-10
SUPPORT_MARGIN_FRACTION = 0.1
SUPPORT_MARGIN_RTOL = 1e-10

QWF1_MAGIC = b"QWF1"


@dataclass(frozen=True)
class Grid1D:
    """Uniform periodic grid: n power-of-two points spaced dx from x_min."""

    x_min: float
    dx: float
    n: int

    def __post_init__(self):
        if self.n < 8 or self.n & (self.n - 1) != 0:
            raise QmlabError(f"grid size must be a power of two >= 8, got {self.n}")
        if self.dx <= 0:
            raise QmlabError("dx must be positive")

    @property
    def length(self) -> float:
        return self.n * self.dx

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n)

    @property
    def k(self) -> np.ndarray:
        """Angular wavenumbers in FFT order."""
        return 2 * np.pi * np.fft.fftfreq(self.n, self.dx)

    def dp(self, hbar: float = 1.0) -> float:
        """Momentum-grid spacing 2 pi hbar / (n dx)."""
        return 2 * np.pi * hbar / (self.n * self.dx)


@dataclass(frozen=True)
class GridWavefunction:
    """Complex samples psi(x) with the particle context (mass, hbar)."""

    grid: Grid1D
    amp: np.ndarray
    mass: float = 1.0
    hbar: float = 1.0


@dataclass(frozen=True)
class MomentumWavefunction:
    """Samples phi(p) on the dual grid, p ascending."""

    p: np.ndarray
    amp: np.ndarray
    dp: float
    source_grid: Grid1D
    mass: float
    hbar: float


def grid_wavefunction(grid, amplitudes, mass=1.0, hbar=1.0, normalize=True):
    amp = np.asarray(amplitudes, dtype=complex).copy()
    if amp.shape != (grid.n,):
        raise QmlabError(f"amplitude shape {amp.shape} does not match grid n={grid.n}")
    if normalize:
        nrm = np.sqrt((np.abs(amp) ** 2).sum() * grid.dx)
        if nrm < 1e-300:
            raise QmlabError("cannot normalize a zero wavefunction")
        amp /= nrm
    amp.setflags(write=False)
    return GridWavefunction(grid, amp, mass, hbar)


def norm_squared(psi: GridWavefunction) -> float:
    return float((np.abs(psi.amp) ** 2).sum() * psi.grid.dx)


def require_normalized(psi: GridWavefunction):
    if abs(norm_squared(psi) - 1.0) > NORMALIZATION_ATOL:
        raise NotNormalized(f"norm^2 = {norm_squared(psi)!r}")


def support_margin_ok(psi: GridWavefunction) -> bool:
    """True if |psi| in the outer 10% of the grid is below 1e-10 of its peak.

    Periodic-grid moments are only meaningful when this holds.
    """
    edge = max(1, int(SUPPORT_MARGIN_FRACTION * psi.grid.n / 2))
    mags = np.abs(psi.amp)
    outer = max(mags[:edge].max(), mags[-edge:].max())
    return outer <= SUPPORT_MARGIN_RTOL * mags.max()


def gaussian_packet(grid, x0, p0, sigma_x, mass=1.0, hbar=1.0):
    """Normalized Gaussian wave packet centered at x0 with mean momentum p0.

    Envelope exp(-(x-x0)^2 / (4 sigma_x^2)), so sigma_x is the position
    standard deviation and the packet saturates the uncertainty bound.
    """
    if sigma_x < 4 * grid.dx:
        raise PacketTooNarrow(f"sigma_x = {sigma_x} < 4 dx = {4 * grid.dx}")
    if grid.length < 12 * sigma_x:
        raise PacketNearBoundary(
            f"grid extent {grid.length} < 12 sigma_x = {12 * sigma_x}"
        )
    if not (grid.x_min + 6 * sigma_x <= x0 <= grid.x_min + grid.length - 6 * sigma_x):
        raise PacketNearBoundary(f"x0 = {x0} closer than 6 sigma_x to a grid edge")
    x = grid.x
    amp = np.exp(-((x - x0) ** 2) / (4 * sigma_x**2)) * np.exp(1j * p0 * x / hbar)
    return grid_wavefunction(grid, amp, mass, hbar)


def to_momentum(psi: GridWavefunction) -> MomentumWavefunction:
    """Analysis transform phi(p); discretized with the x_min phase offset."""
    require_normalized(psi)
    g = psi.grid
    k = g.k
    coeff = g.dx / np.sqrt(2 * np.pi * psi.hbar)
    phi = coeff * np.exp(-1j * k * g.x_min) * np.fft.fft(psi.amp)
    order = np.argsort(k, kind="stable")
    return MomentumWavefunction(
        p=psi.hbar * k[order],
        amp=phi[order],
        dp=g.dp(psi.hbar),
        source_grid=g,
        mass=psi.mass,
        hbar=psi.hbar,
    )


def from_momentum(phi: MomentumWavefunction) -> GridWavefunction:
    """Exact inverse of to_momentum."""
    g = phi.source_grid
    k = g.k
    order = np.argsort(k, kind="stable")
    spec = np.empty(g.n, dtype=complex)
    spec[order] = phi.amp
    coeff = np.sqrt(2 * np.pi * phi.hbar) / g.dx
    amp = np.fft.ifft(coeff * np.exp(1j * k * g.x_min) * spec)
    return GridWavefunction(g, amp, phi.mass, phi.hbar)


def momentum_norm_squared(phi: MomentumWavefunction) -> float:
    return float((np.abs(phi.amp) ** 2).sum() * phi.dp)


def spectral_momentum_apply(psi: GridWavefunction) -> np.ndarray:
    """(p_hat psi)(x) = -i hbar psi'(x) via the spectral derivative."""
    g = psi.grid
    return np.fft.ifft(psi.hbar * g.k * np.fft.fft(psi.amp))


def expectation_x(psi: GridWavefunction) -> float:
    require_normalized(psi)
    s0, s1, _ = kernels.weighted_moments(psi.amp, psi.grid.x)
    return s1 / s0


def expectation_p(psi: GridWavefunction) -> float:
    """Mean momentum; the momentum-density and spectral-derivative routes
    are cross-checked to 1e-8 before returning."""
    require_normalized(psi)
    phi = to_momentum(psi)
    from_density = float((phi.p * np.abs(phi.amp) ** 2).sum() * phi.dp)
    grad = np.vdot(psi.amp, spectral_momentum_apply(psi)) * psi.grid.dx
    from_gradient = float(grad.real)
    if abs(from_density - from_gradient) > 1e-8:
        raise QmlabError(
            f"momentum routes disagree: {from_density!r} vs {from_gradient!r}"
        )
    return from_density


def uncertainties(psi: GridWavefunction) -> tuple[float, float]:
    """Position and momentum standard deviations from the two densities."""
    require_normalized(psi)
    s0, s1, s2 = kernels.weighted_moments(psi.amp, psi.grid.x)
    var_x = s2 / s0 - (s1 / s0) ** 2
    phi = to_momentum(psi)
    w = np.abs(phi.amp) ** 2 * phi.dp
    mean_p = float((phi.p * w).sum())
    var_p = float((phi.p**2 * w).sum()) - mean_p**2
    return float(np.sqrt(max(var_x, 0.0))), float(np.sqrt(max(var_p, 0.0)))


def hermite_basis(grid, k_index, mass=1.0, hbar=1.0, omega=1.0):
    """Harmonic-oscillator eigenfunction of index k on the grid.

    Uses the stable normalized recurrence; the length scale is
    sqrt(hbar / (mass * omega)) and the function is centered on the grid.
    """
    if not 0 <= k_index <= 20:
        raise QmlabError(f"hermite index must be in 0..20, got {k_index}")
    a = np.sqrt(hbar / (mass * omega))
    center = grid.x_min + grid.length / 2
    u = (grid.x - center) / a
    h_prev = np.pi**-0.25 * np.exp(-(u**2) / 2)
    h = h_prev
    if k_index >= 1:
        h = np.sqrt(2.0) * u * h_prev
    for k in range(2, k_index + 1):
        h, h_prev = np.sqrt(2.0 / k) * u * h - np.sqrt((k - 1) / k) * h_prev, h
    boundary = max(abs(h[0]), abs(h[-1]))
    if boundary >= 1e-12:
        raise GridTooNarrow(f"hermite {k_index} boundary amplitude {boundary:.2e}")
    return grid_wavefunction(grid, h.astype(complex), mass, hbar)


def inner_grid(a: GridWavefunction, b: GridWavefunction) -> complex:
    """L2 inner product on the grid, conjugate-linear in the first slot."""
    if a.grid != b.grid:
        raise QmlabError("wavefunctions live on different grids")
    return complex(np.vdot(a.amp, b.amp) * a.grid.dx)


def write_csv(psi: GridWavefunction, path):
    """Columns: x, Re psi, Im psi, |psi|^2."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("x,re_psi,im_psi,abs2_psi\n")
        for xv, av in zip(psi.grid.x, psi.amp):
            fh.write(
                f"{xv:.17g},{av.real:.17g},{av.imag:.17g},{abs(av) ** 2:.17g}\n"
            )


def save_qwf1(psi: GridWavefunction, path):
    """Compact binary dump: 'QWF1', n, dx, x_min, mass, hbar, then (re, im) f64 pairs."""
    with open(path, "wb") as fh:
        fh.write(QWF1_MAGIC)
        fh.write(
            struct.pack(
                "<Qdddd", psi.grid.n, psi.grid.dx, psi.grid.x_min, psi.mass, psi.hbar
            )
        )
        inter = np.empty(2 * psi.grid.n, dtype="<f8")
        inter[0::2] = psi.amp.real
        inter[1::2] = psi.amp.imag
        fh.write(inter.tobytes())


def load_qwf1(path) -> GridWavefunction:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != QWF1_MAGIC:
            raise QmlabError(f"bad magic {magic!r}")
        n, dx, x_min, mass, hbar = struct.unpack("<Qdddd", fh.read(8 + 4 * 8))
        data = np.frombuffer(fh.read(16 * n), dtype="<f8")
    amp = data[0::2] + 1j * data[1::2]
    return grid_wavefunction(Grid1D(x_min, dx, int(n)), amp, mass, hbar, normalize=False)
