"""First-pass relativistic wave equations (light speed c = 1 throughout).

Klein-Gordon dynamics in the two-component form phi_1 = psi + (i hbar/m)
d_t psi, phi_2 = psi - (i hbar/m) d_t psi, whose conserved density
P = (|phi_1|^2 - |phi_2|^2)/4 is indefinite; the Clifford/gamma-matrix
construction in the standard (diagonal-beta) representation; and the free
Dirac problem with its doubly degenerate +/- sqrt(p^2 + m^2) branches,
large/small components, and negative-energy swapped states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, StabilityViolation
from .gridwave import Grid1D

STABILITY_LIMIT = 0.5


# ---------------------------------------------------------------------------
# Klein-Gordon


@dataclass(frozen=True)
class KGState:
    """Two-component Klein-Gordon state on a 1-D grid.

    phi1/phi2 encode the field and its time derivative; the field itself is
    psi = (phi1 + phi2)/2 and d_t psi = (m / i hbar)(phi1 - phi2)/2.
    """

    grid: Grid1D
    phi1: np.ndarray
    phi2: np.ndarray
    mass: float = 1.0
    hbar: float = 1.0

    @property
    def field(self) -> np.ndarray:
        return (self.phi1 + self.phi2) / 2

    @property
    def field_dt(self) -> np.ndarray:
        return self.mass / (1j * self.hbar) * (self.phi1 - self.phi2) / 2


def kg_dispersion(k, mass: float, hbar: float = 1.0):
    """omega(k) = sqrt(k^2 + (m/hbar)^2): plane waves e^{i(kx - omega t)}
    solve d_tt psi = d_xx psi - (m/hbar)^2 psi."""
    k = np.asarray(k, dtype=float)
    out = np.sqrt(k**2 + (mass / hbar) ** 2)
    return float(out) if out.ndim == 0 else out


def _branch_weights(k, mass, hbar):
    """Per-mode (phi1, phi2) weights of the e^{-i omega t} branch."""
    w = hbar * kg_dispersion(k, mass, hbar) / mass
    return 1.0 + w, 1.0 - w


def kg_packet(grid, x0, p0, sigma_x, mass=1.0, hbar=1.0, frequency="positive"):
    """Gaussian Klein-Gordon packet restricted to one frequency branch.

    The state is scaled so the integrated density is +1 (positive branch)
    or -1 (negative branch).
    """
    if frequency not in ("positive", "negative"):
        raise ValueError(f"unknown frequency {frequency!r}")
    k = grid.k
    x = grid.x
    up, down = _branch_weights(k, mass, hbar)
    psi = np.exp(-((x - x0) ** 2) / (4 * sigma_x**2)) * np.exp(1j * p0 * x / hbar)
    spec = np.fft.fft(psi.astype(complex))
    if frequency == "positive":
        phi1, phi2 = np.fft.ifft(up * spec), np.fft.ifft(down * spec)
    else:
        phi1, phi2 = np.fft.ifft(down * spec), np.fft.ifft(up * spec)
    state = KGState(grid, phi1, phi2, mass, hbar)
    scale = 1.0 / np.sqrt(abs(kg_charge(state)))
    return KGState(grid, phi1 * scale, phi2 * scale, mass, hbar)


def kg_mixed_packet(grid, x0, p_positive, p_negative, sigma_x, mass=1.0, hbar=1.0):
    """Equal-weight superposition of a positive- and a negative-frequency packet.

    Net charge is 0 (the branches are charge-orthogonal); when the branch
    momenta differ in magnitude the density oscillates in sign locally with
    amplitude set by the frequency difference.
    """
    pos = kg_packet(grid, x0, p_positive, sigma_x, mass, hbar, "positive")
    neg = kg_packet(grid, x0, p_negative, sigma_x, mass, hbar, "negative")
    r = 1 / np.sqrt(2)
    return KGState(
        grid, r * (pos.phi1 + neg.phi1), r * (pos.phi2 + neg.phi2), mass, hbar
    )


def kg_density(state: KGState) -> np.ndarray:
    """Conserved density P(x) = (|phi1|^2 - |phi2|^2)/4; not positive in general."""
    return (np.abs(state.phi1) ** 2 - np.abs(state.phi2) ** 2) / 4


def kg_charge(state: KGState) -> float:
    return float(kg_density(state).sum() * state.grid.dx)


def _mode_matrices(state: KGState, dt: float):
    """exp(M(k) dt) per mode for the two-component first-order system.

    M(k) = [[-i(a+b), -i a], [i a, i(a+b)]] with a = hbar k^2 / 2m and
    b = m/hbar; M is traceless with M^2 = -omega^2 I, so
    exp(M dt) = cos(omega dt) I + sin(omega dt)/omega M.
    """
    k = state.grid.k
    a = state.hbar * k**2 / (2 * state.mass)
    b = state.mass / state.hbar
    omega = kg_dispersion(k, state.mass, state.hbar)
    cos, sinc = np.cos(omega * dt), np.sin(omega * dt) / omega
    e11 = cos - 1j * (a + b) * sinc
    e12 = -1j * a * sinc
    e21 = 1j * a * sinc
    e22 = cos + 1j * (a + b) * sinc
    return e11, e12, e21, e22


def kg_evolve(state: KGState, dt: float, steps: int, method: str = "exact") -> KGState:
    """Advance the two-component state by steps * dt.

    'exact' applies the per-mode matrix exponential (no time-step error, no
    stability constraint).  'rk4' is the optional finite-difference-in-time
    mode and enforces dt (hbar k_max^2 / 2m + 2 m / hbar) < 0.5.
    """
    if method == "exact":
        e11, e12, e21, e22 = _mode_matrices(state, dt * steps)
        f1, f2 = np.fft.fft(state.phi1), np.fft.fft(state.phi2)
        g1 = e11 * f1 + e12 * f2
        g2 = e21 * f1 + e22 * f2
        return KGState(
            state.grid, np.fft.ifft(g1), np.fft.ifft(g2), state.mass, state.hbar
        )
    if method != "rk4":
        raise ValueError(f"unknown method {method!r}")
    k = state.grid.k
    k_max = np.pi / state.grid.dx
    rate = state.hbar * k_max**2 / (2 * state.mass) + 2 * state.mass / state.hbar
    if dt * rate >= STABILITY_LIMIT:
        raise StabilityViolation("dt too large for the finite-difference mode")
    a = state.hbar * k**2 / (2 * state.mass)
    b = state.mass / state.hbar

    def deriv(f1, f2):
        return (
            -1j * (a + b) * f1 - 1j * a * f2,
            1j * a * f1 + 1j * (a + b) * f2,
        )

    f1, f2 = np.fft.fft(state.phi1), np.fft.fft(state.phi2)
    for _ in range(steps):
        k1 = deriv(f1, f2)
        k2 = deriv(f1 + dt / 2 * k1[0], f2 + dt / 2 * k1[1])
        k3 = deriv(f1 + dt / 2 * k2[0], f2 + dt / 2 * k2[1])
        k4 = deriv(f1 + dt * k3[0], f2 + dt * k3[1])
        f1 = f1 + dt / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        f2 = f2 + dt / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
    return KGState(
        state.grid, np.fft.ifft(f1), np.fft.ifft(f2), state.mass, state.hbar
    )


def kg_nonrelativistic_mismatch(state: KGState, t: float) -> tuple[float, float]:
    """Compare e^{i m t / hbar} phi1(t) against free-Schrodinger-evolved phi1(0).

    Returns (relative overlap-phase error, relative L2 mismatch).  The first
    is |arg <schrodinger | shifted>| / 2 pi, the accumulated phase
    discrepancy as a fraction of a full turn.
    """
    evolved = kg_evolve(state, t, 1)
    shifted = evolved.phi1 * np.exp(1j * state.mass * t / state.hbar)
    k = state.grid.k
    schro = np.fft.ifft(
        np.fft.fft(state.phi1)
        * np.exp(-1j * state.hbar * k**2 * t / (2 * state.mass))
    )
    overlap = np.vdot(schro, shifted) / (
        np.linalg.norm(schro) * np.linalg.norm(shifted)
    )
    phase_err = float(abs(np.angle(overlap)) / (2 * np.pi))
    l2 = float(np.linalg.norm(shifted - schro) / np.linalg.norm(state.phi1))
    return phase_err, l2


def kg_mode_energies(state: KGState) -> np.ndarray:
    """Per-mode quadratic invariant |psi_dot|^2 + omega^2 |psi|^2."""
    psi_hat = np.fft.fft(state.field) / state.grid.n
    dot_hat = np.fft.fft(state.field_dt) / state.grid.n
    omega = kg_dispersion(state.grid.k, state.mass, state.hbar)
    return np.abs(dot_hat) ** 2 + omega**2 * np.abs(psi_hat) ** 2


# ---------------------------------------------------------------------------
# Clifford algebra and the free Dirac problem


@dataclass(frozen=True)
class GammaSet:
    """Four anticommuting 4x4 matrices: g1..g3 square to -I, g4 to +I."""

    g1: np.ndarray
    g2: np.ndarray
    g3: np.ndarray
    g4: np.ndarray

    def spatial(self) -> tuple:
        return (self.g1, self.g2, self.g3)


_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def build_gammas() -> GammaSet:
    """Standard representation: g4 = diag(1,1,-1,-1), gi = [[0, s_i], [-s_i, 0]].

    All entries are exact in floating point, so the anticommutation table
    holds with zero residual.
    """
    zero = np.zeros((2, 2), dtype=complex)
    eye = np.eye(2, dtype=complex)
    gs = []
    for s in _PAULI:
        gs.append(np.block([[zero, s], [-s, zero]]))
    g4 = np.block([[eye, zero], [zero, -eye]])
    return GammaSet(gs[0], gs[1], gs[2], g4)


def alpha_matrices(gammas: GammaSet | None = None) -> tuple:
    """The three velocity matrices g4 @ gi (off-diagonal Pauli blocks)."""
    if gammas is None:
        gammas = build_gammas()
    return tuple(gammas.g4 @ g for g in gammas.spatial())


def dirac_hamiltonian(p, mass: float, gammas: GammaSet | None = None) -> np.ndarray:
    """Free Dirac Hamiltonian sum_j p_j (g4 g_j) + m g4; squares to (p^2+m^2) I."""
    p = np.atleast_1d(np.asarray(p, dtype=float))
    if p.size not in (1, 3):
        raise DimMismatch("momentum must be a scalar or a 3-vector")
    if p.size == 1:
        p = np.array([p[0], 0.0, 0.0])
    if gammas is None:
        gammas = build_gammas()
    alphas = alpha_matrices(gammas)
    h = mass * gammas.g4.astype(complex)
    for pj, aj in zip(p, alphas):
        h = h + pj * aj
    return h


@dataclass(frozen=True)
class DiracMode:
    """Eigensystem of the free Dirac Hamiltonian at one momentum.

    energies ascending; spinors are the matching orthonormal columns.  The
    sigma_4 = +1 block is the first two components (large components for
    positive energy at small momentum).
    """

    momentum: float
    mass: float
    energies: np.ndarray
    spinors: np.ndarray

    def positive_spinors(self) -> np.ndarray:
        return self.spinors[:, self.energies > 0]

    def small_component_ratio(self) -> float:
        """Largest lower-block norm among the positive-energy spinors."""
        pos = self.positive_spinors()
        return float(np.linalg.norm(pos[2:, :], axis=0).max())


def dirac_mode(p: float, mass: float) -> DiracMode:
    h = dirac_hamiltonian([p, 0.0, 0.0], mass)
    energies, spinors = np.linalg.eigh(h)
    return DiracMode(float(p), float(mass), energies, spinors)


def swapped_state_energy(mode: DiracMode) -> float:
    """<psi~, H psi~> for the state with large and small blocks exchanged.

    Negative whenever |p| < m: exchanging the blocks of a positive-energy
    spinor lands in the negative branch.
    """
    u = mode.positive_spinors()[:, 0]
    swapped = np.concatenate([u[2:], u[:2]])
    swapped = swapped / np.linalg.norm(swapped)
    h = dirac_hamiltonian([mode.momentum, 0.0, 0.0], mode.mass)
    return float(np.vdot(swapped, h @ swapped).real)


def dirac_nonrel_phase_error(p: float, mass: float) -> float:
    """Relative phase error of the positive branch against the slow limit.

    Over one characteristic period the phase discrepancy between
    e^{-i(E - m)t/hbar} and e^{-i p^2 t / (2 m hbar)} is the relative
    energy error |(E - m) - p^2/2m| / (p^2/2m).
    """
    kinetic = p**2 / (2 * mass)
    exact = np.sqrt(p**2 + mass**2) - mass
    return float(abs(exact - kinetic) / kinetic)


def dirac_evolve_free(
    spinor_field: np.ndarray, grid: Grid1D, t: float, mass: float, hbar: float = 1.0
) -> np.ndarray:
    """Evolve a 4-component field by momentum-space diagonalization.

    Per mode, H(k) = (hbar k) alpha_1 + m g4 with H^2 = E^2 I, so
    e^{-i H t / hbar} = cos(E t / hbar) I - i sin(E t / hbar) H / E.
    Exactly unitary for any t.
    """
    if spinor_field.shape != (grid.n, 4):
        raise DimMismatch(f"field shape {spinor_field.shape}, want ({grid.n}, 4)")
    gammas = build_gammas()
    alpha1 = alpha_matrices(gammas)[0]
    spec = np.fft.fft(spinor_field, axis=0)
    p = hbar * grid.k
    energy = np.sqrt(p**2 + mass**2)
    cos = np.cos(energy * t / hbar)
    sinc = np.where(energy > 0, np.sin(energy * t / hbar) / np.maximum(energy, 1e-300), t / hbar)
    h_blocks = p[:, None, None] * alpha1 + mass * gammas.g4
    evolved = cos[:, None] * spec - 1j * sinc[:, None] * np.einsum(
        "kij,kj->ki", h_blocks, spec
    )
    return np.fft.ifft(evolved, axis=0)


def dirac_square_check(n_grid: int, seed: int = 0) -> float:
    """Residual of D^2 = d_tt - d_xx on a periodic (x, t) grid.

    D = g1 d_x + g4 d_t with spectral derivatives, applied twice to random
    band-limited spinor fields; returns the worst relative residual.
    """
    if n_grid < 8 or n_grid & (n_grid - 1):
        raise ValueError("n_grid must be a power of two >= 8")
    from .rng import generator

    rng = generator(seed)
    gammas = build_gammas()
    modes = np.fft.fftfreq(n_grid, 1.0 / n_grid)
    kx = modes[:, None]
    kt = modes[None, :]

    def spectral_d(field, axis):
        spec = np.fft.fft2(field, axes=(0, 1))
        mult = 1j * (kx if axis == 0 else kt)
        return np.fft.ifft2(spec * mult, axes=(0, 1))

    def dirac_op(field):
        dx = np.stack([spectral_d(field[..., c], 0) for c in range(4)], axis=-1)
        dt = np.stack([spectral_d(field[..., c], 1) for c in range(4)], axis=-1)
        return dx @ gammas.g1.T + dt @ gammas.g4.T

    worst = 0.0
    band = n_grid // 4
    keep = (np.abs(kx) <= band) & (np.abs(kt) <= band)
    for _ in range(20):
        spec = rng.standard_normal((n_grid, n_grid, 4)) + 1j * rng.standard_normal(
            (n_grid, n_grid, 4)
        )
        spec *= keep[..., None]
        field = np.fft.ifft2(spec, axes=(0, 1))
        lhs = dirac_op(dirac_op(field))
        # -box = d_tt - d_xx, i.e. (kx^2 - kt^2) on Fourier symbols
        box_spec = np.fft.fft2(field, axes=(0, 1)) * (kx**2 - kt**2)[..., None]
        rhs = np.fft.ifft2(box_spec, axes=(0, 1))
        resid = np.linalg.norm(lhs - rhs) / np.linalg.norm(field)
        worst = max(worst, float(resid))
    return worst
