"""Angular-momentum algebra, spin-1/2 dynamics, and two-spin coupling.

Ladder-operator construction of the (Jx, Jy, Jz, J+, J-) matrices for any
half-integer j, Larmor precession of a spin-1/2 magnetic moment, coupling
of two spins into singlet/triplet sectors, exchange symmetry with the
boson/fermion projections, correlated measurement of an entangled pair,
and the integer-eigenvalue spectrum of the orbital rotation operator on a
periodic ring.

Basis conventions, fixed once for all matrix literals: single-spin basis
ordered by descending magnetic quantum number m; two-spin product basis
ordered (++, +-, -+, --), left factor slow.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, InvalidJ, NotNormalized, QmlabError
from .hilbert import StateVector, make_state, tensor_op
from .rng import generator

ENTANGLEMENT_SV_TOL = 1e-10
REJECTION_NORM = 1e-12


@dataclass(frozen=True)
class SpinSystem:
    """Matrices of one angular-momentum multiplet (dimension 2j+1)."""

    j: float
    hbar: float
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    jplus: np.ndarray
    jminus: np.ndarray

    @property
    def dim(self) -> int:
        return int(round(2 * self.j)) + 1

    @property
    def m_values(self) -> np.ndarray:
        """Magnetic quantum numbers in basis order (descending)."""
        return self.j - np.arange(self.dim)


def spin_matrices(j, hbar: float = 1.0) -> SpinSystem:
    """Ladder construction: Jz diagonal, <j,m+1|J+|j,m> = hbar sqrt(j(j+1)-m(m+1)).

    Positive square roots throughout (Condon-Shortley phases).
    """
    two_j = round(2 * j)
    if abs(2 * j - two_j) > 1e-12 or not 1 <= two_j <= 40:
        raise InvalidJ(f"j = {j} must be a half-integer with 1 <= 2j <= 40")
    j = two_j / 2
    dim = two_j + 1
    m = j - np.arange(dim)
    jz = np.diag(m * hbar).astype(complex)
    jplus = np.zeros((dim, dim), dtype=complex)
    for i in range(1, dim):
        jplus[i - 1, i] = hbar * np.sqrt(j * (j + 1) - m[i] * (m[i] + 1))
    jminus = jplus.conj().T.copy()
    jx = (jplus + jminus) / 2
    jy = (jplus - jminus) / 2j
    return SpinSystem(j, hbar, jx, jy, jz, jplus, jminus)


def check_su2(s: SpinSystem) -> float:
    """Largest Frobenius residual of the three cyclic commutation relations."""
    worst = 0.0
    for a, b, c in ((s.jx, s.jy, s.jz), (s.jy, s.jz, s.jx), (s.jz, s.jx, s.jy)):
        resid = a @ b - b @ a - 1j * s.hbar * c
        worst = max(worst, float(np.linalg.norm(resid)))
    return worst


def _require_unit(alpha: complex, beta: complex):
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > 1e-10:
        raise NotNormalized("|alpha|^2 + |beta|^2 must be 1")


def larmor_evolve(alpha, beta, omega0: float, t: float) -> StateVector:
    """Spin-1/2 state at time t in a static field along z (H = omega0 Sz).

    Closed form: the up/down components rotate with phases e^{-i omega0 t/2}
    and e^{+i omega0 t/2}; the state is 4 pi / omega0-periodic and flips
    sign after 2 pi / omega0.
    """
    _require_unit(alpha, beta)
    amp = np.array(
        [alpha * np.exp(-0.5j * omega0 * t), beta * np.exp(0.5j * omega0 * t)]
    )
    return StateVector(amp)


def magnetic_moment_means(alpha, beta, omega0, gamma_ratio=1.0, t=0.0, hbar=1.0):
    """Larmor means (<mu_x>, <mu_y>, <mu_z>) at time t (scalar or array).

    Closed forms: mu_z = gamma hbar/2 (|alpha|^2 - |beta|^2) is constant;
    with gamma hbar conj(alpha) beta = C e^{i phi}, the transverse means are
    the two quadratures mu_x = C cos(omega0 t + phi), mu_y = C sin(omega0 t
    + phi).  Each value is cross-checked against the expectation of
    gamma*S_{x,y,z} in the evolved state to 1e-12.
    """
    _require_unit(alpha, beta)
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t_flat = np.atleast_1d(t)
    c_complex = gamma_ratio * hbar * np.conj(alpha) * beta
    amplitude, phase = abs(c_complex), float(np.angle(c_complex))
    mu_x = amplitude * np.cos(omega0 * t_flat + phase)
    mu_y = amplitude * np.sin(omega0 * t_flat + phase)
    mu_z = np.full_like(
        t_flat, gamma_ratio * hbar / 2 * (abs(alpha) ** 2 - abs(beta) ** 2)
    )

    s = spin_matrices(0.5, hbar)
    for i, tv in enumerate(t_flat):
        psi = larmor_evolve(alpha, beta, omega0, float(tv)).amp
        for op, closed in ((s.jx, mu_x[i]), (s.jy, mu_y[i]), (s.jz, mu_z[i])):
            direct = gamma_ratio * float(np.vdot(psi, op @ psi).real)
            if abs(direct - closed) > 1e-12:
                raise QmlabError(
                    f"closed form {closed} vs expectation {direct} at t={tv}"
                )
    if scalar:
        return float(mu_x[0]), float(mu_y[0]), float(mu_z[0])
    return mu_x, mu_y, mu_z


@dataclass(frozen=True)
class TwoSpinBasis:
    """Product basis (++, +-, -+, --) and the triplet/singlet vectors."""

    labels: tuple = ("++", "+-", "-+", "--")
    # columns: theta_1..theta_4; theta_4 is the antisymmetric singlet
    theta: np.ndarray = None

    def __post_init__(self):
        if self.theta is None:
            r = 1 / np.sqrt(2)
            theta = np.array(
                [
                    [1, 0, 0, 0],
                    [0, 0, r, r],
                    [0, 0, r, -r],
                    [0, 1, 0, 0],
                ],
                dtype=complex,
            )
            theta.setflags(write=False)
            object.__setattr__(self, "theta", theta)

    def singlet(self) -> StateVector:
        return StateVector(self.theta[:, 3].copy())

    def triplet(self, i: int) -> StateVector:
        return StateVector(self.theta[:, i].copy())


def couple_two_spins(hbar: float = 1.0):
    """Total-spin matrices S = S1 x Id + Id x S2 of two spin-1/2 particles.

    Returns (Sx, Sy, Sz, S_squared, basis); S_squared has eigenvalue 0 on
    the singlet and 2 hbar^2 on the three triplet states.
    """
    s = spin_matrices(0.5, hbar)
    eye = np.eye(2, dtype=complex)
    totals = []
    for op in (s.jx, s.jy, s.jz):
        totals.append(tensor_op(op, eye) + tensor_op(eye, op))
    s_squared = sum(op @ op for op in totals)
    return totals[0], totals[1], totals[2], s_squared, TwoSpinBasis()


def exchange_operator(dim_single: int) -> np.ndarray:
    """Swap of the two tensor factors: P(u x v) = v x u."""
    d = dim_single
    p = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for k in range(d):
            p[k * d + i, i * d + k] = 1.0
    return p


def pauli_project(psi: StateVector, kind: str) -> StateVector | None:
    """Project onto the symmetric (boson) or antisymmetric (fermion) sector.

    Returns the renormalized projection, or None (rejected) when the state
    has no component in the allowed sector.
    """
    if kind not in ("boson", "fermion"):
        raise ValueError(f"kind must be 'boson' or 'fermion', got {kind!r}")
    d = int(round(np.sqrt(psi.dim)))
    if d * d != psi.dim:
        raise DimMismatch(f"state dimension {psi.dim} is not a perfect square")
    p = exchange_operator(d)
    sign = 1.0 if kind == "boson" else -1.0
    projected = (psi.amp + sign * (p @ psi.amp)) / 2
    if np.linalg.norm(projected) < REJECTION_NORM:
        return None
    return make_state(projected)


def is_entangled(psi: StateVector) -> bool:
    """Schmidt test: second singular value of the 2x2 reshaping above 1e-10."""
    d = int(round(np.sqrt(psi.dim)))
    if d * d != psi.dim:
        raise DimMismatch(f"state dimension {psi.dim} is not a perfect square")
    singular_values = np.linalg.svd(psi.amp.reshape(d, d), compute_uv=False)
    return bool(singular_values[1] > ENTANGLEMENT_SV_TOL)


def _z_branches(psi_amp: np.ndarray, particle: int, hbar: float):
    """Born branches of measuring Sz on one particle of a two-spin state.

    Returns [(outcome, probability, collapsed amplitudes), ...]; the product
    structure makes the projectors simple index masks.
    """
    amp = psi_amp.reshape(2, 2)
    branches = []
    for idx, outcome in ((0, hbar / 2), (1, -hbar / 2)):
        proj = np.zeros_like(amp)
        if particle == 0:
            proj[idx, :] = amp[idx, :]
        else:
            proj[:, idx] = amp[:, idx]
        prob = float((np.abs(proj) ** 2).sum())
        branches.append((outcome, prob, proj.reshape(-1)))
    return branches


def epr_joint_sample(psi: StateVector, seed: int, hbar: float = 1.0):
    """Sequential z-measurement of both spins: sample, collapse, sample.

    Returns (s1, s2), each +/- hbar/2.  Deterministic for a given seed.
    """
    if psi.dim != 4:
        raise DimMismatch("joint sampling is defined on the two-spin space (dim 4)")
    rng = generator(seed)
    u1, u2 = rng.random(2)
    return _joint_draw(psi.amp, u1, u2, hbar)


def _joint_draw(amp, u1, u2, hbar):
    branches = _z_branches(amp, 0, hbar)
    acc = 0.0
    for outcome1, prob, collapsed in branches:
        acc += prob
        if u1 < acc and prob > 0:
            break
    collapsed = collapsed / np.linalg.norm(collapsed)
    acc = 0.0
    for outcome2, prob, _ in _z_branches(collapsed, 1, hbar):
        acc += prob
        if u2 < acc and prob > 0:
            break
    return outcome1, outcome2


def epr_joint_counts(psi: StateVector, n: int, seed: int, hbar: float = 1.0):
    """Joint outcome counts over n draws from one seeded stream.

    Returns a 2x2 integer array indexed by (spin1, spin2) with 0 = +hbar/2
    and 1 = -hbar/2.  Vectorized two-stage inverse-CDF sampling.
    """
    if psi.dim != 4:
        raise DimMismatch("joint sampling is defined on the two-spin space (dim 4)")
    amp = psi.amp.reshape(2, 2)
    u = generator(seed).random((n, 2))
    p_first_up = float((np.abs(amp[0]) ** 2).sum())
    first = (u[:, 0] >= p_first_up).astype(np.intp)  # 0 = up, 1 = down
    counts = np.zeros((2, 2), dtype=np.int64)
    for row in (0, 1):
        sel = first == row
        n_sel = int(sel.sum())
        if n_sel == 0:
            continue
        row_amp = amp[row]
        row_norm = float((np.abs(row_amp) ** 2).sum())
        if row_norm == 0.0:
            # zero-probability branch is never drawn; guard for completeness
            continue
        p_second_up = float(abs(row_amp[0]) ** 2) / row_norm
        second = (u[sel, 1] >= p_second_up).astype(np.intp)
        counts[row, 0] += int((second == 0).sum())
        counts[row, 1] += int((second == 1).sum())
    return counts


def orbital_ring_spectrum(n_grid: int, hbar: float = 1.0) -> np.ndarray:
    """Eigenvalues of the rotation generator -i hbar d/dphi on a periodic ring.

    The operator matrix is assembled from the spectral derivative; all
    eigenvalues are integer multiples of hbar (never half-integers).
    """
    if n_grid < 16 or n_grid % 2:
        raise ValueError(f"n_grid must be even and >= 16, got {n_grid}")
    freqs = np.fft.fftfreq(n_grid, 1.0 / n_grid)  # integer mode numbers
    columns = np.fft.ifft(hbar * freqs[:, None] * np.fft.fft(np.eye(n_grid), axis=0), axis=0)
    operator = (columns + columns.conj().T) / 2  # Hermitian to rounding already
    return np.linalg.eigvalsh(operator)
