"""Finite-dimensional Hilbert-space kernel.

Unit-norm state vectors, Hermitian observables with cached spectral
decompositions, projective (Born-rule) measurement with collapse, tensor
products, and unitary evolution under a time-independent Hamiltonian.

All containers are treated as immutable values: operations return new
objects and never mutate their arguments.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimMismatch,
    DoNotCommute,
    EigensolveFailure,
    NotHermitian,
    ZeroVector,
)
from .rng import generator

HERMITICITY_RTOL = 1e-10
# Degenerate eigenvalues are grouped at this fraction of the spectral range,
# with an absolute floor for near-scalar operators.
DEGENERACY_RTOL = 1e-8
DEGENERACY_FLOOR = 1e-12
# Below this Born probability a branch is reported with a null post-state.
NULL_PROBABILITY = 1e-14


@dataclass(frozen=True)
class StateVector:
    """Unit-norm complex vector describing a pure state."""

    amp: np.ndarray

    @property
    def dim(self) -> int:
        return self.amp.shape[0]


@dataclass(frozen=True)
class Observable:
    """Hermitian matrix representing a measurable quantity."""

    mat: np.ndarray
    _spectral: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimMismatch(f"observable matrix must be square, got {mat.shape}")
        if not is_hermitian(mat, HERMITICITY_RTOL):
            raise NotHermitian("matrix is not Hermitian within tolerance")
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending), orthonormal eigenvector columns, and the
    partition of indices into degenerate groups."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    groups: tuple
    degeneracy_tol: float


@dataclass(frozen=True)
class MeasurementRecord:
    """One Born branch: outcome value, probability, collapsed state.

    `post_state` is None for branches with probability below
    NULL_PROBABILITY (no meaningful collapse direction).
    """

    outcome: float
    probability: float
    post_state: StateVector | None


def make_state(amplitudes) -> StateVector:
    """Normalize an amplitude vector into a StateVector."""
    amp = np.asarray(amplitudes, dtype=complex).reshape(-1)
    nrm = np.linalg.norm(amp)
    if nrm < 1e-300:
        raise ZeroVector("cannot normalize a zero amplitude vector")
    amp = amp / nrm
    amp.setflags(write=False)
    return StateVector(amp)


def basis_state(dim: int, index: int) -> StateVector:
    amp = np.zeros(dim, dtype=complex)
    amp[index] = 1.0
    amp.setflags(write=False)
    return StateVector(amp)


def random_state(dim: int, rng) -> StateVector:
    """Haar-ish random state from a Generator (or integer seed)."""
    if isinstance(rng, (int, np.integer)):
        rng = generator(rng)
    return make_state(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))


def random_hermitian(dim: int, rng) -> np.ndarray:
    if isinstance(rng, (int, np.integer)):
        rng = generator(rng)
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (a + a.conj().T) / 2


def inner(a: StateVector, b: StateVector) -> complex:
    """Hermitian inner product, conjugate-linear in the first slot."""
    if a.dim != b.dim:
        raise DimMismatch(f"dims {a.dim} and {b.dim}")
    return complex(np.vdot(a.amp, b.amp))


def is_hermitian(mat: np.ndarray, tol: float = HERMITICITY_RTOL) -> bool:
    """True iff max|A - A^dagger| <= tol * max(1, inf-norm of A)."""
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimMismatch(f"matrix must be square, got {mat.shape}")
    scale = max(1.0, np.linalg.norm(mat, np.inf))
    return float(np.abs(mat - mat.conj().T).max()) <= tol * scale


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """AB - BA."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimMismatch(f"shapes {a.shape} and {b.shape}")
    return a @ b - b @ a


def _group_indices(eigenvalues: np.ndarray, tol: float) -> tuple:
    """Chain ascending eigenvalues into clusters with gaps <= tol."""
    groups = []
    start = 0
    for i in range(1, len(eigenvalues)):
        if eigenvalues[i] - eigenvalues[i - 1] > tol:
            groups.append(tuple(range(start, i)))
            start = i
    groups.append(tuple(range(start, len(eigenvalues))))
    return tuple(groups)


def spectral_decompose(
    a: Observable, degeneracy_tol: float | None = None
) -> SpectralDecomposition:
    """Eigensystem of a Hermitian observable with degeneracy grouping.

    The result is cached on the observable for the default tolerance.
    """
    if degeneracy_tol is None and a._spectral:
        return a._spectral[0]
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(a.mat)
    except np.linalg.LinAlgError as exc:
        raise EigensolveFailure(str(exc)) from exc
    if degeneracy_tol is None:
        spread = float(eigenvalues[-1] - eigenvalues[0])
        tol = max(DEGENERACY_RTOL * spread, DEGENERACY_FLOOR)
    else:
        tol = degeneracy_tol
    eigenvalues.setflags(write=False)
    eigenvectors.setflags(write=False)
    sd = SpectralDecomposition(
        eigenvalues, eigenvectors, _group_indices(eigenvalues, tol), tol
    )
    if degeneracy_tol is None:
        a._spectral.append(sd)
    return sd


def simultaneous_diagonalize(
    a: Observable, b: Observable, commute_tol: float | None = None
) -> np.ndarray:
    """Orthonormal basis diagonalizing two commuting observables.

    Decomposes A, then diagonalizes B restricted to each degenerate
    eigenspace of A.  Columns of the returned unitary are eigenvectors of
    both operators.
    """
    if a.dim != b.dim:
        raise DimMismatch(f"dims {a.dim} and {b.dim}")
    if commute_tol is None:
        commute_tol = 1e-9 * np.linalg.norm(a.mat) * np.linalg.norm(b.mat)
    resid = np.linalg.norm(commutator(a.mat, b.mat))
    if resid > commute_tol:
        raise DoNotCommute(f"commutator norm {resid:.3e} exceeds {commute_tol:.3e}")
    sd = spectral_decompose(a)
    basis = np.array(sd.eigenvectors)
    for grp in sd.groups:
        if len(grp) == 1:
            continue
        cols = basis[:, list(grp)]
        block = cols.conj().T @ b.mat @ cols
        block = (block + block.conj().T) / 2
        _, w = np.linalg.eigh(block)
        basis[:, list(grp)] = cols @ w
    return basis


def expectation(psi: StateVector, a: Observable) -> float:
    """Mean value (psi, A psi); the rounding-level imaginary part is dropped."""
    if psi.dim != a.dim:
        raise DimMismatch(f"dims {psi.dim} and {a.dim}")
    val = complex(np.vdot(psi.amp, a.mat @ psi.amp))
    if abs(val.imag) > 1e-10 * max(1.0, abs(val.real)):
        raise NotHermitian(f"expectation has imaginary part {val.imag:.3e}")
    return val.real


def uncertainty(psi: StateVector, a: Observable) -> float:
    """Standard deviation sqrt(<A^2> - <A>^2), clamped at 0 against rounding."""
    if psi.dim != a.dim:
        raise DimMismatch(f"dims {psi.dim} and {a.dim}")
    apsi = a.mat @ psi.amp
    mean_sq = float(np.vdot(apsi, apsi).real)
    mean = float(np.vdot(psi.amp, apsi).real)
    var = mean_sq - mean**2
    return float(np.sqrt(max(var, 0.0)))


def measure_probabilities(psi: StateVector, a: Observable) -> list[MeasurementRecord]:
    """Born branches of measuring A on psi, one per degenerate group."""
    if psi.dim != a.dim:
        raise DimMismatch(f"dims {psi.dim} and {a.dim}")
    sd = spectral_decompose(a)
    records = []
    for grp in sd.groups:
        cols = sd.eigenvectors[:, list(grp)]
        proj = cols @ (cols.conj().T @ psi.amp)
        prob = float(np.vdot(proj, proj).real)
        outcome = float(np.mean(sd.eigenvalues[list(grp)]))
        post = make_state(proj) if prob >= NULL_PROBABILITY else None
        records.append(MeasurementRecord(outcome, prob, post))
    return records


def sample_measurement(psi: StateVector, a: Observable, seed: int) -> MeasurementRecord:
    """Draw one Born branch with a seeded deterministic stream."""
    records = measure_probabilities(psi, a)
    u = generator(seed).random()
    acc = 0.0
    for rec in records:
        acc += rec.probability
        if u < acc and rec.post_state is not None:
            return rec
    # u fell into rounding slack past the last positive branch
    return max(records, key=lambda r: r.probability)


def sample_outcomes(psi: StateVector, a: Observable, n: int, seed: int) -> np.ndarray:
    """Counts per Born branch for n draws from one seeded stream."""
    records = measure_probabilities(psi, a)
    probs = np.array([r.probability for r in records])
    edges = np.cumsum(probs)
    edges[-1] = max(edges[-1], 1.0)
    u = generator(seed).random(n)
    idx = np.searchsorted(edges, u, side="right")
    return np.bincount(idx, minlength=len(records))


def tensor_state(a: StateVector, b: StateVector) -> StateVector:
    """Product state; component (i, j) sits at index i*dim(b) + j."""
    return make_state(np.kron(a.amp, b.amp))


def tensor_op(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, matching the row-major state convention."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def evolve_isolated(
    h: Observable, psi0: StateVector, t: float, hbar: float = 1.0
) -> StateVector:
    """Evolve psi0 for time t under a time-independent Hamiltonian.

    Spectral form: each energy component picks up the phase e^{-i E t / hbar}.
    """
    if psi0.dim != h.dim:
        raise DimMismatch(f"dims {psi0.dim} and {h.dim}")
    sd = spectral_decompose(h)
    coeffs = sd.eigenvectors.conj().T @ psi0.amp
    coeffs = coeffs * np.exp(-1j * sd.eigenvalues * t / hbar)
    return make_state(sd.eigenvectors @ coeffs)
