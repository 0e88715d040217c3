"""qmlab: a numerical quantum-mechanics workbench.

Finite-dimensional states and projective measurement (`hilbert`), grid
wavefunctions with the hbar-scaled Fourier transform (`gridwave`),
split-step propagation and the two-slit experiment (`dynamics`,
`doubleslit`), angular momentum and spin (`spin`), first-pass relativistic
equations (`relativistic`), and a reproducible experiment-running CLI
(`cli`).
"""

from .errors import QmlabError
from .gridwave import Grid1D, GridWavefunction, gaussian_packet, grid_wavefunction
from .hilbert import (
    MeasurementRecord,
    Observable,
    SpectralDecomposition,
    StateVector,
    evolve_isolated,
    expectation,
    make_state,
    measure_probabilities,
    sample_measurement,
    spectral_decompose,
    tensor_op,
    tensor_state,
    uncertainty,
)
from .spin import SpinSystem, couple_two_spins, larmor_evolve, spin_matrices

__version__ = "0.1.0"

__all__ = [
    "Grid1D",
    "GridWavefunction",
    "MeasurementRecord",
    "Observable",
    "QmlabError",
    "SpectralDecomposition",
    "SpinSystem",
    "StateVector",
    "couple_two_spins",
    "evolve_isolated",
    "expectation",
    "gaussian_packet",
    "grid_wavefunction",
    "larmor_evolve",
    "make_state",
    "measure_probabilities",
    "sample_measurement",
    "spectral_decompose",
    "spin_matrices",
    "tensor_op",
    "tensor_state",
    "uncertainty",
]
