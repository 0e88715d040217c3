"""Hot-loop kernels: compiled extension when available, NumPy otherwise.

`BACKEND` reports which implementation was selected at import time.
`benchmarks/bench_kernels.py` compares the two on the split-step workload.
"""

try:
    from qmlab import _kernels as _impl

    BACKEND = "cython"
except ImportError:  # extension not built
    from qmlab import _kernels_py as _impl

    BACKEND = "python"

apply_phase = _impl.apply_phase
apply_real = _impl.apply_real
density = _impl.density
weighted_moments = _impl.weighted_moments
flux_line = _impl.flux_line
