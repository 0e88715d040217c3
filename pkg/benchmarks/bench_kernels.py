"""Benchmark: compiled kernels vs the NumPy fallback on split-step workloads.

Times the per-step elementwise work (phase application, absorber multiply,
diagnostic moments, screen-flux accumulation) for the 1-D and 2-D grids the
experiments actually use, plus a full 1-D split-step loop through each
backend.  FFTs dominate the 2-D runs, so the elementwise speedup matters
most for small 1-D grids with frequent diagnostics.

Usage: python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from qmlab import _kernels_py

try:
    from qmlab import _kernels
except ImportError:
    _kernels = None

from qmlab.rng import generator


def timeit(fn, repeats=200):
    fn()  # warm up
    start = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - start) / repeats


def bench_elementwise(impl, n):
    rng = generator(1)
    amp = (rng.standard_normal(n) + 1j * rng.standard_normal(n)).copy()
    phase = np.exp(1j * rng.standard_normal(n))
    factor = rng.uniform(0.5, 1.0, n)
    x = np.linspace(-1.0, 1.0, n)
    out = np.zeros(n)
    return {
        "apply_phase": timeit(lambda: impl.apply_phase(amp, phase)),
        "apply_real": timeit(lambda: impl.apply_real(amp, factor)),
        "weighted_moments": timeit(lambda: impl.weighted_moments(amp, x)),
        "flux_line": timeit(lambda: impl.flux_line(amp, amp, amp, out, 0.1)),
    }


def bench_split_step_loop(impl, n=512, steps=400):
    """One full 1-D split-step propagation with per-step diagnostics."""
    rng = generator(2)
    amp = (rng.standard_normal(n) + 1j * rng.standard_normal(n)).copy()
    amp /= np.linalg.norm(amp)
    half_v = np.exp(-0.5j * rng.uniform(0, 1e-3, n))
    kinetic = np.exp(-1j * rng.uniform(0, 1e-3, n))
    x = np.linspace(-1.0, 1.0, n)

    def run():
        a = amp.copy()
        for _ in range(steps):
            impl.apply_phase(a, half_v)
            spec = np.fft.fft(a)
            impl.apply_phase(spec, kinetic)
            a = np.fft.ifft(spec)
            impl.apply_phase(a, half_v)
            impl.weighted_moments(a, x)
        return a

    return timeit(run, repeats=5)


def main():
    impls = [("python", _kernels_py)]
    if _kernels is not None:
        impls.append(("cython", _kernels))
    else:
        print("compiled extension not built; benchmarking the fallback only")

    for n in (512, 512 * 256):
        print(f"\nelementwise kernels, n = {n}")
        results = {name: bench_elementwise(impl, n) for name, impl in impls}
        for op in ("apply_phase", "apply_real", "weighted_moments", "flux_line"):
            line = f"  {op:<18}"
            for name, _ in impls:
                line += f" {name}: {results[name][op] * 1e6:9.2f} us"
            if len(impls) == 2:
                speedup = results["python"][op] / results["cython"][op]
                line += f"   speedup x{speedup:.2f}"
            print(line)

    print("\nfull 1-D split-step loop (n=512, 400 steps, diagnostics each step)")
    for name, impl in impls:
        t = bench_split_step_loop(impl)
        print(f"  {name}: {t * 1e3:.1f} ms per run")


if __name__ == "__main__":
    main()
