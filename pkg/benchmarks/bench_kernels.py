"""Benchmark the compiled kernels against the numpy fallback.

Usage:  python benchmarks/bench_kernels.py [n_times]

Workload: the quasi-periodic parameter set (|w|^2 = 30, lambda = 50,
g = 0.01, Delta = 0.01) evolved over a dense scaled-time grid, plus the
fused observable reduction over the same grid.
"""

import sys
import time

import numpy as np

from pdjc import CatStateParams, wcs_build
from pdjc import _kernels_py
from pdjc.dynamics import block_coefficients
from pdjc.spectrum import ModelParams

try:
    from pdjc import _kernels as _kernels_compiled
except ImportError:
    _kernels_compiled = None


def best_of(func, repeats=5):
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        func()
        samples.append(time.perf_counter() - start)
    return min(samples)


def main() -> int:
    n_times = int(sys.argv[1]) if len(sys.argv) > 1 else 20001
    lam, mod_sq, g, delta = 50.0, 30.0, 0.01, 0.01
    params = ModelParams(omega=1.0, omega0=1.0 - delta, g=g, lam=lam)
    field = wcs_build(CatStateParams(mod_sq), lam)
    cp0 = field.amplitudes
    cm0 = np.zeros_like(cp0)
    omega_r, dfrac, kappa = block_coefficients(params, cp0.size)
    times = np.linspace(0.0, 200.0, n_times) / g

    backends = [("python", _kernels_py)]
    if _kernels_compiled is not None:
        backends.append(("compiled", _kernels_compiled))
    else:
        print("compiled kernels not available; timing the fallback only")

    workloads = {
        "evolve_blocks": lambda k: k.evolve_blocks(cp0, cm0, omega_r, dfrac, kappa, delta, times),
        "accumulate_series": lambda k: k.accumulate_series(
            cp0, cm0, omega_r, dfrac, kappa, delta, lam, times
        ),
    }

    print(f"blocks: {cp0.size}, time points: {n_times}")
    print(f"{'kernel':<20} {'backend':<10} {'best [ms]':>10}")
    results = {}
    for name, work in workloads.items():
        for backend_name, module in backends:
            elapsed = best_of(lambda: work(module))
            results[(name, backend_name)] = elapsed
            print(f"{name:<20} {backend_name:<10} {1e3 * elapsed:10.2f}")
    if _kernels_compiled is not None:
        for name in workloads:
            speedup = results[(name, "python")] / results[(name, "compiled")]
            print(f"{name}: compiled is {speedup:.1f}x the numpy fallback")
    return 0


if __name__ == "__main__":
    sys.exit(main())
