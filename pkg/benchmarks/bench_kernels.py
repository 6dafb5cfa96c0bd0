"""Benchmark the compiled kernel core against the pure-Python fallback.

The notch strip integrals are the hot loop of parametric sweeps: every grid
point re-evaluates four adaptive quadratures per distinct hinge geometry.
This script times that workload for both backends and a small end-to-end
sweep.

Run:  python benchmarks/bench_kernels.py [-n GEOMETRIES]
"""

import argparse
import time

import numpy as np

from flexmech.kernels import available_backends


def bench_kernels(impl, geometries):
    start = time.perf_counter()
    acc = 0.0
    for r, t, w in geometries:
        k1, k3, k3x, kt = impl.notch_kernels(r, t, w)
        acc += k1 + k3 + k3x + kt
    return time.perf_counter() - start, acc


def bench_sweep(n_points):
    """End-to-end sweep timing on the bundled mechanism (selected backend)."""
    from flexmech.analysis import SweepObjective, SweepSpec, run_sweep
    from flexmech.elements import _notch_kernels_cached
    from flexmech.fixtures import load_small_rcc

    template = load_small_rcc().mechanism
    spec = SweepSpec({"t": (1.5, 4.0, n_points)},
                     SweepObjective(rcc_height_target=28.6))
    _notch_kernels_cached.cache_clear()
    start = time.perf_counter()
    run_sweep(spec, template)
    return time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-n", type=int, default=300, help="distinct hinge geometries")
    args = parser.parse_args()

    rng = np.random.default_rng(1)
    geometries = list(zip(rng.uniform(0.5, 3.0, args.n),
                          rng.uniform(0.8, 5.0, args.n),
                          rng.uniform(2.0, 9.0, args.n)))

    backends = available_backends()
    print(f"notch kernel workload: {args.n} geometries x 4 adaptive integrals")
    times = {}
    checksums = {}
    for name, impl in backends.items():
        bench_kernels(impl, geometries[:10])  # warm up
        times[name], checksums[name] = bench_kernels(impl, geometries)
        rate = args.n / times[name]
        print(f"  {name:13s} {times[name] * 1e3:9.1f} ms   {rate:8.1f} geometries/s")
    if len(times) == 2:
        speedup = times["pure-python"] / times["compiled"]
        print(f"  speedup: {speedup:.1f}x")
        mismatch = abs(checksums["pure-python"] - checksums["compiled"])
        print(f"  checksum agreement: {mismatch:.3e}")

    t_sweep = bench_sweep(64)
    print(f"end-to-end 64-point sweep (selected backend): {t_sweep * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
