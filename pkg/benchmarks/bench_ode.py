"""Benchmark: compiled RK4 kernel vs the pure-Python (numpy) fallback.

Run with ``python benchmarks/bench_ode.py``.
"""

import time

import numpy as np

from abnorm import adjoint
from abnorm._ode_python import rk4_trajectory as rk4_python
from abnorm.adjoint import system_matrix

try:
    from abnorm._ode_kernel import rk4_trajectory as rk4_compiled
except ImportError:
    rk4_compiled = None


def bench(fn, a, psi0, dt, n_steps, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(a, psi0, dt, n_steps)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)
    a = system_matrix([1.0, 0.0, -2.0], 0.8)
    psi0 = rng.normal(size=4)
    dt, n_steps, repeats = 1e-3, 5000, 5

    print(f"active kernel: {adjoint.KERNEL}")
    print(f"workload: {n_steps} RK4 steps of a 4x4 system, best of {repeats}")

    t_py = bench(rk4_python, a, psi0, dt, n_steps, repeats)
    print(f"python fallback: {t_py * 1e3:8.2f} ms")

    if rk4_compiled is None:
        print("compiled kernel: not built")
        return

    t_cy = bench(rk4_compiled, a, psi0, dt, n_steps, repeats)
    print(f"compiled kernel: {t_cy * 1e3:8.2f} ms  ({t_py / t_cy:.1f}x faster)")

    out_py = rk4_python(a, psi0, dt, n_steps)
    out_cy = rk4_compiled(a, psi0, dt, n_steps)
    print(f"max |difference|: {np.max(np.abs(out_py - out_cy)):.3e}")


if __name__ == "__main__":
    main()
