"""Compare the compiled backend against the pure-numpy fallback.

Runs the four hot primitives on identical inputs and prints a table of
per-call times and the speedup.  Usage:

    python benchmarks/bench_backends.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from debranges import EPS_DIAG
from debranges import _fallback

try:
    from debranges import _native
except ImportError:
    _native = None


def _inputs():
    rng = np.random.default_rng(7)
    a = 2.0
    scale = 1.0 + 0.3j
    roots = np.ascontiguousarray(rng.uniform(-3, 3, 6) - 1j * rng.uniform(0.1, 2, 6))
    z = np.ascontiguousarray(rng.uniform(-50, 50, 20000) + 1j * rng.uniform(-1, 1, 20000))
    x = np.ascontiguousarray(rng.uniform(-50, 50, 20000))
    w = np.ascontiguousarray(rng.uniform(-20, 20, 400) + 0j)
    centers = np.ascontiguousarray(rng.uniform(-20, 20, 800) + 0j)
    coeffs = np.ascontiguousarray(rng.standard_normal(800) + 1j * rng.standard_normal(800))
    return a, scale, roots, z, x, w, centers, coeffs


def _time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    opts = parser.parse_args()

    a, scale, roots, z, x, w, centers, coeffs = _inputs()
    cases = [
        ("hb_eval (20k pts)", "hb_eval", (a, scale, roots, z)),
        ("hb_eval_derivative (20k pts)", "hb_eval_derivative", (a, scale, roots, z)),
        ("phase_eval (20k pts)", "phase_eval", (a, float(np.angle(scale)), roots, x)),
        ("kernel_matrix (400x20k)", "kernel_matrix",
         (a, scale, roots, w, z[:20000], EPS_DIAG)),
        ("kernel_sum (800 centers, 20k pts)", "kernel_sum",
         (a, scale, roots, centers, coeffs, z, EPS_DIAG)),
    ]

    print(f"{'primitive':36} {'python':>10} {'native':>10} {'speedup':>8}")
    for label, name, args in cases:
        t_py = _time(getattr(_fallback, name), args, opts.repeat)
        if _native is None:
            print(f"{label:36} {t_py * 1e3:9.2f}ms {'n/a':>10} {'n/a':>8}")
            continue
        t_nat = _time(getattr(_native, name), args, opts.repeat)
        print(
            f"{label:36} {t_py * 1e3:9.2f}ms {t_nat * 1e3:9.2f}ms "
            f"{t_py / t_nat:7.1f}x"
        )
    if _native is None:
        print("\ncompiled backend not built; showing fallback only")


if __name__ == "__main__":
    main()
