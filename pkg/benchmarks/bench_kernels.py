"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py --repeat 5
"""
import argparse
import time

import numpy as np

from spectre._backend import available_backends


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def sweep_case(n, m, rng):
    iu, ju = np.triu_indices(n, k=1)
    idx = np.sort(rng.choice(len(iu), size=min(m, len(iu)), replace=False))
    u, w = iu[idx].astype(np.int64), ju[idx].astype(np.int64)
    vals = np.sort(rng.integers(1, 50, size=len(u)).astype(float))
    rank = rng.permutation(n).astype(np.int64)
    return lambda k: k.sweep(n, u, w, vals, rank, True)


def matching_case(k, rng):
    allowed = rng.random((k, k)) < 0.3
    return lambda mod: mod.max_matching(allowed)


def eigen_case(n, rng):
    a = rng.standard_normal((n, n))
    a = a + a.T

    def run(mod):
        d, e = mod.householder_tridiagonal(a.copy())
        return mod.tridiagonal_eigenvalues(d, e, 60)

    return run


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    backends = available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the Python fallback is available")
    cases = [
        ("sweep n=2000 m=20000", sweep_case(2000, 20000, rng)),
        ("matching k=200", matching_case(200, rng)),
        ("eigen n=40", eigen_case(40, rng)),
        ("eigen n=150", eigen_case(150, rng)),
    ]
    print(f"{'kernel':<24}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for label, fn in cases:
        times = {name: best_of(lambda m=mod: fn(m), args.repeat) for name, mod in backends.items()}
        row = f"{label:<24}" + "".join(f"{1000 * t:>10.2f}ms" for t in times.values())
        if "cython" in times:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
