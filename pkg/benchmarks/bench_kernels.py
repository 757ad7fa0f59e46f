"""Benchmark the numba kernels against the pure-numpy fallbacks.

Both implementations live in partialpi._kernels, so this script times them
side by side on the workloads that dominate real runs: subgroup closures,
normalizer scans, conjugacy classes, product sets and module spinning.

Run:  python benchmarks/bench_kernels.py
(When PARTIALPI_NUMBA=0 the numba column is skipped.)
"""

import time

import numpy as np

from partialpi import _kernels
from partialpi.corpus import builtin_corpus
from partialpi.perms import _DTYPE


def timed(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    corpus = builtin_corpus()
    a5 = corpus.group("A5")
    g294 = corpus.group("F7^2:S3")
    t60, i60 = a5.table, a5.inverses
    t294, i294 = g294.table, g294.inverses
    pair_seeds = [np.array([i, j], dtype=_DTYPE)
                  for i in range(1, 30, 3) for j in range(2, 60, 7)]
    subs60 = [np.flatnonzero(_kernels.NUMPY_IMPL["closure_idx"](t60, s)).astype(_DTYPE)
              for s in pair_seeds[:25]]
    sub294 = np.flatnonzero(
        _kernels.NUMPY_IMPL["closure_idx"](t294, np.array([1, 5], dtype=_DTYPE))
    ).astype(_DTYPE)
    r = np.array([[0, 6], [1, 6]], dtype=np.int64)
    s = np.array([[0, 1], [1, 0]], dtype=np.int64)
    mats = np.stack([np.kron(np.eye(2, dtype=np.int64), r),
                     np.kron(np.eye(2, dtype=np.int64), s)])
    weights = 7 ** np.arange(3, -1, -1, dtype=np.int64)

    def closure_storm(impl):
        for seed in pair_seeds:
            impl["closure_idx"](t60, seed)

    def normalizer_storm(impl):
        for sub in subs60:
            impl["normalizer_mask"](t60, i60, sub)
        impl["normalizer_mask"](t294, i294, sub294)

    def centralizer_storm(impl):
        for sub in subs60:
            impl["centralizer_mask"](t60, sub)

    def classes(impl):
        impl["class_min_rep"](t60, i60)
        impl["class_min_rep"](t294, i294)

    def products(impl):
        for sub in subs60:
            impl["product_mask"](t60, sub, subs60[0])

    def spins(impl):
        for code in range(1, 7 ** 4, 9):
            v = (code // weights) % 7
            impl["spin_basis"](mats, v.astype(np.int64), 7)

    return [("closure x61 (|G|=60)", closure_storm),
            ("normalizer x26", normalizer_storm),
            ("centralizer x25", centralizer_storm),
            ("class reps (60+294)", classes),
            ("product sets x25", products),
            ("spin_basis x267 (F_7^4)", spins)]


def main():
    impls = [("numpy", _kernels.NUMPY_IMPL)]
    if _kernels.NUMBA_IMPL is not None:
        impls.append(("numba", _kernels.NUMBA_IMPL))
        for name, fn in workloads():  # warm the JIT outside the timings
            fn(_kernels.NUMBA_IMPL)
            break
    rows = []
    for name, fn in workloads():
        times = {}
        for backend, impl in impls:
            if backend == "numba":
                fn(impl)  # warmup for this kernel
            times[backend] = timed(lambda: fn(impl))
        rows.append((name, times))
    width = max(len(n) for n, _ in rows)
    header = f"{'workload':<{width}}  " + "".join(f"{b:>12}" for b, _ in impls)
    if len(impls) == 2:
        header += f"{'speedup':>10}"
    print(f"active backend: {_kernels.BACKEND}")
    print(header)
    for name, times in rows:
        line = f"{name:<{width}}  " + "".join(
            f"{times[b] * 1000:>10.2f}ms" for b, _ in impls)
        if len(impls) == 2 and times["numba"] > 0:
            line += f"{times['numpy'] / times['numba']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
