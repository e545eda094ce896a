"""Time the jit kernels against their plain-numpy twins.

Runs each kernel on a fixed workload under both implementations,
checks bit equality of the outputs, and prints a small table.  Select
the package-wide default with ORTHOSUM_BACKEND={numba,numpy,auto}.

Usage: python3 benchmarks/bench_backends.py [repeats]
"""

import sys
import time

import numpy as np

from orthosum import _kernels


def _workload_in_core(rng, n):
    q = 64
    ps = rng.integers(1, 2 * q, size=n).astype(np.int64) | 1
    qs = np.full(n, q, dtype=np.int64)
    kpar = np.repeat(np.array([[2, 2], [2, 2]], dtype=np.int64)[None, :, :], n, axis=0)
    minks = np.full(n, 2, dtype=np.int64)
    return (ps, qs, kpar, minks)


def _workload_pants_step(rng, n):
    mats = rng.normal(size=(n, 4))
    mats[:, 0] += 3.0
    mats[:, 3] += 3.0
    lasts = rng.integers(0, 4, size=n).astype(np.int64)
    c1, s1 = np.cosh(1.0), np.sinh(1.0)
    return (mats, lasts, np.int64(1), c1, s1, s1, c1, 1.2, 1e6)


def _workload_axes(rng, n):
    g = [rng.normal(size=n) for _ in range(4)]
    g[0] += 3.0
    g[3] += 3.0
    scal = rng.normal(size=8)
    return (*g, *[float(v) for v in scal])


def _workload_neumaier(rng, n):
    return (rng.normal(size=n) * 10.0 ** rng.integers(-8, 8, size=n),)


WORKLOADS = {
    "in_core_scan": _workload_in_core,
    "pants_step": _workload_pants_step,
    "axes_cross_cosh": _workload_axes,
    "neumaier": _workload_neumaier,
}


def _as_tuple(x):
    return x if isinstance(x, tuple) else (x,)


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 20
    n = 200_000
    rng = np.random.default_rng(12345)
    numba_impl = _kernels.implementation("numba")
    numpy_impl = _kernels.implementation("numpy")
    print("kernel               numba      numpy      ratio  bit-equal")
    for name, make in WORKLOADS.items():
        args = make(rng, n)
        fn_nb = numba_impl[name]
        fn_np = numpy_impl[name]
        out_nb = fn_nb(*args)  # first call pays compilation
        out_np = fn_np(*args)
        equal = all(
            np.array_equal(a, b, equal_nan=True)
            for a, b in zip(_as_tuple(out_nb), _as_tuple(out_np))
        )
        t0 = time.perf_counter()
        for _ in range(repeats):
            fn_nb(*args)
        t_nb = (time.perf_counter() - t0) / repeats
        t0 = time.perf_counter()
        for _ in range(repeats):
            fn_np(*args)
        t_np = (time.perf_counter() - t0) / repeats
        print(
            "%-20s %8.2fms %8.2fms %6.1fx  %s"
            % (name, t_nb * 1e3, t_np * 1e3, t_np / t_nb, equal)
        )
        if not equal:
            raise SystemExit("backend outputs differ for %s" % name)


if __name__ == "__main__":
    main()
