"""Compare the numba and pure-numpy kernel backends.

Run with ``python3 benchmarks/bench_backends.py``. For each workload the
script reports the median wall time of 5 runs (after one warm-up run that
also triggers compilation) and the largest relative difference between the
two backends' results.
"""

import statistics
import sys
import time

import numpy as np

from mfrwt import _backend
from mfrwt.frft import FracOrder, frft_direct
from mfrwt.grid import make_grid, make_scale_grid
from mfrwt.signals import hermite1, sample
from mfrwt.wavelet import default_translation_grid, mfrwt_direct, reconstruct

REPEATS = 5


def median_time(fn):
    out = fn()
    times = []
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def workloads():
    order1 = FracOrder((2 * np.pi / 5,), 1.2)
    g1 = make_grid(1, 16, 256)
    f1 = sample(hermite1(1), g1)
    sg = make_scale_grid(1, 1 / 8, 8, 16, True)
    tg = default_translation_grid(g1, sg, hermite1(1), f1)
    W = mfrwt_direct(f1, hermite1(1), sg, tg, order1)

    order2 = FracOrder((0.9, 1.7), 1.0)
    g2 = make_grid(2, 6, 48)
    f2 = sample(hermite1(2), g2)
    return [
        ("frft_direct points N=2 M=48", lambda: frft_direct(f2, order2, method="points").values),
        ("mfrwt_direct N=1 M=256 32 scales", lambda: mfrwt_direct(f1, hermite1(1), sg, tg, order1).values),
        ("reconstruct N=1 M=256 32 scales", lambda: reconstruct(W, admissibility=8.616860637126457, grid=g1).values),
    ]


def main():
    if not _backend.NUMBA_AVAILABLE:
        print("numba is not installed; only the numpy backend can run", file=sys.stderr)
        return 1
    print(f"{'workload':36s} {'numba [s]':>11s} {'numpy [s]':>11s} {'speedup':>8s} {'max rel diff':>13s}")
    for name, fn in workloads():
        _backend.set_backend("numba")
        t_nb, r_nb = median_time(fn)
        _backend.set_backend("numpy")
        t_np, r_np = median_time(fn)
        _backend.set_backend("auto")
        diff = np.max(np.abs(r_nb - r_np)) / max(np.max(np.abs(r_np)), 1e-300)
        print(f"{name:36s} {t_nb:11.4f} {t_np:11.4f} {t_np / t_nb:8.1f} {diff:13.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
