"""Compare the numba and numpy kernel backends on representative workloads.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each kernel runs once untimed (numba compilation, cache warm-up), then
``--repeat`` times; the best wall time is reported. Results of the two
backends are compared and a mismatch aborts the run.
"""

from __future__ import annotations

import argparse
import math
import time
from fractions import Fraction

import numpy as np

from ziglab import _kernels
from ziglab.boxes import _good_arrays, unit_grid
from ziglab.dynamics import _bound_tables, _canonical_array


def _sweep_args(n):
    V = np.asarray(_canonical_array(n))
    num, den = _kernels.IMPLEMENTATIONS["numpy"]["lift_rotations"](V, n)
    rots = [Fraction(int(a), int(b)) for a, b in zip(num, den)]
    classes = sorted(set(rots))
    index = {r: k for k, r in enumerate(classes)}
    cls = np.array([index[r] for r in rots], dtype=np.int64)
    return (V, n, cls, *_bound_tables(classes))


def _heights_args(grid_den, box_den):
    _, K, M = _good_arrays(box_den)
    xs = unit_grid(grid_den)
    pts = [(x, y) for x in xs for y in xs]
    arr = lambda vals: np.array(vals, dtype=np.int64)
    return (arr([p[0].numerator for p in pts]), arr([p[0].denominator for p in pts]),
            arr([p[1].numerator for p in pts]), arr([p[1].denominator for p in pts]), K, M)


def _rot_scan_args():
    b, d = 1021, 1019  # coprime, so L is close to 10**6
    return (1000, b, 997, d, math.lcm(b, d))


def workloads(quick: bool):
    n_sweep = 5 if quick else 6
    yield "rot_max_best_q", f"L = {1021 * 1019}", _rot_scan_args()
    yield "lift_rotations", "all lifts n = 7", (np.asarray(_canonical_array(7)), 7)
    yield "sweep_bounds", f"all pairs n = {n_sweep}", _sweep_args(n_sweep)
    V = np.asarray(_canonical_array(6))
    yield "max_composition", "n = 6, 400 x 400", (V[:400], V[-400:], 6)
    yield "box_heights", "grid 12, boxes <= 150", _heights_args(12, 150)
    _, K, M = _good_arrays(20 if quick else 40)
    yield "nested_pairs", f"{len(M)} good boxes", (K, M)


def _best_time(fn, args, repeat):
    best = math.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    return bool(np.array_equal(np.asarray(a), np.asarray(b)))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args(argv)

    backends = sorted(_kernels.IMPLEMENTATIONS)
    header = f"{'kernel':<16} {'workload':<24}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, label, call_args in workloads(args.quick):
        times, outs = {}, {}
        for b in backends:
            fn = _kernels.IMPLEMENTATIONS[b][name]
            fn(*call_args)  # warm-up / compile
            times[b], outs[b] = _best_time(fn, call_args, args.repeat)
        if len(backends) == 2 and not _same(*outs.values()):
            raise SystemExit(f"backends disagree on {name}")
        row = f"{name:<16} {label:<24}" + "".join(f"{times[b] * 1e3:>10.1f}ms" for b in backends)
        if len(backends) == 2:
            row += f"{times['numpy'] / times['numba']:>9.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
