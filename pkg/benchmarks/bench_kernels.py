"""Time the lifting oracle under each available kernel backend.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

from igusa import kernels
from igusa.oracle import PolyMap, count_table

CASES = [
    ("x^2, p=3, j=20", PolyMap.monomials([(2,)]), 3, 20),
    ("xy, p=3, j=9", PolyMap.monomials([(1, 1)]), 3, 9),
    ("x^2 y^3, p=5, j=5", PolyMap.monomials([(2, 3)]), 5, 5),
    ("(x^2, y^3), p=2, j=14", PolyMap.monomials([(2, 0), (0, 3)]), 2, 14),
    ("xy + x^3 y^3, p=3, j=8", PolyMap(2, (((1, (1, 1)), (1, (3, 3))),)), 3, 8),
]


def bench(f, p, j, repeat):
    best = float("inf")
    counts = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        counts = count_table(f, p, j).counts
        best = min(best, time.perf_counter() - t0)
    return best, counts


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    before = kernels.get_backend()
    print(f"{'case':26s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    try:
        for label, f, p, j in CASES:
            times, results = [], []
            for b in backends:
                kernels.set_backend(b)
                dt, counts = bench(f, p, j, args.repeat)
                times.append(dt)
                results.append(counts)
            assert all(r == results[0] for r in results), f"backends disagree on {label}"
            row = f"{label:26s}" + "".join(f"{t:11.3f}s" for t in times)
            if len(times) > 1:
                row += f"{times[-1] / times[0]:11.1f}x"
            print(row)
    finally:
        kernels.set_backend(before)


if __name__ == "__main__":
    main()
