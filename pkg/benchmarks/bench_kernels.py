"""Compare the compiled and pure-Python path-enumeration kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Both kernels are run on the same (l, k, emax, width) cases; the outputs
are checked for equality before any timing is reported.
"""
import argparse
import statistics
import sys
import time

import numpy as np

from spectral_paths import _kernels
from spectral_paths.vertex_paths import default_width

CASES = [
    (1, 0, 12),
    (2, 1, 8),
    (3, 1, 6),
    (3, 1, 8),
    (4, 2, 6),
    (2, 1, 16),
    (3, 1, 14),
    (4, 2, 12),
]


def timed(fn, args, repeat):
    samples = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        samples.append(time.perf_counter() - t0)
    return out, statistics.median(samples)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    compiled = _kernels.compiled_enumerate_spin_windows
    if compiled is None:
        print("compiled kernel not built; nothing to compare", file=sys.stderr)
        return 1

    print(f"{'l':>2} {'k':>2} {'emax':>4} {'width':>5} {'paths':>8} "
          f"{'python s':>10} {'cython s':>10} {'speedup':>8}")
    for l, k, emax in CASES:
        width = default_width(l, emax)
        call = (l, k, emax, width, -1)
        (ps, pe), tp = timed(_kernels.python_enumerate_spin_windows, call, args.repeat)
        (cs, ce), tc = timed(compiled, call, args.repeat)
        if not (np.array_equal(ps, cs) and np.array_equal(pe, ce)):
            print(f"kernels disagree at l={l} k={k} emax={emax}", file=sys.stderr)
            return 2
        print(f"{l:>2} {k:>2} {emax:>4} {width:>5} {len(pe):>8} "
              f"{tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
