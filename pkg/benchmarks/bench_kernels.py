"""Compare the numba kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends are timed in the same process; the numba entries are
compiled before timing starts.
"""

import argparse
import timeit

import numpy as np

from fuzzyre import _kernels
from fuzzyre._kernels import GODEL, LUKASIEWICZ, PRODUCT

OPS = {"godel": GODEL, "product": PRODUCT, "lukasiewicz": LUKASIEWICZ}


def cases(rng):
    for n in (8, 32, 128):
        a = np.where(rng.random((n, n)) < 0.3, rng.random((n, n)), 0.0)
        b = np.where(rng.random((n, n)) < 0.3, rng.random((n, n)), 0.0)
        yield f"compose n={n}", "compose", (a, b)
    for n, k, m in ((6, 2, 8), (10, 3, 6)):
        delta = np.where(rng.random((k, n, n)) < 0.3, rng.random((k, n, n)), 0.0)
        sigma, tau = np.eye(n)[0], rng.random(n)
        yield f"word_table n={n} k={k} len<={m}", "word_table", (delta, sigma, tau, m)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _kernels.NUMBA is None:
        ap.error("numba is unavailable or disabled; nothing to compare")
    _kernels.warmup()
    rng = np.random.default_rng(0)
    print(f"{'case':32} {'op':12} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for label, kernel, payload in cases(rng):
        for name, op in OPS.items():
            args_ = (*payload, op)
            ref = _kernels.NUMPY[kernel](*args_)
            got = _kernels.NUMBA[kernel](*args_)
            assert np.allclose(ref, got, atol=1e-12), (label, name)
            t = {}
            for backend in ("NUMPY", "NUMBA"):
                fn = getattr(_kernels, backend)[kernel]
                number = 20
                t[backend] = min(timeit.repeat(lambda: fn(*args_), number=number, repeat=args.repeat)) / number
            print(
                f"{label:32} {name:12} {t['NUMPY'] * 1e3:10.3f} {t['NUMBA'] * 1e3:10.3f}"
                f" {t['NUMPY'] / t['NUMBA']:8.1f}x"
            )


if __name__ == "__main__":
    main()
