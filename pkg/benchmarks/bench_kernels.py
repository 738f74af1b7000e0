"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--length 10] [--repeat 5]
"""
import argparse
import time

import numpy as np

from comppath.groups import _kernels as K


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--length", type=int, default=10, help="word length (4**length words)")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    codes = K.enumerate_words_np(args.length, 2)
    print(f"{codes.shape[0]} words of length {args.length}; numba available: {K.HAVE_NUMBA}")
    cases = [
        ("enumerate", lambda: K.enumerate_words_np(args.length, 2),
         lambda: K._enumerate_words_nb(args.length, 2)),
        ("klein_eval", lambda: K.klein_eval_np(codes), lambda: K._klein_eval_nb(codes)),
        ("exponent_sums", lambda: K.exponent_sums_np(codes, 2),
         lambda: K._exponent_sums_nb(codes, 2)),
    ]
    for name, np_fn, nb_fn in cases:
        t_np = best_of(np_fn, args.repeat)
        if not K.HAVE_NUMBA:
            print(f"{name:14s} numpy {t_np * 1e3:9.2f} ms")
            continue
        nb_fn()  # compile
        assert np.array_equal(np_fn(), nb_fn())
        t_nb = best_of(nb_fn, args.repeat)
        print(f"{name:14s} numpy {t_np * 1e3:9.2f} ms   numba {t_nb * 1e3:9.2f} ms   "
              f"x{t_np / t_nb:.1f}")


if __name__ == "__main__":
    main()
