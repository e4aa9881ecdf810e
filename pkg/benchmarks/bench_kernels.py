"""Time the numpy and numba kernel paths side by side.

    python benchmarks/bench_kernels.py [--max-n 20] [--repeat 5]

Both paths are imported directly, so the CONDSPACE_DISABLE_NUMBA flag does
not matter here. Numba kernels are compiled once before timing.
"""

import argparse
import timeit

import numpy as np

from condspace import kernels


def _cases(n, rng):
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    amps /= np.linalg.norm(amps)
    u = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    tbit, cbit = 1 << (n - 1), 1 if n > 1 else 0
    batch = rng.standard_normal((64, 1 << min(n, 12))) + 0j
    mask = (1 << n) - 1
    return {
        "apply_2x2 (CU)": (
            lambda: kernels.apply_2x2_numpy(amps, tbit, cbit, cbit, u),
            lambda: kernels.apply_2x2_numba(amps, tbit, cbit, cbit, u),
        ),
        "wht": (lambda: kernels.wht_numpy(amps), lambda: kernels.wht_numba(amps)),
        "wht x64 rows": (lambda: kernels.wht_numpy(batch), lambda: kernels.wht_numba(batch)),
        "parity_table": (
            lambda: kernels.parity_table_numpy(n, mask),
            lambda: kernels.parity_table_numba(n, mask),
        ),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    for fn_np, fn_nb in _cases(4, rng).values():
        fn_nb()

    print(f"{'kernel':<16}{'n':>4}{'numpy [ms]':>14}{'numba [ms]':>14}{'speedup':>10}")
    for n in range(8, args.max_n + 1, 4):
        for name, (fn_np, fn_nb) in _cases(n, rng).items():
            number = max(1, 2 ** max(0, 16 - n))
            t_np = min(timeit.repeat(fn_np, number=number, repeat=args.repeat)) / number
            t_nb = min(timeit.repeat(fn_nb, number=number, repeat=args.repeat)) / number
            print(f"{name:<16}{n:>4}{t_np * 1e3:>14.3f}{t_nb * 1e3:>14.3f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
