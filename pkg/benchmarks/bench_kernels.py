"""Time the Jacobi eigensolver backends against LAPACK.

    python3 benchmarks/bench_kernels.py [--dims 26 52 102 200] [--repeat 3]

Inputs are random complex Hermitian matrices; 52 and 676 are the pol-oam
and path-oam sizes at 25 steps.
"""

import argparse
import time

import numpy as np

from hyperwalk.kernels import available_backends, jacobi_eigvalsh


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dims", type=int, nargs="+", default=[26, 52, 102, 200])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--python-max-dim", type=int, default=120, help="skip the slow fallback above this size")
    args = parser.parse_args(argv)

    rng = np.random.default_rng(0)
    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'dim':>5} {'compiled_s':>11} {'python_s':>10} {'lapack_s':>10} {'speedup':>8} {'max_err':>9}")
    for n in args.dims:
        a = random_hermitian(rng, n)
        ref = np.linalg.eigvalsh(a)
        t_lapack = best_time(lambda: np.linalg.eigvalsh(a), args.repeat)
        t_c = t_py = float("nan")
        err = 0.0
        if "compiled" in backends:
            t_c = best_time(lambda: jacobi_eigvalsh(a, backend="compiled"), args.repeat)
            err = max(err, float(np.max(np.abs(jacobi_eigvalsh(a, backend="compiled")[0] - ref))))
        if n <= args.python_max_dim:
            t_py = best_time(lambda: jacobi_eigvalsh(a, backend="python"), 1)
            err = max(err, float(np.max(np.abs(jacobi_eigvalsh(a, backend="python")[0] - ref))))
        speedup = t_py / t_c if t_c == t_c and t_py == t_py else float("nan")
        print(f"{n:5d} {t_c:11.4f} {t_py:10.4f} {t_lapack:10.5f} {speedup:8.1f} {err:9.1e}")


if __name__ == "__main__":
    main()
