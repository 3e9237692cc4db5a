"""Compare the compiled and pure-Python elimination kernels.

    python3 benchmarks/bench_kernels.py [--sizes 8 16 32] [--repeat 5]

Both backends get the same random integer matrices; results are checked for
equality before timings are reported.
"""

import argparse
import importlib
import random
import sys
import timeit


def load_backends():
    backends = {"python": importlib.import_module("moprs._kernels_py")}
    try:
        backends["compiled"] = importlib.import_module("moprs._kernels")
    except ImportError:
        print("compiled backend not built; timing the Python kernels only", file=sys.stderr)
    return backends


def hankel_like(n, rng):
    # Moment-matrix shaped input: Hankel with growing integer entries.
    seq = [rng.randint(-10**6, 10**6) for _ in range(2 * n)]
    return [[seq[i + j] for j in range(n)] for i in range(n)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 48])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    backends = load_backends()
    rng = random.Random(args.seed)
    print(f"{'size':>5} {'op':>6} " + " ".join(f"{name:>12}" for name in backends) + "  speedup")
    for n in args.sizes:
        mat = hankel_like(n, rng)
        rhs = [rng.randint(-100, 100) for _ in range(n)]
        ops = {
            "det": lambda k: k.bareiss_det([row[:] for row in mat]),
            "solve": lambda k: k.bareiss_solve([row[:] for row in mat], rhs[:]),
            "rank": lambda k: k.bareiss_rank([row[:] for row in mat]),
        }
        for op, call in ops.items():
            results = {name: call(k) for name, k in backends.items()}
            if len(set(map(repr, results.values()))) != 1:
                raise SystemExit(f"backends disagree on {op} at size {n}")
            times = {
                name: min(timeit.repeat(lambda k=k: call(k), number=1, repeat=args.repeat))
                for name, k in backends.items()
            }
            cells = " ".join(f"{times[name] * 1e3:10.2f}ms" for name in backends)
            speed = f"{times['python'] / times['compiled']:6.2f}x" if "compiled" in times else "     -"
            print(f"{n:>5} {op:>6} {cells}  {speed}")


if __name__ == "__main__":
    main()
