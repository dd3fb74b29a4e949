"""Compare the compiled and pure-Python DPLL kernels on random 3-SAT.

    python3 benchmarks/bench_dpll.py [--vars 20 40 60] [--ratio 4.26] [--instances 30]

Instances sit near the satisfiability threshold, where DPLL works hardest.
Each row reports total solve time per backend over the same instances and
checks that both backends return the same assignment.
"""

import argparse
import random
import time

from propindep import kernels


def random_3sat(rng, n, m):
    return [[rng.choice((1, -1)) * v for v in rng.sample(range(1, n + 1), 3)] for _ in range(m)]


def time_backend(backend, n, instances):
    answers = []
    t0 = time.perf_counter()
    for cls in instances:
        answers.append(kernels.solve(n, cls, backend=backend))
    return time.perf_counter() - t0, answers


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--vars", type=int, nargs="+", default=[20, 40, 60])
    ap.add_argument("--ratio", type=float, default=4.26, help="clauses per variable")
    ap.add_argument("--instances", type=int, default=30)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args(argv)

    backends = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])
    if len(backends) == 1:
        print("compiled kernel not available; timing the pure-Python kernel only")
    print(f"{'vars':>5} {'clauses':>8} {'sat':>5} " + " ".join(f"{b + ' (s)':>12}" for b in backends) + "  speedup")
    for n in args.vars:
        rng = random.Random(f"{args.seed}-{n}")
        m = round(args.ratio * n)
        instances = [random_3sat(rng, n, m) for _ in range(args.instances)]
        times = {}
        answers = {}
        for b in backends:
            times[b], answers[b] = time_backend(b, n, instances)
        if len(backends) == 2 and answers["python"] != answers["cython"]:
            raise SystemExit(f"backends disagree at n={n}")
        n_sat = sum(a is not None for a in answers["python"])
        speed = f"{times['python'] / times['cython']:7.1f}x" if "cython" in times else "      -"
        cols = " ".join(f"{times[b]:12.3f}" for b in backends)
        print(f"{n:>5} {m:>8} {n_sat:>5} {cols}  {speed}")


if __name__ == "__main__":
    main()
