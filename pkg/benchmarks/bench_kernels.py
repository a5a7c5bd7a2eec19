"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Kernel timings call each backend module directly. The end-to-end timing runs
one superset cell in a subprocess per backend, selected with
HYPERKUBE_PURE_PYTHON.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from hyperkube._kernels import available_backends

END_TO_END = (
    "import time; from hyperkube import ExperimentConfig, SearchKind, run_experiment, BACKEND;"
    "t=time.perf_counter();"
    "run_experiment(ExperimentConfig(r=12, object_count=1000, search_kind=SearchKind.SUPERSET,"
    " workload='aligned', query_count=5));"
    "print(BACKEND, time.perf_counter()-t)"
)


def kernel_cases(mod):
    rng = random.Random(0)
    words = [f"kw{i:04d}".encode() for i in range(10_000)]
    pairs = [(rng.getrandbits(13), rng.getrandbits(13)) for _ in range(10_000)]
    roots = [rng.getrandbits(13) & rng.getrandbits(13) & rng.getrandbits(13) for _ in range(50)]
    return {
        "fnv1a64 x10k": lambda: [mod.fnv1a64(w) for w in words],
        "greedy_path x10k (r=13)": lambda: [mod.greedy_path(u, v) for u, v in pairs],
        "sbt_preorder x50 (r=13)": lambda: [mod.sbt_preorder(root, 13) for root in roots],
        "sbt_children x10k (r=13)": lambda: [mod.sbt_children(0, v, 13) for v, _ in pairs],
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the pure-Python backend is available")
    names = sorted(backends)
    print(f"{'kernel':28s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for case in kernel_cases(backends["python"]):
        times = {n: min(timeit.repeat(kernel_cases(backends[n])[case], number=1, repeat=args.repeat))
                 for n in names}
        line = f"{case:28s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if len(names) > 1:
            line += f"{times['python'] / times['cython']:11.1f}x"
        print(line)

    print("\nend to end: superset cell r=12, 1000 objects, 50 reps x 5 queries, aligned workload")
    for pure in ("1", "0"):
        env = {**os.environ, "HYPERKUBE_PURE_PYTHON": pure}
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        backend, seconds = out.stdout.split()
        print(f"  {backend:8s} {float(seconds):.2f}s")


if __name__ == "__main__":
    main()
