"""Compare numba kernels against the plain numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--n 8]

Each mode runs in a fresh interpreter because ROSESPEC_JIT is read at import.
JIT timings exclude the first (compiling) call.
"""
import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
import numpy as np
from rosespec import kernels
from rosespec.graph import Graph
from rosespec.linalg import PRIMES
from rosespec.search import enumerate_connected

n, repeat, seed = int(sys.argv[1]), int(sys.argv[2]), int(sys.argv[3])
rng = np.random.default_rng(seed)
graphs = []
for _ in range(200):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
    graphs.append(Graph.from_edges(n, edges))
mats = [np.array(g.adjacency(), dtype=np.int64) for g in graphs]

def canon():
    for g in graphs:
        kernels.canonical_rows(g.rows, n)

def charpoly():
    for a in mats:
        kernels.charpoly_mod(a, n, PRIMES[0])

def enum():
    sum(1 for _ in enumerate_connected(7, 9))

out = {}
for name, fn in (("canonical_rows x200", canon), ("charpoly_mod x200", charpoly),
                 ("enumerate (7, 9)", enum)):
    fn()  # warm-up / compile
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    out[name] = best
print(json.dumps(out))
"""


def run(mode, n, repeat, seed):
    env = dict(os.environ, ROSESPEC_JIT=mode)
    res = subprocess.run([sys.executable, "-c", WORKER, str(n), str(repeat), str(seed)],
                         env=env, check=True, capture_output=True, text=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    t0 = time.perf_counter()
    jit = run("1", args.n, args.repeat, args.seed)
    plain = run("0", args.n, args.repeat, args.seed)
    print(f"{'kernel':<24}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for name in jit:
        a, b = jit[name], plain[name]
        print(f"{name:<24}{a:12.4f}{b:12.4f}{b / a:10.1f}x")
    print(f"total wall {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
