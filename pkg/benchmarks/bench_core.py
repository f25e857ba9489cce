"""Compiled kernels vs the pure-Python twins.

Times the two hot paths behind every stage quotient — union-find class
labeling and mixed-radix Cayley arithmetic — against `_core_py`, plus one
end-to-end chain build per backend driven through a subprocess with
``FREEMONOID_PURE=1``.

    python3 benchmarks/bench_core.py [--repeats 5] [--skip-e2e]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from freemonoid import _core_py

try:
    from freemonoid import _core
except ImportError:
    _core = None


def best_of(repeats, fn, *args):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def uf_workload(impl, n, pairs_a, pairs_b):
    parent = np.arange(n, dtype=np.int64)
    impl.uf_unite_pairs(parent, pairs_a, pairs_b)
    return impl.uf_canonical(parent)


def mixed_workload(impl, flat, offsets, radices, strides, a, b):
    out = impl.mixed_mult(flat, offsets, radices, strides, a, b)
    return impl.mixed_mult(flat, offsets, radices, strides, out, b)


def row(label, pure_s, fast_s):
    if fast_s is None:
        print(f"{label:<42} {pure_s * 1e3:>10.2f} ms {'—':>12} {'—':>8}")
    else:
        print(f"{label:<42} {pure_s * 1e3:>10.2f} ms {fast_s * 1e3:>9.2f} ms "
              f"{pure_s / fast_s:>7.1f}x")


def bench_kernels(repeats):
    rng = np.random.default_rng(20260815)
    print(f"{'kernel workload':<42} {'pure':>13} {'compiled':>12} {'speedup':>8}")

    for n, m in ((20_000, 15_000), (200_000, 150_000)):
        a = rng.integers(0, n, size=m, dtype=np.int64)
        b = rng.integers(0, n, size=m, dtype=np.int64)
        pure = best_of(repeats, uf_workload, _core_py, n, a, b)
        fast = best_of(repeats, uf_workload, _core, n, a, b) if _core else None
        row(f"union-find quotient  n={n:>7} m={m}", pure, fast)

    # three cyclic factors, batched multiplication on a large index vector
    radices = np.array([4, 3, 5], dtype=np.int64)
    strides = np.array([15, 5, 1], dtype=np.int64)
    tables = [np.add.outer(np.arange(r), np.arange(r)) % r for r in radices]
    flat = np.concatenate([t.ravel() for t in tables]).astype(np.int64)
    offsets = np.array([0, 16, 25], dtype=np.int64)
    for k in (100_000, 2_000_000):
        a = rng.integers(0, 60, size=k, dtype=np.int64)
        b = rng.integers(0, 60, size=k, dtype=np.int64)
        pure = best_of(repeats, mixed_workload, _core_py,
                       flat, offsets, radices, strides, a, b)
        fast = (best_of(repeats, mixed_workload, _core,
                        flat, offsets, radices, strides, a, b)
                if _core else None)
        row(f"mixed-radix mult     batch={k}", pure, fast)


E2E = {
    "finset words |X|=3, 5 stages":
        "from freemonoid import engine; from freemonoid.finset import *; "
        "engine.run_chain(pointed_set(FinSetBackend(), ['a','b','c']), 5)",
    "span 8-loop graph, 5 stages":
        "from freemonoid import engine; from freemonoid.span import *; "
        "be = SpanBackend(['v']); "
        "engine.run_chain(pointed_graph(be, "
        "[(f'l{i}', 'v', 'v') for i in range(8)]), 5)",
    "fingrp q8 x z2 abelianization":
        "from freemonoid import engine; from freemonoid.fingrp import *; "
        "g = direct_product(group_by_name('q8'), group_by_name('z2')); "
        "engine.run_chain(pointed_group(FinGrpBackend(), g), 4)",
}


def bench_e2e(repeats):
    print()
    print(f"{'end-to-end chain build':<42} {'pure':>13} {'compiled':>12} {'speedup':>8}")
    for label, code in E2E.items():
        times = {}
        for pure in (True, False):
            if not pure and _core is None:
                times[pure] = None
                continue
            env = dict(os.environ)
            env.pop("FREEMONOID_PURE", None)
            if pure:
                env["FREEMONOID_PURE"] = "1"
            snippet = (f"import time; t0 = time.perf_counter(); {code}; "
                       f"print(time.perf_counter() - t0)")
            best = float("inf")
            for _ in range(repeats):
                out = subprocess.run([sys.executable, "-c", snippet], env=env,
                                     capture_output=True, text=True, check=True)
                best = min(best, float(out.stdout.strip()))
            times[pure] = best
        row(label, times[True], times[False])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5,
                    help="keep the best of this many runs per cell")
    ap.add_argument("--skip-e2e", action="store_true",
                    help="kernel microbenchmarks only")
    args = ap.parse_args(argv)
    if _core is None:
        print("note: compiled extension not importable; pure column only\n")
    bench_kernels(args.repeats)
    if not args.skip_e2e:
        bench_e2e(max(2, args.repeats // 2))


if __name__ == "__main__":
    main()
