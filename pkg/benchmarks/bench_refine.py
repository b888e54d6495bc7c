"""Compare the compiled and pure-Python interval kernels.

Each lane runs in a subprocess with ISOFOLD_KERNEL pinned, so both
kernels are measured through exactly the same call paths.  Three
workloads: raw interval evaluation of a flattened program, the full
sign-refinement ladder on an exactly-zero expression, and exact equality
of a reparsed fold map (the realistic end of the pipeline).

Usage: python benchmarks/bench_refine.py [--repeats N]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def build_sqrt_program():
    from fractions import Fraction

    from isofold import ExactNumber, sqrt
    from isofold.exactreal import _flatten

    x = sqrt(2) + sqrt(3)
    y = sqrt(Fraction(7, 5)) * sqrt(Fraction(11, 3))
    z = (x * y - y) / (x + Fraction(1, 7)) + sqrt(x + 2)
    return _flatten(z)


def work_eval(repeats: int) -> int:
    from isofold._kernel import eval_interval

    ops, a1, a2, nums, dens = build_sqrt_program()
    n = 0
    for prec in (64, 256, 1024):
        for _ in range(repeats):
            assert eval_interval(ops, a1, a2, nums, dens, prec) is not None
            n += 1
    return n


def work_sign_ladder(repeats: int) -> int:
    from isofold import ExactNumber, sign, sqrt

    n = 0
    for _ in range(repeats):
        x = sqrt(2) + sqrt(3)
        lhs = x * x
        rhs = ExactNumber(5) + 2 * sqrt(6)
        assert sign(lhs - rhs) == 0
        n += 1
    return n


def work_fold_equality(repeats: int) -> int:
    from isofold import Point, sqrt
    from isofold.extension import cone_pieces, fold_boundary_region
    from isofold.fileio import parse_map, serialize_map
    from isofold.geometry import ConvexPolygon
    from isofold.plmap import assemble

    P = Point
    fr = fold_boundary_region(
        [P(0, 0), P(2, 0), P(0, 2)],
        P(2, 0), P(0, 2), P(0, 0), P(0, 0), P(2, 0), P(sqrt(2), sqrt(2)),
    )
    pieces, _ = cone_pieces(fr)
    f = assemble(ConvexPolygon([P(0, 0), P(2, 0), P(0, 2)]), pieces)
    text = serialize_map(f, "0" * 64)
    n = 0
    for _ in range(repeats):
        doc = parse_map(text)
        assert doc.map == f
        n += 1
    return n


WORKLOADS = {
    "interval_eval": (work_eval, 2000),
    "sign_ladder": (work_sign_ladder, 300),
    "fold_map_equality": (work_fold_equality, 20),
}


def run_worker(name: str, scale: float) -> None:
    from isofold.exactreal import kernel_backend

    fn, repeats = WORKLOADS[name]
    repeats = max(1, int(repeats * scale))
    fn(max(1, repeats // 10))  # warm caches before timing
    start = time.perf_counter()
    count = fn(repeats)
    elapsed = time.perf_counter() - start
    print(json.dumps({
        "kernel": kernel_backend(),
        "workload": name,
        "iterations": count,
        "seconds": elapsed,
        "per_iteration_us": 1e6 * elapsed / count,
    }))


def launch(kernel: str, name: str, scale: float) -> dict:
    env = dict(os.environ, ISOFOLD_KERNEL=kernel)
    proc = subprocess.run(
        [sys.executable, __file__, "--worker", name, "--scale", str(scale)],
        capture_output=True, text=True, env=env, check=True,
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--worker", help=argparse.SUPPRESS)
    parser.add_argument("--scale", type=float, default=1.0)
    args = parser.parse_args()

    if args.worker:
        run_worker(args.worker, args.scale)
        return 0

    rows = []
    for name in WORKLOADS:
        compiled = launch("compiled", name, args.scale)
        python = launch("python", name, args.scale)
        rows.append((name, compiled, python))

    print(f"{'workload':<20} {'compiled':>12} {'python':>12} {'speedup':>9}")
    for name, compiled, python in rows:
        ratio = python["per_iteration_us"] / compiled["per_iteration_us"]
        print(
            f"{name:<20} {compiled['per_iteration_us']:>10.1f}us "
            f"{python['per_iteration_us']:>10.1f}us {ratio:>8.2f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
