#!/usr/bin/env python3
"""Benchmark: compiled search kernel vs the pure-Python fallback.

Runs the same workloads through zhedkit.search_fast (if built) and
zhedkit.search_slow and reports states per second.  Workloads:

* threshold certification walk: exhaustive exploration of isolated
  threshold gadget boards for b <= 4 over all pre-fill subsets,
* a bounded solve on a compiled single-clause instance.

Usage: python benchmarks/bench_kernels.py [--budget N]
"""

import argparse
import itertools
import time

from zhedkit import search_slow
from zhedkit.gadgets import instantiate, make_threshold
from zhedkit.reducer import compile as compile_formula
from zhedkit.rpm3sat import parse_instance

try:
    from zhedkit import search_fast
    KERNELS = [("cython", search_fast), ("python", search_slow)]
except ImportError:
    KERNELS = [("python", search_slow)]


def threshold_walk(kernel) -> tuple[int, float]:
    states = 0
    start = time.perf_counter()
    for b in range(1, 5):
        for subset in itertools.product((0, 1), repeat=b):
            bp = make_threshold((2, 2), "H", "R", b, b)
            bp.prefilled = tuple(bp.sources[i] for i in range(b) if subset[i])
            board = instantiate([bp], bp.target)
            target = bp.target[0] * board.width + bp.target[1]
            _, _, n, complete = kernel.explore(
                board.cells, board.width, board.height, target, 0, 0)
            assert complete
            states += n
    return states, time.perf_counter() - start


def bounded_solve(kernel, budget: int) -> tuple[int, float]:
    formula, _ = parse_instance("p rpm3sat 1\npos 1\n")
    board = compile_formula(formula).board
    target = board.target[0] * board.width + board.target[1]
    start = time.perf_counter()
    _, _, states, = kernel.solve(board.cells, board.width, board.height,
                                 target, budget, 0, False)
    return states, time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--budget", type=int, default=200_000,
                        help="state budget for the bounded-solve workload")
    args = parser.parse_args()

    print(f"{'kernel':8} {'workload':22} {'states':>10} {'seconds':>8} {'states/s':>12}")
    baselines = {}
    for name, kernel in KERNELS:
        for label, (states, secs) in (
                ("threshold-walk", threshold_walk(kernel)),
                ("bounded-solve", bounded_solve(kernel, args.budget))):
            rate = states / secs if secs else float("inf")
            print(f"{name:8} {label:22} {states:>10} {secs:>8.2f} {rate:>12.0f}")
            baselines.setdefault(label, rate)
            if name == "python" and len(KERNELS) > 1:
                speedup = baselines[label] / rate
                print(f"{'':8} {label + ' speedup':22} {speedup:>10.1f}x")


if __name__ == "__main__":
    main()
