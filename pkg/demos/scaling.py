"""Solver CPU time on growing multiway-cut chains at budget 2.

Doubling the number of edges should roughly double the time.
"""

from __future__ import annotations

import time

from halfint.fpt import solve
from halfint.problems import chain_mwc, encode


def main(sizes: tuple[int, ...] = (5_000, 10_000, 20_000, 40_000)) -> None:
    prev = None
    for m in sizes:
        enc = encode(chain_mwc(m + 1))
        best = float("inf")
        for _ in range(3):
            t0 = time.process_time()
            res = solve(enc.instance, enc.oracle, 2, enc.strategy)
            best = min(best, time.process_time() - t0)
        ratio = "" if prev is None else f"  x{best / prev:.2f}"
        print(f"m={m:6d}  answer={res.answer}  cpu={best:.3f}s{ratio}")
        prev = best


if __name__ == "__main__":
    main()
