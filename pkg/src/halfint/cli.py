"""Command-line front end.

Exit codes: 0 for yes (or success), 1 for no, 2 for errors and failed
checks.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .cover import min_cover_max_packing
from .formats import ParseError, dump, load
from .fpt import STRATEGIES
from .problems import (
    FAMILIES, brute_min_solution, chain_mwc, chain_sfvs, encode, generate, grid_mwc,
    solve_problem, violation,
)
from .verify import brute_min_cover

STRUCTURED = {
    "chain": lambda size, seed: chain_mwc(size + 1),
    "grid": lambda size, seed: grid_mwc(max(3, size // 3)),
    "necklace": lambda size, seed: chain_sfvs(2, max(3, size // 2)),
}


def _halves(x: int) -> str:
    return f"{x}/2"


def _certificate(enc, out) -> None:
    inst = enc.instance
    res = min_cover_max_packing(inst, enc.oracle, 2 * inst.n + 2)
    for v, x in enumerate(res.cover):
        if x:
            out.append(f"cover {enc.label(v)} {_halves(x)}")
    out.append(f"lb {_halves(res.packing.size2)}")
    out.append("packing")
    out += res.packing.dump(enc.label)


def _run_solve(problem, k, args):
    strategy = None if args.strategy == "auto" else args.strategy
    return solve_problem(problem, k, specialized=not args.naive_oracle,
                         strategy=strategy, check=args.check)


def _find_min(problem, args):
    lo, k = -1, 0
    sol = _run_solve(problem, k, args)
    while not sol.answer:
        if sol.result is None or k > problem.n:
            return None, None
        lo, k = k, max(1, 2 * k)
        sol = _run_solve(problem, k, args)
    hi = k
    while hi - lo > 1:
        mid = (lo + hi) // 2
        trial = _run_solve(problem, mid, args)
        if trial.answer:
            hi, sol = mid, trial
        else:
            lo = mid
    return hi, sol


def cmd_solve(args) -> int:
    problem = load(args.file)
    out = []
    if args.find_min:
        k, sol = _find_min(problem, args)
        if k is None:
            print("answer no")
            print("infeasible")
            return 1
        out.append(f"min {k}")
    else:
        if args.k is None:
            raise ValueError("solve needs -k or --find-min")
        sol = _run_solve(problem, args.k, args)
    out.insert(0, f"answer {'yes' if sol.answer else 'no'}")
    if sol.answer and (args.witness or args.find_min):
        out.append("witness: " + " ".join(str(v + 1) for v in sol.witness))
    if args.certificate:
        enc = encode(problem, not args.naive_oracle)
        if enc.infeasible:
            out.append("infeasible: two terminals are adjacent")
        else:
            _certificate(enc, out)
    if sol.result is not None:
        out += sol.result.stats.lines()
    print("\n".join(out))
    return 0 if sol.answer else 1


def _read_witness(path: str, n: int) -> list[int]:
    with open(path) as fh:
        toks = fh.read().replace("witness:", " ").split()
    out = []
    for t in toks:
        try:
            v = int(t)
        except ValueError:
            raise ValueError(f"{path}: witness entries must be vertex ids, got {t!r}") from None
        if not 1 <= v <= n:
            raise ValueError(f"{path}: vertex {v} out of range 1..{n}")
        out.append(v - 1)
    return out


def cmd_certify(args) -> int:
    problem = load(args.file)
    X = _read_witness(args.witness_file, problem.n)
    why = violation(problem, X)
    if why is not None:
        print(f"invalid: {why}")
        return 2
    print(f"valid size={len(set(X))}")
    return 0


def _make(family: str, size: int, seed: int):
    if family in STRUCTURED:
        return STRUCTURED[family](size, seed)
    return generate(family, seed, n=size)


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    if not sizes:
        raise ValueError("--sizes needs at least one size")
    for size in sizes:
        for seed in range(args.seed, args.seed + args.seeds):
            problem = _make(args.family, size, seed)
            m = encode(problem).instance.m
            t = time.perf_counter()
            sol = solve_problem(problem, args.k)
            dt = time.perf_counter() - t
            st = sol.result.stats if sol.result is not None else None
            extra = "" if st is None else f" nodes={st.nodes} oracle_calls={st.oracle_calls}"
            print(f"bench family={args.family} size={size} seed={seed} m={m} "
                  f"answer={'yes' if sol.answer else 'no'} seconds={dt:.4f}{extra}")
    return 0


def cmd_fuzz(args) -> int:
    if args.family not in FAMILIES:
        raise ValueError(f"unknown family {args.family!r}")
    bad = 0
    for seed in range(args.seed, args.seed + args.seeds):
        problem = generate(args.family, seed, n=args.size)
        if args.corpus:
            d = os.path.join(args.corpus, args.family)
            os.makedirs(d, exist_ok=True)
            with open(os.path.join(d, f"{seed}.inst"), "w") as fh:
                fh.write(dump(problem))
        best = brute_min_solution(problem)
        opt = None if best is None else len(best)
        for k in range(args.max_k + 1):
            sol = solve_problem(problem, k, check=True)
            if sol.answer != (opt is not None and k >= opt):
                bad += 1
                print(f"mismatch family={args.family} seed={seed} k={k} brute={opt}")
        enc = encode(problem)
        if not enc.infeasible and enc.instance.n <= 16 and enc.instance.phi:
            got = min_cover_max_packing(enc.instance, enc.oracle, 2 * enc.instance.n + 2)
            want = brute_min_cover(enc.instance)[0]
            if got.size2 != want:
                bad += 1
                print(f"mismatch family={args.family} seed={seed} cover={got.size2} brute={want}")
    print(f"fuzz family={args.family} seeds={args.seeds} mismatches={bad}")
    return 0 if bad == 0 else 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="halfint", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("solve", help="decide an instance file with budget k")
    s.add_argument("file")
    s.add_argument("-k", type=int)
    s.add_argument("--find-min", action="store_true", help="search for the smallest k")
    s.add_argument("--witness", action="store_true")
    s.add_argument("--certificate", action="store_true",
                   help="print a minimum half-integral cover and a packing of equal weight")
    s.add_argument("--strategy", default="auto", choices=("auto",) + STRATEGIES)
    s.add_argument("--naive-oracle", action="store_true")
    s.add_argument("--check", action="store_true", help="validate every packing")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("certify", help="check a witness against an instance")
    c.add_argument("file")
    c.add_argument("witness_file")
    c.set_defaults(func=cmd_certify)

    b = sub.add_parser("bench", help="time the solver on generated instances")
    b.add_argument("--family", required=True, choices=FAMILIES + tuple(STRUCTURED))
    b.add_argument("--sizes", required=True)
    b.add_argument("-k", type=int, required=True)
    b.add_argument("--seeds", type=int, default=1)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_bench)

    f = sub.add_parser("fuzz", help="compare the solver with brute force")
    f.add_argument("--family", required=True, choices=FAMILIES)
    f.add_argument("--seeds", type=int, default=100)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--size", type=int, default=None, help="vertices per instance")
    f.add_argument("--max-k", type=int, default=4)
    f.add_argument("--corpus", default=None, help="write instances to DIR/<family>/<seed>.inst")
    f.set_defaults(func=cmd_fuzz)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
