"""Solve one random instance of every problem family and check against brute force."""

from __future__ import annotations

from halfint.problems import FAMILIES, brute_min_solution, generate, solve_problem, violation


def main(seed: int = 3) -> None:
    for fam in FAMILIES:
        prob = generate(fam, seed)
        best = brute_min_solution(prob)
        if best is None:
            print(f"{fam:5s} infeasible for every budget")
            continue
        k = len(best)
        yes = solve_problem(prob, k)
        no = solve_problem(prob, k - 1) if k else None
        ok = violation(prob, yes.witness) is None
        print(f"{fam:5s} optimum {k}  witness {yes.witness}  valid={ok}  "
              f"k-1 rejected={no is None or not no.answer}  nodes={yes.result.stats.nodes}")


if __name__ == "__main__":
    main()
