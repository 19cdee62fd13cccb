"""Acceptance gate: ten end-to-end criteria, one pass/fail line each.

Every test records its verdict in ``RESULTS``; ``conftest.py`` prints the
lines in the terminal summary.  Running this file as a script prints them
directly.
"""

from __future__ import annotations

import random
import time

import pytest

from halfint.constraints import concat, imp_walk, is_conflicting
from halfint.cover import CoverPacking, min_cover_max_packing, reachable_zero
from halfint.farthest import farthest_cover
from halfint.fpt import solve
from halfint.packing import validate_packing
from halfint.problems import (
    FAMILIES, brute_min_solution, chain_mwc, encode, generate, grid_mwc, pin, solve_problem,
    violation,
)
from halfint.verify import (
    brute_min_cover, brute_min_deletion, enumerate_walks, random_instance, separation,
)

from corpus import ALL_FAMILIES, dominance_maximal, family_instances, mass_defects
from walks import lollipop_pair, tokens

RESULTS: dict[int, str] = {}


def _record(num: int, ok: bool, detail: str) -> None:
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[num] = line
    print(line)


@pytest.fixture(scope="module")
def duality_runs():
    """Engine output on 1000 instances per family, with the engine time."""
    corpus = {fam: family_instances(fam, 1000, max_n=10) for fam in ALL_FAMILIES}
    t0 = time.perf_counter()
    runs = {}
    for fam, items in corpus.items():
        runs[fam] = []
        for inst, orc in items:
            res = min_cover_max_packing(inst, orc, 2 * inst.n + 2)
            ok = (isinstance(res, CoverPacking)
                  and validate_packing(inst, res.packing) is None
                  and separation(inst, res.cover) is None
                  and sum(res.cover) == res.packing.size2)
            runs[fam].append((inst, res, ok))
    return runs, time.perf_counter() - t0


def test_criterion_01_duality_certificates(duality_runs):
    runs, elapsed = duality_runs
    bad = [(fam, i) for fam, rs in runs.items() for i, (_, _, ok) in enumerate(rs) if not ok]
    total = sum(len(rs) for rs in runs.values())
    ok = not bad and elapsed < 60.0
    _record(1, ok, f"{total} instances, {len(bad)} bad certificates, {elapsed:.1f}s (< 60s)")
    assert ok, bad[:5]


def test_criterion_02_optimality(duality_runs):
    runs, _ = duality_runs
    bad = []
    for fam, rs in runs.items():
        for i, (inst, res, _) in enumerate(rs):
            if brute_min_cover(inst)[0] != res.size2:
                bad.append((fam, i))
    total = sum(len(rs) for rs in runs.values())
    _record(2, not bad, f"{total} instances, {len(bad)} differ from the brute-force optimum")
    assert not bad, bad[:5]


def test_criterion_03_farthest_and_masses():
    checked = 0
    bad = []
    for fam in ALL_FAMILIES:
        for i, (inst, orc) in enumerate(family_instances(fam, 30, max_n=9, seed0=5000)):
            res = farthest_cover(inst, orc, 2 * inst.n + 2)
            _, optimal = brute_min_cover(inst)
            pk = min_cover_max_packing(inst, orc, 2 * inst.n + 2).packing
            checked += 1
            if not dominance_maximal(inst, res.cover, optimal):
                bad.append((fam, i, "dominated"))
            for x in optimal:
                if mass_defects(pk, x):
                    bad.append((fam, i, "mass"))
                    break
    ok = checked >= 300 and not bad
    _record(3, ok, f"{checked} instances, {len(bad)} dominance or mass violations")
    assert ok, bad[:5]


def test_criterion_04_persistency():
    checked = 0
    bad = []
    for fam in ALL_FAMILIES:
        for i, (inst, orc) in enumerate(family_instances(fam, 50, max_n=10, seed0=7000)):
            res = farthest_cover(inst, orc, 2 * inst.n + 2)
            ones = [v for v in range(inst.n) if res.cover[v] == 2]
            reach = reachable_zero(inst, res.cover)
            free = brute_min_deletion(inst)
            forced = brute_min_deletion(inst, must_include=ones, must_avoid=reach)
            checked += 1
            if forced is None or len(forced) != len(free):
                bad.append((fam, i))
    ok = checked >= 500 and not bad
    _record(4, ok, f"{checked} instances, {len(bad)} where the forced optimum grows")
    assert ok, bad[:5]


def _bound_base(enc) -> int:
    if enc.strategy == "generic":
        return max(len(enc.instance.values(v) or ()) for v in range(enc.instance.n))
    return 2


@pytest.fixture(scope="module")
def fpt_runs():
    """``(family, seed, k, base, solution, expected)`` over the problem corpus."""
    out = []
    for fam in FAMILIES:
        for seed in range(1000):
            prob = generate(fam, seed)
            best = brute_min_solution(prob)
            enc = encode(prob)
            base = _bound_base(enc) if enc.instance.n else 2
            for k in range(5):
                sol = solve_problem(prob, k)
                out.append((fam, seed, k, base, prob, sol, best))
    return out


def test_criterion_05_fpt_correctness(fpt_runs):
    bad = []
    for fam, seed, k, _, prob, sol, best in fpt_runs:
        expected = best is not None and len(best) <= k
        if sol.answer != expected:
            bad.append((fam, seed, k, "answer"))
        elif sol.answer and violation(prob, sol.witness) is not None:
            bad.append((fam, seed, k, "witness"))
    fams = len({r[0] for r in fpt_runs})
    _record(5, not bad, f"{len(fpt_runs)} runs over {fams} families, k 0..4, {len(bad)} wrong")
    assert not bad, bad[:5]


def test_criterion_08_branch_accounting(fpt_runs):
    # Explored calls (relaxation within budget) obey b^(2*gap+1).  Calls cut
    # off by the relaxation are leaves; all calls together obey the geometric
    # sum over one more level.
    bad = []
    worst = 0.0
    for fam, seed, k, base, _, sol, _ in fpt_runs:
        if sol.result is None:
            continue
        st = sol.result.stats
        if st.gap_violations:
            bad.append((fam, seed, k, "gap"))
        b = max(2, base)
        if st.branching > b:
            bad.append((fam, seed, k, "branching"))
        explored = st.nodes - st.pruned
        if st.root_gap2 is None:
            limit, total_limit = 0, 1
        else:
            limit = b ** (st.root_gap2 + 1)
            total_limit = sum(b ** i for i in range(st.root_gap2 + 2))
        if limit:
            worst = max(worst, explored / limit)
        if explored > limit or st.nodes > total_limit:
            bad.append((fam, seed, k, "nodes", st.nodes, st.pruned, st.root_gap2, b))
    _record(8, not bad, f"{len(fpt_runs)} runs, worst explored/bound {worst:.3f}, "
                        f"{len(bad)} violations")
    assert not bad, bad[:5]


def test_criterion_06_oracle_equivalence():
    target = 50_000
    counts = {}
    bad = []
    for fam in ("sfvs", "nmct"):
        done = 0
        seed = 0
        while done < target:
            prob = generate(fam, seed, n=random.Random(seed).randint(4, 12))
            seed += 1
            fast0, slow0 = encode(prob, True), encode(prob, False)
            if fast0.instance.n == 0:
                continue
            rng = random.Random(f"pairs:{fam}:{seed}")
            for _ in range(4):
                s = rng.randrange(fast0.instance.n)
                fast, slow = pin(fast0, s), pin(slow0, s)
                for _ in range(60):
                    pair = lollipop_pair(fast.instance, s, rng)
                    if pair is None:
                        continue
                    p, q = pair
                    a = fast.oracle.test(tokens(fast.oracle, fast.instance, p),
                                         tokens(fast.oracle, fast.instance, q))
                    b = slow.oracle.test(tokens(slow.oracle, slow.instance, p),
                                         tokens(slow.oracle, slow.instance, q))
                    c = is_conflicting(slow.instance, concat(p, q[::-1]))
                    done += 1
                    if not a == b == c:
                        bad.append((fam, seed, p, q))
        counts[fam] = done
    total = sum(counts.values())
    ok = total >= 100_000 and not bad
    _record(6, ok, f"{total} pairs ({counts}), {len(bad)} disagreements")
    assert ok, bad[:5]


class _Counting:
    """Oracle wrapper that counts appends and tests."""

    def __init__(self, inner, box: list[int]) -> None:
        self.inner = inner
        self.box = box

    @property
    def init(self):
        return self.inner.init

    def append(self, s, u, e):
        self.box[0] += 1
        return self.inner.append(s, u, e)

    def test(self, a, b):
        self.box[0] += 1
        return self.inner.test(a, b)

    def fresh(self, v):
        return self.inner.fresh(v)

    def rebind(self, inst, init):
        return _Counting(self.inner.rebind(inst, init), self.box)


SIZES = (10_000, 20_000, 40_000, 80_000)


def test_criterion_07_linear_scaling():
    builders = {"chain": lambda m: chain_mwc(m + 1), "grid": lambda m: grid_mwc(m // 3)}
    encs = {(fam, m): encode(build(m)) for fam, build in builders.items() for m in SIZES}
    best = {key: float("inf") for key in encs}
    per_search = {}
    for _ in range(5):
        # interleave sizes so that background noise hits every size alike
        for key, enc in encs.items():
            t0 = time.process_time()
            res = solve(enc.instance, enc.oracle, 2, enc.strategy)
            best[key] = min(best[key], time.process_time() - t0)
            assert res.answer
    for key, enc in encs.items():
        box = [0]
        res = solve(enc.instance, _Counting(enc.oracle, box), 2, enc.strategy)
        searches = res.stats.augmentations + res.stats.nodes
        per_search[key] = box[0] / searches / enc.instance.m
    bad = []
    parts = []
    for fam in builders:
        ratios = [best[(fam, b)] / best[(fam, a)] for a, b in zip(SIZES, SIZES[1:])]
        calls = max(per_search[(fam, m)] for m in SIZES)
        parts.append(f"{fam} ratios {' '.join(f'{r:.2f}' for r in ratios)} calls/m {calls:.2f}")
        bad += [(fam, r) for r in ratios if not 2 * 0.65 <= r <= 2 * 1.35]
        if calls > 8:
            bad.append((fam, "calls", calls))
    _record(7, not bad, "; ".join(parts))
    assert not bad, bad


def test_criterion_09_debug_invariants():
    events = []
    bad = []

    def hook(before, after):
        events.append(after - before)

    seed0 = 0
    while len(events) < 10_000:
        for fam in ALL_FAMILIES:
            for inst, orc in family_instances(fam, 25, max_n=14, seed0=seed0):
                try:
                    min_cover_max_packing(inst, orc, 2 * inst.n + 2, check=True, on_augment=hook)
                except AssertionError as err:
                    bad.append((fam, str(err)))
        seed0 += 10_000
    steps = [d for d in events if d not in (1, 2)]
    ok = not bad and not steps
    _record(9, ok, f"{len(events)} augmentations, {len(bad)} invariant failures, "
                   f"{len(steps)} steps outside +1/2 or +1")
    assert ok, (bad[:5], steps[:5])


def _axiom_violations(inst) -> int:
    walks = [w for w in enumerate_walks(inst, 6) if imp_walk(inst, w) is not None]
    bad = 0
    by_end: dict[int, list[tuple[int, ...]]] = {}
    for w in enumerate_walks(inst, 6):
        star = imp_walk(inst, w) is not None
        if is_conflicting(inst, w) and not star:
            bad += 1
        if star and any(imp_walk(inst, w[:i]) is None for i in range(1, len(w))):
            bad += 1
    for w in walks:
        by_end.setdefault(w[-1], []).append(tuple(w))
    for u, ws in by_end.items():
        eq = {p: frozenset(q for q in ws if not is_conflicting(inst, concat(p, q[::-1])))
              for p in ws}
        for p in ws:
            if p not in eq[p]:
                bad += 1
            for q in eq[p]:
                # symmetric, and transitive: equivalent walks share their class
                if p not in eq[q] or eq[q] != eq[p]:
                    bad += 1
        for p in ws:
            for q in eq[p]:
                for v, _ in inst.adj[u]:
                    if (imp_walk(inst, p + (v,)) is None) != (imp_walk(inst, q + (v,)) is None):
                        bad += 1
    return bad


def test_criterion_10_walk_axioms():
    total = 0
    bad = 0
    for seed in range(60):
        rng = random.Random(f"axioms:{seed}")
        inst = random_instance(seed, n=rng.randint(3, 6), d=3, density=rng.uniform(0.2, 0.5),
                               terminals=rng.randint(1, 2))
        bad += _axiom_violations(inst)
        total += 1
    for fam in FAMILIES:
        for inst, _ in family_instances(fam, 4, max_n=6, seed0=300):
            bad += _axiom_violations(inst)
            total += 1
    _record(10, bad == 0, f"{total} instances, walks up to 6 edges, {bad} violations")
    assert bad == 0


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
