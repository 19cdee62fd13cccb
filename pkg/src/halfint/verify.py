"""Independent brute-force checkers and seeded instance generators.

Nothing here calls into the search or augmentation code.  The checkers
work straight from the constraint definitions, so they can certify what
the engine returns on small instances.

Separation is exact: a walk's cost is the sum of the cover over its visits,
and the value implied at each step only depends on the vertex and the value
implied one step earlier.  A shortest path over (vertex, value) states
therefore finds the cheapest conflicting walk.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .constraints import Instance, imp_walk


@dataclass
class ConflictingWalk:
    walk: list[int]
    cost: int


def _cheapest_walk(inst: Instance, x: list[int], cap: int):
    """Cheapest conflicting walk avoiding inner terminals, if it costs <= cap."""
    phi = inst.phi
    dist: dict[tuple, int] = {}
    parent: dict[tuple, tuple | None] = {}
    heap = []
    tick = itertools.count()
    for a, p in phi.items():
        c = x[a]
        if c <= cap and dist.get((a, p), cap + 1) > c:
            dist[(a, p)] = c
            parent[(a, p)] = None
            heapq.heappush(heap, (c, next(tick), a, p))
    best = None
    while heap:
        c, _, v, p = heapq.heappop(heap)
        if dist.get((v, p)) != c:
            continue
        if best is not None and c >= best[0]:
            break
        if v in phi and parent[(v, p)] is not None:
            continue
        for u, eid in inst.adj[v]:
            q = inst.apply(eid, v, p)
            if q is None:
                continue
            nc = c + x[u]
            if nc > cap:
                continue
            if u in phi:
                if q != phi[u] and (best is None or nc < best[0]):
                    best = (nc, (v, p), u)
                continue
            if dist.get((u, q), cap + 1) > nc:
                dist[(u, q)] = nc
                parent[(u, q)] = (v, p)
                heapq.heappush(heap, (nc, next(tick), u, q))
    if best is None:
        return None
    cost, state, end = best
    walk = [end]
    while state is not None:
        walk.append(state[0])
        state = parent[state]
    return ConflictingWalk(walk[::-1], cost)


def separation(inst: Instance, x: list[int]):
    """``None`` if cover ``x`` (in halves) is feasible, else a cheap walk.

    The returned walk is conflicting, avoids terminals inside and has cost
    below one (at most one half).
    """
    if len(x) != inst.n or any(c < 0 for c in x):
        raise ValueError("cover must give a non-negative weight to every vertex")
    return _cheapest_walk(inst, x, 1)


def brute_min_cover(inst: Instance, limit: int = 16):
    """Minimum cover weight (in halves) and every cover attaining it.

    Covers are grown one half at a time along a violated walk; each
    minimum cover is reached this way, so the first level with a feasible
    cover holds them all.
    """
    if inst.n > limit:
        raise ValueError(f"brute_min_cover is limited to {limit} vertices")
    level = {tuple([0] * inst.n)}
    size = 0
    while True:
        found = []
        nxt = set()
        for x in level:
            w = _cheapest_walk(inst, list(x), 1)
            if w is None:
                found.append(list(x))
                continue
            for v in set(w.walk):
                if x[v] < 2:
                    y = list(x)
                    y[v] += 1
                    nxt.add(tuple(y))
        if found:
            return size, sorted(found)
        level = nxt
        size += 1


def _propagate(inst, removed, fixed, seeds, out) -> bool:
    queue = deque()
    for v, p in seeds:
        have = fixed.get(v, out.get(v))
        if have is not None:
            if have != p:
                return False
            continue
        out[v] = p
        queue.append(v)
    while queue:
        u = queue.popleft()
        p = out[u]
        for v, eid in inst.adj[u]:
            if v in removed:
                continue
            q = inst.apply(eid, u, p)
            if q is None:
                continue
            have = fixed.get(v, out.get(v))
            if have is None:
                out[v] = q
                queue.append(v)
            elif have != q:
                return False
    return True


def satisfiable(inst: Instance, removed: Iterable[int] = ()) -> bool:
    """Whether the constraints among kept vertices extend the assignment."""
    removed = set(removed)
    val: dict[int, object] = {}
    seeds = [(a, p) for a, p in inst.phi.items() if a not in removed]
    if not _propagate(inst, removed, {}, seeds, val):
        return False
    for r in range(inst.n):
        if r in removed or r in val:
            continue
        vals = inst.values(r)
        if vals is None:
            vals = [inst.group.identity]
        for a in vals:
            trial: dict[int, object] = {}
            if _propagate(inst, removed, val, [(r, a)], trial):
                val.update(trial)
                break
        else:
            return False
    return True


def brute_min_deletion(inst: Instance, k: int | None = None,
                       must_include: Iterable[int] = (),
                       must_avoid: Iterable[int] = (), limit: int = 22):
    """Smallest deletion set as a sorted tuple, or ``None`` if none fits ``k``."""
    if inst.n > limit:
        raise ValueError(f"brute_min_deletion is limited to {limit} vertices")
    inc = sorted(set(must_include))
    avoid = set(must_avoid)
    if avoid & set(inc):
        return None
    free = [v for v in range(inst.n) if v not in avoid and v not in inc]
    top = len(free) if k is None else min(len(free), k - len(inc))
    for s in range(0, top + 1):
        for extra in itertools.combinations(free, s):
            X = set(inc) | set(extra)
            if satisfiable(inst, X):
                return tuple(sorted(X))
    return None


def enumerate_walks(inst: Instance, max_len: int, starts: Iterable[int] | None = None):
    """Every walk with at most ``max_len`` edges from the given starts."""
    starts = sorted(inst.phi) if starts is None else list(starts)
    out = []
    stack = [[s] for s in starts]
    while stack:
        w = stack.pop()
        out.append(w)
        if len(w) <= max_len:
            for v, _ in inst.adj[w[-1]]:
                stack.append(w + [v])
    return out


def exhaustive_min_walk_cost(inst: Instance, x: list[int], max_len: int):
    """Cheapest conflicting walk found by listing walks, for cross-checks."""
    best = None
    for w in enumerate_walks(inst, max_len):
        if len(w) < 2 or any(v in inst.phi for v in w[1:-1]):
            continue
        p = imp_walk(inst, w)
        t = inst.phi.get(w[-1])
        if p is None or t is None or p == t:
            continue
        c = sum(x[v] for v in w)
        if best is None or c < best:
            best = c
    return best


def random_instance(seed: int, n: int = 8, d: int = 3, density: float = 0.35,
                    fan_ratio: float = 0.4, terminals: int = 3) -> Instance:
    """Generic 0/1/all instance with random permutations and two-fans."""
    import random

    rng = random.Random(seed)
    dom = [rng.randint(1, d) for _ in range(n)]
    inst = Instance(dom)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() >= density:
                continue
            if dom[u] == dom[v] and rng.random() >= fan_ratio:
                perm = list(range(dom[u]))
                if rng.random() < 0.6:
                    rng.shuffle(perm)
                inst.add_permutation(u, v, perm)
            else:
                inst.add_fan(u, v, rng.randrange(dom[u]), rng.randrange(dom[v]))
    for v in rng.sample(range(n), min(n, terminals)):
        inst.assign(v, rng.randrange(dom[v]))
    return inst
