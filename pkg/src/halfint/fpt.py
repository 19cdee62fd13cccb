"""Branch-and-bound solver for 0/1/all deletion, linear in the instance size.

Each node computes a farthest minimum half-integral cover, prunes when it
exceeds the budget, applies persistency (delete the weight-one vertices,
fix the zero-cost reachable ones) and then branches: on a terminal (delete
it or fix it) or, once no terminals remain, on a branching set whose
cheapest satisfiable fixing is found by round-robin unit propagation.

Budgets ``k`` count deleted vertices; covers and the gap ``k - c(I)`` are
tracked in halves.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .constraints import FAN, IDENT, PERM, Instance
from .cover import ExceedsK, reachable_zero
from .farthest import farthest_cover
from .verify import satisfiable

STRATEGIES = ("generic", "twofan", "group", "none")


@dataclass
class SolveStats:
    nodes: int = 0
    augmentations: int = 0
    oracle_calls: int = 0
    relaxations: int = 0
    max_depth: int = 0
    root_gap2: int | None = None
    branching: int = 1
    gap_violations: int = 0
    propagation_steps: int = 0
    pruned: int = 0

    def lines(self) -> list[str]:
        return [f"stats {k}={v}" for k, v in self.__dict__.items()]


@dataclass
class SolveResult:
    answer: bool
    witness: list[int] | None
    stats: SolveStats
    root_cover: list[int] | None = None
    root_packing: object = None
    lower_bound2: int | None = None
    extra: dict = field(default_factory=dict)


def _rebuild(inst: Instance, orc, removed: set[int], phi: dict, init: dict):
    out, remap = inst.subgraph(removed, phi)
    new_init = {remap[v]: t for v, t in init.items() if remap[v] >= 0}
    return out, orc.rebind(out, new_init)


def delete_vertex(inst: Instance, orc, u: int):
    """Remove ``u`` and its constraints."""
    if not 0 <= u < inst.n:
        raise ValueError(f"unknown vertex {u}")
    return _rebuild(inst, orc, {u}, inst.phi, orc.init)


def fix_vertex(inst: Instance, orc, u: int):
    """Commit a terminal ``u`` to its value and remove it.

    Neighbouring terminals whose constraint with ``u`` is already violated
    are removed too and returned (by original name); unconstrained
    neighbours that the constraint pins become terminals.
    """
    if u not in inst.phi:
        raise ValueError(f"vertex {u} is not a terminal")
    phi, init = dict(inst.phi), dict(orc.init)
    pu, tu = phi[u], init[u]
    removed = {u}
    violated = []
    for v, eid in inst.adj[u]:
        q = inst.apply(eid, u, pu)
        if q is None:
            continue
        if v in phi:
            if phi[v] != q:
                removed.add(v)
                violated.append(inst.orig[v])
        else:
            phi[v] = q
            init[v] = orc.append(tu, u, eid)
    new, norc = _rebuild(inst, orc, removed, phi, init)
    return new, norc, violated


def assign_vertex(inst: Instance, orc, u: int, value):
    """Pin a non-terminal ``u`` to ``value``."""
    if u in inst.phi:
        raise ValueError(f"vertex {u} is already a terminal")
    phi, init = dict(inst.phi), dict(orc.init)
    phi[u] = value
    init[u] = orc.fresh(value)
    return _rebuild(inst, orc, set(), phi, init)


def persistency_reduce(inst: Instance, orc, x: list[int]):
    """Delete the weight-one vertices of a farthest cover and fix its reach.

    Returns the reduced instance, its oracle and the deleted vertices by
    original name.
    """
    ones = {v for v in range(inst.n) if x[v] >= 2}
    reach = reachable_zero(inst, x)
    phi, init = dict(inst.phi), dict(orc.init)
    queue = deque(sorted(a for a in reach if a in phi))
    fixed: set[int] = set()
    while queue:
        u = queue.popleft()
        if u in fixed:
            continue
        fixed.add(u)
        for v, eid in inst.adj[u]:
            if v in ones or v in fixed:
                continue
            q = inst.apply(eid, u, phi[u])
            if q is None:
                continue
            if v in phi:
                if phi[v] != q:
                    raise RuntimeError("fixing a reachable vertex violated a terminal")
            else:
                phi[v] = q
                init[v] = orc.append(init[u], u, eid)
            if v in reach:
                queue.append(v)
    if fixed != reach:
        raise RuntimeError("reachable set was not fully fixed")
    new, norc = _rebuild(inst, orc, ones | fixed, phi, init)
    return new, norc, sorted(inst.orig[v] for v in ones)


def _is_equality(inst: Instance, eid: int) -> bool:
    k = inst.kind[eid]
    if k == IDENT:
        return True
    if k == PERM:
        fwd = inst.data[eid][0]
        return all(a == b for a, b in enumerate(fwd))
    return False


def branching_set(inst: Instance, strategy: str):
    """Fixings of which at least one keeps every deletion set alive.

    Returns ``None`` when the residual instance needs no branching because
    it is satisfiable as it stands.
    """
    if inst.n == 0:
        return None
    if strategy == "generic":
        vals = inst.values(0)
        if vals is None:
            raise ValueError("generic branching needs finite domains")
        return [(0, a) for a in vals]
    if strategy == "twofan":
        for eid in range(inst.m):
            if inst.kind[eid] == FAN:
                a, b = inst.data[eid]
                return [(inst.eu[eid], a), (inst.ev[eid], b)]
        if all(_is_equality(inst, eid) for eid in range(inst.m)):
            return None
        return branching_set(inst, "generic")
    if strategy == "group":
        if inst.group is None:
            raise ValueError("group branching needs a group instance")
        return [(0, inst.group.identity)]
    if strategy == "none":
        return None
    raise ValueError(f"unknown strategy {strategy!r}")


def _propagation(inst: Instance, u: int, a):
    """Generator: one edge per step; returns the assigned set or None."""
    val = {u: a}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        p = val[w]
        for v, eid in inst.adj[w]:
            yield
            q = inst.apply(eid, w, p)
            if q is None:
                continue
            have = val.get(v)
            if have is None:
                val[v] = q
                queue.append(v)
            elif have != q:
                return None
    return set(val)


def parallel_unit_propagation(inst: Instance, B, stats: SolveStats | None = None):
    """Interleave propagation of every fixing in ``B`` one step at a time.

    Returns ``(u, a, assigned)`` for the first fixing that finishes without
    conflict, or ``None`` if every fixing conflicts.
    """
    active = [(u, a, _propagation(inst, u, a)) for u, a in B]
    steps = 0
    while active:
        nxt = []
        for u, a, gen in active:
            try:
                next(gen)
                steps += 1
                nxt.append((u, a, gen))
            except StopIteration as stop:
                if stop.value is not None:
                    if stats is not None:
                        stats.propagation_steps += steps
                    return u, a, stop.value
        active = nxt
    if stats is not None:
        stats.propagation_steps += steps
    return None


class _Solver:
    def __init__(self, strategy: str, check: bool) -> None:
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}")
        self.strategy = strategy
        self.check = check
        self.stats = SolveStats()
        self.root = None

    def run(self, inst: Instance, orc, k: int, parent_gap2, depth: int):
        st = self.stats
        st.nodes += 1
        st.max_depth = max(st.max_depth, depth)
        if k < 0:
            st.pruned += 1
            return None
        res = farthest_cover(inst, orc, 2 * k, check=self.check)
        st.augmentations += res.augmentations
        if isinstance(res, ExceedsK):
            # the relaxation alone rules this call out: a leaf, not a branch
            st.pruned += 1
            if self.root is None:
                self.root = res
            return None
        scan = res.state.stats
        st.oracle_calls += scan.oracle_calls
        st.relaxations += scan.relaxations
        if self.root is None:
            self.root = res
        gap2 = 2 * k - res.size2
        if parent_gap2 is None:
            st.root_gap2 = gap2
        elif gap2 > parent_gap2 - 1:
            st.gap_violations += 1
            raise AssertionError("gap did not drop by a half on a recursive call")
        inst, orc, ones = persistency_reduce(inst, orc, res.cover)
        k -= len(ones)
        witness = list(ones)
        while True:
            if inst.n == 0:
                return witness
            if inst.phi:
                u = min(inst.phi)
                i1, o1 = delete_vertex(inst, orc, u)
                w = self.run(i1, o1, k - 1, gap2, depth + 1)
                if w is not None:
                    return witness + [inst.orig[u]] + w
                i2, o2, bad = fix_vertex(inst, orc, u)
                if k - len(bad) < 0:
                    return None
                w = self.run(i2, o2, k - len(bad), gap2, depth + 1)
                return None if w is None else witness + bad + w
            B = branching_set(inst, self.strategy)
            if B is None:
                return witness
            st.branching = max(st.branching, len(B))
            found = parallel_unit_propagation(inst, B, st)
            if found is not None:
                inst, orc = _rebuild(inst, orc, found[2], inst.phi, orc.init)
                continue
            for u, a in B:
                i3, o3 = assign_vertex(inst, orc, u, a)
                w = self.run(i3, o3, k, gap2, depth + 1)
                if w is not None:
                    return witness + w
            return None


def solve(inst: Instance, oracle, k: int, strategy: str = "generic",
          check: bool = False, validate: bool = True) -> SolveResult:
    """Decide whether at most ``k`` deletions make the instance satisfiable.

    ``witness`` lists deleted vertices by original name.  With ``validate``
    the witness is re-checked by plain propagation before returning.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    solver = _Solver(strategy, check)
    names = {inst.orig[v]: v for v in range(inst.n)}
    w = solver.run(inst, oracle, k, None, 0)
    root = solver.root
    out = SolveResult(w is not None, None if w is None else sorted(w), solver.stats)
    if isinstance(root, ExceedsK):
        out.lower_bound2 = root.size2
        out.root_packing = root.packing
    elif root is not None:
        out.root_cover = root.cover
        out.root_packing = root.packing
    if w is not None:
        if len(w) > k or len(set(w)) != len(w):
            raise RuntimeError("witness exceeds the budget")
        if validate and not satisfiable(inst, {names[v] for v in w}):
            raise RuntimeError("witness does not leave a satisfiable instance")
    return out
