"""Vertex-deletion problems expressed as 0/1/all deletion.

Each problem class knows how to encode itself into an ``Instance`` with a
matching oracle and branching strategy, and every problem has its own
checker that works on the original graph, so decoded witnesses are
verified without trusting the encoding.

Multigraph input is made simple before encoding: a repeated pair or a loop
is routed through fresh subdivision vertices joined by equality-style
constraints.  Deleting a subdivision vertex is reported as deleting the
lower endpoint of its edge, which is never worse on these hereditary
problems.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from .constraints import CyclicGroup, Instance, XorGroup
from .fpt import SolveResult, solve
from .oracle import NaiveOracle, NonMonoOracle, SubsetFVSOracle

FAMILIES = ("nulc", "tfd", "mod", "spd", "mwc", "gfvs", "sfvs", "nmct", "zoa")


@dataclass
class NodeUniqueLabelCover:
    n: int
    sigma: int
    edges: list[tuple[int, int, tuple[int, ...]]]
    family = "nulc"


@dataclass
class TwoFanDeletion:
    domains: list[int]
    fans: list[tuple[int, int, int, int]]
    family = "tfd"

    @property
    def n(self) -> int:
        return len(self.domains)


@dataclass
class MonoOrientableDeletion:
    n: int
    edges: list[tuple[int, int, int]]
    family = "mod"


@dataclass
class SubsetPseudoforestDeletion:
    n: int
    edges: list[tuple[int, int, bool]]
    family = "spd"


@dataclass
class NodeMultiwayCut:
    n: int
    edges: list[tuple[int, int]]
    terminals: list[int]
    family = "mwc"


@dataclass
class GroupFVS:
    n: int
    group: object
    edges: list[tuple[int, int, int]]
    family = "gfvs"


@dataclass
class SubsetFVS:
    n: int
    edges: list[tuple[int, int, bool]]
    family = "sfvs"


@dataclass
class NonMonoCycleTransversal:
    n: int
    edges: list[tuple[int, int, int]]
    family = "nmct"


@dataclass
class ZeroOneAll:
    domains: list[int]
    perms: list[tuple[int, int, tuple[int, ...]]]
    fans: list[tuple[int, int, int, int]]
    assignment: dict[int, int] = field(default_factory=dict)
    family = "zoa"

    @property
    def n(self) -> int:
        return len(self.domains)


@dataclass
class Encoded:
    """An encoded problem: instance, oracle and how to read witnesses back."""

    problem: object
    instance: Instance
    oracle: object
    strategy: str
    source: list[int]
    infeasible: bool = False
    aux: set[int] = field(default_factory=set)
    names: dict[int, str] = field(default_factory=dict)

    def label(self, v: int) -> str:
        """1-based name of an encoded vertex; helper vertices get a suffix."""
        if v in self.names:
            return self.names[v]
        name = str(self.source[v] + 1)
        return name + "'" if v in self.aux else name

    def decode(self, witness) -> list[int]:
        """Map encoded vertex names back to vertices of the problem."""
        out = set()
        for v in witness:
            s = self.source[v]
            if s < 0:
                raise RuntimeError(f"encoded vertex {v} has no original")
            out.add(s)
        return sorted(out)


@dataclass
class ProblemSolution:
    answer: bool
    witness: list[int] | None
    result: SolveResult | None


def _check_vertex(n: int, *vs: int) -> None:
    for v in vs:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range 0..{n - 1}")


def _simple(n: int, edges):
    """Route loops and repeated pairs through subdivision vertices.

    ``edges`` holds ``(u, v, payload)``.  Returns the vertex count, the
    original vertex behind each vertex, the domain donor of each vertex and
    ``(a, b, payload, primary)`` edges where only the primary edge of a
    routed chain carries the payload's constraint.
    """
    seen = set()
    source = list(range(n))
    donor = list(range(n))
    out = []
    count = n
    for u, v, pl in edges:
        _check_vertex(n, u, v)
        key = (min(u, v), max(u, v))
        if u == v:
            w1, w2 = count, count + 1
            count += 2
            source += [u, u]
            donor += [u, u]
            out += [(u, w1, pl, True), (w1, w2, pl, False), (w2, u, pl, False)]
        elif key in seen:
            w = count
            count += 1
            source.append(key[0])
            donor.append(v)
            out += [(u, w, pl, True), (w, v, pl, False)]
        else:
            seen.add(key)
            out.append((u, v, pl, True))
    return count, source, donor, out


def _domain_instance(count, donor, domains) -> Instance:
    return Instance([domains[donor[v]] for v in range(count)])


def _encode_nulc(p: NodeUniqueLabelCover) -> Encoded:
    if p.sigma < 1:
        raise ValueError("alphabet must be non-empty")
    count, source, donor, edges = _simple(p.n, p.edges)
    inst = _domain_instance(count, donor, [p.sigma] * p.n)
    for a, b, table, primary in edges:
        if primary:
            inst.add_permutation(a, b, table)
        else:
            inst.add_equality(a, b)
    return Encoded(p, inst, NaiveOracle(inst, {}), "generic", source)


def _encode_tfd(p: TwoFanDeletion) -> Encoded:
    if any(d < 1 for d in p.domains):
        raise ValueError("domains must be non-empty")
    count, source, donor, edges = _simple(p.n, [(u, v, (a, b)) for u, v, a, b in p.fans])
    inst = _domain_instance(count, donor, p.domains)
    for a, b, (x, y), primary in edges:
        if primary:
            inst.add_fan(a, b, x, y)
        else:
            inst.add_equality(a, b)
    return Encoded(p, inst, NaiveOracle(inst, {}), "twofan", source)


def _colours(edges) -> dict[int, int]:
    return {c: i for i, c in enumerate(sorted({e[2] for e in edges}))}


def _encode_mod(p: MonoOrientableDeletion) -> Encoded:
    col = _colours(p.edges)
    L = max(1, len(col))
    count, source, donor, edges = _simple(p.n, [(u, v, col[c]) for u, v, c in p.edges])
    inst = Instance([L] * count)
    for a, b, c, primary in edges:
        if primary:
            inst.add_fan(a, b, c, c)
        else:
            inst.add_equality(a, b)
    return Encoded(p, inst, NaiveOracle(inst, {}), "twofan", source)


def _encode_spd(p: SubsetPseudoforestDeletion) -> Encoded:
    marked = [i for i, e in enumerate(p.edges) if e[2]]
    sid = {i: j for j, i in enumerate(marked)}
    todo = []
    for i, (u, v, s) in enumerate(p.edges):
        _check_vertex(p.n, u, v)
        if s:
            todo.append((u, v, sid[i]))
    plain = [(u, v, None) for u, v, s in p.edges if not s and u != v]
    # Repeated unmarked pairs are the same equality, so keep one of each.
    uniq = {}
    for u, v, _ in plain:
        uniq.setdefault((min(u, v), max(u, v)), (u, v, None))
    count, source, donor, edges = _simple(p.n, list(uniq.values()) + todo)
    inst = Instance([max(1, len(marked))] * count)
    for a, b, e, primary in edges:
        if primary and e is not None:
            inst.add_fan(a, b, e, e)
        else:
            inst.add_equality(a, b)
    return Encoded(p, inst, NaiveOracle(inst, {}), "twofan", source)


def _encode_mwc(p: NodeMultiwayCut) -> Encoded:
    term = list(p.terminals)
    if len(set(term)) != len(term):
        raise ValueError("terminals must be distinct")
    _check_vertex(p.n, *term)
    tidx = {t: i for i, t in enumerate(term)}
    T = max(1, len(term))
    inst = Instance()
    name = {}
    source = []
    for v in range(p.n):
        if v not in tidx:
            name[v] = inst.add_vertex(T, len(source))
            source.append(v)
    infeasible = False
    seen = set()
    names = {}
    for u, v in p.edges:
        _check_vertex(p.n, u, v)
        key = (min(u, v), max(u, v))
        if u == v or key in seen:
            continue
        seen.add(key)
        if u in tidx and v in tidx:
            infeasible = True
            continue
        if v in tidx:
            u, v = v, u
        if u in tidx:
            # Split copy of terminal u hanging off v; deleting it means deleting v.
            s = inst.add_vertex(T, len(source))
            source.append(v)
            names[s] = f"{u + 1}'"
            inst.add_equality(s, name[v])
            inst.assign(s, tidx[u])
        else:
            inst.add_equality(name[u], name[v])
    aux = {v for v in range(inst.n) if v in inst.phi}
    return Encoded(p, inst, NaiveOracle(inst), "none", source, infeasible, aux, names)


def _encode_gfvs(p: GroupFVS) -> Encoded:
    g = p.group
    elems = g.elements()
    for u, v, lab in p.edges:
        if elems is not None and lab not in elems:
            raise ValueError(f"label {lab} is not a group element")
    todo = [(u, v, lab) for u, v, lab in p.edges if not (u == v and lab == g.identity)]
    count, source, donor, edges = _simple(p.n, todo)
    inst = Instance([0] * count, group=g)
    for a, b, lab, primary in edges:
        inst.add_group_edge(a, b, lab if primary else g.identity)
    return Encoded(p, inst, NaiveOracle(inst, {}), "group", source)


def _encode_sfvs(p: SubsetFVS, specialized: bool = True) -> Encoded:
    todo = []
    for i, (u, v, s) in enumerate(p.edges):
        if u == v and not s:
            _check_vertex(p.n, u)
            continue
        todo.append((u, v, i if s else -1))
    count, source, donor, edges = _simple(p.n, todo)
    inst = Instance([0] * count, group=XorGroup())
    for a, b, sid, primary in edges:
        marked = primary and sid >= 0
        inst.add_group_edge(a, b, (1 << sid) if marked else 0, tag=sid if marked else -1)
    orc = SubsetFVSOracle(inst, {}) if specialized else NaiveOracle(inst, {})
    return Encoded(p, inst, orc, "group", source)


def _encode_nmct(p: NonMonoCycleTransversal, specialized: bool = True) -> Encoded:
    col = _colours(p.edges)
    L = max(1, len(col))
    todo = []
    for u, v, c in p.edges:
        _check_vertex(p.n, u, v)
        if u != v:
            todo.append((u, v, col[c]))
    count, source, donor, edges = _simple(p.n, todo)
    inst = Instance([0] * count, group=XorGroup())
    for a, b, c, _ in edges:
        # A routed edge keeps its colour on both halves.
        lab = (1 << (a * L + c)) | (1 << (b * L + c))
        inst.add_group_edge(a, b, lab, tag=c)
    orc = NonMonoOracle(inst, L, {}) if specialized else NaiveOracle(inst, {})
    return Encoded(p, inst, orc, "group", source)


def _encode_zoa(p: ZeroOneAll) -> Encoded:
    if any(d < 1 for d in p.domains):
        raise ValueError("domains must be non-empty")
    seen = set()
    for u, v, *_ in itertools.chain(p.perms, p.fans):
        _check_vertex(p.n, u, v)
        key = (min(u, v), max(u, v))
        if u != v and key in seen:
            raise ValueError(f"two constraints on the pair {u} {v}")
        seen.add(key)
    todo = [(u, v, ("perm", t)) for u, v, t in p.perms]
    todo += [(u, v, ("fan", (a, b))) for u, v, a, b in p.fans]
    count, source, donor, edges = _simple(p.n, todo)
    inst = _domain_instance(count, donor, p.domains)
    for a, b, (kind, data), primary in edges:
        if not primary:
            inst.add_equality(a, b)
        elif kind == "perm":
            inst.add_permutation(a, b, data)
        else:
            inst.add_fan(a, b, *data)
    for v, val in p.assignment.items():
        _check_vertex(p.n, v)
        inst.assign(v, val)
    return Encoded(p, inst, NaiveOracle(inst), "generic", source)


def encode(problem, specialized: bool = True) -> Encoded:
    """Encode a problem; ``specialized`` picks the constant-time oracles."""
    out = _encode(problem, specialized)
    if problem.family != "mwc":
        out.aux = set(range(problem.n, out.instance.n))
    return out


def _encode(problem, specialized: bool) -> Encoded:
    fam = getattr(problem, "family", None)
    if fam == "sfvs":
        return _encode_sfvs(problem, specialized)
    if fam == "nmct":
        return _encode_nmct(problem, specialized)
    enc = {
        "nulc": _encode_nulc, "tfd": _encode_tfd, "mod": _encode_mod,
        "spd": _encode_spd, "mwc": _encode_mwc, "gfvs": _encode_gfvs,
        "zoa": _encode_zoa,
    }.get(fam)
    if enc is None:
        raise ValueError(f"unknown problem {problem!r}")
    return enc(problem)


def pin(enc: Encoded, v: int, value=None) -> Encoded:
    """Rooted variant: also pin encoded vertex ``v`` (default: identity or 0)."""
    inst = enc.instance.copy()
    if value is None:
        value = inst.group.identity if inst.group is not None else 0
    inst.assign(v, value)
    init = {a: enc.oracle.init[a] for a in enc.instance.phi}
    init[v] = enc.oracle.fresh(value)
    return Encoded(enc.problem, inst, enc.oracle.rebind(inst, init), enc.strategy,
                   enc.source, enc.infeasible, enc.aux, enc.names)


def solve_problem(problem, k: int, specialized: bool = True, strategy: str | None = None,
                  check: bool = False) -> ProblemSolution:
    """Decide the problem with budget ``k`` and verify any witness directly."""
    if k < 0:
        raise ValueError("k must be non-negative")
    enc = encode(problem, specialized)
    if enc.infeasible:
        return ProblemSolution(False, None, None)
    res = solve(enc.instance, enc.oracle, k, strategy or enc.strategy, check=check)
    if not res.answer:
        return ProblemSolution(False, None, res)
    wit = enc.decode(res.witness)
    if len(wit) > k or not is_solution(problem, wit):
        raise RuntimeError(f"decoded witness {wit} fails the problem's own check")
    return ProblemSolution(True, wit, res)


# Checkers on the original problem data.


def _components(n, removed, pairs):
    adj = [[] for _ in range(n)]
    for i, (u, v) in enumerate(pairs):
        if u not in removed and v not in removed:
            adj[u].append((v, i))
            adj[v].append((u, i))
    return adj


def _potentials(n, removed, edges, step, roots):
    """Try to label every component; ``step(val, edge, forward)`` -> value."""
    adj = _components(n, removed, [(u, v) for u, v, *_ in edges])
    val: dict[int, object] = {}
    for r in range(n):
        if r in removed or r in val:
            continue
        ok = False
        for a in roots:
            trial = {r: a}
            queue = deque([r])
            good = True
            while queue and good:
                u = queue.popleft()
                for v, i in adj[u]:
                    e = edges[i]
                    q = step(trial[u], e, e[0] == u)
                    if v not in trial:
                        trial[v] = q
                        queue.append(v)
                    elif trial[v] != q:
                        good = False
                        break
            if good:
                val.update(trial)
                ok = True
                break
        if not ok:
            return False
    return True


def _check_nulc(p: NodeUniqueLabelCover, X) -> bool:
    return _backtrack(p.n, X, [p.sigma] * p.n,
                      [(u, v, lambda a, b, t=t: t[a] == b) for u, v, t in p.edges])


def _backtrack(n, X, domains, cons) -> bool:
    """Plain backtracking over assignments of the kept vertices."""
    keep = [v for v in range(n) if v not in X]
    by = {v: [] for v in keep}
    order = {v: i for i, v in enumerate(keep)}
    for u, v, ok in cons:
        if u in X or v in X:
            continue
        later = u if order[u] >= order[v] else v
        by[later].append((u, v, ok))
    val: dict[int, int] = {}

    def go(i: int) -> bool:
        if i == len(keep):
            return True
        w = keep[i]
        for a in range(domains[w]):
            val[w] = a
            if all(ok(val[u], val[v]) for u, v, ok in by[w]) and go(i + 1):
                return True
        del val[w]
        return False

    return go(0)


def _check_tfd(p: TwoFanDeletion, X) -> bool:
    cons = [(u, v, lambda x, y, a=a, b=b: x == a or y == b) for u, v, a, b in p.fans]
    return _backtrack(p.n, X, p.domains, cons)


def _check_zoa(p: ZeroOneAll, X) -> bool:
    cons = [(u, v, lambda x, y, t=t: t[x] == y) for u, v, t in p.perms]
    cons += [(u, v, lambda x, y, a=a, b=b: x == a or y == b) for u, v, a, b in p.fans]
    doms = list(p.domains)
    # Pinned vertices get a one-value domain through a shifted lookup.
    pinned = {v: a for v, a in p.assignment.items() if v not in X}
    cons += [(v, v, lambda x, y, a=a: x == a) for v, a in pinned.items()]
    return _backtrack(p.n, X, doms, cons)


def _check_mod(p: MonoOrientableDeletion, X) -> bool:
    """Search over edge orientations with per-vertex incoming colours."""
    live = [(u, v, c) for u, v, c in p.edges if u not in X and v not in X]
    into: dict[int, list] = {}

    def go(i: int) -> bool:
        if i == len(live):
            return True
        u, v, c = live[i]
        for head in ((u,) if u == v else (u, v)):
            have = into.get(head)
            if have is None or have[0] == c:
                into[head] = [c, (have[1] if have else 0) + 1]
                if go(i + 1):
                    return True
                into[head][1] -= 1
                if into[head][1] == 0:
                    del into[head]
        return False

    return go(0)


def _check_spd(p: SubsetPseudoforestDeletion, X) -> bool:
    parent = list(range(p.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v, s in p.edges:
        if not s and u not in X and v not in X:
            parent[find(u)] = find(v)
    g = nx.MultiGraph()
    g.add_nodes_from({find(v) for v in range(p.n) if v not in X})
    for u, v, s in p.edges:
        if s and u not in X and v not in X:
            g.add_edge(find(u), find(v))
    for comp in nx.connected_components(g):
        if g.subgraph(comp).number_of_edges() > len(comp):
            return False
    return True


def _check_mwc(p: NodeMultiwayCut, X) -> bool:
    T = set(p.terminals)
    if T & set(X):
        return False
    adj = _components(p.n, set(X), p.edges)
    for t in p.terminals:
        seen = {t}
        queue = deque([t])
        while queue:
            u = queue.popleft()
            for v, _ in adj[u]:
                if v not in seen:
                    if v in T:
                        return False
                    seen.add(v)
                    queue.append(v)
    return True


def _check_gfvs(p: GroupFVS, X) -> bool:
    g = p.group

    def step(a, e, fwd):
        return g.op(a, e[2] if fwd else g.inv(e[2]))

    for u, v, lab in p.edges:
        if u == v and u not in X and lab != g.identity:
            return False
    loopless = [e for e in p.edges if e[0] != e[1]]
    return _potentials(p.n, set(X), loopless, step, [g.identity])


def _midpoint_graph(n, X, edges):
    """Simple graph with every edge split by a node ``('e', i)``."""
    g = nx.Graph()
    g.add_nodes_from(v for v in range(n) if v not in X)
    for i, (u, v, *_) in enumerate(edges):
        if u != v and u not in X and v not in X:
            g.add_edge(u, ("e", i))
            g.add_edge(("e", i), v)
    return g


def _check_sfvs(p: SubsetFVS, X) -> bool:
    for u, v, s in p.edges:
        if s and u == v and u not in X:
            return False
    g = _midpoint_graph(p.n, X, p.edges)
    bridges = {frozenset(b) for b in nx.bridges(g)}
    for i, (u, v, s) in enumerate(p.edges):
        if s and u != v and u not in X and v not in X:
            if frozenset((u, ("e", i))) not in bridges:
                return False
    return True


def _check_nmct(p: NonMonoCycleTransversal, X) -> bool:
    g = _midpoint_graph(p.n, X, p.edges)
    for block in nx.biconnected_components(g):
        if len(block) < 3:
            continue
        cols = {p.edges[b[1]][2] for b in block if isinstance(b, tuple)}
        if len(cols) > 1:
            return False
    return True


_CHECKERS = {
    "nulc": _check_nulc, "tfd": _check_tfd, "mod": _check_mod, "spd": _check_spd,
    "mwc": _check_mwc, "gfvs": _check_gfvs, "sfvs": _check_sfvs, "nmct": _check_nmct,
    "zoa": _check_zoa,
}


def is_solution(problem, X) -> bool:
    """Whether deleting ``X`` solves the problem, checked on its own terms."""
    X = set(X)
    if any(not 0 <= v < problem.n for v in X):
        raise ValueError("deletion set names unknown vertices")
    return _CHECKERS[problem.family](problem, X)


def brute_min_solution(problem, limit: int = 14):
    """Smallest deletion set by enumeration, or ``None`` if none exists."""
    if problem.n > limit:
        raise ValueError(f"brute force is limited to {limit} vertices")
    cand = list(range(problem.n))
    if problem.family == "mwc":
        T = set(problem.terminals)
        cand = [v for v in cand if v not in T]
    for s in range(len(cand) + 1):
        for X in itertools.combinations(cand, s):
            if is_solution(problem, X):
                return list(X)
    return None


# Seeded generators.


def _graph(rng, n, density, multi):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    if multi and edges:
        for _ in range(rng.randint(0, 2)):
            if rng.random() < 0.5:
                edges.append(rng.choice(edges))
            else:
                v = rng.randrange(n)
                edges.append((v, v))
    rng.shuffle(edges)
    return edges


def generate(family: str, seed: int, n: int | None = None, density: float | None = None,
             multi: bool = True):
    """A small random instance of ``family``; equal seeds give equal instances."""
    rng = random.Random(f"{family}:{seed}")
    n = rng.randint(3, 9) if n is None else n
    dens = rng.uniform(0.2, 0.6) if density is None else density
    if family == "nulc":
        sigma = rng.randint(2, 3)
        edges = []
        for u, v in _graph(rng, n, dens, multi):
            t = list(range(sigma))
            if rng.random() < 0.5:
                rng.shuffle(t)
            edges.append((u, v, tuple(t)))
        return NodeUniqueLabelCover(n, sigma, edges)
    if family == "tfd":
        dens = rng.uniform(0.4, 0.9) if density is None else density
        doms = [rng.choice((2, 2, 3)) for _ in range(n)]
        fans = [(u, v, rng.randrange(doms[u]), rng.randrange(doms[v]))
                for u, v in _graph(rng, n, dens, multi)]
        return TwoFanDeletion(doms, fans)
    if family in ("mod", "nmct"):
        if family == "mod" and density is None:
            dens = rng.uniform(0.4, 0.9)
        L = rng.randint(1, 3) if family == "nmct" else rng.randint(2, 4)
        edges = [(u, v, rng.randrange(L)) for u, v in _graph(rng, n, dens, multi)]
        cls = MonoOrientableDeletion if family == "mod" else NonMonoCycleTransversal
        return cls(n, edges)
    if family in ("spd", "sfvs"):
        edges = [(u, v, rng.random() < 0.5) for u, v in _graph(rng, n, dens, multi)]
        cls = SubsetPseudoforestDeletion if family == "spd" else SubsetFVS
        return cls(n, edges)
    if family == "mwc":
        t = rng.randint(2, min(4, n))
        term = rng.sample(range(n), t)
        edges = _graph(rng, n, dens, multi)
        if rng.random() < 0.8:
            T = set(term)
            edges = [(u, v) for u, v in edges if not (u in T and v in T)]
        return NodeMultiwayCut(n, edges, term)
    if family == "gfvs":
        q = rng.randint(2, 4)
        edges = [(u, v, 0 if rng.random() < 0.4 else rng.randrange(q))
                 for u, v in _graph(rng, n, dens, multi)]
        return GroupFVS(n, CyclicGroup(q), edges)
    if family == "zoa":
        dens = rng.uniform(0.3, 0.8) if density is None else density
        doms = [rng.randint(1, 3) for _ in range(n)]
        perms, fans = [], []
        for u, v in _graph(rng, n, dens, False):
            if doms[u] == doms[v] and rng.random() < 0.6:
                t = list(range(doms[u]))
                if rng.random() < 0.8:
                    rng.shuffle(t)
                perms.append((u, v, tuple(t)))
            else:
                fans.append((u, v, rng.randrange(doms[u]), rng.randrange(doms[v])))
        pinned = rng.sample(range(n), rng.randint(1, min(4, n)))
        return ZeroOneAll(doms, perms, fans, {v: rng.randrange(doms[v]) for v in pinned})
    raise ValueError(f"unknown family {family!r}")


def chain_mwc(length: int, terminals: int = 3) -> NodeMultiwayCut:
    """A path with terminals spread evenly; its minimum cut has terminals-1 vertices."""
    if length < 2 * terminals:
        raise ValueError("path too short for the terminals")
    edges = [(i, i + 1) for i in range(length - 1)]
    term = [round(i * (length - 1) / (terminals - 1)) for i in range(terminals)]
    return NodeMultiwayCut(length, edges, term)


def grid_mwc(columns: int, rows: int = 2) -> NodeMultiwayCut:
    """A ``rows x columns`` grid with one terminal glued to each short side."""
    if columns < 3 or rows < 1:
        raise ValueError("grid too small")
    idx = lambda r, c: 2 + r * columns + c  # noqa: E731
    edges = []
    for r in range(rows):
        for c in range(columns):
            if c + 1 < columns:
                edges.append((idx(r, c), idx(r, c + 1)))
            if r + 1 < rows:
                edges.append((idx(r, c), idx(r + 1, c)))
        edges.append((0, idx(r, 0)))
        edges.append((1, idx(r, columns - 1)))
    return NodeMultiwayCut(2 + rows * columns, edges, [0, 1])


def chain_sfvs(cycles: int, size: int = 4) -> SubsetFVS:
    """Cycles of ``size`` vertices strung on a path, one marked edge each."""
    if cycles < 1 or size < 3:
        raise ValueError("need at least one cycle of length three")
    edges = []
    for i in range(cycles):
        base = i * size
        for j in range(size):
            edges.append((base + j, base + (j + 1) % size, j == 0))
        if i + 1 < cycles:
            edges.append((base + size // 2, base + size, False))
    return SubsetFVS(cycles * size, edges)


def violation(problem, X) -> str | None:
    """``None`` if ``X`` solves the problem, else a one-line reason (1-based ids)."""
    X = set(X)
    bad = sorted(v + 1 for v in X if not 0 <= v < problem.n)
    if bad:
        return f"unknown vertices {bad}"
    fam = problem.family
    if fam == "mwc":
        hit = sorted(t + 1 for t in X & set(problem.terminals))
        if hit:
            return f"deletes terminals {hit}"
        adj = _components(problem.n, X, problem.edges)
        T = set(problem.terminals)
        for t in problem.terminals:
            seen = {t}
            queue = deque([t])
            while queue:
                u = queue.popleft()
                for v, _ in adj[u]:
                    if v in T and v != t:
                        return f"terminals {t + 1} and {v + 1} remain connected"
                    if v not in seen:
                        seen.add(v)
                        queue.append(v)
        return None
    if is_solution(problem, X):
        return None
    if fam == "sfvs":
        g = _midpoint_graph(problem.n, X, problem.edges)
        bridges = {frozenset(b) for b in nx.bridges(g)}
        for i, (u, v, s) in enumerate(problem.edges):
            if s and u not in X and v not in X and (
                    u == v or frozenset((u, ("e", i))) not in bridges):
                return f"marked edge {u + 1}-{v + 1} still lies on a cycle"
    if fam == "nmct":
        return "a cycle with two colours remains"
    reason = {
        "nulc": "no labelling satisfies the remaining permutations",
        "tfd": "the remaining two-fans are unsatisfiable",
        "zoa": "the remaining constraints have no assignment extending the pins",
        "mod": "the remaining graph has no monochromatic orientation",
        "spd": "a contracted component has more marked edges than vertices",
        "gfvs": "a cycle with a non-identity label remains",
    }
    return reason[fam]
