"""Breadth-first search for augmenting paths and pairs.

The search grows alternating paths from every free terminal.  Free edges
are scanned one at a time.  Entering an integral path or a spoke reveals
a whole run of its vertices at once, and each run is remembered by a pair
of boundaries per path (one per spoke), so the total work stays linear in
the number of edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .constraints import Instance
from .packing import CYCLE, PATH, Packing


@dataclass
class AugmentingPath:
    """Alternating path as segments; odd ones free, even ones covered."""

    segments: list[list[int]]
    case: int


@dataclass
class AugmentingPair:
    p: list[list[int]]
    q: list[list[int]]


@dataclass
class SearchStats:
    oracle_calls: int = 0
    relaxations: int = 0
    cases: dict[str, int] = field(default_factory=dict)

    def hit(self, name: str) -> None:
        self.cases[name] = self.cases.get(name, 0) + 1


class SearchState:
    """Tables of one search over a fixed packing.

    The state stays valid after an exhausted run, so more sources can be
    added with ``restart_from``.  Between ``begin`` and ``rewind`` every
    change is journalled and can be undone.
    """

    def __init__(self, inst: Instance, oracle, pk: Packing) -> None:
        self.inst = inst
        self.orc = oracle
        self.pk = pk
        self.stats = SearchStats()
        n = inst.n
        self.base_n = n
        self.base_m = inst.m
        self.runs: list[list[int]] = []
        self.run_spoke: list[bool] = []
        self.run_ref: list[tuple] = []
        self.fwd: list[list] = []
        self.rev: list[list | None] = []
        self.lo: list[int] = []
        self.hi: list[int] = []
        self.vrun = [-1] * n
        self.vpos = [0] * n
        self.oncycle = bytearray(n)
        inyedge = bytearray(inst.m)
        self.yedge = inyedge
        for pid, p in pk.paths.items():
            self._add_run(p, False, (pid,))
        for wid, w in pk.wheels.items():
            for k, s in enumerate(w.spokes):
                self._add_run(s, True, (wid, k))
            for a in w.arcs:
                for v in a[1:-1]:
                    self.oncycle[v] = 1
                self._mark_edges(a)
        self.visited = bytearray(n)
        self.prev_u = [-1] * n
        self.prev_e = [-1] * n
        self.tail: list = [None] * n
        self.src = [-1] * n
        self.queue: deque[int] = deque()
        self._vlog: list[int] | None = None
        self._blog: list[tuple[int, int, int]] | None = None
        self._mark: tuple | None = None

    def _mark_edges(self, walk: list[int]) -> None:
        inst = self.inst
        for a, b in zip(walk, walk[1:]):
            self.yedge[inst.edge_id(a, b)] = 1

    def _add_run(self, verts: list[int], spoke: bool, ref: tuple) -> None:
        r = len(self.runs)
        self.runs.append(verts)
        self.run_spoke.append(spoke)
        self.run_ref.append(ref)
        for i, v in enumerate(verts):
            self.vrun[v] = r
            self.vpos[v] = i
        self._mark_edges(verts)
        fwd = self._prefix_tokens(verts)
        self.fwd.append(fwd)
        if spoke:
            self.rev.append(None)
            self.lo.append(0)
            self.hi.append(len(verts) - 1)
        else:
            self.rev.append(self._prefix_tokens(verts[::-1])[::-1])
            self.lo.append(0)
            self.hi.append(len(verts) - 1)

    def _prefix_tokens(self, verts: list[int]) -> list:
        inst, orc = self.inst, self.orc
        tok = orc.init[verts[0]]
        out = [tok]
        for a, b in zip(verts, verts[1:]):
            tok = orc.append(tok, a, inst.edge_id(a, b))
            if tok is None:
                raise ValueError("packing member is not implicational")
            out.append(tok)
        self.stats.oracle_calls += len(verts)
        return out

    # Journal.

    def begin(self) -> None:
        """Start journalling so that ``rewind`` can undo later changes."""
        if self._mark is not None:
            raise ValueError("journal already open")
        self._vlog, self._blog = [], []
        self._mark = (self.inst.n, self.inst.m)

    def commit(self) -> None:
        if self._mark is None:
            raise ValueError("no open journal")
        self._vlog = self._blog = self._mark = None

    def rewind(self) -> None:
        """Undo everything since ``begin``; rewinding twice is an error."""
        if self._mark is None:
            raise ValueError("no open journal")
        for v in self._vlog:
            self.visited[v] = 0
            self.prev_u[v] = self.prev_e[v] = self.src[v] = -1
            self.tail[v] = None
        for r, lo, hi in reversed(self._blog):
            self.lo[r], self.hi[r] = lo, hi
        self.queue.clear()
        n, m = self._mark
        for v in range(n, self.inst.n):
            self.orc.init.pop(v, None)
        self.inst.truncate(n, m)
        for arr in (self.vrun, self.vpos, self.prev_u, self.prev_e, self.tail, self.src):
            del arr[n:]
        del self.visited[n:], self.oncycle[n:], self.yedge[m:]
        self._vlog = self._blog = self._mark = None

    def _set_bounds(self, r: int, lo: int, hi: int) -> None:
        if self._blog is not None:
            self._blog.append((r, self.lo[r], self.hi[r]))
        self.lo[r], self.hi[r] = lo, hi

    def contract(self, v: int, token) -> int:
        """Add a terminal glued to ``v`` that stands for a walk ending at ``v``.

        ``token`` is the oracle token of that walk.  The new vertex joins
        ``v`` by an equality edge and is not yet searched from.
        """
        inst = self.inst
        t = inst.add_vertex(inst.dom[v], orig=-1 - inst.n)
        inst.add_equality(t, v)
        self.orc.init[t] = token
        self.vrun.append(-1)
        self.vpos.append(0)
        self.oncycle.append(0)
        self.yedge.append(0)
        self.visited.append(0)
        self.prev_u.append(-1)
        self.prev_e.append(-1)
        self.tail.append(None)
        self.src.append(-1)
        return t

    # Search.

    def _visit(self, v: int, u: int, eid: int, tok, src: int) -> None:
        self.visited[v] = 1
        self.prev_u[v] = u
        self.prev_e[v] = eid
        self.tail[v] = tok
        self.src[v] = src
        self.queue.append(v)
        if self._vlog is not None:
            self._vlog.append(v)

    def find_augmenting(self):
        """Search from every free terminal in ascending order.

        Returns an ``AugmentingPath``, an ``AugmentingPair``, or ``None``
        when no augmenting structure exists.
        """
        init = self.orc.init
        for s in sorted(init):
            if s < self.base_n and self.vrun[s] < 0 and not self.oncycle[s] \
                    and not self.visited[s]:
                out = self.restart_from(s)
                if out is not None:
                    return out
        return None

    def restart_from(self, s: int):
        """Search from one more source on top of the current tables."""
        if self.visited[s] or s not in self.orc.init:
            raise ValueError(f"vertex {s} is not a fresh terminal")
        self._visit(s, -1, -1, self.orc.init[s], s)
        return self._drain()

    def _drain(self):
        inst, orc = self.inst, self.orc
        adj, init = inst.adj, orc.init
        append, test = orc.append, orc.test
        visited, tail, src = self.visited, self.tail, self.src
        prev_e, yedge = self.prev_e, self.yedge
        vrun, vpos, oncycle = self.vrun, self.vpos, self.oncycle
        runs, fwd, rev, spoke = self.runs, self.fwd, self.rev, self.run_spoke
        queue, stats = self.queue, self.stats
        calls = 0
        relax = 0
        try:
            while queue:
                u = queue.popleft()
                tu = tail[u]
                su = src[u]
                for v, eid in adj[u]:
                    if yedge[eid]:
                        continue
                    relax += 1
                    calls += 1
                    a = append(tu, u, eid)
                    if a is None:
                        continue
                    if visited[v]:
                        if prev_e[u] == eid or src[v] != su:
                            # Same walk traversed back, or equivalent walks.
                            continue
                        calls += 1
                        if test(a, tail[v]):
                            if self.prev_u[v] < 0:
                                # Closed conflicting walk back to its source.
                                stats.hit("terminal")
                                return self._path(u, v, 1)
                            stats.hit("pair")
                            return self._pair(u, v, eid)
                        continue
                    r = vrun[v]
                    if r >= 0:
                        i = vpos[v]
                        run = runs[r]
                        fr = fwd[r]
                        if spoke[r]:
                            calls += 1
                            if test(a, fr[i]):
                                stats.hit("spoke")
                                return self._path(u, v, 3)
                            lo = self.lo[r]
                            for j in range(lo, i):
                                self._visit(run[j], u, eid, fr[j], su)
                            self._set_bounds(r, i, self.hi[r])
                            stats.hit("spoke-run")
                            continue
                        calls += 2
                        if test(a, rev[r][i]):
                            for j in range(self.lo[r], i):
                                self._visit(run[j], u, eid, fr[j], su)
                            self._set_bounds(r, i, self.hi[r])
                            stats.hit("path-run")
                        if test(a, fr[i]):
                            rr = rev[r]
                            for j in range(i + 1, self.hi[r] + 1):
                                self._visit(run[j], u, eid, rr[j], su)
                            self._set_bounds(r, self.lo[r], i)
                            stats.hit("path-run")
                        continue
                    if oncycle[v]:
                        stats.hit("cycle")
                        return self._path(u, v, 2)
                    if v in init:
                        calls += 1
                        if test(a, init[v]):
                            stats.hit("terminal")
                            return self._path(u, v, 1)
                        continue
                    self._visit(v, u, eid, a, su)
                    stats.hit("free")
            return None
        finally:
            stats.oracle_calls += calls
            stats.relaxations += relax

    # Reconstruction.

    def _run_between(self, w: int, c: int) -> list[int]:
        r = self.vrun[w]
        run = self.runs[r]
        i, j = self.vpos[w], self.vpos[c]
        if i < j:
            return run[i:j + 1]
        return run[j:i + 1][::-1]

    def walk_to(self, v: int) -> list[list[int]]:
        """Alternating path ``P(v)`` as a list of segments."""
        chain = []
        cur = v
        guard = 0
        while self.prev_u[cur] >= 0:
            u, eid = self.prev_u[cur], self.prev_e[cur]
            w = self.inst.other(eid, u)
            chain.append((u, w, cur))
            cur = u
            guard += 1
            if guard > 4 * self.inst.n + 4:
                raise RuntimeError("cyclic predecessor chain")
        chain.reverse()
        segs: list[list[int]] = []
        odd: list[int] | None = [cur]
        for u, w, c in chain:
            if odd is None:
                odd = [u]
            odd.append(w)
            if c != w:
                segs.append(odd)
                odd = None
                segs.append(self._run_between(w, c))
        if odd is not None and len(odd) > 1:
            segs.append(odd)
        return segs

    def _extend(self, u: int, v: int) -> list[list[int]]:
        segs = self.walk_to(u)
        if len(segs) % 2 == 1:
            segs[-1] = segs[-1] + [v]
        else:
            segs.append([u, v])
        return segs

    def _path(self, u: int, v: int, case: int) -> AugmentingPath:
        return AugmentingPath(self._extend(u, v), case)

    def _pair(self, u: int, v: int, eid: int) -> AugmentingPair:
        return AugmentingPair(self._extend(u, v), self.walk_to(v))

    def source_of(self, segs: list[list[int]]) -> int:
        return segs[0][0]

    def check_invariants(self) -> str | None:
        """Debug check of the search tables; returns the first violation.

        Checks boundary order, which run vertices are visited, and for every
        visited vertex that its alternating path alternates between free
        edges and runs read away from the boundaries, touches only visited
        or boundary vertices, and has odd length exactly off the packing
        and the terminals.
        """
        visited, runs = self.visited, self.runs
        bound = set()
        for r, run in enumerate(runs):
            lo, hi = self.lo[r], self.hi[r]
            if self.run_spoke[r]:
                bound.add(run[lo])
                for i, v in enumerate(run):
                    if bool(visited[v]) != (i < lo):
                        return f"spoke run {r}: visited flag of position {i} disagrees with {lo}"
                continue
            if lo > hi:
                return f"path run {r}: lower boundary {lo} above upper {hi}"
            bound.update((run[lo], run[hi]))
            for i, v in enumerate(run):
                if bool(visited[v]) != (i < lo or i > hi):
                    return f"path run {r}: visited flag of position {i} disagrees with [{lo}, {hi}]"
        inst = self.inst
        for v in range(inst.n):
            if not visited[v]:
                continue
            segs = self.walk_to(v)
            free_end = v not in self.orc.init and self.vrun[v] < 0 and not self.oncycle[v]
            if (len(segs) % 2 == 1) != free_end:
                return f"vertex {v}: {len(segs)} segments does not match its role"
            for k, seg in enumerate(segs):
                if any(not visited[w] and w not in bound for w in seg):
                    return f"vertex {v}: path leaves visited vertices and boundaries"
                if k % 2 == 0:
                    if any(self.yedge[inst.edge_id(a, b)] for a, b in zip(seg, seg[1:])):
                        return f"vertex {v}: free segment {k} uses a packing edge"
                    continue
                r = self.vrun[seg[0]]
                pos = [self.vpos[w] if self.vrun[w] == r else -1 for w in seg]
                if r < 0 or -1 in pos:
                    return f"vertex {v}: covered segment {k} leaves its run"
                down = all(b == a - 1 for a, b in zip(pos, pos[1:]))
                up = all(b == a + 1 for a, b in zip(pos, pos[1:]))
                if down and pos[0] <= self.lo[r]:
                    continue
                if up and not self.run_spoke[r] and pos[0] >= self.hi[r]:
                    continue
                return f"vertex {v}: covered segment {k} is not read away from a boundary"
        return None


def flatten(segs: list[list[int]]) -> list[int]:
    """Concatenate segments into one walk."""
    out = list(segs[0])
    for s in segs[1:]:
        out.extend(s[1:])
    return out
