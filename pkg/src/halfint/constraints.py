"""Binary 0/1/all constraint systems.

An instance is a graph whose vertices carry finite domains (or elements of
a group) and whose edges carry constraints of three shapes: permutations,
two-fans and group labels.  A partial assignment ``phi`` pins the vertices
of the terminal set.  Walks are plain lists of vertex ids.
"""

from __future__ import annotations

from typing import Iterable, Sequence

# Result of applying a constraint that leaves the far endpoint unconstrained.
ALL = None

PERM, FAN, GROUP, IDENT = 0, 1, 2, 3


class CyclicGroup:
    """Additive group of integers modulo ``q``."""

    identity = 0

    def __init__(self, q: int) -> None:
        if q < 1:
            raise ValueError("group order must be positive")
        self.q = q

    def op(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def inv(self, a: int) -> int:
        return (-a) % self.q

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"CyclicGroup({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicGroup) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("Z", self.q))


class XorGroup:
    """Elementary abelian 2-group of finite subsets, stored as int bitmasks."""

    identity = 0

    def op(self, a: int, b: int) -> int:
        return a ^ b

    def inv(self, a: int) -> int:
        return a

    def elements(self) -> None:
        # Too large to enumerate in general.
        return None

    def __repr__(self) -> str:
        return "XorGroup()"

    def __eq__(self, other) -> bool:
        return isinstance(other, XorGroup)

    def __hash__(self) -> int:
        return hash("xor")


class TableGroup:
    """Finite group given by its Cayley table over ``0..q-1``."""

    def __init__(self, table: Sequence[Sequence[int]]) -> None:
        q = len(table)
        rows = [tuple(r) for r in table]
        if q == 0 or any(len(r) != q for r in rows):
            raise ValueError("Cayley table must be square and non-empty")
        for r in rows:
            if sorted(r) != list(range(q)):
                raise ValueError("Cayley table rows must be permutations")
        ident = [e for e in range(q) if all(rows[e][x] == x for x in range(q))]
        if len(ident) != 1:
            raise ValueError("Cayley table has no unique identity")
        self.identity = ident[0]
        self.table = rows
        self.q = q
        self._inv = [0] * q
        for a in range(q):
            found = [b for b in range(q) if rows[a][b] == self.identity]
            if len(found) != 1:
                raise ValueError("Cayley table lacks inverses")
            self._inv[a] = found[0]
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                        raise ValueError("Cayley table is not associative")

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def elements(self) -> range:
        return range(self.q)

    def __eq__(self, other) -> bool:
        return isinstance(other, TableGroup) and other.table == self.table

    def __hash__(self) -> int:
        return hash(tuple(self.table))


class Instance:
    """A 0/1/all constraint graph with a partial assignment.

    Vertices are ``0..n-1``.  ``dom[v]`` is the domain size of ``v``; for
    group instances every domain is the group and ``dom`` holds 0.  Edge
    ``eid`` joins ``eu[eid]`` and ``ev[eid]``; the constraint is read in the
    ``eu -> ev`` direction and its reverse is derived.  ``tag[eid]`` is an
    opaque per-edge label used by specialised oracles, and ``orig[v]`` is a
    stable vertex name that survives deletions and fixings.
    """

    def __init__(self, domains: Iterable[int] = (), group=None) -> None:
        self.group = group
        self.dom: list[int] = []
        self.adj: list[list[tuple[int, int]]] = []
        self.orig: list[int] = []
        self.eu: list[int] = []
        self.ev: list[int] = []
        self.kind: list[int] = []
        self.data: list = []
        self.tag: list = []
        self.phi: dict[int, int] = {}
        self._eindex: dict[tuple[int, int], int] = {}
        for d in domains:
            self.add_vertex(d)

    # Construction.

    @property
    def n(self) -> int:
        return len(self.dom)

    @property
    def m(self) -> int:
        return len(self.eu)

    def add_vertex(self, dom: int = 0, orig: int | None = None) -> int:
        if self.group is None and dom < 1:
            raise ValueError("domain size must be positive")
        v = len(self.dom)
        self.dom.append(dom)
        self.adj.append([])
        self.orig.append(v if orig is None else orig)
        return v

    def _check_pair(self, u: int, v: int) -> None:
        n = self.n
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) references an unknown vertex")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if (min(u, v), max(u, v)) in self._eindex:
            raise ValueError(f"duplicate constraint on ({u}, {v})")

    def _push(self, u: int, v: int, kind: int, data, tag) -> int:
        eid = len(self.eu)
        self.eu.append(u)
        self.ev.append(v)
        self.kind.append(kind)
        self.data.append(data)
        self.tag.append(tag)
        self.adj[u].append((v, eid))
        self.adj[v].append((u, eid))
        self._eindex[(min(u, v), max(u, v))] = eid
        return eid

    def add_permutation(self, u: int, v: int, table: Sequence[int], tag=-1) -> int:
        """Add ``phi(v) = table[phi(u)]``; ``table`` must be a bijection."""
        self._check_pair(u, v)
        if self.group is not None:
            raise ValueError("group instances take group labels")
        fwd = tuple(table)
        if len(fwd) != self.dom[u] or self.dom[u] != self.dom[v]:
            raise ValueError("permutation size does not match the domains")
        if sorted(fwd) != list(range(len(fwd))):
            raise ValueError("permutation table is not a bijection")
        inv = [0] * len(fwd)
        for a, b in enumerate(fwd):
            inv[b] = a
        return self._push(u, v, PERM, (fwd, tuple(inv)), tag)

    def add_fan(self, u: int, v: int, a: int, b: int, tag=-1) -> int:
        """Add the two-fan ``phi(u) = a or phi(v) = b``."""
        self._check_pair(u, v)
        if self.group is not None:
            raise ValueError("group instances take group labels")
        if not (0 <= a < self.dom[u] and 0 <= b < self.dom[v]):
            raise ValueError("two-fan value outside the domain")
        return self._push(u, v, FAN, (a, b), tag)

    def add_group_edge(self, u: int, v: int, label: int, tag=-1) -> int:
        """Add ``phi(v) = phi(u) * label`` for a group instance."""
        self._check_pair(u, v)
        if self.group is None:
            raise ValueError("group labels need a group instance")
        g = self.group
        return self._push(u, v, GROUP, (label, g.inv(label)), tag)

    def add_equality(self, u: int, v: int, tag=-1) -> int:
        """Add ``phi(u) = phi(v)``."""
        self._check_pair(u, v)
        if self.dom[u] != self.dom[v]:
            raise ValueError("equality needs equal domains")
        return self._push(u, v, IDENT, None, tag)

    def assign(self, v: int, value: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"unknown vertex {v}")
        if self.group is None and not 0 <= value < self.dom[v]:
            raise ValueError(f"value {value} outside the domain of {v}")
        self.phi[v] = value

    def truncate(self, n: int, m: int) -> None:
        """Drop every vertex ``>= n`` and edge ``>= m`` added after a mark."""
        for eid in range(self.m - 1, m - 1, -1):
            u, v = self.eu[eid], self.ev[eid]
            self.adj[u].pop()
            self.adj[v].pop()
            del self._eindex[(min(u, v), max(u, v))]
        del self.eu[m:], self.ev[m:], self.kind[m:], self.data[m:], self.tag[m:]
        for v in range(n, self.n):
            self.phi.pop(v, None)
        del self.dom[n:], self.adj[n:], self.orig[n:]

    # Queries.

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._eindex[(min(u, v), max(u, v))]
        except KeyError:
            raise ValueError(f"no constraint between {u} and {v}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._eindex

    def other(self, eid: int, u: int) -> int:
        return self.ev[eid] if self.eu[eid] == u else self.eu[eid]

    def apply(self, eid: int, frm: int, p: int):
        """Push value ``p`` of ``frm`` across edge ``eid``; ``ALL`` if free."""
        k = self.kind[eid]
        if k == IDENT:
            return p
        if k == PERM:
            fwd, inv = self.data[eid]
            return fwd[p] if frm == self.eu[eid] else inv[p]
        if k == FAN:
            a, b = self.data[eid]
            if frm == self.eu[eid]:
                return ALL if p == a else b
            return ALL if p == b else a
        lab, ilab = self.data[eid]
        return self.group.op(p, lab if frm == self.eu[eid] else ilab)

    def values(self, v: int):
        """Domain of ``v`` as an iterable, or ``None`` when not enumerable."""
        if self.group is None:
            return range(self.dom[v])
        return self.group.elements()

    def subgraph(self, removed, phi: dict[int, int]) -> tuple[Instance, list[int]]:
        """Instance induced on the kept vertices, with a new assignment.

        Returns the new instance and the old-to-new index map (``-1`` for
        removed vertices).  ``phi`` is given in old indices.
        """
        out = Instance(group=self.group)
        remap = [-1] * self.n
        for v in range(self.n):
            if v not in removed:
                remap[v] = out.add_vertex(self.dom[v], self.orig[v])
        for eid in range(self.m):
            a, b = remap[self.eu[eid]], remap[self.ev[eid]]
            if a >= 0 and b >= 0:
                out._push(a, b, self.kind[eid], self.data[eid], self.tag[eid])
        for v, val in phi.items():
            if remap[v] >= 0:
                out.phi[remap[v]] = val
        return out, remap

    def copy(self) -> Instance:
        return self.subgraph(set(), dict(self.phi))[0]


def apply_constraint(inst: Instance, u: int, v: int, p: int):
    """Value forced on ``v`` when ``u`` takes ``p``, or ``ALL``."""
    return inst.apply(inst.edge_id(u, v), u, p)


def imp_walk(inst: Instance, walk: Sequence[int]):
    """Value implied at the end of ``walk`` by the assignment at its start.

    Returns ``None`` when the walk is not implicational, that is when its
    start is unassigned or some step leaves the next vertex unconstrained.
    """
    if not walk:
        raise ValueError("empty walk")
    p = inst.phi.get(walk[0])
    if p is None:
        return None
    for u, v in zip(walk, walk[1:]):
        p = inst.apply(inst.edge_id(u, v), u, p)
        if p is None:
            return None
    return p


def is_conflicting(inst: Instance, walk: Sequence[int]) -> bool:
    """True if ``walk`` is implicational and disagrees with its end's value."""
    p = imp_walk(inst, walk)
    t = inst.phi.get(walk[-1])
    return p is not None and t is not None and p != t


def in_family(inst: Instance, walk: Sequence[int]) -> bool:
    """True if ``walk`` is conflicting and avoids assigned vertices inside."""
    if any(v in inst.phi for v in walk[1:-1]):
        return False
    return len(walk) >= 2 and is_conflicting(inst, walk)


def equivalent(inst: Instance, p: Sequence[int], q: Sequence[int]) -> bool:
    """True if two implicational walks with a common end imply the same value."""
    if p[-1] != q[-1]:
        raise ValueError("walks must end at the same vertex")
    a, b = imp_walk(inst, p), imp_walk(inst, q)
    if a is None or b is None:
        raise ValueError("walks must be implicational")
    return a == b


def concat(*walks: Sequence[int]) -> list[int]:
    """Join walks that meet end to start."""
    out = list(walks[0])
    for w in walks[1:]:
        if not w:
            continue
        if out and out[-1] != w[0]:
            raise ValueError("walks do not meet")
        out.extend(w[1:])
    return out
