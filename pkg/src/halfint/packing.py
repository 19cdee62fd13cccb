"""Half-integral packings of conflicting walks.

A packing holds integral paths (weight 1) and wheels.  A wheel of odd
degree ``d`` is a cycle split into ``d`` arcs, each of weight one half,
plus ``d`` pairwise disjoint spokes (weight 1 on their vertices) that run
from a terminal to the start of their arc.  ``spokes[i]`` ends at
``arcs[i][0]`` and ``arcs[i]`` ends at ``arcs[(i + 1) % d][0]``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constraints import Instance, in_family

PATH, SPOKE, CYCLE = "path", "spoke", "cycle"


@dataclass
class Wheel:
    spokes: list[list[int]]
    arcs: list[list[int]]

    @property
    def degree(self) -> int:
        return len(self.arcs)

    def cycle(self) -> list[int]:
        out = [self.arcs[0][0]]
        for a in self.arcs:
            out.extend(a[1:])
        return out

    def petal(self, i: int) -> list[int]:
        """The walk ``spokes[i] + arcs[i] + reversed(spokes[i + 1])``."""
        d = self.degree
        nxt = self.spokes[(i + 1) % d]
        return self.spokes[i] + self.arcs[i][1:] + nxt[::-1][1:]

    def rotated(self, k: int) -> Wheel:
        """Relabel so that index ``k`` becomes the last index."""
        s = k + 1
        return Wheel(self.spokes[s:] + self.spokes[:s], self.arcs[s:] + self.arcs[:s])


class Packing:
    """Mutable set of integral paths and wheels with stable, unique ids."""

    def __init__(self) -> None:
        self.paths: dict[int, list[int]] = {}
        self.wheels: dict[int, Wheel] = {}
        self._next = 0
        self._index: dict[int, tuple] | None = None

    @property
    def size2(self) -> int:
        """Total weight, counted in halves."""
        return 2 * len(self.paths) + sum(w.degree for w in self.wheels.values())

    def _id(self) -> int:
        self._next += 1
        self._index = None
        return self._next - 1

    def add_path(self, verts: list[int]) -> int:
        pid = self._id()
        self.paths[pid] = list(verts)
        return pid

    def remove_path(self, pid: int) -> list[int]:
        self._index = None
        return self.paths.pop(pid)

    def replace_path(self, pid: int, verts: list[int]) -> None:
        self._index = None
        self.paths[pid] = list(verts)

    def add_wheel(self, spokes: list[list[int]], arcs: list[list[int]]) -> int:
        if len(spokes) != len(arcs) or len(arcs) % 2 == 0:
            raise ValueError("a wheel needs an odd number of arcs and spokes")
        wid = self._id()
        self.wheels[wid] = Wheel([list(s) for s in spokes], [list(a) for a in arcs])
        return wid

    def remove_wheel(self, wid: int) -> Wheel:
        self._index = None
        return self.wheels.pop(wid)

    def replace_spoke(self, wid: int, i: int, verts: list[int]) -> None:
        self._index = None
        self.wheels[wid].spokes[i] = list(verts)

    def set_wheel(self, wid: int, wheel: Wheel) -> None:
        self._index = None
        self.wheels[wid] = wheel

    def index(self) -> dict[int, tuple]:
        """Map each covered vertex to ``(role, id, sub, pos)``.

        ``role`` is PATH (``sub`` unused), SPOKE (``sub`` is the spoke) or
        CYCLE for cycle vertices that end no spoke (``sub`` is the arc).
        """
        if self._index is None:
            idx: dict[int, tuple] = {}
            for pid, p in self.paths.items():
                for i, v in enumerate(p):
                    idx[v] = (PATH, pid, 0, i)
            for wid, w in self.wheels.items():
                for k, a in enumerate(w.arcs):
                    for i in range(1, len(a) - 1):
                        idx[a[i]] = (CYCLE, wid, k, i)
                for k, s in enumerate(w.spokes):
                    for i, v in enumerate(s):
                        idx[v] = (SPOKE, wid, k, i)
            self._index = idx
        return self._index

    def edges(self) -> set[tuple[int, int]]:
        out = set()

        def add(walk):
            for a, b in zip(walk, walk[1:]):
                out.add((min(a, b), max(a, b)))

        for p in self.paths.values():
            add(p)
        for w in self.wheels.values():
            for s in w.spokes:
                add(s)
            for a in w.arcs:
                add(a)
        return out

    def walks(self) -> list[tuple[list[int], int]]:
        """Every member walk with its weight in halves."""
        out = [(list(p), 2) for p in self.paths.values()]
        for w in self.wheels.values():
            out.extend((w.petal(i), 1) for i in range(w.degree))
        return out

    def copy(self) -> Packing:
        out = Packing()
        out.paths = {k: list(v) for k, v in self.paths.items()}
        out.wheels = {k: Wheel([list(s) for s in w.spokes], [list(a) for a in w.arcs])
                      for k, w in self.wheels.items()}
        out._next = self._next
        return out

    def dump(self, name=str) -> list[str]:
        """Text lines describing the packing; ``name`` renders a vertex."""
        lines = []
        for p in self.paths.values():
            lines.append("path " + " ".join(name(v) for v in p))
        for w in self.wheels.values():
            lines.append(f"wheel {w.degree}")
            lines.append("cycle " + " ".join(name(v) for v in w.cycle()))
            for i, s in enumerate(w.spokes):
                lines.append(f"spoke {i + 1}: " + " ".join(name(v) for v in s))
        return lines


def forward_backward(pk: Packing, seg: list[int]) -> tuple[list[int], list[int]]:
    """The two leftovers of the structure around a covered segment.

    For a segment of an integral path, oriented like the segment, the path
    reads ``F + seg + reversed(B)`` with shared joints.  For a segment of a
    spoke running towards the terminal, ``F`` runs from the cycle end of the
    spoke down to the segment start and ``B`` from the terminal up to the
    segment end.
    """
    idx = pk.index()
    role, sid, sub, i0 = idx[seg[0]]
    r1 = idx[seg[-1]]
    if r1[:3] != (role, sid, sub) or len(seg) < 2:
        raise ValueError("segment does not lie in one path or spoke")
    i1 = r1[3]
    if role == PATH:
        verts = pk.paths[sid]
        if i1 > i0:
            return verts[:i0 + 1], verts[i1:][::-1]
        return verts[i0:][::-1], verts[:i1 + 1]
    if role == SPOKE:
        verts = pk.wheels[sid].spokes[sub]
        if i1 >= i0:
            raise ValueError("spoke segments must run towards the terminal")
        return verts[i0:][::-1], verts[:i1 + 1]
    raise ValueError("segment lies on a cycle")


def spoke_vertex_parts(pk: Packing, v: int) -> tuple[list[int], list[int]]:
    """``(F, B)`` for a spoke vertex: from the cycle end and from the terminal."""
    role, wid, k, i = pk.index()[v]
    if role != SPOKE:
        raise ValueError(f"vertex {v} is not on a spoke")
    s = pk.wheels[wid].spokes[k]
    return s[i:][::-1], s[:i + 1]


def decompose_wheel(pk: Packing, wid: int, skip: int) -> list[int]:
    """Replace a wheel by the integral paths that avoid spoke/arc ``skip``.

    Removes the wheel and inserts the ``(d - 1) / 2`` petals with indices
    ``skip + 1, skip + 3, ...``; returns the new path ids.
    """
    w = pk.remove_wheel(wid)
    d = w.degree
    out = []
    for j in range(skip + 1, skip + d - 1, 2):
        out.append(pk.add_path(w.petal(j % d)))
    return out


def validate_packing(inst: Instance, pk: Packing) -> str | None:
    """Return a description of the first defect, or ``None`` if valid."""
    used: set[int] = set()

    def claim(vs, what):
        for v in vs:
            if v in used:
                return f"vertex {v} used twice ({what})"
            used.add(v)
        return None

    def edges_ok(walk):
        for a, b in zip(walk, walk[1:]):
            if not inst.has_edge(a, b):
                return f"no constraint between {a} and {b}"
        return None

    for pid, p in pk.paths.items():
        err = edges_ok(p) or claim(p, f"path {pid}")
        if err:
            return err
        if len(set(p)) != len(p):
            return f"path {pid} is not simple"
        if not in_family(inst, p):
            return f"path {pid} is not a conflicting walk avoiding terminals"
    for wid, w in pk.wheels.items():
        d = w.degree
        if d % 2 == 0 or len(w.spokes) != d:
            return f"wheel {wid} fails degree parity"
        for i in range(d):
            a, s = w.arcs[i], w.spokes[i]
            if not s or len(a) < 2:
                return f"wheel {wid} has an empty arc or spoke"
            if s[-1] != a[0] or a[-1] != w.arcs[(i + 1) % d][0]:
                return f"wheel {wid} arcs and spokes do not meet"
            if s[0] not in inst.phi:
                return f"wheel {wid} spoke {i} does not start at a terminal"
            err = edges_ok(a) or edges_ok(s)
            if err:
                return err
        cyc = w.cycle()[:-1]
        if len(set(cyc)) != len(cyc):
            return f"wheel {wid} cycle is not simple"
        ends = {s[-1] for s in w.spokes}
        err = claim(cyc, f"wheel {wid}")
        if err:
            return err
        for i, s in enumerate(w.spokes):
            err = claim(s[:-1], f"wheel {wid} spoke {i}")
            if err:
                return err
        if len(ends) != d:
            return f"wheel {wid} spokes share an end"
        for i in range(d):
            if not in_family(inst, w.petal(i)):
                return f"wheel {wid} petal {i} is not a conflicting walk avoiding terminals"
    return None
