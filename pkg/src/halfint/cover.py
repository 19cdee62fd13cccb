"""Minimum half-integral covers with matching packings.

Covers are lists of non-negative integers counted in halves: ``x[v] == 1``
means one half on ``v`` and ``x[v] == 2`` means one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .augment import augment
from .constraints import Instance
from .packing import Packing, validate_packing
from .search import SearchState


@dataclass
class CoverPacking:
    """A cover and a packing of equal weight, plus the final search tables."""

    cover: list[int]
    packing: Packing
    state: SearchState
    augmentations: int = 0

    @property
    def size2(self) -> int:
        return sum(self.cover)


@dataclass
class ExceedsK:
    """The packing already weighs more than the budget: a lower bound."""

    packing: Packing
    augmentations: int = 0

    @property
    def size2(self) -> int:
        return self.packing.size2


def extract_cover(st: SearchState, n: int | None = None) -> list[int]:
    """Read the cover off the boundaries of an exhausted search."""
    n = st.base_n if n is None else n
    x = [0] * n
    for r, run in enumerate(st.runs):
        if st.run_spoke[r]:
            x[run[st.lo[r]]] += 1
        elif st.lo[r] == st.hi[r]:
            x[run[st.lo[r]]] += 2
        else:
            x[run[st.lo[r]]] += 1
            x[run[st.hi[r]]] += 1
    return x


def reachable_zero(inst: Instance, x: list[int]) -> set[int]:
    """Vertices reached from terminals by implicational walks avoiding ``x``.

    Raises ``ValueError`` if two such walks imply different values at one
    vertex, which cannot happen when ``x`` is a feasible cover.
    """
    val: dict[int, object] = {}
    queue = deque()
    for a, p in inst.phi.items():
        if x[a] == 0:
            if a in val and val[a] != p:
                raise ValueError("cover is not feasible")
            val[a] = p
            queue.append(a)
    while queue:
        u = queue.popleft()
        p = val[u]
        for v, eid in inst.adj[u]:
            if x[v]:
                continue
            q = inst.apply(eid, u, p)
            if q is None:
                continue
            if v in val:
                if val[v] != q:
                    raise ValueError("cover is not feasible")
                continue
            val[v] = q
            queue.append(v)
    return set(val)


def min_cover_max_packing(inst: Instance, oracle, k: int, check: bool = False,
                          on_augment=None):
    """Grow a packing until no augmentation exists or it exceeds ``k`` halves.

    Returns a ``CoverPacking`` whose cover and packing weigh the same
    (at most ``k`` halves), or ``ExceedsK`` with a packing heavier than
    ``k`` halves.  With ``check`` every intermediate packing is validated.
    ``on_augment(before, after)`` is called with packing weights in halves.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    pk = Packing()
    count = 0
    while True:
        st = SearchState(inst, oracle, pk)
        out = st.find_augmenting()
        if check:
            err = st.check_invariants()
            if err:
                raise AssertionError(f"search invariant broken: {err}")
        if out is None:
            return CoverPacking(extract_cover(st), pk, st, count)
        before = pk.size2
        augment(inst, pk, out)
        count += 1
        after = pk.size2
        if on_augment is not None:
            on_augment(before, after)
        if check:
            err = validate_packing(inst, pk)
            if err:
                raise AssertionError(f"invalid packing after augmentation: {err}")
            if after - before not in (1, 2):
                raise AssertionError(f"packing grew by {after - before} halves")
        if after > k:
            return ExceedsK(pk, count)
