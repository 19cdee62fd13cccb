"""Farthest minimum half-integral covers.

Starting from the tables of the last, failed, search, each boundary of
each integral path and spoke is pushed outwards one vertex at a time.  A
push glues a new terminal to the next vertex that stands for the prefix
walk up to it, then resumes the search from that terminal alone.  A failed
search keeps its table updates; a successful one is rolled back and ends
the pushing on that side.
"""

from __future__ import annotations

from .constraints import Instance
from .cover import CoverPacking, ExceedsK, extract_cover, min_cover_max_packing
from .search import SearchState


def contract(st: SearchState, t: int, token) -> int:
    """Glue a fresh terminal to ``t`` standing for a walk with oracle ``token``."""
    return st.contract(t, token)


def _push(st: SearchState, v: int, token) -> bool:
    """Try one boundary push; True if it was kept."""
    st.begin()
    t = st.contract(v, token)
    if st.restart_from(t) is None:
        st.commit()
        return True
    st.rewind()
    return False


def _moved(ok: bool, st: SearchState, check: bool) -> None:
    if not ok:
        raise RuntimeError("boundary did not move after a failed restart")
    if check:
        err = st.check_invariants()
        if err:
            raise AssertionError(f"search invariant broken while pushing: {err}")


def farthest_cover(inst: Instance, oracle, k: int, check: bool = False,
                   on_augment=None):
    """Minimum cover whose zero-cost reachable set is maximal, with its packing.

    Returns ``CoverPacking`` or ``ExceedsK`` like ``min_cover_max_packing``.
    The instance and oracle are returned to their original state.
    """
    res = min_cover_max_packing(inst, oracle, k, check=check, on_augment=on_augment)
    if isinstance(res, ExceedsK):
        return res
    st = res.state
    n0, m0 = inst.n, inst.m
    try:
        paths = [r for r in range(len(st.runs)) if not st.run_spoke[r]]
        spokes = [r for r in range(len(st.runs)) if st.run_spoke[r]]
        for r in paths:
            run = st.runs[r]
            while st.lo[r] < st.hi[r]:
                i = st.lo[r] + 1
                if not _push(st, run[i], st.fwd[r][i]):
                    break
                _moved(st.lo[r] >= i, st, check)
            while st.lo[r] < st.hi[r]:
                i = st.hi[r] - 1
                if not _push(st, run[i], st.rev[r][i]):
                    break
                _moved(st.hi[r] <= i, st, check)
        for r in spokes:
            run = st.runs[r]
            while st.lo[r] < len(run) - 1:
                i = st.lo[r] + 1
                if not _push(st, run[i], st.fwd[r][i]):
                    break
                _moved(st.lo[r] >= i, st, check)
        cover = extract_cover(st, n0)
    finally:
        for v in range(n0, inst.n):
            oracle.init.pop(v, None)
        inst.truncate(n0, m0)
    return CoverPacking(cover, res.packing, st, res.augmentations)
