"""Compact walk summaries used by the augmenting-path search.

An oracle maps a walk starting in the terminal set to a token.  Tokens are
extended one edge at a time, and two tokens of walks with a common end are
compared with ``test``, which reports whether the walks imply different
values.  ``append`` returns ``None`` once a walk stops being implicational.

The naive oracle keeps the implied value itself.  The two specialised ones
work for group instances whose labels are huge subsets: they keep a small
token that is exact on pairs of walks that share a prefix and then split.
"""

from __future__ import annotations

from .constraints import FAN, IDENT, PERM, Instance


class NaiveOracle:
    """Token is the implied value; exact on every pair of walks."""

    def __init__(self, inst: Instance, init: dict[int, object] | None = None) -> None:
        self.inst = inst
        self.init = dict(inst.phi) if init is None else init

    def append(self, state, u: int, eid: int):
        inst = self.inst
        k = inst.kind[eid]
        if k == IDENT:
            return state
        if k == PERM:
            fwd, inv = inst.data[eid]
            return fwd[state] if u == inst.eu[eid] else inv[state]
        if k == FAN:
            a, b = inst.data[eid]
            if u == inst.eu[eid]:
                return None if state == a else b
            return None if state == b else a
        lab, ilab = inst.data[eid]
        return inst.group.op(state, lab if u == inst.eu[eid] else ilab)

    def test(self, a, b) -> bool:
        return a != b

    def fresh(self, value):
        """Token for a newly pinned vertex with the given value."""
        return value

    def rebind(self, inst: Instance, init: dict[int, object]) -> NaiveOracle:
        return NaiveOracle(inst, init)


EPS = -1


class SubsetFVSOracle:
    """Token is the last marked edge on the walk, or ``EPS`` if none.

    ``inst.tag[eid]`` is a stable non-negative id for marked edges and
    ``-1`` otherwise.  Two walks that split after a common prefix imply
    different subsets exactly when their last marked edges differ.
    """

    def __init__(self, inst: Instance, init: dict[int, object] | None = None) -> None:
        self.inst = inst
        self.init = {v: EPS for v in inst.phi} if init is None else init

    def append(self, state, u: int, eid: int):
        t = self.inst.tag[eid]
        return t if t >= 0 else state

    def test(self, a, b) -> bool:
        return a != b

    def fresh(self, value):
        return EPS

    def rebind(self, inst: Instance, init: dict[int, object]) -> SubsetFVSOracle:
        return SubsetFVSOracle(inst, init)


class NonMonoOracle:
    """Token tracks the longest monochromatic suffix of the walk.

    ``EPS`` is the empty walk, ``w * ncolors + c`` a suffix of colour ``c``
    starting at the vertex named ``w``, and ``-2 - c`` a suffix of colour
    ``c`` that already closes a cycle.  ``inst.tag[eid]`` is the colour of
    the edge, or ``-1`` for glue edges that do not change the walk.
    """

    def __init__(self, inst: Instance, ncolors: int,
                 init: dict[int, object] | None = None) -> None:
        if ncolors < 1:
            raise ValueError("need at least one colour")
        self.inst = inst
        self.ncolors = ncolors
        self.init = {v: EPS for v in inst.phi} if init is None else init

    def append(self, state, u: int, eid: int):
        inst = self.inst
        c = inst.tag[eid]
        if c < 0:
            return state
        L = self.ncolors
        if state == EPS:
            return inst.orig[u] * L + c
        if state < EPS:
            return state if -2 - state == c else inst.orig[u] * L + c
        w, sc = divmod(state, L)
        if sc != c:
            return inst.orig[u] * L + c
        if w == inst.orig[inst.other(eid, u)]:
            return -2 - c
        return state

    def test(self, a, b) -> bool:
        return a >= EPS and b >= EPS and a != b

    def fresh(self, value):
        return EPS

    def rebind(self, inst: Instance, init: dict[int, object]) -> NonMonoOracle:
        return NonMonoOracle(inst, self.ncolors, init)
