"""Turning augmenting paths and pairs into a heavier packing.

Every routine here edits the packing in place.  Alternating paths are
lists of vertex-list segments: odd positions are free walks, even ones lie
in an integral path or run down a spoke.  An augmenting path adds one half
or one to the packing; an augmenting pair adds one half.
"""

from __future__ import annotations

from .constraints import Instance, equivalent, in_family
from .packing import (
    CYCLE, PATH, SPOKE, Packing, decompose_wheel, forward_backward,
    spoke_vertex_parts,
)
from .search import AugmentingPair, AugmentingPath, flatten


class AugmentError(RuntimeError):
    """An augmenting structure did not have the shape it should."""


def _loc(pk: Packing, seg: list[int]) -> tuple:
    idx = pk.index()
    a, b = idx.get(seg[0]), idx.get(seg[-1])
    if a is None or b is None or a[:3] != b[:3] or len(seg) < 2:
        raise AugmentError(f"segment {seg} is not covered by one structure")
    return a[0], a[1], a[2], a[3], b[3]


def _ascending(loc: tuple) -> bool:
    return loc[4] > loc[3]


def _b_of(pk: Packing, seg: list[int]) -> list[int]:
    return forward_backward(pk, seg)[1]


def _f_of(pk: Packing, seg: list[int]) -> list[int]:
    return forward_backward(pk, seg)[0]


def _replace_run(pk: Packing, loc: tuple, verts: list[int]) -> None:
    role, sid, sub = loc[:3]
    if role == PATH:
        pk.replace_path(sid, verts)
    elif role == SPOKE:
        pk.replace_spoke(sid, sub, verts)
    else:
        raise AugmentError("cannot simplify through a cycle")


def simplify_once(pk: Packing, segs: list[list[int]]) -> list[list[int]]:
    """Absorb the first free segment into the structure of the second.

    The structure around the second segment becomes the first segment
    followed by the reversed forward part; the backward part is freed and
    becomes the start of the returned, two segments shorter, path.
    """
    if len(segs) < 2:
        raise ValueError("nothing to simplify")
    p1, p2 = segs[0], segs[1]
    loc = _loc(pk, p2)
    f, b = forward_backward(pk, p2)
    _replace_run(pk, loc, p1 + f[::-1][1:])
    if len(segs) == 2:
        return [b]
    return [b + segs[2][1:]] + segs[3:]


def simplify_to(pk: Packing, segs: list[list[int]], r: int) -> list[list[int]]:
    """Apply ``simplify_once`` until the first ``r`` segments are consumed."""
    if r % 2 or r < 0 or r > len(segs):
        raise ValueError("r must be even and at most the number of segments")
    for _ in range(r // 2):
        segs = simplify_once(pk, segs)
    return segs


def simplify_full(pk: Packing, segs: list[list[int]]) -> list[list[int]]:
    while len(segs) > 1:
        segs = simplify_once(pk, segs)
    return segs


def augment_path(inst: Instance, pk: Packing, segs: list[list[int]]) -> None:
    """Grow the packing along an augmenting path."""
    path = simplify_full(pk, [list(s) for s in segs])[0]
    t = path[-1]
    ent = pk.index().get(t)
    if ent is None:
        if t not in inst.phi:
            raise AugmentError("augmenting path ends at a free non-terminal")
        pk.add_path(path)
        return
    role, wid, k, pos = ent
    if role == PATH:
        raise AugmentError("augmenting path ends on an integral path")
    wheel = pk.wheels[wid].rotated(k)
    pk.set_wheel(wid, wheel)
    d = wheel.degree
    back = path[::-1]
    if role == CYCLE:
        arc = wheel.arcs[-1]
        first = wheel.spokes[-1] + arc[1:pos + 1] + back[1:]
        second = wheel.spokes[0] + arc[pos:][::-1][1:] + back[1:]
        # Going the other way round mirrors the wheel, so the petals kept
        # are the ones that avoid the first spoke instead of the last.
        if in_family(inst, first):
            new, skip = first, d - 1
        elif in_family(inst, second):
            new, skip = second, 0
        else:
            raise AugmentError("neither way round the cycle conflicts")
    else:
        _, b = spoke_vertex_parts(pk, t)
        new, skip = path + b[::-1][1:], d - 1
    decompose_wheel(pk, wid, skip)
    pk.add_path(new)


def _is_prefix(a: list[int], b: list[int]) -> bool:
    return len(a) <= len(b) and b[:len(a)] == a


def _shortcut(inst: Instance, pk: Packing, P: list[list[int]], Q: list[list[int]]):
    """Trim ``Q`` until all but its last segment is a prefix of ``P``.

    Returns ``("path", P)`` when ``P`` alone turns out to be augmenting,
    else ``("pair", P, Q)``.
    """
    P = [list(s) for s in P]
    Q = [list(s) for s in Q]
    while True:
        p, q = len(P), len(Q)
        if q <= 1 or _is_prefix(flatten(Q[:q - 1]), flatten(P)):
            return ("pair", P, Q)
        if p % 2 == 1 and q % 2 == 1:
            P[-1] = P[-1] + Q[-1][::-1][1:]
            Q.pop()
            continue
        if p % 2 == 0 and q % 2 == 1:
            P.append(Q.pop()[::-1])
            continue
        if p % 2 == 0:
            raise AugmentError("both walks end with covered segments")
        qq = Q[-1]
        lq = _loc(pk, qq)
        role, sid, sub, i0, i1 = lq
        if role == SPOKE:
            best = None
            for k in range(1, p, 2):
                lk = _loc(pk, P[k])
                if lk[:3] != lq[:3]:
                    continue
                low = min(lk[3], lk[4])
                if low >= i0 and (best is None or low < best[0]):
                    best = (low, k)
            if best is None:
                return ("path", P)
            k = best[1]
            spoke = pk.wheels[sid].spokes[sub]
            w = spoke[i1:_loc(pk, P[k])[3] + 1][::-1]
            return ("pair", P, P[:k] + [w])
        asc = i1 > i0

        def dist(lk):
            lo, hi = min(lk[3], lk[4]), max(lk[3], lk[4])
            if asc:
                return i0 - hi if hi <= i0 else None
            return lo - i0 if lo >= i0 else None

        best = None
        for owner, segs, top in (("P", P, p), ("Q", Q, q - 1)):
            for k in range(1, top, 2):
                lk = _loc(pk, segs[k])
                if lk[:3] != lq[:3]:
                    continue
                dk = dist(lk)
                if dk is not None and (best is None or dk < best[0]):
                    best = (dk, owner, k, lk)
        if best is not None and best[1] == "P":
            _, _, k, lk = best
            ok = _ascending(lk) == asc
            if not ok:
                left = P[0] if k == 1 else _b_of(pk, P[k - 2]) + P[k - 1][1:]
                right = _b_of(pk, P[k]) + P[k][::-1][1:]
                ok = not equivalent(inst, left, right)
            if ok:
                verts = pk.paths[sid]
                s = lk[3]
                w = verts[s:i1 + 1] if asc else verts[i1:s + 1][::-1]
                return ("pair", P, P[:k] + [w])
        P.append(Q.pop()[::-1])


def _simplify_pair(pk: Packing, P, Q, steps: int):
    for _ in range(steps):
        if P[0] != Q[0] or P[1][0] != Q[1][0]:
            raise AugmentError("pair does not share the simplified prefix")
        fp, bp = forward_backward(pk, P[1])
        fq, bq = forward_backward(pk, Q[1])
        if fp != fq:
            raise AugmentError("pair segments have different forward parts")
        _replace_run(pk, _loc(pk, P[1]), P[0] + fp[::-1][1:])
        P = [bp + P[2][1:]] + P[3:] if len(P) > 2 else [bp]
        Q = [bq + Q[2][1:]] + Q[3:] if len(Q) > 2 else [bq]
    return P, Q


def _eliminate_detours(pk: Packing, P: list[list[int]]) -> list[list[int]]:
    """Rewire until no integral path holds two segments of ``P``."""
    while True:
        seen: dict[int, int] = {}
        pair = None
        for k in range(1, len(P), 2):
            lk = _loc(pk, P[k])
            if lk[0] != PATH:
                continue
            if lk[1] in seen:
                a = seen[lk[1]]
                if pair is None or a < pair[0]:
                    pair = (a, k, lk[1])
            else:
                seen[lk[1]] = k
        if pair is None:
            return P
        a, b, pid = pair
        _, back_a = forward_backward(pk, P[a])
        front_b, _ = forward_backward(pk, P[b])
        verts = pk.paths[pid]
        idx = pk.index()
        s, t = idx[P[a][0]][3], idx[P[b][-1]][3]
        w = verts[s:t + 1] if s <= t else verts[t:s + 1][::-1]
        pk.remove_path(pid)
        inner = [back_a + P[a + 1][1:]] + P[a + 2:b]
        inner = simplify_full(pk, inner)
        pk.add_path(inner[0] + front_b[::-1][1:])
        merged = P[a - 1] + w[1:]
        rest = P[b + 1:]
        if rest:
            merged = merged + rest[0][1:]
            rest = rest[1:]
        P = P[:a - 1] + [merged] + rest


def _common_prefix(a: list[int], b: list[int]) -> int:
    r = 0
    while r < len(a) and r < len(b) and a[r] == b[r]:
        r += 1
    return r


def _close_wheel(pk: Packing, P: list[list[int]], Q: list[list[int]]) -> None:
    if len(Q) == 1:
        p1, q1 = P[0], Q[0]
        r = _common_prefix(p1, q1)
        # With a single segment either walk may be the other's prefix; the
        # leftover is then a closed walk.
        if r == 0 or (r >= len(p1) and r >= len(q1)) or \
                (len(P) > 1 and r >= len(p1)):
            raise AugmentError("pair has no proper common prefix")
        stem, p1x, q1x = p1[:r], p1[r - 1:], q1[r - 1:]
        if len(P) == 1:
            pk.add_wheel([stem], [p1x + q1x[::-1][1:]])
            return
        segs = P + ([[P[-1][-1]]] if len(P) % 2 == 0 else [])
        d = len(segs)
        arcs = [p1x] + segs[1:d - 1] + [segs[d - 1] + q1x[::-1][1:]]
        spokes = [stem]
        for i in range(2, d + 1):
            if i % 2 == 0:
                spokes.append(_f_of(pk, segs[i - 1]))
            else:
                spokes.append(_b_of(pk, segs[i - 2]))
        covered = segs[1:d - 1:2]
    elif len(Q) == 2:
        d = len(P)
        if d % 2 == 0 or P[0] != Q[0]:
            raise AugmentError("pair is not of the two-segment shape")
        arcs = P[1:] + [Q[1][::-1]]
        spokes = [P[0]]
        for i in range(2, d + 1):
            if i == d:
                spokes.append(_b_of(pk, Q[1]))
            elif i % 2 == 0:
                spokes.append(_b_of(pk, P[i - 1]))
            else:
                spokes.append(_f_of(pk, P[i]))
        covered = P[1:d - 1:2]
    else:
        raise AugmentError("pair has too many trailing segments")
    pids = []
    for seg in covered:
        lk = _loc(pk, seg)
        if lk[0] != PATH or lk[1] in pids:
            raise AugmentError("pair segments are not in distinct integral paths")
        pids.append(lk[1])
    for pid in pids:
        pk.remove_path(pid)
    pk.add_wheel(spokes, arcs)


def augment_pair(inst: Instance, pk: Packing, P: list[list[int]], Q: list[list[int]]) -> None:
    """Grow the packing by one half using an augmenting pair."""
    res = _shortcut(inst, pk, Q, P)
    if res[0] == "path":
        augment_path(inst, pk, res[1])
        return
    _, Q, P = res
    res = _shortcut(inst, pk, P, Q)
    if res[0] == "path":
        augment_path(inst, pk, res[1])
        return
    _, P, Q = res
    q = len(Q)
    if q == 0:
        raise AugmentError("empty walk in pair")
    if q % 2 == 1:
        r = q - 1
    elif _ascending(_loc(pk, P[q - 1])) == _ascending(_loc(pk, Q[q - 1])):
        r = q
    else:
        r = q - 2
    P, Q = _simplify_pair(pk, P, Q, r // 2)
    P = _eliminate_detours(pk, P)
    _close_wheel(pk, P, Q)


def augment(inst: Instance, pk: Packing, outcome) -> None:
    """Apply a search outcome to the packing."""
    if isinstance(outcome, AugmentingPath):
        augment_path(inst, pk, outcome.segments)
    elif isinstance(outcome, AugmentingPair):
        augment_pair(inst, pk, outcome.p, outcome.q)
    else:
        raise ValueError("not an augmenting structure")
