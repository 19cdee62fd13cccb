from __future__ import annotations

import pytest

from halfint.constraints import Instance
from halfint.cover import ExceedsK, min_cover_max_packing, reachable_zero
from halfint.farthest import farthest_cover
from halfint.oracle import NaiveOracle
from halfint.search import SearchState
from halfint.verify import brute_min_cover, separation

from conftest import U
from corpus import ALL_FAMILIES, dominance_maximal, family_instances, mass_defects


def test_star_farthest(star):
    res = farthest_cover(star.instance, star.oracle, 4)
    assert res.cover == [2, 0, 0, 0]


def test_path_farthest_is_dominance_maximal(path4):
    inst, orc = path4
    res = farthest_cover(inst, orc, 4)
    size, covers = brute_min_cover(inst)
    assert res.size2 == size == 2
    assert [0, 2, 0, 0] in covers and [0, 0, 2, 0] in covers and [0, 1, 1, 0] in covers
    assert dominance_maximal(inst, res.cover, covers)
    assert len(reachable_zero(inst, res.cover)) == 3


def test_z2_farthest(z2):
    inst, orc = z2
    res = farthest_cover(inst, orc, 2)
    assert res.cover == [1, 0, 0]
    assert reachable_zero(inst, res.cover) == set()


def test_instance_and_oracle_restored(path4):
    inst, orc = path4
    n, m, init = inst.n, inst.m, dict(orc.init)
    farthest_cover(inst, orc, 4)
    assert (inst.n, inst.m, orc.init) == (n, m, init)


def test_exceeds_k_passes_through(z2):
    inst, orc = z2
    assert isinstance(farthest_cover(inst, orc, 0), ExceedsK)


def test_contracting_zero_length_prefix_duplicates_terminal(path4):
    inst, orc = path4
    st = SearchState(inst, orc, min_cover_max_packing(inst, orc, 4).packing)
    st.find_augmenting()
    t = st.contract(0, orc.init[0])
    assert orc.init[t] == orc.init[0] and inst.has_edge(t, 0)
    st.inst.truncate(4, 3)
    orc.init.pop(t)


def test_contraction_keeps_covers_zero_on_walk_feasible():
    # a cover that is zero on a walk from a terminal stays feasible after the
    # walk is replaced by a fresh terminal glued to its end
    checked = 0
    for inst, orc in family_instances("generic", 80, max_n=7, seed0=77):
        for x in brute_min_cover(inst)[1]:
            reach = reachable_zero(inst, x)
            for t in sorted(reach - set(inst.phi))[:2]:
                val = _zero_value(inst, x, t)
                big = inst.copy()
                tp = big.add_vertex(big.dom[t])
                big.add_equality(tp, t)
                big.assign(tp, val)
                assert separation(big, x + [0]) is None
                checked += 1
    assert checked > 20


def _zero_value(inst: Instance, x, t):
    vals = {a: p for a, p in inst.phi.items() if x[a] == 0}
    queue = list(vals)
    while queue:
        v = queue.pop()
        for u, eid in inst.adj[v]:
            q = inst.apply(eid, v, vals[v])
            if q is None or x[u] or u in vals or u in inst.phi:
                continue
            vals[u] = q
            queue.append(u)
    return vals[t]


@pytest.mark.parametrize("family", ALL_FAMILIES)
def test_farthest_dominance_and_mass(family):
    for inst, orc in family_instances(family, 30, max_n=9, seed0=11):
        res = farthest_cover(inst, orc, 2 * inst.n + 2, check=True)
        size, covers = brute_min_cover(inst)
        assert res.size2 == size
        assert separation(inst, res.cover) is None
        assert dominance_maximal(inst, res.cover, covers)
        for x in covers:
            assert not mass_defects(res.packing, x)
