from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as hst

from halfint.constraints import Instance
from halfint.cover import CoverPacking, ExceedsK, min_cover_max_packing, reachable_zero
from halfint.oracle import NaiveOracle
from halfint.packing import validate_packing
from halfint.verify import brute_min_cover, random_instance, separation

import pytest

from conftest import U


def test_star_cover(star):
    res = min_cover_max_packing(star.instance, star.oracle, 2)
    assert isinstance(res, CoverPacking)
    assert res.cover == [2, 0, 0, 0] and res.size2 == res.packing.size2 == 2
    assert reachable_zero(star.instance, res.cover) == {1, 2, 3}


def test_z2_cover(z2):
    inst, orc = z2
    res = min_cover_max_packing(inst, orc, 1)
    assert res.cover[U] == 1 and res.size2 == 1 == res.packing.size2
    assert reachable_zero(inst, res.cover) == set()
    assert isinstance(min_cover_max_packing(inst, orc, 0), ExceedsK)


def test_empty_family_gives_zero_cover():
    inst = Instance([2, 2])
    inst.add_permutation(0, 1, [1, 0])
    res = min_cover_max_packing(inst, NaiveOracle(inst), 4)
    assert res.cover == [0, 0]
    assert reachable_zero(inst, [0, 0]) == set()
    with pytest.raises(ValueError):
        min_cover_max_packing(inst, NaiveOracle(inst), -1)


def test_terminal_with_zero_weight_is_reached(path4):
    inst, _ = path4
    assert {0, 3} <= reachable_zero(inst, [0, 2, 0, 0])


@settings(max_examples=150, deadline=None)
@given(hst.integers(0, 10**7), hst.integers(3, 9))
def test_cover_is_feasible_optimal_and_tight(seed, n):
    inst = random_instance(seed, n=n, density=0.45, terminals=1 + seed % 4)
    res = min_cover_max_packing(inst, NaiveOracle(inst), 4 * n, check=True)
    assert separation(inst, res.cover) is None
    assert validate_packing(inst, res.packing) is None
    assert res.size2 == res.packing.size2 == brute_min_cover(inst)[0]
    assert res.augmentations <= 2 * n + 1


@settings(max_examples=60, deadline=None)
@given(hst.integers(0, 10**7))
def test_exceeds_k_packing_is_a_lower_bound(seed):
    inst = random_instance(seed, n=7, density=0.5, terminals=3)
    best = brute_min_cover(inst)[0]
    if best == 0:
        return
    res = min_cover_max_packing(inst, NaiveOracle(inst), best - 1)
    assert isinstance(res, ExceedsK)
    assert best - 1 < res.size2 <= best
