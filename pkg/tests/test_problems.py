from __future__ import annotations

import pytest

from halfint.constraints import IDENT, CyclicGroup, XorGroup
from halfint.cover import min_cover_max_packing
from halfint.problems import (
    FAMILIES, GroupFVS, MonoOrientableDeletion, NodeMultiwayCut, NonMonoCycleTransversal,
    SubsetFVS, SubsetPseudoforestDeletion, ZeroOneAll, brute_min_solution, chain_mwc,
    chain_sfvs, encode, generate, grid_mwc, is_solution, pin, solve_problem, violation,
)

from conftest import NULC_GADGET, SFVS_TRIANGLE, STAR, TWO_FAN


def test_star_encoding(star):
    inst = star.instance
    assert sorted(star.label(a) for a in inst.phi) == ["1'", "2'", "3'"]
    assert inst.m == 3 and all(inst.kind[e] == IDENT for e in range(3))
    assert star.decode([0]) == [3]


def test_sfvs_triangle_labels():
    enc = encode(SFVS_TRIANGLE, specialized=False)
    inst = enc.instance
    assert isinstance(inst.group, XorGroup)
    labels = sorted(inst.data[e][0] for e in range(inst.m))
    assert labels == [0, 0, 1]


def test_sfvs_triangle_witness_is_one_vertex():
    sol = solve_problem(SFVS_TRIANGLE, 1)
    assert len(sol.witness) == 1 and is_solution(SFVS_TRIANGLE, sol.witness)
    assert not is_solution(SFVS_TRIANGLE, [])


def test_mono_triangle_is_orientable():
    prob = MonoOrientableDeletion(3, [(0, 1, 5), (1, 2, 5), (2, 0, 5)])
    assert solve_problem(prob, 0).answer


def test_spd_without_marked_edges_is_yes():
    prob = SubsetPseudoforestDeletion(4, [(0, 1, False), (1, 2, False), (2, 0, False), (2, 3, False)])
    assert solve_problem(prob, 0).answer


def test_subdivision_decodes_to_lower_endpoint():
    prob = SubsetFVS(2, [(0, 1, True), (1, 0, False)])
    enc = encode(prob)
    assert enc.instance.n == 3 and enc.source[2] == 0
    assert enc.decode([2]) == [0]
    sol = solve_problem(prob, 1)
    assert sol.answer and len(sol.witness) == 1


def test_adjacent_terminals_infeasible():
    prob = NodeMultiwayCut(3, [(0, 1), (1, 2)], [0, 1])
    assert encode(prob).infeasible
    sol = solve_problem(prob, 3)
    assert not sol.answer and sol.result is None


def test_two_fan_fixture():
    assert solve_problem(TWO_FAN, 0).answer
    assert brute_min_solution(TWO_FAN) == []


def test_nulc_gadget():
    assert brute_min_solution(NULC_GADGET) is not None
    assert len(brute_min_solution(NULC_GADGET)) == 1


def test_bad_inputs_rejected():
    with pytest.raises(ValueError):
        encode(NodeMultiwayCut(3, [(0, 1)], [0, 0]))
    with pytest.raises(ValueError):
        encode(NodeMultiwayCut(3, [(0, 5)], [0]))
    with pytest.raises(ValueError):
        encode(GroupFVS(2, CyclicGroup(3), [(0, 1, 7)]))
    with pytest.raises(ValueError):
        encode(ZeroOneAll([2, 2], [(0, 1, (0, 1))], [(1, 0, 0, 0)], {}))
    with pytest.raises(ValueError):
        encode(object())
    with pytest.raises(ValueError):
        solve_problem(STAR, -1)
    with pytest.raises(ValueError):
        generate("nope", 0)


def test_violation_messages():
    assert violation(STAR, [3]) is None
    assert "deletes terminals" in violation(STAR, [0])
    assert "remain connected" in violation(STAR, [])
    assert "unknown" in violation(STAR, [9])


def test_generators_are_deterministic():
    for fam in FAMILIES:
        assert generate(fam, 5) == generate(fam, 5)
    assert chain_mwc(12) == chain_mwc(12)


def test_zero_density_forests_are_yes():
    for fam in ("sfvs", "gfvs", "nmct", "spd"):
        for seed in range(5):
            prob = generate(fam, seed, density=0.0, multi=False)
            assert solve_problem(prob, 0).answer


def test_structured_families():
    assert len(brute_min_solution(chain_mwc(8))) == 2
    assert len(brute_min_solution(grid_mwc(3))) == 2
    assert len(brute_min_solution(chain_sfvs(2, 4))) == 2


@pytest.mark.parametrize("family", FAMILIES)
def test_family_matches_brute_force(family):
    for seed in range(60):
        prob = generate(family, seed)
        best = brute_min_solution(prob)
        opt = None if best is None else len(best)
        for k in range(4):
            sol = solve_problem(prob, k, check=True)
            assert sol.answer == (opt is not None and k >= opt), (seed, k)
            if sol.answer:
                assert violation(prob, sol.witness) is None


@pytest.mark.parametrize("family", ["sfvs", "nmct"])
def test_naive_and_specialised_encodings_agree(family):
    for seed in range(60):
        prob = generate(family, seed)
        fast, slow = encode(prob, True), encode(prob, False)
        assert fast.instance.n == slow.instance.n
        for k in range(3):
            assert solve_problem(prob, k, True).answer == solve_problem(prob, k, False).answer
        for v in range(min(2, fast.instance.n)):
            a, b = pin(fast, v), pin(slow, v)
            big = 2 * fast.instance.n + 2
            assert min_cover_max_packing(a.instance, a.oracle, big).size2 == \
                min_cover_max_packing(b.instance, b.oracle, big).size2


def test_nonmono_checker():
    mixed = NonMonoCycleTransversal(3, [(0, 1, 0), (1, 2, 0), (2, 0, 1)])
    assert not is_solution(mixed, [])
    assert is_solution(mixed, [2])
    mono = NonMonoCycleTransversal(3, [(0, 1, 0), (1, 2, 0), (2, 0, 0)])
    assert is_solution(mono, [])
