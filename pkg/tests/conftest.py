from __future__ import annotations

import pytest

from halfint.constraints import CyclicGroup, Instance
from halfint.oracle import NaiveOracle
from halfint.problems import (
    NodeMultiwayCut, NodeUniqueLabelCover, SubsetFVS, TwoFanDeletion, encode,
)

U, V, W = 0, 1, 2


def z2_triangle() -> Instance:
    """Z2 triangle u, v, w with one odd edge wu; u is pinned to 0."""
    inst = Instance([0, 0, 0], group=CyclicGroup(2))
    inst.add_group_edge(U, V, 0)
    inst.add_group_edge(V, W, 0)
    inst.add_group_edge(W, U, 1)
    inst.assign(U, 0)
    return inst


def path_instance() -> Instance:
    """a - x - y - b on two values, identity edges, ends pinned differently."""
    inst = Instance([2, 2, 2, 2])
    for a, b in ((0, 1), (1, 2), (2, 3)):
        inst.add_permutation(a, b, [0, 1])
    inst.assign(0, 0)
    inst.assign(3, 1)
    return inst


STAR = NodeMultiwayCut(4, [(0, 3), (1, 3), (2, 3)], [0, 1, 2])
SFVS_TRIANGLE = SubsetFVS(3, [(0, 1, True), (1, 2, False), (2, 0, False)])
SWAP = (1, 0)
IDN = (0, 1)
NULC_GADGET = NodeUniqueLabelCover(4, 2, [(0, 1, IDN), (1, 2, IDN), (0, 3, IDN), (3, 2, SWAP)])
TWO_FAN = TwoFanDeletion([2, 2], [(0, 1, 0, 1)])


@pytest.fixture
def z2():
    inst = z2_triangle()
    return inst, NaiveOracle(inst)


@pytest.fixture
def star():
    return encode(STAR)


@pytest.fixture
def path4():
    inst = path_instance()
    return inst, NaiveOracle(inst)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[num])
