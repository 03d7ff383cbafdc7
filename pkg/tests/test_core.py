import json
from pathlib import Path

import numpy as np
import pytest

from covred.core import (
    BitSet,
    Covering,
    CoveringDecisionSystem,
    DecisionPartition,
    EmptyBlockError,
    EmptyRestrictionError,
    NotACoveringError,
    NotAPartitionError,
    ObjectSet,
    RestrictionBreaksCoveringError,
    UniverseMismatchError,
    build_system,
    dump_system,
    load_system,
    restrict,
    system_from_dict,
    system_to_dict,
    union_all,
)
from covred.related import CoveringIndexSet

TESTDATA = Path(__file__).absolute().parent / "testdata_covred"


def test_objectset_operations():
    first = ObjectSet([0, 2, 5], 8)
    second = ObjectSet([2, 3], 8)
    assert (first | second).to_list() == [0, 2, 3, 5]
    assert (first & second).to_list() == [2]
    assert (first - second).to_list() == [0, 5]
    assert ObjectSet([2], 8) < first
    assert not second <= first
    assert first.complement().to_list() == [1, 3, 4, 6, 7]
    assert len(first) == 3
    assert 5 in first and 4 not in first
    assert first.with_member(1).without_member(0).to_list() == [1, 2, 5]
    assert not ObjectSet.empty(8)
    assert ObjectSet.full(3).to_list() == [0, 1, 2]


def test_objectset_masks():
    mask = np.array([True, False, True, True, False, False, False, False, True])
    objset = ObjectSet.from_mask(mask)
    assert objset.to_list() == [0, 2, 3, 8]
    assert objset.n == 9
    assert (objset.to_mask() == mask).all()


@pytest.mark.parametrize(
    "members, size",
    [([8], 8), ([-1], 8), ([0, 3], 2), ([0.7], 8), ([1, 2.5], 8)],
)
def test_objectset_out_of_range(members, size):
    with pytest.raises(ValueError):
        ObjectSet(members, size)


def test_bitset_universe_mismatch():
    with pytest.raises(UniverseMismatchError):
        _ = ObjectSet([0], 4) | ObjectSet([0], 5)
    with pytest.raises(UniverseMismatchError):
        _ = ObjectSet([0], 4) <= CoveringIndexSet([0], 4)
    assert ObjectSet([0], 4) != CoveringIndexSet([0], 4)
    assert ObjectSet([0], 4) != ObjectSet([0], 5)


def test_bitset_hashable():
    assert len({BitSet([1, 2], 4), BitSet([2, 1], 4), BitSet([1], 4)}) == 2


def test_union_all():
    assert union_all([ObjectSet([0], 3), ObjectSet([2], 3)], 3).to_list() == [0, 2]
    assert not union_all([], 3)


def test_covering_dedupes_blocks():
    covering = Covering.from_lists([[0, 1], [1, 0], [2]], 3)
    assert covering.to_lists() == [[0, 1], [2]]
    assert len(covering) == 2
    assert covering == Covering.from_lists([[2], [0, 1]], 3)


def test_covering_errors():
    with pytest.raises(EmptyBlockError):
        Covering.from_lists([[0, 1], [], [2]], 3)
    with pytest.raises(NotACoveringError):
        Covering.from_lists([[0, 1]], 3)


def test_covering_blocks_containing():
    covering = Covering.from_lists([[0], [0, 1], [1, 2]], 3)
    assert [block.to_list() for block in covering.blocks_containing(1)] == [
        [0, 1],
        [1, 2],
    ]
    assert not covering.is_partition()
    assert Covering.from_lists([[0], [1, 2]], 3).is_partition()


@pytest.mark.parametrize(
    "classes",
    [
        [[0, 1], [1, 2]],  # overlapping
        [[0, 1]],  # gap
        [[0, 1, 2], []],  # empty class
    ],
)
def test_decision_partition_errors(classes):
    with pytest.raises(NotAPartitionError):
        DecisionPartition(classes, 3)


def test_build_example_system(consistent_system):
    """The consistent example has eight objects, five coverings, three classes"""
    assert consistent_system.n == 8
    assert consistent_system.m == 5
    assert consistent_system.k == 3
    assert consistent_system.labels[0] == "x1"
    assert consistent_system.coverings[3].to_lists() == [
        [0, 1],
        [1, 2, 3],
        [2],
        [3, 4],
        [5],
        [4, 6, 7],
    ]


def test_build_system_errors():
    with pytest.raises(ValueError):
        build_system(0, [[[0]]], [[0]])
    with pytest.raises(ValueError):
        build_system(2, [], [[0, 1]])
    with pytest.raises(UniverseMismatchError):
        CoveringDecisionSystem(
            3, [Covering.from_lists([[0, 1]], 2)], DecisionPartition([[0, 1, 2]], 3)
        )
    with pytest.raises(UniverseMismatchError):
        build_system(2, [[[0, 1]]], [[0, 1]], labels=["a"])


def test_replace_covering(consistent_system):
    finer = Covering.from_lists([[idx] for idx in range(8)], 8)
    replaced = consistent_system.replace_covering(4, finer)
    assert replaced.coverings[4] == finer
    assert replaced.coverings[:4] == consistent_system.coverings[:4]
    assert consistent_system.coverings[4] != finer
    with pytest.raises(IndexError):
        consistent_system.replace_covering(5, finer)


def test_restrict(consistent_system):
    """Blocks are intersected with the kept objects and reindexed"""
    sub = restrict(consistent_system, ObjectSet([0, 1, 2, 3], 8))
    assert sub.n == 4
    assert sub.m == 5
    assert sub.coverings[0].to_lists() == [[0], [0, 1], [2], [2, 3]]
    assert sub.coverings[1].to_lists() == [[0, 1, 2], [2, 3], [3]]
    assert sub.decision.to_lists() == [[0, 1], [2, 3]]
    assert sub.labels == ("x1", "x2", "x3", "x4")


def test_restrict_reindexes_gaps(consistent_system):
    sub = restrict(consistent_system, ObjectSet([1, 5, 7], 8))
    assert sub.n == 3
    assert sub.labels == ("x2", "x6", "x8")
    assert sub.decision.to_lists() == [[0], [1, 2]]
    assert sub.coverings[0].to_lists() == [[0], [1], [2]]


def test_restrict_whole_universe(consistent_system):
    assert restrict(consistent_system, ObjectSet.full(8)) is consistent_system


def test_restrict_errors(consistent_system):
    with pytest.raises(EmptyRestrictionError):
        restrict(consistent_system, ObjectSet.empty(8))
    with pytest.raises(UniverseMismatchError):
        restrict(consistent_system, ObjectSet([0], 4))


def test_restrict_drops_empty_blocks():
    system = build_system(3, [[[0, 1], [2]], [[0], [1, 2]]], [[0, 1, 2]])
    sub = restrict(system, ObjectSet([0, 2], 3))
    assert sub.coverings[0].to_lists() == [[0], [1]]
    assert sub.coverings[1].to_lists() == [[0], [1]]
    assert issubclass(RestrictionBreaksCoveringError, ValueError)


def test_system_dict_roundtrip(consistent_system, inconsistent_system):
    for system in (consistent_system, inconsistent_system):
        assert system_from_dict(system_to_dict(system)) == system
    assert "labels" not in system_to_dict(inconsistent_system)


def test_system_from_dict_missing_key():
    with pytest.raises(ValueError, match="decision"):
        system_from_dict({"n": 2, "coverings": [[[0, 1]]]})


def test_system_from_dict_fractional_object():
    data = {"n": 2, "coverings": [[[0.7], [1]]], "decision": [[0], [1]]}
    with pytest.raises(ValueError, match="not an integer"):
        system_from_dict(data)
    data = {"n": 2, "coverings": [[[0.0], [1]]], "decision": [[0], [1]]}
    assert system_from_dict(data).coverings[0].to_lists() == [[0], [1]]


def test_dump_load_system(tmpdir, consistent_system):
    tmpdir.chdir()
    dump_system(consistent_system, "system.json")
    assert load_system("system.json") == consistent_system
    assert json.loads((tmpdir / "system.json").read())["n"] == 8


def test_load_system_missing_file(tmpdir):
    tmpdir.chdir()
    with pytest.raises(OSError):
        load_system("nonexisting.json")


def test_load_system_fixture_file():
    assert load_system(TESTDATA / "inconsistent.json").labels is None
