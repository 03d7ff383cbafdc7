import logging
from itertools import combinations

import pytest

from covred.core import build_system
from covred.related import CoveringIndexSet, minimal_related_sets, related_family
from covred.reduct import (
    ReductSet,
    all_reducts,
    heuristic_reduct,
    indispensable_coverings,
    is_reduct,
    is_superfluous,
    minimal_hitting_sets,
    preserves_positive_region,
)

CONSISTENT_REDUCTS = [[0, 1], [0, 2], [1, 3], [1, 4], [2, 3], [2, 4]]
INCONSISTENT_REDUCTS = [[0, 1], [0, 3], [1, 4], [3, 4]]


def _sets(lists, m):
    return [CoveringIndexSet(members, m) for members in lists]


def test_all_reducts(consistent_system, inconsistent_system):
    assert all_reducts(related_family(consistent_system)).to_lists() == (
        CONSISTENT_REDUCTS
    )
    assert all_reducts(related_family(inconsistent_system)).to_lists() == (
        INCONSISTENT_REDUCTS
    )


def test_all_reducts_empty_positive_region(caplog):
    system = build_system(3, [[[0, 1, 2]], [[0, 1], [1, 2]]], [[0, 2], [1]])
    reducts = all_reducts(related_family(system))
    assert reducts.to_lists() == [[]]
    assert "Empty positive region" in caplog.text


@pytest.mark.parametrize("members", CONSISTENT_REDUCTS)
def test_is_reduct_examples(consistent_system, members):
    assert is_reduct(consistent_system, members)


def test_is_reduct_rejects(consistent_system):
    assert not is_reduct(consistent_system, range(5))
    assert not is_reduct(consistent_system, [0])
    assert not is_reduct(consistent_system, [0, 1, 2])
    assert preserves_positive_region(consistent_system, [0, 1, 2])
    assert not preserves_positive_region(consistent_system, [3, 4])


def test_reducts_match_brute_force(consistent_system, inconsistent_system):
    for system in (consistent_system, inconsistent_system):
        brute = [
            list(members)
            for size in range(system.m + 1)
            for members in combinations(range(system.m), size)
            if is_reduct(system, members)
        ]
        assert sorted(brute) == all_reducts(related_family(system)).to_lists()


def test_is_superfluous(consistent_system):
    assert all(is_superfluous(consistent_system, idx) for idx in range(5))
    system = build_system(2, [[[0], [1]], [[0, 1]]], [[0], [1]])
    assert not is_superfluous(system, 0)
    assert is_superfluous(system, 1)


def test_indispensable_coverings(consistent_system):
    assert not indispensable_coverings(related_family(consistent_system))
    system = build_system(3, [[[0], [1, 2]], [[0, 1], [2]]], [[0], [1], [2]])
    assert indispensable_coverings(related_family(system)).to_list() == [0, 1]
    assert all_reducts(related_family(system)).to_lists() == [[0, 1]]


@pytest.mark.parametrize(
    "sets, expected",
    [
        ([[0, 3, 4], [1, 2]], CONSISTENT_REDUCTS),
        ([[0, 4], [1, 3]], INCONSISTENT_REDUCTS),
        ([[0], [0, 1]], [[0]]),
        ([[0, 1], [1, 2], [0, 2]], [[0, 1], [0, 2], [1, 2]]),
        ([], [[]]),
    ],
)
def test_minimal_hitting_sets(sets, expected):
    assert [hset.to_list() for hset in minimal_hitting_sets(_sets(sets, 5), 5)] == (
        expected
    )


def test_minimal_hitting_sets_unhittable():
    assert minimal_hitting_sets(_sets([[], [0]], 3), 3) == []


def test_minimal_hitting_sets_wrong_size():
    with pytest.raises(ValueError):
        minimal_hitting_sets([CoveringIndexSet([0], 3)], 4)


def test_heuristic_reduct_examples(consistent_system, inconsistent_system):
    for system in (consistent_system, inconsistent_system):
        sr = minimal_related_sets(related_family(system))
        assert heuristic_reduct(sr, system.m).to_list() == [0, 1]


def test_heuristic_reduct_logs_picks(consistent_system, caplog):
    caplog.set_level(logging.DEBUG, logger="covred.reduct")
    sr = minimal_related_sets(related_family(consistent_system))
    heuristic_reduct(sr)
    assert "Picked covering 0" in caplog.text
    assert "Picked covering 1" in caplog.text


def test_heuristic_reduct_drops_redundant():
    """Greedy picks covering 0 first, which becomes redundant later"""
    sr = _sets([[0, 1], [0, 2], [1, 3], [2, 4]], 5)
    reduct = heuristic_reduct(sr, 5)
    assert reduct.to_list() == [1, 2]
    assert all(cset & reduct for cset in sr)


def test_heuristic_reduct_degenerate(caplog):
    assert heuristic_reduct([], 3) == CoveringIndexSet.empty(3)
    assert "heuristic reduct is empty" in caplog.text
    with pytest.raises(ValueError):
        heuristic_reduct([])
    with pytest.raises(ValueError):
        heuristic_reduct(_sets([[0], []], 2), 2)


def test_reductset():
    reducts = ReductSet(_sets([[2, 3], [0, 1], [1, 3]], 4), 4)
    assert reducts.to_lists() == [[0, 1], [1, 3], [2, 3]]
    assert len(reducts) == 3
    assert CoveringIndexSet([1, 3], 4) in reducts
    assert reducts.containing(3).to_lists() == [[1, 3], [2, 3]]
    assert reducts.without(3).to_lists() == [[0, 1]]
    assert reducts.to_dict(CoveringIndexSet([0, 1], 4)) == {
        "reducts": [[0, 1], [1, 3], [2, 3]],
        "heuristic": [0, 1],
    }
    assert reducts == ReductSet(reversed(reducts.reducts), 4)
    with pytest.raises(ValueError, match="not minimal"):
        ReductSet(_sets([[0], [0, 1]], 4), 4)
    with pytest.raises(ValueError):
        ReductSet(_sets([[0]], 3), 4)
