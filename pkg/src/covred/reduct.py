"""Attribute reducts of covering decision systems.

A reduct is a minimal sub-family of the coverings that preserves the positive
region. Reducts are exactly the minimal hitting sets (transversals) of the
minimal related sets SR, which is how all reducts are enumerated. The greedy
heuristic picks the covering hitting the most uncovered minimal related sets
until all are hit, and then drops redundant picks.
"""
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Union

from covred import getLogger
from covred.approx import positive_region
from covred.core import CoveringDecisionSystem, iter_bits
from covred.related import (
    CoveringIndexSet,
    RelatedFamily,
    covering_frequencies,
    minimal_antichain,
    minimal_related_sets,
)

logger = getLogger(__name__)


class ReductSet:
    """An antichain of covering index sets, kept in lexicographic order"""

    __slots__ = ("reducts", "m")

    def __init__(self, reducts: Iterable[CoveringIndexSet], m: int) -> None:
        unique = set(reducts)
        for reduct in unique:
            if reduct.m != m:
                raise ValueError(f"Reduct {reduct} is not over {m} coverings")
            if any(other < reduct for other in unique):
                raise ValueError(f"Reduct {reduct} is not minimal in the set")
        self.reducts = tuple(sorted(unique, key=CoveringIndexSet.sort_key))
        self.m = m

    def containing(self, index: int) -> "ReductSet":
        return ReductSet((red for red in self.reducts if index in red), self.m)

    def without(self, index: int) -> "ReductSet":
        """The reducts that do not use the covering at ``index``"""
        return ReductSet((red for red in self.reducts if index not in red), self.m)

    def to_lists(self) -> List[List[int]]:
        return [reduct.to_list() for reduct in self.reducts]

    def to_dict(self, heuristic: Optional[CoveringIndexSet] = None) -> Dict[str, Any]:
        data: Dict[str, Any] = {"reducts": self.to_lists()}
        if heuristic is not None:
            data["heuristic"] = heuristic.to_list()
        return data

    def __iter__(self) -> Iterator[CoveringIndexSet]:
        return iter(self.reducts)

    def __len__(self) -> int:
        return len(self.reducts)

    def __contains__(self, item: Any) -> bool:
        return item in self.reducts

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, ReductSet)
            and self.m == other.m
            and self.reducts == other.reducts
        )

    def __hash__(self) -> int:
        return hash((self.m, self.reducts))

    def __repr__(self) -> str:
        return f"ReductSet({self.to_lists()}, m={self.m})"


def _critical_bits(chosen: int, masks: Sequence[int]) -> int:
    """Members of ``chosen`` that are the only chosen member of some set"""
    critical = 0
    for mask in masks:
        common = mask & chosen
        if common and not common & (common - 1):
            critical |= common
    return critical


def minimal_hitting_sets(
    sets: Iterable[CoveringIndexSet], m: int
) -> List[CoveringIndexSet]:
    """All minimal sets of covering indices meeting every input set.

    Depth-first search branching on the first unhit set in lexicographic
    order. Every picked element must stay the only pick hitting some set,
    and elements tried in earlier sibling branches are excluded, so each
    minimal hitting set is reached exactly once.

    An empty input gives the single empty hitting set. An input containing
    the empty set can not be hit and gives no hitting sets.
    """
    antichain = minimal_antichain(sets)
    for cset in antichain:
        if cset.m != m:
            raise ValueError(f"Set {cset} is not over {m} coverings")
    if not antichain:
        return [CoveringIndexSet.empty(m)]
    if not antichain[0]:
        return []
    masks = [cset.bits for cset in antichain]
    found: List[int] = []

    def _extend(chosen: int, excluded: int) -> None:
        unhit = next((mask for mask in masks if not mask & chosen), None)
        if unhit is None:
            found.append(chosen)
            return
        for idx in iter_bits(unhit & ~excluded):
            candidate = chosen | (1 << idx)
            if _critical_bits(candidate, masks) == candidate:
                _extend(candidate, excluded)
            excluded |= 1 << idx

    _extend(0, 0)
    logger.debug("Found %d minimal hitting sets of %d sets", len(found), len(masks))
    return sorted(
        (CoveringIndexSet.from_bits(bits, m) for bits in found),
        key=CoveringIndexSet.sort_key,
    )


def all_reducts(family: RelatedFamily) -> ReductSet:
    """Every reduct, as the minimal hitting sets of the minimal related sets.

    With an empty positive region the only reduct is the empty family.
    """
    sr = minimal_related_sets(family)
    if not sr:
        logger.warning("Empty positive region, the empty family is the only reduct")
    reducts = ReductSet(minimal_hitting_sets(sr, family.m), family.m)
    logger.info("Found %d reducts from %d minimal related sets", len(reducts), len(sr))
    return reducts


def _as_index_set(indices: Union[CoveringIndexSet, Iterable[int]], m: int):
    if isinstance(indices, CoveringIndexSet):
        return indices
    return CoveringIndexSet(indices, m)


def is_reduct(
    system: CoveringDecisionSystem, indices: Union[CoveringIndexSet, Iterable[int]]
) -> bool:
    """Check by positive regions that a sub-family is a reduct.

    The sub-family must preserve the positive region of the whole family,
    and removing any single member must change it.
    """
    candidate = _as_index_set(indices, system.m)
    full_pos = positive_region(system)
    if positive_region(system, candidate) != full_pos:
        return False
    for idx in candidate:
        if positive_region(system, candidate.without_member(idx)) == full_pos:
            logger.debug("Covering %d is superfluous in %s", idx, candidate.to_list())
            return False
    return True


def preserves_positive_region(
    system: CoveringDecisionSystem, indices: Union[CoveringIndexSet, Iterable[int]]
) -> bool:
    """The first half of the reduct definition, without minimality"""
    candidate = _as_index_set(indices, system.m)
    return positive_region(system, candidate) == positive_region(system)


def is_superfluous(system: CoveringDecisionSystem, index: int) -> bool:
    """Whether removing one covering leaves the positive region unchanged"""
    others = [idx for idx in range(system.m) if idx != index]
    return positive_region(system, others) == positive_region(system)


def indispensable_coverings(family: RelatedFamily) -> CoveringIndexSet:
    """Coverings that can not be removed without shrinking the positive
    region, which is the intersection of all reducts.

    A covering is indispensable exactly when it is the single member of
    some related set.
    """
    bits = 0
    for cset in minimal_related_sets(family):
        if len(cset) == 1:
            bits |= cset.bits
    return CoveringIndexSet.from_bits(bits, family.m)


def heuristic_reduct(
    sr: Iterable[CoveringIndexSet], m: Optional[int] = None
) -> CoveringIndexSet:
    """Greedy reduct over the minimal related sets.

    Repeatedly picks the covering contained in most of the sets not yet hit,
    the lowest index winning ties. Picks are then revisited in reverse order
    and dropped when the remaining picks still hit every set.

    Args:
        sr: The minimal related sets
        m: Number of coverings, only needed when sr is empty

    Returns:
        A minimal set of covering indices hitting every set of sr
    """
    sr = list(sr)
    if m is None:
        if not sr:
            raise ValueError("Number of coverings is needed for an empty input")
        m = sr[0].m
    if not sr:
        logger.warning("Empty positive region, the heuristic reduct is empty")
        return CoveringIndexSet.empty(m)
    if any(not cset for cset in sr):
        raise ValueError("An empty related set can not be hit")

    masks = [cset.bits for cset in sr]
    uncovered = list(sr)
    picks: List[int] = []
    chosen = 0
    while uncovered:
        counts = covering_frequencies(uncovered, m)
        best = max(range(m), key=lambda idx: (counts[idx], -idx))
        logger.debug("Picked covering %d hitting %d sets", best, counts[best])
        picks.append(best)
        chosen |= 1 << best
        uncovered = [cset for cset in uncovered if best not in cset]

    for idx in reversed(picks):
        trial = chosen & ~(1 << idx)
        if all(mask & trial for mask in masks):
            logger.debug("Dropped redundant covering %d", idx)
            chosen = trial
    return CoveringIndexSet.from_bits(chosen, m)
