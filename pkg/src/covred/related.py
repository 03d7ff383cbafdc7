"""Related families of covering decision systems.

A block is admissible when it is contained in some decision class. The
related set r(x) of an object holds the indices of the coverings owning an
admissible block that contains x, and the related family maps every object
of the positive region to its related set. The minimal related sets (the
inclusion-minimal distinct related sets) drive both the exact and the
heuristic reduct computations.
"""
import logging
from typing import Dict, Iterable, List, Mapping, Tuple

import numpy as np

from covred import getLogger
from covred.core import (
    BitSet,
    Covering,
    CoveringDecisionSystem,
    DecisionPartition,
    ObjectSet,
)

logger = getLogger(__name__)


class CoveringIndexSet(BitSet):
    """A set of covering indices ``0..m-1``"""

    __slots__ = ()

    @property
    def m(self) -> int:
        return self.size


class RelatedFamily:
    """The map x -> r(x) over the positive region.

    Args:
        pos: The positive region
        sets: Related set for every member of pos, all nonempty
        m: Number of coverings in the system
    """

    __slots__ = ("pos", "sets", "m")

    def __init__(
        self, pos: ObjectSet, sets: Mapping[int, CoveringIndexSet], m: int
    ) -> None:
        if set(sets) != set(pos):
            raise ValueError(
                "Related sets must be defined exactly on the positive region"
            )
        for x, rset in sets.items():
            if not rset:
                raise ValueError(
                    f"Related set of object {x} in the positive region is empty"
                )
            if rset.m != m:
                raise ValueError(
                    f"Related set of object {x} is over {rset.m} coverings"
                )
        self.pos = pos
        self.sets: Dict[int, CoveringIndexSet] = dict(sets)
        self.m = m

    @classmethod
    def trusted(
        cls, pos: ObjectSet, sets: Dict[int, CoveringIndexSet], m: int
    ) -> "RelatedFamily":
        """Construct without validation, taking ownership of ``sets``.

        Only for internal builders that maintain the invariants themselves.
        """
        family = cls.__new__(cls)
        family.pos = pos
        family.sets = sets
        family.m = m
        return family

    @property
    def n(self) -> int:
        return self.pos.n

    def distinct(self) -> List[CoveringIndexSet]:
        """The distinct related sets, lexicographically ordered"""
        return sorted(set(self.sets.values()), key=CoveringIndexSet.sort_key)

    def fingerprint(self) -> int:
        """Cheap hash of the positive region and the related set sizes"""
        return hash(
            (self.pos.bits, tuple(len(self.sets[x]) for x in sorted(self.sets)))
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RelatedFamily)
            and self.m == other.m
            and self.pos == other.pos
            and self.sets == other.sets
        )

    def __hash__(self) -> int:
        return hash((self.pos, frozenset(self.sets.items())))

    def __repr__(self) -> str:
        return (
            f"RelatedFamily(|pos|={len(self.pos)}, n={self.n}, m={self.m}, "
            f"distinct={len(self.distinct())})"
        )


def is_admissible(block: ObjectSet, decision: DecisionPartition) -> bool:
    return any(block <= dclass for dclass in decision.classes)


def admissible_blocks(system: CoveringDecisionSystem) -> List[Tuple[int, ObjectSet]]:
    """All (covering index, block) pairs where the block lies inside a
    decision class"""
    return [
        (idx, block)
        for idx, covering in enumerate(system.coverings)
        for block in covering.blocks
        if is_admissible(block, system.decision)
    ]


def admissible_union(covering: Covering, decision: DecisionPartition) -> ObjectSet:
    """Union of the admissible blocks of a single covering"""
    bits = 0
    for block in covering.blocks:
        if is_admissible(block, decision):
            bits |= block.bits
    return ObjectSet.from_bits(bits, covering.n)


def related_set(system: CoveringDecisionSystem, x: int) -> CoveringIndexSet:
    """r(x), empty when x is outside the positive region"""
    if not 0 <= x < system.n:
        raise ValueError(f"Object {x} is not in the universe of size {system.n}")
    return CoveringIndexSet(
        (
            idx
            for idx, covering in enumerate(system.coverings)
            if any(
                x in block and is_admissible(block, system.decision)
                for block in covering.blocks
            )
        ),
        system.m,
    )


def family_from_unions(unions: Iterable[ObjectSet], n: int) -> RelatedFamily:
    """Assemble the related family from the admissible union of every
    covering, in covering order"""
    unions = list(unions)
    m = len(unions)
    pos_bits = 0
    for union in unions:
        pos_bits |= union.bits
    pos = ObjectSet.from_bits(pos_bits, n)
    # Row i of the membership matrix is the admissible union of covering i,
    # weighting the rows by 2**i gives the bits of r(x) column by column.
    membership = np.stack([union.to_mask() for union in unions]).astype(object)
    weights = np.array([1 << idx for idx in range(m)], dtype=object)
    codes = weights.dot(membership)
    sets = {x: CoveringIndexSet.from_bits(int(codes[x]), m) for x in pos}
    return RelatedFamily.trusted(pos, sets, m)


def related_family(system: CoveringDecisionSystem) -> RelatedFamily:
    """The related family over the positive region of the system"""
    family = family_from_unions(
        (admissible_union(covering, system.decision) for covering in system.coverings),
        system.n,
    )
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(
            "Related family: %d of %d objects in POS, %d distinct related sets",
            len(family.pos),
            system.n,
            len(family.distinct()),
        )
    return family


def minimal_antichain(sets: Iterable[CoveringIndexSet]) -> List[CoveringIndexSet]:
    """Distinct sets that have no proper subset among the input, sorted
    lexicographically"""
    # Sorting on cardinality first means only earlier sets can absorb later
    candidates = sorted(set(sets), key=lambda cset: (len(cset), cset.sort_key()))
    minimal: List[CoveringIndexSet] = []
    for cset in candidates:
        if not any(kept <= cset for kept in minimal):
            minimal.append(cset)
    return sorted(minimal, key=CoveringIndexSet.sort_key)


def minimal_related_sets(family: RelatedFamily) -> List[CoveringIndexSet]:
    """SR: the related sets that are minimal under inclusion"""
    return minimal_antichain(family.sets.values())


def covering_frequencies(sr: Iterable[CoveringIndexSet], m: int) -> List[int]:
    """Number of elements of the antichain containing each covering"""
    counts = [0] * m
    for cset in sr:
        for idx in cset:
            counts[idx] += 1
    return counts
