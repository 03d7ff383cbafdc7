"""Third-type covering approximations and the positive, boundary and
negative regions of a covering decision system.

For a covering 𝒞 and a set of objects X:

* the lower approximation CL(X) is the union of the blocks contained in X,
* the upper approximation CH(X) is the union of the minimal descriptions
  Md(x) for x in X.

Region computations use the union covering ∪Δ of the system, optionally
restricted to a sub-family of the coverings.
"""
from dataclasses import dataclass
from typing import Iterable, List, Optional

from covred import getLogger
from covred.core import Covering, CoveringDecisionSystem, ObjectSet, union_all

logger = getLogger(__name__)


@dataclass(frozen=True)
class RegionTriple:
    """Positive, boundary and negative region of a set of objects"""

    pos: ObjectSet
    bnd: ObjectSet
    neg: ObjectSet


def union_covering(
    system: CoveringDecisionSystem, indices: Optional[Iterable[int]] = None
) -> Covering:
    """The single covering made of all distinct blocks of all coverings.

    Args:
        system: The covering decision system
        indices: If given, only the coverings at these positions are joined.
            The sub-family must be nonempty.
    """
    if indices is None:
        coverings = system.coverings
    else:
        coverings = tuple(system.coverings[idx] for idx in indices)
    if not coverings:
        raise ValueError("Can't build the union of an empty family of coverings")
    return Covering(
        [block for covering in coverings for block in covering.blocks], system.n
    )


def minimal_description(covering: Covering, x: int) -> List[ObjectSet]:
    """Blocks containing x that are minimal under inclusion, in block order.

    Results are memoized on the covering.
    """
    if not 0 <= x < covering.n:
        raise ValueError(f"Object {x} is not in the universe of size {covering.n}")
    # pylint: disable=protected-access
    cached = covering._md_cache.get(x)
    if cached is not None:
        return cached
    containing = covering.blocks_containing(x)
    minimal = [
        block
        for block in containing
        if not any(other < block for other in containing)
    ]
    covering._md_cache[x] = minimal
    return minimal


def lower_approx(covering: Covering, objects: ObjectSet) -> ObjectSet:
    """CL(X): union of all blocks contained in X"""
    return union_all(
        (block for block in covering.blocks if block <= objects), covering.n
    )


def upper_approx(covering: Covering, objects: ObjectSet) -> ObjectSet:
    """CH(X): union of the minimal descriptions of the members of X.

    On a partition the minimal description of x is its own block, so CH(X)
    is the union of the blocks meeting X.
    """
    if covering.is_partition():
        return union_all(
            (block for block in covering.blocks if not block.isdisjoint(objects)),
            covering.n,
        )
    return union_all(
        (block for x in objects for block in minimal_description(covering, x)),
        covering.n,
    )


def positive_region(
    system: CoveringDecisionSystem, indices: Optional[Iterable[int]] = None
) -> ObjectSet:
    """POS of the decision partition under the union covering.

    With ``indices`` the positive region of the sub-family at those positions
    is computed, an empty sub-family giving an empty positive region.
    """
    if indices is not None:
        indices = list(indices)
        if not indices:
            return ObjectSet.empty(system.n)
    covering = union_covering(system, indices)
    return union_all(
        (lower_approx(covering, dclass) for dclass in system.decision.classes),
        system.n,
    )


def classify_regions(
    system: CoveringDecisionSystem, objects: ObjectSet
) -> RegionTriple:
    """Positive, boundary and negative region of X under ∪Δ"""
    covering = union_covering(system)
    lower = lower_approx(covering, objects)
    upper = upper_approx(covering, objects)
    return RegionTriple(pos=lower, bnd=upper - lower, neg=upper.complement())


def is_consistent(system: CoveringDecisionSystem) -> bool:
    """A system is consistent when every object is in the positive region"""
    pos = positive_region(system)
    if len(pos) < system.n:
        logger.info(
            "System is inconsistent, %d of %d objects in the positive region",
            len(pos),
            system.n,
        )
        return False
    return True
