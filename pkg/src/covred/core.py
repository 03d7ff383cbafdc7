"""Domain types for covering decision information systems.

A covering decision information system is a finite universe of objects
identified by the dense integers ``0..n-1``, an ordered family of coverings
(the condition attributes) and a decision partition. All sets of objects are
stored as :class:`ObjectSet` bit vectors backed by Python integers, so that
subset tests, unions and intersections are single big-integer operations.

All types are immutable after construction.
"""
import json
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from covred import getLogger

logger = getLogger(__name__)


class CoveringError(ValueError):
    """Base class for invalid universes, coverings and decision partitions"""


class EmptyBlockError(CoveringError):
    """A block of a covering is empty"""


class NotACoveringError(CoveringError):
    """The union of the blocks does not equal the universe"""


class NotAPartitionError(CoveringError):
    """Decision classes overlap, leave gaps or are empty"""


class UniverseMismatchError(CoveringError):
    """Sets or coverings over different universes were combined"""


class EmptyRestrictionError(CoveringError):
    """Restriction to an empty set of objects was requested"""


class RestrictionBreaksCoveringError(CoveringError):
    """A restricted covering no longer covers the sub-universe"""


def popcount(bits: int) -> int:
    """Number of set bits in a non-negative integer"""
    return bin(bits).count("1")


def iter_bits(bits: int) -> Iterator[int]:
    """Iterate over the positions of the set bits, in increasing order"""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


class BitSet:
    """An immutable set of integers ``0..size-1`` stored in the bits of an
    integer.

    Subclasses fix the meaning of the indices (objects or coverings). Sets
    of different subclasses or sizes never compare equal, and combining them
    raises :class:`UniverseMismatchError`.
    """

    __slots__ = ("bits", "size")

    def __init__(self, members: Iterable[int] = (), size: int = 0) -> None:
        bits = 0
        for value in members:
            member = int(value)
            if member != value:
                raise ValueError(f"{value!r} is not an integer index")
            if not 0 <= member < size:
                raise ValueError(
                    f"{member} is outside of {self.__class__.__name__} "
                    f"of size {size}"
                )
            bits |= 1 << member
        self.bits = bits
        self.size = size

    @classmethod
    def from_bits(cls, bits: int, size: int):
        """Construct directly from an integer bit pattern"""
        if bits < 0 or bits >> size:
            raise ValueError(f"Bit pattern does not fit in size {size}")
        obj = cls.__new__(cls)
        obj.bits = bits
        obj.size = size
        return obj

    @classmethod
    def from_mask(cls, mask: Sequence[bool]):
        """Construct from a boolean array, position i set when mask[i] is true"""
        mask = np.asarray(mask, dtype=bool)
        packed = np.packbits(mask, bitorder="little")
        return cls.from_bits(int.from_bytes(packed.tobytes(), "little"), len(mask))

    @classmethod
    def full(cls, size: int):
        return cls.from_bits((1 << size) - 1, size)

    @classmethod
    def empty(cls, size: int):
        return cls.from_bits(0, size)

    def _check(self, other: "BitSet") -> None:
        if other.__class__ is not self.__class__ or other.size != self.size:
            raise UniverseMismatchError(
                f"Can't combine {self!r} (size {self.size}) "
                f"with {other!r} (size {other.size})"
            )

    def __contains__(self, member: Any) -> bool:
        return 0 <= member < self.size and bool((self.bits >> member) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return popcount(self.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other: Any) -> bool:
        return (
            other.__class__ is self.__class__
            and other.size == self.size
            and other.bits == self.bits
        )

    def __hash__(self) -> int:
        return hash((self.__class__.__name__, self.size, self.bits))

    def __or__(self, other: "BitSet"):
        self._check(other)
        return self.from_bits(self.bits | other.bits, self.size)

    def __and__(self, other: "BitSet"):
        self._check(other)
        return self.from_bits(self.bits & other.bits, self.size)

    def __sub__(self, other: "BitSet"):
        self._check(other)
        return self.from_bits(self.bits & ~other.bits, self.size)

    def __le__(self, other: "BitSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "BitSet") -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: "BitSet") -> bool:
        return other <= self

    def __gt__(self, other: "BitSet") -> bool:
        return other < self

    def issubset(self, other: "BitSet") -> bool:
        return self <= other

    def isdisjoint(self, other: "BitSet") -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    def complement(self):
        return self.from_bits(((1 << self.size) - 1) & ~self.bits, self.size)

    def with_member(self, member: int):
        if not 0 <= member < self.size:
            raise ValueError(f"{member} is outside of size {self.size}")
        return self.from_bits(self.bits | (1 << member), self.size)

    def without_member(self, member: int):
        return self.from_bits(self.bits & ~(1 << member), self.size)

    def to_list(self) -> List[int]:
        return list(iter_bits(self.bits))

    def to_mask(self) -> np.ndarray:
        """Boolean array of length size, the inverse of from_mask"""
        nbytes = (self.size + 7) // 8
        packed = np.frombuffer(self.bits.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(packed, bitorder="little")[: self.size].astype(bool)

    def sort_key(self) -> Tuple[int, ...]:
        """Lexicographic ordering key on the sorted member list"""
        return tuple(iter_bits(self.bits))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.to_list()}, size={self.size})"


class ObjectSet(BitSet):
    """A subset of the universe ``0..n-1``"""

    __slots__ = ()

    @property
    def n(self) -> int:
        return self.size


def union_all(sets: Iterable[ObjectSet], n: int) -> ObjectSet:
    """Union of any number of object sets over a universe of size n"""
    bits = 0
    for objset in sets:
        if objset.size != n:
            raise UniverseMismatchError(
                f"Expected universe size {n}, got {objset.size}"
            )
        bits |= objset.bits
    return ObjectSet.from_bits(bits, n)


def _as_objectset(block: Union[ObjectSet, Iterable[int]], n: int) -> ObjectSet:
    if isinstance(block, ObjectSet):
        if block.n != n:
            raise UniverseMismatchError(
                f"Block over universe of size {block.n}, expected {n}"
            )
        return block
    try:
        return ObjectSet(block, n)
    except ValueError as err:
        raise UniverseMismatchError(str(err)) from err


class Covering:
    """A family of nonempty blocks whose union is the universe.

    Duplicate blocks are removed on construction, otherwise the block order
    is kept.
    """

    __slots__ = ("blocks", "n", "_md_cache")

    def __init__(self, blocks: Iterable[Union[ObjectSet, Iterable[int]]], n: int):
        if n < 1:
            raise CoveringError("The universe must contain at least one object")
        unique: Dict[int, ObjectSet] = {}
        for block in blocks:
            objset = _as_objectset(block, n)
            if not objset:
                raise EmptyBlockError("Coverings can not contain empty blocks")
            unique.setdefault(objset.bits, objset)
        self.blocks: Tuple[ObjectSet, ...] = tuple(unique.values())
        self.n = n
        if union_all(self.blocks, n).bits != (1 << n) - 1:
            missing = ObjectSet.full(n) - union_all(self.blocks, n)
            raise NotACoveringError(
                f"Objects {missing.to_list()} are not in any block of the covering"
            )
        # Minimal descriptions, filled lazily by covred.approx
        self._md_cache: Dict[int, List[ObjectSet]] = {}

    @classmethod
    def from_lists(cls, blocks: Iterable[Iterable[int]], n: int) -> "Covering":
        return cls([ObjectSet(block, n) for block in blocks], n)

    def blocks_containing(self, x: int) -> List[ObjectSet]:
        return [block for block in self.blocks if x in block]

    def is_partition(self) -> bool:
        return sum(len(block) for block in self.blocks) == self.n

    def to_lists(self) -> List[List[int]]:
        return [block.to_list() for block in self.blocks]

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[ObjectSet]:
        return iter(self.blocks)

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, Covering)
            and self.n == other.n
            and set(self.blocks) == set(other.blocks)
        )

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.blocks)))

    def __repr__(self) -> str:
        return f"Covering({self.to_lists()}, n={self.n})"


class DecisionPartition:
    """Pairwise disjoint, nonempty decision classes covering the universe"""

    __slots__ = ("classes", "n")

    def __init__(self, classes: Iterable[Union[ObjectSet, Iterable[int]]], n: int):
        self.classes: Tuple[ObjectSet, ...] = tuple(
            _as_objectset(dclass, n) for dclass in classes
        )
        self.n = n
        seen = 0
        for dclass in self.classes:
            if not dclass:
                raise NotAPartitionError("Decision classes must be nonempty")
            if seen & dclass.bits:
                overlap = ObjectSet.from_bits(seen & dclass.bits, n)
                raise NotAPartitionError(
                    f"Objects {overlap.to_list()} are in more than one decision class"
                )
            seen |= dclass.bits
        if seen != (1 << n) - 1:
            gap = ObjectSet.from_bits(((1 << n) - 1) & ~seen, n)
            raise NotAPartitionError(
                f"Objects {gap.to_list()} are not in any decision class"
            )

    def to_lists(self) -> List[List[int]]:
        return [dclass.to_list() for dclass in self.classes]

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[ObjectSet]:
        return iter(self.classes)

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, DecisionPartition)
            and self.n == other.n
            and set(self.classes) == set(other.classes)
        )

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.classes)))

    def __repr__(self) -> str:
        return f"DecisionPartition({self.to_lists()}, n={self.n})"


class CoveringDecisionSystem:
    """The triple (U, Δ, 𝒟).

    Coverings are identified by their position in ``coverings``; two equal
    coverings at different positions are different attributes. The
    optional ``labels`` map object ids back to external row labels.
    """

    __slots__ = ("n", "coverings", "decision", "labels")

    def __init__(
        self,
        n: int,
        coverings: Sequence[Covering],
        decision: DecisionPartition,
        labels: Optional[Sequence[str]] = None,
    ) -> None:
        if not coverings:
            raise CoveringError(
                "A covering decision system needs at least one covering"
            )
        for idx, covering in enumerate(coverings):
            if covering.n != n:
                raise UniverseMismatchError(
                    f"Covering {idx} is over {covering.n} objects, expected {n}"
                )
        if decision.n != n:
            raise UniverseMismatchError(
                f"Decision partition is over {decision.n} objects, expected {n}"
            )
        if labels is not None and len(labels) != n:
            raise UniverseMismatchError(f"Got {len(labels)} labels for {n} objects")
        self.n = n
        self.coverings: Tuple[Covering, ...] = tuple(coverings)
        self.decision = decision
        self.labels: Optional[Tuple[str, ...]] = (
            tuple(str(label) for label in labels) if labels is not None else None
        )

    @property
    def m(self) -> int:
        return len(self.coverings)

    @property
    def k(self) -> int:
        return len(self.decision)

    @property
    def universe(self) -> ObjectSet:
        return ObjectSet.full(self.n)

    def replace_covering(
        self, index: int, covering: Covering
    ) -> "CoveringDecisionSystem":
        """A new system where the covering at ``index`` is swapped out"""
        if not 0 <= index < self.m:
            raise IndexError(f"No covering at index {index}, m={self.m}")
        coverings = list(self.coverings)
        coverings[index] = covering
        return CoveringDecisionSystem(self.n, coverings, self.decision, self.labels)

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, CoveringDecisionSystem)
            and self.n == other.n
            and self.coverings == other.coverings
            and self.decision == other.decision
        )

    def __hash__(self) -> int:
        return hash((self.n, self.coverings, self.decision))

    def __repr__(self) -> str:
        return f"CoveringDecisionSystem(n={self.n}, m={self.m}, k={self.k})"


def build_system(
    n: int,
    coverings: Sequence[Sequence[Iterable[int]]],
    decision: Sequence[Iterable[int]],
    labels: Optional[Sequence[str]] = None,
) -> CoveringDecisionSystem:
    """Build and validate a covering decision system from plain lists.

    Args:
        n: Number of objects in the universe
        coverings: One list of blocks per covering, each block an iterable
            of object ids.
        decision: The decision classes as iterables of object ids.
        labels: Optional external labels for the objects.

    Returns:
        The validated system. Duplicate blocks within a covering are removed.
    """
    if n < 1:
        raise CoveringError("The universe must contain at least one object")
    system = CoveringDecisionSystem(
        n,
        [Covering(blocks, n) for blocks in coverings],
        DecisionPartition(decision, n),
        labels,
    )
    logger.debug("Built system with n=%d, m=%d, k=%d", n, system.m, system.k)
    return system


def restrict(system: CoveringDecisionSystem, keep: ObjectSet) -> CoveringDecisionSystem:
    """Restrict a system to a subset of its objects.

    Objects are reindexed densely in increasing id order, every block and
    decision class is intersected with ``keep`` and empty blocks are dropped.
    """
    if keep.n != system.n:
        raise UniverseMismatchError(
            f"Restriction set is over {keep.n} objects, system has {system.n}"
        )
    if not keep:
        raise EmptyRestrictionError("Can't restrict a system to no objects")
    keep_mask = keep.to_mask()
    n_sub = int(keep_mask.sum())
    if n_sub == system.n:
        return system

    def _reindex(objset: ObjectSet) -> ObjectSet:
        return ObjectSet.from_mask(objset.to_mask()[keep_mask])

    coverings = []
    for idx, covering in enumerate(system.coverings):
        blocks = [block for block in map(_reindex, covering.blocks) if block]
        try:
            coverings.append(Covering(blocks, n_sub))
        except NotACoveringError as err:
            raise RestrictionBreaksCoveringError(
                f"Covering {idx} does not cover the restricted universe"
            ) from err
    decision = DecisionPartition(
        [dclass for dclass in map(_reindex, system.decision.classes) if dclass], n_sub
    )
    labels = (
        [system.labels[old] for old in keep] if system.labels is not None else None
    )
    logger.debug("Restricted system from %d to %d objects", system.n, n_sub)
    return CoveringDecisionSystem(n_sub, coverings, decision, labels)


def system_to_dict(system: CoveringDecisionSystem) -> Dict[str, Any]:
    """Dictionary in the JSON layout used by fixtures and the command line"""
    data: Dict[str, Any] = {
        "n": system.n,
        "coverings": [covering.to_lists() for covering in system.coverings],
        "decision": system.decision.to_lists(),
    }
    if system.labels is not None:
        data["labels"] = list(system.labels)
    return data


def system_from_dict(data: Dict[str, Any]) -> CoveringDecisionSystem:
    """Inverse of system_to_dict, with full validation"""
    for key in ("n", "coverings", "decision"):
        if key not in data:
            raise CoveringError(f"Missing key '{key}' in system definition")
    return build_system(
        int(data["n"]), data["coverings"], data["decision"], data.get("labels")
    )


def load_system(path: Union[str, Path]) -> CoveringDecisionSystem:
    """Load a system from a JSON file"""
    logger.info("Loading covering decision system from %s", str(path))
    return system_from_dict(json.loads(Path(path).read_text()))


def dump_system(system: CoveringDecisionSystem, path: Union[str, Path]) -> None:
    """Write a system to a JSON file"""
    Path(path).write_text(json.dumps(system_to_dict(system)))
    logger.info("Wrote covering decision system to %s", str(path))
