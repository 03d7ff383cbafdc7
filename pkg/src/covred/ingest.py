"""Turn numeric data tables into covering decision systems.

Tables are read from CSV with pandas, min-max normalized into [0, 1], and
every conditional attribute gives one ε-neighborhood covering: the block of
object x is N(x) = {y : |a(x) - a(y)| <= ε}. The decision column partitions
the objects. Optionally one joint covering is built from the Euclidean
distance over all attributes.

The random refine and coarsen generators use numpy's PCG64 bit generator
seeded with a 64 bit integer, so that mutations reproduce across platforms.
"""
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from scipy.spatial import cKDTree

from covred import getLogger
from covred.core import (
    Covering,
    CoveringDecisionSystem,
    DecisionPartition,
    ObjectSet,
)

logger = getLogger(__name__)

DEFAULT_EPSILON = 0.05
DEFAULT_INTENSITY = 0.3


class IngestError(ValueError):
    """Base class for problems with input tables"""


class EmptyFileError(IngestError):
    """The input file has no data rows"""


class ParseError(IngestError):
    """A row of the input file could not be parsed"""

    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"Line {line}: {message}")
        self.line = line


class NonNumericConditionalError(IngestError):
    """A conditional attribute holds a value that is not a number"""

    def __init__(self, column: str, line: int, value: str) -> None:
        super().__init__(
            f"Line {line}: non-numeric value '{value}' in conditional column '{column}'"
        )
        self.column = column
        self.line = line


@dataclass(frozen=True)
class NumericTable:
    """Conditional attribute values and decision labels of n objects.

    Attributes:
        values: n x a float array
        labels: decision label of every object
        attribute_names: names of the a conditional attributes
        row_labels: external label of every object (line numbers in the file)
    """

    values: np.ndarray
    labels: Sequence[str]
    attribute_names: Sequence[str]
    row_labels: Optional[Sequence[str]] = None

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def a(self) -> int:
        return self.values.shape[1]


def _resolve_decision_column(
    dframe: pd.DataFrame, decision_column: Optional[Union[str, int]]
) -> str:
    if decision_column is None:
        return dframe.columns[-1]
    if decision_column in dframe.columns:
        return decision_column
    if isinstance(decision_column, int) or str(decision_column).lstrip("-").isdigit():
        position = int(decision_column)
        if -len(dframe.columns) <= position < len(dframe.columns):
            return dframe.columns[position]
    raise IngestError(f"Decision column '{decision_column}' not found in input")


def load_csv(
    path: Union[str, Path],
    decision_column: Optional[Union[str, int]] = None,
    header: bool = True,
) -> NumericTable:
    """Load a comma separated table.

    Args:
        path: CSV file
        decision_column: Name or position of the decision column, the last
            column if not given
        header: Whether the first line holds column names. Without a header,
            columns are named by their position ("0", "1", ...).

    Returns:
        The table, with conditional columns parsed as floats and the decision
        column kept as strings.
    """
    # Line number in the file of the first data row
    first_line = 2 if header else 1
    try:
        dframe = pd.read_csv(
            path, header=0 if header else None, dtype=str, skipinitialspace=True
        )
    except pd.errors.EmptyDataError as err:
        raise EmptyFileError(f"No data in {path}") from err
    except pd.errors.ParserError as err:
        raise ParseError(str(err), _parser_error_line(str(err))) from err
    if not header:
        dframe.columns = [str(col) for col in dframe.columns]
    if dframe.empty:
        raise EmptyFileError(f"No data rows in {path}")
    if len(dframe.columns) < 2:
        raise IngestError("Need at least one conditional column and a decision column")

    missing = dframe.isnull().any(axis=1)
    if missing.any():
        row = int(np.flatnonzero(missing.values)[0])
        column = dframe.columns[dframe.iloc[row].isnull().values][0]
        raise ParseError(f"Missing value in column '{column}'", first_line + row)

    decision = _resolve_decision_column(dframe, decision_column)
    conditional = [col for col in dframe.columns if col != decision]
    numeric = dframe[conditional].apply(pd.to_numeric, errors="coerce")
    bad = numeric.isnull()
    if bad.values.any():
        row, col = (int(idx[0]) for idx in np.nonzero(bad.values))
        raise NonNumericConditionalError(
            conditional[col], first_line + row, dframe[conditional[col]].iloc[row]
        )
    table = NumericTable(
        values=numeric.to_numpy(dtype=float),
        labels=[str(label) for label in dframe[decision]],
        attribute_names=[str(col) for col in conditional],
        row_labels=[str(first_line + row) for row in range(len(dframe))],
    )
    logger.info(
        "Loaded %d objects with %d conditional attributes from %s, decision '%s'",
        table.n,
        table.a,
        str(path),
        decision,
    )
    return table


def _parser_error_line(message: str) -> int:
    """Extract the line number pandas reports in tokenizing errors"""
    words = message.replace(",", " ").split()
    for word, following in zip(words, words[1:]):
        if word == "line" and following.isdigit():
            return int(following)
    return 0


def normalize(table: NumericTable) -> NumericTable:
    """Min-max normalize every conditional attribute into [0, 1].

    Constant attributes map to 0.
    """
    values = table.values
    minimum = values.min(axis=0)
    spread = values.max(axis=0) - minimum
    constant = spread == 0
    if constant.any():
        logger.info(
            "Constant attributes %s normalized to 0",
            [name for name, flag in zip(table.attribute_names, constant) if flag],
        )
    scaled = np.where(
        constant, 0.0, (values - minimum) / np.where(constant, 1.0, spread)
    )
    return NumericTable(
        values=scaled,
        labels=table.labels,
        attribute_names=table.attribute_names,
        row_labels=table.row_labels,
    )


def neighborhood_covering(
    table: NumericTable, attribute: int, epsilon: float = DEFAULT_EPSILON
) -> Covering:
    """The ε-neighborhoods of all objects on one attribute, deduplicated.

    On a single attribute every neighborhood is a contiguous run of the
    objects sorted by value, so blocks are differences of prefix unions.
    Membership is decided by ``|c(x) - c(y)| <= epsilon`` alone, which keeps
    the neighborhood relation symmetric under rounding.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    column = table.values[:, attribute]
    order = np.argsort(column, kind="stable")
    ordered = column[order]
    # Widened bounds, then trimmed by the exact distance test
    slack = 1e-9 * (epsilon + float(np.abs(column).max()))
    lower = np.searchsorted(ordered, column - epsilon - slack, side="left")
    upper = np.searchsorted(ordered, column + epsilon + slack, side="right")
    for obj, value in enumerate(column):
        while abs(ordered[lower[obj]] - value) > epsilon:
            lower[obj] += 1
        while abs(ordered[upper[obj] - 1] - value) > epsilon:
            upper[obj] -= 1

    prefix = [0]
    for obj in order:
        prefix.append(prefix[-1] | (1 << int(obj)))

    n = table.n
    blocks = [
        ObjectSet.from_bits(prefix[hi] ^ prefix[lo], n)
        for lo, hi in np.unique(np.stack([lower, upper], axis=1), axis=0)
    ]
    return Covering(blocks, n)


def joint_neighborhood_covering(
    table: NumericTable, epsilon: float = DEFAULT_EPSILON
) -> Covering:
    """The ε-neighborhoods under the Euclidean distance over all attributes"""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    tree = cKDTree(table.values)
    neighbors = tree.query_ball_point(table.values, r=epsilon)
    n = table.n
    blocks = []
    for idx, members in enumerate(neighbors):
        mask = np.zeros(n, dtype=bool)
        mask[members] = True
        mask[idx] = True
        blocks.append(ObjectSet.from_mask(mask))
    return Covering(blocks, n)


def build_cdis(
    table: NumericTable, epsilon: float = DEFAULT_EPSILON, joint: bool = False
) -> CoveringDecisionSystem:
    """Covering decision system of a normalized table.

    One neighborhood covering per conditional attribute, or a single joint
    covering when ``joint`` is set. Decision classes are the groups of equal
    labels, in order of first appearance.
    """
    if joint:
        coverings = [joint_neighborhood_covering(table, epsilon)]
    else:
        coverings = [
            neighborhood_covering(table, attribute, epsilon)
            for attribute in range(table.a)
        ]
    labels = pd.Series(list(table.labels))
    codes, uniques = pd.factorize(labels)
    if len(uniques) == 1:
        logger.warning("All objects share the decision label '%s'", uniques[0])
    decision = DecisionPartition(
        [ObjectSet.from_mask(codes == code) for code in range(len(uniques))], table.n
    )
    system = CoveringDecisionSystem(table.n, coverings, decision, table.row_labels)
    logger.info(
        "Built covering decision system with n=%d, m=%d, k=%d, epsilon=%g",
        system.n,
        system.m,
        system.k,
        epsilon,
    )
    return system


def make_rng(seed: int) -> np.random.Generator:
    """The generator behind all seeded mutations"""
    return np.random.Generator(np.random.PCG64(seed))


def _check_intensity(intensity: float) -> None:
    if not 0 < intensity <= 1:
        raise ValueError(f"Intensity must be in (0, 1], got {intensity}")


def random_refine(
    covering: Covering, seed: int, intensity: float = DEFAULT_INTENSITY
) -> Covering:
    """Split randomly chosen blocks of size two or more into two disjoint,
    nonempty parts.

    ceil(intensity * number of blocks) blocks are split, or all splittable
    blocks if there are fewer.
    """
    _check_intensity(intensity)
    rng = make_rng(seed)
    candidates = [idx for idx, block in enumerate(covering.blocks) if len(block) >= 2]
    if not candidates:
        logger.warning("Nothing to split, all blocks are singletons")
        return covering
    count = min(len(candidates), math.ceil(intensity * len(covering.blocks)))
    chosen = set(int(idx) for idx in rng.choice(candidates, size=count, replace=False))

    blocks: List[ObjectSet] = []
    for idx, block in enumerate(covering.blocks):
        if idx not in chosen:
            blocks.append(block)
            continue
        members = rng.permutation(block.to_list())
        cut = int(rng.integers(1, len(members)))
        blocks.append(ObjectSet(members[:cut], covering.n))
        blocks.append(ObjectSet(members[cut:], covering.n))
    logger.debug("Split %d of %d blocks", count, len(covering.blocks))
    return Covering(blocks, covering.n)


def random_coarsen(
    covering: Covering, seed: int, intensity: float = DEFAULT_INTENSITY
) -> Covering:
    """Merge randomly chosen pairs of blocks into their unions.

    ceil(intensity * number of blocks / 2) pairs are merged, limited by the
    number of available pairs.
    """
    _check_intensity(intensity)
    if len(covering.blocks) < 2:
        logger.warning("Nothing to merge, the covering has a single block")
        return covering
    rng = make_rng(seed)
    pairs = min(
        len(covering.blocks) // 2, math.ceil(intensity * len(covering.blocks) / 2)
    )
    picked = [int(idx) for idx in rng.permutation(len(covering.blocks))[: 2 * pairs]]
    partner = {}
    for first, second in zip(picked[0::2], picked[1::2]):
        partner[first] = second
        partner[second] = first

    blocks: List[ObjectSet] = []
    for idx, block in enumerate(covering.blocks):
        if idx not in partner:
            blocks.append(block)
        elif idx < partner[idx]:
            blocks.append(block | covering.blocks[partner[idx]])
    logger.debug("Merged %d pairs of %d blocks", pairs, len(covering.blocks))
    return Covering(blocks, covering.n)
