import logging
from pathlib import Path

import numpy as np
import pytest

from covred.core import Covering
from covred.dynamic import verify_coarsening, verify_refinement
from covred.ingest import (
    EmptyFileError,
    IngestError,
    NonNumericConditionalError,
    NumericTable,
    ParseError,
    build_cdis,
    joint_neighborhood_covering,
    load_csv,
    make_rng,
    neighborhood_covering,
    normalize,
    random_coarsen,
    random_refine,
)

TESTDATA = Path(__file__).absolute().parent / "testdata_covred"


def _table(values, labels):
    values = np.asarray(values, dtype=float)
    return NumericTable(
        values=values,
        labels=labels,
        attribute_names=[f"a{idx}" for idx in range(values.shape[1])],
    )


def test_load_csv():
    table = load_csv(TESTDATA / "toy.csv")
    assert table.n == 4
    assert table.a == 2
    assert table.attribute_names == ["a", "b"]
    assert list(table.labels) == ["A", "A", "B", "B"]
    assert table.values[3].tolist() == [10.0, 30.0]
    assert list(table.row_labels) == ["2", "3", "4", "5"]


@pytest.mark.parametrize("decision", ["label", 2, "2", -1])
def test_load_csv_decision_column(decision):
    table = load_csv(TESTDATA / "toy.csv", decision)
    assert table.attribute_names == ["a", "b"]
    assert list(table.labels) == ["A", "A", "B", "B"]


def test_load_csv_decision_not_last():
    table = load_csv(TESTDATA / "toy_noheader.csv", "0", header=False)
    assert table.values[:, 0].tolist() == [0.0, 1.0, 2.0, 10.0]


def test_load_csv_no_header():
    table = load_csv(TESTDATA / "toy_noheader.csv", 0, header=False)
    assert table.n == 4
    assert table.attribute_names == ["1", "2"]
    assert list(table.labels) == ["B", "A", "B", "A"]
    assert list(table.row_labels) == ["1", "2", "3", "4"]


def test_load_csv_unknown_decision():
    with pytest.raises(IngestError, match="not found"):
        load_csv(TESTDATA / "toy.csv", "nonexisting")


def test_load_csv_non_numeric():
    with pytest.raises(NonNumericConditionalError) as err:
        load_csv(TESTDATA / "nonnumeric.csv")
    assert err.value.line == 3
    assert err.value.column == "b"
    assert "abc" in str(err.value)


def test_load_csv_missing_value():
    with pytest.raises(ParseError) as err:
        load_csv(TESTDATA / "missing.csv")
    assert err.value.line == 3


def test_load_csv_empty(tmpdir):
    tmpdir.chdir()
    Path("empty.csv").write_text("")
    with pytest.raises(EmptyFileError):
        load_csv("empty.csv")
    Path("header_only.csv").write_text("a,b,label\n")
    with pytest.raises(EmptyFileError):
        load_csv("header_only.csv")


def test_load_csv_ragged(tmpdir):
    tmpdir.chdir()
    Path("ragged.csv").write_text("a,b,label\n0,1,A\n1,2,3,B\n")
    with pytest.raises(ParseError) as err:
        load_csv("ragged.csv")
    assert err.value.line == 3


def test_load_csv_missing_file():
    with pytest.raises(OSError):
        load_csv("nonexisting.csv")


def test_normalize():
    table = normalize(_table([[0, 5, 2], [5, 5, 4], [10, 5, 3]], ["x", "y", "x"]))
    assert np.allclose(table.values[:, 0], [0, 0.5, 1])
    assert np.allclose(table.values[:, 1], [0, 0, 0])
    assert np.allclose(table.values[:, 2], [0, 1, 0.5])
    assert table.values.min() >= 0 and table.values.max() <= 1


def test_neighborhood_covering():
    table = normalize(load_csv(TESTDATA / "toy.csv"))
    assert neighborhood_covering(table, 0, 0.15).to_lists() == [
        [0, 1],
        [0, 1, 2],
        [1, 2],
        [3],
    ]
    assert neighborhood_covering(table, 1, 0.15) == Covering.from_lists(
        [[0, 2], [1], [3]], 4
    )
    with pytest.raises(ValueError):
        neighborhood_covering(table, 0, 0)


def test_neighborhood_covering_brute_force():
    rng = make_rng(7)
    table = _table(rng.random((40, 1)), ["x"] * 40)
    epsilon = 0.1
    column = table.values[:, 0]
    expected = Covering.from_lists(
        [np.flatnonzero(np.abs(column - value) <= epsilon) for value in column], 40
    )
    assert neighborhood_covering(table, 0, epsilon) == expected


@pytest.mark.parametrize("steps, epsilon", [(20, 0.05), (40, 0.05), (100, 0.05)])
def test_neighborhood_covering_grid_is_symmetric(steps, epsilon):
    """Integer attributes normalize to a grid where neighbor distances equal
    epsilon up to rounding"""
    table = normalize(_table(np.arange(steps + 1)[:, None], ["x"] * (steps + 1)))
    column = table.values[:, 0]
    within = np.abs(column[:, None] - column[None, :]) <= epsilon
    assert (within == within.T).all()
    expected = Covering.from_lists([np.flatnonzero(row) for row in within], steps + 1)
    assert neighborhood_covering(table, 0, epsilon) == expected


def test_neighborhood_covering_two_decimals():
    values = np.round(np.arange(0, 1.001, 0.01), 2)
    table = _table(values[:, None], ["x"] * len(values))
    within = np.abs(values[:, None] - values[None, :]) <= 0.05
    expected = Covering.from_lists([np.flatnonzero(row) for row in within], len(values))
    assert neighborhood_covering(table, 0, 0.05) == expected


def test_joint_neighborhood_covering():
    table = _table([[0, 0], [0.1, 0], [0.1, 0.1], [1, 1]], list("abcd"))
    covering = joint_neighborhood_covering(table, 0.12)
    assert covering == Covering.from_lists([[0, 1], [0, 1, 2], [1, 2], [3]], 4)


def test_build_cdis_toy():
    system = build_cdis(normalize(load_csv(TESTDATA / "toy.csv")), 0.15)
    assert (system.n, system.m, system.k) == (4, 2, 2)
    assert system.decision.to_lists() == [[0, 1], [2, 3]]
    assert system.labels == ("2", "3", "4", "5")

    joint = build_cdis(normalize(load_csv(TESTDATA / "toy.csv")), 0.15, joint=True)
    assert joint.m == 1


def test_build_cdis_single_class(caplog):
    build_cdis(_table([[0], [1]], ["same", "same"]), 0.5)
    assert "share the decision label" in caplog.text


def test_make_rng_reproducible():
    assert make_rng(42).integers(0, 1000, 5).tolist() == (
        make_rng(42).integers(0, 1000, 5).tolist()
    )


@pytest.mark.parametrize("seed", [0, 1, 2, 2 ** 63])
def test_random_refine(seed):
    covering = Covering.from_lists([[0, 1, 2], [2, 3, 4], [5, 6, 7], [7]], 8)
    finer = random_refine(covering, seed, 0.5)
    assert verify_refinement(covering, finer)
    assert finer != covering
    assert random_refine(covering, seed, 0.5) == finer


def test_random_refine_splits_one_block():
    covering = Covering.from_lists([[0], [1, 2, 3]], 4)
    finer = random_refine(covering, 3, 0.1)
    assert len(finer) == 3
    assert verify_refinement(covering, finer)


def test_random_refine_nothing_to_split(caplog):
    covering = Covering.from_lists([[0], [1]], 2)
    assert random_refine(covering, 0) is covering
    assert "Nothing to split" in caplog.text


@pytest.mark.parametrize("seed", [0, 1, 2, 99])
def test_random_coarsen(seed):
    covering = Covering.from_lists([[0, 1], [1, 2, 4], [3, 4, 6], [5], [2, 6, 7]], 8)
    coarser = random_coarsen(covering, seed, 0.4)
    assert verify_coarsening(covering, coarser)
    assert len(coarser) < len(covering)
    assert random_coarsen(covering, seed, 0.4) == coarser


def test_random_coarsen_single_block(caplog):
    covering = Covering.from_lists([[0, 1]], 2)
    assert random_coarsen(covering, 0) is covering
    assert "single block" in caplog.text


@pytest.mark.parametrize("intensity", [0, -0.1, 1.5])
def test_invalid_intensity(intensity):
    covering = Covering.from_lists([[0, 1], [1, 2]], 3)
    with pytest.raises(ValueError):
        random_refine(covering, 0, intensity)
    with pytest.raises(ValueError):
        random_coarsen(covering, 0, intensity)


def test_ingest_logging(caplog):
    caplog.set_level(logging.INFO, logger="covred.ingest")
    build_cdis(normalize(load_csv(TESTDATA / "toy.csv")), 0.15)
    assert "Loaded 4 objects" in caplog.text
    assert "n=4, m=2, k=2" in caplog.text
