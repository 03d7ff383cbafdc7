"""Writers for benchmark reports: CSV tables, JSON rows with the raw timings,
and one plot series file per algorithm"""
import json
import sys
from pathlib import Path
from typing import List, Union

import pandas as pd

from covred import getLogger

logger = getLogger(__name__)

__MAGIC_STDOUT__ = "-"

REPORT_COLUMNS = [
    "dataset",
    "fraction",
    "algorithm",
    "mean_s",
    "std_s",
    "reduct_size",
    "pos_fraction",
]

SERIES_COLUMNS = ["fraction", "mean_s", "std_s"]

REPORT_FORMATS = ("csv", "json", "plot")


def report_to_csv(dframe: pd.DataFrame, path: Union[str, Path]) -> None:
    output = sys.stdout if str(path) == __MAGIC_STDOUT__ else path
    dframe[REPORT_COLUMNS].to_csv(output, index=False)


def report_to_json(dframe: pd.DataFrame, path: Union[str, Path]) -> None:
    """Array of row objects, each carrying its raw timings in "times" """
    columns = REPORT_COLUMNS + (["times"] if "times" in dframe else [])
    rows = [
        {col: _plain(row[col]) for col in columns}
        for row in dframe[columns].to_dict(orient="records")
    ]
    text = json.dumps(rows, indent=2)
    if str(path) == __MAGIC_STDOUT__:
        print(text)
    else:
        Path(path).write_text(text)


def _plain(value):
    """numpy scalars and arrays to JSON compatible values"""
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, (list, tuple)):
        return [_plain(elem) for elem in value]
    return value


def report_to_series(dframe: pd.DataFrame, path: Union[str, Path]) -> List[Path]:
    """One CSV per algorithm with fraction against mean time, named
    <stem>_<algorithm>.csv next to ``path``"""
    path = Path(path)
    written = []
    for algorithm, series in dframe.groupby("algorithm", sort=False):
        seriesfile = path.parent / f"{path.stem}_{algorithm}.csv"
        series.sort_values("fraction")[SERIES_COLUMNS].to_csv(seriesfile, index=False)
        written.append(seriesfile)
    return written


def emit_report(dframe: pd.DataFrame, fmt: str, path: Union[str, Path]) -> List[Path]:
    """Write a benchmark report in the requested format.

    Args:
        dframe: Report rows, as given by BenchReport.to_dataframe()
        fmt: One of csv, json and plot
        path: Output file, "-" for stdout (csv and json only). For plot, the
            series files are written next to this path.

    Returns:
        The files written
    """
    if dframe.empty:
        raise ValueError("Nothing to write, the benchmark report is empty")
    if fmt == "csv":
        report_to_csv(dframe, path)
    elif fmt == "json":
        report_to_json(dframe, path)
    elif fmt == "plot":
        if str(path) == __MAGIC_STDOUT__:
            raise ValueError("Plot series can't be written to stdout")
        written = report_to_series(dframe, path)
        logger.info("Wrote %d series files", len(written))
        return written
    else:
        raise ValueError(f"Unknown report format '{fmt}', use one of {REPORT_FORMATS}")
    if str(path) == __MAGIC_STDOUT__:
        return []
    logger.info("Wrote %s report to %s", fmt, str(path))
    return [Path(path)]
