"""Command line tool for attribute reduction of covering decision systems,
and the benchmark harness comparing non-incremental and incremental reduct
computations over growing fractions of a data set"""
import sys
import json
import math
import time
import logging
import argparse
import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
import yaml

import configsuite  # lgtm [py/import-and-import-from]
from configsuite import types  # lgtm [py/import-and-import-from]
from configsuite import MetaKeys as MK  # lgtm [py/import-and-import-from]

from covred import getLogger, __version__
from covred.approx import is_consistent
from covred.core import CoveringDecisionSystem, ObjectSet, load_system, restrict
from covred.dynamic import (
    COARSEN,
    MUTATION_KINDS,
    REFINE,
    CoveringMutation,
    IncrementalState,
    dump_mutation,
    ihvc,
    ihvr,
    incremental_all_reducts_coarsen,
    incremental_all_reducts_refine,
    load_mutation,
    split_incremental_reducts,
    update_related_coarsen,
    update_related_refine,
)
from covred.ingest import (
    DEFAULT_EPSILON,
    DEFAULT_INTENSITY,
    build_cdis,
    load_csv,
    make_rng,
    normalize,
    random_coarsen,
    random_refine,
)
from covred.reduct import (
    ReductSet,
    all_reducts,
    heuristic_reduct,
    indispensable_coverings,
    preserves_positive_region,
)
from covred.related import minimal_related_sets, related_family
from covred.bench.writers import REPORT_COLUMNS, REPORT_FORMATS, emit_report

logger = getLogger(__name__)

__MAGIC_STDOUT__ = "-"

DESCRIPTION = """Attribute reduction of covering decision systems.

A covering decision system has one covering per conditional attribute and a
decision partition. It is read either from a JSON file with the keys "n",
"coverings" and "decision", or from a CSV file of numeric conditional
attributes and a decision column, which is min-max normalized and turned into
one ε-neighborhood covering per attribute.

Subcommands:

  reduce   All reducts and/or the greedy heuristic reduct (NIHV).
  dynamic  Refine or coarsen one covering and update reducts incrementally
           (IHVR, IHVC, or all reducts).
  bench    Time NIHV against the incremental algorithms over fractions of a
           data set, with mean and standard deviation over repeats.
"""

CATEGORY = "analysis.reduction"

EXAMPLES = """
.. code-block:: console

  covred reduce --input wine.csv --epsilon 0.05 --algo all --out reducts.json
  covred dynamic --input wine.csv --mode refine --seed 1 --algo ihvr
  covred bench --input wine.csv --mode coarsen --fractions 10:100:10 \\
      --repeats 10 --out report.csv

"""

EPILOGUE = """
.. code-block:: yaml

  # Example config file for covred bench, command line options override it

  dataset: wine.csv      # CSV data set or JSON covering decision system
  decision: class        # Optional: decision column, the last column if omitted
  epsilon: 0.05          # Neighborhood radius on normalized attributes
  fractions: [10, 20, 30, 40, 50, 60, 70, 80, 90, 100]
  repeats: 10
  mode: refine           # refine or coarsen the last covering
  seed: 1                # Seed of the random mutation
  intensity: 0.3         # Share of blocks split or merged
  algorithms: [NIHV, IHVR]
  shuffle: 42            # Optional: shuffle objects before taking fractions
  timeout: 600           # Optional: seconds allowed per benchmark cell

"""

ALGORITHMS = ("NIHV", "IHVR", "IHVC", "ALL_EXACT", "ALL_INCR")
INCREMENTAL_HEURISTIC = {REFINE: "IHVR", COARSEN: "IHVC"}
DEFAULT_FRACTIONS = list(range(10, 101, 10))
DEFAULT_REPEATS = 10

EXIT_VALIDATION = 1
EXIT_IO = 2


class TimeoutExceededError(RuntimeError):
    """A benchmark cell ran longer than the configured cap"""


class CustomFormatter(
    argparse.ArgumentDefaultsHelpFormatter, argparse.RawDescriptionHelpFormatter
):
    """
    Multiple inheritance used for argparse to get both
    defaults and raw description formatter
    """

    # pylint: disable=unnecessary-pass

    pass


@configsuite.validator_msg("Is an existing file")
def _is_existing_file(filename: str):
    return Path(filename).exists()


@configsuite.validator_msg("Is a percentage in (0, 100]")
def _is_valid_fraction(fraction: float):
    return 0 < fraction <= 100


@configsuite.validator_msg("Is positive")
def _is_positive(value: float):
    return value > 0


@configsuite.validator_msg("Is in (0, 1]")
def _is_valid_intensity(intensity: float):
    return 0 < intensity <= 1


@configsuite.validator_msg("Mode is refine or coarsen")
def _is_valid_mode(mode: str):
    return mode in MUTATION_KINDS


@configsuite.validator_msg("Algorithm is one of NIHV, IHVR, IHVC, ALL_EXACT, ALL_INCR")
def _is_valid_algorithm(algorithm: str):
    return algorithm in ALGORITHMS


@configsuite.validator_msg("Is a 64 bit unsigned integer")
def _is_valid_seed(seed: int):
    return 0 <= seed < 2 ** 64


@configsuite.validator_msg("IHVR needs mode refine and IHVC needs mode coarsen")
def _algorithms_fit_mode(cfg: dict):
    try:
        algorithms = cfg["algorithms"] or ()
        mode = cfg["mode"]
    except (KeyError, TypeError):
        return True
    if mode == REFINE:
        return "IHVC" not in algorithms
    if mode == COARSEN:
        return "IHVR" not in algorithms
    return True


def get_cfg_schema() -> dict:
    """
    Defines the yml config schema for the bench subcommand
    """
    return {
        MK.Type: types.NamedDict,
        MK.ElementValidators: (_algorithms_fit_mode,),
        MK.Content: {
            "dataset": {
                MK.Type: types.String,
                MK.Description: "CSV data set or JSON covering decision system",
                MK.ElementValidators: (_is_existing_file,),
            },
            "decision": {
                MK.Type: types.String,
                MK.AllowNone: True,
                MK.Description: "Decision column of a CSV data set, last if omitted",
            },
            "header": {
                MK.Type: types.Bool,
                MK.Default: True,
                MK.Description: "Whether the CSV data set has a header line",
            },
            "epsilon": {
                MK.Type: types.Number,
                MK.Default: DEFAULT_EPSILON,
                MK.ElementValidators: (_is_positive,),
            },
            "joint": {
                MK.Type: types.Bool,
                MK.Default: False,
                MK.Description: "One joint covering instead of one per attribute",
            },
            "fractions": {
                MK.Type: types.List,
                MK.Description: "Percentages of the objects, default 10 to 100",
                MK.Content: {
                    MK.Item: {
                        MK.Type: types.Number,
                        MK.ElementValidators: (_is_valid_fraction,),
                    }
                },
            },
            "repeats": {
                MK.Type: types.Integer,
                MK.Default: DEFAULT_REPEATS,
                MK.ElementValidators: (_is_positive,),
            },
            "mode": {
                MK.Type: types.String,
                MK.Default: REFINE,
                MK.ElementValidators: (_is_valid_mode,),
            },
            "seed": {
                MK.Type: types.Integer,
                MK.Default: 0,
                MK.ElementValidators: (_is_valid_seed,),
            },
            "intensity": {
                MK.Type: types.Number,
                MK.Default: DEFAULT_INTENSITY,
                MK.ElementValidators: (_is_valid_intensity,),
            },
            "algorithms": {
                MK.Type: types.List,
                MK.Description: "Defaults to NIHV and the incremental heuristic",
                MK.Content: {
                    MK.Item: {
                        MK.Type: types.String,
                        MK.ElementValidators: (_is_valid_algorithm,),
                    }
                },
            },
            "shuffle": {
                MK.Type: types.Integer,
                MK.AllowNone: True,
                MK.Description: "Seed for shuffling objects before taking fractions",
            },
            "timeout": {
                MK.Type: types.Number,
                MK.AllowNone: True,
                MK.Description: "Seconds allowed per benchmark cell",
                MK.ElementValidators: (_is_positive,),
            },
        },
    }


@dataclass(frozen=True)
class BenchConfig:
    # pylint: disable=too-many-instance-attributes
    dataset: str
    epsilon: float = DEFAULT_EPSILON
    fractions: Tuple[float, ...] = tuple(DEFAULT_FRACTIONS)
    repeats: int = DEFAULT_REPEATS
    mode: str = REFINE
    seed: int = 0
    algorithms: Tuple[str, ...] = ("NIHV", "IHVR")
    intensity: float = DEFAULT_INTENSITY
    decision: Optional[str] = None
    header: bool = True
    joint: bool = False
    shuffle: Optional[int] = None
    timeout: Optional[float] = None


def load_config(cfg: Dict[str, Any]) -> BenchConfig:
    """Validate a configuration dictionary and apply defaults.

    Raises:
        ValueError: with the configsuite errors if invalid.
    """
    suite = configsuite.ConfigSuite(cfg, get_cfg_schema(), deduce_required=True)
    if not suite.valid:
        raise ValueError(f"Invalid benchmark configuration: {suite.errors}")
    snapshot = suite.snapshot
    algorithms = snapshot.algorithms or ("NIHV", INCREMENTAL_HEURISTIC[snapshot.mode])
    return BenchConfig(
        dataset=snapshot.dataset,
        epsilon=snapshot.epsilon,
        fractions=tuple(snapshot.fractions or DEFAULT_FRACTIONS),
        repeats=snapshot.repeats,
        mode=snapshot.mode,
        seed=snapshot.seed,
        algorithms=tuple(dict.fromkeys(algorithms)),
        intensity=snapshot.intensity,
        decision=snapshot.decision,
        header=snapshot.header,
        joint=snapshot.joint,
        shuffle=snapshot.shuffle,
        timeout=snapshot.timeout,
    )


@dataclass
class BenchRow:
    # pylint: disable=too-many-instance-attributes
    dataset: str
    fraction: float
    algorithm: str
    mean_s: float
    std_s: float
    reduct_size: int
    pos_fraction: float
    times: List[float] = field(default_factory=list)


@dataclass
class BenchReport:
    rows: List[BenchRow] = field(default_factory=list)

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(
            [vars(row) for row in self.rows], columns=REPORT_COLUMNS + ["times"]
        )


def load_input(
    path: str,
    decision: Optional[str] = None,
    epsilon: float = DEFAULT_EPSILON,
    joint: bool = False,
    header: bool = True,
) -> CoveringDecisionSystem:
    """A covering decision system from a JSON system file or a CSV data set"""
    if Path(path).suffix.lower() == ".json":
        return load_system(path)
    table = normalize(load_csv(path, decision, header=header))
    return build_cdis(table, epsilon, joint=joint)


def time_callable(
    func: Callable[[], Any], repeats: int, timeout: Optional[float] = None
) -> Tuple[List[float], Any]:
    """Wall clock timings of repeated calls, after one untimed warmup call.

    Returns:
        The timings in seconds, and the result of the last call.

    Raises:
        TimeoutExceededError: if the accumulated time exceeds ``timeout``.
    """
    result = func()
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        result = func()
        times.append(time.perf_counter() - start)
        if timeout is not None and sum(times) > timeout:
            raise TimeoutExceededError(
                f"{sum(times):.3f} s spent in {len(times)} runs, cap is {timeout} s"
            )
    return times, result


def summarize_timings(times: List[float]) -> Tuple[float, float]:
    """Mean and sample standard deviation, the latter 0 for a single sample"""
    mean = statistics.mean(times)
    std = statistics.stdev(times) if len(times) > 1 else 0.0
    return mean, std


def fraction_subset(order: np.ndarray, fraction: float) -> ObjectSet:
    """The first ceil(fraction% of n) objects of ``order``, so fractions are
    nested"""
    count = max(1, math.ceil(fraction * len(order) / 100 - 1e-9))
    mask = np.zeros(len(order), dtype=bool)
    mask[order[:count]] = True
    return ObjectSet.from_mask(mask)


def mutate_last_covering(
    system: CoveringDecisionSystem, mode: str, seed: int, intensity: float
) -> CoveringMutation:
    target = system.m - 1
    if mode == REFINE:
        new_covering = random_refine(system.coverings[target], seed, intensity)
    else:
        new_covering = random_coarsen(system.coverings[target], seed, intensity)
    return CoveringMutation(target=target, kind=mode, new_covering=new_covering)


def _runner(
    algorithm: str,
    state: IncrementalState,
    mutation: CoveringMutation,
    mutated: CoveringDecisionSystem,
) -> Callable[[], Any]:
    """The timed computation of one algorithm, from the same starting point.

    The mutation and the carried state are checked before timing, so the
    incremental updates skip their own checks.
    """
    new_covering = mutation.new_covering
    if mutation.kind == REFINE:
        update = update_related_refine
        incremental = incremental_all_reducts_refine
    else:
        update = update_related_coarsen
        incremental = incremental_all_reducts_coarsen
    if algorithm == "NIHV":
        return lambda: heuristic_reduct(
            minimal_related_sets(related_family(mutated)), mutated.m
        )
    if algorithm == "IHVR":
        return lambda: ihvr(state, update(state, new_covering, verify=False))
    if algorithm == "IHVC":
        return lambda: ihvc(state, update(state, new_covering, verify=False))
    if algorithm == "ALL_EXACT":
        return lambda: all_reducts(related_family(mutated))
    if algorithm == "ALL_INCR":
        return lambda: incremental(state, update(state, new_covering, verify=False))
    raise ValueError(f"Unknown algorithm {algorithm}")


def _check_result(
    algorithm: str, result: Any, mutated: CoveringDecisionSystem, exact: ReductSet
) -> int:
    """Verify a timed result and give its reduct size"""
    if isinstance(result, ReductSet):
        if result != exact:
            raise RuntimeError(f"{algorithm} disagrees with the exact reducts")
        return min((len(reduct) for reduct in result), default=0)
    if not preserves_positive_region(mutated, result):
        raise RuntimeError(f"{algorithm} reduct {result.to_list()} changes POS")
    return len(result)


def run_benchmark(config: BenchConfig) -> BenchReport:
    """Time the configured algorithms over growing fractions of a data set.

    For every fraction, the system is restricted to the first objects, its
    last covering is mutated with the configured seed, and every algorithm
    is timed from the same pre-mutation state. Non-incremental algorithms
    work on the mutated system from scratch. Results are verified outside
    the timed region.
    """
    system = load_input(
        config.dataset, config.decision, config.epsilon, config.joint, config.header
    )
    dataset = Path(config.dataset).stem
    if config.shuffle is not None:
        order = make_rng(config.shuffle).permutation(system.n)
    else:
        order = np.arange(system.n)

    report = BenchReport()
    for fraction in config.fractions:
        sub = restrict(system, fraction_subset(order, fraction))
        state = IncrementalState(sub)
        if "ALL_INCR" in config.algorithms:
            state = state.with_reducts()
        mutation = mutate_last_covering(sub, config.mode, config.seed, config.intensity)
        mutation.validate(sub)
        state.check()
        mutated = sub.replace_covering(mutation.target, mutation.new_covering)
        mutated_family = related_family(mutated)
        exact = None
        if {"ALL_EXACT", "ALL_INCR"} & set(config.algorithms):
            exact = all_reducts(mutated_family)
        pos_fraction = len(mutated_family.pos) / mutated.n
        logger.info(
            "Fraction %g%%: n=%d, m=%d, |POS|=%d",
            fraction,
            sub.n,
            sub.m,
            len(mutated_family.pos),
        )

        for algorithm in config.algorithms:
            func = _runner(algorithm, state, mutation, mutated)
            try:
                times, result = time_callable(func, config.repeats, config.timeout)
            except TimeoutExceededError as err:
                logger.error("%s at %g%% skipped: %s", algorithm, fraction, str(err))
                continue
            reduct_size = _check_result(algorithm, result, mutated, exact)
            mean, std = summarize_timings(times)
            logger.info("%s at %g%%: %.6f +/- %.6f s", algorithm, fraction, mean, std)
            report.rows.append(
                BenchRow(
                    dataset=dataset,
                    fraction=fraction,
                    algorithm=algorithm,
                    mean_s=mean,
                    std_s=std,
                    reduct_size=reduct_size,
                    pos_fraction=pos_fraction,
                    times=times,
                )
            )
    return report


def stability_table(dframe: pd.DataFrame) -> pd.DataFrame:
    """Coefficient of variation of every row, and for rows of incremental
    algorithms the speedup against NIHV at the same fraction"""
    table = dframe[["dataset", "fraction", "algorithm", "mean_s", "std_s"]].copy()
    table["cv"] = table["std_s"] / table["mean_s"]
    nihv = (
        table[table["algorithm"] == "NIHV"]
        .set_index(["dataset", "fraction"])["mean_s"]
        .rename("nihv_mean_s")
    )
    table = table.join(nihv, on=["dataset", "fraction"])
    table["speedup"] = table["nihv_mean_s"] / table["mean_s"]
    return table.drop("nihv_mean_s", axis=1)


def parse_fractions(text: str) -> List[float]:
    """Fractions from "start:stop:step" (inclusive) or a comma separated list"""
    if ":" in text:
        start, stop, step = (float(part) for part in text.split(":"))
        if step <= 0:
            raise argparse.ArgumentTypeError("Fraction step must be positive")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + idx * step for idx in range(count)]
    return [float(part) for part in text.split(",") if part.strip()]


def get_parser() -> argparse.ArgumentParser:
    """Set up parser for command line utility"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-v", "--verbose", action="store_true", help="Be verbose", default=False
    )
    common.add_argument(
        "--debug", action="store_true", help="Debug mode, very verbose", default=False
    )

    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument(
        "--input",
        required=True,
        help="CSV data set, or JSON file with a covering decision system",
    )
    inputs.add_argument(
        "--decision",
        type=str,
        help="Name or position of the decision column in a CSV data set. "
        "The last column is used if not given",
    )
    inputs.add_argument(
        "--no-header",
        dest="header",
        action="store_false",
        help="The CSV data set has no header line",
    )
    inputs.add_argument(
        "--epsilon",
        type=float,
        default=DEFAULT_EPSILON,
        help="Neighborhood radius on normalized attributes",
    )
    inputs.add_argument(
        "--joint",
        action="store_true",
        help="Build one covering from the distance over all attributes",
    )

    parser = argparse.ArgumentParser(
        formatter_class=CustomFormatter, description=DESCRIPTION, parents=[common]
    )
    parser.add_argument(
        "--version",
        action="version",
        version="%(prog)s (covred version " + __version__ + ")",
    )
    subparsers = parser.add_subparsers(dest="command")
    subparsers.required = True

    reduce_parser = subparsers.add_parser(
        "reduce",
        parents=[common, inputs],
        formatter_class=CustomFormatter,
        help="Compute reducts of a covering decision system",
    )
    reduce_parser.add_argument(
        "--algo",
        choices=["nihv", "all"],
        default="all",
        help="Greedy heuristic only, or all reducts and the heuristic",
    )
    reduce_parser.add_argument(
        "--out", type=str, default=__MAGIC_STDOUT__, help="JSON output, - for stdout"
    )

    dynamic_parser = subparsers.add_parser(
        "dynamic",
        parents=[common, inputs],
        formatter_class=CustomFormatter,
        help="Mutate one covering and update reducts incrementally",
    )
    dynamic_parser.add_argument(
        "--mode", choices=MUTATION_KINDS, default=REFINE, help="Mutation kind"
    )
    dynamic_parser.add_argument("--seed", type=int, default=0, help="Mutation seed")
    dynamic_parser.add_argument(
        "--intensity",
        type=float,
        default=DEFAULT_INTENSITY,
        help="Share of blocks split or merged",
    )
    dynamic_parser.add_argument(
        "--algo",
        choices=["ihvr", "ihvc", "all-incr"],
        help="Incremental algorithm, defaults to the heuristic matching --mode",
    )
    dynamic_parser.add_argument(
        "--target", type=int, help="Index of the mutated covering, default last"
    )
    dynamic_parser.add_argument(
        "--mutation",
        type=str,
        help="JSON mutation file to apply instead of a random mutation",
    )
    dynamic_parser.add_argument(
        "--write-mutation", type=str, help="Write the applied mutation to this file"
    )
    dynamic_parser.add_argument(
        "--out", type=str, default=__MAGIC_STDOUT__, help="JSON output, - for stdout"
    )

    bench_parser = subparsers.add_parser(
        "bench",
        parents=[common],
        formatter_class=CustomFormatter,
        epilog=EPILOGUE,
        help="Time non-incremental against incremental reduct computations",
    )
    bench_parser.add_argument("--input", help="Data set, overrides the config file")
    bench_parser.add_argument("--config", help="YAML configuration file")
    bench_parser.add_argument("--decision", type=str, help="Decision column")
    bench_parser.add_argument(
        "--no-header",
        dest="header",
        action="store_false",
        default=None,
        help="The CSV data set has no header line",
    )
    bench_parser.add_argument("--epsilon", type=float, help="Neighborhood radius")
    bench_parser.add_argument(
        "--joint", action="store_true", default=None, help="One joint covering"
    )
    bench_parser.add_argument("--mode", choices=MUTATION_KINDS, help="Mutation kind")
    bench_parser.add_argument(
        "--fractions",
        type=parse_fractions,
        help="Percentages of objects, start:stop:step or a comma separated list",
    )
    bench_parser.add_argument("--repeats", type=int, help="Timed runs per cell")
    bench_parser.add_argument("--seed", type=int, help="Mutation seed")
    bench_parser.add_argument("--intensity", type=float, help="Mutation intensity")
    bench_parser.add_argument(
        "--algorithms", nargs="+", choices=ALGORITHMS, help="Algorithms to time"
    )
    bench_parser.add_argument(
        "--shuffle", type=int, help="Shuffle objects with this seed before sampling"
    )
    bench_parser.add_argument("--timeout", type=float, help="Seconds per cell")
    bench_parser.add_argument(
        "--out", type=str, default="bench.csv", help="Report file, - for stdout"
    )
    bench_parser.add_argument(
        "--format", choices=REPORT_FORMATS, default="csv", help="Report format"
    )
    return parser


def _write_json(data: Dict[str, Any], out: str) -> None:
    text = json.dumps(data, indent=2)
    if out == __MAGIC_STDOUT__:
        print(text)
    else:
        Path(out).write_text(text)
        logger.info("Wrote %s", out)


def _system_from_args(args: argparse.Namespace) -> CoveringDecisionSystem:
    return load_input(args.input, args.decision, args.epsilon, args.joint, args.header)


def reduce_main(args: argparse.Namespace) -> None:
    system = _system_from_args(args)
    family = related_family(system)
    heuristic = heuristic_reduct(minimal_related_sets(family), system.m)
    result: Dict[str, Any] = {
        "n": system.n,
        "m": system.m,
        "consistent": is_consistent(system),
        "indispensable": indispensable_coverings(family).to_list(),
    }
    if args.algo == "all":
        result.update(all_reducts(family).to_dict(heuristic))
    else:
        result["heuristic"] = heuristic.to_list()
    _write_json(result, args.out)


def dynamic_main(args: argparse.Namespace) -> None:
    system = _system_from_args(args)
    if args.mutation:
        mutation = load_mutation(args.mutation, system.n)
    else:
        target = system.m - 1 if args.target is None else args.target
        if not 0 <= target < system.m:
            raise ValueError(f"No covering at index {target}, m={system.m}")
        old = system.coverings[target]
        if args.mode == REFINE:
            new_covering = random_refine(old, args.seed, args.intensity)
        else:
            new_covering = random_coarsen(old, args.seed, args.intensity)
        mutation = CoveringMutation(target, args.mode, new_covering)
    mutation.validate(system)
    if args.write_mutation:
        dump_mutation(mutation, args.write_mutation)

    algo = args.algo or INCREMENTAL_HEURISTIC[mutation.kind].lower()
    if (algo, mutation.kind) in (("ihvr", COARSEN), ("ihvc", REFINE)):
        raise ValueError(f"{algo} does not apply to a {mutation.kind} mutation")

    state = IncrementalState(system, target=mutation.target)
    result: Dict[str, Any] = {"target": mutation.target, "kind": mutation.kind}
    if algo == "all-incr":
        state = state.with_reducts()
        new_state = state.apply(mutation)
        kept, generated = split_incremental_reducts(state, new_state.family)
        result["generation"] = new_state.generation
        result["kept"] = kept.to_lists()
        result["generated"] = generated.to_lists()
        result["reducts"] = new_state.reducts.to_lists()
    else:
        new_state = state.apply(mutation)
        heuristic = ihvr if algo == "ihvr" else ihvc
        result["generation"] = new_state.generation
        result["heuristic"] = heuristic(state, new_state.family).to_list()
    result["pos_size"] = len(new_state.family.pos)
    _write_json(result, args.out)


def bench_config_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    """Configuration dictionary, the YAML file overridden by given options"""
    cfg: Dict[str, Any] = {}
    if args.config:
        cfg = yaml.safe_load(Path(args.config).read_text()) or {}
    cli_config = {
        "dataset": args.input,
        "decision": args.decision,
        "header": args.header,
        "epsilon": args.epsilon,
        "joint": args.joint,
        "mode": args.mode,
        "fractions": args.fractions,
        "repeats": args.repeats,
        "seed": args.seed,
        "intensity": args.intensity,
        "algorithms": args.algorithms,
        "shuffle": args.shuffle,
        "timeout": args.timeout,
    }
    cfg.update({key: value for key, value in cli_config.items() if value is not None})
    return cfg


def bench_main(args: argparse.Namespace) -> None:
    config = load_config(bench_config_from_args(args))
    report = run_benchmark(config)
    dframe = report.to_dataframe()
    if logger.isEnabledFor(logging.INFO) and not dframe.empty:
        logger.info("\n%s", stability_table(dframe).to_string(index=False))
    emit_report(dframe, args.format, args.out)


def main() -> None:
    """Function for command line invocation"""
    parser = get_parser()
    args = parser.parse_args()

    if args.verbose or args.debug:
        if getattr(args, "out", None) == __MAGIC_STDOUT__:
            raise SystemExit("Don't use verbose mode when writing to stdout")
        level = logging.DEBUG if args.debug else logging.INFO
        # Module loggers inherit the package level
        logging.getLogger("covred").setLevel(level)

    commands = {"reduce": reduce_main, "dynamic": dynamic_main, "bench": bench_main}
    try:
        commands[args.command](args)
    except OSError as err:
        logger.error(str(err))
        sys.exit(EXIT_IO)
    except ValueError as err:
        logger.error(str(err))
        sys.exit(EXIT_VALIDATION)


if __name__ == "__main__":
    main()
