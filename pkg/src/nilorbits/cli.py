"""CLI entry point for nilorbits using Typer and Rich."""

import csv
import io
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, NoReturn, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from . import sl3
from .classical import (
    build_e2,
    build_triple,
    diagrams_from_partition,
    half_partition,
    is_divisible_partition,
    matrix_to_json,
    minimal_levi,
    partition_height,
    type_of,
    validate_partition,
    verify_e2,
)
from .config import ConfigManager
from .exceptions import (
    InvalidPartitionError,
    InvalidTypeError,
    NilorbitsError,
    NotDivisibleError,
)
from .models import (
    CheckName,
    CheckResult,
    ClassicalAlgebra,
    Family,
    Numbering,
    OrbitRecord,
    OutputFormat,
    Partition,
    RunConfig,
    SimpleType,
    Verdict,
    WeightedDiagram,
)
from .orbits import enumerate_orbits, friendly_pairs, half, orbit_record
from .rootsys import from_vo, to_vo
from .verification import DEFAULT_CHECKS, pair_report, run_checks, verdict_records

logger = logging.getLogger(__name__)

app = typer.Typer(help="nilorbits: nilpotent orbits, weighted Dynkin diagrams and friendly pairs")
console = Console()
err_console = Console(stderr=True)

MAX_RANK = 8

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

# error codes that mean the input was wrong rather than a computation
_USAGE_CODES = {
    "CONFIGURATION_ERROR",
    "INVALID_TYPE",
    "INVALID_DIAGRAM",
    "NOT_EVEN",
    "INVALID_PARTITION",
    "SIZE_MISMATCH",
    "ZERO_ORBIT",
    "NOT_DIVISIBLE",
    "EVEN_PART",
    "ZERO_ELEMENT",
    "NEGATIVE_WEIGHT",
    "INDEX_OUT_OF_RANGE",
}


class ClassicalAction(str, Enum):
    """What ``nilorbits classical`` reports."""

    CLASSIFY = "classify"
    DIVIDE = "divide"
    MATRICES = "matrices"
    LEVI = "levi"


def exit_code_for(error: NilorbitsError) -> int:
    """Exit status for a library error."""
    return EXIT_USAGE if error.error_code in _USAGE_CODES else EXIT_FAILED


def _fail(error: NilorbitsError) -> NoReturn:
    err_console.print(f"[bold red]Error:[/bold red] {escape(str(error))}", style="red", markup=True, highlight=False)
    raise typer.Exit(code=exit_code_for(error)) from error


def exit_code_for_checks(results: list[CheckResult]) -> int:
    """1 if a check failed, else 3 if one was inconclusive, else 0."""
    verdicts = {r.verdict for r in results}
    if Verdict.FALSE in verdicts:
        return EXIT_FAILED
    if Verdict.INCONCLUSIVE in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# parsing and display


def _config(ctx: typer.Context) -> RunConfig:
    config = ctx.obj
    if not isinstance(config, RunConfig):
        config = ConfigManager().get_config()
    return config


def _parse_type(text: str, max_rank: Optional[int] = MAX_RANK) -> SimpleType:
    t = SimpleType.parse(text)
    if max_rank is not None and t.rank > max_rank:
        raise InvalidTypeError(
            f"rank {t.rank} is above the supported maximum {max_rank}", simple_type=t.label
        )
    return t


def _parse_diagram(t: SimpleType, text: str, numbering: Numbering) -> WeightedDiagram:
    d = WeightedDiagram.parse(t, text)
    if numbering is Numbering.VO:
        return WeightedDiagram(simple_type=t, marks=from_vo(d.marks, t))
    return d


def _display(d: Optional[WeightedDiagram], numbering: Numbering) -> Optional[list[int]]:
    if d is None:
        return None
    if numbering is Numbering.VO:
        return list(to_vo(d.marks, d.simple_type))
    return list(d.marks)


def _parse_algebra(family: Family, p: Partition) -> ClassicalAlgebra:
    try:
        return ClassicalAlgebra(family=family, dim_v=p.size)
    except ValidationError as e:
        raise InvalidPartitionError(
            f"{p} does not give a {family.value} algebra", partition=p.text
        ) from e


def orbit_row(
    record: OrbitRecord,
    numbering: Numbering,
    checks: Optional[list[CheckResult]] = None,
) -> dict[str, Any]:
    """JSON record of one orbit."""
    return {
        "type": record.diagram.simple_type.label,
        "diagram": _display(record.diagram, numbering),
        "dim_orbit": record.dim_orbit,
        "height": record.height,
        "even": record.even,
        "divisible": record.divisible,
        "half": _display(record.half, numbering),
        "index": record.dynkin_index,
        "checks": [
            {"name": c.name, "verdict": c.verdict.value, "evidence": c.evidence}
            for c in checks or []
        ],
    }


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        if value and isinstance(value[0], dict):
            return " ".join(f"{c['name']}={c['verdict']}" for c in value)
        return ",".join(str(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _emit(
    rows: list[dict[str, Any]], columns: list[str], title: str, output: OutputFormat
) -> None:
    if output is OutputFormat.JSON:
        typer.echo(json.dumps(rows, indent=2))
    elif output is OutputFormat.CSV:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in columns])
        typer.echo(buffer.getvalue(), nl=False)
    else:
        table = Table(title=title)
        for column in columns:
            table.add_column(column)
        for row in rows:
            table.add_row(*(_cell(row.get(c)) for c in columns))
        console.print(table)


# commands


@app.callback()
def main_options(
    ctx: typer.Context,
    seed: Optional[int] = typer.Option(None, help="Seed of the witness generators (overrides config)"),
    trials: Optional[int] = typer.Option(None, help="Witnesses drawn per diagram (overrides config)"),
    numbering: Optional[Numbering] = typer.Option(
        None, case_sensitive=False, help="Node numbering of diagrams (overrides config)"
    ),
    output: Optional[OutputFormat] = typer.Option(
        None, case_sensitive=False, help="Output format (overrides config)"
    ),
    friendly_draws: Optional[int] = typer.Option(
        None, help="Random draws of the very-friendly search (overrides config)"
    ),
    config_file: Optional[Path] = typer.Option(
        None, help="Path to config file (default: nilorbits.json)"
    ),
    log_level: str = typer.Option(
        "warning", help="Log level (debug, info, warning, error, critical)"
    ),
) -> None:
    """Nilpotent orbits of simple Lie algebras from root data."""
    logging.basicConfig(level=log_level.upper())
    try:
        ctx.obj = ConfigManager(config_file).get_config(
            seed=seed,
            trials=trials,
            numbering=numbering,
            output=output,
            friendly_draws=friendly_draws,
        )
    except NilorbitsError as e:
        _fail(e)
    logger.debug(f"Resolved configuration: {ctx.obj}")


@app.command()
def orbits(
    ctx: typer.Context,
    simple_type: str = typer.Argument(..., metavar="TYPE", help="Cartan type, e.g. E6"),
) -> None:
    """List the weighted Dynkin diagrams of every nilpotent orbit."""
    config = _config(ctx)
    try:
        t = _parse_type(simple_type)
        records = enumerate_orbits(t, config.seed, config.trials)
    except NilorbitsError as e:
        _fail(e)
    rows = sorted(
        (orbit_row(r, config.numbering) for r in records), key=lambda row: row["diagram"]
    )
    _emit(
        rows,
        ["diagram", "dim_orbit", "height", "even", "divisible", "half", "index"],
        f"Nilpotent orbits of {t}",
        config.output,
    )


@app.command()
def pairs(
    ctx: typer.Context,
    simple_type: str = typer.Argument(..., metavar="TYPE", help="Cartan type, e.g. F4"),
) -> None:
    """List the friendly pairs with very-friendly, reachable and A2 columns."""
    config = _config(ctx)
    rows = []
    results: list[CheckResult] = []
    try:
        t = _parse_type(simple_type)
        for pair in friendly_pairs(t, config.seed, config.trials):
            filled, checks = pair_report(pair, config)
            results.extend(checks)
            row = orbit_row(filled.upper, config.numbering, checks)
            row.update(
                very_friendly=filled.very_friendly,
                lower_reachable=filled.lower_reachable,
                a2_pair=filled.a2_pair,
            )
            rows.append(row)
    except NilorbitsError as e:
        _fail(e)
    rows.sort(key=lambda row: row["diagram"])
    _emit(
        rows,
        ["diagram", "half", "height", "index", "very_friendly", "lower_reachable", "a2_pair"],
        f"Friendly pairs of {t} (a2_pair is reference data)",
        config.output,
    )
    # a false column is a result here, not a failure
    if any(r.verdict is Verdict.INCONCLUSIVE for r in results):
        raise typer.Exit(code=EXIT_INCONCLUSIVE)


def _classify(alg: ClassicalAlgebra, p: Partition, numbering: Numbering) -> dict[str, Any]:
    if not validate_partition(alg, p):
        raise InvalidPartitionError(f"{p} does not label an orbit of {alg}", algebra=str(alg))
    diagrams = diagrams_from_partition(alg, p)
    divisible = None if p.is_zero else is_divisible_partition(alg, p)
    return {
        "algebra": str(alg),
        "type": type_of(alg).label,
        "partition": list(p.parts),
        "diagrams": [_display(d, numbering) for d in diagrams],
        "height": 0 if p.is_zero else partition_height(alg, p),
        "divisible": divisible,
        "half": list(half_partition(p).parts) if divisible else None,
    }


def _divide(alg: ClassicalAlgebra, p: Partition) -> tuple[dict[str, Any], list[CheckResult]]:
    if not is_divisible_partition(alg, p):
        raise NotDivisibleError(f"{p} is not divisible in {alg}", algebra=str(alg))
    lower = half_partition(p)
    results = verify_e2(alg, p)
    halves = {half(d).marks for d in diagrams_from_partition(alg, p)}
    found = {d.marks for d in diagrams_from_partition(alg, lower)}
    results.append(
        CheckResult(
            name="diagram_halves",
            verdict=Verdict.TRUE if halves & found else Verdict.FALSE,
        )
    )
    report = {
        "algebra": str(alg),
        "partition": list(p.parts),
        "half": list(lower.parts),
        "checks": [
            {"name": r.name, "verdict": r.verdict.value, "evidence": r.evidence}
            for r in results
        ],
    }
    return report, results


@app.command()
def classical(
    ctx: typer.Context,
    family: Family = typer.Argument(..., case_sensitive=False, help="sl, sp or so"),
    partition: str = typer.Argument(..., help="Jordan type, e.g. 5,3"),
    action: ClassicalAction = typer.Argument(
        ClassicalAction.CLASSIFY, case_sensitive=False, help="classify, divide, matrices or levi"
    ),
) -> None:
    """Classical orbits from partitions: divisibility, e<2>, matrices and Levi factors."""
    config = _config(ctx)
    results: list[CheckResult] = []
    try:
        p = Partition.parse(partition)
        alg = _parse_algebra(family, p)
        if action is ClassicalAction.CLASSIFY:
            report = _classify(alg, p, config.numbering)
        elif action is ClassicalAction.DIVIDE:
            report, results = _divide(alg, p)
        elif action is ClassicalAction.MATRICES:
            triple = build_triple(alg, p)
            report = triple.to_json()
            if not p.is_zero and is_divisible_partition(alg, p):
                report["e2"] = matrix_to_json(build_e2(alg, p, triple))
        else:
            report = minimal_levi(alg, p).model_dump(mode="json")
    except NilorbitsError as e:
        _fail(e)
    if config.output is OutputFormat.TEXT:
        console.print_json(json.dumps(report))
    elif results:
        rows = [
            {"name": r.name, "verdict": r.verdict.value, "evidence": r.evidence}
            for r in results
        ]
        _emit(rows, ["name", "verdict", "evidence"], f"e<2> for {p}", config.output)
    else:
        typer.echo(json.dumps(report, indent=2))
    code = exit_code_for_checks(results)
    if code:
        raise typer.Exit(code=code)


@app.command()
def verify(
    ctx: typer.Context,
    simple_type: str = typer.Argument(..., metavar="TYPE", help="Cartan type, e.g. F4"),
    diagram: str = typer.Argument(..., help="Comma separated marks, e.g. 2,0,2,0"),
    check: Optional[list[CheckName]] = typer.Option(
        None, "--check", "-c", case_sensitive=False, help="Check to run (repeatable)"
    ),
) -> None:
    """Run structural checks on one diagram; exit 1 on a false verdict, 3 if inconclusive."""
    config = _config(ctx)
    names = list(check) if check else list(DEFAULT_CHECKS)
    try:
        t = _parse_type(simple_type)
        d = _parse_diagram(t, diagram, config.numbering)
        results = run_checks(d, names, config)
        record = orbit_record(d, config.seed, config.trials)
    except NilorbitsError as e:
        _fail(e)
    if config.output is OutputFormat.CSV:
        rows = [r.model_dump(mode="json") for r in verdict_records(d, results, config.seed)]
        for row in rows:
            row["diagram"] = _display(d, config.numbering)
        _emit(rows, ["diagram", "check", "verdict", "evidence", "seed"], "", config.output)
    else:
        row = orbit_row(record, config.numbering, results)
        row["seed"] = config.seed
        if config.output is OutputFormat.JSON:
            typer.echo(json.dumps([row], indent=2))
        else:
            _emit(
                [{"name": r.name, "verdict": r.verdict.value, "evidence": r.evidence} for r in results],
                ["name", "verdict", "evidence"],
                f"Checks on {t} [{','.join(map(str, row['diagram']))}]",
                config.output,
            )
    code = exit_code_for_checks(results)
    if code:
        raise typer.Exit(code=code)


@app.command(name="sl3")
def sl3_command(
    ctx: typer.Context,
    a: int = typer.Argument(..., help="First highest weight coordinate"),
    b: int = typer.Argument(..., help="Second highest weight coordinate"),
) -> None:
    """Branching of R(a, b) to the sl2 of the highest root and the invariant array."""
    config = _config(ctx)
    try:
        profile = sl3.branching_profile(a, b)
        arr = sl3.MonomialArray.build(a, b)
    except NilorbitsError as e:
        _fail(e)
    if config.output is OutputFormat.JSON:
        typer.echo(json.dumps(profile))
        return
    rows = [{"k": k, "multiplicity": m} for k, m in enumerate(profile)]
    _emit(rows, ["k", "multiplicity"], f"R({a},{b}) restricted to the sl2 of theta", config.output)
    if config.output is OutputFormat.TEXT:
        console.print(
            f"dim R({a},{b}) = {sl3.weyl_dimension(a, b)}, "
            f"invariants = {sl3.invariant_dim(a, b)}, cyclic = {sl3.is_cyclic(arr)}"
        )


def main() -> None:
    """Console script entry point."""
    app()


if __name__ == "__main__":
    main()
