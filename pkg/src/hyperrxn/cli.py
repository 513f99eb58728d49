"""Command-line interface.

Every command writes JSON (or JSON lines) to standard output or to ``--out``.
Package errors are printed to standard error and mapped to the exit codes of
:mod:`hyperrxn.utils.error_handling`: 1 for input errors, 2 for numeric
failures.
"""

import functools
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, TypeVar, cast

import click
from pydantic import ValidationError
from typing_extensions import Literal, get_args, get_origin

from ._version import __version__
from .interpret.scores import PathLayers
from .models.config import TrainingConfig
from .training.synthetic import (
    generate_classification_task,
    generate_ranking_task,
    write_candidate_sets,
    write_classification_task,
)
from .utils.error_handling import (
    EXIT_INPUT_ERROR,
    config_error_from,
    exit_code_for,
    format_error_message,
    log_error,
)
from .utils.exceptions import RxnError
from .workbench import Workbench

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

F = TypeVar("F", bound=Callable[..., Any])


def handle_errors(func: F) -> F:
    """Turn package errors into a message on stderr and the matching exit code."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except RxnError as e:
            log_error(e, logger)
            click.echo(f"Error: {format_error_message(e)}", err=True)
            sys.exit(exit_code_for(e))
        except ValidationError as e:
            error = config_error_from(e)
            click.echo(f"Error: {format_error_message(error)}", err=True)
            sys.exit(EXIT_INPUT_ERROR)

    return wrapper  # type: ignore[return-value]


def _emit(payload: Any) -> None:
    click.echo(json.dumps(payload, indent=2))


def _emit_lines(rows: Iterable[Dict[str, Any]], out: Optional[Path]) -> None:
    lines = [json.dumps(row) for row in rows]
    if out is None:
        for line in lines:
            click.echo(line)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    logger.info(f"Wrote {len(lines)} lines to {out}")


def _int_list(
    ctx: click.Context, param: click.Parameter, value: Optional[str]
) -> Optional[List[int]]:
    if value is None:
        return None
    try:
        return [int(part) for part in value.split(",") if part.strip()]
    except ValueError as e:
        raise click.BadParameter("expected comma-separated integers, e.g. 64,32") from e


def config_options(func: F) -> F:
    """Add one ``--flag`` per :class:`TrainingConfig` key; unset flags stay ``None``."""
    for name, info in reversed(list(TrainingConfig.model_fields.items())):
        flag = name.replace("_", "-")
        annotation = info.annotation
        if annotation is bool:
            option = click.option(
                f"--{flag}/--no-{flag}", name, default=None, help=info.description
            )
        elif get_origin(annotation) is Literal:
            option = click.option(
                f"--{flag}", name, type=click.Choice(get_args(annotation)), help=info.description
            )
        elif get_origin(annotation) in (list, List):
            option = click.option(
                f"--{flag}", name, callback=_int_list, help=f"{info.description} (comma-separated)"
            )
        else:
            option = click.option(f"--{flag}", name, type=annotation, help=info.description)
        func = option(func)
    return func


@click.group()
@click.version_option(__version__, prog_name="hyperrxn")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default="WARNING",
    show_default=True,
)
def cli(log_level: str) -> None:
    """Rxn-hypergraph reaction models: build, train, evaluate, rank and explain."""
    logging.basicConfig(level=log_level.upper(), format=LOG_FORMAT, stream=sys.stderr)


@cli.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--strict", is_flag=True, help="Exit with code 1 if any line fails.")
@handle_errors
def parse(path: str, strict: bool) -> None:
    """Validate the reactions in PATH (first column of each line)."""
    report = Workbench().parse_file(path)
    _emit(report.model_dump(mode="json"))
    if strict and report.failed:
        sys.exit(EXIT_INPUT_ERROR)


@cli.command()
@click.argument("reaction")
@handle_errors
def build(reaction: str) -> None:
    """Dump the rxn-hypergraph of REACTION as JSON."""
    _emit(Workbench().build(reaction))


@cli.command()
@click.option(
    "--config", "config_source", help="Config file or bundled name (uspto, ranking, ...)."
)
@click.option("--data", required=True, type=click.Path(dir_okay=False), help="Training data.")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Checkpoint path.")
@click.option("--metrics", type=click.Path(dir_okay=False), help="Per-epoch JSON-lines file.")
@config_options
@handle_errors
def train(
    config_source: Optional[str],
    data: str,
    out: str,
    metrics: Optional[str],
    **overrides: Any,
) -> None:
    """Train a model and write its checkpoint and run manifest."""
    manifest = Workbench().train(config_source, data, out, overrides, metrics)
    _emit(manifest.model_dump(mode="json", exclude={"epochs"}))


@cli.command(name="eval")
@click.option("--ckpt", required=True, type=click.Path(dir_okay=False))
@click.option("--data", required=True, type=click.Path(dir_okay=False))
@click.option(
    "--split",
    type=click.Choice(["all", "train", "valid", "test"]),
    default="all",
    show_default=True,
    help="Evaluate one split of the training dataset.",
)
@handle_errors
def evaluate(ckpt: str, data: str, split: str) -> None:
    """Accuracy, per-class accuracy and confusion counts of a checkpoint."""
    _emit(Workbench().evaluate(ckpt, data, split).model_dump(mode="json"))


@cli.command()
@click.option("--ckpt", required=True, type=click.Path(dir_okay=False))
@click.option("--candidates", required=True, type=click.Path(dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), help="Rankings file (default: stdout).")
@handle_errors
def rank(ckpt: str, candidates: str, out: Optional[str]) -> None:
    """Rank candidate sets; prints top-k accuracies when true indices are known."""
    results, summary = Workbench().rank(ckpt, candidates)
    _emit_lines((r.model_dump(mode="json") for r in results), Path(out) if out else None)
    if summary is not None:
        click.echo(json.dumps(summary.model_dump(mode="json")))


@cli.command()
@click.option("--ckpt", required=True, type=click.Path(dir_okay=False))
@click.option("--reaction", required=True)
@click.option("--top-k", default=10, show_default=True, type=click.IntRange(min=0))
@click.option(
    "--path-layers", type=click.Choice(["final", "mean"]), default="final", show_default=True
)
@handle_errors
def explain(ckpt: str, reaction: str, top_k: int, path_layers: str) -> None:
    """Attention-based interpretability report of one reaction."""
    report = Workbench().explain(ckpt, reaction, top_k, cast(PathLayers, path_layers))
    _emit(report.model_dump(mode="json"))


@cli.command()
@click.option("--data", required=True, type=click.Path(dir_okay=False))
@click.option("--bits", default=2048, show_default=True, type=click.IntRange(min=1))
@click.option("--radius", default=2, show_default=True, type=click.IntRange(min=0))
@click.option("--w1", default=1.0, show_default=True)
@click.option("--w2", default=1.0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
@handle_errors
def fingerprint(
    data: str, bits: int, radius: int, w1: float, w2: float, out: Optional[str]
) -> None:
    """Reaction fingerprints of a dataset as JSON lines."""
    records = Workbench().fingerprints(data, bits, radius, w1, w2)
    _emit_lines((r.model_dump(mode="json") for r in records), Path(out) if out else None)


@cli.group()
def generate() -> None:
    """Write synthetic datasets."""


@generate.command(name="classify")
@click.option("--n", "count", default=4000, show_default=True, type=click.IntRange(min=1))
@click.option("--seed", default=0, show_default=True)
@click.option("--agreement", default=0.6, show_default=True, type=click.FloatRange(0, 1))
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@handle_errors
def generate_classify(count: int, seed: int, agreement: float, out: str) -> None:
    """Three-class co-reactant task as TSV."""
    write_classification_task(generate_classification_task(count, seed, agreement), out)


@generate.command(name="rank")
@click.option("--queries", default=200, show_default=True, type=click.IntRange(min=1))
@click.option("--candidates", default=20, show_default=True, type=click.IntRange(min=1))
@click.option("--seed", default=0, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@handle_errors
def generate_rank(queries: int, candidates: int, seed: int, out: str) -> None:
    """Candidate sets with known utilities as JSON lines."""
    write_candidate_sets(generate_ranking_task(queries, candidates, seed), out)


def main() -> None:
    cli(prog_name="hyperrxn")


if __name__ == "__main__":
    main()
