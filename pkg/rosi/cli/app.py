"""
The `rosi` command.

    rosi query [options] SQL
    rosi repl [options]
    rosi snap --out DIR [options]
"""
import io
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence, TextIO

import click

from rosi.cli.errors import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, exit_code, render_error
from rosi.cli.repl import Session, run_repl
from rosi.core.engine import EngineConfig, QueryEngine
from rosi.reporting.renderers import OutputFormat, render_relation
from rosi.reporting.types import Diagnostic
from rosi.snapshot.store import save_snapshot

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class CommandIO:
    """
    Where a command writes. `out` carries data only; diagnostics go to `err`.
    """
    out: TextIO
    err: TextIO
    stdin: TextIO
    interactive: bool = False


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

# Options


def _parse_max_objects(ctx: click.Context, param: click.Parameter, values: Sequence[str]) -> tuple:
    parsed: list[tuple[str, tuple[str, ...]]] = []
    for value in values:
        name, sep, members = value.partition("=")
        rels = tuple(m.strip().lower() for m in members.split(",") if m.strip())
        if not sep or not name.strip() or not rels:
            raise click.BadParameter(f"expected NAME=rel1,rel2,... but got {value!r}", ctx=ctx, param=param)
        parsed.append((name.strip().lower(), rels))
    return tuple(parsed)


def engine_options(fn: Callable[..., Any]) -> Callable[..., Any]:
    options = [
        click.option("--snapshot", "snapshot_dir", type=click.Path(file_okay=False, path_type=Path),
                     help="Replay a snapshot directory instead of reading the live system."),
        click.option("--root", "root_dir", type=click.Path(file_okay=False, path_type=Path), envvar="ROSI_ROOT",
                     help="Directory the files relation walks (default: current directory)."),
        click.option("--format", "output_format", type=click.Choice([f.value for f in OutputFormat],
                     case_sensitive=False), envvar="ROSI_FORMAT",
                     help="Output format (default: table on a terminal, csv otherwise)."),
        click.option("--no-pushdown", is_flag=True, help="Evaluate filters above the scans only."),
        click.option("--max-object", "max_objects", multiple=True, callback=_parse_max_objects,
                     metavar="NAME=REL,...", help="Declare a maximal object (repeatable)."),
        click.option("-v", "--verbose", is_flag=True, help="Log debug output to stderr."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _config(snapshot_dir: Path | None, root_dir: Path | None, no_pushdown: bool,
            max_objects: tuple) -> EngineConfig:
    return EngineConfig(
        snapshot_dir=snapshot_dir,
        root_dir=root_dir,
        pushdown=not no_pushdown,
        max_objects=max_objects,
    )


def _format(value: str | None, cio: CommandIO) -> OutputFormat:
    if value:
        return OutputFormat.from_str(value)
    return OutputFormat.TABLE if cio.interactive else OutputFormat.CSV


def _warn(diagnostics: Sequence[Diagnostic], cio: CommandIO) -> None:
    for d in diagnostics:
        cio.err.write(d.render() + "\n")

# Commands


@click.group()
@click.version_option(package_name="rosi")
def cli() -> None:
    """Query the running operating system as a set of relations."""


@cli.command()
@engine_options
@click.option("--explain", is_flag=True, help="Print the plan instead of running the query.")
@click.argument("sql")
@click.pass_obj
def query(cio: CommandIO, sql: str, snapshot_dir: Path | None, root_dir: Path | None, output_format: str | None,
          no_pushdown: bool, max_objects: tuple, verbose: bool, explain: bool) -> int:
    """Run one query."""
    configure_logging(verbose)
    try:
        engine = QueryEngine.open(_config(snapshot_dir, root_dir, no_pushdown, max_objects))
        if explain:
            cio.out.write(engine.explain(sql) + "\n")
            return EXIT_OK
        result = engine.run(sql)
    except Exception as e:
        cio.err.write(render_error(e, sql))
        return exit_code(e)
    cio.out.write(render_relation(result.relation, _format(output_format, cio)))
    _warn(result.diagnostics, cio)
    return EXIT_OK


@cli.command()
@engine_options
@click.pass_obj
def repl(cio: CommandIO, snapshot_dir: Path | None, root_dir: Path | None, output_format: str | None,
         no_pushdown: bool, max_objects: tuple, verbose: bool) -> int:
    """Start the interactive shell."""
    configure_logging(verbose)
    cfg = _config(snapshot_dir, root_dir, no_pushdown, max_objects)
    try:
        engine = QueryEngine.open(cfg)
    except Exception as e:
        cio.err.write(render_error(e))
        return exit_code(e)
    session = Session.from_engine(engine, _format(output_format, cio), cfg)
    return run_repl(session, cio.stdin, cio.out, cio.err, interactive=cio.interactive and cio.stdin.isatty())


@cli.command()
@engine_options
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False, path_type=Path),
              help="Directory to write `<relation>.rel` files into.")
@click.pass_obj
def snap(cio: CommandIO, snapshot_dir: Path | None, root_dir: Path | None, output_format: str | None,
         no_pushdown: bool, max_objects: tuple, verbose: bool, out_dir: Path) -> int:
    """Capture every relation into a snapshot directory."""
    configure_logging(verbose)
    try:
        engine = QueryEngine.open(_config(snapshot_dir, root_dir, no_pushdown, max_objects))
        relations, diagnostics = engine.capture()
        written = save_snapshot(relations, out_dir)
    except Exception as e:
        cio.err.write(render_error(e))
        return exit_code(e)
    _warn(diagnostics, cio)
    for path in written:
        cio.out.write(f"{path}\n")
    return EXIT_OK

# Entry points


def dispatch(args: Sequence[str], cio: CommandIO) -> int:
    try:
        rv = cli.main(args=list(args), prog_name="rosi", standalone_mode=False, obj=cio)
    except click.UsageError as e:
        cio.err.write(f"usage error: {e.format_message()}\n")
        return EXIT_USAGE
    except click.ClickException as e:
        cio.err.write(f"error: {e.format_message()}\n")
        return EXIT_RUNTIME
    except click.Abort:
        return EXIT_RUNTIME
    return rv if isinstance(rv, int) else EXIT_OK


def run_query_command(args: Sequence[str], *, stdin: str = "", interactive: bool = False) -> tuple[int, str, str]:
    """
    Run the command line `args` with captured streams.

    Returns (exit code, standard output, diagnostic output).
    """
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(args, CommandIO(out=out, err=err, stdin=io.StringIO(stdin), interactive=interactive))
    return code, out.getvalue(), err.getvalue()


def main() -> None:
    cio = CommandIO(out=sys.stdout, err=sys.stderr, stdin=sys.stdin, interactive=sys.stdout.isatty())
    sys.exit(dispatch(sys.argv[1:], cio))
