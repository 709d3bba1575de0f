"""
Interactive shell.

Lines starting with `.` are meta-commands; anything else is a query run in the
session's output format. Results go to the output stream; errors and warnings
go to the diagnostic stream and the loop goes on.
"""
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, TextIO

from rosi.catalog.registry import lookup_relation
from rosi.catalog.types import Catalog
from rosi.cli.errors import MetaCommandError, render_error
from rosi.core.engine import EngineConfig, QueryEngine
from rosi.errors import RosiError
from rosi.providers.registry import ProviderSet
from rosi.reporting.renderers import OutputFormat, render_relation
from rosi.utils.compat import Self

logger = logging.getLogger(__name__)

PROMPT = "rosi> "

HELP = """\
.tables                  list relations
.schema [relation]       show attribute:type listings
.maxobjects              list declared maximal objects
.connections attr ...    minimal connections covering the attributes
.format [table|csv|jsonl]
                         show or set the output format
.explain <query>         show the plan instead of running the query
.open <dir>              replay a snapshot directory
.live                    read the running system
.help                    this text
.quit                    leave the shell"""


@dataclass(frozen=True, slots=True)
class Session:
    """
    `config` is what the shell was started with; `.open` and `.live` rebuild
    the catalog from it, so the files root and declared maximal objects carry over.
    """
    catalog: Catalog
    providers: ProviderSet
    output_format: OutputFormat = OutputFormat.TABLE
    warnings_emitted: int = 0
    config: EngineConfig = field(default_factory=EngineConfig)
    done: bool = False

    @classmethod
    def from_engine(cls, engine: QueryEngine, output_format: OutputFormat, config: EngineConfig | None = None) -> Self:
        if config is None:
            config = EngineConfig(pushdown=engine.pushdown)
        return cls(catalog=engine.catalog, providers=engine.providers, output_format=output_format, config=config)

    @property
    def engine(self) -> QueryEngine:
        return QueryEngine(catalog=self.catalog, providers=self.providers, pushdown=self.config.pushdown)

    def reopen(self, cfg: EngineConfig) -> Self:
        engine = QueryEngine.open(cfg)
        return replace(self, catalog=engine.catalog, providers=engine.providers)


def repl_step(line: str, session: Session) -> tuple[str, str, Session]:
    """
    Run one shell line.

    Returns the data to print, the diagnostics to print (both without a
    trailing newline) and the next session.
    """
    text = line.strip()
    if not text:
        return "", "", session
    if text.startswith("."):
        command, _, arg = text.partition(" ")
        arg = arg.strip()
        handler = _META_COMMANDS.get(command)
        if handler is None:
            return "", f"error: Unknown meta-command '{command}' (try .help)", session
        try:
            output, session = handler(arg, session)
        except RosiError as e:
            return "", render_error(e, arg).rstrip("\n"), session
        return output, "", session

    try:
        result = session.engine.run(text)
    except RosiError as e:
        return "", render_error(e, text).rstrip("\n"), session

    output = render_relation(result.relation, session.output_format).removesuffix("\n")
    warnings = "\n".join(d.render() for d in result.diagnostics)
    session = replace(session, warnings_emitted=session.warnings_emitted + len(result.diagnostics))
    return output, warnings, session


def run_repl(session: Session, stdin: TextIO, stdout: TextIO, stderr: TextIO, *, interactive: bool) -> int:
    if interactive:
        try:
            import readline  # noqa: F401  (line editing and history for input())
        except ImportError:
            pass

    while not session.done:
        try:
            line = input(PROMPT) if interactive else stdin.readline()
        except EOFError:
            break
        if not interactive and not line:
            break
        output, diagnostics, session = repl_step(line, session)
        if output:
            stdout.write(output + "\n")
            stdout.flush()
        if diagnostics:
            stderr.write(diagnostics + "\n")
            stderr.flush()
    return 0

# Meta-commands

MetaHandler = Callable[[str, Session], tuple[str, Session]]


def _tables(arg: str, session: Session) -> tuple[str, Session]:
    return "\n".join(session.catalog.relation_names()), session


def _schema(arg: str, session: Session) -> tuple[str, Session]:
    if arg:
        return lookup_relation(arg.lower(), session.catalog).render(), session
    names = session.catalog.relation_names()
    return "\n".join(session.catalog.relations[n].render() for n in names), session


def _maxobjects(arg: str, session: Session) -> tuple[str, Session]:
    objects = session.catalog.maximal_objects
    if not objects:
        return "(no maximal objects)", session
    return "\n".join(objects[n].render() for n in sorted(objects)), session


def _connections(arg: str, session: Session) -> tuple[str, Session]:
    attrs = [a.lower() for a in arg.replace(",", " ").split()]
    if not attrs:
        raise MetaCommandError(".connections needs at least one attribute")
    connections = session.engine.connections(attrs)
    return "\n".join(c.render() for c in connections), session


def _format(arg: str, session: Session) -> tuple[str, Session]:
    if not arg:
        return f"format: {session.output_format}", session
    try:
        fmt = OutputFormat.from_str(arg)
    except ValueError as e:
        raise MetaCommandError(str(e)) from e
    return "", replace(session, output_format=fmt)


def _explain(arg: str, session: Session) -> tuple[str, Session]:
    if not arg:
        raise MetaCommandError(".explain needs a query")
    return session.engine.explain(arg), session


def _open(arg: str, session: Session) -> tuple[str, Session]:
    if not arg:
        raise MetaCommandError(".open needs a snapshot directory")
    session = session.reopen(replace(session.config, snapshot_dir=Path(arg)))
    return f"replaying {session.providers.describe()}", session


def _live(arg: str, session: Session) -> tuple[str, Session]:
    session = session.reopen(replace(session.config, snapshot_dir=None))
    return f"reading {session.providers.describe()}", session


def _help(arg: str, session: Session) -> tuple[str, Session]:
    return HELP, session


def _quit(arg: str, session: Session) -> tuple[str, Session]:
    return "", replace(session, done=True)


_META_COMMANDS: dict[str, MetaHandler] = {
    ".tables": _tables,
    ".schema": _schema,
    ".maxobjects": _maxobjects,
    ".connections": _connections,
    ".format": _format,
    ".explain": _explain,
    ".open": _open,
    ".live": _live,
    ".help": _help,
    ".quit": _quit,
}
