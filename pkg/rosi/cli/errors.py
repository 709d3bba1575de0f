"""
Turning exceptions into exit codes and diagnostic text.

    0  success
    1  the query is wrong (lex, parse, plan)
    2  provider, snapshot or other runtime failure
    3  usage error
"""
from rosi.errors import QueryError, RosiError

EXIT_OK = 0
EXIT_QUERY = 1
EXIT_RUNTIME = 2
EXIT_USAGE = 3


class MetaCommandError(RosiError):
    """
    A shell meta-command was given bad arguments.
    """


def exit_code(error: BaseException) -> int:
    if isinstance(error, QueryError):
        return EXIT_QUERY
    return EXIT_RUNTIME


def caret_lines(sql: str, offset: int) -> list[str]:
    """
    The query line holding byte `offset`, and a caret under the character there.
    """
    raw = sql.encode("utf-8")
    offset = max(0, min(offset, len(raw)))
    prefix = raw[:offset].decode("utf-8", "ignore")
    start = prefix.rfind("\n") + 1
    end = sql.find("\n", start)
    line = sql[start:] if end < 0 else sql[start:end]
    return [f"  {line}", "  " + " " * (len(prefix) - start) + "^"]


def render_error(error: BaseException, sql: str | None = None) -> str:
    if isinstance(error, RosiError):
        lines = [f"error: {error}"]
        offset = getattr(error, "offset", None)
        if sql is not None and isinstance(offset, int):
            lines += caret_lines(sql, offset)
    else:
        lines = [f"error: internal error: {type(error).__name__}: {error}"]
    return "\n".join(lines) + "\n"
