import json
from pathlib import Path

import pytest

from rosi.cli import run_query_command
from rosi.cli.errors import EXIT_OK, EXIT_QUERY, EXIT_RUNTIME, EXIT_USAGE, caret_lines, exit_code, render_error
from rosi.errors import QueryError, RosiError
from rosi.sql.errors import ParseError
from tests.conftest import F1_DIR, GOLDEN_DIR

F1 = str(F1_DIR)

# Helpers


def query(sql: str, *options: str, **kwargs) -> tuple[int, str, str]:
    return run_query_command(["query", "--snapshot", F1, *options, sql], **kwargs)

# Tests: golden outputs


@pytest.mark.parametrize(
    ("golden", "sql"),
    [
        ("file_search.csv", "SELECT path FROM files WHERE file_name LIKE '%.txt'"),
        ("io_queue.csv", "SELECT pid, op, device FROM io_requests"),
        ("user_listing.csv", "SELECT username, shell FROM users"),
    ],
)
def test_golden_queries(golden, sql):
    code, out, err = query(sql, "--format", "csv")
    assert (code, err) == (EXIT_OK, "")
    assert out == (GOLDEN_DIR / golden).read_text()


def test_csv_is_the_default_when_not_interactive():
    assert query("SELECT username FROM users WHERE uid = 0") == (EXIT_OK, 'username\n"root"\n', "")


def test_table_is_the_default_on_a_terminal():
    code, out, _ = query("SELECT username FROM users WHERE uid = 0", interactive=True)
    lines = out.splitlines()
    assert code == EXIT_OK
    assert [line.strip() for line in lines] == ["username", "-" * len("username"), "root"]


def test_table_prints_null_literally(tmp_path: Path):
    (tmp_path / "t.rel").write_text("a:INT,s:TEXT\n1,\n")
    code, out, _ = run_query_command(["query", "--snapshot", str(tmp_path), "--format", "table",
                                      "SELECT s FROM t"])
    assert code == EXIT_OK
    assert out.splitlines()[-1].strip() == "NULL"


def test_jsonl_from_environment(monkeypatch):
    monkeypatch.setenv("ROSI_FORMAT", "jsonl")
    code, out, _ = query("SELECT uid, username FROM users ORDER BY uid")
    assert code == EXIT_OK
    assert [json.loads(line) for line in out.splitlines()] == [
        {"uid": 0, "username": "root"},
        {"uid": 1000, "username": "ana"},
    ]


def test_format_flag_beats_environment(monkeypatch):
    monkeypatch.setenv("ROSI_FORMAT", "jsonl")
    assert query("SELECT username FROM users WHERE uid = 0", "--format", "csv")[1] == 'username\n"root"\n'


def test_window_query_from_the_command_line():
    assert query("SELECT username WHERE state = 'R'") == (EXIT_OK, 'username\n"ana"\n', "")


def test_maximal_object_flag():
    code, out, _ = query("SELECT username, path", "--max-object", "proc_files=users,processes,open_files")
    assert code == EXIT_OK
    assert out == 'username,path\n"ana","/home/ana/notes.txt"\n'


def test_no_pushdown_gives_same_output():
    sql = "SELECT username, command FROM users, processes WHERE uid = 1000 ORDER BY command"
    assert query(sql) == query(sql, "--no-pushdown")


def test_explain_prints_plan_only():
    code, out, err = query("SELECT username, file_name", "--explain")
    assert (code, err) == (EXIT_OK, "")
    assert out == (
        "Distinct\n"
        "  UnionAll\n"
        "    Project username, file_name\n"
        "      NaturalJoin\n"
        "        Scan files\n"
        "        Scan users\n"
    )

# Tests: exit codes


def test_parse_error_exit_code_and_caret():
    code, out, err = run_query_command(["query", "SELEC x"])
    assert (code, out) == (EXIT_QUERY, "")
    lines = err.splitlines()
    assert lines[0].startswith("error: offset 0: ")
    assert "SELECT" in lines[0]
    assert lines[1:] == ["  SELEC x", "  ^"]


def test_lex_error_points_at_bad_character():
    code, _, err = query("SELECT username FROM users WHERE uid = 0 + 1")
    assert code == EXIT_QUERY
    assert err.splitlines()[-1] == "  " + " " * 41 + "^"


@pytest.mark.parametrize(
    "sql",
    [
        "SELECT nope FROM users",
        "SELECT username FROM users WHERE uid = 'zero'",
        "SELECT username FROM users, users",
        "SELECT username FROM users, io_requests",
        "SELECT username FROM nowhere",
        "SELECT colour",
        "SELECT DISTINCT username FROM users ORDER BY uid",
    ],
)
def test_planning_errors_exit_one(sql):
    code, out, err = query(sql)
    assert (code, out) == (EXIT_QUERY, "")
    assert err.startswith("error: ")


def test_no_connection_exits_one():
    code, _, err = query("SELECT username, device", "--max-object", "people=users,processes")
    assert code == EXIT_QUERY
    assert "maximal object" in err


def test_missing_snapshot_exits_two(tmp_path: Path):
    code, out, err = run_query_command(["query", "--snapshot", str(tmp_path / "none"), "SELECT uid FROM users"])
    assert (code, out) == (EXIT_RUNTIME, "")
    assert "does not exist" in err


def test_malformed_fixture_row_exits_two(tmp_path: Path):
    (tmp_path / "t.rel").write_text("a:INT\n1\noops\n")
    code, _, err = run_query_command(["query", "--snapshot", str(tmp_path), "SELECT a FROM t"])
    assert code == EXIT_RUNTIME
    assert err.startswith("error: t.rel:3: ")


def test_unavailable_provider_exits_two(monkeypatch, tmp_path: Path):
    monkeypatch.setattr("rosi.providers.live.pwd", None)
    code, _, err = run_query_command(["query", "--root", str(tmp_path), "SELECT username FROM users"])
    assert code == EXIT_RUNTIME
    assert "account database" in err


def test_unavailable_branch_degrades_window_with_warning(monkeypatch, tmp_path: Path):
    monkeypatch.setattr("rosi.providers.live.pwd", None)
    (tmp_path / "f.txt").write_text("x")
    code, out, err = run_query_command(["query", "--root", str(tmp_path), "SELECT uid"])
    assert code == EXIT_OK
    assert out.startswith("uid\n")
    assert any(line.startswith("warning: ") for line in err.splitlines())
    assert "warning" not in out


def test_repl_writes_warnings_to_the_diagnostic_stream(monkeypatch, tmp_path: Path):
    monkeypatch.setattr("rosi.providers.live.pwd", None)
    (tmp_path / "f.txt").write_text("x")
    code, out, err = run_query_command(["repl", "--root", str(tmp_path), "--format", "csv"],
                                       stdin="SELECT uid\n.bogus\n.quit\n")
    assert code == EXIT_OK
    assert out.startswith("uid\n")
    assert "warning" not in out and "error" not in out
    assert any(line.startswith("warning: ") for line in err.splitlines())
    assert err.endswith("error: Unknown meta-command '.bogus' (try .help)\n")


@pytest.mark.parametrize(
    "args",
    [
        ["query"],
        ["query", "--format", "xml", "SELECT uid FROM users"],
        ["query", "--bogus", "SELECT uid FROM users"],
        ["query", "--max-object", "broken", "SELECT uid"],
        ["snap"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_three(args):
    code, out, err = run_query_command(args)
    assert (code, out) == (EXIT_USAGE, "")
    assert err.startswith("usage error: ")


def test_exit_code_classes():
    assert exit_code(ParseError("bad", 0)) == EXIT_QUERY
    assert exit_code(QueryError("bad")) == EXIT_QUERY
    assert exit_code(RosiError("bad")) == EXIT_RUNTIME
    assert exit_code(RuntimeError("bad")) == EXIT_RUNTIME


def test_unexpected_exceptions_render_as_internal_errors():
    assert render_error(KeyError("x")) == "error: internal error: KeyError: 'x'\n"


def test_caret_lines_use_character_columns_on_the_offending_line():
    sql = "SELECT 'ü'\nFROM users WHERE ?"
    offset = len(sql.encode("utf-8")) - 1
    assert caret_lines(sql, offset) == ["  FROM users WHERE ?", "  " + " " * 17 + "^"]
    assert caret_lines("SELECT 'é', x", len("SELECT 'é', ".encode("utf-8"))) == ["  SELECT 'é', x", "  " + " " * 12 + "^"]

# Tests: snap and determinism


def test_snap_then_query_the_copy(tmp_path: Path):
    out_dir = tmp_path / "copy"
    code, out, err = run_query_command(["snap", "--snapshot", F1, "--out", str(out_dir)])
    assert (code, err) == (EXIT_OK, "")
    assert [Path(line).name for line in out.splitlines()] == [
        "files.rel", "io_requests.rel", "open_files.rel", "processes.rel", "users.rel",
    ]
    for path in F1_DIR.glob("*.rel"):
        assert (out_dir / path.name).read_bytes() == path.read_bytes()
    copied = run_query_command(["query", "--snapshot", str(out_dir), "SELECT username, shell FROM users"])
    assert copied[1] == (GOLDEN_DIR / "user_listing.csv").read_text()


def test_snap_reports_unexpected_failures(monkeypatch, tmp_path: Path):
    def broken(relations, out_dir):
        raise RuntimeError("disk on fire")

    monkeypatch.setattr("rosi.cli.app.save_snapshot", broken)
    code, out, err = run_query_command(["snap", "--snapshot", F1, "--out", str(tmp_path / "copy")])
    assert (code, out) == (EXIT_RUNTIME, "")
    assert err == "error: internal error: RuntimeError: disk on fire\n"


DETERMINISM_QUERIES = [
    "SELECT * FROM users",
    "SELECT * FROM processes",
    "SELECT * FROM files",
    "SELECT * FROM open_files",
    "SELECT * FROM io_requests",
    "SELECT pid, command FROM processes WHERE rss_bytes > 600 ORDER BY pid DESC",
    "SELECT DISTINCT uid FROM processes",
    "SELECT username, command FROM users, processes",
    "SELECT username, path FROM users, processes, open_files",
    "SELECT path FROM files WHERE dir LIKE '/home/%' OR size_bytes < 6",
    "SELECT username",
    "SELECT uid",
    "SELECT username, file_name",
    "SELECT username, path",
    "SELECT device, username",
    "SELECT command WHERE op = 'read'",
    "SELECT username, shell FROM users ORDER BY shell LIMIT 1",
    "SELECT pid FROM processes WHERE NOT state = 'S'",
    "SELECT file_name, size_bytes FROM files ORDER BY size_bytes",
    "SELECT username WHERE path IS NOT NULL",
]


@pytest.mark.parametrize("sql", DETERMINISM_QUERIES)
def test_repeated_runs_are_byte_identical(sql):
    first = query(sql)
    assert first[0] == EXIT_OK, first[2]
    assert query(sql) == first
