"""
Result renderers.

- TABLE: column-aligned for people; NULL is printed literally
- CSV: header row, then rows encoded exactly like a `.rel` body
- JSONL: one JSON object per row; NULL is null, TIMESTAMP an integer
"""
import json
from enum import auto
from typing import Protocol

from tabulate import tabulate

from rosi.catalog.types import Value
from rosi.providers.types import Relation
from rosi.snapshot.codec import encode_row
from rosi.utils.enum import StrEnum


class OutputFormat(StrEnum):
    TABLE = auto()
    CSV = auto()
    JSONL = auto()


class Renderer(Protocol):
    def render(self, relation: Relation) -> str:
        raise NotImplementedError()


def _cell(value: Value) -> str:
    if value is None:
        return "NULL"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


class TableRenderer:

    def render(self, relation: Relation) -> str:
        rows = [[_cell(v) for v in row] for row in relation.rows]
        return tabulate(rows, headers=list(relation.columns), tablefmt="simple", disable_numparse=True) + "\n"


class CsvRenderer:

    def render(self, relation: Relation) -> str:
        lines = [",".join(relation.columns)]
        lines.extend(encode_row(row, relation.schema) for row in relation.rows)
        return "\n".join(lines) + "\n"


class JsonlRenderer:

    def render(self, relation: Relation) -> str:
        columns = relation.columns
        return "".join(json.dumps(dict(zip(columns, row)), ensure_ascii=False) + "\n" for row in relation.rows)


RENDERERS: dict[OutputFormat, Renderer] = {
    OutputFormat.TABLE: TableRenderer(),
    OutputFormat.CSV: CsvRenderer(),
    OutputFormat.JSONL: JsonlRenderer(),
}


def render_relation(relation: Relation, fmt: OutputFormat) -> str:
    return RENDERERS[fmt].render(relation)
