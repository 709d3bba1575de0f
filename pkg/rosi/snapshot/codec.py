"""
The `.rel` text format.

    uid:INT,username:TEXT,home_dir:TEXT,shell:TEXT
    0,"root","/root","/bin/sh"
    1000,"ana","/home/ana",

- header: `name:TYPE` pairs, comma-separated
- TEXT is always double-quoted, `""` escapes a quote; commas and newlines are legal inside
- INT / TIMESTAMP are decimal, BOOL is `true` / `false`
- NULL is a completely empty, unquoted field
- LF line endings; rows are written in canonical order so equal relations produce equal bytes
"""
import re

from rosi.catalog.builtin import builtin_schema
from rosi.catalog.errors import InvalidSchema
from rosi.catalog.types import INT64_MAX, INT64_MIN, Attribute, AttrType, RelationSchema, Row, Value, is_identifier
from rosi.providers.types import Relation
from rosi.snapshot.errors import FormatError

SUFFIX = ".rel"

_INT_RE = re.compile(r"-?[0-9]+\Z")

# Encoding


def encode_header(schema: RelationSchema) -> str:
    return ",".join(f"{a.name}:{a.type.value}" for a in schema.attributes)


def encode_field(value: Value, attr_type: AttrType) -> str:
    if value is None:
        return ""
    if attr_type is AttrType.TEXT:
        return '"' + str(value).replace('"', '""') + '"'
    if attr_type is AttrType.BOOL:
        return "true" if value else "false"
    return str(int(value))


def encode_row(row: Row, schema: RelationSchema) -> str:
    return ",".join(encode_field(v, a.type) for v, a in zip(row, schema.attributes))


def encode_relation(relation: Relation) -> bytes:
    lines = [encode_header(relation.schema)]
    lines.extend(encode_row(row, relation.schema) for row in relation.sorted_rows())
    return ("\n".join(lines) + "\n").encode("utf-8")

# Decoding


def fixture_key(name: str, attributes: tuple[Attribute, ...]) -> tuple[str, ...]:
    """
    Headers carry no key: reuse the built-in key when the relation matches a built-in one, else all attributes.
    """
    builtin = builtin_schema(name)
    if builtin is not None and builtin.attributes == attributes:
        return builtin.key
    return tuple(a.name for a in attributes)


def decode_header(line: str, *, name: str, file: str) -> RelationSchema:
    if not is_identifier(name):
        raise FormatError(f"Invalid relation name {name!r} (from file name)", file, 1)
    if not line.strip():
        raise FormatError("Empty header", file, 1)

    attributes: list[Attribute] = []
    for part in line.split(","):
        attr_name, sep, type_name = part.partition(":")
        if not sep:
            raise FormatError(f"Header entry {part!r} is not name:TYPE", file, 1)
        if not is_identifier(attr_name):
            raise FormatError(f"Invalid attribute name {attr_name!r}", file, 1)
        try:
            attr_type = AttrType(type_name)
        except ValueError:
            raise FormatError(f"Unknown type {type_name!r} for attribute '{attr_name}'", file, 1) from None
        attributes.append(Attribute(attr_name, attr_type))

    attrs = tuple(attributes)
    try:
        return RelationSchema(name=name, attributes=attrs, key=fixture_key(name, attrs))
    except InvalidSchema as e:
        raise FormatError(e.message, file, 1) from e


def split_header(text: str) -> tuple[str, str]:
    header, _, body = text.partition("\n")
    return header, body


def _convert(raw: str, quoted: bool, attr: Attribute, file: str, line: int) -> Value:
    if quoted:
        if attr.type is not AttrType.TEXT:
            raise FormatError(f"Quoted value for {attr.type.value} attribute '{attr.name}'", file, line)
        return raw
    if raw == "":
        return None
    if attr.type is AttrType.TEXT:
        raise FormatError(f"Unquoted value for TEXT attribute '{attr.name}'", file, line)
    if attr.type is AttrType.BOOL:
        if raw == "true":
            return True
        if raw == "false":
            return False
        raise FormatError(f"Invalid BOOL {raw!r} for attribute '{attr.name}'", file, line)
    if not _INT_RE.match(raw):
        raise FormatError(f"Invalid {attr.type.value} {raw!r} for attribute '{attr.name}'", file, line)
    value = int(raw)
    if not INT64_MIN <= value <= INT64_MAX:
        raise FormatError(f"{attr.type.value} {raw!r} out of range for attribute '{attr.name}'", file, line)
    return value


def decode_body(body: str, schema: RelationSchema, *, file: str) -> tuple[Row, ...]:
    """
    Parse the rows following the header (which is line 1).
    """
    attrs = schema.attributes
    rows: list[Row] = []
    n = len(body)
    i = 0
    line = 2

    while i < n:
        record_line = line
        fields: list[tuple[str, bool]] = []
        while True:
            if i < n and body[i] == '"':
                i += 1
                buf: list[str] = []
                while True:
                    if i >= n:
                        raise FormatError("Unterminated quoted field", file, record_line)
                    ch = body[i]
                    if ch == '"':
                        if i + 1 < n and body[i + 1] == '"':
                            buf.append('"')
                            i += 2
                            continue
                        i += 1
                        break
                    if ch == "\n":
                        line += 1
                    buf.append(ch)
                    i += 1
                if i < n and body[i] not in ",\n":
                    raise FormatError(f"Unexpected {body[i]!r} after quoted field", file, line)
                fields.append(("".join(buf), True))
            else:
                j = i
                while j < n and body[j] not in ",\n":
                    if body[j] == '"':
                        raise FormatError("Stray quote inside unquoted field", file, line)
                    j += 1
                fields.append((body[i:j], False))
                i = j

            if i >= n:
                break
            if body[i] == ",":
                i += 1
                continue
            i += 1  # newline ends the record
            line += 1
            break

        if len(fields) != len(attrs):
            raise FormatError(
                f"Expected {len(attrs)} field(s), found {len(fields)}",
                file,
                record_line,
                details={"expected": len(attrs), "found": len(fields)},
            )
        rows.append(tuple(_convert(raw, quoted, a, file, record_line) for (raw, quoted), a in zip(fields, attrs)))

    return tuple(rows)


def decode_relation(text: str, *, name: str, file: str) -> Relation:
    header, body = split_header(text)
    schema = decode_header(header, name=name, file=file)
    return Relation(schema=schema, rows=decode_body(body, schema, file=file))
