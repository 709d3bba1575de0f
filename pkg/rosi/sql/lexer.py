from dataclasses import dataclass

from rosi.catalog.types import INT64_MAX
from rosi.sql.errors import LexError
from rosi.utils.enum import StrEnum

KEYWORDS: frozenset[str] = frozenset({
    "SELECT", "DISTINCT", "FROM", "WHERE", "ORDER", "BY", "ASC", "DESC", "LIMIT",
    "AND", "OR", "NOT", "LIKE", "IS", "NULL", "TRUE", "FALSE",
})

# longest first so "<=" wins over "<"
SYMBOLS: tuple[str, ...] = ("<>", "<=", ">=", "=", "<", ">", ",", "(", ")", "*", ";")


class TokenKind(StrEnum):
    KEYWORD = "keyword"
    IDENTIFIER = "identifier"
    INT_LITERAL = "int_literal"
    STRING_LITERAL = "string_literal"
    SYMBOL = "symbol"


@dataclass(frozen=True, slots=True)
class Token:
    """
    `text` is canonical: keywords upper-cased, identifiers lower-cased,
    string literals unescaped. `offset` is the 0-based byte offset of the token start.
    """
    kind: TokenKind
    text: str
    offset: int

    def describe(self) -> str:
        if self.kind == TokenKind.STRING_LITERAL:
            return f"string '{self.text}'"
        return f"'{self.text}'"


def _is_ident_start(ch: str) -> bool:
    return ch == "_" or ("a" <= ch <= "z") or ("A" <= ch <= "Z")


def _is_ident_char(ch: str) -> bool:
    return _is_ident_start(ch) or ch.isdigit() and ch.isascii()


class _Cursor:
    """
    Walks the text by character while tracking the matching byte offset.
    """

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self.byte = 0

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self, ahead: int = 0) -> str:
        i = self.pos + ahead
        return self.text[i] if i < len(self.text) else ""

    def advance(self, n: int = 1) -> str:
        chunk = self.text[self.pos : self.pos + n]
        self.pos += len(chunk)
        self.byte += len(chunk.encode("utf-8"))
        return chunk


def tokenize(text: str) -> list[Token]:
    """
    Tokenize the whole input; whitespace is skipped.

    Raises:
        LexError on an unterminated string literal, an out-of-range integer or an illegal character.
    """
    cur = _Cursor(text)
    tokens: list[Token] = []

    while not cur.at_end():
        ch = cur.peek()

        if ch.isspace():
            cur.advance()
            continue

        start = cur.byte

        if ch == "'":
            tokens.append(Token(TokenKind.STRING_LITERAL, _read_string(cur, start), start))
            continue

        if ch.isascii() and ch.isdigit():
            digits = []
            while not cur.at_end() and cur.peek().isascii() and cur.peek().isdigit():
                digits.append(cur.advance())
            if not cur.at_end() and _is_ident_start(cur.peek()):
                raise LexError(f"Unexpected character {cur.peek()!r} after number", cur.byte)
            raw = "".join(digits)
            if int(raw) > INT64_MAX:
                raise LexError(f"Integer literal out of range: {raw}", start)
            tokens.append(Token(TokenKind.INT_LITERAL, raw, start))
            continue

        if _is_ident_start(ch):
            chars = []
            while not cur.at_end() and _is_ident_char(cur.peek()):
                chars.append(cur.advance())
            word = "".join(chars)
            if word.upper() in KEYWORDS:
                tokens.append(Token(TokenKind.KEYWORD, word.upper(), start))
            else:
                tokens.append(Token(TokenKind.IDENTIFIER, word.lower(), start))
            continue

        symbol = next((s for s in SYMBOLS if text.startswith(s, cur.pos)), None)
        if symbol is not None:
            cur.advance(len(symbol))
            tokens.append(Token(TokenKind.SYMBOL, symbol, start))
            continue

        raise LexError(f"Illegal character {ch!r}", start)

    return tokens


def _read_string(cur: _Cursor, start: int) -> str:
    cur.advance()  # opening quote
    chars: list[str] = []
    while True:
        if cur.at_end():
            raise LexError("Unterminated string literal", start)
        ch = cur.advance()
        if ch == "'":
            if cur.peek() == "'":
                cur.advance()
                chars.append("'")
                continue
            return "".join(chars)
        chars.append(ch)
