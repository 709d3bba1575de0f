"""
Recursive-descent parser for the query language.

    query      := SELECT [DISTINCT] selectList [FROM relList] [WHERE expr]
                  [ORDER BY orderList] [LIMIT intLit] [';']
    selectList := '*' | ident {',' ident}
    relList    := ident {',' ident}
    orderList  := ident [ASC|DESC] {',' ident [ASC|DESC]}
    expr       := andExpr {OR andExpr}
    andExpr    := notExpr {AND notExpr}
    notExpr    := [NOT] primary
    primary    := '(' expr ')'
                | ident ( cmpOp operand | LIKE strLit | IS [NOT] NULL )
                | literal cmpOp operand
    operand    := ident | literal
    cmpOp      := '=' | '<>' | '<' | '<=' | '>' | '>='
    literal    := intLit | strLit | TRUE | FALSE | NULL
"""
from dataclasses import dataclass
from typing import Protocol

from rosi.sql.ast import (
    COMPARE_OPS,
    STAR,
    And,
    Column,
    Compare,
    Expr,
    IsNull,
    Like,
    Literal,
    Not,
    Or,
    OrderKey,
    SelectStmt,
    Star,
)
from rosi.sql.errors import ParseError
from rosi.sql.lexer import Token, TokenKind, tokenize

# Public protocol


class QueryParser(Protocol):
    def parse(self, text: str) -> SelectStmt:
        raise NotImplementedError()


def parse_query(text: str) -> SelectStmt:
    """
    Parse a query into a SelectStmt.

    Raises:
        LexError, ParseError (with byte offset and the expected token set).
    """
    return DefaultQueryParser().parse(text)

# Parser


@dataclass(frozen=True, slots=True)
class DefaultQueryParser:

    def parse(self, text: str) -> SelectStmt:
        tokens = tokenize(text)
        return _Parser(tokens, len(text.encode("utf-8"))).parse_query()


_LITERAL_KEYWORDS = ("TRUE", "FALSE", "NULL")
_EXPR_START = ("(", "NOT", "identifier", "literal")


class _Parser:

    def __init__(self, tokens: list[Token], end_offset: int) -> None:
        self.tokens = tokens
        self.end_offset = end_offset
        self.i = 0

    # Token access

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def offset(self) -> int:
        tok = self.peek()
        return self.end_offset if tok is None else tok.offset

    def at_keyword(self, *words: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == TokenKind.KEYWORD and tok.text in words

    def at_symbol(self, *symbols: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == TokenKind.SYMBOL and tok.text in symbols

    def at_kind(self, kind: TokenKind) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind

    def at_literal(self) -> bool:
        return self.at_kind(TokenKind.INT_LITERAL) or self.at_kind(TokenKind.STRING_LITERAL) \
            or self.at_keyword(*_LITERAL_KEYWORDS)

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: tuple[str, ...]) -> ParseError:
        tok = self.peek()
        found = "end of input" if tok is None else tok.describe()
        return ParseError(
            f"Expected {_format_expected(expected)}, found {found}",
            self.offset(),
            expected=expected,
        )

    def expect_keyword(self, word: str) -> Token:
        if not self.at_keyword(word):
            raise self.fail((word,))
        return self.take()

    def expect_identifier(self) -> Token:
        if not self.at_kind(TokenKind.IDENTIFIER):
            raise self.fail(("identifier",))
        return self.take()

    # Grammar

    def parse_query(self) -> SelectStmt:
        self.expect_keyword("SELECT")
        distinct = False
        if self.at_keyword("DISTINCT"):
            self.take()
            distinct = True

        projection: Star | tuple[str, ...]
        if self.at_symbol("*"):
            self.take()
            projection = STAR
        else:
            projection = tuple(self.parse_ident_list())

        from_: tuple[str, ...] | None = None
        if self.at_keyword("FROM"):
            self.take()
            from_ = tuple(self.parse_ident_list())
        elif projection is STAR:
            # `*` has no meaning without relations to expand it over
            raise self.fail(("FROM",))

        where: Expr | None = None
        if self.at_keyword("WHERE"):
            self.take()
            where = self.parse_expr()

        order_by: tuple[OrderKey, ...] = ()
        if self.at_keyword("ORDER"):
            self.take()
            self.expect_keyword("BY")
            order_by = tuple(self.parse_order_list())

        limit: int | None = None
        if self.at_keyword("LIMIT"):
            self.take()
            if not self.at_kind(TokenKind.INT_LITERAL):
                raise self.fail(("integer",))
            limit = int(self.take().text)

        if self.at_symbol(";"):
            self.take()
            if self.peek() is not None:
                raise self.fail(("end of input",))

        if self.peek() is not None:
            raise self.fail(self._trailing_expected(from_, where, order_by, limit))

        return SelectStmt(
            projection=projection,
            from_=from_,
            where=where,
            order_by=order_by,
            limit=limit,
            distinct=distinct,
        )

    def _trailing_expected(
        self,
        from_: tuple[str, ...] | None,
        where: Expr | None,
        order_by: tuple[OrderKey, ...],
        limit: int | None,
    ) -> tuple[str, ...]:
        """
        What could still legally follow, given the clauses already consumed.
        """
        open_lists = where is None and not order_by and limit is None
        expected: list[str] = []
        if open_lists:
            expected.append(",")
        if where is not None and not order_by and limit is None:
            expected += ["AND", "OR"]
        if from_ is None and open_lists:
            expected.append("FROM")
        if open_lists:
            expected.append("WHERE")
        if not order_by and limit is None:
            expected.append("ORDER")
        if order_by and limit is None:
            expected.append(",")
        if limit is None:
            expected.append("LIMIT")
        expected += [";", "end of input"]
        return tuple(expected)

    def parse_ident_list(self) -> list[str]:
        names = [self.expect_identifier().text]
        while self.at_symbol(","):
            self.take()
            names.append(self.expect_identifier().text)
        return names

    def parse_order_list(self) -> list[OrderKey]:
        keys = [self.parse_order_key()]
        while self.at_symbol(","):
            self.take()
            keys.append(self.parse_order_key())
        return keys

    def parse_order_key(self) -> OrderKey:
        name = self.expect_identifier().text
        descending = False
        if self.at_keyword("ASC", "DESC"):
            descending = self.take().text == "DESC"
        return OrderKey(column=name, descending=descending)

    def parse_expr(self) -> Expr:
        start = self.offset()
        items = [self.parse_and()]
        while self.at_keyword("OR"):
            self.take()
            items.append(self.parse_and())
        return items[0] if len(items) == 1 else Or(items=tuple(items), offset=start)

    def parse_and(self) -> Expr:
        start = self.offset()
        items = [self.parse_not()]
        while self.at_keyword("AND"):
            self.take()
            items.append(self.parse_not())
        return items[0] if len(items) == 1 else And(items=tuple(items), offset=start)

    def parse_not(self) -> Expr:
        if self.at_keyword("NOT"):
            start = self.take().offset
            return Not(item=self.parse_primary(), offset=start)
        return self.parse_primary()

    def parse_primary(self) -> Expr:
        if self.at_symbol("("):
            self.take()
            inner = self.parse_expr()
            if not self.at_symbol(")"):
                raise self.fail((")", "AND", "OR"))
            self.take()
            return inner

        if self.at_kind(TokenKind.IDENTIFIER):
            tok = self.take()
            column = Column(name=tok.text, offset=tok.offset)

            if self.at_keyword("LIKE"):
                self.take()
                if not self.at_kind(TokenKind.STRING_LITERAL):
                    raise self.fail(("string",))
                return Like(column=column, pattern=self.take().text, offset=tok.offset)

            if self.at_keyword("IS"):
                self.take()
                negated = False
                if self.at_keyword("NOT"):
                    self.take()
                    negated = True
                self.expect_keyword("NULL")
                return IsNull(column=column, negated=negated, offset=tok.offset)

            if self.at_compare_op():
                op = self.take().text
                return Compare(op=op, lhs=column, rhs=self.parse_operand(), offset=tok.offset)  # type: ignore[arg-type]

            raise self.fail((*COMPARE_OPS, "LIKE", "IS"))

        if self.at_literal():
            lit = self.parse_literal()
            if not self.at_compare_op():
                raise self.fail(COMPARE_OPS)
            op = self.take().text
            return Compare(op=op, lhs=lit, rhs=self.parse_operand(), offset=lit.offset)  # type: ignore[arg-type]

        raise self.fail(_EXPR_START)

    def at_compare_op(self) -> bool:
        return self.at_symbol(*COMPARE_OPS)

    def parse_operand(self) -> Column | Literal:
        if self.at_kind(TokenKind.IDENTIFIER):
            tok = self.take()
            return Column(name=tok.text, offset=tok.offset)
        if self.at_literal():
            return self.parse_literal()
        raise self.fail(("identifier", "literal"))

    def parse_literal(self) -> Literal:
        tok = self.take()
        if tok.kind == TokenKind.INT_LITERAL:
            return Literal(value=int(tok.text), offset=tok.offset)
        if tok.kind == TokenKind.STRING_LITERAL:
            return Literal(value=tok.text, offset=tok.offset)
        if tok.text == "TRUE":
            return Literal(value=True, offset=tok.offset)
        if tok.text == "FALSE":
            return Literal(value=False, offset=tok.offset)
        return Literal(value=None, offset=tok.offset)


def _format_expected(expected: tuple[str, ...]) -> str:
    if len(expected) == 1:
        return expected[0]
    return "one of: " + ", ".join(expected)
