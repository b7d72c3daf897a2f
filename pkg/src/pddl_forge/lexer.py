"""Lossless tokenizer for PDDL source text.

Every character of the input ends up in exactly one token, including
whitespace and comments, so ``"".join(t.text for t in tokenize(s)) == s``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .errors import InvalidEncoding


class Kind(str, enum.Enum):
    LPAREN = "LPAREN"
    RPAREN = "RPAREN"
    KEYWORD = "KEYWORD"
    VARIABLE = "VARIABLE"
    NAME = "NAME"
    NUMBER = "NUMBER"
    DASH = "DASH"
    COMMENT = "COMMENT"
    WHITESPACE = "WHITESPACE"
    INVALID_CHAR = "INVALID_CHAR"

    def __repr__(self):
        return self.value


@dataclass(frozen=True)
class SourceSpan:
    """Half-open byte range plus 1-based line/column of both ends.

    Columns count characters. ``end_line``/``end_col`` point just past the
    last character.
    """

    start_byte: int
    end_byte: int
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self):
        if not 0 <= self.start_byte <= self.end_byte:
            raise ValueError(f"bad span {self.start_byte}..{self.end_byte}")

    def cover(self, other: SourceSpan) -> SourceSpan:
        """Smallest span containing both ``self`` and ``other``."""
        first = self if self.start_byte <= other.start_byte else other
        last = self if self.end_byte >= other.end_byte else other
        return SourceSpan(first.start_byte, last.end_byte,
                          first.start_line, first.start_col,
                          last.end_line, last.end_col)

    def intersects(self, other: SourceSpan) -> bool:
        return self.start_byte < other.end_byte and other.start_byte < self.end_byte

    def contains(self, other: SourceSpan) -> bool:
        return self.start_byte <= other.start_byte and other.end_byte <= self.end_byte


@dataclass(frozen=True)
class Token:
    kind: Kind
    text: str
    span: SourceSpan

    @property
    def trivia(self) -> bool:
        return self.kind in (Kind.WHITESPACE, Kind.COMMENT)


IDENT = r"[A-Za-z][A-Za-z0-9_\-]*"

_TOKEN_RE = re.compile(
    rf"""
    (?P<WHITESPACE>[ \t\r\n\f\v]+)
  | (?P<COMMENT>;[^\r\n]*)
  | (?P<LPAREN>\()
  | (?P<RPAREN>\))
  | (?P<VARIABLE>\?{IDENT})
  | (?P<KEYWORD>:{IDENT})
  | (?P<NUMBER>[0-9]+(?:\.[0-9]+)?)
  | (?P<NAME>{IDENT}|<=|>=|[<>=+*/])
  | (?P<DASH>-)
    """,
    re.VERBOSE,
)

IDENT_RE = re.compile(IDENT + r"\Z")


def is_identifier(value: str) -> bool:
    return isinstance(value, str) and IDENT_RE.match(value) is not None


def decode(data: bytes | str) -> str:
    if isinstance(data, str):
        return data
    try:
        return bytes(data).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InvalidEncoding(f"input is not valid UTF-8: {exc}") from None


def tokenize(text: bytes | str) -> list[Token]:
    """Split ``text`` into tokens; unknown characters become INVALID_CHAR."""
    text = decode(text)
    tokens = []
    pos = 0
    byte = 0
    line, col = 1, 1
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            kind, end = Kind.INVALID_CHAR, pos + 1
        else:
            kind, end = Kind(m.lastgroup), m.end()
        piece = text[pos:end]
        nbytes = len(piece.encode("utf-8", "surrogatepass"))
        newlines = piece.count("\n")
        if newlines:
            end_line = line + newlines
            end_col = len(piece) - piece.rfind("\n")
        else:
            end_line, end_col = line, col + len(piece)
        tokens.append(Token(kind, piece,
                            SourceSpan(byte, byte + nbytes, line, col, end_line, end_col)))
        pos, byte, line, col = end, byte + nbytes, end_line, end_col
    return tokens


def eof_span(tokens: list[Token]) -> SourceSpan:
    """Empty span positioned at the end of the tokenized input."""
    if not tokens:
        return SourceSpan(0, 0, 1, 1, 1, 1)
    s = tokens[-1].span
    return SourceSpan(s.end_byte, s.end_byte, s.end_line, s.end_col, s.end_line, s.end_col)
