"""Context-aware scope classification and linting.

A token is highlighted with the scope the parser gave it while accepting the
surrounding construct. Tokens that fall inside a diagnostic region get the
``plain`` scope instead, so broken code stays uncolored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .diagnostics import Diagnostic
from .errors import UnknownFormat
from .lexer import Kind, Token
from .parser import analyze

SCOPES = (
    "definition-keyword", "section-keyword", "requirement-flag", "type-name",
    "variable", "predicate-name", "function-name", "action-name", "number",
    "comment", "punctuation", "plain",
)

# scope of a token the parser never had to look at
_BY_KIND = {
    Kind.LPAREN: "punctuation",
    Kind.RPAREN: "punctuation",
    Kind.DASH: "punctuation",
    Kind.COMMENT: "comment",
    Kind.NUMBER: "number",
    Kind.VARIABLE: "variable",
    Kind.KEYWORD: "section-keyword",
    Kind.NAME: "variable",
}

DEFAULT_COLORS = {
    "definition-keyword": "35",
    "section-keyword": "1;34",
    "requirement-flag": "36",
    "type-name": "32",
    "variable": "33",
    "predicate-name": "34",
    "function-name": "36",
    "action-name": "1;32",
    "number": "31",
    "comment": "2",
}


@dataclass(frozen=True)
class ScopedToken:
    token: Token
    scope: str


def lint(text) -> list[Diagnostic]:
    """All syntax diagnostics of a domain or problem file, sorted by position.

    A file holding only sections, with no ``(define ...)`` around them, is
    checked as a fragment.
    """
    return list(analyze(text, allow_fragment=True).diagnostics)


def classify(text) -> list[ScopedToken]:
    a = analyze(text, allow_fragment=True)
    return _classify(a.tokens, a.scopes, a.diagnostics)


def classify_with_diagnostics(text):
    a = analyze(text, allow_fragment=True)
    return _classify(a.tokens, a.scopes, a.diagnostics), list(a.diagnostics)


def _classify(tokens, scopes, diagnostics):
    spans = [d.span for d in diagnostics]
    out = []
    for tok in tokens:
        if tok.kind is Kind.WHITESPACE:
            continue
        if any(tok.span.intersects(s) for s in spans):
            scope = "plain"
        else:
            scope = scopes.get(tok.span.start_byte) or _BY_KIND[tok.kind]
        out.append(ScopedToken(tok, scope))
    return out


def emit_scopes(scoped, format="json", colors=None, source=None) -> bytes:
    """Render a classification as a JSON array or ANSI-colored text.

    ``colors`` maps scope labels to SGR parameter strings such as ``"1;34"``;
    pass an empty dict to disable coloring. ``source`` supplies the exact
    text between tokens; without it gaps are rebuilt from positions.
    """
    if format == "json":
        records = [{"text": st.token.text, "scope": st.scope,
                    "start": st.token.span.start_byte, "end": st.token.span.end_byte}
                   for st in scoped]
        return json.dumps(records).encode("utf-8")
    if format != "ansi":
        raise UnknownFormat(f"unknown scope output format {format!r}; use json or ansi")
    colors = DEFAULT_COLORS if colors is None else colors
    raw = source.encode("utf-8") if isinstance(source, str) else source
    parts = []
    prev = None
    for st in scoped:
        tok = st.token
        parts.append(_gap(prev, tok, raw))
        code = colors.get(st.scope)
        parts.append(f"\x1b[{code}m{tok.text}\x1b[0m" if code else tok.text)
        prev = tok
    if raw is not None:
        end = prev.span.end_byte if prev else 0
        parts.append(raw[end:].decode("utf-8"))
    return "".join(parts).encode("utf-8")


def _gap(prev, tok, raw) -> str:
    start = prev.span.end_byte if prev else 0
    if raw is not None:
        return raw[start:tok.span.start_byte].decode("utf-8")
    s = tok.span
    line, col = (prev.span.end_line, prev.span.end_col) if prev else (1, 1)
    if s.start_line > line:
        return "\n" * (s.start_line - line) + " " * (s.start_col - 1)
    return " " * (s.start_col - col)
