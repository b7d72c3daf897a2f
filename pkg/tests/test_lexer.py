import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pddl_forge.errors import InvalidEncoding
from pddl_forge.lexer import Kind, decode, eof_span, is_identifier, tokenize

K = Kind


def kinds(text):
    return [(t.kind, t.text) for t in tokenize(text)]


def test_minimal_domain_tokens():
    assert kinds("(define (domain d))") == [
        (K.LPAREN, "("), (K.NAME, "define"), (K.WHITESPACE, " "), (K.LPAREN, "("),
        (K.NAME, "domain"), (K.WHITESPACE, " "), (K.NAME, "d"), (K.RPAREN, ")"),
        (K.RPAREN, ")"),
    ]


def test_comment_then_section():
    # hand-traced: comment stops before the newline, which is whitespace
    assert kinds("; note\n(:types)") == [
        (K.COMMENT, "; note"), (K.WHITESPACE, "\n"), (K.LPAREN, "("),
        (K.KEYWORD, ":types"), (K.RPAREN, ")"),
    ]


@pytest.mark.parametrize("text, kind", [
    ("?x", K.VARIABLE), ("?loc-1", K.VARIABLE), (":durative-action", K.KEYWORD),
    ("12", K.NUMBER), ("3.25", K.NUMBER), ("truck_2", K.NAME), ("<=", K.NAME),
    (">=", K.NAME), ("=", K.NAME), ("*", K.NAME), ("-", K.DASH), ("$", K.INVALID_CHAR),
])
def test_single_token_kinds(text, kind):
    (tok,) = tokenize(text)
    assert tok.kind is kind and tok.text == text


def test_dash_separates_typed_list():
    assert [t.kind for t in tokenize("a - b") if not t.trivia] == [K.NAME, K.DASH, K.NAME]


def test_bare_question_mark_is_invalid():
    assert [t.kind for t in tokenize("? x")][0] is K.INVALID_CHAR


def test_spans_are_bytes_and_columns_are_chars():
    toks = tokenize("é\n(ab)")
    first, nl, lp, name, rp = toks
    assert first.kind is K.INVALID_CHAR
    assert (first.span.start_byte, first.span.end_byte) == (0, 2)
    assert (first.span.start_col, first.span.end_col) == (1, 2)
    assert (name.span.start_line, name.span.start_col) == (2, 2)
    assert (name.span.start_byte, name.span.end_byte) == (4, 6)


def test_multiline_whitespace_end_position():
    ws = tokenize("a\n\n  b")[1]
    assert (ws.span.end_line, ws.span.end_col) == (3, 3)


def test_eof_span():
    assert eof_span([]).start_byte == 0
    s = eof_span(tokenize("(a)\n"))
    assert s.start_byte == s.end_byte == 4 and (s.start_line, s.start_col) == (2, 1)


def test_decode_rejects_bad_utf8():
    with pytest.raises(InvalidEncoding):
        decode(b"(define \xff)")
    with pytest.raises(InvalidEncoding):
        tokenize(b"\xc3")


def test_identifier_check():
    assert is_identifier("a-b_1")
    assert not is_identifier("1a") and not is_identifier("a b") and not is_identifier("")


pddl_chars = st.sampled_from(list("()?:-;\n\t ;abcxyz019._=<>*/$#é \U0001f600"))


@settings(max_examples=300)
@given(st.one_of(st.text(), st.text(pddl_chars)))
def test_lossless(text):
    toks = tokenize(text)
    assert "".join(t.text for t in toks) == text
    b = 0
    for t in toks:
        assert t.span.start_byte == b
        b = t.span.end_byte
    assert b == len(text.encode("utf-8", "surrogatepass"))


@settings(max_examples=200)
@given(st.text(pddl_chars))
def test_lines_and_columns_agree_with_offsets(text):
    for t in tokenize(text):
        before = text.encode("utf-8", "surrogatepass")[:t.span.start_byte].decode("utf-8", "surrogatepass")
        assert t.span.start_line == before.count("\n") + 1
        assert t.span.start_col == len(before) - (before.rfind("\n") + 1) + 1
