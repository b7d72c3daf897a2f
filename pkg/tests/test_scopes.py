import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pddl_forge.errors import UnknownFormat
from pddl_forge.lexer import Kind, tokenize
from pddl_forge.scopes import (
    SCOPES, classify, classify_with_diagnostics, emit_scopes, lint,
)


def scope_of(scoped, text, nth=0):
    hits = [s.scope for s in scoped if s.token.text == text]
    return hits[nth]


def test_types_fragment():
    scoped = classify("(:types truck - vehicle)")
    assert scope_of(scoped, ":types") == "section-keyword"
    assert scope_of(scoped, "truck") == "type-name"
    assert scope_of(scoped, "vehicle") == "type-name"
    assert scope_of(scoped, "-") == "punctuation"


def test_context_decides_name_scope():
    text = "(define (domain d) (:predicates (move ?x)) (:action move :parameters (?x)))"
    scoped = classify(text)
    assert scope_of(scoped, "move", 0) == "predicate-name"
    assert scope_of(scoped, "move", 1) == "action-name"
    assert scope_of(scoped, "?x", 1) == "variable"
    assert scope_of(scoped, "define") == "definition-keyword"


def test_misspelled_action_is_plain():
    text = "(define (domain d) (:actoin move :parameters (?x) :effect (p ?x)))"
    scoped, diags = classify_with_diagnostics(text)
    assert [d.code for d in diags] == ["unknown-keyword"]
    start = text.index("(:actoin")
    region = [s for s in scoped if start <= s.token.span.start_byte < len(text) - 1]
    assert region and all(s.scope == "plain" for s in region)
    assert scope_of(scoped, "define") == "definition-keyword"


def test_misspelled_precondition_only_covers_key_and_value():
    text = "(define (domain d) (:action a :parameters (?x) :precondtion (p ?x) :effect (q ?x)))"
    scoped = classify(text)
    assert scope_of(scoped, ":precondtion") == "plain"
    assert scope_of(scoped, "p") == "plain"
    assert scope_of(scoped, "q") == "predicate-name"


def test_comments_and_numbers():
    scoped = classify("; hi\n(define (problem p) (:domain d) (:init (= (f a) 3)))")
    assert scoped[0].scope == "comment"
    assert scope_of(scoped, "3") == "number"
    assert scope_of(scoped, "f") == "function-name"


def test_lint_examples():
    assert lint("(define (domain d))") == []
    (d,) = lint("(define (domain d)")
    assert d.code == "unbalanced-paren" and d.span.end_byte == len("(define (domain d)")


def test_lint_is_deterministic(fixtures):
    text = (fixtures / "errors-a.pddl").read_text()
    assert lint(text) == lint(text)


def test_emit_json():
    assert emit_scopes([], "json") == b"[]"
    text = "(define (domain d))"
    scoped = classify(text)
    records = json.loads(emit_scopes(scoped, "json"))
    non_ws = [t for t in tokenize(text) if t.kind is not Kind.WHITESPACE]
    assert len(records) == len(non_ws) == 7
    assert set(records[0]) == {"text", "scope", "start", "end"}


def test_emit_ansi_no_color_identity():
    text = "; only a comment"
    assert emit_scopes(classify(text), "ansi", colors={}, source=text) == text.encode()


def test_emit_ansi_colors():
    out = emit_scopes(classify("(:types a)"), "ansi", colors={"type-name": "32"})
    assert b"\x1b[32ma\x1b[0m" in out


def test_unknown_format():
    with pytest.raises(UnknownFormat):
        emit_scopes([], "html")


source_text = st.text(st.sampled_from(list("()?:-; \n\tabc12$é")) , max_size=80) | st.sampled_from([
    "(define (domain d) (:types a - b) (:predicates (p ?x - a)))",
    "(define (problem p) (:domain d) (:objects x) (:init (p x)) (:goal (p x)))",
])


@settings(max_examples=200)
@given(source_text)
def test_coverage_and_duality(text):
    scoped, diags = classify_with_diagnostics(text)
    non_ws = [t for t in tokenize(text) if t.kind is not Kind.WHITESPACE]
    assert [s.token for s in scoped] == non_ws
    for s in scoped:
        assert s.scope in SCOPES
        inside = any(s.token.span.intersects(d.span) for d in diags)
        assert (s.scope == "plain") == inside


@settings(max_examples=200)
@given(source_text)
def test_no_color_identity_property(text):
    scoped = classify(text)
    assert emit_scopes(scoped, "ansi", colors={}, source=text) == text.encode()
