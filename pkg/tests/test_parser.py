import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pddl_forge import ast
from pddl_forge.parser import analyze, parse_domain, parse_problem
from pddl_forge.printer import print_domain

A = ast


def codes(result):
    return [d.code for d in result.diagnostics]


def test_minimal_domain():
    r = parse_domain("(define (domain d))")
    assert r.ok and r.ast == A.Domain("d")


def test_types_section():
    r = parse_domain("(define (domain d) (:types truck car - vehicle))")
    assert r.ok and r.ast.types == (A.TypedList(("truck", "car"), "vehicle"),)


def test_minimal_problem():
    r = parse_problem("(define (problem p) (:domain d) (:goal (and)))")
    assert r.ok
    assert (r.ast.name, r.ast.domain_name, r.ast.goal) == ("p", "d", A.And(()))


def test_fluent_assignment_in_init():
    r = parse_problem("(define (problem p) (:domain d) (:init (= (distance a b) 5.0)))")
    assert r.ok
    assert r.ast.init == (A.FluentAssignment(
        A.FunctionTerm("distance", (A.Name("a"), A.Name("b"))), A.Number("5.0")),)


def test_timed_initial_literal_matches_hand_parse():
    r = parse_problem("(define (problem p) (:domain d) (:init (at 3.0 (open door))))")
    expected = A.TimedLiteral(A.Number("3.0"), A.Atom("open", (A.Name("door"),)))
    assert r.ok and r.ast.init == (expected,)
    assert r.ast.init[0].time.value == 3.0


def test_at_predicate_in_init_is_not_timed():
    r = parse_problem("(define (problem p) (:domain d) (:init (at truck depot)))")
    assert r.ast.init == (A.Atom("at", (A.Name("truck"), A.Name("depot"))),)


def test_action_parts():
    r = parse_domain("""(define (domain d)
      (:action move :parameters (?a ?b - place ?x)
        :precondition (and (at ?a) (not (= ?a ?b)) (> (fuel) 2))
        :effect (and (not (at ?a)) (at ?b) (decrease (fuel) 1))))""")
    assert r.ok
    (act,) = r.ast.actions
    assert act.parameters == (A.TypedList(("?a", "?b"), "place"), A.TypedList(("?x",)))
    pre = act.precondition.parts
    assert pre[1] == A.Not(A.Atom("=", (A.Variable("?a"), A.Variable("?b"))))
    assert pre[2] == A.Comparison(">", A.FunctionTerm("fuel"), A.Number("2"))
    assert act.effect.parts[2] == A.Assign("decrease", A.FunctionTerm("fuel"), A.Number("1"))


def test_durative_action():
    r = parse_domain("""(define (domain d) (:requirements :durative-actions)
      (:durative-action fly :parameters (?p - plane)
        :duration (= ?duration (flight-time ?p))
        :condition (and (at start (ready ?p)) (over all (ok)))
        :effect (and (at start (not (ready ?p))) (at end (increase (total) 1)))))""")
    assert r.ok
    (da,) = r.ast.durative_actions
    assert da.duration == A.Comparison("=", A.Variable("?duration"),
                                       A.FunctionTerm("flight-time", (A.Variable("?p"),)))
    assert da.condition.parts[1] == A.Timed("over all", A.Atom("ok"))
    assert da.effect.parts[0].when == "at start"


def test_durative_action_needs_duration():
    r = parse_domain("(define (domain d) (:durative-action a :parameters ()))")
    assert codes(r) == ["malformed-construct"]


def test_functions_with_types():
    r = parse_domain("(define (domain d) (:functions (f ?x) (g) - number (h ?y - place) - place (k)))")
    assert r.ok
    assert r.ast.functions == (
        A.FunctionDecl("f", (A.TypedList(("?x",)),), "number"),
        A.FunctionDecl("g", (), "number"),
        A.FunctionDecl("h", (A.TypedList(("?y",), "place"),), "place"),
        A.FunctionDecl("k"),
    )


def test_derived_constraints_metric():
    r = parse_domain("""(define (domain d)
      (:derived (above ?x ?y) (or (on ?x ?y) (exists (?z) (and (on ?x ?z) (above ?z ?y)))))
      (:constraints (and (always (clear a)) (preference p1 (within 5 (done))))))""")
    assert r.ok
    assert r.ast.derived_predicates[0].head.name == "above"
    c = r.ast.constraints.parts
    assert c[0] == A.Modal("always", (), (A.Atom("clear", (A.Name("a"),)),))
    assert c[1] == A.Preference("p1", A.Modal("within", (A.Number("5"),), (A.Atom("done"),)))
    p = parse_problem("(define (problem p) (:domain d) (:metric minimize (total-cost)))")
    assert p.ast.metric == A.Metric("minimize", A.FunctionTerm("total-cost"))


def test_unclosed_define_spans_to_eof():
    text = "(define (domain d)"
    r = parse_domain(text)
    (d,) = r.diagnostics
    assert d.code == "unbalanced-paren"
    assert (d.span.start_byte, d.span.end_byte) == (0, len(text))


def test_stray_close_paren():
    r = parse_domain("(define (domain d)))")
    (d,) = r.diagnostics
    assert d.code == "unbalanced-paren" and d.span.start_byte == 19


def test_unclosed_section_recovers_at_next_section():
    r = parse_domain("(define (domain d) (:predicates (p ?x) (:action a :parameters ()))")
    assert codes(r) == ["unbalanced-paren"]
    assert [a.name for a in r.ast.actions] == ["a"]


def test_recovery_keeps_later_sections():
    r = parse_domain("(define (domain d) (:predicates (p ?x) ()) (:action a :parameters (?x)"
                     " :effect (p ?x)))")
    assert codes(r) == ["malformed-construct"]
    assert r.ast.actions[0].effect == A.Atom("p", (A.Variable("?x"),))
    assert isinstance(r.ast.predicates[1], A.ErrorNode)


def test_misspelled_section_hint():
    r = parse_domain("(define (domain d) (:predicats (p)))")
    (d,) = r.diagnostics
    assert d.code == "unknown-keyword" and ":predicates" in d.message


def test_duplicate_section_and_type():
    r = parse_domain("(define (domain d) (:types a b a) (:types c))")
    assert sorted(codes(r)) == ["duplicate-section", "duplicate-type"]


def test_missing_define():
    r = parse_domain("hello")
    assert codes(r) == ["missing-define"]


def test_ground_init():
    r = parse_problem("(define (problem p) (:domain d) (:init (at ?x b)))")
    assert codes(r) == ["ground-init"]


def test_problem_without_domain():
    r = parse_problem("(define (problem p) (:init))")
    assert codes(r) == ["malformed-construct"]


def test_fragment_mode_only_on_request():
    text = "(:types truck - vehicle)"
    assert analyze(text, allow_fragment=True).diagnostics == []
    assert parse_domain(text).diagnostics


def test_detect_kind():
    assert analyze("(define (problem p) (:domain d))").kind == "problem"
    assert analyze("(define (domain d))").kind == "domain"
    assert analyze("(:objects a b)", allow_fragment=True).kind == "problem"


def test_bytes_input():
    assert parse_domain(b"(define (domain d))").ok


def test_error_node_blocks_printing():
    from pddl_forge.errors import IncompleteAst
    r = parse_domain("(define (domain d) (:predicates ()))")
    with pytest.raises(IncompleteAst):
        print_domain(r.ast)


WELL_FORMED = """(define (domain d)
  (:types a b - c)
  (:predicates (p ?x - a) (q))
  (:action act :parameters (?x - a) :precondition (p ?x) :effect (and (q) (not (p ?x)))))
"""


@settings(max_examples=150)
@given(st.data())
def test_diagnostic_spans_are_sound(data):
    # damage a valid file; every diagnostic must lie inside the text
    text = WELL_FORMED
    for _ in range(data.draw(st.integers(1, 4))):
        i = data.draw(st.integers(0, len(text)))
        j = data.draw(st.integers(i, min(len(text), i + 6)))
        text = text[:i] + data.draw(st.sampled_from(["", "(", ")", "$", ":efect", "?", "-"])) + text[j:]
    a = analyze(text)
    size = len(text.encode())
    for d in a.diagnostics:
        assert 0 <= d.span.start_byte <= d.span.end_byte <= size
    assert a.diagnostics == sorted(a.diagnostics, key=lambda d: d.sort_key())


@settings(max_examples=100)
@given(st.integers(0, len(WELL_FORMED)))
def test_unrelated_damage_leaves_sections(i):
    # inserting one bad character never loses the predicates section entirely
    text = WELL_FORMED[:i] + "$" + WELL_FORMED[i:]
    a = analyze(text)
    assert any(d.code == "invalid-char" for d in a.diagnostics)
