import pytest
from hypothesis import HealthCheck, given, settings

from pddl_forge import ast
from pddl_forge.errors import IncompleteAst
from pddl_forge.lexer import SourceSpan
from pddl_forge.parser import parse_domain, parse_problem
from pddl_forge.printer import WIDTH, layout, print_domain, print_problem
from strategies import domains, problems

RICH = """(define (domain rich)
  (:requirements :typing :durative-actions :fluents :preferences :constraints)
  (:types truck plane - vehicle city)
  (:constants hub - city)
  (:predicates (at ?v - vehicle ?c - city) (ready ?v - (either truck plane)))
  (:functions (fuel ?v - vehicle) (total) - number)
  (:constraints (always (ready hub)))
  (:derived (near ?a ?b - city) (or (at ?a ?b) (exists (?c - city) (at ?a ?c))))
  (:action go :parameters (?v - vehicle ?a ?b - city)
    :precondition (and (at ?v ?a) (preference p (ready ?v)) (>= (fuel ?v) 1))
    :effect (and (not (at ?v ?a)) (at ?v ?b) (decrease (fuel ?v) 1)
                 (when (ready ?v) (increase (total) (* 2 (fuel ?v))))))
  (:durative-action fly :parameters (?p - plane)
    :duration (and (>= ?duration 1) (<= ?duration (fuel ?p)))
    :condition (over all (ready ?p))
    :effect (at end (assign (fuel ?p) 0))))
"""


def test_rich_domain_round_trip_and_fixed_point():
    d = parse_domain(RICH)
    assert d.ok
    text = print_domain(d.ast)
    again = parse_domain(text)
    assert again.ok and again.ast == d.ast
    assert print_domain(again.ast) == text


def test_problem_printing():
    src = """(define (problem p1) (:domain rich) (:objects t1 t2 - truck c1)
      (:init (at t1 c1) (= (fuel t1) 3.5) (at 10 (not (ready t1))))
      (:goal (forall (?t - truck) (at ?t c1)))
      (:metric minimize (+ (total) 1)))"""
    p = parse_problem(src)
    text = print_problem(p.ast)
    assert "(:domain rich)" in text and "(:metric minimize (+ (total) 1))" in text
    assert parse_problem(text).ast == p.ast


def test_minimal_outputs():
    assert print_domain(ast.Domain("d")) == "(define (domain d)\n)\n"
    assert print_problem(ast.Problem("p", "d")) == "(define (problem p)\n  (:domain d)\n  (:init)\n)\n"


def test_object_type_omitted_only_at_end():
    d = ast.Domain("d", constants=(ast.TypedList(("a",)), ast.TypedList(("b",), "t"),
                                   ast.TypedList(("c",))))
    text = print_domain(d)
    assert "(:constants a - object b - t c)" in text
    assert parse_domain(text).ast == d


def test_long_forms_wrap():
    form = [":goal", ["and", *([f"predicate-{i}", "?x"] for i in range(10))]]
    text = layout(form)
    assert len(text.splitlines()) > 1
    assert max(len(line) for line in text.splitlines()) <= WIDTH


def test_error_nodes_refused():
    bad = ast.ErrorNode(SourceSpan(3, 4, 1, 4, 1, 5))
    with pytest.raises(IncompleteAst):
        print_domain(ast.Domain("d", predicates=(bad,)))
    with pytest.raises(IncompleteAst):
        print_problem(ast.Problem("p", bad))


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(domains)
def test_domain_round_trip(d):
    text = print_domain(d)
    r = parse_domain(text)
    assert r.diagnostics == ()
    assert r.ast == d
    assert print_domain(r.ast) == text


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(problems)
def test_problem_round_trip(p):
    text = print_problem(p)
    r = parse_problem(text)
    assert r.diagnostics == ()
    assert r.ast == p
