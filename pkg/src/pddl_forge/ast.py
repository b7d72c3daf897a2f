"""Typed AST for PDDL 3.1 domains and problems.

Nodes are frozen dataclasses holding tuples, so they hash, compare
structurally and can be shared freely. Source positions are deliberately not
part of the nodes; only :class:`ErrorNode` remembers where it came from.
Identifiers keep the spelling used in the source.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Optional, Union

from .lexer import SourceSpan


@dataclass(frozen=True)
class ErrorNode:
    """Placeholder for a region that failed to parse."""

    span: SourceSpan
    code: str = "syntax-error"


# -- terms and expressions ---------------------------------------------------

@dataclass(frozen=True)
class Variable:
    name: str  # includes the leading '?'


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Number:
    text: str

    @property
    def value(self) -> float:
        return float(self.text)


Term = Union[Variable, Name]


@dataclass(frozen=True)
class FunctionTerm:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class BinaryOp:
    """Arithmetic ``+ - * /``; a single operand with ``-`` is negation."""

    op: str
    args: tuple


Expression = Union[Number, Variable, Name, FunctionTerm, BinaryOp]


# -- typed lists -------------------------------------------------------------

@dataclass(frozen=True)
class Either:
    types: tuple


@dataclass(frozen=True)
class TypedList:
    items: tuple
    parent_type: Union[str, Either] = "object"

    def __post_init__(self):
        if not self.items:
            raise ValueError("TypedList needs at least one item")


# -- goals, effects and constraints -----------------------------------------

@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple = ()


@dataclass(frozen=True)
class And:
    parts: tuple = ()


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Not:
    arg: object


@dataclass(frozen=True)
class Imply:
    antecedent: object
    consequent: object


@dataclass(frozen=True)
class Exists:
    parameters: tuple
    body: object


@dataclass(frozen=True)
class Forall:
    parameters: tuple
    body: object


@dataclass(frozen=True)
class Comparison:
    op: str  # one of = < > <= >=
    left: object
    right: object


@dataclass(frozen=True)
class Preference:
    name: Optional[str]
    body: object


@dataclass(frozen=True)
class Timed:
    """``(at start X)``, ``(at end X)`` or ``(over all X)``."""

    when: str
    body: object


@dataclass(frozen=True)
class Modal:
    """Trajectory constraint such as ``(always g)`` or ``(within 5 g)``."""

    op: str
    numbers: tuple
    args: tuple


@dataclass(frozen=True)
class When:
    condition: object
    effect: object


@dataclass(frozen=True)
class Assign:
    op: str  # assign increase decrease scale-up scale-down
    fluent: FunctionTerm
    value: object


# -- domain ------------------------------------------------------------------

@dataclass(frozen=True)
class PredicateDecl:
    name: str
    parameters: tuple = ()


@dataclass(frozen=True)
class FunctionDecl:
    name: str
    parameters: tuple = ()
    return_type: Optional[str] = None  # None means untyped (number)


@dataclass(frozen=True)
class Action:
    name: str
    parameters: tuple = ()
    precondition: object = None
    effect: object = None


@dataclass(frozen=True)
class DurativeAction:
    name: str
    parameters: tuple = ()
    duration: object = field(default_factory=And)
    condition: object = None
    effect: object = None


@dataclass(frozen=True)
class DerivedPredicate:
    head: PredicateDecl
    body: object


@dataclass(frozen=True)
class Domain:
    name: str
    requirements: tuple = ()
    types: tuple = ()
    constants: tuple = ()
    predicates: tuple = ()
    functions: tuple = ()
    actions: tuple = ()
    durative_actions: tuple = ()
    derived_predicates: tuple = ()
    constraints: object = None


# -- problem -----------------------------------------------------------------

@dataclass(frozen=True)
class FluentAssignment:
    """Initial value of a fluent: ``(= (f a b) 5)``."""

    fluent: FunctionTerm
    value: Union[Number, Name]


@dataclass(frozen=True)
class TimedLiteral:
    time: Number
    literal: object


@dataclass(frozen=True)
class Metric:
    direction: str  # minimize | maximize
    expression: object


@dataclass(frozen=True)
class Problem:
    name: str
    domain_name: str
    requirements: tuple = ()
    objects: tuple = ()
    init: tuple = ()
    goal: object = None
    constraints: object = None
    metric: Optional[Metric] = None


def walk(node):
    """Yield ``node`` and every AST node beneath it, depth first."""
    yield node
    if isinstance(node, tuple):
        for item in node:
            yield from walk(item)
    elif hasattr(node, "__dataclass_fields__") and not isinstance(node, ErrorNode):
        for f in fields(node):
            yield from walk(getattr(node, f.name))


def error_nodes(node) -> list:
    return [n for n in walk(node) if isinstance(n, ErrorNode)]
