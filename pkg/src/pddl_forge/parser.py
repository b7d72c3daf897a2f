"""Error-tolerant PDDL 3.1 parser.

Parsing happens in two stages. The token stream is first folded into a tree
of parenthesized lists, tolerating stray or missing brackets. The tree is then
interpreted into :mod:`pddl_forge.ast` nodes. A malformed element is reported
once, for the smallest bracketed region that contains it, and replaced by an
:class:`~pddl_forge.ast.ErrorNode`; parsing carries on with its siblings.

While interpreting, the parser records a highlighting scope for every name
and keyword it accepts. :mod:`pddl_forge.scopes` turns that record into the
public classification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from . import ast
from .diagnostics import ERROR, Diagnostic, closest
from .lexer import Kind, SourceSpan, Token, eof_span, tokenize

DOMAIN_SECTIONS = (
    ":requirements", ":types", ":constants", ":predicates", ":functions",
    ":action", ":durative-action", ":derived", ":constraints",
)
PROBLEM_SECTIONS = (
    ":domain", ":requirements", ":objects", ":init", ":goal", ":constraints", ":metric",
)
ACTION_KEYS = (":parameters", ":precondition", ":effect")
DURATIVE_KEYS = (":parameters", ":duration", ":condition", ":effect")
ALL_KEYWORDS = frozenset(DOMAIN_SECTIONS + PROBLEM_SECTIONS + ACTION_KEYS + DURATIVE_KEYS)
TOPLEVEL_KEYWORDS = frozenset(DOMAIN_SECTIONS + PROBLEM_SECTIONS)

COMPARISONS = ("=", "<", ">", "<=", ">=")
ARITHMETIC = ("+", "-", "*", "/")
ASSIGN_OPS = ("assign", "increase", "decrease", "scale-up", "scale-down")
# op -> (number of numeric arguments, number of goal arguments)
MODAL_OPS = {
    "always": (0, 1),
    "sometime": (0, 1),
    "within": (1, 1),
    "at-most-once": (0, 1),
    "sometime-after": (0, 2),
    "sometime-before": (0, 2),
    "always-within": (1, 2),
    "hold-during": (2, 1),
    "hold-after": (1, 1),
}

# scope labels recorded during parsing
DEF = "definition-keyword"
SECTION = "section-keyword"
REQUIREMENT = "requirement-flag"
TYPE = "type-name"
VAR = "variable"
PREDICATE = "predicate-name"
FUNCTION = "function-name"
ACTION = "action-name"


# -- stage 1: bracket tree ---------------------------------------------------

@dataclass
class SAtom:
    token: Token

    @property
    def span(self) -> SourceSpan:
        return self.token.span

    @property
    def kind(self) -> Kind:
        return self.token.kind

    @property
    def text(self) -> str:
        return self.token.text


@dataclass
class SList:
    open: Token
    items: list = field(default_factory=list)
    close: Optional[Token] = None

    @property
    def span(self) -> SourceSpan:
        if self.close is not None:
            return self.open.span.cover(self.close.span)
        last = self
        while isinstance(last, SList) and last.items:
            last = last.items[-1]
            if isinstance(last, SList) and last.close is not None:
                return self.open.span.cover(last.span)
        end = last.open.span if isinstance(last, SList) else last.span
        return self.open.span.cover(end)


SNode = Union[SAtom, SList]


def _keyword_at(tokens, i):
    """Lower-cased KEYWORD text of the next significant token after index ``i``."""
    for tok in tokens[i + 1:]:
        if tok.trivia or tok.kind is Kind.INVALID_CHAR:
            continue
        return tok.text.lower() if tok.kind is Kind.KEYWORD else None
    return None


def build_tree(tokens: list[Token], report) -> list[SNode]:
    """Fold tokens into nested lists.

    A ``(`` that opens a top-level section keyword while more than one list
    is open means an earlier list was never closed; the open lists are closed
    at that point so the new section still parses as a sibling.
    """
    root = SList(open=None)  # type: ignore[arg-type]
    stack = [root]
    for i, tok in enumerate(tokens):
        if tok.trivia:
            continue
        if tok.kind is Kind.INVALID_CHAR:
            report(tok.span, "invalid-char", f"invalid character {tok.text!r}")
        elif tok.kind is Kind.LPAREN:
            if len(stack) > 2 and _keyword_at(tokens, i) in TOPLEVEL_KEYWORDS:
                unclosed = stack[2]
                report(unclosed.span, "unbalanced-paren",
                       "missing ')' before the next section")
                del stack[2:]
            lst = SList(open=tok)
            stack[-1].items.append(lst)
            stack.append(lst)
        elif tok.kind is Kind.RPAREN:
            if len(stack) == 1:
                report(tok.span, "unbalanced-paren", "')' without a matching '('")
            else:
                stack.pop().close = tok
        else:
            stack[-1].items.append(SAtom(tok))
    if len(stack) > 1:
        report(stack[1].open.span.cover(eof_span(tokens)), "unbalanced-paren",
               "'(' is never closed")
    return root.items


# -- stage 2: interpretation ------------------------------------------------

class Bad(Exception):
    """A malformed region; caught at the nearest recovery point."""

    def __init__(self, where, code, message):
        super().__init__(message)
        self.span = where if isinstance(where, SourceSpan) else where.span
        self.code = code
        self.message = message


@dataclass
class Analysis:
    tokens: list
    ast: object
    diagnostics: list
    scopes: dict  # token start_byte -> scope label
    kind: str


def _word(node) -> Optional[str]:
    if isinstance(node, SAtom) and node.kind in (Kind.NAME, Kind.DASH):
        return node.text.lower()
    return None


def _keyword(node) -> Optional[str]:
    if isinstance(node, SAtom) and node.kind is Kind.KEYWORD:
        return node.text.lower()
    return None


def _head(node) -> Optional[str]:
    if isinstance(node, SList) and node.items:
        return _word(node.items[0])
    return None


def _describe(node) -> str:
    if isinstance(node, SAtom):
        return repr(node.text)
    return "(" + (_word(node.items[0]) or "...") + " ...)" if node.items else "()"


class Interpreter:
    def __init__(self, tokens):
        self.tokens = tokens
        self.diagnostics: list[Diagnostic] = []
        self.scopes: dict[int, str] = {}

    # bookkeeping

    def report(self, span, code, message):
        self.diagnostics.append(Diagnostic(span, ERROR, code, message))

    def mark(self, node, scope):
        if isinstance(node, SAtom):
            self.scopes[node.span.start_byte] = scope

    def recover(self, fn, node, *args):
        try:
            return fn(node, *args)
        except Bad as e:
            self.report(e.span, e.code, e.message)
            return ast.ErrorNode(e.span, e.code)

    # small shapes

    def expect_list(self, node, what) -> SList:
        if not isinstance(node, SList):
            raise Bad(node, "unexpected-element", f"expected {what}, found {_describe(node)}")
        return node

    def name(self, node, scope, what="a name") -> str:
        if isinstance(node, SAtom) and node.kind is Kind.NAME and node.text[0].isalpha():
            self.mark(node, scope)
            return node.text
        raise Bad(node, "unexpected-element", f"expected {what}, found {_describe(node)}")

    def term(self, node, allow_vars=True):
        if isinstance(node, SAtom):
            if node.kind is Kind.VARIABLE and allow_vars:
                return ast.Variable(node.text)
            if node.kind is Kind.VARIABLE:
                raise Bad(node, "ground-init", f"variable {node.text} where a ground term is required")
            if node.kind is Kind.NAME and node.text[0].isalpha():
                self.mark(node, VAR)
                return ast.Name(node.text)
        raise Bad(node, "unexpected-element", f"expected a term, found {_describe(node)}")

    def number(self, node):
        if isinstance(node, SAtom) and node.kind is Kind.NUMBER:
            return ast.Number(node.text)
        raise Bad(node, "unexpected-element", f"expected a number, found {_describe(node)}")

    def arity(self, node: SList, n, what):
        if len(node.items) != n + 1:
            raise Bad(node, "malformed-construct",
                      f"{what} takes {n} argument{'s' if n != 1 else ''}, got {len(node.items) - 1}")

    # typed lists

    def type_ref(self, node):
        if isinstance(node, SList):
            if _head(node) == "either" and len(node.items) > 1:
                self.mark(node.items[0], DEF)
                return ast.Either(tuple(self.name(n, TYPE, "a type name") for n in node.items[1:]))
            raise Bad(node, "malformed-construct", "expected a type name or (either t1 ... tn)")
        return self.name(node, TYPE, "a type name")

    def typed_list(self, nodes, variables, item_scope):
        """``a b - t c`` style list; bad items are reported and skipped.

        A ``- type`` that only follows rejected items belongs to them and is
        skipped without a second report.
        """
        out = []
        pending = []
        orphaned = False
        i = 0
        while i < len(nodes):
            n = nodes[i]
            if isinstance(n, SAtom) and n.kind is Kind.DASH:
                if i + 1 >= len(nodes):
                    self.report(n.span, "malformed-construct", "'-' is not followed by a type")
                    out.append(ast.ErrorNode(n.span))
                    pending = []
                    i += 1
                    continue
                if not pending and not orphaned:
                    self.report(n.span, "unexpected-element", "'-' without preceding items")
                    out.append(ast.ErrorNode(n.span))
                    i += 1
                    continue
                self.mark(n, "punctuation")
                parent = self.recover(self.type_ref, nodes[i + 1])
                if isinstance(parent, ast.ErrorNode):
                    out.append(parent)
                elif pending:
                    out.append(ast.TypedList(tuple(pending), parent))
                pending = []
                orphaned = False
                i += 2
                continue
            ok = isinstance(n, SAtom) and (
                n.kind is Kind.VARIABLE if variables
                else n.kind is Kind.NAME and n.text[0].isalpha())
            if ok:
                self.mark(n, item_scope)
                pending.append(n.text)
            else:
                what = "a variable" if variables else "a name"
                self.report(n.span, "unexpected-element", f"expected {what}, found {_describe(n)}")
                out.append(ast.ErrorNode(n.span))
                orphaned = True
            i += 1
        if pending:
            out.append(ast.TypedList(tuple(pending)))
        return tuple(out)

    def parameters(self, node):
        node = self.expect_list(node, "a parameter list")
        return self.typed_list(node.items, True, VAR)

    def quantifier_params(self, node):
        node = self.expect_list(node, "a variable list")
        return self.typed_list(node.items, True, VAR)

    # goals

    def goal(self, node, prefs=False):
        node = self.expect_list(node, "a condition")
        if not node.items:
            return ast.And(())
        head = _word(node.items[0])
        first = node.items[0]
        args = node.items[1:]
        if head == "and":
            self.mark(first, DEF)
            return ast.And(tuple(self.recover(self.goal, a, prefs) for a in args))
        if head == "or":
            self.mark(first, DEF)
            return ast.Or(tuple(self.recover(self.goal, a) for a in args))
        if head == "not":
            self.mark(first, DEF)
            self.arity(node, 1, "not")
            return ast.Not(self.goal(args[0]))
        if head == "imply":
            self.mark(first, DEF)
            self.arity(node, 2, "imply")
            return ast.Imply(self.goal(args[0]), self.goal(args[1]))
        if head in ("exists", "forall"):
            self.mark(first, DEF)
            self.arity(node, 2, head)
            params = self.quantifier_params(args[0])
            body = self.goal(args[1], prefs and head == "forall")
            cls = ast.Exists if head == "exists" else ast.Forall
            return cls(params, body)
        if head == "preference" and prefs:
            return self.preference(node, self.goal)
        if head in COMPARISONS:
            self.mark(first, DEF)
            self.arity(node, 2, head)
            if head == "=" and all(isinstance(a, SAtom) and a.kind in (Kind.NAME, Kind.VARIABLE)
                                   for a in args):
                return ast.Atom(first.text, tuple(self.term(a) for a in args))
            return ast.Comparison(head, self.fexp(args[0]), self.fexp(args[1]))
        return self.atom(node)

    def atom(self, node, ground=False):
        node = self.expect_list(node, "an atomic formula")
        if not node.items:
            raise Bad(node, "malformed-construct", "empty atomic formula")
        first = node.items[0]
        if _word(first) == "=" and len(node.items) == 3:
            self.mark(first, DEF)
            return ast.Atom(first.text, tuple(self.term(a, not ground) for a in node.items[1:]))
        pred = self.name(first, PREDICATE, "a predicate name")
        try:
            args = tuple(self.term(a, not ground) for a in node.items[1:])
        except Bad as e:
            if e.code == "ground-init":
                raise
            raise Bad(node, "malformed-construct",
                      f"arguments of ({pred} ...) must be names or variables") from None
        return ast.Atom(pred, args)

    def literal(self, node, ground=False):
        if _head(node) == "not":
            self.mark(node.items[0], DEF)
            self.arity(node, 1, "not")
            return ast.Not(self.atom(node.items[1], ground))
        return self.atom(node, ground)

    def preference(self, node, body_fn):
        self.mark(node.items[0], DEF)
        args = node.items[1:]
        pname = None
        if len(args) == 2:
            pname = self.name(args[0], PREDICATE, "a preference name")
            args = args[1:]
        if len(args) != 1:
            raise Bad(node, "malformed-construct", "preference takes an optional name and one condition")
        return ast.Preference(pname, body_fn(args[0]))

    # numeric expressions

    def fexp(self, node):
        if isinstance(node, SAtom):
            if node.kind is Kind.NUMBER:
                return ast.Number(node.text)
            if node.kind is Kind.VARIABLE:
                return ast.Variable(node.text)
            if node.kind is Kind.NAME and node.text[0].isalpha():
                self.mark(node, FUNCTION)
                return ast.Name(node.text)
            raise Bad(node, "unexpected-element", f"expected a numeric expression, found {_describe(node)}")
        if not node.items:
            raise Bad(node, "malformed-construct", "empty numeric expression")
        head = _word(node.items[0])
        args = node.items[1:]
        if head in ARITHMETIC:
            self.mark(node.items[0], DEF)
            if head == "-" and len(args) not in (1, 2) or head == "/" and len(args) != 2 \
                    or head in ("+", "*") and len(args) < 2:
                raise Bad(node, "malformed-construct", f"wrong number of operands for {head}")
            return ast.BinaryOp(head, tuple(self.fexp(a) for a in args))
        return self.function_term(node)

    def function_term(self, node):
        if isinstance(node, SAtom):
            return ast.FunctionTerm(self.name(node, FUNCTION, "a function name"))
        node = self.expect_list(node, "a function term")
        if not node.items:
            raise Bad(node, "malformed-construct", "empty function term")
        fname = self.name(node.items[0], FUNCTION, "a function name")
        try:
            args = tuple(self.term(a) for a in node.items[1:])
        except Bad:
            raise Bad(node, "malformed-construct",
                      f"arguments of ({fname} ...) must be names or variables") from None
        return ast.FunctionTerm(fname, args)

    # effects

    def effect(self, node):
        node = self.expect_list(node, "an effect")
        if not node.items:
            return ast.And(())
        first = node.items[0]
        head = _word(first)
        args = node.items[1:]
        if head == "and":
            self.mark(first, DEF)
            return ast.And(tuple(self.recover(self.effect, a) for a in args))
        if head == "not":
            return self.literal(node)
        if head == "forall":
            self.mark(first, DEF)
            self.arity(node, 2, "forall")
            return ast.Forall(self.quantifier_params(args[0]), self.effect(args[1]))
        if head == "when":
            self.mark(first, DEF)
            self.arity(node, 2, "when")
            return ast.When(self.goal(args[0]), self.effect(args[1]))
        if head in ASSIGN_OPS:
            return self.assign(node)
        return self.atom(node)

    def assign(self, node):
        self.mark(node.items[0], DEF)
        self.arity(node, 2, _word(node.items[0]))
        return ast.Assign(_word(node.items[0]), self.function_term(node.items[1]),
                          self.fexp(node.items[2]))

    # durative pieces

    def timed(self, node, body_fn, whens=("at start", "at end", "over all")):
        """``(at start X)`` / ``(at end X)`` / ``(over all X)``, else None."""
        if not isinstance(node, SList) or len(node.items) != 3:
            return None
        w1, w2 = _word(node.items[0]), _word(node.items[1])
        when = f"{w1} {w2}"
        if when not in whens or not isinstance(node.items[2], SList):
            return None
        self.mark(node.items[0], DEF)
        self.mark(node.items[1], DEF)
        return ast.Timed(when, body_fn(node.items[2]))

    def duration(self, node):
        node = self.expect_list(node, "a duration constraint")
        if not node.items:
            return ast.And(())
        head = _word(node.items[0])
        if head == "and":
            self.mark(node.items[0], DEF)
            return ast.And(tuple(self.recover(self.duration, a) for a in node.items[1:]))
        t = self.timed(node, self.simple_duration, ("at start", "at end"))
        if t is not None:
            return t
        return self.simple_duration(node)

    def simple_duration(self, node):
        node = self.expect_list(node, "a duration constraint")
        head = _word(node.items[0]) if node.items else None
        if head not in COMPARISONS:
            raise Bad(node, "malformed-construct", "expected (= ?duration ...), (<= ...) or (>= ...)")
        self.mark(node.items[0], DEF)
        self.arity(node, 2, head)
        lhs = node.items[1]
        if not (isinstance(lhs, SAtom) and lhs.kind is Kind.VARIABLE
                and lhs.text.lower() == "?duration"):
            raise Bad(node, "malformed-construct", "duration constraints compare ?duration")
        return ast.Comparison(head, ast.Variable(lhs.text), self.fexp(node.items[2]))

    def da_goal(self, node):
        node = self.expect_list(node, "a durative condition")
        if not node.items:
            return ast.And(())
        head = _word(node.items[0])
        if head == "and":
            self.mark(node.items[0], DEF)
            return ast.And(tuple(self.recover(self.da_goal, a) for a in node.items[1:]))
        if head == "forall":
            self.mark(node.items[0], DEF)
            self.arity(node, 2, "forall")
            return ast.Forall(self.quantifier_params(node.items[1]), self.da_goal(node.items[2]))
        if head == "preference":
            return self.preference(node, self.timed_goal)
        return self.timed_goal(node)

    def timed_goal(self, node):
        t = self.timed(node, self.goal)
        if t is None:
            raise Bad(node, "malformed-construct",
                      "durative conditions need (at start ...), (at end ...) or (over all ...)")
        return t

    def da_effect(self, node):
        node = self.expect_list(node, "a durative effect")
        if not node.items:
            return ast.And(())
        head = _word(node.items[0])
        args = node.items[1:]
        if head == "and":
            self.mark(node.items[0], DEF)
            return ast.And(tuple(self.recover(self.da_effect, a) for a in args))
        if head == "forall":
            self.mark(node.items[0], DEF)
            self.arity(node, 2, "forall")
            return ast.Forall(self.quantifier_params(args[0]), self.da_effect(args[1]))
        if head == "when":
            self.mark(node.items[0], DEF)
            self.arity(node, 2, "when")
            return ast.When(self.da_goal(args[0]), self.da_effect(args[1]))
        t = self.timed(node, self.effect, ("at start", "at end"))
        if t is None:
            raise Bad(node, "malformed-construct",
                      "durative effects need (at start ...) or (at end ...)")
        return t

    # trajectory constraints

    def constraint(self, node, prefs=False):
        node = self.expect_list(node, "a constraint")
        if not node.items:
            return ast.And(())
        first = node.items[0]
        head = _word(first)
        args = node.items[1:]
        if head == "and":
            self.mark(first, DEF)
            return ast.And(tuple(self.recover(self.constraint, a, prefs) for a in args))
        if head == "forall":
            self.mark(first, DEF)
            self.arity(node, 2, "forall")
            return ast.Forall(self.quantifier_params(args[0]), self.constraint(args[1], prefs))
        if head == "preference" and prefs:
            return self.preference(node, self.constraint)
        t = self.timed(node, self.goal, ("at end",))
        if t is not None:
            return t
        if head in MODAL_OPS:
            self.mark(first, DEF)
            n_num, n_goal = MODAL_OPS[head]
            self.arity(node, n_num + n_goal, head)
            numbers = tuple(self.number(a) for a in args[:n_num])
            goals = tuple(self.goal(a) for a in args[n_num:])
            return ast.Modal(head, numbers, goals)
        raise Bad(node, "malformed-construct", f"{_describe(node)} is not a trajectory constraint")

    # sections shared by both file kinds

    def requirements(self, node):
        flags = []
        for item in node.items[1:]:
            if _keyword(item):
                self.mark(item, REQUIREMENT)
                flags.append(item.text)
            else:
                self.report(item.span, "unexpected-element",
                            f"expected a requirement flag, found {_describe(item)}")
                flags.append(ast.ErrorNode(item.span))
        return tuple(flags)

    def keyed_body(self, node, keys, start):
        """Parse ``:key value`` pairs of an action-like construct."""
        found = {}
        items = node.items
        i = start
        while i < len(items):
            item = items[i]
            key = _keyword(item)
            has_value = i + 1 < len(items) and _keyword(items[i + 1]) is None
            end = items[i + 1] if has_value else item
            if key is None:
                self.report(item.span, "unexpected-element",
                            f"expected one of {', '.join(keys)}, found {_describe(item)}")
                i += 1
                continue
            if key not in keys:
                hint = closest(key, keys)
                self.report(item.span.cover(end.span), "unknown-keyword",
                            f"unknown keyword {item.text}"
                            + (f"; did you mean {hint}?" if hint else ""))
            elif not has_value:
                self.report(item.span, "malformed-construct", f"{item.text} needs a value")
                self.mark(item, SECTION)
                found[key] = (item, None)
            elif key in found:
                self.report(item.span.cover(end.span), "duplicate-section",
                            f"{item.text} appears twice")
            else:
                self.mark(item, SECTION)
                found[key] = (item, items[i + 1])
            i += 2 if has_value else 1
        return found

    def keyed_value(self, found, key, fn, default=None):
        if key not in found:
            return default
        _, value = found[key]
        if value is None:
            return ast.ErrorNode(found[key][0].span)
        return self.recover(fn, value)


class DomainInterpreter(Interpreter):
    singletons = (":requirements", ":types", ":constants", ":predicates",
                  ":functions", ":constraints")

    def run(self, tree, fragment=False) -> ast.Domain:
        fields = dict(requirements=(), types=(), constants=(), predicates=(), functions=(),
                      actions=[], durative_actions=[], derived_predicates=[], constraints=None)
        if fragment:
            name, sections = ast.ErrorNode(eof_span(self.tokens), "fragment"), tree
        else:
            define = find_define(self, tree, "domain")
            if define is None:
                return ast.Domain(name=ast.ErrorNode(eof_span(self.tokens)), **_freeze(fields))
            name, sections = header(self, define, "domain"), define.items[2:]
        seen = set()
        handlers = {
            ":requirements": ("requirements", self.requirements),
            ":types": ("types", self.types),
            ":constants": ("constants", lambda n: self.typed_list(n.items[1:], False, VAR)),
            ":predicates": ("predicates", self.predicates),
            ":functions": ("functions", self.functions),
            ":action": ("actions", self.action),
            ":durative-action": ("durative_actions", self.durative_action),
            ":derived": ("derived_predicates", self.derived),
            ":constraints": ("constraints", self.constraints_section),
        }
        for section in sections:
            key = section_keyword(self, section, DOMAIN_SECTIONS, "domain")
            if key is None:
                continue
            if key in self.singletons and key in seen:
                self.report(section.span, "duplicate-section", f"{key} appears more than once")
                continue
            seen.add(key)
            slot, fn = handlers[key]
            result = self.recover(fn, section)
            if isinstance(fields[slot], list):
                fields[slot].append(result)
            elif isinstance(result, ast.ErrorNode) and slot != "constraints":
                fields[slot] = (result,)
            else:
                fields[slot] = result
        return ast.Domain(name=name, **_freeze(fields))

    def types(self, node):
        entries = self.typed_list(node.items[1:], False, TYPE)
        seen = set()
        items = node.items[1:]
        i = 0
        while i < len(items):
            it = items[i]
            if isinstance(it, SAtom) and it.kind is Kind.DASH:
                i += 2  # skip the parent type
                continue
            if isinstance(it, SAtom) and it.kind is Kind.NAME:
                key = it.text.lower()
                if key in seen:
                    self.report(it.span, "duplicate-type", f"type {it.text} is declared twice")
                    entries += (ast.ErrorNode(it.span, "duplicate-type"),)
                seen.add(key)
            i += 1
        return entries

    def predicates(self, node):
        return tuple(self.recover(self.predicate_decl, item) for item in node.items[1:])

    def predicate_decl(self, node, scope=PREDICATE):
        node = self.expect_list(node, "a predicate declaration")
        if not node.items:
            raise Bad(node, "malformed-construct", "empty predicate declaration")
        pname = self.name(node.items[0], scope, "a predicate name")
        params = self.typed_list(node.items[1:], True, VAR)
        return ast.PredicateDecl(pname, params)

    def functions(self, node):
        out = []
        pending = []
        items = node.items[1:]
        i = 0
        while i < len(items):
            item = items[i]
            if isinstance(item, SAtom) and item.kind is Kind.DASH:
                if not pending or i + 1 >= len(items):
                    self.report(item.span, "malformed-construct", "'-' must follow functions and precede a type")
                    out.append(ast.ErrorNode(item.span))
                    pending = []
                    i += 1
                    continue
                self.mark(item, "punctuation")
                rtype = self.recover(self.name, items[i + 1], TYPE, "a function type")
                if isinstance(rtype, ast.ErrorNode):
                    out.append(rtype)
                else:
                    out.extend(ast.FunctionDecl(p.name, p.parameters, rtype) for p in pending)
                pending = []
                i += 2
                continue
            decl = self.recover(self.predicate_decl, item, FUNCTION)
            if isinstance(decl, ast.ErrorNode):
                out.append(decl)
            else:
                pending.append(decl)
            i += 1
        out.extend(ast.FunctionDecl(p.name, p.parameters) for p in pending)
        return tuple(out)

    def action(self, node):
        if len(node.items) < 2:
            raise Bad(node, "malformed-construct", "action needs a name")
        aname = self.name(node.items[1], ACTION, "an action name")
        found = self.keyed_body(node, ACTION_KEYS, 2)
        params = self.keyed_value(found, ":parameters", self.parameters, ())
        if isinstance(params, ast.ErrorNode):
            params = (params,)
        return ast.Action(
            aname, params,
            self.keyed_value(found, ":precondition", lambda n: self.goal(n, True)),
            self.keyed_value(found, ":effect", self.effect),
        )

    def durative_action(self, node):
        if len(node.items) < 2:
            raise Bad(node, "malformed-construct", "durative action needs a name")
        aname = self.name(node.items[1], ACTION, "an action name")
        found = self.keyed_body(node, DURATIVE_KEYS, 2)
        params = self.keyed_value(found, ":parameters", self.parameters, ())
        if isinstance(params, ast.ErrorNode):
            params = (params,)
        if ":duration" not in found:
            raise Bad(node, "malformed-construct", f"durative action {aname} has no :duration")
        return ast.DurativeAction(
            aname, params,
            self.keyed_value(found, ":duration", self.duration),
            self.keyed_value(found, ":condition", self.da_goal),
            self.keyed_value(found, ":effect", self.da_effect),
        )

    def derived(self, node):
        self.arity(node, 2, ":derived")
        head = self.predicate_decl(node.items[1])
        return ast.DerivedPredicate(head, self.goal(node.items[2]))

    def constraints_section(self, node):
        self.arity(node, 1, ":constraints")
        return self.constraint(node.items[1], True)


class ProblemInterpreter(Interpreter):
    def run(self, tree, fragment=False) -> ast.Problem:
        fields = dict(domain_name=None, requirements=(), objects=(), init=(), goal=None,
                      constraints=None, metric=None)
        if fragment:
            name, sections, define = ast.ErrorNode(eof_span(self.tokens), "fragment"), tree, None
        else:
            define = find_define(self, tree, "problem")
            if define is None:
                fields["domain_name"] = ast.ErrorNode(eof_span(self.tokens))
                return ast.Problem(name=ast.ErrorNode(eof_span(self.tokens)), **fields)
            name, sections = header(self, define, "problem"), define.items[2:]
        handlers = {
            ":domain": ("domain_name", self.domain_ref),
            ":requirements": ("requirements", self.requirements),
            ":objects": ("objects", lambda n: self.typed_list(n.items[1:], False, VAR)),
            ":init": ("init", self.init),
            ":goal": ("goal", lambda n: self.single(n, lambda g: self.goal(g, True))),
            ":constraints": ("constraints", lambda n: self.single(n, lambda c: self.constraint(c, True))),
            ":metric": ("metric", self.metric),
        }
        seen = set()
        for section in sections:
            key = section_keyword(self, section, PROBLEM_SECTIONS, "problem")
            if key is None:
                continue
            if key in seen:
                self.report(section.span, "duplicate-section", f"{key} appears more than once")
                continue
            seen.add(key)
            slot, fn = handlers[key]
            result = self.recover(fn, section)
            if isinstance(result, ast.ErrorNode) and slot in ("requirements", "objects", "init"):
                result = (result,)
            fields[slot] = result
        if fields["domain_name"] is None and fragment:
            fields["domain_name"] = ast.ErrorNode(eof_span(self.tokens), "fragment")
        elif fields["domain_name"] is None:
            self.report(define.items[1].span if len(define.items) > 1 else define.span,
                        "malformed-construct", "problem does not name its domain with (:domain ...)")
            fields["domain_name"] = ast.ErrorNode(define.span)
        return ast.Problem(name=name, **fields)

    def single(self, node, fn):
        self.arity(node, 1, node.items[0].text)
        return fn(node.items[1])

    def domain_ref(self, node):
        self.arity(node, 1, ":domain")
        self.mark(node.items[0], DEF)
        return self.name(node.items[1], DEF, "a domain name")

    def init(self, node):
        return tuple(self.recover(self.init_element, item) for item in node.items[1:])

    def init_element(self, node):
        node = self.expect_list(node, "an initial fact")
        head = _head(node)
        items = node.items
        if head == "=" and len(items) == 3 and isinstance(items[1], SList):
            self.mark(items[0], DEF)
            fluent = self.function_term(items[1])
            if ast.Variable in {type(a) for a in fluent.args}:
                raise Bad(node, "ground-init", "fluent arguments in :init must be ground")
            value = items[2]
            if isinstance(value, SAtom) and value.kind is Kind.NUMBER:
                return ast.FluentAssignment(fluent, ast.Number(value.text))
            return ast.FluentAssignment(fluent, self.term(value, False))
        if head == "at" and len(items) == 3 and isinstance(items[1], SAtom) \
                and items[1].kind is Kind.NUMBER and isinstance(items[2], SList):
            self.mark(items[0], DEF)
            return ast.TimedLiteral(ast.Number(items[1].text), self.literal(items[2], True))
        return self.literal(node, True)

    def metric(self, node):
        self.arity(node, 2, ":metric")
        direction = _word(node.items[1])
        if direction not in ("minimize", "maximize"):
            raise Bad(node.items[1], "unexpected-element", "expected minimize or maximize")
        self.mark(node.items[1], DEF)
        return ast.Metric(node.items[1].text.lower(), self.fexp(node.items[2]))


# -- file structure helpers ----------------------------------------------------

def find_define(interp, tree, kind):
    define = None
    if not any(isinstance(n, SList) for n in tree):
        span = eof_span(interp.tokens)
        if interp.tokens:
            span = interp.tokens[0].span.cover(span)
        interp.report(span, "missing-define", f"no (define ({kind} ...)) form found")
        return None
    for node in tree:
        if define is None and _head(node) == "define":
            define = node
            interp.mark(node.items[0], DEF)
        else:
            interp.report(node.span, "unexpected-element",
                          "only a single (define ...) form may appear at top level")
    return define


def header(interp, define, kind):
    if len(define.items) < 2:
        interp.report(define.span, "malformed-construct", f"(define ...) needs a ({kind} <name>) header")
        return ast.ErrorNode(define.span)
    head = define.items[1]
    if not (isinstance(head, SList) and len(head.items) == 2 and _word(head.items[0]) == kind):
        interp.report(head.span, "malformed-construct", f"expected ({kind} <name>)")
        return ast.ErrorNode(head.span)
    interp.mark(head.items[0], DEF)
    return interp.recover(interp.name, head.items[1], DEF, f"a {kind} name")


def section_keyword(interp, section, allowed, kind):
    if not isinstance(section, SList) or not section.items:
        interp.report(section.span, "unexpected-element",
                      f"expected a {kind} section, found {_describe(section)}")
        return None
    first = section.items[0]
    key = _keyword(first)
    if key is None:
        interp.report(section.span, "unexpected-element",
                      f"expected a {kind} section keyword, found {_describe(first)}")
        return None
    if key not in allowed:
        hint = closest(key, allowed)
        interp.report(section.span, "unknown-keyword",
                      f"unknown {kind} section {first.text}"
                      + (f"; did you mean {hint}?" if hint else ""))
        return None
    interp.mark(first, SECTION)
    return key


def _freeze(fields):
    return {k: tuple(v) if isinstance(v, list) else v for k, v in fields.items()}


def _sorted_unique(diags):
    return sorted(set(diags), key=Diagnostic.sort_key)


_PROBLEM_ONLY = frozenset(PROBLEM_SECTIONS) - frozenset(DOMAIN_SECTIONS)


def is_fragment(tree) -> bool:
    """True for a bare run of sections such as ``(:types a - b)`` without a define."""
    return bool(tree) and all(isinstance(n, SList) and n.items and _keyword(n.items[0])
                              for n in tree)


def detect_kind(tree) -> str:
    for node in tree:
        if _head(node) == "define" and len(node.items) > 1 and _head(node.items[1]) == "problem":
            return "problem"
    if is_fragment(tree) and any(_keyword(n.items[0]) in _PROBLEM_ONLY for n in tree):
        return "problem"
    return "domain"


def analyze(text, kind=None, allow_fragment=False) -> Analysis:
    """Run lexer, tree builder and interpreter; ``kind`` is guessed when None.

    With ``allow_fragment`` a file holding only sections, without the
    surrounding ``(define ...)``, is accepted as-is.
    """
    tokens = tokenize(text)
    early = []
    tree = build_tree(tokens, lambda span, code, msg: early.append(Diagnostic(span, ERROR, code, msg)))
    kind = kind or detect_kind(tree)
    interp = (ProblemInterpreter if kind == "problem" else DomainInterpreter)(tokens)
    result = interp.run(tree, fragment=allow_fragment and is_fragment(tree))
    return Analysis(tokens, result, _sorted_unique(early + interp.diagnostics), interp.scopes, kind)


@dataclass(frozen=True)
class ParseResult:
    ast: object
    diagnostics: tuple

    @property
    def ok(self) -> bool:
        return not self.diagnostics


def parse_domain(text) -> ParseResult:
    a = analyze(text, "domain")
    return ParseResult(a.ast, tuple(a.diagnostics))


def parse_problem(text) -> ParseResult:
    a = analyze(text, "problem")
    return ParseResult(a.ast, tuple(a.diagnostics))
