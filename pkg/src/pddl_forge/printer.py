"""Canonical pretty-printing of domains and problems.

The printer converts AST nodes to nested Python lists of atoms and lays
them out with 2-space indentation, keeping a list on one line when it fits.
"""

from __future__ import annotations

from . import ast
from .errors import IncompleteAst

WIDTH = 80


def _typed(entries) -> list:
    out = []
    for i, tl in enumerate(entries):
        out.extend(tl.items)
        last = i == len(entries) - 1
        if tl.parent_type != "object" or not last:
            out.append("-")
            out.append(_type_ref(tl.parent_type))
    return out


def _type_ref(t):
    if isinstance(t, ast.Either):
        return ["either", *t.types]
    return t


def sx(node):
    """AST node -> nested list/str form."""
    if isinstance(node, (ast.Variable, ast.Name)):
        return node.name
    if isinstance(node, ast.Number):
        return node.text
    if isinstance(node, ast.FunctionTerm):
        return [node.name, *map(sx, node.args)]
    if isinstance(node, ast.BinaryOp):
        return [node.op, *map(sx, node.args)]
    if isinstance(node, ast.Atom):
        return [node.predicate, *map(sx, node.args)]
    if isinstance(node, ast.And):
        return ["and", *map(sx, node.parts)]
    if isinstance(node, ast.Or):
        return ["or", *map(sx, node.parts)]
    if isinstance(node, ast.Not):
        return ["not", sx(node.arg)]
    if isinstance(node, ast.Imply):
        return ["imply", sx(node.antecedent), sx(node.consequent)]
    if isinstance(node, (ast.Exists, ast.Forall)):
        word = "exists" if isinstance(node, ast.Exists) else "forall"
        return [word, _typed(node.parameters), sx(node.body)]
    if isinstance(node, ast.Comparison):
        return [node.op, sx(node.left), sx(node.right)]
    if isinstance(node, ast.Preference):
        name = [node.name] if node.name is not None else []
        return ["preference", *name, sx(node.body)]
    if isinstance(node, ast.Timed):
        return [*node.when.split(), sx(node.body)]
    if isinstance(node, ast.Modal):
        return [node.op, *map(sx, node.numbers), *map(sx, node.args)]
    if isinstance(node, ast.When):
        return ["when", sx(node.condition), sx(node.effect)]
    if isinstance(node, ast.Assign):
        return [node.op, sx(node.fluent), sx(node.value)]
    if isinstance(node, ast.FluentAssignment):
        return ["=", sx(node.fluent), sx(node.value)]
    if isinstance(node, ast.TimedLiteral):
        return ["at", node.time.text, sx(node.literal)]
    raise TypeError(f"cannot print {type(node).__name__}")


def layout(form, indent=0) -> str:
    flat = _flat(form)
    if isinstance(form, str) or indent + len(flat) <= WIDTH or len(form) < 2:
        return flat
    pad = " " * (indent + 2)
    head = _flat(form[0])
    # keep short leading atoms (e.g. "at start", "forall (?x)") on the first line
    lead = [head]
    rest = list(form[1:])
    while rest and isinstance(rest[0], str) and len(lead) < 3:
        lead.append(rest.pop(0))
    if head in ("forall", "exists") and rest:
        lead.append(_flat(rest.pop(0)))
    lines = ["(" + " ".join(lead)]
    lines += [pad + layout(r, indent + 2) for r in rest]
    return "\n".join(lines) + ")"


def _flat(form) -> str:
    if isinstance(form, str):
        return form
    return "(" + " ".join(_flat(f) for f in form) + ")"


def _check_complete(node):
    bad = ast.error_nodes(node)
    if bad or (isinstance(node, ast.Domain) and not isinstance(node.name, str)) \
            or (isinstance(node, ast.Problem)
                and not (isinstance(node.name, str) and isinstance(node.domain_name, str))):
        where = f" at byte {bad[0].span.start_byte}" if bad else ""
        raise IncompleteAst(f"AST contains error placeholders{where}")


def _block(lines, keyword, items, indent="  "):
    """Section holding several entries, one per line."""
    if not items:
        lines.append(f"{indent}({keyword})")
        return
    lines.append(f"{indent}({keyword}")
    for item in items:
        text = item if isinstance(item, str) else layout(item, len(indent) + 2)
        lines.append(indent + "  " + text)
    lines.append(f"{indent})")


def _typed_block(lines, keyword, entries):
    flat = _flat([keyword, *_typed(entries)])
    if len(flat) + 2 <= WIDTH:
        lines.append("  " + flat)
        return
    lines.append(f"  ({keyword}")
    for i, tl in enumerate(entries):
        part = " ".join(tl.items)
        if tl.parent_type != "object" or i < len(entries) - 1:
            part += " - " + _flat(_type_ref(tl.parent_type))
        lines.append("    " + part)
    lines.append("  )")


def _keyed(lines, name, pairs):
    lines.append(f"  ({name}")
    for key, form in pairs:
        lines.append(f"    {key} " + layout(form, 5 + len(key)))
    lines.append("  )")


def print_domain(d: ast.Domain) -> str:
    _check_complete(d)
    lines = [f"(define (domain {d.name})"]
    if d.requirements:
        lines.append("  (:requirements " + " ".join(d.requirements) + ")")
    if d.types:
        _typed_block(lines, ":types", d.types)
    if d.constants:
        _typed_block(lines, ":constants", d.constants)
    if d.predicates:
        _block(lines, ":predicates", [[p.name, *_typed(p.parameters)] for p in d.predicates])
    if d.functions:
        _block(lines, ":functions", [_function_line(f) for f in d.functions])
    if d.constraints is not None:
        lines.append("  " + layout([":constraints", sx(d.constraints)], 2))
    for p in d.derived_predicates:
        lines.append("  " + layout([":derived", [p.head.name, *_typed(p.head.parameters)],
                                    sx(p.body)], 2))
    for a in d.actions:
        pairs = [(":parameters", _typed(a.parameters))]
        if a.precondition is not None:
            pairs.append((":precondition", sx(a.precondition)))
        if a.effect is not None:
            pairs.append((":effect", sx(a.effect)))
        _keyed(lines, f":action {a.name}", pairs)
    for a in d.durative_actions:
        pairs = [(":parameters", _typed(a.parameters)), (":duration", sx(a.duration))]
        if a.condition is not None:
            pairs.append((":condition", sx(a.condition)))
        if a.effect is not None:
            pairs.append((":effect", sx(a.effect)))
        _keyed(lines, f":durative-action {a.name}", pairs)
    lines.append(")")
    return "\n".join(lines) + "\n"


def _function_line(f) -> str:
    text = _flat([f.name, *_typed(f.parameters)])
    if f.return_type is not None:
        text += f" - {f.return_type}"
    return text


def print_problem(p: ast.Problem) -> str:
    _check_complete(p)
    lines = [f"(define (problem {p.name})", f"  (:domain {p.domain_name})"]
    if p.requirements:
        lines.append("  (:requirements " + " ".join(p.requirements) + ")")
    if p.objects:
        _typed_block(lines, ":objects", p.objects)
    _block(lines, ":init", [sx(e) for e in p.init])
    if p.goal is not None:
        lines.append("  " + layout([":goal", sx(p.goal)], 2))
    if p.constraints is not None:
        lines.append("  " + layout([":constraints", sx(p.constraints)], 2))
    if p.metric is not None:
        lines.append("  " + layout([":metric", p.metric.direction, sx(p.metric.expression)], 2))
    lines.append(")")
    return "\n".join(lines) + "\n"
