"""Toolkit for writing PDDL 3.1 domains and problems.

Tokenizer, error-tolerant parser and printer, scope classification and
linting, type-hierarchy diagrams, project scaffolding, snippets and distance
preprocessing, all usable without an editor.
"""

__version__ = "0.1.0"

from .ast import Domain, Problem
from .diagnostics import Diagnostic
from .distance import (
    DistanceConfig, DistanceTable, Point, compute_distances, extract_coordinates,
    inject_distances,
)
from .hierarchy import (
    Snapshot, TypeHierarchy, build_hierarchy, render_png, snapshot, to_dot,
)
from .lexer import Kind, SourceSpan, Token, tokenize
from .parser import ParseResult, parse_domain, parse_problem
from .printer import print_domain, print_problem
from .scaffold import ProjectLayout, TemplateSet, new_project
from .scopes import ScopedToken, classify, emit_scopes, lint
from .snippets import get_snippet, list_snippets
