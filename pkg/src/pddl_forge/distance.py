"""Offline Euclidean distances for problems with spatial objects.

PDDL arithmetic has no square root, so distances between objects are
computed here from coordinate fluents found in ``:init`` and written back
as numeric fluent assignments ``(= (distance a b) v)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from decimal import ROUND_HALF_EVEN, Decimal

from . import ast
from .errors import (
    DuplicateCoordinate, ExistingDistances, MixedDimensionality, PartialCoordinates,
)
from .lexer import is_identifier


@dataclass(frozen=True)
class Point:
    x: float
    y: float
    z: float | None = None

    def __post_init__(self):
        for v in self.coords:
            if not math.isfinite(v):
                raise ValueError(f"non-finite coordinate {v}")

    @property
    def coords(self) -> tuple:
        return (self.x, self.y) if self.z is None else (self.x, self.y, self.z)


@dataclass(frozen=True)
class DistanceConfig:
    coord_function_names: tuple = ("x-pos", "y-pos", "z-pos")
    target_type: str | None = None
    distance_function_name: str = "distance"
    decimal_places: int = 3
    symmetric: bool = True

    def __post_init__(self):
        if not 2 <= len(self.coord_function_names) <= 3:
            raise ValueError("need two or three coordinate function names")
        for name in (*self.coord_function_names, self.distance_function_name):
            if not is_identifier(name):
                raise ValueError(f"{name!r} is not a valid PDDL identifier")
        if self.target_type is not None and not is_identifier(self.target_type):
            raise ValueError(f"{self.target_type!r} is not a valid PDDL identifier")
        if not 0 <= self.decimal_places <= 9:
            raise ValueError("decimal_places must be between 0 and 9")


@dataclass(frozen=True)
class DistanceTable:
    """Distances for every ordered pair of objects, self-pairs included."""

    entries: dict = field(default_factory=dict)

    def __getitem__(self, pair):
        return self.entries[pair]

    def objects(self) -> list:
        seen = {}
        for a, _ in self.entries:
            seen.setdefault(a, None)
        return list(seen)


_AXES = ("x", "y", "z")


def _object_types(problem):
    types = {}
    for tl in problem.objects:
        if isinstance(tl, ast.TypedList) and isinstance(tl.parent_type, str):
            for item in tl.items:
                types[item.lower()] = tl.parent_type.lower()
    return types


def extract_coordinates(problem: ast.Problem, cfg: DistanceConfig = DistanceConfig()) -> dict:
    """Map each object with coordinate fluents in ``:init`` to its :class:`Point`.

    Objects without any coordinate fluent are left out. ``cfg.target_type``
    keeps only objects declared with exactly that type in ``:objects``.
    """
    axis_of = {name.lower(): axis for name, axis in zip(cfg.coord_function_names, _AXES)}
    values = {}  # object -> {axis: value}
    for element in problem.init:
        if not isinstance(element, ast.FluentAssignment):
            continue
        fluent = element.fluent
        axis = axis_of.get(fluent.name.lower())
        if axis is None or len(fluent.args) != 1 or not isinstance(element.value, ast.Number):
            continue
        obj = fluent.args[0].name
        coords = values.setdefault(obj, {})
        if axis in coords:
            raise DuplicateCoordinate(obj, fluent.name)
        coords[axis] = element.value.value
    if cfg.target_type is not None:
        types = _object_types(problem)
        values = {o: c for o, c in values.items() if types.get(o.lower()) == cfg.target_type.lower()}
    points = {}
    for obj, coords in values.items():
        for axis in ("x", "y"):
            if axis not in coords:
                raise PartialCoordinates(obj, axis)
        points[obj] = Point(coords["x"], coords["y"], coords.get("z"))
    return points


def compute_distances(points: dict) -> DistanceTable:
    dims = {len(p.coords) for p in points.values()}
    if len(dims) > 1:
        raise MixedDimensionality("points mix 2-D and 3-D coordinates")
    entries = {}
    for a, pa in points.items():
        for b, pb in points.items():
            entries[a, b] = 0.0 if a == b else math.dist(pa.coords, pb.coords)
    return DistanceTable(entries)


def format_distance(value: float, decimal_places: int) -> str:
    """Round half-to-even on the decimal expansion of ``value``."""
    quantum = Decimal(1).scaleb(-decimal_places)
    return format(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_EVEN), "f")


def inject_distances(problem: ast.Problem, table: DistanceTable,
                     cfg: DistanceConfig = DistanceConfig(), overwrite=False) -> ast.Problem:
    """Append ``(= (distance a b) v)`` for every pair of distinct objects.

    With ``cfg.symmetric`` both orderings are written, otherwise only the
    pair in which ``a`` comes first in the table. Existing distance fluents
    are an error unless ``overwrite`` is set, in which case they are dropped.
    """
    fname = cfg.distance_function_name
    existing = [e for e in problem.init
                if isinstance(e, ast.FluentAssignment) and e.fluent.name.lower() == fname.lower()]
    if existing and not overwrite:
        raise ExistingDistances(
            f"{len(existing)} ({fname} ...) values already in :init; use overwrite to replace them")
    init = [e for e in problem.init if not any(e is x for x in existing)]
    objs = table.objects()
    for i, a in enumerate(objs):
        for j, b in enumerate(objs):
            if i == j or (not cfg.symmetric and j < i):
                continue
            value = format_distance(table[a, b], cfg.decimal_places)
            init.append(ast.FluentAssignment(
                ast.FunctionTerm(fname, (ast.Name(a), ast.Name(b))), ast.Number(value)))
    return replace(problem, init=tuple(init))
