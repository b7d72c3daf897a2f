"""Type hierarchy extraction, DOT output, PNG rendering and domain snapshots."""

from __future__ import annotations

import datetime as _dt
import os
import re
import shutil
import subprocess
import tempfile
from dataclasses import dataclass
from pathlib import Path

from . import ast
from .errors import (
    CyclicTypes, EitherParentUnsupported, HierarchyError, IoFailure,
    RendererFailed, RendererNotFound,
)

ROOT = "object"


@dataclass(frozen=True)
class TypeHierarchy:
    nodes: frozenset
    edges: frozenset  # (child, parent) pairs

    def parent(self, name):
        for child, parent in self.edges:
            if child == name:
                return parent
        return None

    def children(self, name) -> list:
        return sorted(c for c, p in self.edges if p == name)

    @property
    def depth(self) -> int:
        """Number of nodes on the longest root-to-leaf path, root included."""
        def down(node):
            return 1 + max((down(c) for c in self.children(node)), default=0)
        return down(ROOT)


def build_hierarchy(domain: ast.Domain) -> TypeHierarchy:
    parents = {}
    order = []
    for entry in domain.types:
        if isinstance(entry, ast.ErrorNode):
            raise HierarchyError(":types section contains syntax errors")
        if isinstance(entry.parent_type, ast.Either):
            raise EitherParentUnsupported(entry.parent_type.types)
        for item in entry.items:
            if item in parents and parents[item] != entry.parent_type:
                raise HierarchyError(
                    f"type {item} declared with parents {parents[item]} and {entry.parent_type}")
            if item == ROOT and entry.parent_type == ROOT:
                continue
            parents[item] = entry.parent_type
            order.append(item)
    nodes = {ROOT, *parents, *parents.values()}
    for node in nodes:
        if node != ROOT and node not in parents:
            parents[node] = ROOT  # used as a parent but never declared
    _check_cycles(parents)
    return TypeHierarchy(frozenset(nodes), frozenset(parents.items()))


def _check_cycles(parents):
    done = {ROOT}
    for start in sorted(parents):
        path = []
        node = start
        while node not in done:
            if node in path:
                cycle = path[path.index(node):] + [node]
                raise CyclicTypes(cycle)
            path.append(node)
            node = parents[node]
        done.update(path)


def predicate_mentions(domain: ast.Domain) -> dict:
    """How many predicate declarations use each type in their parameters."""
    counts = {}
    for pred in domain.predicates:
        used = set()
        for tl in pred.parameters:
            if isinstance(tl, ast.TypedList):
                types = tl.parent_type.types if isinstance(tl.parent_type, ast.Either) \
                    else (tl.parent_type,)
                used.update(types)
        for t in used:
            counts[t] = counts.get(t, 0) + 1
    return counts


_DOT_ID = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")
_DOT_KEYWORDS = {"node", "edge", "graph", "digraph", "subgraph", "strict"}


def dot_id(name: str) -> str:
    if _DOT_ID.match(name) and name.lower() not in _DOT_KEYWORDS:
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(h: TypeHierarchy, rankdir="TB", include_root=True, annotations=None,
           graph_name="types") -> str:
    """Graphviz digraph with one node per type and parent -> child edges.

    ``annotations`` optionally maps type names to a count shown under the
    name, e.g. from :func:`predicate_mentions`.
    """
    names = sorted(n for n in h.nodes if include_root or n != ROOT)
    edges = sorted((p, c) for c, p in h.edges if include_root or p != ROOT)
    lines = [f"digraph {dot_id(graph_name)} {{", f"  rankdir={rankdir};",
             "  node [shape=box];"]
    for n in names:
        if annotations is not None and n in annotations:
            lines.append(f'  {dot_id(n)} [label="{n}\\n({annotations[n]})"];')
        else:
            lines.append(f"  {dot_id(n)};")
    for p, c in edges:
        lines.append(f"  {dot_id(p)} -> {dot_id(c)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def find_renderer(configured=None) -> str:
    candidate = configured or "dot"
    found = shutil.which(candidate)
    if found is None:
        raise RendererNotFound(
            f"DOT renderer {candidate!r} not found; install Graphviz or set "
            f"renderer_command in the config file")
    return found


def render_png(dot: str, out_path, renderer=None, timeout=60) -> Path:
    """Render DOT text to a PNG file with an external Graphviz-compatible renderer.

    The renderer is invoked as ``<renderer> -Tpng -o <file>`` with the DOT text
    on standard input. Nothing is written at ``out_path`` unless it succeeds.
    """
    exe = find_renderer(renderer)
    out_path = Path(out_path)
    fd, tmp = tempfile.mkstemp(suffix=".png", dir=out_path.parent or ".")
    os.close(fd)
    try:
        try:
            proc = subprocess.run([exe, "-Tpng", "-o", tmp], input=dot.encode("utf-8"),
                                  capture_output=True, timeout=timeout)
        except subprocess.TimeoutExpired:
            raise RendererFailed(f"{exe} timed out after {timeout}s") from None
        if proc.returncode != 0:
            raise RendererFailed(f"{exe} exited with status {proc.returncode}",
                                 proc.stderr.decode("utf-8", "replace"))
        if os.path.getsize(tmp) == 0:
            raise RendererFailed(f"{exe} produced an empty file",
                                 proc.stderr.decode("utf-8", "replace"))
        os.replace(tmp, out_path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
    return out_path


# -- snapshots ---------------------------------------------------------------

@dataclass(frozen=True)
class Snapshot:
    source_path: Path
    copy_path: Path
    created_at: _dt.datetime


def snapshot(path, snapshot_dir, now=None) -> Snapshot:
    """Copy ``path`` to ``snapshot_dir/<stem>-<UTC YYYYMMDDThhmmss>.pddl``.

    Existing files are never overwritten: a copy made within the same second
    gets a ``-1``, ``-2``, ... suffix.
    """
    path = Path(path)
    snapshot_dir = Path(snapshot_dir)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc.strerror or exc}") from exc
    created = now or _dt.datetime.now(_dt.timezone.utc)
    stamp = created.astimezone(_dt.timezone.utc).strftime("%Y%m%dT%H%M%S")
    try:
        snapshot_dir.mkdir(parents=True, exist_ok=True)
        counter = 0
        while True:
            suffix = f"-{counter}" if counter else ""
            target = snapshot_dir / f"{path.stem}-{stamp}{suffix}.pddl"
            try:
                fd = os.open(target, os.O_WRONLY | os.O_CREAT | os.O_EXCL, 0o644)
            except FileExistsError:
                counter += 1
                continue
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
            break
    except OSError as exc:
        raise IoFailure(f"cannot write snapshot in {snapshot_dir}: {exc.strerror or exc}") from exc
    return Snapshot(path, target, created)
