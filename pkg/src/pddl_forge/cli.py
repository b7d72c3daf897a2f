"""``pddl-forge`` command line.

Exit status, for every subcommand:

* 0 - success
* 1 - diagnostics or other errors found in the input (or the planner failed)
* 2 - usage error: bad arguments, unknown snippet, unreadable file, bad config
* 3 - environment error: planner or renderer missing or not runnable
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import shlex
import subprocess
import sys
from pathlib import Path

from . import __version__
from .config import ENV_VAR, load_config
from .distance import compute_distances, extract_coordinates, inject_distances
from .errors import (
    AlreadyExists, ConfigError, DistanceError, HierarchyError, InvalidEncoding,
    InvalidName, InvalidPlaceholderValue, IoFailure, RendererFailed, RendererNotFound,
    UnknownSnippet,
)
from .hierarchy import build_hierarchy, predicate_mentions, render_png, snapshot, to_dot
from .lexer import decode
from .parser import parse_domain, parse_problem
from .printer import print_problem
from .scaffold import TemplateSet, new_project
from .scopes import classify, emit_scopes, lint
from .snippets import get_snippet, list_snippets

OK, FOUND, USAGE, ENVIRONMENT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _err(msg):
    print(f"pddl-forge: {msg}", file=sys.stderr)


def _read_text(path) -> str:
    try:
        return decode(Path(path).read_bytes())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _report(path, diagnostics):
    for d in diagnostics:
        print(d.format(path), file=sys.stderr)


# -- subcommands -------------------------------------------------------------

def cmd_new(args, cfg):
    templates = TemplateSet.from_dir(cfg.template_dir) if cfg.template_dir else None
    try:
        layout = new_project(args.name, args.dir, templates)
    except InvalidName as exc:
        raise UsageError(str(exc)) from None
    except AlreadyExists as exc:
        _err(str(exc))
        return FOUND
    print(layout.root)
    return OK


def cmd_check(args, cfg):
    records = []
    found = False
    for path in args.paths:
        try:
            text = _read_text(path)
        except InvalidEncoding as exc:
            found = True
            if args.json:
                records.append({"path": str(path), "start": 0, "end": 0,
                                "code": "invalid-encoding", "severity": "error",
                                "message": str(exc)})
            else:
                _err(f"{path}: {exc}")
            continue
        diagnostics = lint(text)
        found = found or bool(diagnostics)
        if args.json:
            records.extend(d.to_json(path) for d in diagnostics)
        else:
            _report(path, diagnostics)
    if args.json:
        print(json.dumps(records, indent=2))
    return FOUND if found else OK


def cmd_highlight(args, cfg):
    text = _read_text(args.path)
    scoped = classify(text)
    colors = {} if args.no_color else cfg.color_map
    out = emit_scopes(scoped, args.format, colors=colors, source=text)
    sys.stdout.buffer.write(out)
    if args.format == "json":
        sys.stdout.buffer.write(b"\n")
    sys.stdout.flush()
    return OK


def cmd_diagram(args, cfg):
    path = Path(args.path)
    result = parse_domain(_read_text(path))
    if result.diagnostics:
        _report(path, result.diagnostics)
        return FOUND
    try:
        h = build_hierarchy(result.ast)
    except HierarchyError as exc:
        _err(f"{path}: {exc}")
        return FOUND
    annotations = predicate_mentions(result.ast) if args.annotate else None
    dot = to_dot(h, rankdir=args.rankdir, include_root=not args.no_root,
                 annotations=annotations)
    out_dir = Path(args.out_dir) if args.out_dir else path.parent
    out_dir.mkdir(parents=True, exist_ok=True)
    dot_path = out_dir / f"{path.stem}.dot"
    dot_path.write_text(dot, "utf-8")
    print(dot_path)
    if args.snapshot:
        try:
            snap = snapshot(path, path.parent / "domains")
        except IoFailure as exc:
            _err(str(exc))
            return FOUND
        print(snap.copy_path)
    if args.png:
        png_path = out_dir / f"{path.stem}.png"
        try:
            render_png(dot, png_path, cfg.renderer_command)
        except (RendererNotFound, RendererFailed) as exc:
            _err(str(exc))
            return ENVIRONMENT
        print(png_path)
    return OK


def cmd_distance(args, cfg):
    path = Path(args.path)
    result = parse_problem(_read_text(path))
    if result.diagnostics:
        _report(path, result.diagnostics)
        return FOUND
    dcfg = cfg.distance
    overrides = {}
    if args.decimals is not None:
        overrides["decimal_places"] = args.decimals
    if args.asymmetric:
        overrides["symmetric"] = False
    if args.function:
        overrides["distance_function_name"] = args.function
    if args.coords:
        overrides["coord_function_names"] = tuple(c.strip() for c in args.coords.split(","))
    if args.type:
        overrides["target_type"] = args.type
    if overrides:
        try:
            dcfg = dataclasses.replace(dcfg, **overrides)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        points = extract_coordinates(result.ast, dcfg)
        table = compute_distances(points)
        problem = inject_distances(result.ast, table, dcfg, overwrite=args.overwrite)
    except DistanceError as exc:
        _err(f"{path}: {exc}")
        return FOUND
    if args.in_place:
        target = path
    elif args.output:
        target = Path(args.output)
    else:
        target = path.with_name(f"{path.stem}-dist.pddl")
    target.write_text(print_problem(problem), "utf-8")
    print(target)
    return OK


def cmd_snippet(args, cfg):
    if args.list or not args.name:
        for name, kind in list_snippets(cfg.snippet_dir):
            print(f"{name}\t{kind}")
        return OK
    params = {}
    for item in args.params:
        if "=" not in item:
            raise UsageError(f"snippet parameter {item!r} is not key=value")
        key, value = item.split("=", 1)
        params[key] = value
    try:
        text = get_snippet(args.name, params, cfg.snippet_dir)
    except (UnknownSnippet, InvalidPlaceholderValue) as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(text)
    return OK


def cmd_solve(args, cfg):
    if not cfg.planner_command:
        where = cfg.source or f"${ENV_VAR} or the default config file"
        _err(f"no planner configured: set planner_command in {where}, e.g. "
             "'planner_command = ff -o {domain} -f {problem}'")
        return ENVIRONMENT
    domain, problem = Path(args.domain), Path(args.problem)
    for p in (domain, problem):
        if not p.is_file():
            raise UsageError(f"{p} does not exist")
    solutions = domain.resolve().parent / "solutions"
    output = Path(args.out) if args.out else solutions / f"{problem.stem}.plan"
    log = solutions / f"{problem.stem}.log"
    values = {"domain": str(domain), "problem": str(problem), "output": str(output)}
    try:
        argv = [part.format(**values) for part in shlex.split(cfg.planner_command)]
    except (KeyError, ValueError, IndexError) as exc:
        _err(f"planner_command is malformed: {exc}")
        return USAGE
    solutions.mkdir(parents=True, exist_ok=True)
    output.parent.mkdir(parents=True, exist_ok=True)
    try:
        proc = subprocess.run(argv, capture_output=True, timeout=args.timeout)
    except FileNotFoundError:
        _err(f"planner executable {argv[0]!r} not found; check planner_command in the config")
        return ENVIRONMENT
    except PermissionError:
        _err(f"planner executable {argv[0]!r} is not runnable; check planner_command")
        return ENVIRONMENT
    except subprocess.TimeoutExpired as exc:
        log.write_bytes((exc.stdout or b"") + (exc.stderr or b""))
        _err(f"planner timed out after {args.timeout}s; output in {log}")
        return FOUND
    log.write_bytes(proc.stdout + proc.stderr)
    print(log)
    if proc.returncode != 0:
        _err(f"planner exited with status {proc.returncode}; output in {log}")
        return FOUND
    return OK


# -- wiring ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pddl-forge",
        description="Check, highlight, visualize and preprocess PDDL files.",
        epilog="exit status: 0 ok, 1 errors found, 2 usage error, 3 missing planner/renderer",
    )
    ap.add_argument("--config", help=f"config file (default: ${ENV_VAR} or ~/.config/pddl-forge/config)")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("new", help="create a project skeleton")
    p.add_argument("name")
    p.add_argument("--dir", default=".", help="parent directory (default: current)")
    p.set_defaults(func=cmd_new)

    p = sub.add_parser("check", help="report syntax errors")
    p.add_argument("paths", nargs="+")
    p.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("highlight", help="print scope classification")
    p.add_argument("path")
    p.add_argument("--format", choices=("ansi", "json"), default="ansi")
    p.add_argument("--no-color", action="store_true")
    p.set_defaults(func=cmd_highlight)

    p = sub.add_parser("diagram", help="write the type hierarchy as DOT (and PNG)")
    p.add_argument("path")
    p.add_argument("--png", action="store_true", help="also render <name>.png")
    p.add_argument("--snapshot", action="store_true", help="copy the domain into domains/")
    p.add_argument("--out-dir")
    p.add_argument("--rankdir", default="TB", choices=("TB", "BT", "LR", "RL"))
    p.add_argument("--no-root", action="store_true", help="leave out the implicit object type")
    p.add_argument("--annotate", action="store_true", help="show predicate counts per type")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("distance", help="add precomputed distances to a problem")
    p.add_argument("path")
    out = p.add_mutually_exclusive_group()
    out.add_argument("-o", "--output")
    out.add_argument("--in-place", action="store_true")
    p.add_argument("--decimals", type=int)
    p.add_argument("--asymmetric", action="store_true", help="write only one ordering per pair")
    p.add_argument("--overwrite", action="store_true", help="replace existing distance values")
    p.add_argument("--function", help="distance function name")
    p.add_argument("--coords", help="comma-separated coordinate functions")
    p.add_argument("--type", help="only objects of this type")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("snippet", help="print a code skeleton")
    p.add_argument("name", nargs="?")
    p.add_argument("params", nargs="*", help="placeholder=value")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_snippet)

    p = sub.add_parser("solve", help="run the configured planner")
    p.add_argument("domain")
    p.add_argument("problem")
    p.add_argument("--out", help="plan file passed as {output}")
    p.add_argument("--timeout", type=float)
    p.set_defaults(func=cmd_solve)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except (UsageError, ConfigError) as exc:
        _err(str(exc))
        return USAGE
    except InvalidEncoding as exc:
        _err(str(exc))
        return FOUND


if __name__ == "__main__":
    sys.exit(main())
