"""Print type-hierarchy statistics and DOT for one or more domains.

    python scripts/hierarchy_dump.py tests/fixtures/hier-a.pddl tests/fixtures/hier-b.pddl --dot
"""

import argparse
from pathlib import Path

from pddl_forge.hierarchy import build_hierarchy, predicate_mentions, to_dot
from pddl_forge.parser import parse_domain


def layers(h):
    # type names per depth below object
    out = []
    level = h.children("object")
    while level:
        out.append(level)
        level = sorted(c for n in level for c in h.children(n))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("files", nargs="+", type=Path)
    ap.add_argument("--dot", action="store_true", help="also print the DOT text")
    ap.add_argument("--annotate", action="store_true")
    args = ap.parse_args()
    for path in args.files:
        r = parse_domain(path.read_text("utf-8"))
        if not r.ok:
            for d in r.diagnostics:
                print(d.format(str(path)))
            continue
        h = build_hierarchy(r.ast)
        print(f"{path}: {len(h.nodes) - 1} types, {len(h.edges)} edges, depth {h.depth}")
        for i, names in enumerate(layers(h), 1):
            print(f"  layer {i}: {' '.join(names)}")
        if args.dot:
            print(to_dot(h, annotations=predicate_mentions(r.ast) if args.annotate else None))


if __name__ == "__main__":
    main()
