"""Match linter diagnostics against the seeded error sites of a fixture.

    python scripts/seeded_errors.py tests/fixtures/errors-a.pddl tests/fixtures/errors-b.pddl

For each file, prints every seed with the diagnostic(s) that hit it, then
the diagnostics that hit no seed. Sites come from the ``.sites.json`` file
next to the fixture.
"""

import argparse
import json
import time
from pathlib import Path

from pddl_forge.scopes import classify_with_diagnostics


def load_sites(path: Path, text: str):
    lines = text.splitlines(keepends=True)
    out = []
    for s in json.loads(path.with_suffix(".sites.json").read_text()):
        line = lines[s["line"] - 1]
        start = len("".join(lines[:s["line"] - 1]).encode()) + len(line[:line.index(s["text"])].encode())
        out.append((start, start + len(s["text"].encode()), s))
    return out


def report(path: Path) -> bool:
    text = path.read_text("utf-8")
    sites = load_sites(path, text)
    t0 = time.perf_counter()
    scoped, diags = classify_with_diagnostics(text)
    elapsed = time.perf_counter() - t0
    print(f"{path}: {len(text.splitlines())} lines, {len(text)} chars, "
          f"{len(sites)} seeds, {len(diags)} diagnostics, {elapsed * 1000:.1f} ms")
    used = set()
    ok = len(diags) == len(sites)
    for a, b, s in sites:
        hits = [i for i, d in enumerate(diags) if d.span.start_byte < b and a < d.span.end_byte]
        used.update(hits)
        ok = ok and len(hits) == 1
        found = ", ".join(diags[i].code for i in hits) or "MISSED"
        print(f"  line {s['line']:>2}  {s['error']:<36} {found}")
    for i, d in enumerate(diags):
        if i not in used:
            ok = False
            print(f"  stray   {d.format()}")
    plain = sum(1 for st in scoped if st.scope == "plain")
    print(f"  plain tokens: {plain} of {len(scoped)}")
    return ok


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("files", nargs="+", type=Path)
    args = ap.parse_args()
    results = [report(f) for f in args.files]
    raise SystemExit(0 if all(results) else 1)


if __name__ == "__main__":
    main()
