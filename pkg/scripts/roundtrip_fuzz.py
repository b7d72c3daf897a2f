"""Round-trip random ASTs through the printer and parser and time it.

    python scripts/roundtrip_fuzz.py --examples 1000 --seed 1
"""

import argparse
import sys
import time
from pathlib import Path

from hypothesis import HealthCheck, Phase, given, seed, settings

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from pddl_forge.parser import parse_domain, parse_problem  # noqa: E402
from pddl_forge.printer import print_domain, print_problem  # noqa: E402
from strategies import domains, problems  # noqa: E402


def run(strategy, printer, parser, n, rng_seed):
    stats = {"count": 0, "chars": 0, "print": 0.0, "parse": 0.0, "bad": []}

    @seed(rng_seed)
    @settings(max_examples=n, deadline=None, database=None, phases=[Phase.generate],
              suppress_health_check=list(HealthCheck))
    @given(strategy)
    def one(tree):
        t0 = time.perf_counter()
        text = printer(tree)
        t1 = time.perf_counter()
        r = parser(text)
        t2 = time.perf_counter()
        stats["count"] += 1
        stats["chars"] += len(text)
        stats["print"] += t1 - t0
        stats["parse"] += t2 - t1
        if r.diagnostics or r.ast != tree:
            stats["bad"].append(text)

    t = time.perf_counter()
    one()
    stats["total"] = time.perf_counter() - t
    return stats


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--examples", type=int, default=500, help="per file kind")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    failed = False
    for kind, strat, pr, pa in (("domain", domains, print_domain, parse_domain),
                                ("problem", problems, print_problem, parse_problem)):
        s = run(strat, pr, pa, args.examples, args.seed)
        print(f"{kind:8} n={s['count']} chars={s['chars']} print={s['print']:.2f}s "
              f"parse={s['parse']:.2f}s total={s['total']:.1f}s mismatches={len(s['bad'])}")
        if s["bad"]:
            failed = True
            print(s["bad"][0])
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
