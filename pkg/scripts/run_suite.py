"""Crosscheck every family and admissible parameter over a list of q and save the table.

    python3 scripts/run_suite.py --qs 3 5 7 9 11 13 --workers 4 --out results/suite.json
"""

import argparse
import json
import sys
from pathlib import Path

from pgl2graphs.cli import main as cli_main


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qs", type=int, nargs="+", default=[3, 5, 7, 9, 11, 13])
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("results/suite.json"))
    args = ap.parse_args(argv)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    code = cli_main(
        ["suite", "--json", "--qs", *map(str, args.qs), "--workers", str(args.workers), "--out", str(args.out)]
    )
    rows = json.loads(args.out.read_text())["rows"]
    by_family: dict = {}
    for r in rows:
        by_family.setdefault(r["family"], []).append(r)
    for fam, rs in sorted(by_family.items()):
        n_ram = sum(r["ramanujan"] for r in rs)
        print(
            f"{fam}: {len(rs)} graphs, matched {sum(r['matched'] for r in rs)}, "
            f"within 2sqrt(q) {sum(r['paper_bound'] for r in rs)}, Ramanujan {n_ram}"
        )
    print(f"wrote {args.out}")
    return code


if __name__ == "__main__":
    sys.exit(main())
