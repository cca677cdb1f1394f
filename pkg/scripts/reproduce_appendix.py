"""Write the E/R tables for P(1,k,m,n) and diff them against golden files."""

import argparse
import sys
from pathlib import Path

from toric_dual.wps import appendix_table, format_table

ROOT = Path(__file__).resolve().parent.parent


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=".", help="directory for the generated tables")
    ap.add_argument("--golden", default=str(ROOT / "tests" / "golden"))
    ap.add_argument("--workers", type=int)
    args = ap.parse_args(argv)
    bad = 0
    for which, bound, name in (("isolated", 10, "appendix_isolated.tsv"),
                               ("non-isolated", 6, "appendix_non_isolated.tsv")):
        text = format_table(appendix_table(bound, which, args.workers))
        Path(args.out, name).write_text(text)
        want = Path(args.golden, name).read_text().splitlines()
        diff = [(g, w) for g, w in zip(text.splitlines(), want) if g != w]
        print(f"{name}: {len(want)} golden lines, {len(diff)} differ")
        for g, w in diff:
            print(f"  computed {g}\n  golden   {w}")
        bad += bool(diff)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
