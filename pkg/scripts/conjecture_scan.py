"""List singular P(1,k,m,n) whose Euler obstruction is 1 at every vertex."""

import argparse

from toric_dual.wps import defectivity_and_conjecture_scan, wps_report


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=5)
    ap.add_argument("--workers", type=int)
    args = ap.parse_args(argv)
    for t in defectivity_and_conjecture_scan(args.max, args.workers).eu_one_singular:
        r = wps_report((1, *t))
        print("1", *t, r.singular_locus_class, "rsv", *r.rsv)


if __name__ == "__main__":
    main()
