"""List defective P(1,k,m,n) with k <= m <= n <= bound and check each is a cone."""

import argparse

from toric_dual.wps import defectivity_and_conjecture_scan


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=10)
    ap.add_argument("--workers", type=int)
    args = ap.parse_args(argv)
    s = defectivity_and_conjecture_scan(args.max, args.workers)
    for t, cone in s.defective:
        print("1", *t, "cone" if cone else "NOT A CONE")
    print(f"{len(s.defective)} defective, {sum(not c for _, c in s.defective)} outside the cone patterns")


if __name__ == "__main__":
    main()
