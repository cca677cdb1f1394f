"""Scan lattice triangles in a box and compare defectivity with P(1,1,n)-equivalence."""

import argparse

from toric_dual.hull import convex_hull
from toric_dual.surface import is_p11n_equivalent, lattice_triangles, surface_dual_degree


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=6, help="vertices lie in [0, max]^2")
    args = ap.parse_args(argv)
    tris = lattice_triangles(0, args.max)
    flagged = mismatched = 0
    for t in tris:
        p = convex_hull(t)
        d = surface_dual_degree(p).defective
        flagged += d
        if d != is_p11n_equivalent(p):
            mismatched += 1
            print("mismatch", t)
    print(f"{len(tris)} triangles, {flagged} defective, {mismatched} mismatches")
    return 1 if mismatched else 0


if __name__ == "__main__":
    raise SystemExit(main())
