"""Command line interface: ``toric-dual {surface,threefold,table,scan,sweep}``."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .cones import ConeType2D, dual_cone_type, hj_expand, resolution_data
from .errors import OracleMismatch, ToricError
from .hull import LatticePolytope, convex_hull
from .surface import DualDegreeReport, surface_dual_degree
from .threefold import threefold_dual_degree
from .wps import (
    Weights,
    appendix_table,
    defectivity_and_conjecture_scan,
    format_table,
    parallel_map,
    threefold_triples,
    wps_report,
)

EXIT_OK, EXIT_INPUT, EXIT_ORACLE = 0, 2, 3


def read_polytope_file(path: str) -> list[tuple[int, ...]]:
    """Vertices from a file whose first line is ``d n`` followed by ``n`` rows of ``d`` integers.

    Blank lines and text after ``#`` are ignored.
    """
    with open(path) as fh:
        rows = [ln.split("#", 1)[0].split() for ln in fh]
    rows = [r for r in rows if r]
    if not rows:
        raise ToricError(f"{path}: empty polytope file")
    try:
        head = [int(x) for x in rows[0]]
        pts = [tuple(int(x) for x in r) for r in rows[1:]]
    except ValueError as e:
        raise ToricError(f"{path}: {e}") from None
    if len(head) != 2 or head[0] < 1 or head[1] < 1:
        raise ToricError(f"{path}: first line must be 'dim n'")
    d, n = head
    if len(pts) != n:
        raise ToricError(f"{path}: expected {n} vertices, found {len(pts)}")
    if any(len(p) != d for p in pts):
        raise ToricError(f"{path}: every vertex needs {d} coordinates")
    return pts


def _hj(t: ConeType2D | None):
    if t is None:
        return None
    return hj_expand(t.d, t.k if t.d > 1 else 1)


def _face(dim, vertices, eu, t=None, **extra) -> dict:
    out = {"dim": dim, "vertices": [list(v) for v in vertices], "eu": eu,
           "cone_type": None if t is None else [t.d, t.k], "hj": _hj(t)}
    out.update(extra)
    return out


def report_json(inp, p: LatticePolytope, rep: DualDegreeReport) -> dict:
    """JSON-ready dict with keys ``input, faces, terms, degree, defective``."""
    t = rep.table
    verts = p.vertices
    faces = []
    if p.dim == 2:
        for (i,), eu in t.eu_vertices.items():
            ct = t.cone_types[(i,)]
            faces.append(_face(0, [verts[i]], eu, ct, rsv=t.rsv[(i,)],
                               resolution=resolution_data(dual_cone_type(ct))))
        for e, eu in t.eu_edges.items():
            faces.append(_face(1, [verts[i] for i in e], eu))
        edges = rep.edge_term
    else:
        for (i,), eu in t.eu_vertices.items():
            faces.append(_face(0, [verts[i]], eu, None, rsv=t.rsv[(i,)]))
        for e, eu in t.eu_edges.items():
            ct = t.edge_types[e]
            faces.append(_face(1, [verts[i] for i in e], eu, ct,
                               resolution=resolution_data(dual_cone_type(ct))))
        for f, eu in t.eu_facets.items():
            faces.append(_face(2, [verts[i] for i in f], eu))
        edges = rep.edge_term
    faces.append(_face(p.dim, verts, t.eu_polytope))
    return {
        "input": inp,
        "faces": faces,
        "terms": {"volume": rep.volume, "area": rep.area, "edges": edges},
        "degree": rep.degree,
        "defective": rep.defective,
    }


def _instance(args, dim: int):
    if (args.file is None) == (args.wps is None):
        raise ToricError("give either a polytope file or --wps")
    if args.wps is not None:
        if len(args.wps) != dim + 1:
            raise ToricError(f"--wps needs {dim + 1} weights")
        r = wps_report(Weights(tuple(args.wps)))
        return {"wps": list(args.wps)}, r.polytope, r.report
    pts = read_polytope_file(args.file)
    p = convex_hull(pts)
    if p.dim != dim:
        raise ToricError(f"polytope has dimension {p.dim}, expected {dim}")
    rep = surface_dual_degree(p) if dim == 2 else threefold_dual_degree(p)
    return {"file": os.path.basename(args.file), "vertices": [list(v) for v in pts]}, p, rep


_SCALAR_LIST = re.compile(r"\[\s*((?:-?\d+|null|true|false)(?:,\s*(?:-?\d+|null|true|false))*)\s*\]")


def to_json(obj) -> str:
    """Indented JSON with lists of scalars kept on one line."""
    text = json.dumps(obj, indent=2)
    while True:
        new = _SCALAR_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text)
        if new == text:
            return text + "\n"
        text = new


def _dump(obj, out) -> None:
    out.write(to_json(obj))


def cmd_surface(args, out) -> int:
    inp, p, rep = _instance(args, 2)
    _dump(report_json(inp, p, rep), out)
    return EXIT_OK


def cmd_threefold(args, out) -> int:
    inp, p, rep = _instance(args, 3)
    _dump(report_json(inp, p, rep), out)
    return EXIT_OK


def _filter(args) -> str:
    if args.isolated:
        return "isolated"
    if args.non_isolated:
        return "non-isolated"
    return "all"


def _write(text: str, path: str | None, out) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


def cmd_table(args, out) -> int:
    if args.max < 1:
        raise ToricError("--max must be at least 1")
    rows = appendix_table(args.max, _filter(args), args.workers)
    _write(format_table(rows), args.output, out)
    return EXIT_OK


def cmd_scan(args, out) -> int:
    s = defectivity_and_conjecture_scan(args.max, args.workers)
    _dump({
        "bound": s.bound,
        "defective": [{"weights": [1, *t], "cone": c} for t, c in s.defective],
        "eu_one_singular": [[1, *t] for t in s.eu_one_singular],
    }, out)
    return EXIT_OK


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: what to enumerate, how to filter it and where to write."""

    mode: str
    bound: int
    filter: str = "all"
    fmt: str = "tsv"
    output: str | None = None
    files: tuple[str, ...] = ()

    def __post_init__(self):
        if self.mode not in ("surface-wps", "threefold-wps", "polytope-file"):
            raise ToricError(f"unknown mode {self.mode!r}")
        if self.fmt not in ("tsv", "json"):
            raise ToricError(f"unknown format {self.fmt!r}")
        if self.filter not in ("all", "isolated", "non-isolated"):
            raise ToricError(f"unknown filter {self.filter!r}")
        if self.mode == "polytope-file" and not self.files:
            raise ToricError("polytope-file mode needs files")
        if self.mode != "polytope-file" and self.bound < 1:
            raise ToricError("bound must be at least 1")


def _surface_triples(bound: int, which: str) -> list[tuple[int, int, int]]:
    # reduced weight triples are pairwise coprime, so only "isolated" ones exist
    if which == "non-isolated":
        return []
    return [(k, m, n) for k in range(1, bound + 1) for m in range(k, bound + 1)
            for n in range(m, bound + 1) if gcd(k, m) == gcd(k, n) == gcd(m, n) == 1]


def _sweep_wps(q: tuple[int, ...]) -> tuple:
    r = wps_report(q)
    return q, r.degree, r.defective, r.vertex_eu, r.rsv


def _sweep_file(path: str) -> tuple:
    p = convex_hull(read_polytope_file(path))
    rep = surface_dual_degree(p) if p.dim == 2 else threefold_dual_degree(p)
    t = rep.table
    eu = tuple(t.eu_vertices[(i,)] for i in range(len(p.vertices)))
    rsv = tuple(t.rsv[(i,)] for i in range(len(p.vertices)))
    return path, rep.degree, rep.defective, eu, rsv


def run_sweep(cfg: SweepConfig, workers: int | None = None) -> str:
    """Rows ``(input, degree, defective, vertex Eu, RSV)`` rendered as TSV or JSON."""
    if cfg.mode == "surface-wps":
        res = parallel_map(_sweep_wps, _surface_triples(cfg.bound, cfg.filter), workers)
    elif cfg.mode == "threefold-wps":
        items = [(1,) + t for t in threefold_triples(cfg.bound, cfg.filter)]
        res = parallel_map(_sweep_wps, items, workers)
    else:
        res = parallel_map(_sweep_file, cfg.files, workers)
    if cfg.fmt == "json":
        rows = [{"input": list(i) if isinstance(i, tuple) else i, "degree": d,
                 "defective": df, "eu": list(e), "rsv": list(r)} for i, d, df, e, r in res]
        return to_json(rows)
    lines = ["input degree defective eu rsv"]
    for i, d, df, e, r in res:
        name = ",".join(map(str, i)) if isinstance(i, tuple) else i
        lines.append(" ".join([name, str(d), str(int(df)), ",".join(map(str, e)), ",".join(map(str, r))]))
    return "\n".join(lines) + "\n"


def cmd_sweep(args, out) -> int:
    cfg = SweepConfig(args.mode, args.max, _filter(args), args.format, args.output, tuple(args.files))
    _write(run_sweep(cfg, args.workers), cfg.output, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toric-dual",
                                 description="Euler obstructions and dual degrees of toric surfaces and 3-folds.")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, n, fn in (("surface", 3, cmd_surface), ("threefold", 4, cmd_threefold)):
        p = sub.add_parser(name, help=f"dual degree of a toric {'surface' if n == 3 else '3-fold'}")
        p.add_argument("file", nargs="?", help="polytope file ('dim n' then one vertex per line)")
        p.add_argument("--wps", type=int, nargs=n, metavar="Q", help="weights of a weighted projective space")
        p.set_defaults(func=fn)

    def add_filter(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--isolated", action="store_true", help="pairwise coprime weights only")
        g.add_argument("--non-isolated", action="store_true", help="weights with a common factor in some pair")

    def add_workers(p):
        p.add_argument("--workers", type=int, default=None,
                       help="worker processes (default: CPU count capped by TORIC_DUAL_THREADS)")

    p = sub.add_parser("table", help="Euler obstruction and RSV table for P(1,k,m,n)")
    p.add_argument("--max", type=int, required=True, help="bound on k, m, n")
    add_filter(p)
    p.add_argument("--output", help="write TSV here instead of standard output")
    add_workers(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("scan", help="defective P(1,k,m,n) and singular ones with Eu = 1 everywhere")
    p.add_argument("--max", type=int, required=True, help="bound on k, m, n")
    add_workers(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("sweep", help="dual degrees over a family")
    p.add_argument("--mode", choices=["surface-wps", "threefold-wps", "polytope-file"], required=True)
    p.add_argument("--max", type=int, default=1, help="bound on the weights")
    add_filter(p)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--output")
    p.add_argument("files", nargs="*", help="polytope files for polytope-file mode")
    add_workers(p)
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except OracleMismatch as e:
        print(f"toric-dual: internal consistency check failed: {e}", file=sys.stderr)
        return EXIT_ORACLE
    except (ToricError, ValueError, OSError) as e:
        print(f"toric-dual: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
