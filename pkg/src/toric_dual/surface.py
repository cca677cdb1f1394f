"""Euler obstructions and dual degrees of projective toric surfaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cones import ConeType2D, classify_cone, cone_eu
from .errors import OracleMismatch
from .hull import (
    LatticePolytope,
    _orient2,
    corner_points,
    hull2,
    hull_volume,
    lattice_length,
    pick_counts,
)
from .lattice import Point, sub


@dataclass(frozen=True)
class SurfaceEulerTable:
    """Euler obstruction on every face of a polygon (keys are vertex-index tuples)."""

    polytope: LatticePolytope = field(repr=False)
    eu_polytope: int
    eu_edges: dict
    eu_vertices: dict
    cone_types: dict
    rsv: dict


@dataclass(frozen=True)
class DualDegreeReport:
    """Terms of the dual-degree formula.

    ``edge_term`` is the sum of lattice edge lengths for a surface and the
    Euler-weighted sum ``sum Eu(e) L(e)`` for a 3-fold; ``area`` is ``None``
    for surfaces.
    """

    dim: int
    volume: int
    area: int | None
    edge_term: int
    vertex_term: int
    degree: int
    defective: bool
    table: object = field(repr=False, compare=False)


def vertex_cone_type(p: LatticePolytope, i: int) -> ConeType2D:
    """``M``-type of the cone of the polygon ``p`` at vertex ``i``."""
    v = p.local_vertices[i]
    a, b = (sub(p.local_vertices[j], v) for j in p.neighbors(i))
    a = tuple(x // lattice_length(a, (0, 0)) for x in a)
    b = tuple(x // lattice_length(b, (0, 0)) for x in b)
    if _orient2((0, 0), a, b) < 0:
        a, b = b, a
    return classify_cone(a, b)[0]


def _vertex_eu_pair(p: LatticePolytope, i: int) -> tuple[int, int]:
    """Eu at vertex ``i`` from the removed area and from the boundary count."""
    v = p.local_vertices[i]
    ws = {p.local_vertices[i]}
    for j in p.neighbors(i):
        e = sub(p.local_vertices[j], v)
        g = lattice_length(e, (0, 0))
        ws.add(tuple(x + y // g for x, y in zip(v, e)))
    corner = [x for x in corner_points(p, i) if x != v]
    keep = [x for j, x in enumerate(p.local_vertices) if j != i] + corner
    rsv = p.volume - hull_volume(keep, 2)
    cyc = hull2(keep)
    if len(cyc) < 3:
        on_boundary = corner
    else:
        # edges of the new hull facing v form the chain replacing v
        m = len(cyc)
        seen = [(cyc[t], cyc[(t + 1) % m]) for t in range(m)
                if _orient2(cyc[t], cyc[(t + 1) % m], v) < 0]
        on_boundary = [x for x in corner if any(_orient2(a, b, x) == 0 for a, b in seen)]
    c = sum(1 for x in on_boundary if x not in ws)
    return 2 - rsv, 1 - c


def surface_vertex_eu(p: LatticePolytope, v: Sequence[int]) -> int:
    """Euler obstruction at the torus fixed point of vertex ``v``.

    Computed from the area removed at ``v``, from the count of new boundary
    points, and from the continued fraction of the vertex cone; all three
    must agree.
    """
    i = p.index(v)
    a, b = _vertex_eu_pair(p, i)
    c = cone_eu(vertex_cone_type(p, i))
    if not a == b == c:
        raise OracleMismatch(f"Eu at {tuple(v)}: area {a}, boundary count {b}, cone {c}")
    return a


def surface_euler_table(p: LatticePolytope) -> SurfaceEulerTable:
    if p.dim != 2:
        raise ValueError("surface_euler_table needs a polygon")
    eus, types, rsv = {}, {}, {}
    for i, v in enumerate(p.vertices):
        e = surface_vertex_eu(p, v)
        eus[(i,)] = e
        rsv[(i,)] = 2 - e
        types[(i,)] = vertex_cone_type(p, i)
    return SurfaceEulerTable(p, 1, {e: 1 for e in p.edges}, eus, types, rsv)


def edge_length_sum(p: LatticePolytope) -> int:
    lv = p.local_vertices
    return sum(lattice_length(lv[a], lv[b]) for a, b in p.edges)


def surface_dual_degree(p: LatticePolytope) -> DualDegreeReport:
    """``3 Vol - 2 E + sum Eu(v)``; zero means the dual is not a hypersurface."""
    table = surface_euler_table(p)
    vol = p.volume
    e = edge_length_sum(p)
    s = sum(table.eu_vertices.values())
    deg = 3 * vol - 2 * e + s
    return DualDegreeReport(2, vol, None, e, s, deg, deg == 0, table)


def is_p11n_equivalent(p: LatticePolytope) -> bool:
    """Whether ``p`` is unimodularly a triangle ``conv(0, n e1, e2)``.

    Such triangles are exactly the lattice triangles without interior
    points having at least two edges of lattice length one.
    """
    if p.dim != 2 or len(p.vertices) != 3:
        return False
    _, interior, _ = pick_counts(p)
    lv = p.local_vertices
    ones = sum(1 for a, b in p.edges if lattice_length(lv[a], lv[b]) == 1)
    return interior == 0 and ones >= 2


def surface_defectivity_scan(polytopes: Iterable[LatticePolytope]) -> list[tuple[LatticePolytope, DualDegreeReport]]:
    """Polygons whose dual-degree formula vanishes."""
    out = []
    for p in polytopes:
        r = surface_dual_degree(p)
        if r.defective:
            out.append((p, r))
    return out


def lattice_triangles(lo: int, hi: int) -> list[tuple[Point, Point, Point]]:
    """All nondegenerate lattice triangles with vertices in ``[lo, hi]^2``."""
    pts = [(x, y) for x in range(lo, hi + 1) for y in range(lo, hi + 1)]
    out = []
    n = len(pts)
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                if _orient2(pts[a], pts[b], pts[c]):
                    out.append((pts[a], pts[b], pts[c]))
    return out
