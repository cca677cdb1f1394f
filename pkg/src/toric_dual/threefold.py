"""Euler obstructions and dual degrees of projective toric 3-folds."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Sequence

from .cones import SMOOTH, ConeType2D, classify_cone, cone_eu, cone_rsv
from .errors import NotIsolated, OracleMismatch
from .hull import (
    LatticePolytope,
    Pllp,
    convex_hull,
    facet_area_sum,
    integer_distance,
    integer_distance_by_index,
    lattice_length,
    make_pllp,
    pllp_area_check,
    subdiagram_volume,
)
from .lattice import Point, Sublattice, add, dot, primitive, quotient_projection, saturation, scale, sub
from .surface import DualDegreeReport


@dataclass(frozen=True)
class ThreefoldEulerTable:
    """Euler obstructions of all faces of a 3-polytope.

    Edges are keyed by sorted vertex-index pairs, vertices by 1-tuples and
    facets by their sorted vertex indices.  ``facet_cones`` maps
    ``(vertex, facet)`` to the ``M``-type of the facet's corner at the vertex.
    """

    polytope: LatticePolytope = field(repr=False)
    eu_polytope: int
    eu_facets: dict
    eu_edges: dict
    eu_vertices: dict
    edge_types: dict
    facet_cones: dict
    rsv: dict


def _edge_key(p: LatticePolytope, e) -> tuple[int, int]:
    a, b = e
    if isinstance(a, int) and isinstance(b, int):
        return (min(a, b), max(a, b))
    i, j = p.index(a), p.index(b)
    return (min(i, j), max(i, j))


def edge_cone_type(p: LatticePolytope, e, apex: int = 0) -> ConeType2D:
    """Type of the 2D cone generated by ``p`` in ``M / Z e`` at the image of ``e``.

    ``apex`` picks the endpoint (0: smaller index) translated to the origin.
    """
    i, j = _edge_key(p, e)
    if apex:
        i, j = j, i
    lv = p.local_vertices
    d = primitive(sub(lv[j], lv[i]))
    rays = []
    for f in p.facets:
        if i in f and j in f:
            m = len(f)
            s = f.index(i)
            nxt = f[(s + 1) % m] if f[(s + 1) % m] != j else f[(s - 1) % m]
            (img,) = quotient_projection(d, [sub(lv[nxt], lv[i])])
            rays.append(primitive(img))
    if len(rays) != 2:
        raise ValueError("edge is not on exactly two facets")
    return classify_cone(rays[0], rays[1])[0]


def edge_eu(p: LatticePolytope, e) -> int:
    """``Eu(e) = f_e - 2 + sum(2 - b_i)`` from the cone transverse to the edge."""
    i, j = _edge_key(p, e)
    f_e = sum(1 for f in p.facets if i in f and j in f)
    return f_e - 2 + cone_eu(edge_cone_type(p, (i, j)))


def facet_vertex_cone(p: LatticePolytope, f: int, v: int) -> ConeType2D:
    """``M``-type of the corner of facet ``f`` at vertex ``v`` in the facet's lattice."""
    cyc = p.facets[f]
    s = cyc.index(v)
    lv = p.local_vertices
    a = primitive(sub(lv[cyc[s - 1]], lv[v]))
    b = primitive(sub(lv[cyc[(s + 1) % len(cyc)]], lv[v]))
    lat = Sublattice(3, tuple(saturation([a, b], 3)))
    return classify_cone(a, b, lat)[0]


def facet_vertex_rsv(p: LatticePolytope, f: int, v: int) -> int:
    return cone_rsv(facet_vertex_cone(p, f, v))


def vertex_eu(p: LatticePolytope, v: int, rsv: int | None = None) -> int:
    """``RSV(P,v) - sum_f RSV(f,v) + sum_e Eu(e)`` over faces through ``v``."""
    if rsv is None:
        rsv = subdiagram_volume(p, p.vertices[v])
    fs = sum(facet_vertex_rsv(p, f, v) for f in p.facets_at(v))
    es = sum(edge_eu(p, (v, w)) for w in p.neighbors(v))
    return rsv - fs + es


def threefold_euler_table(p: LatticePolytope) -> ThreefoldEulerTable:
    if p.dim != 3:
        raise ValueError("needs a 3-polytope")
    edge_types = {e: edge_cone_type(p, e) for e in p.edges}
    eu_edges = {e: edge_eu(p, e) for e in p.edges}
    facet_cones, rsv, eu_v = {}, {}, {}
    for i, v in enumerate(p.vertices):
        r = subdiagram_volume(p, v)
        rsv[(i,)] = r
        fs = 0
        for f in p.facets_at(i):
            t = facet_vertex_cone(p, f, i)
            facet_cones[(i, tuple(sorted(p.facets[f])))] = t
            fs += cone_rsv(t)
        es = sum(eu_edges[tuple(sorted((i, w)))] for w in p.neighbors(i))
        eu_v[(i,)] = r - fs + es
    eu_f = {tuple(sorted(f)): 1 for f in p.facets}
    return ThreefoldEulerTable(p, 1, eu_f, eu_edges, eu_v, edge_types, facet_cones, rsv)


def threefold_dual_degree(p: LatticePolytope) -> DualDegreeReport:
    """``4V - 3A + 2 sum Eu(e) L(e) - sum Eu(v)``; zero means defective."""
    t = threefold_euler_table(p)
    lv = p.local_vertices
    vol = p.volume
    area = facet_area_sum(p)
    el = sum(eu * lattice_length(lv[a], lv[b]) for (a, b), eu in t.eu_edges.items())
    vs = sum(t.eu_vertices.values())
    deg = 4 * vol - 3 * area + 2 * el - vs
    return DualDegreeReport(3, vol, area, el, vs, deg, deg == 0, t)


def is_isolated(p: LatticePolytope) -> bool:
    """Whether every edge cone is smooth (singularities at most at vertices)."""
    return all(edge_cone_type(p, e) == SMOOTH for e in p.edges)


def isolated_vertex_eu_bound_check(p: LatticePolytope) -> bool:
    if not is_isolated(p):
        raise NotIsolated("some edge carries a singular curve")
    t = threefold_euler_table(p)
    return all(x >= 1 for x in t.eu_vertices.values())


@dataclass(frozen=True)
class VertexPllp:
    """The pllp of compact faces of ``conv(cone ∩ M minus apex)`` at a vertex.

    Coordinates are local to the polytope and translated so the apex is 0.
    """

    rays: tuple[Point, ...]
    pllp: Pllp
    distances: tuple[int, ...]
    area: int


def vertex_pllp(p: LatticePolytope, v: int) -> VertexPllp:
    lv = p.local_vertices
    rays = [primitive(sub(lv[w], lv[v])) for w in p.neighbors(v)]
    corner = convex_hull([(0, 0, 0)] + rays, normalize=False)
    pts = [x for x in corner.lattice_points if any(x)]
    h = convex_hull(pts + [scale(2, r) for r in rays], normalize=False)
    o = h.chart.origin
    pieces, dists = [], []
    for fi, (nrm, c) in enumerate(h.inequalities):
        if all(dot(nrm, r) < 0 for r in rays):
            pieces.append(fi)
            off = c + dot(nrm, o)
            d1 = integer_distance(nrm, off)
            d2 = integer_distance_by_index([h.vertices[t] for t in h.facets[fi]])
            if d1 != d2:
                raise OracleMismatch(f"integer distance {d1} vs lattice index {d2}")
            dists.append(d1)
    k = make_pllp(h, pieces)
    area, _, _, holds = pllp_area_check(k)
    if not holds:
        raise OracleMismatch("generalized Pick formula fails")
    return VertexPllp(tuple(rays), k, tuple(dists), area)


def eu_equals_one_characterization(p: LatticePolytope, v: int,
                                   require_isolated: bool = True) -> tuple[bool, bool, bool]:
    """Three conditions whose conjunction is equivalent to ``Eu(v) = 1``.

    Exactly three edges at ``v``; no internal lattice points on the vertex
    pllp; every pllp plane at integer distance one from the apex.  The
    equivalence needs smooth edges at ``v``; with ``require_isolated=False``
    the conditions are still reported for other vertices but not checked
    against ``Eu``.
    """
    isolated = all(edge_cone_type(p, (v, w)) == SMOOTH for w in p.neighbors(v))
    if require_isolated and not isolated:
        raise NotIsolated(f"vertex {p.vertices[v]} lies on a singular curve")
    vp = vertex_pllp(p, v)
    res = (len(p.neighbors(v)) == 3,
           not vp.pllp.internal_points,
           all(d == 1 for d in vp.distances))
    if isolated and all(res) != (vertex_eu(p, v) == 1):
        raise OracleMismatch(f"Eu = 1 criterion disagrees at {p.vertices[v]}")
    return res


def isolated_pllp_checks(p: LatticePolytope, v: int) -> tuple[int, int, int]:
    """``(RSV(P,v), area of pllp, boundary points)`` with the identities checked.

    The boundary count equals the sum of facet corner RSVs, and the removed
    volume is at least the pllp area.
    """
    vp = vertex_pllp(p, v)
    b = len(vp.pllp.boundary_points)
    fs = sum(facet_vertex_rsv(p, f, v) for f in p.facets_at(v))
    rsv = subdiagram_volume(p, p.vertices[v])
    if b != fs or rsv < vp.area:
        raise OracleMismatch(f"pllp identities fail at {p.vertices[v]}")
    return rsv, vp.area, b


def rsv_doubling_check(p: LatticePolytope, v: int) -> bool:
    """Compare ``RSV(P,v)`` with the value on ``2(P - v) + v``; warn if they differ."""
    lv = p.local_vertices
    big = convex_hull([add(lv[v], scale(2, sub(x, lv[v]))) for x in lv], normalize=False)
    r1 = subdiagram_volume(p, p.vertices[v])
    r2 = subdiagram_volume(big, lv[v])
    if r1 != r2:
        warnings.warn(f"RSV at {p.vertices[v]} changes under doubling: {r1} vs {r2}")
    return r1 == r2
