"""Exact convex hulls of integer points in dimension at most 3.

A :class:`LatticePolytope` keeps its vertices in ambient coordinates and,
alongside, in local coordinates of the affine lattice generated by its own
lattice points.  All volumes are normalized with respect to that lattice,
so a polytope embedded in a higher dimensional space, or one whose lattice
points generate a proper sublattice, needs no special treatment upstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .errors import NotAVertex, NotPllp
from .lattice import (
    AffineChart,
    Point,
    Sublattice,
    add,
    as_point,
    content,
    cross,
    det,
    dot,
    generated_chart,
    lattice_index,
    primitive,
    saturated_chart,
    scale,
    sub,
)


# ---------------------------------------------------------------------------
# low level hulls in full-dimensional local coordinates


def _orient2(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull2(points: Iterable[Sequence[int]]) -> list[Point]:
    """Vertices of a planar point set in counter-clockwise order.

    Andrew's monotone chain; collinear boundary points are dropped.  The
    cycle starts at the lexicographically smallest point.
    """
    pts = sorted(set(map(tuple, points)))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _orient2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _orient2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _plane_hull(pts: Sequence[Point], normal: Point) -> list[Point]:
    """Vertex cycle of coplanar 3D points, counter-clockwise seen from ``normal``."""
    i = max(range(3), key=lambda j: abs(normal[j]))
    j, k = (i + 1) % 3, (i + 2) % 3
    back = {(p[j], p[k]): p for p in pts}
    cyc = [back[q] for q in hull2(back)]
    if normal[i] < 0:
        cyc = [cyc[0]] + cyc[:0:-1]
    return cyc


def _pivot(a: Point, u: Point, r: Point, pts: Sequence[Point], plane_n: Point) -> Point:
    """Rotate the supporting plane through axis ``a + t*u`` away from ``r``.

    ``plane_n`` is the normal of the current supporting plane, which contains
    the axis and the direction ``r``.  Returns a point spanning, together
    with the axis, the next supporting plane.
    """
    cands = [q for q in pts if dot(plane_n, sub(q, a)) != 0]
    c = cands[0]
    changed = True
    while changed:
        changed = False
        nc = cross(u, sub(c, a))
        if dot(nc, r) > 0:
            nc = scale(-1, nc)
        for q in cands:
            if dot(nc, sub(q, a)) > 0:
                c = q
                nc = cross(u, sub(c, a))
                if dot(nc, r) > 0:
                    nc = scale(-1, nc)
                changed = True
    return c


@dataclass(frozen=True)
class _Facet3:
    normal: Point  # primitive, outward
    offset: int  # normal . x <= offset on the hull
    cycle: tuple[Point, ...]


def _outward(n: Point, r: Point) -> Point:
    n = primitive(n)
    return scale(-1, n) if dot(n, r) > 0 else n


def hull3(points: Iterable[Sequence[int]]) -> list[_Facet3]:
    """Facets of a full-dimensional 3D point set by gift wrapping.

    Coplanar points on a supporting plane are merged into one facet.
    """
    pts = sorted(set(map(tuple, points)))
    a = pts[0]
    n = (-1, 0, 0)
    # rotate the plane x = a0 until it holds a 2-dimensional face
    while True:
        face = [q for q in pts if dot(n, sub(q, a)) == 0]
        far = [q for q in face if q != a]
        line = None
        if far:
            b = max(far, key=lambda q: sum(x * x for x in sub(q, a)))
            u = sub(b, a)
            off = [q for q in face if any(cross(u, sub(q, a)))]
            if off:
                break
            line = u
        if line is None:
            e = next(e for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)) if any(cross(n, e)))
            line = cross(n, e)
        r = cross(n, line)
        c = _pivot(a, line, r, pts, n)
        n = _outward(cross(line, sub(c, a)), r)
    facets: dict[tuple[Point, int], _Facet3] = {}

    def make(normal: Point, anchor: Point) -> _Facet3:
        off = dot(normal, anchor)
        key = (normal, off)
        if key not in facets:
            on = [q for q in pts if dot(normal, q) == off]
            facets[key] = _Facet3(normal, off, tuple(_plane_hull(on, normal)))
        return facets[key]

    first = make(n, a)
    todo = [first]
    done: set[frozenset] = set()
    while todo:
        f = todo.pop()
        cyc = f.cycle
        for i in range(len(cyc)):
            p, q = cyc[i], cyc[(i + 1) % len(cyc)]
            key = frozenset((p, q))
            if key in done:
                continue
            done.add(key)
            u = sub(q, p)
            other = cyc[(i + 2) % len(cyc)]
            r = sub(other, p)
            c = _pivot(p, u, r, pts, f.normal)
            g_key = len(facets)
            g = make(_outward(cross(u, sub(c, p)), r), p)
            if len(facets) > g_key:
                todo.append(g)
    return list(facets.values())


def affine_dim(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine span of a nonempty point set."""
    pts = list(points)
    o = pts[0]
    basis: list[list] = []
    for p in pts[1:]:
        v = [x - y for x, y in zip(p, o)]
        for b, piv in basis:
            if v[piv]:
                f = v[piv]
                v = [x * b[piv] - f * y for x, y in zip(v, b)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is not None:
            basis.append((v, piv))
            if len(basis) == len(o):
                break
    return len(basis)


# ---------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True, eq=False)
class LatticePolytope:
    """Convex hull of finitely many lattice points.

    ``local_vertices`` are the vertices in coordinates of ``chart``, the affine
    lattice generated by the lattice points of the polytope.  ``facets`` lists
    vertex-index cycles (for a polygon these are its edges); ``inequalities``
    are ``(n, c)`` with ``n . x <= c`` in local coordinates, ``n`` primitive,
    one per facet in the same order.
    """

    ambient_dim: int
    vertices: tuple[Point, ...]
    dim: int
    chart: AffineChart
    local_vertices: tuple[Point, ...]
    facets: tuple[tuple[int, ...], ...]
    inequalities: tuple[tuple[Point, int], ...]
    edges: tuple[tuple[int, int], ...]
    cycle: tuple[int, ...] = ()

    def index(self, v: Sequence[int]) -> int:
        try:
            return self.vertices.index(as_point(v))
        except ValueError:
            raise NotAVertex(f"{tuple(v)} is not a vertex") from None

    def local(self, p: Sequence[int]) -> Point:
        return self.chart.int_coords(p)

    def ambient(self, p: Sequence[int]) -> Point:
        return self.chart.point(p)

    def contains_local(self, x: Sequence[int]) -> bool:
        return all(dot(n, x) <= c for n, c in self.inequalities)

    @cached_property
    def local_lattice_points(self) -> tuple[Point, ...]:
        return tuple(_enumerate_local(self))

    @cached_property
    def lattice_points(self) -> tuple[Point, ...]:
        return tuple(sorted(self.ambient(x) for x in self.local_lattice_points))

    @cached_property
    def volume(self) -> int:
        return local_volume(self.local_vertices, self.dim, self._local_faces())

    def _local_faces(self):
        return [[self.local_vertices[i] for i in f] for f in self.facets]

    def neighbors(self, i: int) -> list[int]:
        """Vertices joined to vertex ``i`` by an edge."""
        return sorted(b if a == i else a for a, b in self.edges if i in (a, b))

    def facets_at(self, i: int) -> list[int]:
        return [j for j, f in enumerate(self.facets) if i in f]

    def faces(self, d: int) -> list["Face"]:
        if d == self.dim:
            idx = [tuple(range(len(self.vertices)))]
        elif d == 0:
            idx = [(i,) for i in range(len(self.vertices))]
        elif d == 1:
            idx = list(self.edges)
        elif d == 2 and self.dim == 3:
            idx = [tuple(sorted(f)) for f in self.facets]
        else:
            idx = []
        return [Face(self, d, tuple(sorted(t))) for t in idx]


@dataclass(frozen=True)
class Face:
    """Face of a polytope given by the indices of its vertices."""

    polytope: LatticePolytope = field(compare=False, repr=False)
    dim: int
    vertex_indices: tuple[int, ...]

    @property
    def vertices(self) -> list[Point]:
        return [self.polytope.vertices[i] for i in self.vertex_indices]

    @property
    def local_vertices(self) -> list[Point]:
        return [self.polytope.local_vertices[i] for i in self.vertex_indices]

    def __le__(self, other: "Face") -> bool:
        return set(self.vertex_indices) <= set(other.vertex_indices)


def convex_hull(points: Iterable[Sequence[int]], normalize: bool = True) -> LatticePolytope:
    """Exact convex hull of integer points (intrinsic dimension at most 3).

    With ``normalize=False`` the chart is the full lattice of the affine
    span even when the lattice points generate a smaller lattice.
    """
    pts = sorted({as_point(p) for p in points})
    if not pts:
        raise ValueError("convex hull of an empty set")
    n = len(pts[0])
    d = affine_dim(pts)
    if d > 3:
        raise ValueError("hulls are supported up to dimension 3")
    if d == n:
        chart = AffineChart(pts[0], tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))
    else:
        chart = saturated_chart(pts)
    local = [chart.int_coords(p) for p in pts]
    poly = _build(n, chart, local)
    if poly.dim == 3 and normalize:
        poly = _renormalize(poly)
    return poly


def _build(n: int, chart: AffineChart, local: Sequence[Point]) -> LatticePolytope:
    d = chart.dim
    if d == 0:
        lv = [local[0]]
        facets, ineqs, edges = (), (), ()
        cyc: tuple = ()
    elif d == 1:
        lo, hi = min(local), max(local)
        lv = [lo, hi]
        facets = ((0,), (1,))
        ineqs = (((-1,), -lo[0]), ((1,), hi[0]))
        edges = ((0, 1),)
        cyc = (0, 1)
    elif d == 2:
        lv, facets, ineqs, edges, cyc = _polygon_data(hull2(local))
    else:
        lv, facets, ineqs, edges, cyc = _polyhedron_data(hull3(local))
    amb = [chart.point(x) for x in lv]
    order = sorted(range(len(amb)), key=lambda i: amb[i])
    rank = {old: new for new, old in enumerate(order)}
    return LatticePolytope(
        ambient_dim=n,
        vertices=tuple(amb[i] for i in order),
        dim=d,
        chart=chart,
        local_vertices=tuple(lv[i] for i in order),
        facets=tuple(tuple(rank[i] for i in f) for f in facets),
        inequalities=tuple(ineqs),
        edges=tuple(sorted(tuple(sorted((rank[a], rank[b]))) for a, b in edges)),
        cycle=tuple(rank[i] for i in cyc),
    )


def _polygon_data(cyc_pts):
    m = len(cyc_pts)
    facets, ineqs, edges = [], [], []
    for i in range(m):
        p, q = cyc_pts[i], cyc_pts[(i + 1) % m]
        nrm = primitive((q[1] - p[1], p[0] - q[0]))  # outward for a CCW cycle
        facets.append((i, (i + 1) % m))
        ineqs.append((nrm, dot(nrm, p)))
        edges.append((i, (i + 1) % m))
    return list(cyc_pts), facets, ineqs, edges, tuple(range(m))


def _polyhedron_data(fs: Sequence[_Facet3]):
    verts = sorted({p for f in fs for p in f.cycle})
    idx = {p: i for i, p in enumerate(verts)}
    facets, ineqs, edges = [], [], set()
    for f in fs:
        cyc = [idx[p] for p in f.cycle]
        facets.append(tuple(cyc))
        ineqs.append((f.normal, f.offset))
        for i in range(len(cyc)):
            edges.add(tuple(sorted((cyc[i], cyc[(i + 1) % len(cyc)]))))
    return verts, facets, ineqs, sorted(edges), ()


def _renormalize(poly: LatticePolytope) -> LatticePolytope:
    """Switch to the lattice generated by the lattice points if it is smaller."""
    o = poly.local_vertices[0]
    gens = [sub(v, o) for v in poly.local_vertices[1:]]
    for a, b in poly.edges:
        va, vb = poly.local_vertices[a], poly.local_vertices[b]
        e = sub(vb, va)
        gens.append(tuple(x // content(e) for x in e))
    full = Sublattice.standard(3)
    if lattice_index(full, Sublattice(3, tuple(gens))) == 1:
        return poly
    pts = poly.local_lattice_points
    inner = generated_chart(o, [sub(p, o) for p in pts])
    if lattice_index(full, Sublattice(3, inner.basis)) == 1:
        return poly
    chart = AffineChart(poly.chart.point(inner.origin),
                        tuple(sub(poly.chart.point(b), poly.chart.point((0, 0, 0)))
                              for b in inner.basis))
    local = [chart.int_coords(poly.chart.point(x)) for x in poly.local_vertices]
    return _build(poly.ambient_dim, chart, local)


def _enumerate_local(poly: LatticePolytope) -> list[Point]:
    d = poly.dim
    lv = poly.local_vertices
    if d == 0:
        return [lv[0]]
    if d == 1:
        return [(x,) for x in range(lv[0][0], lv[1][0] + 1)]
    lo = [min(v[i] for v in lv) for i in range(d)]
    hi = [max(v[i] for v in lv) for i in range(d)]
    ineqs = poly.inequalities
    out = []
    if d == 2:
        for x in range(lo[0], hi[0] + 1):
            ylo, yhi = _interval(ineqs, (x,), lo[1], hi[1])
            out.extend((x, y) for y in range(ylo, yhi + 1))
        return out
    for x in range(lo[0], hi[0] + 1):
        for y in range(lo[1], hi[1] + 1):
            zlo, zhi = _interval(ineqs, (x, y), lo[2], hi[2])
            out.extend((x, y, z) for z in range(zlo, zhi + 1))
    return out


def _interval(ineqs, head, lo, hi):
    """Range of the last coordinate allowed by ``ineqs`` given the others."""
    for nrm, c in ineqs:
        a = nrm[-1]
        rest = c - dot(nrm[:-1], head)
        if a > 0:
            hi = min(hi, rest // a)
        elif a < 0:
            lo = max(lo, -(rest // -a))
        elif rest < 0:
            return 1, 0
    return lo, hi


def local_volume(verts, d: int, faces) -> int:
    """Normalized volume of a full-dimensional local hull (``d!`` times Euclidean)."""
    if d == 0:
        return 1
    if d == 1:
        return abs(verts[1][0] - verts[0][0]) if len(verts) > 1 else 0
    if d == 2:
        cyc = hull2(verts)
        return abs(sum(_orient2(cyc[0], cyc[i], cyc[i + 1]) for i in range(1, len(cyc) - 1)))
    o = verts[0]
    tot = 0
    for f in faces:
        if o in f:
            continue
        for i in range(1, len(f) - 1):
            tot += abs(det([sub(f[0], o), sub(f[i], o), sub(f[i + 1], o)]))
    return tot


def hull_volume(points: Iterable[Sequence[int]], d: int) -> int:
    """Normalized volume of ``conv(points)`` measured in the given ``Z^d``.

    Unlike :func:`normalized_volume` no renormalization happens; a hull of
    lower dimension has volume 0.
    """
    pts = sorted(set(map(tuple, points)))
    if not pts or affine_dim(pts) < d:
        return 0
    if d == 2:
        return local_volume(pts, 2, None)
    if d == 3:
        fs = hull3(pts)
        return local_volume([f.cycle[0] for f in fs], 3, [f.cycle for f in fs])
    return local_volume([min(pts), max(pts)], d, None)


# ---------------------------------------------------------------------------
# measurements


def lattice_points(p: LatticePolytope) -> list[Point]:
    """All lattice points of ``p`` in lexicographic order."""
    return list(p.lattice_points)


def normalized_volume(p: LatticePolytope) -> int:
    """Normalized volume w.r.t. the lattice generated by the lattice points of ``p``."""
    return p.volume


def lattice_length(a: Sequence[int], b: Sequence[int]) -> int:
    return content(sub(a, b))


def polygon_area_3d(cycle: Sequence[Sequence[int]]) -> int:
    """Normalized area of a planar lattice polygon in ``Z^3``.

    Measured against the full lattice of its plane: the vector area of a
    lattice polygon is an integer multiple of the primitive plane normal.
    """
    o = cycle[0]
    w = (0, 0, 0)
    for i in range(1, len(cycle) - 1):
        w = add(w, cross(sub(cycle[i], o), sub(cycle[i + 1], o)))
    return content(w)


def facet_areas(p: LatticePolytope) -> list[int]:
    if p.dim != 3:
        raise ValueError("facet areas need a 3-polytope")
    return [polygon_area_3d([p.local_vertices[i] for i in f]) for f in p.facets]


def facet_area_sum(p: LatticePolytope) -> int:
    return sum(facet_areas(p))


def corner_points(p: LatticePolytope, i: int) -> list[Point]:
    """Local lattice points of the corner ``conv(v, w_1, ..., w_s)`` at vertex ``i``.

    ``w_j`` is the first lattice point after ``v`` along the j-th edge.
    """
    v = p.local_vertices[i]
    ws = []
    for j in p.neighbors(i):
        e = sub(p.local_vertices[j], v)
        ws.append(add(v, tuple(x // content(e) for x in e)))
    corner = convex_hull([v] + ws, normalize=False)
    if corner.dim < p.dim:
        raise ValueError("degenerate corner")
    return [pt for pt in corner.lattice_points]


def subdiagram_volume(p: LatticePolytope, v: Sequence[int]) -> int:
    """Volume removed from ``p`` when the vertex ``v`` is dropped from its lattice points.

    Only lattice points of the corner at ``v`` can become new vertices, so the
    remaining hull is the hull of the other vertices and the corner points.
    """
    i = p.index(v)
    if p.dim not in (2, 3):
        raise ValueError("subdiagram volume needs dimension 2 or 3")
    lv = p.local_vertices[i]
    keep = [x for j, x in enumerate(p.local_vertices) if j != i]
    keep += [x for x in corner_points(p, i) if x != lv]
    return p.volume - hull_volume(keep, p.dim)


def subdiagram_volume_bruteforce(p: LatticePolytope, v: Sequence[int]) -> int:
    """Same as :func:`subdiagram_volume` using every lattice point of ``p``."""
    lv = p.local_vertices[p.index(v)]
    rest = [x for x in p.local_lattice_points if x != lv]
    return p.volume - hull_volume(rest, p.dim)


def pick_counts(p: LatticePolytope) -> tuple[int, int, int]:
    """``(area, interior, boundary)`` for a lattice polygon."""
    if p.dim != 2:
        raise ValueError("pick counts need a polygon")
    pts = p.local_lattice_points
    b = sum(1 for x in pts if any(dot(n, x) == c for n, c in p.inequalities))
    return p.volume, len(pts) - b, b


# ---------------------------------------------------------------------------
# piecewise linear lattice polygons


@dataclass(frozen=True)
class Pllp:
    """Union of facets of a 3-polytope forming a topological disc."""

    polytope: LatticePolytope = field(repr=False)
    pieces: tuple[int, ...]
    boundary_points: tuple[Point, ...]
    internal_points: tuple[Point, ...]


def make_pllp(p: LatticePolytope, pieces: Sequence[int]) -> Pllp:
    """Validate a set of facets of ``p`` as a pllp and classify its lattice points.

    The union must be connected through shared edges, have Euler
    characteristic 1, and around every vertex the pieces must form a single
    edge-connected fan.  Lattice points on edges that belong to exactly one
    piece are boundary points.
    """
    if p.dim != 3:
        raise NotPllp("pieces must be facets of a 3-polytope")
    pieces = tuple(sorted(set(pieces)))
    if not pieces or len(pieces) == len(p.facets):
        raise NotPllp("need a nonempty proper set of facets")
    edge_use: dict[tuple[int, int], list[int]] = {}
    for f in pieces:
        cyc = p.facets[f]
        for k in range(len(cyc)):
            e = tuple(sorted((cyc[k], cyc[(k + 1) % len(cyc)])))
            edge_use.setdefault(e, []).append(f)
    verts = {v for f in pieces for v in p.facets[f]}
    if len(verts) - len(edge_use) + len(pieces) != 1:
        raise NotPllp("union is not contractible")
    if not _connected(pieces, edge_use):
        raise NotPllp("pieces are not connected in codimension one")
    for v in verts:
        around = [f for f in pieces if v in p.facets[f]]
        local_edges = {e: fs for e, fs in edge_use.items() if v in e}
        if not _connected(around, local_edges):
            raise NotPllp(f"pieces are pinched at vertex {p.vertices[v]}")
    boundary_edges = [e for e, fs in edge_use.items() if len(fs) == 1]
    bset = set()
    for a, b in boundary_edges:
        pa, pb = p.local_vertices[a], p.local_vertices[b]
        g = lattice_length(pa, pb)
        step = tuple(x // g for x in sub(pb, pa))
        bset.update(add(pa, scale(t, step)) for t in range(g + 1))
    allpts = set()
    for f in pieces:
        allpts.update(polygon_lattice_points([p.local_vertices[i] for i in p.facets[f]]))
    inner = allpts - bset
    return Pllp(p, pieces, tuple(sorted(p.ambient(x) for x in bset)),
                tuple(sorted(p.ambient(x) for x in inner)))


def _connected(nodes, edge_use) -> bool:
    nodes = list(nodes)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        f = stack.pop()
        for fs in edge_use.values():
            if f in fs:
                for g in fs:
                    if g not in seen and g in nodes:
                        seen.add(g)
                        stack.append(g)
    return len(seen) == len(nodes)


def polygon_lattice_points(cycle: Sequence[Sequence[int]]) -> list[Point]:
    """Lattice points of a planar lattice polygon given in any ambient dimension."""
    return list(convex_hull(cycle).lattice_points)


def pllp_area_check(k: Pllp) -> tuple[int, int, int, bool]:
    """Piece-area sum, interior and boundary counts, and whether ``A = 2i + b - 2``."""
    p = k.polytope
    area = sum(polygon_area_3d([p.local_vertices[i] for i in p.facets[f]]) for f in k.pieces)
    i, b = len(k.internal_points), len(k.boundary_points)
    return area, i, b, area == 2 * i + b - 2


def integer_distance(normal: Sequence[int], offset: int) -> int:
    """Integer distance of the lattice plane ``normal . x = offset`` from the origin."""
    g = content(normal)
    if offset % g:
        raise ValueError("plane contains no lattice points")
    return abs(offset // g)


def integer_distance_by_index(plane_points: Sequence[Sequence[int]]) -> int:
    """Integer distance via the index of the lattice generated by the plane's points.

    ``plane_points`` must affinely span the plane.
    """
    chart = saturated_chart(plane_points)
    gens = [chart.origin] + [add(chart.origin, b) for b in chart.basis]
    n = len(chart.origin)
    return lattice_index(Sublattice.standard(n), Sublattice(n, tuple(gens)))


def gcd_all(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g
