"""Euler obstructions by the general codimension recursion.

This path works directly from lattice indices and relative subdiagram
volumes of every pair of nested faces, measured in quotient lattices.  It
shares no formulas with the specialized surface and 3-fold algorithms and
serves as their oracle on small polytopes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hull import LatticePolytope, convex_hull, hull2, hull_volume
from .lattice import (
    Point,
    Sublattice,
    content,
    hermite_normal_form,
    identity,
    kernel,
    lattice_index,
    saturation,
    solve_rows,
    sub,
)


@dataclass(frozen=True)
class GeneralEuler:
    """Faces as sorted vertex-index tuples mapped to Eu, volume and dimension."""

    eu: dict
    volume: dict
    dim: dict
    degree: int


def _face_points(p: LatticePolytope, face: tuple[int, ...]) -> list[Point]:
    return list(convex_hull([p.local_vertices[i] for i in face]).lattice_points)


def _lattice_basis(vectors) -> list[Point]:
    vs = [list(v) for v in vectors if any(v)]
    if not vs:
        return []
    h, _ = hermite_normal_form(vs)
    return [tuple(r) for r in h if any(r)]


def relative_data(p: LatticePolytope, alpha: tuple[int, ...], beta: tuple[int, ...],
                  cache: dict | None = None) -> tuple[int, int]:
    """``(i(alpha, beta), RSV(alpha, beta))`` for faces ``beta <= alpha``."""
    if alpha == beta:
        return 1, 1
    cache = {} if cache is None else cache
    if alpha not in cache:
        cache[alpha] = _face_points(p, alpha)
    if beta not in cache:
        cache[beta] = _face_points(p, beta)
    o = p.local_vertices[beta[0]]
    pa = [sub(x, o) for x in cache[alpha]]
    pb = [sub(x, o) for x in cache[beta]]
    ba = _lattice_basis(pa)
    bb = _lattice_basis(pb)
    ra = len(ba)
    # coordinates in M_alpha
    ca = [solve_rows(ba, x) for x in pa]
    cb = [solve_rows(ba, x) for x in bb]
    if not bb:
        index = 1
        quot = identity(ra)
    else:
        sat = saturation(cb, ra)
        index = lattice_index(Sublattice(ra, tuple(sat)), Sublattice(ra, tuple(cb)))
        quot = kernel(sat, ra)
    img = sorted({tuple(sum(a * b for a, b in zip(row, c)) for row in quot) for c in ca})
    return index, _cone_rsv(img, len(quot))


def _cone_rsv(img: list[Point], c: int) -> int:
    """Volume cut from the cone generated by ``img`` when the apex is removed."""
    zero = (0,) * c
    if c == 1:
        return 1
    if c == 2:
        cyc = hull2(img)
        s = cyc.index(zero)
        rays = [cyc[s - 1], cyc[(s + 1) % len(cyc)]]
    else:
        q = convex_hull(img, normalize=False)
        s = q.index(zero)
        rays = [q.vertices[j] for j in q.neighbors(s)]
    rays = [tuple(x // content(r) for x in r) for r in rays]
    corner = convex_hull([zero] + rays, normalize=False)
    pts = [x for x in corner.lattice_points if x != zero]
    return corner.volume - hull_volume(pts, c)


def general_euler(p: LatticePolytope) -> GeneralEuler:
    """Eu on every face from the recursion, and the signed-sum degree."""
    faces = {}
    for d in range(p.dim + 1):
        for f in p.faces(d):
            faces[f.vertex_indices] = d
    order = sorted(faces, key=lambda f: -faces[f])
    top = order[0]
    eu = {top: 1}
    cache: dict = {}
    for beta in order[1:]:
        tot = 0
        for alpha in order:
            if faces[alpha] <= faces[beta] or not set(beta) <= set(alpha):
                continue
            i, r = relative_data(p, alpha, beta, cache)
            sign = (-1) ** (faces[alpha] - faces[beta] - 1)
            tot += sign * i * r * eu[alpha]
        eu[beta] = tot
    vol = {f: convex_hull([p.local_vertices[i] for i in f]).volume for f in faces}
    n = p.dim
    deg = sum((-1) ** (n - faces[f]) * (faces[f] + 1) * eu[f] * vol[f] for f in faces)
    return GeneralEuler(eu, vol, faces, deg)
