"""Two-dimensional cones, Hirzebruch-Jung continued fractions and their invariants.

A ``(d, k)``-cone is ``Cone(e1, k*e1 + d*e2)`` for a lattice basis
``(e1, e2)`` with ``d > k >= 0`` and ``gcd(d, k) = 1``; ``(1, 0)`` is smooth.
Whether the type lives in ``M`` (polytope side) or ``N`` (fan side) is stated
per function.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from math import gcd
from typing import Sequence

from .errors import DegenerateCone, InvalidFraction, NotPrimitive
from .lattice import Point, Sublattice, content, solve_echelon, xgcd
from .hull import hull2


@dataclass(frozen=True, order=True)
class ConeType2D:
    d: int
    k: int

    def __post_init__(self):
        if self.d < 1 or not 0 <= self.k < self.d:
            raise InvalidFraction(f"bad cone type ({self.d},{self.k})")
        if gcd(self.d, self.k) != 1:
            raise InvalidFraction(f"cone type ({self.d},{self.k}) is not coprime")

    def __iter__(self):
        return iter((self.d, self.k))

    def __str__(self) -> str:
        return f"({self.d},{self.k})"


SMOOTH = ConeType2D(1, 0)


def hj_expand(d: int, k: int) -> list[int]:
    """Hirzebruch-Jung expansion ``d/k = b1 - 1/(b2 - ...)`` with every ``bi >= 2``.

    ``hj_expand(1, 1) == [1]`` encodes the smooth cone.
    """
    if not 0 < k <= d or gcd(d, k) != 1:
        raise InvalidFraction(f"{d}/{k} is not a reduced fraction with 0 < k <= d")
    out = []
    while k:
        b = -(-d // k)
        out.append(b)
        d, k = k, b * k - d
    return out


def hj_eval(e: Sequence[int]) -> tuple[int, int]:
    """Value of an expansion as a coprime pair ``(numerator, denominator)``."""
    e = list(e)
    if not e:
        raise InvalidFraction("empty expansion")
    if e == [1]:
        return 1, 1
    if any(b < 2 for b in e):
        raise InvalidFraction(f"entries of {e} must be at least 2")
    p, q = 1, 0
    for b in reversed(e):
        p, q = b * p - q, p
    return p, q


def classify_cone(u: Sequence[int], w: Sequence[int],
                  lattice: Sublattice | None = None) -> tuple[ConeType2D, list[Point]]:
    """Type of ``Cone(u, w)`` inside a rank-2 lattice, with an adapted basis.

    Returns ``(t, [e1, e2])`` in the coordinates of ``u`` and ``w`` with
    ``u = e1`` and ``w = t.k*e1 + t.d*e2``.  Swapping ``u`` and ``w`` replaces
    ``k`` by its inverse mod ``d``; Euler obstruction and RSV do not change.
    """
    if lattice is None:
        lattice = Sublattice.standard(len(u))
    basis = lattice.basis
    if len(basis) != 2:
        raise ValueError("classify_cone needs a rank-2 lattice")
    cu, cw = solve_echelon(basis, u), solve_echelon(basis, w)
    for c, name in ((cu, u), (cw, w)):
        if c is None or not all(isinstance(x, int) for x in c):
            raise ValueError(f"{tuple(name)} is not in the lattice")
        if content(c) != 1:
            raise NotPrimitive(f"{tuple(name)} is not primitive in the lattice")
    b = cu[0] * cw[1] - cu[1] * cw[0]
    if b == 0:
        raise DegenerateCone("rays are linearly dependent")
    _, x, y = xgcd(cu[0], cu[1])
    f2 = (-y, x)  # det(u, f2) == 1
    a = cw[0] * f2[1] - cw[1] * f2[0]
    d = abs(b)
    k = a % d
    s = 1 if b > 0 else -1
    t = (a - k) // d
    e2 = (s * f2[0] + t * cu[0], s * f2[1] + t * cu[1])

    def amb(c):
        return tuple(c[0] * p + c[1] * q for p, q in zip(basis[0], basis[1]))

    if d == 1:
        k = 0
    return ConeType2D(d, k), [amb(cu), amb(e2)]


def dual_cone_type(t: ConeType2D) -> ConeType2D:
    """Type of the dual cone: ``(d, k) -> (d, d - k mod d)``."""
    return ConeType2D(t.d, (t.d - t.k) % t.d)


def boundary_fan(t: ConeType2D) -> list[Point]:
    """Lattice points on the compact boundary of ``conv(cone ∩ Z^2 minus 0)``.

    The cone is ``Cone((1,0), (k,d))``.  Every vertex of that boundary lies in
    the triangle spanned by the apex and the two ray generators, so only that
    triangle is scanned.  Points run from ``(1,0)`` to ``(k,d)``.
    """
    d, k = t.d, t.k
    pts = []
    for y in range(d + 1):
        # triangle 0, (1,0), (k,d): y*k/d <= x and d*x - (k-1)*y <= d
        lo = -((-y * k) // d)
        hi = (d + (k - 1) * y) // d
        pts.extend((x, y) for x in range(lo, hi + 1) if (x, y) != (0, 0))
    verts = hull2(pts)

    def by_angle(p, q):
        c = p[0] * q[1] - p[1] * q[0]
        return -1 if c > 0 else (1 if c < 0 else 0)

    verts = sorted(verts, key=cmp_to_key(by_angle))
    out = [verts[0]]
    for p, q in zip(verts, verts[1:]):
        g = gcd(q[0] - p[0], q[1] - p[1])
        sx, sy = (q[0] - p[0]) // g, (q[1] - p[1]) // g
        out.extend((p[0] + i * sx, p[1] + i * sy) for i in range(1, g + 1))
    return out


def fan_coefficients(fan: Sequence[Sequence[int]]) -> list[int]:
    """``bi`` with ``A(i-1) + A(i+1) = bi*Ai`` along a boundary fan.

    Raises ``ValueError`` if some neighbour sum is not a multiple of ``Ai``.
    """
    out = []
    for i in range(1, len(fan) - 1):
        s = (fan[i - 1][0] + fan[i + 1][0], fan[i - 1][1] + fan[i + 1][1])
        a = fan[i]
        j = 0 if a[0] else 1
        b = s[j] // a[j]
        if (b * a[0], b * a[1]) != s:
            raise ValueError("boundary fan violates the recurrence")
        out.append(b)
    return out


def resolution_data(t: ConeType2D) -> list[int]:
    """Self-intersections of the exceptional curves for an ``N``-type cone."""
    if t.d == 1:
        return []
    return [-b for b in fan_coefficients(boundary_fan(t))]


def cone_eu(t: ConeType2D) -> int:
    """Euler obstruction at the apex of an ``M``-type cone."""
    return sum(2 - b for b in hj_expand(t.d, t.k if t.d > 1 else 1))


def cone_rsv(t: ConeType2D) -> int:
    """Area cut off the corner of an ``M``-type cone when the apex is removed."""
    return 2 - cone_eu(t)


def is_smooth(t: ConeType2D) -> bool:
    return t.d == 1


def is_gorenstein(t: ConeType2D) -> bool:
    """Singular and of ``N``-type ``(d, 1)``."""
    return t.d > 1 and t.k == 1


def hj_length_identity_check(d: int, k: int) -> bool:
    """Length of the expansion of ``d/(d-k)`` is ``1 + sum(bi - 2)`` over ``d/k``."""
    r = len(hj_expand(d, d - k))
    return r == 1 + sum(b - 2 for b in hj_expand(d, k))
