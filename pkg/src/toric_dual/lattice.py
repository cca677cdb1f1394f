"""Exact integer linear algebra over lattices.

Vectors are tuples of Python ints and matrices are lists of rows, so
nothing here can overflow.  Everything is a pure function of its inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import Sequence

from .errors import NotPrimitive, NotSublattice, ZeroVector

Point = tuple[int, ...]
Matrix = list[list[int]]


def as_point(v: Sequence[int]) -> Point:
    return tuple(int(x) for x in v)


def sub(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def scale(c: int, a: Sequence[int]) -> Point:
    return tuple(c * x for x in a)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def cross(a: Sequence[int], b: Sequence[int]) -> Point:
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def content(v: Sequence[int]) -> int:
    """gcd of the coordinates (0 for the zero vector)."""
    return reduce(gcd, v, 0)


def primitive(v: Sequence[int]) -> Point:
    """Divide ``v`` by the gcd of its coordinates."""
    g = content(v)
    if g == 0:
        raise ZeroVector(f"zero vector {tuple(v)} has no primitive direction")
    return tuple(x // g for x in v)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b))
    return [[dot(r, c) for c in bt] for r in a]


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(c) for c in zip(*m)]


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``h == u @ m``.  ``h`` is in
    row echelon form with positive pivots, every entry above a pivot reduced
    into ``[0, pivot)``, and zero rows last.  This pins ``h`` down uniquely
    for a given row lattice.
    """
    h = [list(r) for r in m]
    nr = len(h)
    nc = len(h[0]) if nr else 0
    u = identity(nr)
    row = 0
    for col in range(nc):
        if row == nr:
            break
        for i in range(row + 1, nr):
            b = h[i][col]
            if b == 0:
                continue
            a = h[row][col]
            g, x, y = xgcd(a, b)
            p, q = a // g, b // g
            hr, hi = h[row], h[i]
            h[row] = [x * s + y * t for s, t in zip(hr, hi)]
            h[i] = [p * t - q * s for s, t in zip(hr, hi)]
            ur, ui = u[row], u[i]
            u[row] = [x * s + y * t for s, t in zip(ur, ui)]
            u[i] = [p * t - q * s for s, t in zip(ur, ui)]
        piv = h[row][col]
        if piv == 0:
            continue
        if piv < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]
            piv = -piv
        for i in range(row):
            f = h[i][col] // piv
            if f:
                h[i] = [s - f * t for s, t in zip(h[i], h[row])]
                u[i] = [s - f * t for s, t in zip(u[i], u[row])]
        row += 1
    return h, u


def rank(m: Sequence[Sequence[int]]) -> int:
    if not m:
        return 0
    h, _ = hermite_normal_form(m)
    return sum(1 for r in h if any(r))


def left_kernel(m: Sequence[Sequence[int]]) -> Matrix:
    """Basis of the integer vectors ``y`` with ``y @ m == 0``.

    The result spans a saturated lattice.
    """
    h, u = hermite_normal_form(m)
    return [u[i] for i, r in enumerate(h) if not any(r)]


def kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis of the integer vectors ``x`` with ``m @ x == 0``."""
    if not m:
        return identity(ncols or 0)
    return left_kernel(transpose(m))


def smith_normal_form(m: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors ``d1 | d2 | ...`` of ``m`` (zeros last).

    The list has ``min(rows, cols)`` entries.
    """
    a = [list(r) for r in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    t = 0
    while t < min(nr, nc):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        done = False
        while not done:
            done = True
            piv = a[t][t]
            for i in range(t + 1, nr):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            for j in range(t + 1, nc):
                q = a[t][j] // piv
                if q:
                    for r in a:
                        r[j] -= q * r[t]
            rest = [(abs(a[i][t]), i, t) for i in range(t + 1, nr) if a[i][t]]
            rest += [(abs(a[t][j]), t, j) for j in range(t + 1, nc) if a[t][j]]
            if rest:
                _, i, j = min(rest)
                if j == t:
                    a[t], a[i] = a[i], a[t]
                else:
                    for r in a:
                        r[t], r[j] = r[j], r[t]
                done = False
                continue
            # pivot must divide the remaining block
            bad = [(i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                   if a[i][j] % piv]
            if bad:
                i, _ = bad[0]
                a[t] = [x + y for x, y in zip(a[t], a[i])]
                done = False
        t += 1
    diag = [abs(a[i][i]) for i in range(min(nr, nc))]
    nonzero = [d for d in diag if d]
    return nonzero + [0] * (len(diag) - len(nonzero))


@dataclass(frozen=True)
class Sublattice:
    """Lattice generated by integer vectors inside ``Z^ambient_dim``."""

    ambient_dim: int
    generators: tuple[Point, ...]

    def __post_init__(self):
        gens = tuple(as_point(g) for g in self.generators)
        if any(len(g) != self.ambient_dim for g in gens):
            raise ValueError("generator dimension does not match ambient_dim")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def standard(cls, n: int) -> "Sublattice":
        return cls(n, tuple(tuple(r) for r in identity(n)))

    @property
    def basis(self) -> list[Point]:
        """Echelon basis (nonzero HNF rows)."""
        if not self.generators:
            return []
        h, _ = hermite_normal_form(self.generators)
        return [tuple(r) for r in h if any(r)]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Sequence[int]) -> tuple | None:
        """Coordinates of ``v`` in :attr:`basis`; Fractions if ``v`` lies in
        the rational span but not in the lattice, ``None`` outside the span."""
        return solve_echelon(self.basis, v)

    def __contains__(self, v) -> bool:
        c = self.coordinates(v)
        return c is not None and all(isinstance(x, int) for x in c)


def solve_echelon(basis: Sequence[Sequence[int]], v: Sequence[int]) -> tuple | None:
    """Solve ``c @ basis == v`` for a basis in row echelon form."""
    coeffs = []
    rest = [Fraction(x) for x in v]
    for row in basis:
        j = next(i for i, x in enumerate(row) if x)
        c = rest[j] / row[j]
        coeffs.append(c)
        if c:
            rest = [r - c * x for r, x in zip(rest, row)]
    if any(rest):
        return None
    return tuple(int(c) if c.denominator == 1 else c for c in coeffs)


def lattice_index(super_: Sublattice, sub_: Sublattice) -> int:
    """Group index ``[super_ : sub_]`` of two lattices of equal rank."""
    basis = super_.basis
    if sub_.rank != len(basis):
        raise NotSublattice("sublattice rank differs from the ambient lattice")
    if not basis:
        return 1
    rows = []
    for g in sub_.generators:
        c = solve_echelon(basis, g)
        if c is None or not all(isinstance(x, int) for x in c):
            raise NotSublattice(f"{g} is not in the ambient lattice")
        rows.append(list(c))
    diag = smith_normal_form(rows)
    out = 1
    for d in diag:
        out *= d
    return out


def saturation(generators: Sequence[Sequence[int]], n: int) -> list[Point]:
    """Echelon basis of ``span(generators) ∩ Z^n``."""
    gens = [list(g) for g in generators if any(g)]
    if not gens:
        return []
    perp = kernel(gens, n)
    if not perp:
        return [tuple(r) for r in identity(n)]
    sat = kernel(perp, n)
    h, _ = hermite_normal_form(sat)
    return [tuple(r) for r in h if any(r)]


def quotient_projection(direction: Sequence[int], points: Sequence[Sequence[int]]) -> list[Point]:
    """Images of ``points`` in ``Z^n / Z*direction``, identified with ``Z^(n-1)``.

    ``direction`` is completed to a lattice basis by the unimodular transform
    of its Hermite form; in those coordinates the direction is the first
    basis vector and the projection drops that coordinate.
    """
    d = as_point(direction)
    if not any(d):
        raise ZeroVector("cannot project along the zero vector")
    if content(d) != 1:
        raise NotPrimitive(f"{d} is not primitive")
    _, u = hermite_normal_form([[x] for x in d])
    # u @ d == e_1, so coordinates of p in the basis inv(u)^T are u @ p
    return [tuple(dot(r, p) for r in u[1:]) for p in points]


def parallelepiped_points(basis: Sequence[Sequence[int]]) -> list[Point]:
    """Lattice points of the half-open parallelepiped spanned by a square basis."""
    n = len(basis)
    corners = [tuple(sum(c * b[i] for c, b in zip(cs, basis)) for i in range(n))
               for cs in itertools.product((0, 1), repeat=n)]
    lo = [min(c[i] for c in corners) for i in range(n)]
    hi = [max(c[i] for c in corners) for i in range(n)]
    tb = [tuple(r) for r in transpose(basis)]
    d = det(tb)
    if d == 0:
        raise ValueError("vectors are linearly dependent")
    found = []
    for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        coeffs = _cramer(tb, p, d)
        if all(0 <= c < 1 for c in coeffs):
            found.append(p)
    return found


def _cramer(m, rhs, d):
    n = len(m)
    out = []
    for j in range(n):
        mj = [list(r) for r in m]
        for i in range(n):
            mj[i][j] = rhs[i]
        out.append(Fraction(det(mj), d))
    return out


def is_lattice_basis(basis: Sequence[Sequence[int]]) -> bool:
    return abs(det(basis)) == 1


@dataclass(frozen=True)
class AffineChart:
    """Affine lattice ``origin + Z<basis>`` with coordinates in ``Z^rank``."""

    origin: Point
    basis: tuple[Point, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _standard(self) -> bool:
        n = len(self.origin)
        return self.basis == tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    def coords(self, p: Sequence[int]) -> tuple | None:
        if self._standard:
            return sub(p, self.origin)
        return solve_rows(self.basis, sub(p, self.origin))

    def int_coords(self, p: Sequence[int]) -> Point:
        c = self.coords(p)
        if c is None or not all(isinstance(x, int) for x in c):
            raise ValueError(f"{tuple(p)} is not on the chart lattice")
        return c

    def point(self, c: Sequence[int]) -> Point:
        if self._standard:
            return add(c, self.origin)
        out = list(self.origin)
        for ci, b in zip(c, self.basis):
            if ci:
                out = [o + ci * x for o, x in zip(out, b)]
        return tuple(out)


def solve_rows(basis: Sequence[Sequence[int]], v: Sequence[int]) -> tuple | None:
    """Solve ``c @ basis == v`` for linearly independent rows (exact)."""
    m = len(basis)
    n = len(v)
    # augmented system: columns of basis^T with rhs v
    a = [[Fraction(basis[j][i]) for j in range(m)] + [Fraction(v[i])] for i in range(n)]
    row = 0
    piv_cols = []
    for col in range(m):
        r = next((i for i in range(row, n) if a[i][col]), None)
        if r is None:
            raise ValueError("basis vectors are linearly dependent")
        a[row], a[r] = a[r], a[row]
        pv = a[row][col]
        a[row] = [x / pv for x in a[row]]
        for i in range(n):
            if i != row and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        piv_cols.append(col)
        row += 1
    if any(a[i][m] for i in range(row, n)):
        return None
    return tuple(int(a[i][m]) if a[i][m].denominator == 1 else a[i][m] for i in range(m))


def saturated_chart(points: Sequence[Sequence[int]]) -> AffineChart:
    """Chart of ``aff(points) ∩ Z^n`` anchored at the lexicographically smallest point."""
    pts = sorted({as_point(p) for p in points})
    o = pts[0]
    basis = saturation([sub(p, o) for p in pts[1:]], len(o))
    return AffineChart(o, tuple(basis))


def generated_chart(origin: Sequence[int], vectors: Sequence[Sequence[int]]) -> AffineChart:
    """Chart of ``origin + Z<vectors>``."""
    gens = [list(v) for v in vectors if any(v)]
    if not gens:
        return AffineChart(as_point(origin), ())
    h, _ = hermite_normal_form(gens)
    return AffineChart(as_point(origin), tuple(tuple(r) for r in h if any(r)))
