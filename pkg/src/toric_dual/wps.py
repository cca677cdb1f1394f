"""Weighted projective spaces: reduction, polytopes, cone data and scans.

Vertices of the simplex of ``P(q_0, ..., q_n)`` are labelled by weight
index; vertex ``i`` is ``delta/q_i`` times the ``i``-th unit vector with
``delta = lcm(q)``, pushed into ``Z^n``.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, Sequence

from .cones import SMOOTH, ConeType2D, cone_eu
from .errors import NotIsolated, NotReduced, OracleMismatch, ToricError
from .hull import LatticePolytope, convex_hull, facet_area_sum, lattice_length
from .lattice import Point, saturated_chart
from .surface import DualDegreeReport, surface_dual_degree
from .threefold import threefold_dual_degree

SMOOTH_CLASS = "smooth"
ISOLATED = "isolated"
POSITIVE_DIMENSIONAL = "positive-dimensional"


@dataclass(frozen=True)
class Weights:
    """Reduced weights of a weighted projective plane or 3-space."""

    q: tuple[int, ...]

    def __post_init__(self):
        if len(self.q) not in (3, 4):
            raise ToricError("weights must have length 3 or 4")
        if not is_reduced(self.q):
            raise NotReduced(f"weights {self.q} are not reduced")

    @property
    def dim(self) -> int:
        return len(self.q) - 1

    def __iter__(self):
        return iter(self.q)


def _gcd_except(q: Sequence[int], i: int) -> int:
    return gcd(*(x for j, x in enumerate(q) if j != i))


def is_reduced(q: Sequence[int]) -> bool:
    """Every subset obtained by dropping one weight has gcd one."""
    q = tuple(q)
    if len(q) < 2 or any(x < 1 for x in q):
        return False
    return all(_gcd_except(q, i) == 1 for i in range(len(q)))


def reduce_weights(q: Sequence[int]) -> Weights:
    """Reduced weights defining an isomorphic weighted projective space.

    Divides by the overall gcd, then repeatedly divides the weights other
    than ``q_i`` by their common gcd until nothing changes.
    """
    q = [int(x) for x in q]
    if not q or any(x < 1 for x in q):
        raise ToricError("weights must be positive integers")
    g = gcd(*q)
    q = [x // g for x in q]
    changed = True
    while changed:
        changed = False
        for i in range(len(q)):
            g = _gcd_except(q, i)
            if g > 1:
                q = [x if j == i else x // g for j, x in enumerate(q)]
                changed = True
    return Weights(tuple(q))


def _as_weights(w) -> Weights:
    if isinstance(w, Weights):
        return w
    q = tuple(int(x) for x in w)
    if len(q) not in (3, 4) or any(x < 1 for x in q):
        raise ToricError("weights must be 3 or 4 positive integers")
    return Weights(q)


def wps_vertex_points(w) -> list[Point]:
    """Images of the simplex vertices in ``Z^n``, listed in weight order.

    A weight equal to one lets its coordinate be dropped; otherwise the
    hyperplane lattice is given coordinates by a saturated chart.
    """
    w = _as_weights(w)
    q = w.q
    delta = lcm(*q)
    n = len(q)
    pts = [tuple(delta // q[i] if j == i else 0 for j in range(n)) for i in range(n)]
    if 1 in q:
        i = q.index(1)
        return [p[:i] + p[i + 1:] for p in pts]
    chart = saturated_chart(pts)
    return [chart.int_coords(p) for p in pts]


def wps_polytope(w) -> LatticePolytope:
    """Simplex whose polarized toric variety is ``P(q)`` with ``O(lcm(q))``."""
    return convex_hull(wps_vertex_points(w))


def singular_locus_class(w) -> str:
    """``smooth``, ``isolated`` (pairwise coprime) or ``positive-dimensional``."""
    q = _as_weights(w).q
    if all(x == 1 for x in q):
        return SMOOTH_CLASS
    if all(gcd(a, b) == 1 for i, a in enumerate(q) for b in q[i + 1:]):
        return ISOLATED
    return POSITIVE_DIMENSIONAL


# ---------------------------------------------------------------------------
# weighted projective planes


def _solve_congruence(x: int, y: int, k: int) -> int:
    """Least ``a >= 0`` with ``x + a*y = 0 (mod k)``."""
    if k == 1:
        return 0
    if gcd(y, k) != 1:
        raise NotReduced(f"{x} + a*{y} = 0 (mod {k}) has no unique solution")
    return (-x * pow(y, -1, k)) % k


def _type(d: int, k: int) -> ConeType2D:
    return SMOOTH if d == 1 else ConeType2D(d, k % d)


def wps2_cone_params(k: int, m: int, n: int) -> tuple[tuple[int, int, int], tuple[ConeType2D, ...]]:
    """Least ``a, b, c >= 0`` with ``m+an = 0 (k)``, ``n+bk = 0 (m)``, ``k+cm = 0 (n)``.

    Also returns the ``M``-types ``(k, k-a)``, ``(m, m-b)``, ``(n, n-c)`` of the
    vertex cones in weight order.
    """
    Weights((k, m, n))
    a = _solve_congruence(m, n, k)
    b = _solve_congruence(n, k, m)
    c = _solve_congruence(k, m, n)
    return (a, b, c), (_type(k, k - a), _type(m, m - b), _type(n, n - c))


def wps2_dual_degree(k: int, m: int, n: int) -> int:
    """``3kmn - 2(k+m+n) + sum(2 - b)`` over the three vertex expansions."""
    _, types = wps2_cone_params(k, m, n)
    return 3 * k * m * n - 2 * (k + m + n) + sum(cone_eu(t) for t in types)


def wps2_closed_formulas(k: int, m: int, n: int) -> dict[str, int]:
    """Closed-form dual degrees of the families the triple belongs to.

    Keys: ``"2k"`` for ``(2j-1, 2j, 2j+1)``, ``"fibo"`` for ``(m, n, m+n)``,
    ``"odd-step"`` for ``(m-2, m, m+2)`` with ``m`` odd, and ``"m,n,m+2n"``
    with ``m`` odd.  The order of the weights does not matter; an empty
    dict means no family applies.
    """
    Weights((k, m, n))
    a, b, c = sorted((k, m, n))
    out = {}
    if b % 2 == 0 and a == b - 1 and c == b + 1:
        j = b // 2
        out["2k"] = 24 * j ** 3 - 20 * j + 3
    if c == a + b:
        out["fibo"] = 3 * a * b * c - 5 * c + 4
    if b % 2 == 1 and b > 1 and a == b - 2 and c == b + 2:
        out["odd-step"] = 3 * b ** 3 - 19 * b + 3
    for x, y in ((a, b), (b, a)):
        if x % 2 == 1 and c == x + 2 * y:
            v = 6 * x * y * y + 3 * x * x * y - 7 * y - Fraction(9, 2) * x + Fraction(5, 2)
            if v.denominator != 1:
                raise OracleMismatch(f"closed formula is not integral at {(k, m, n)}")
            out["m,n,m+2n"] = int(v)
            break
    return out


# ---------------------------------------------------------------------------
# weighted projective 3-spaces P(1, k, m, n)


@dataclass(frozen=True)
class Wps3ConeData:
    """Closed-form cone types of ``P(1, k, m, n)`` keyed by weight indices.

    ``facets`` maps ``(i, facet)`` with ``facet`` a sorted triple of weight
    indices to the ``M``-type of that facet's corner at vertex ``i``;
    ``edges`` maps sorted index pairs to the transverse cone type.
    """

    weights: tuple[int, int, int, int]
    facets: dict
    edges: dict


def _facet_f1(k: int, m: int, n: int) -> ConeType2D:
    g = gcd(n, k)
    h = gcd(m, k)
    kg = k // g
    c = 0 if kg == 1 else (-m * pow(n // g, -1, kg)) % kg
    d = k // (g * h)
    if (kg - c) % h:
        raise OracleMismatch(f"facet basis fails at {(k, m, n)}")
    return _type(d, (kg - c) // h)


def wps3_local_cone_data(w) -> Wps3ConeData:
    """Cone types at the vertices and edges of ``P(1, k, m, n)`` from the weights alone."""
    w = _as_weights(w)
    if w.dim != 3 or w.q[0] != 1:
        raise ToricError("expects weights (1, k, m, n)")
    q = w.q
    facets, edges = {}, {}
    for i in (1, 2, 3):
        j, l = i % 3 + 1, (i + 1) % 3 + 1
        k, m, n = q[i], q[j], q[l]
        gm, gn = gcd(m, k), gcd(n, k)
        facets[(i, tuple(sorted((0, i, j))))] = _type(k // gm, m // gm)
        facets[(i, tuple(sorted((0, i, l))))] = _type(k // gn, n // gn)
        facets[(i, (1, 2, 3))] = _facet_f1(k, m, n)
    for i in (1, 2, 3):
        edges[(0, i)] = SMOOTH
        for j in range(i + 1, 4):
            (l,) = {1, 2, 3} - {i, j}
            g = gcd(q[i], q[j])
            edges[(i, j)] = _type(g, q[l])
    return Wps3ConeData(q, facets, edges)


def wps3_isolated_closed_terms(w) -> tuple[int, int, int]:
    """``(Vol, A, E)`` of ``P(1, k, m, n)`` with pairwise coprime ``k, m, n``."""
    w = _as_weights(w)
    if w.dim != 3 or w.q[0] != 1:
        raise ToricError("expects weights (1, k, m, n)")
    _, k, m, n = w.q
    if singular_locus_class(w) == POSITIVE_DIMENSIONAL:
        raise NotIsolated(f"{w.q} has non-isolated singularities")
    vol = k * k * m * m * n * n
    area = k * m * n * (1 + k + m + n)
    edges = k + m + n + m * n + k * n + k * m
    return vol, area, edges


def _canonical(t: ConeType2D) -> tuple[int, int]:
    """Representative of a type up to exchanging the two rays."""
    if t.d == 1:
        return (1, 0)
    return (t.d, min(t.k, pow(t.k, -1, t.d)))


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class WpsReport:
    """Everything computed for one weighted projective space.

    ``vertex_eu`` and ``rsv`` are listed in weight order.  ``edge_eu`` is keyed
    by sorted weight-index pairs (3-folds only).
    """

    weights: Weights
    polytope: LatticePolytope = field(repr=False)
    singular_locus_class: str
    vertex_eu: tuple[int, ...]
    rsv: tuple[int, ...]
    edge_eu: dict
    degree: int
    defective: bool
    report: DualDegreeReport = field(repr=False, compare=False)


def wps_report(w) -> WpsReport:
    """Euler obstructions and dual degree, with closed-form cross-checks."""
    w = _as_weights(w)
    pts = wps_vertex_points(w)
    p = convex_hull(pts)
    idx = [p.index(x) for x in pts]
    cls = singular_locus_class(w)
    if w.dim == 2:
        rep = surface_dual_degree(p)
        t = rep.table
        eu = tuple(t.eu_vertices[(i,)] for i in idx)
        rsv = tuple(t.rsv[(i,)] for i in idx)
        deg2 = wps2_dual_degree(*w.q)
        if deg2 != rep.degree:
            raise OracleMismatch(f"{w.q}: polytope degree {rep.degree}, weight formula {deg2}")
        for name, v in wps2_closed_formulas(*w.q).items():
            if v != deg2:
                raise OracleMismatch(f"{w.q}: closed formula {name} gives {v}, expected {deg2}")
        _, types = wps2_cone_params(*w.q)
        for i, ct in zip(idx, types):
            if _canonical(ct) != _canonical(t.cone_types[(i,)]):
                raise OracleMismatch(f"{w.q}: vertex cone {t.cone_types[(i,)]} vs {ct}")
        return WpsReport(w, p, cls, eu, rsv, {}, rep.degree, rep.defective, rep)
    rep = threefold_dual_degree(p)
    t = rep.table
    eu = tuple(t.eu_vertices[(i,)] for i in idx)
    rsv = tuple(t.rsv[(i,)] for i in idx)
    pos = {v: a for a, v in enumerate(idx)}
    edge_eu = {tuple(sorted((pos[a], pos[b]))): e for (a, b), e in t.eu_edges.items()}
    if w.q[0] == 1:
        _check_cone_data(w, t, idx)
        if cls != POSITIVE_DIMENSIONAL:
            closed = wps3_isolated_closed_terms(w)
            lv = p.local_vertices
            geo = (p.volume, facet_area_sum(p), sum(lattice_length(lv[a], lv[b]) for a, b in p.edges))
            if closed != geo:
                raise OracleMismatch(f"{w.q}: closed terms {closed} vs polytope {geo}")
    return WpsReport(w, p, cls, eu, rsv, edge_eu, rep.degree, rep.defective, rep)


def _check_cone_data(w: Weights, table, idx: list[int]) -> None:
    data = wps3_local_cone_data(w)
    for (i, j), ct in data.edges.items():
        geo = table.edge_types[tuple(sorted((idx[i], idx[j])))]
        if _canonical(geo) != _canonical(ct):
            raise OracleMismatch(f"{w.q}: edge {(i, j)} is {geo}, closed form {ct}")
    for (i, f), ct in data.facets.items():
        geo = table.facet_cones[(idx[i], tuple(sorted(idx[x] for x in f)))]
        if _canonical(geo) != _canonical(ct):
            raise OracleMismatch(f"{w.q}: facet {f} at {i} is {geo}, closed form {ct}")


# ---------------------------------------------------------------------------
# scans


def worker_count() -> int:
    """Worker processes for sweeps, capped by ``TORIC_DUAL_THREADS``."""
    n = os.cpu_count() or 1
    cap = os.environ.get("TORIC_DUAL_THREADS")
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ToricError(f"TORIC_DUAL_THREADS={cap!r} is not an integer") from None
    return n


def parallel_map(fn: Callable, items: Iterable, workers: int | None = None) -> list:
    """``list(map(fn, items))`` over worker processes, order preserved."""
    items = list(items)
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def threefold_triples(bound: int, which: str = "all") -> list[tuple[int, int, int]]:
    """Sorted ``k <= m <= n <= bound`` with ``P(1, k, m, n)`` reduced.

    ``which`` is ``"isolated"`` (pairwise coprime), ``"non-isolated"`` or ``"all"``.
    """
    if which not in ("all", "isolated", "non-isolated"):
        raise ToricError(f"unknown filter {which!r}")
    out = []
    for k in range(1, bound + 1):
        for m in range(k, bound + 1):
            for n in range(m, bound + 1):
                if gcd(k, m, n) != 1:
                    continue
                iso = gcd(k, m) == gcd(k, n) == gcd(m, n) == 1
                if which == "all" or (which == "isolated") == iso:
                    out.append((k, m, n))
    return out


def appendix_row(kmn: Sequence[int]) -> tuple[int, ...]:
    """``(k, m, n, E1, E2, E3, R1, R2, R3)`` for ``P(1, k, m, n)``."""
    k, m, n = kmn
    r = wps_report((1, k, m, n))
    return (k, m, n) + r.vertex_eu[1:] + r.rsv[1:]


def appendix_table(bound: int, which: str, workers: int | None = None) -> list[tuple[int, ...]]:
    return parallel_map(appendix_row, threefold_triples(bound, which), workers)


TABLE_HEADER = "k m n E1 E2 E3 R1 R2 R3"


def format_table(rows: Iterable[Sequence[int]]) -> str:
    lines = [TABLE_HEADER] + [" ".join(str(x) for x in r) for r in rows]
    return "\n".join(lines) + "\n"


def is_cone_pattern(k: int, m: int, n: int) -> bool:
    """Whether ``P(1, k, m, n)`` (sorted) is ``P(1,1,1,l)``, ``P(1,1,m,lm)`` or ``P(1,k,m,km)``."""
    return (k == 1 and n % m == 0) or n == k * m


@dataclass(frozen=True)
class ScanReport:
    """Defective tuples with their cone classification, and singular tuples with Eu = 1 everywhere."""

    bound: int
    defective: tuple[tuple[tuple[int, int, int], bool], ...]
    eu_one_singular: tuple[tuple[int, int, int], ...]


def _scan_one(kmn: tuple[int, int, int]) -> tuple[bool, bool]:
    r = wps_report((1,) + tuple(kmn))
    eu_one = all(e == 1 for e in r.vertex_eu) and all(e == 1 for e in r.edge_eu.values())
    return r.defective, eu_one and r.singular_locus_class != SMOOTH_CLASS


def defectivity_and_conjecture_scan(bound: int, workers: int | None = None) -> ScanReport:
    """Scan ``P(1, k, m, n)`` with ``k <= m <= n <= bound``."""
    if bound < 1:
        raise ToricError("bound must be at least 1")
    triples = threefold_triples(bound)
    res = parallel_map(_scan_one, triples, workers)
    defective = tuple((t, is_cone_pattern(*t)) for t, (d, _) in zip(triples, res) if d)
    eu_one = tuple(t for t, (_, e) in zip(triples, res) if e)
    return ScanReport(bound, defective, eu_one)
