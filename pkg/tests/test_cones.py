import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_dual.cones import (
    SMOOTH,
    ConeType2D,
    boundary_fan,
    classify_cone,
    cone_eu,
    cone_rsv,
    dual_cone_type,
    fan_coefficients,
    hj_eval,
    hj_expand,
    hj_length_identity_check,
    is_gorenstein,
    is_smooth,
    resolution_data,
)
from toric_dual.errors import DegenerateCone, InvalidFraction
from toric_dual.hull import convex_hull
from toric_dual.lattice import Sublattice
from toric_dual.surface import _vertex_eu_pair
from toric_dual.wps import wps2_cone_params


def coprime_pairs(dmax):
    return [(d, k) for d in range(2, dmax + 1) for k in range(1, d) if gcd(d, k) == 1]


cone_types = st.integers(2, 200).flatmap(
    lambda d: st.integers(1, d - 1).filter(lambda k: gcd(d, k) == 1).map(lambda k: ConeType2D(d, k)))


# continued fractions --------------------------------------------------------------

def test_hj_examples():
    assert hj_expand(8, 5) == [2, 3, 2]
    assert hj_expand(7, 1) == [7]
    assert hj_expand(5, 2) == [3, 2]
    assert hj_expand(1, 1) == [1]
    assert hj_eval([2, 3, 2]) == (8, 5)
    assert hj_eval([6]) == (6, 1)
    for r in range(1, 10):
        assert hj_eval([2] * r) == (r + 1, r)


@pytest.mark.parametrize("d, k", [(6, 4), (3, 5), (4, 0), (0, 1)])
def test_hj_rejects(d, k):
    with pytest.raises(InvalidFraction):
        hj_expand(d, k)


def test_hj_eval_rejects():
    with pytest.raises(InvalidFraction):
        hj_eval([2, 1, 3])
    with pytest.raises(InvalidFraction):
        hj_eval([])


@settings(max_examples=300)
@given(cone_types)
def test_hj_roundtrip(t):
    e = hj_expand(t.d, t.k)
    assert all(b >= 2 for b in e)
    assert hj_eval(e) == (t.d, t.k)


def test_swap_reverses_expansion():
    for d, k in coprime_pairs(60):
        assert hj_expand(d, pow(k, -1, d)) == hj_expand(d, k)[::-1]


# cone types --------------------------------------------------------------------

def test_invalid_types():
    for d, k in [(4, 2), (3, 3), (0, 0), (2, -1)]:
        with pytest.raises(InvalidFraction):
            ConeType2D(d, k)


def test_classify_examples():
    assert classify_cone((1, 0), (0, 1))[0] == SMOOTH
    assert classify_cone((0, -1), (3, -2))[0] == ConeType2D(3, 2)
    with pytest.raises(DegenerateCone):
        classify_cone((1, 2), (-1, -2))


@pytest.mark.parametrize("j", range(1, 9))
def test_consecutive_weight_types(j):
    _, types = wps2_cone_params(2 * j - 1, 2 * j, 2 * j + 1)
    expected = (ConeType2D(2 * j - 1, j) if j > 1 else SMOOTH, ConeType2D(2 * j, 2 * j - 1), ConeType2D(2 * j + 1, 2))
    assert types == expected


@settings(max_examples=300)
@given(st.tuples(st.integers(-20, 20), st.integers(-20, 20)), st.tuples(st.integers(-20, 20), st.integers(-20, 20)))
def test_classify_basis_and_swap(u, w):
    if gcd(*u) != 1 or gcd(*w) != 1 or u[0] * w[1] == u[1] * w[0]:
        return
    t, (e1, e2) = classify_cone(u, w)
    assert e1 == u
    assert abs(e1[0] * e2[1] - e1[1] * e2[0]) == 1
    assert tuple(t.k * a + t.d * b for a, b in zip(e1, e2)) == tuple(w)
    s, _ = classify_cone(w, u)
    assert s.d == t.d and (s.k * t.k) % t.d == (1 % t.d)
    assert cone_eu(s) == cone_eu(t) and cone_rsv(s) == cone_rsv(t)


def test_classify_in_sublattice():
    lat = Sublattice(3, ((1, 0, 0), (0, 1, 1)))
    t, basis = classify_cone((1, 0, 0), (1, 3, 3), lat)
    assert t == ConeType2D(3, 1)
    assert all(b in lat for b in basis)


def test_dual_type_examples():
    assert dual_cone_type(ConeType2D(8, 3)) == ConeType2D(8, 5)
    assert dual_cone_type(SMOOTH) == SMOOTH
    assert dual_cone_type(ConeType2D(5, 2)) == ConeType2D(5, 3)


@given(cone_types)
def test_dual_involution(t):
    assert dual_cone_type(dual_cone_type(t)) == t


# boundary fans and resolutions ---------------------------------------------------------

def test_boundary_fan_example():
    fan = boundary_fan(ConeType2D(8, 3))
    assert fan == [(1, 0), (1, 1), (1, 2), (2, 5), (3, 8)]
    assert fan_coefficients(fan) == [2, 3, 2]
    assert boundary_fan(SMOOTH) == [(1, 0), (0, 1)]
    for d in range(2, 12):
        assert len(boundary_fan(ConeType2D(d, 1))) - 2 == d - 1


def test_boundary_fan_recurrence():
    for d, k in coprime_pairs(200):
        fan = boundary_fan(ConeType2D(d, k))
        for a, b in zip(fan, fan[1:]):
            assert abs(a[0] * b[1] - a[1] * b[0]) == 1
        bs = fan_coefficients(fan)
        # the fan of the (d,k) cone runs through the expansion of d/(d-k)
        assert bs == hj_expand(d, d - k)


def test_resolution_examples():
    assert resolution_data(ConeType2D(8, 3)) == [-2, -3, -2]
    assert resolution_data(SMOOTH) == []
    for d in range(2, 10):
        assert resolution_data(ConeType2D(d, 1)) == [-2] * (d - 1)
        assert resolution_data(ConeType2D(d, d - 1)) == [-d]


def test_eu_rsv_examples():
    assert (cone_eu(ConeType2D(2, 1)), cone_rsv(ConeType2D(2, 1))) == (0, 2)
    assert (cone_eu(SMOOTH), cone_rsv(SMOOTH)) == (1, 1)
    assert (cone_eu(ConeType2D(3, 2)), cone_rsv(ConeType2D(3, 2))) == (0, 2)


def test_gorenstein_and_smooth():
    assert is_gorenstein(ConeType2D(3, 1))
    assert is_smooth(SMOOTH) and not is_gorenstein(SMOOTH)
    t = ConeType2D(5, 2)
    assert not is_smooth(t) and not is_gorenstein(t)


def _eu_by_count(t):
    """1 minus the number of lattice points strictly inside the compact boundary."""
    return 1 - (len(boundary_fan(t)) - 2)


@settings(max_examples=200)
@given(cone_types)
def test_eu_two_ways_on_types(t):
    assert cone_eu(t) == _eu_by_count(t)
    # N-type (d,1) is exactly the case Eu = 0
    assert (cone_eu(t) == 0) == is_gorenstein(dual_cone_type(t))


def test_eu_two_ways_random_cones():
    """Boundary-point count on the actual cone versus the continued fraction of its type."""
    rng = random.Random(3)
    done = 0
    while done < 500:
        u = (rng.randint(-15, 15), rng.randint(-15, 15))
        w = (rng.randint(-15, 15), rng.randint(-15, 15))
        if gcd(*u) != 1 or gcd(*w) != 1 or u[0] * w[1] - u[1] * w[0] <= 0:
            continue
        p = convex_hull([(0, 0), u, w])
        i = p.index((0, 0))
        by_area, by_count = _vertex_eu_pair(p, i)
        t, _ = classify_cone(u, w)
        assert by_area == by_count == cone_eu(t) == sum(2 - b for b in hj_expand(t.d, t.k if t.d > 1 else 1))
        done += 1


# length identity ---------------------------------------------------------------------

@pytest.mark.parametrize("d, k", [(8, 3), (5, 1), (7, 3)])
def test_length_identity_examples(d, k):
    assert hj_length_identity_check(d, k)


@settings(max_examples=300)
@given(cone_types)
def test_length_identity_property(t):
    assert hj_length_identity_check(t.d, t.k)
