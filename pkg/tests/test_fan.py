from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given, settings, strategies as st

from tropgenus.errors import CertificateError, ConventionError
from tropgenus.matroid import column_matroid, uniform_matroid
from tropgenus.tropical import bergman_fan, normalize, reflect_translate, translate
from tropgenus.tropical.fan import same_support_cones


def circuits(m):
    """Minimal dependent sets straight from the rank table."""
    n = m.ground_size
    dep = [s for s in range(1, 1 << n) if m.rank_of(s) < bin(s).count("1")]
    return [s for s in dep if not any(t != s and t & s == t for t in dep)]


def in_bergman(m, x):
    """min over every circuit attained at least twice"""
    for c in circuits(m):
        vals = [x[i] for i in range(m.ground_size) if c >> i & 1]
        if vals.count(min(vals)) < 2:
            return False
    return True


def interior_point(cone):
    p = list(cone.apex)
    for k, ray in enumerate(cone.rays):
        p = [a + (k + 1) * b for a, b in zip(p, ray)]
    return tuple(p)


def test_tropical_line_has_three_rays():
    f = bergman_fan(uniform_matroid(2, 3), expected_dim=1)
    assert f.dim == 1
    assert sorted(c.rays[0] for c in f.maximal_cones()) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert len(f.cones) == 4  # apex plus three rays


def test_u34_counts():
    f = bergman_fan(uniform_matroid(3, 4))
    assert sum(1 for c in f.cones if c.dim == 1) == 10
    assert len(f.maximal_cones()) == 12


def test_u22_is_the_whole_line():
    f = bergman_fan(uniform_matroid(2, 2))
    rays = sorted(c.rays[0] for c in f.maximal_cones())
    assert rays == [(0, 1), (1, 0)]
    # e_0 = -e_1 modulo the all-ones line
    assert normalize(rays[0]) == tuple(-x for x in normalize(rays[1]))


def test_loops_rejected():
    m = column_matroid([[1, 0, 0]])
    with pytest.raises(CertificateError):
        bergman_fan(m)


def test_dimension_mismatch_is_a_convention_error():
    with pytest.raises(ConventionError):
        bergman_fan(uniform_matroid(3, 4), expected_dim=1)


def test_reflect_twice_is_identity():
    f = bergman_fan(uniform_matroid(2, 3))
    w = (0, 5, -2)
    back = reflect_translate(reflect_translate(f, w), w)
    assert back.sign == 1 and back.apex == f.apex
    assert same_support_cones(back, f)


def test_translate_moves_apex():
    f = translate(bergman_fan(uniform_matroid(2, 3)), (1, 2, 3))
    assert f.apex == (0, 1, 2)
    assert all(c.apex == (0, 1, 2) for c in f.cones)


def test_point_off_the_fan():
    m = uniform_matroid(2, 4)
    assert not in_bergman(m, (2, 1, 0, 0))
    assert in_bergman(m, (2, 0, 0, 0))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(1, n),
    st.lists(st.integers(-2, 2), min_size=n * n, max_size=n * n))))
def test_cones_lie_in_the_circuit_description(data):
    n, k, entries = data
    m = column_matroid([entries[i * n:(i + 1) * n] for i in range(k)], n)
    assume(not m.loops() and m.rank >= 1)
    f = bergman_fan(m)
    assert all(c.dim <= f.dim for c in f.cones)
    for c in f.maximal_cones():
        assert c.dim == m.rank - 1
        assert in_bergman(m, interior_point(c))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=4, max_size=4))
def test_u34_membership_matches_cones(x):
    # every point of R^4 with a repeated minimum lies on some cone of B(U34)
    m = uniform_matroid(3, 4)
    f = bergman_fan(m)
    x = normalize(x)
    inside = in_bergman(m, x)
    lo = min(x)
    top = [i for i in range(4) if x[i] > lo]
    assert inside == (len(top) <= 2)
    if inside:
        # x = lo + sum over the distinct values of indicator steps: a chain of flats
        levels = sorted({x[i] for i in top}, reverse=True)
        chain = [sum(1 << i for i in top if x[i] >= v) for v in levels]
        assert any(tuple(c.chain) == tuple(chain) for c in f.cones)
