import json
from fractions import Fraction

import pytest

from tropgenus.errors import CertificateError, DisconnectedCurveError
from tropgenus.tropical import betti_numbers, check_balancing, check_smoothness, genus
from tropgenus.tropical.curve import OneCell, assemble, components, project


def P(x, y):
    # the plane R^2 sits in R^3 / R(1,1,1) as (0, x, y)
    return (Fraction(0), Fraction(x), Fraction(y))


def D(x, y):
    return (0, x, y)


def star(center, dirs, weights=None):
    weights = weights or [1] * len(dirs)
    return [OneCell(center, None, D(*d), wt, center) for d, wt in zip(dirs, weights)]


def test_line_star():
    o = P(0, 0)
    c = assemble(3, {o: 0}, star(o, [(1, 0), (0, 1), (-1, -1)]))
    assert check_balancing(c) and check_smoothness(c)
    assert genus(c).genus == 0


def test_balanced_but_not_smooth():
    o = P(0, 0)
    c = assemble(3, {o: 0}, star(o, [(1, 2), (1, -1), (-2, -1)]))
    assert check_balancing(c)
    assert not check_smoothness(c)


def test_weight_two_is_not_smooth():
    o = P(0, 0)
    c = assemble(3, {o: 0}, star(o, [(1, 0), (-1, 0)], [2, 2]), merge=False)
    assert check_balancing(c).balanced
    assert not check_smoothness(c)


def test_unbalanced_vertex():
    o = P(0, 0)
    rep = check_balancing(assemble(3, {o: 0}, star(o, [(1, 0), (0, 1)])))
    assert not rep.balanced and rep.failures


def test_opposite_pair_is_degenerate():
    o = P(0, 0)
    c = assemble(3, {o: 0}, star(o, [(1, 0), (-1, 0)]), merge=False)
    rep = check_balancing(c)
    assert rep.balanced and rep.degenerate == [0]


def test_four_valent_vertex_with_balanced_pair_fails_lemma():
    o = P(0, 0)
    c = assemble(3, {o: 0}, star(o, [(1, 0), (-1, 0), (0, 1), (0, -1)]))
    rep = check_balancing(c)
    assert rep.balanced and not rep.lemma_ok


def triangle_cells():
    a, b, c = P(0, 0), P(1, 0), P(0, 1)
    cells = [OneCell(a, b, D(1, 0), 1, P(Fraction(1, 2), 0)),
             OneCell(b, c, D(-1, 1), 1, P(Fraction(1, 2), Fraction(1, 2))),
             OneCell(c, a, D(0, -1), 1, P(0, Fraction(1, 2)))]
    cells += star(a, [(-1, -1)]) + star(b, [(2, -1)]) + star(c, [(-1, 2)])
    return {a: 0, b: 0, c: 0}, cells


def test_triangle_has_genus_one():
    pts, cells = triangle_cells()
    c = assemble(3, pts, cells)
    rep = genus(c)
    assert rep.genus == 1 and rep.euler_genus == 1
    assert rep.smooth and rep.balanced
    assert (rep.vertex_count, rep.bounded_edge_count, rep.unbounded_edge_count) == (3, 3, 3)
    assert betti_numbers(c) == (1, 1)


def test_canonical_form_ignores_order():
    pts, cells = triangle_cells()
    a = assemble(3, pts, cells)
    b = assemble(3, dict(reversed(list(pts.items()))), cells[::-1])
    assert a.same_as(b) and a.digest() == b.digest()


def test_reflection_twice():
    pts, cells = triangle_cells()
    c = assemble(3, pts, cells)
    w = (0, 3, -7)
    assert c.reflected(w).reflected(w).same_as(c)
    assert not c.reflected(w).same_as(c)


def test_disconnected_curve_raises():
    o, q = P(0, 0), P(5, 5)
    cells = star(o, [(1, 0), (0, 1), (-1, -1)]) + star(q, [(1, 0), (0, 1), (-1, -1)])
    c = assemble(3, {o: 0, q: 0}, cells)
    assert components(c) == 2
    with pytest.raises(DisconnectedCurveError, match="unexpected disconnected tropical curve"):
        genus(c)


def test_straight_vertex_is_merged():
    a, m, b = P(0, 0), P(1, 0), P(2, 0)
    cells = [OneCell(a, m, D(1, 0), 1, P(Fraction(1, 2), 0)),
             OneCell(m, b, D(1, 0), 1, P(Fraction(3, 2), 0))]
    cells += star(a, [(-1, 1), (0, -1)]) + star(b, [(0, 1), (1, -1)])
    c = assemble(3, {a: 0, m: 0, b: 0}, cells)
    assert len(c.vertices) == 2 and len(c.bounded_edges) == 1
    assert c.fine_size == (3, 6)
    assert genus(c).genus == 0


def test_lone_line_after_merging():
    o = P(0, 0)
    c = assemble(3, {o: 0}, star(o, [(1, 1), (-1, -1)]))
    assert not c.vertices and [e.kind for e in c.edges] == ["line"]
    assert genus(c).genus == 0


def test_endpoint_must_be_a_point():
    with pytest.raises(CertificateError):
        assemble(3, {}, [OneCell(P(0, 0), None, D(1, 0), 1, P(0, 0))])


def test_json_export():
    pts, cells = triangle_cells()
    c = assemble(3, pts, cells)
    d = json.loads(c.to_json(projection=2, genus=1))
    assert d["genus"] == 1 and d["ambient_dim"] == 3
    assert len(d["vertices"]) == 3 and len(d["edges"]) == 6
    assert sum(e["bounded"] for e in d["edges"]) == 3
    assert len(d["projection"]["vertices"][0]) == 2


def test_projection_kills_the_ones_direction():
    assert project((1, 1, 1, 1), 3) == pytest.approx([0, 0, 0])
    a, b = project((0, 1, 5), 2), project((2, 3, 7), 2)
    assert a == pytest.approx(b)
