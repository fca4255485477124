from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog
from sympy.matrices.normalforms import smith_normal_form

from tropgenus.linalg import (integer_rank, lattice_index_mod_ones, nullspace, primitive_mod_ones,
                              rank, row_echelon, smith_invariants, solve_affine,
                              strict_feasible_point)

int_matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(int_matrices)
def test_rank_matches_sympy(m):
    expected = sympy.Matrix(m).rank()
    assert rank(m) == expected
    assert integer_rank(m) == expected
    assert rank([[Fraction(x) for x in row] for row in m]) == expected


@settings(max_examples=80, deadline=None)
@given(int_matrices)
def test_smith_matches_sympy(m):
    snf = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert smith_invariants(m) == sorted(diag)


@settings(max_examples=60, deadline=None)
@given(int_matrices)
def test_nullspace_is_kernel(m):
    ncols = len(m[0])
    basis = nullspace(m, ncols)
    assert len(basis) == ncols - rank(m)
    for z in basis:
        assert all(sum(a * b for a, b in zip(row, z)) == 0 for row in m)


def test_row_echelon_pivots():
    red, piv = row_echelon([[2, 4], [1, 2]])
    assert piv == [0] and red == [[1, 2]]


def test_solve_affine():
    z0, null = solve_affine([[1, 0], [0, 1], [1, 1]], [2, 3])
    assert [z0[0] + z0[2], z0[1] + z0[2]] == [2, 3]
    assert len(null) == 1
    assert solve_affine([[1, 1]], [1, 2]) is None


@pytest.mark.parametrize("vecs, dim, idx", [
    ([[1, 0, 0], [0, 1, 0]], 3, 1),
    ([[2, 0, 0], [0, 1, 0]], 3, 2),
    ([[1, 0, 0]], 3, 0),
    ([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]], 4, 0),
    ([[1, 1, 0, 0], [0, 1, 1, 0], [1, 0, 1, 0]], 4, 2),
])
def test_lattice_index_mod_ones(vecs, dim, idx):
    assert lattice_index_mod_ones(vecs, dim) == idx


@pytest.mark.parametrize("v, out", [((3, 5, 7), (0, 1, 2)), ((-1, 1, 1), (0, 1, 1)),
                                    ((2, 2), (0, 0))])
def test_primitive_mod_ones(v, out):
    assert primitive_mod_ones(v) == out


def lp_strictly_feasible(ineqs, n):
    """Max eps s.t. a.s + b >= eps, eps <= 1; strictly feasible iff optimum > 0."""
    if n == 0:
        return all(b > 0 for _, b in ineqs)
    a_ub = [[-float(x) for x in a] + [1.0] for a, _ in ineqs]
    b_ub = [float(b) for _, b in ineqs]
    res = linprog([0.0] * n + [-1.0], A_ub=np.array(a_ub), b_ub=np.array(b_ub),
                  bounds=[(None, None)] * n + [(None, 1.0)])
    return res.status == 0 and -res.fun > 1e-9


systems = st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), st.lists(
    st.tuples(st.lists(st.integers(-3, 3), min_size=n, max_size=n), st.integers(-4, 4)),
    min_size=1, max_size=7)))


@settings(max_examples=150, deadline=None)
@given(systems)
def test_strict_feasibility_against_lp(sys_):
    n, ineqs = sys_
    pt = strict_feasible_point(ineqs, n)
    if pt is not None:
        assert all(sum(x * y for x, y in zip(a, pt)) + b > 0 for a, b in ineqs)
    assert (pt is not None) == lp_strictly_feasible(ineqs, n)
