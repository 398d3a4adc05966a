from __future__ import annotations

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from qre.coeff import ScalarField
from qre.linalg import Echelon, LinAlgError, Matrix, nullspace, rank, solve_affine

F = ScalarField(("q",))
q = F.q

small = st.integers(-3, 3)
matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def _rows(M):
    return [{j: F(v) for j, v in enumerate(row) if v} for row in M]


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_rank_agrees_with_sympy(M):
    assert rank(_rows(M)) == sp.Matrix(M).rank()


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_nullspace_vectors_solve_the_system(M):
    n = len(M[0])
    rows = _rows(M)
    basis = nullspace(rows, list(range(n)), F.one)
    assert len(basis) == n - sp.Matrix(M).rank()
    for vec in basis:
        for row in rows:
            total = F.zero
            for j, c in row.items():
                total = total + c * vec.get(j, F.zero)
            assert not total


def test_echelon_reports_dependence():
    ech = Echelon()
    assert ech.add({0: F.one, 1: q})
    assert not ech.add({0: q, 1: q * q})
    assert ech.contains({0: 2 * F.one, 1: 2 * q})
    assert len(ech) == 1


def test_solve_affine_with_symbolic_coefficients():
    # q x + y = 1, x - y = q
    eqs = [{"x": q, "y": F.one, None: -F.one}, {"x": F.one, "y": -F.one, None: -q}]
    part, homog = solve_affine(eqs, ["x", "y"], F.one)
    assert not homog
    x, y = part["x"], part["y"]
    assert q * x + y == F.one and x - y == q


def test_solve_affine_inconsistent():
    with pytest.raises(LinAlgError):
        solve_affine([{"x": F.one, None: F.one}, {"x": F.one}], ["x"], F.one)


def test_matrix_algebra():
    A = Matrix([[q, F.one], [F.zero, q.inv()]], F)
    B = Matrix([[q.inv(), -F.one], [F.zero, q]], F)
    assert A @ B == Matrix.identity(2, F)
    K = A.kron(Matrix.identity(2, F))
    assert K.shape == (4, 4)
    assert K.trace() == 2 * (q + q.inv())
    assert A.transpose().transpose() == A
    assert A.rank() == 2
