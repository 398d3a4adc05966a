from __future__ import annotations

from math import comb
from pathlib import Path

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

import oracles
from qre.hecke import (RMatrixParseError, antisymmetrizer, check_braid, check_hecke, flip,
                       format_rmatrix, hecke_rank, load_rmatrix, make_symmetry, parse_rmatrix,
                       poincare_minus, projector_rank, standard_r, symmetrizer)
from qre.linalg import Matrix

DATA = Path(__file__).resolve().parents[1] / "src" / "qre" / "data"


@pytest.mark.parametrize("n", [2, 3])
def test_standard_r_matches_textbook_formula(n):
    R = standard_r(n)
    T = oracles.textbook_r(n)
    for i in range(n * n):
        for j in range(n * n):
            assert sp.simplify(oracles.to_sympy(R.matrix[i, j]) - T[i, j]) == 0


@pytest.mark.parametrize("n", [2, 3])
def test_braid_and_hecke(n):
    R = standard_r(n)
    assert check_braid(R).ok and check_hecke(R).ok
    assert oracles.braid_and_hecke(oracles.textbook_r(n), n) == (True, True)


def test_poincare_and_rank(R2, R3):
    assert poincare_minus(R2, 3) == [1, 2, 1, 0]
    assert poincare_minus(R3, 4) == [1, 3, 3, 1, 0]
    assert hecke_rank(R2) == 2 and hecke_rank(R3) == 3
    # the oracle counts the joint (-1/q)-eigenspace at q = 3 directly
    assert oracles.antisymmetrizer_ranks(2) == [1, 2, 1, 0]
    assert oracles.antisymmetrizer_ranks(3) == [1, 3, 3, 1, 0]


@pytest.mark.parametrize("n,k", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_projectors(n, k):
    R = standard_r(n)
    Pp, Pm = symmetrizer(R, k), antisymmetrizer(R, k)
    assert Pp @ Pp == Pp and Pm @ Pm == Pm
    assert (Pp @ Pm).is_zero()
    assert projector_rank(Pp) == comb(n + k - 1, k)
    assert projector_rank(Pm) == comb(n, k)


def test_flip_is_braid_but_not_hecke():
    R = make_symmetry(flip(2))
    assert check_braid(R).ok
    res = check_hecke(R)
    assert not res.ok and res.witness is not None
    assert not R.validated()


def test_shipped_rmatrix_files():
    R = load_rmatrix(DATA / "standard_r2.rm")
    assert R.matrix == standard_r(2).matrix and R.validated()
    bad = load_rmatrix(DATA / "flip2.rm")
    assert not check_hecke(bad).ok


def test_rmatrix_round_trip():
    R = standard_r(3)
    assert parse_rmatrix(format_rmatrix(R)).matrix == R.matrix


@pytest.mark.parametrize("text", [
    "0 0 = q\n",
    "n = 2\n0 0 = q +\n",
    "n = 2\n9 0 = 1\n",
    "n = x\n",
    "n = 2\nwhat\n",
])
def test_rmatrix_parse_errors(text):
    with pytest.raises(RMatrixParseError):
        parse_rmatrix(text)


@given(st.integers(-3, 3))
@settings(max_examples=15, deadline=None)
def test_gauge_conjugation_preserves_hecke_and_braid(b):
    R = standard_r(2)
    F = R.field
    G = Matrix([[F.one, F(b)], [F.zero, F.one]], F)
    Gi = Matrix([[F.one, F(-b)], [F.zero, F.one]], F)
    M = G.kron(G) @ R.matrix @ Gi.kron(Gi)
    S = make_symmetry(M, 2)
    assert check_braid(S).ok and check_hecke(S).ok
    assert poincare_minus(S, 3) == [1, 2, 1, 0]
