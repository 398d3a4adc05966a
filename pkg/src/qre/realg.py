"""The reflection equation algebra, its linear deformation, the quantum trace
and the Cayley-Hamilton identity.

The generator matrix is L[i][j] = l_i^j (row i, column j) and L_1 = L (x) id
acts on the first tensor slot: (L_1)_{(ij),(km)} = L[i][k] * delta_{jm}.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Sequence

from .coeff import QScalar, ScalarField, classical_limit
from .hecke import HeckeSymmetry, hecke_rank
from .linalg import Echelon, LinAlgError, Matrix, nullspace, solve_affine
from .ncalg import (AlgMatrix, FreeAlgebra, NCPoly, Presentation, RewriteSystem,
                    complete_to_degree, mat_poly, tensor_identity)


class NoSolution(ArithmeticError):
    pass


class SolutionNotUnique(ArithmeticError):
    pass


def gen_name(i: int, j: int, prefix: str = "l") -> str:
    return f"{prefix}{i + 1}{j + 1}"


def default_order(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n)]


def free_system(alg: FreeAlgebra) -> RewriteSystem:
    """Rewriting system without rules: arithmetic in the free algebra."""
    rs = RewriteSystem(alg, 0)
    rs.confluent_all = True
    return rs


def coerce_matrix(M: Matrix, field: ScalarField) -> Matrix:
    if M.field is field:
        return M
    return Matrix([[field.coerce(a) for a in row] for row in M.rows], field)


def generator_matrix(rs: RewriteSystem, n: int, prefix: str = "l") -> AlgMatrix:
    alg = rs.alg
    return AlgMatrix(rs, [[alg.gen(gen_name(i, j, prefix)) for j in range(n)] for i in range(n)],
                     reduce=False)


def re_relation_matrix(R: Matrix, L: AlgMatrix, n: int, hbar=None) -> AlgMatrix:
    """R L1 R L1 - L1 R L1 R (minus hbar (R L1 - L1 R) when hbar is given)."""
    L1 = tensor_identity(L, n, slot=1)
    RL1 = L1.__rmatmul__(R)
    L1R = L1 @ R
    out = RL1 @ RL1 - L1R @ L1R
    if hbar is not None:
        out = out - (RL1 - L1R).scale(hbar)
    return out


def dedup_relations(alg: FreeAlgebra, polys) -> list[NCPoly]:
    ech = Echelon(key=alg.key)
    for p in polys:
        ech.add(p.terms)
    return [NCPoly(alg, row) for row in ech.rows()]


@dataclass
class REAlgebra:
    R: HeckeSymmetry
    presentation: Presentation
    rs: RewriteSystem
    L: AlgMatrix
    n: int
    hbar: object = None
    raw_relation_count: int = 0

    @property
    def alg(self) -> FreeAlgebra:
        return self.presentation.alg

    @property
    def field(self) -> ScalarField:
        return self.alg.field

    def gen(self, i: int, j: int) -> NCPoly:
        return self.alg.gen(gen_name(i, j))


def _re_algebra(R: HeckeSymmetry, degree: int, field: ScalarField, hbar, order, name) -> REAlgebra:
    R.require_valid()
    n = R.n
    order = list(order or default_order(n))
    alg = FreeAlgebra([gen_name(i, j) for i, j in order], field)
    free = free_system(alg)
    Rm = coerce_matrix(R.matrix, field)
    rel = re_relation_matrix(Rm, generator_matrix(free, n), n, hbar)
    raw = [e for row in rel.entries for e in row if e]
    pres = Presentation(alg, dedup_relations(alg, raw), name=name, degree=degree)
    rs = complete_to_degree(pres, degree)
    return REAlgebra(R, pres, rs, generator_matrix(rs, n), n, hbar, len(raw))


def build_re_presentation(R: HeckeSymmetry, degree: int = 6, *, field: ScalarField | None = None,
                          order: Sequence[tuple[int, int]] | None = None) -> REAlgebra:
    return _re_algebra(R, degree, field or R.field, None, order, "RE")


def build_reh_presentation(R: HeckeSymmetry, hbar, degree: int = 6, *,
                           order: Sequence[tuple[int, int]] | None = None) -> REAlgebra:
    """Quadratic-linear deformation R L1 R L1 - L1 R L1 R = hbar (R L1 - L1 R)."""
    field = hbar.field if isinstance(hbar, QScalar) else R.field
    hbar = field(hbar)
    return _re_algebra(R, degree, field, hbar, order, "REh")


def symmetric_dims(n_gens: int, dmax: int) -> list[int]:
    return [comb(n_gens + d - 1, d) for d in range(dmax + 1)]


def check_flatness(A: REAlgebra, Dmax: int) -> dict:
    """Compare graded (or, for the deformed algebra, filtered) dims with the classical oracle."""
    n2 = A.n * A.n
    expected = symmetric_dims(n2, Dmax)
    if A.hbar is not None and A.hbar:
        got = [A.rs.filtered_dimension(d) for d in range(Dmax + 1)]
        expected = [sum(expected[:d + 1]) for d in range(Dmax + 1)]
        kind = "filtered"
    else:
        got = [A.rs.graded_dimension(d) for d in range(Dmax + 1)]
        kind = "graded"
    mismatches = [d for d in range(Dmax + 1) if got[d] != expected[d]]
    return {"kind": kind, "dims": got, "expected": expected, "mismatches": mismatches,
            "ok": not mismatches}


# -- quantum trace -------------------------------------------------------------

@dataclass
class TraceForm:
    D: list  # diagonal entries
    normalization: str = "d_1 = 1 (classical limit is the identity)"

    def element(self, A: REAlgebra) -> NCPoly:
        out = A.alg.zero()
        for i, d in enumerate(self.D):
            out = out + A.gen(i, i).scale(d)
        return out


def commutator_nf(rs: RewriteSystem, a: NCPoly, b: NCPoly) -> NCPoly:
    return rs.normal_form(a * b - b * a)


def is_central(rs: RewriteSystem, x: NCPoly) -> tuple[bool, object]:
    for g in rs.alg.gens():
        c = commutator_nf(rs, x, g)
        if c:
            return False, (rs.alg.word_str(g.leading_word()), str(c))
    return True, None


def quantum_trace_matrix(A: REAlgebra) -> TraceForm:
    """Solve for diagonal D with Tr(D L) central; normalized so that d_1 = 1."""
    n = A.n
    unknowns = list(range(n))
    eqs: dict = {}
    for g in A.alg.gens():
        for i in unknowns:
            c = commutator_nf(A.rs, A.gen(i, i), g)
            for w, coef in c.terms.items():
                eqs.setdefault((g.leading_word(), w), {})[i] = coef
    basis = nullspace(eqs.values(), unknowns, A.field.one)
    if not basis:
        raise NoSolution("no central quantum trace")
    if len(basis) > 1:
        raise SolutionNotUnique(f"{len(basis)}-dimensional family of trace forms")
    vec = basis[0]
    d0 = vec.get(0)
    if not d0:
        raise NoSolution("trace form with vanishing first entry")
    D = [vec.get(i, A.field.zero) / d0 for i in unknowns]
    return TraceForm(D)


def trace_element(A: REAlgebra, D: Sequence) -> NCPoly:
    return TraceForm(list(D)).element(A)


# -- Cayley-Hamilton -------------------------------------------------------------

@dataclass
class CHData:
    p: int
    sigma: list  # sigma[0] = 1, ..., sigma[p]
    side: str = "left"
    central: list = dc_field(default_factory=list)
    verified: bool = False

    def coefficients(self) -> list:
        """Coefficients c_i of sum_i c_i L^i = 0, i.e. (-1)^(p-i) sigma(p-i)."""
        p = self.p
        return [self.sigma[p - i].scale((-1) ** (p - i)) for i in range(p + 1)]


def _gl_weight(alg: FreeAlgebra, word, n: int) -> tuple:
    wt = [0] * n
    for g in word:
        name = alg.names[g]
        i, j = int(name[-2]) - 1, int(name[-1]) - 1
        wt[i] += 1
        wt[j] -= 1
    return tuple(wt)


def ch_coefficients(A: REAlgebra, p: int | None = None, *, weight_zero: bool | None = None,
                    filtered: bool = False) -> CHData:
    """Solve sum_i (-L)^i sigma(p-i) = 0 for sigma(1..p), sigma(k) of degree k.

    With ``filtered`` (the deformed algebra) sigma(k) ranges over all normal
    words of weight <= k.  ``weight_zero`` restricts unknowns to words of zero
    gl(n)-weight (the standard symmetry preserves weights).
    """
    n = A.n
    rs = A.rs
    alg = A.alg
    p = p if p is not None else hecke_rank(A.R)
    if weight_zero is None:
        weight_zero = n >= 3
    words = rs.normal_words(p)
    unknowns = []
    for k in range(1, p + 1):
        for w in words:
            wk = alg.weight(w)
            if (wk == k or (filtered and wk < k)) and not (
                    weight_zero and any(_gl_weight(alg, w, n))):
                unknowns.append((k, w))
    one = A.field.one
    powers = [AlgMatrix.identity(rs, n)]
    for _ in range(p):
        powers.append(powers[-1] @ A.L)
    # sum_i (-1)^i L^i sigma(p-i): constant part from i = p, unknown parts from i < p
    eqs: dict = {}
    sign_p = (-1) ** p
    for r in range(n):
        for c in range(n):
            for w, coef in powers[p][r, c].terms.items():
                eqs.setdefault((r, c, w), {})[None] = coef * sign_p
    for idx, (k, w) in enumerate(unknowns):
        i = p - k
        sign = (-1) ** i
        wpoly = NCPoly(alg, {w: one})
        for r in range(n):
            for c in range(n):
                e = powers[i][r, c]
                if not e:
                    continue
                prod = rs.multiply(wpoly, e)
                for w2, coef in prod.terms.items():
                    eqs.setdefault((r, c, w2), {})[idx] = coef * sign
    try:
        part, homog = solve_affine(eqs.values(), list(range(len(unknowns))), one)
    except LinAlgError:
        raise NoSolution("Cayley-Hamilton system is inconsistent") from None
    if homog:
        raise SolutionNotUnique(f"{len(homog)} free parameters in the CH solve")
    sigma = [alg.one()] + [alg.zero() for _ in range(p)]
    for idx, val in part.items():
        k, w = unknowns[idx]
        sigma[k] = sigma[k] + NCPoly(alg, {w: val})
    data = CHData(p, sigma)
    data.central = [is_central(rs, s)[0] for s in sigma[1:]]
    data.verified = mat_poly(A.L, data.coefficients()).is_zero()
    return data


def commutative_image(f: NCPoly, values: dict | None = None) -> dict:
    """q -> 1 image of f as a commutative polynomial {sorted word: rational}."""
    out: dict = {}
    for w, c in f.terms.items():
        key = tuple(sorted(w))
        out[key] = out.get(key, 0) + classical_limit(c, values)
    return {k: v for k, v in out.items() if v}


def classical_trace_det(A: REAlgebra) -> tuple[dict, dict]:
    """Commutative tr L and det L for n = 2, keyed like commutative_image."""
    idx = A.alg.index
    g = lambda i, j: idx[gen_name(i, j)]
    tr = {(g(0, 0),): 1, (g(1, 1),): 1}
    det = {tuple(sorted((g(0, 0), g(1, 1)))): 1, tuple(sorted((g(0, 1), g(1, 0)))): -1}
    return tr, det


# -- the shift identity ------------------------------------------------------------

def shift_check(R: HeckeSymmetry, h: QScalar | None = None) -> tuple[bool, object]:
    """L -> L - h id turns the RE relations into the deformed ones with hbar = h (q - q^-1)."""
    n = R.n
    if h is None:
        field = ScalarField(tuple(R.field.names) + ("h",))
        h = field.gen("h")
    field = h.field
    q = field.q
    alg = FreeAlgebra([gen_name(i, j) for i, j in default_order(n)], field)
    free = free_system(alg)
    Rm = coerce_matrix(R.matrix, field)
    L = generator_matrix(free, n)
    shifted = L - AlgMatrix.identity(free, n).scale(h)
    substituted = re_relation_matrix(Rm, shifted, n)
    target = re_relation_matrix(Rm, L, n, h * (q - q.inv()))
    w = (substituted - target).witness()
    return w is None, w
