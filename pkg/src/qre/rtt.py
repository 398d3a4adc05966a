"""The RTT algebra with inverted quantum determinant, its antipode, and the
adjoint coaction on the reflection equation algebra.

T[i][j] = t_i^j.  The localized algebra has an extra generator ``dinv`` of
weight 2, central, with dinv * det_q(T) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coeff import ScalarField
from .hecke import HeckeSymmetry
from .linalg import Matrix, nullspace, solve_affine, LinAlgError
from .ncalg import (AlgMatrix, FreeAlgebra, NCPoly, Presentation, RewriteSystem,
                    complete_to_degree, tensor_identity, transport)
from .realg import (NoSolution, REAlgebra, SolutionNotUnique, coerce_matrix, commutative_image,
                    default_order, dedup_relations, free_system, gen_name, generator_matrix,
                    quantum_trace_matrix)

DINV = "dinv"


def rtt_relation_matrix(R: Matrix, T: AlgMatrix, n: int) -> AlgMatrix:
    """R T1 T2 - T1 T2 R."""
    T1 = tensor_identity(T, n, slot=1)
    T2 = tensor_identity(T, n, slot=2)
    T12 = T1 @ T2
    return T12.__rmatmul__(R) - T12 @ R


def _t_names(n: int) -> list[str]:
    return [gen_name(i, j, "t") for i, j in default_order(n)]


def _l_names(n: int) -> list[str]:
    return [gen_name(i, j, "l") for i, j in default_order(n)]


def _rtt_relations(alg: FreeAlgebra, R: Matrix, n: int) -> list[NCPoly]:
    rel = rtt_relation_matrix(R, generator_matrix(free_system(alg), n, "t"), n)
    return [e for row in rel.entries for e in row if e]


@dataclass
class RTTAlgebra:
    R: HeckeSymmetry
    n: int
    bialgebra: RewriteSystem  # t-generators only
    presentation: Presentation  # localized
    rs: RewriteSystem
    T: AlgMatrix
    det: NCPoly  # in the localized algebra

    @property
    def alg(self) -> FreeAlgebra:
        return self.rs.alg

    @property
    def field(self) -> ScalarField:
        return self.alg.field


def solve_quantum_det(rs: RewriteSystem, n: int = 2) -> NCPoly:
    """Central degree-2 element of the t-algebra, normalized to t11 t22 - t12 t21 at q = 1."""
    alg = rs.alg
    words = [w for w in rs.normal_words(2) if alg.weight(w) == 2]
    one = alg.field.one
    eqs: dict = {}
    for g in alg.gens():
        for idx, w in enumerate(words):
            x = NCPoly(alg, {w: one})
            c = rs.normal_form(x * g - g * x)
            for w2, coef in c.terms.items():
                eqs.setdefault((g.leading_word(), w2), {})[idx] = coef
    basis = nullspace(eqs.values(), list(range(len(words))), one)
    if not basis:
        raise NoSolution("no central quadratic element")
    if len(basis) > 1:
        raise SolutionNotUnique(f"{len(basis)} central quadratic elements")
    det = NCPoly(alg, {words[i]: c for i, c in basis[0].items()})
    img = commutative_image(det)
    key = tuple(sorted((alg.index["t11"], alg.index["t22"])))
    scale = img.get(key)
    if not scale:
        raise NoSolution("central quadratic element has no t11 t22 term classically")
    return det / alg.field(scale)


def build_rtt(R: HeckeSymmetry, degree: int = 8, *, field: ScalarField | None = None) -> RTTAlgebra:
    """RTT algebra for n = 2 with the quantum determinant inverted."""
    R.require_valid()
    n = R.n
    if n != 2:
        raise NotImplementedError("the RTT construction is implemented for n = 2")
    field = field or R.field
    Rm = coerce_matrix(R.matrix, field)
    talg = FreeAlgebra(_t_names(n), field)
    tpres = Presentation(talg, dedup_relations(talg, _rtt_relations(talg, Rm, n)), name="RTT")
    trs = complete_to_degree(tpres, max(degree, 3))
    det_t = solve_quantum_det(trs, n)

    alg = FreeAlgebra([DINV] + _t_names(n), field, [1] * (n * n + 1))
    pres = localized_presentation(alg, Rm, n, det_t)
    rs = complete_to_degree(pres, degree)
    det = transport(det_t, alg)
    return RTTAlgebra(R, n, trs, pres, rs, generator_matrix(rs, n, "t"), det)


def localized_presentation(alg: FreeAlgebra, Rm: Matrix, n: int, det_t: NCPoly) -> Presentation:
    rels = _rtt_relations(alg, Rm, n)
    d = alg.gen(DINV)
    det = transport(det_t, alg)
    for name in _t_names(n):
        t = alg.gen(name)
        rels.append(d * t - t * d)
    rels.append(d * det - 1)
    rels.append(det * d - 1)
    return Presentation(alg, dedup_relations(alg, rels), name="RTT-localized")


def antipode(A: RTTAlgebra) -> AlgMatrix:
    """Solve S(T) = dinv * (linear in t) with S(T) T = T S(T) = id."""
    n = A.n
    alg = A.alg
    rs = A.rs
    one = A.field.one
    d = alg.gen(DINV)
    tgens = [alg.gen(nm) for nm in _t_names(n)]
    unknowns = [(i, j, k) for i in range(n) for j in range(n) for k in range(len(tgens))]
    basis_elem = {u: rs.normal_form(d * tgens[u[2]]) for u in unknowns}
    T = A.T
    eqs: dict = {}
    for side in ("ST", "TS"):
        for r in range(n):
            for c in range(n):
                # constant part: -delta
                if r == c:
                    eqs.setdefault((side, r, c, ()), {})[None] = -one
                for m in range(n):
                    for k in range(len(tgens)):
                        if side == "ST":
                            u = (r, m, k)
                            prod = rs.multiply(basis_elem[u], T[m, c])
                        else:
                            u = (m, c, k)
                            prod = rs.multiply(T[r, m], basis_elem[u])
                        idx = unknowns.index(u)
                        for w, coef in prod.terms.items():
                            row = eqs.setdefault((side, r, c, w), {})
                            row[idx] = row.get(idx, A.field.zero) + coef
    eqs = {k: {u: v for u, v in row.items() if v} for k, row in eqs.items()}
    try:
        part, homog = solve_affine(eqs.values(), list(range(len(unknowns))), one)
    except LinAlgError:
        raise NoSolution("no antipode of the form dinv * linear") from None
    if homog:
        raise SolutionNotUnique("antipode not unique")
    S = [[alg.zero() for _ in range(n)] for _ in range(n)]
    for idx, val in part.items():
        i, j, k = unknowns[idx]
        S[i][j] = S[i][j] + basis_elem[unknowns[idx]].scale(val)
    return AlgMatrix(rs, S)


def classical_adjugate(A: RTTAlgebra) -> AlgMatrix:
    """dinv * adj(T) with the q = 1 adjugate (negative control at generic q)."""
    alg = A.alg
    d = alg.gen(DINV)
    t = lambda i, j: alg.gen(gen_name(i, j, "t"))
    adj = [[t(1, 1), -t(0, 1)], [-t(1, 0), t(0, 0)]]
    return AlgMatrix(A.rs, [[d * e for e in row] for row in adj])


# -- combined algebra and the coaction ----------------------------------------------

@dataclass
class CombinedAlgebra:
    rtt: RTTAlgebra
    re: REAlgebra
    rs: RewriteSystem
    T: AlgMatrix
    S: AlgMatrix
    L: AlgMatrix

    @property
    def alg(self) -> FreeAlgebra:
        return self.rs.alg


def build_combined(rtt: RTTAlgebra, re: REAlgebra, degree: int = 12) -> CombinedAlgebra:
    """T (x) L: t-generators (and dinv) first, then the l's; the two sets commute."""
    n = rtt.n
    field = re.field
    names = [DINV] + _t_names(n) + list(re.alg.names)
    degrees = [1] * (n * n + 1) + list(re.alg.degrees)
    alg = FreeAlgebra(names, field, degrees)
    Rm = coerce_matrix(rtt.R.matrix, field)
    rels = list(localized_presentation(alg, Rm, n, rtt.det).relations)
    rels += [transport(r, alg) for r in re.presentation.relations]
    tside = [DINV] + _t_names(n)
    for a in tside:
        for b in re.alg.names:
            rels.append(alg.gen(b) * alg.gen(a) - alg.gen(a) * alg.gen(b))
    pres = Presentation(alg, dedup_relations(alg, rels), name="T(x)L")
    rs = complete_to_degree(pres, degree)
    S = antipode(rtt)
    S_c = AlgMatrix(rs, [[transport(e, alg) for e in row] for row in S.entries])
    T_c = generator_matrix(rs, n, "t")
    L_c = AlgMatrix(rs, [[transport(e, alg) for e in row] for row in re.L.entries])
    return CombinedAlgebra(rtt, re, rs, T_c, S_c, L_c)


def coaction_images(C: CombinedAlgebra, convention: str = "TLS") -> list[list[NCPoly]]:
    """Images of the generators under the adjoint coaction.

    ``TLS`` (default): delta(L) = T L S(T), i.e. delta(L[i][j]) =
    sum_{k,p} T[i][k] S(T)[p][j] (x) L[k][p], the t-factor standing before the
    S-factor.  This is the formula t^j_p S(t_i^k) (x) l_k^p read with the upper
    index as row index.  ``SLT`` is the mirrored law L -> S(T) L T and ``TL``
    drops the antipode (both are negative controls for the standard symmetry).
    """
    n = C.rtt.n
    rs = C.rs
    alg = C.alg
    T, S, L = C.T, C.S, C.L
    if convention == "TLS":
        X, Y = T, S
    elif convention == "SLT":
        X, Y = S, T
    elif convention == "TL":
        X, Y = T, None
    else:
        raise ValueError(f"unknown coaction convention {convention!r}")
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = alg.zero()
            for k in range(n):
                if Y is None:
                    acc = acc + rs.multiply(X[i, k], L[k, j])
                    continue
                for p in range(n):
                    acc = acc + rs.multiply(rs.multiply(X[i, k], Y[p, j]), L[k, p])
            row.append(rs.normal_form(acc))
        out.append(row)
    return out


def apply_coaction(C: CombinedAlgebra, f: NCPoly, images: list[list[NCPoly]]) -> NCPoly:
    """Extend delta multiplicatively to a polynomial in the l's (from the RE free algebra)."""
    rs = C.rs
    n = C.rtt.n
    alg = C.alg
    by_gen = {}
    for i in range(n):
        for j in range(n):
            by_gen[f.alg.index[gen_name(i, j)]] = images[i][j]
    out = alg.zero()
    for w, c in f.terms.items():
        m = alg.one()
        for g in w:
            m = rs.multiply(m, by_gen[g])
        out = out + m.scale(_coef_cast(c, alg.field))
    return out


def _coef_cast(c, field):
    return c if getattr(c, "field", field) is field else field.coerce(c)


def check_coaction_preserves_ideal(C: CombinedAlgebra, relations: Sequence[NCPoly] | None = None,
                                   images=None) -> tuple[bool, object]:
    images = images or coaction_images(C)
    relations = relations if relations is not None else C.re.presentation.relations
    for r in relations:
        img = apply_coaction(C, r, images)
        if img:
            return False, (str(r), len(img.terms))
    return True, None


def check_power_equivariance(C: CombinedAlgebra, k: int, images=None) -> tuple[bool, object]:
    """delta applied entrywise to L^k equals T L^k S(T)."""
    n = C.rtt.n
    images = images or coaction_images(C)
    rs = C.rs
    dL = AlgMatrix(rs, images, reduce=False)
    lhs = dL.power(k)
    Lk = C.L.power(k)
    T, S = C.T, C.S
    for i in range(n):
        for j in range(n):
            acc = C.alg.zero()
            for p in range(n):
                for m in range(n):
                    acc = acc + rs.multiply(rs.multiply(T[i, m], S[p, j]), Lk[m, p])
            diff = rs.normal_form(acc) - lhs[i, j]
            if diff:
                return False, ((i, j), len(diff.terms))
    return True, None


def check_trace_invariance(C: CombinedAlgebra, images=None) -> tuple[bool, object]:
    """delta(Tr_q L) = 1 (x) Tr_q L."""
    A = C.re
    form = quantum_trace_matrix(A)
    tr = form.element(A)
    images = images or coaction_images(C)
    img = apply_coaction(C, tr, images)
    diff = img - transport(tr, C.alg)
    diff = C.rs.normal_form(diff)
    return (not diff), (None if not diff else str(diff))
