"""Quantum orbits of the reflection equation algebra: the sphere quotient,
line-bundle projectors, and the Cayley-Hamilton identity for the symmetrized
extension L_+ = P_+ L_1 P_+.

Module convention: M = V (x) A is a free right A-module with basis v_1..v_n,
and (v <| L)_j = sum_i v_i (x) l_i^j.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .coeff import ExtScalar, QScalar, ScalarField, q_number, scalar_sqrt
from .hecke import antisymmetrizer, flip, symmetrizer
from .linalg import Echelon, Matrix
from .ncalg import (AlgMatrix, FreeAlgebra, NCPoly, Presentation, RewriteSystem,
                    complete_to_degree, tensor_identity, transport)
from .realg import (CHData, REAlgebra, TraceForm, ch_coefficients, coerce_matrix, default_order,
                    gen_name, generator_matrix, quantum_trace_matrix)


class DegenerateOrbit(ValueError):
    pass


class NonFlat(ArithmeticError):
    pass


class VerificationFailed(AssertionError):
    def __init__(self, msg: str, witness=None):
        super().__init__(msg if witness is None else f"{msg}: {witness}")
        self.witness = witness


def _union_field(*fields: ScalarField) -> ScalarField:
    names: list[str] = []
    for f in fields:
        for n in f.names:
            if n not in names:
                names.append(n)
    return ScalarField(tuple(names))


def _scalar(value, field: ScalarField):
    if isinstance(value, ExtScalar):
        return value
    if isinstance(value, QScalar):
        return field.coerce(value)
    return field(value)


@dataclass
class OrbitAlgebra:
    """Quotient of an RE-type algebra by Tr_q(L) = t0 and sigma(2) = c."""

    ambient: REAlgebra
    c: QScalar
    t0: QScalar
    rs: RewriteSystem
    L: AlgMatrix
    trace: TraceForm
    ch: CHData
    sigma: list  # CH coefficients transported into the quotient's free algebra

    @property
    def alg(self) -> FreeAlgebra:
        return self.rs.alg

    @property
    def field(self) -> ScalarField:
        return self.alg.field

    @property
    def n(self) -> int:
        return self.ambient.n

    def filtration_dims(self, dmax: int) -> list[int]:
        return [self.rs.filtered_dimension(d) for d in range(dmax + 1)]


# The sphere is the t0 = 0 orbit of the undeformed algebra.
SphereAlgebra = OrbitAlgebra


def build_orbit(A: REAlgebra, c, t0=0, degree: int = 6, *, ch: CHData | None = None,
                trace: TraceForm | None = None) -> OrbitAlgebra:
    base = A.field
    extra = [x.field for x in (c, t0) if isinstance(x, QScalar)]
    field = _union_field(base, *extra)
    c = _scalar(c, field)
    t0 = _scalar(t0, field)
    trace = trace or quantum_trace_matrix(A)
    ch = ch or ch_coefficients(A, filtered=A.hbar is not None)
    alg = FreeAlgebra(A.alg.names, field, A.alg.degrees)
    tr = transport(trace.element(A), alg)
    sigma = [transport(s, alg) for s in ch.sigma]
    rels = [transport(r, alg) for r in A.presentation.relations]
    rels += [tr - t0, sigma[2] - c]
    pres = Presentation(alg, rels, name="orbit", degree=degree)
    rs = complete_to_degree(pres, degree)
    L = generator_matrix(rs, A.n)
    L = AlgMatrix(rs, L.entries)
    return OrbitAlgebra(A, c, t0, rs, L, trace, ch, sigma)


def build_sphere(A: REAlgebra, c, degree: int = 6, *, check_flat: int | None = None) -> OrbitAlgebra:
    """RE algebra modulo Tr_q(L) = 0 and det_q(L) = c, c != 0."""
    if A.n != 2:
        raise ValueError("the sphere quotient is defined for n = 2")
    if isinstance(c, (int, Fraction)) and c == 0 or isinstance(c, QScalar) and not c:
        raise ValueError("the orbit constant c must be nonzero")
    S = build_orbit(A, c, 0, degree)
    if check_flat is not None:
        dims = S.filtration_dims(check_flat)
        expected = [(d + 1) ** 2 for d in range(check_flat + 1)]
        if dims != expected:
            raise NonFlat(f"filtration dims {dims}, expected {expected}")
    return S


# -- the numerical polynomial -------------------------------------------------------

@dataclass
class OrbitSpec:
    """P(t) = t^2 - a t + s2 with roots nu1, nu2 (a = nu1 + nu2, s2 = nu1 nu2)."""

    c: QScalar
    a: QScalar
    s2: QScalar
    nu1: object
    nu2: object

    @property
    def c2(self) -> QScalar:
        """Constant of t^2 + c2 (meaningful when a = 0)."""
        return self.s2

    @property
    def rational(self) -> bool:
        return not isinstance(self.nu1, ExtScalar)


def _scalar_value(S: OrbitAlgebra, f: NCPoly, what: str) -> QScalar:
    nf = S.rs.normal_form(f)
    if any(w for w in nf.terms):
        raise VerificationFailed(f"{what} is not a scalar in the quotient", str(nf))
    return nf.terms.get((), S.field.zero)


def numeric_polynomial(S: OrbitAlgebra) -> OrbitSpec:
    a = _scalar_value(S, S.sigma[1], "sigma(1)")
    s2 = _scalar_value(S, S.sigma[2], "sigma(2)")
    disc = a * a - 4 * s2
    if not disc:
        raise DegenerateOrbit("coinciding roots")
    root = scalar_sqrt(disc)
    half = Fraction(1, 2)
    if root is not None:
        nu1 = (a + root) * half
        nu2 = (a - root) * half
    else:
        nu = ExtScalar.nu(disc)
        nu1 = (nu + a) * half
        nu2 = (-nu + a) * half
    return OrbitSpec(S.c, a, s2, nu1, nu2)


# -- projectors ----------------------------------------------------------------------

@dataclass
class LineBundle:
    projector: AlgMatrix
    label: int
    eigenvalue: object  # the eigenvalue of L on the image


def projectors(S: OrbitAlgebra, spec: OrbitSpec) -> tuple[LineBundle, LineBundle]:
    """P1 = (L - nu1)/(nu2 - nu1), P2 = (L - nu2)/(nu1 - nu2).

    P1 projects onto the nu2-eigenspace of L and P2 onto the nu1-eigenspace.
    """
    n = S.n
    I = AlgMatrix.identity(S.rs, n)
    nu1, nu2 = spec.nu1, spec.nu2
    P1 = (S.L - I.scale(nu1)).scale((nu2 - nu1).inv())
    P2 = (S.L - I.scale(nu2)).scale((nu1 - nu2).inv())
    return LineBundle(P1, 1, nu2), LineBundle(P2, 2, nu1)


def projector_checks(S: OrbitAlgebra, spec: OrbitSpec) -> dict[str, tuple[bool, object]]:
    b1, b2 = projectors(S, spec)
    P1, P2 = b1.projector, b2.projector
    I = AlgMatrix.identity(S.rs, S.n)
    Pbar = S.L @ S.L - S.L.scale(spec.a) + I.scale(spec.s2)

    def zero(M):
        w = M.witness()
        return w is None, (None if w is None else (w[0], str(w[1])))

    return {
        "P1^2 = P1": zero(P1 @ P1 - P1),
        "P2^2 = P2": zero(P2 @ P2 - P2),
        "P1 + P2 = id": zero(P1 + P2 - I),
        "P1 P2 = 0": zero(P1 @ P2),
        "P2 P1 = 0": zero(P2 @ P1),
        "Pbar(L) = 0": zero(Pbar),
        "spectral": zero(P1.scale(b1.eigenvalue) + P2.scale(b2.eigenvalue) - S.L),
    }


# -- the quotient module M / M_nu -------------------------------------------------------

def quotient_module_dims(S: OrbitAlgebra, nu, D: int) -> list[int]:
    """dim of (M / M_nu) at filtration levels 0..D.

    M_nu is the right submodule generated by the coordinates of v <| L - nu v.
    Level d of the quotient is F_d^n / (M_nu cap F_d^n), where M_nu cap F_d^n
    is computed from generators m_j * w with w of filtration <= d + 1.
    """
    n = S.n
    rs = S.rs
    alg = S.alg
    L = S.L
    field = S.field
    # m_j = sum_i v_i (L[i][j] - nu delta_ij)
    gens = []
    for j in range(n):
        comps = []
        for i in range(n):
            e = L[i, j]
            if i == j:
                e = e - alg.one().scale(nu if isinstance(nu, ExtScalar) else _scalar(nu, field))
            comps.append(e)
        gens.append(comps)
    words = rs.normal_words(D + 1)

    def key(col):
        i, w = col
        return (alg.weight(w), w, -i)

    ech = Echelon(key=key)
    for w in words:
        wp = NCPoly(alg, {w: field.one})
        for comps in gens:
            row: dict = {}
            for i, e in enumerate(comps):
                if not e:
                    continue
                for u, c in rs.multiply(e, wp).terms.items():
                    row[(i, u)] = c
            if row:
                ech.add(row)
    dims = []
    for d in range(D + 1):
        total = n * rs.filtered_dimension(d)
        inside = sum(1 for col in ech.pivots if alg.weight(col[1]) <= d)
        dims.append(total - inside)
    return dims


def quotient_module_nontrivial(S: OrbitAlgebra, nu, D: int = 3) -> bool:
    return any(quotient_module_dims(S, nu, D))


# -- the symmetrized extension ------------------------------------------------------------

def extend_L_plus(S: OrbitAlgebra, k: int = 2, *, slot: int = 1) -> AlgMatrix:
    """P_+^{(k)} L_1 P_+^{(k)} with L_1 acting on the first tensor factor."""
    n = S.n
    if k == 1:
        return S.L
    P = coerce_matrix(symmetrizer(S.ambient.R, k), S.field)
    L1 = tensor_identity(S.L, n ** (k - 1), slot=slot)
    return L1.__rmatmul__(P) @ P


def ch_plus_coefficients(a, b, field: ScalarField):
    """Coefficients (c0, c1, c2, c3) of the cubic in the extension identity."""
    q = field.q
    kappa = q.inv() / q_number(2, field)
    return (a * b * kappa, a * a * kappa - b, -(a * (1 + kappa)), field.one)


@dataclass
class CHPlusReport:
    ok: bool
    a: object
    b: object
    literal_b_ok: bool | None = None
    witness: object = None
    q_independent: bool | None = None
    notes: list = dc_field(default_factory=list)


def _cubic_residual(S: OrbitAlgebra, Lp: AlgMatrix, P: AlgMatrix, coeffs) -> AlgMatrix:
    c0, c1, c2, c3 = coeffs
    L2 = Lp @ Lp
    L3 = L2 @ Lp
    return L3.scale(c3) + L2.scale(c2) + Lp.scale(c1) + P.scale(c0)


def verify_ch_plus(S: OrbitAlgebra, spec: OrbitSpec, *, shift=None,
                   check_literal: bool = True) -> CHPlusReport:
    """Check the cubic identity for L_+ = P_+ L_1 P_+ (k = 2).

    The identity holds with b = -nu1 nu2 (so that Pbar(t) = t^2 - a t - b) and
    with the identity term read as the identity of the symmetric square, P_+.
    With ``shift = h`` the identity is checked for L_+ - h P_+ and the roots
    nu_i - h, which is how it transfers to the deformed algebra, whose
    generator matrix is L + h id for L satisfying the undeformed relations.
    """
    field = S.field
    n = S.n
    Lp = extend_L_plus(S, 2)
    P = AlgMatrix.from_scalar(S.rs, coerce_matrix(symmetrizer(S.ambient.R, 2), field))
    a, s2 = spec.a, spec.s2
    if shift is not None:
        h = _scalar(shift, field)
        Lp = Lp - P.scale(h)
        s2 = s2 - a * h + h * h
        a = a - 2 * h
    b = -s2
    coeffs = ch_plus_coefficients(a, b, field)
    res = _cubic_residual(S, Lp, P, coeffs)
    w = res.witness()
    report = CHPlusReport(w is None, a, b, witness=None if w is None else (w[0], str(w[1])))
    if not a:
        c0, c1, c2, _ = coeffs
        report.q_independent = not c0 and not c2 and c1 == -b
    if check_literal:
        lit = _cubic_residual(S, Lp, P, ch_plus_coefficients(a, -b, field))
        report.literal_b_ok = lit.is_zero()
    if a:
        I = AlgMatrix.identity(S.rs, n * n)
        full = _cubic_residual(S, Lp, I, coeffs)
        report.notes.append(f"identity term as id of V(x)V: {'ok' if full.is_zero() else 'fails'}")
    return report


def l_plus_commutes(S: OrbitAlgebra) -> dict[str, bool]:
    field = S.field
    Lp = extend_L_plus(S, 2)
    P = AlgMatrix.from_scalar(S.rs, coerce_matrix(symmetrizer(S.ambient.R, 2), field))
    Q = AlgMatrix.from_scalar(S.rs, coerce_matrix(antisymmetrizer(S.ambient.R, 2), field))
    return {
        "P L+ = L+": (P @ Lp - Lp).is_zero(),
        "L+ P = L+": (Lp @ P - Lp).is_zero(),
        "P- L+ = 0": (Q @ Lp).is_zero(),
        "L+ P- = 0": (Lp @ Q).is_zero(),
    }


# -- classical (q = 1) counterparts -----------------------------------------------------------

@dataclass
class ClassicalOrbit:
    """Commutative quotient k[l_ij] / (trace - t0, det - d) for n = 2."""

    rs: RewriteSystem
    L: AlgMatrix
    t0: Fraction
    det: Fraction


def classical_orbit(t0=0, det=1, degree: int = 6) -> ClassicalOrbit:
    field = ScalarField(("q",))
    names = [gen_name(i, j) for i, j in default_order(2)]
    alg = FreeAlgebra(names, field)
    g = {nm: alg.gen(nm) for nm in names}
    rels = []
    for x in range(len(names)):
        for y in range(x + 1, len(names)):
            a, b = g[names[x]], g[names[y]]
            rels.append(b * a - a * b)
    rels.append(g["l11"] + g["l22"] - t0)
    rels.append(g["l11"] * g["l22"] - g["l12"] * g["l21"] - det)
    rs = complete_to_degree(Presentation(alg, rels, name="classical orbit"), degree)
    return ClassicalOrbit(rs, generator_matrix(rs, 2), Fraction(t0), Fraction(det))


def classical_sym_projector(field: ScalarField) -> Matrix:
    n = 2
    P = flip(n, field) + Matrix.identity(n * n, field)
    return P.scale(field(Fraction(1, 2)))


def classical_leibniz_check(orbit: ClassicalOrbit | None = None) -> tuple[bool, Fraction | None]:
    """At q = 1, P (L(x)1 + 1(x)L) P equals lambda * P L_1 P for a single scalar lambda.

    Returns (found, factor) where L_+ = factor * Leibniz extension.
    """
    orbit = orbit or classical_orbit()
    rs = orbit.rs
    field = rs.alg.field
    P = AlgMatrix.from_scalar(rs, classical_sym_projector(field))
    L1 = tensor_identity(orbit.L, 2, slot=1)
    L2 = tensor_identity(orbit.L, 2, slot=2)
    Lplus = P @ L1 @ P
    leib = P @ (L1 + L2) @ P
    found = leib.witness()
    if found is None:
        return Lplus.is_zero(), None
    (i, j), e = found
    w = e.leading_word()
    lam = Lplus[i, j].coefficient(w) / e.coefficient(w)
    ok = (Lplus - leib.scale(lam)).is_zero()
    return ok, (lam.to_fraction() if ok else None)


def classical_ch_plus(t0, det) -> tuple[bool, object]:
    """Cubic identity for the classical symmetrized extension (q = 1 coefficients)."""
    orbit = classical_orbit(t0, det)
    rs = orbit.rs
    field = rs.alg.field
    P = AlgMatrix.from_scalar(rs, classical_sym_projector(field))
    Lp = P @ tensor_identity(orbit.L, 2, slot=1) @ P
    a = field(t0)
    b = field(-det)  # roots satisfy t^2 - a t + det = 0, so -nu1 nu2 = -det
    kappa = field(Fraction(1, 2))
    coeffs = (a * b * kappa, a * a * kappa - b, -(a * (1 + kappa)), field.one)
    res = _cubic_residual(None, Lp, P, coeffs)
    w = res.witness()
    return w is None, w
