"""U_q(sl(2)) modules, the tensor-algebra sphere, differential forms and their
truncated cohomology.

U_q(sl(2)) conventions, fixed here and nowhere else:

* spin j has basis f_0..f_{2j} with F f_k = f_{k+1},
  E f_k = [k][2j-k+1] f_{k-1} and K f_k = q^{2j-2k} f_k;
* the coproduct is Delta(E) = E(x)1 + K(x)E, Delta(F) = F(x)K^-1 + 1(x)F,
  Delta(K) = K(x)K;
* the Casimir EF + (q^-1 K + q K^-1)/(q - q^-1)^2 acts on spin j by
  (q^(2j+1) + q^(-2j-1))/(q - q^-1)^2.

A module is stored through E, F and the integer weights w (K acts by q^w), so
the same code also handles the classical point: there E and F carry the q = 1
values of their entries and K is the identity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .coeff import QScalar, ScalarField, q_number, scalar_sqrt
from .linalg import Echelon, Matrix, nullspace, solve_affine
from .ncalg import FreeAlgebra, NCPoly, Presentation, RewriteSystem, complete_to_degree


class DegenerateSpectrum(ArithmeticError):
    pass


class NoIsomorphismFound(ArithmeticError):
    pass


class NoAdmissibleDifferential(ArithmeticError):
    pass


class NonFlat(ArithmeticError):
    pass


def _qint(n: int, field: ScalarField, classical: bool):
    return field(n) if classical else q_number(n, field)


# -- modules -------------------------------------------------------------------------

@dataclass
class UqModule:
    field: ScalarField
    E: Matrix
    F: Matrix
    weights: list[int]
    classical: bool = False
    label: str = ""

    @property
    def dim(self) -> int:
        return len(self.weights)

    def K(self, power: int = 1) -> Matrix:
        f = self.field
        M = Matrix.zeros(self.dim, self.dim, f)
        for i, w in enumerate(self.weights):
            M.rows[i][i] = f.one if self.classical else f.q ** (w * power)
        return M

    def H(self) -> Matrix:
        f = self.field
        M = Matrix.zeros(self.dim, self.dim, f)
        for i, w in enumerate(self.weights):
            M.rows[i][i] = f(w)
        return M

    def tensor(self, other: UqModule) -> UqModule:
        f = self.field
        Ia = Matrix.identity(self.dim, f)
        Ib = Matrix.identity(other.dim, f)
        E = self.E.kron(Ib) + self.K().kron(other.E)
        F = self.F.kron(other.K(-1)) + Ia.kron(other.F)
        weights = [a + b for a in self.weights for b in other.weights]
        return UqModule(f, E, F, weights, self.classical, f"{self.label}(x){other.label}")

    def relation_defects(self) -> dict[str, tuple | None]:
        """Witness of failure (or None) for each defining relation."""
        f = self.field
        E, F = self.E, self.F
        out = {}
        if self.classical:
            H = self.H()
            out["[H,E] = 2E"] = (H @ E - E @ H).diff_witness(E.scale(f(2)))
            out["[H,F] = -2F"] = (H @ F - F @ H).diff_witness(F.scale(f(-2)))
            out["[E,F] = H"] = (E @ F - F @ E).diff_witness(H)
        else:
            q = f.q
            K, Ki = self.K(), self.K(-1)
            out["K E K^-1 = q^2 E"] = (K @ E @ Ki).diff_witness(E.scale(q * q))
            out["K F K^-1 = q^-2 F"] = (K @ F @ Ki).diff_witness(F.scale((q * q).inv()))
            rhs = (K - Ki).scale((q - q.inv()).inv())
            out["[E,F] = (K-K^-1)/(q-q^-1)"] = (E @ F - F @ E).diff_witness(rhs)
        return out

    def check_relations(self) -> bool:
        return all(w is None for w in self.relation_defects().values())

    def casimir(self) -> Matrix:
        f = self.field
        EF = self.E @ self.F
        if self.classical:
            M = EF.copy()
            for i, w in enumerate(self.weights):
                M.rows[i][i] = M.rows[i][i] + f(Fraction(w * w, 4) - Fraction(w, 2))
            return M
        q = f.q
        denom = (q - q.inv()) ** 2
        M = EF.copy()
        for i, w in enumerate(self.weights):
            M.rows[i][i] = M.rows[i][i] + (q ** (w - 1) + q ** (1 - w)) / denom
        return M

    def casimir_value(self, twoj: int):
        f = self.field
        if self.classical:
            return f(Fraction(twoj * (twoj + 2), 4))
        q = f.q
        return (q ** (twoj + 1) + q ** (-twoj - 1)) / (q - q.inv()) ** 2

    def character(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for w in self.weights:
            out[w] = out.get(w, 0) + 1
        return out

    def weight_space(self, w: int) -> list[int]:
        return [i for i, x in enumerate(self.weights) if x == w]

    def highest_weight_vectors(self, twoj: int) -> list[dict]:
        """Basis of ker E inside the weight-2j space (sparse vectors)."""
        cols = self.weight_space(twoj)
        if not cols:
            return []
        eqs = []
        for r in range(self.dim):
            row = {c: self.E.rows[r][c] for c in cols if self.E.rows[r][c]}
            if row:
                eqs.append(row)
        return nullspace(eqs, cols, self.field.one)


def multiplicities_from_character(char: dict[int, int]) -> dict[int, int]:
    """Spin multiplicities (keyed by 2j) of a finite-dimensional weight module."""
    out = {}
    for w in sorted(char):
        if w < 0:
            continue
        m = char.get(w, 0) - char.get(w + 2, 0)
        if m < 0:
            raise DegenerateSpectrum(f"character {char} is not a sum of irreducibles")
        if m:
            out[w] = m
    return out


def spin_module(twoj: int, field: ScalarField | None = None, classical: bool = False) -> UqModule:
    """Spin j = twoj/2 in the documented weight basis."""
    if twoj < 0:
        raise ValueError("2j must be nonnegative")
    field = field or ScalarField(("q",))
    d = twoj + 1
    E = Matrix.zeros(d, d, field)
    F = Matrix.zeros(d, d, field)
    for k in range(d):
        if k + 1 < d:
            F.rows[k + 1][k] = field.one
        if k >= 1:
            E.rows[k - 1][k] = _qint(k, field, classical) * _qint(twoj - k + 1, field, classical)
    weights = [twoj - 2 * k for k in range(d)]
    return UqModule(field, E, F, weights, classical, f"V{twoj}/2" if twoj % 2 else f"V{twoj // 2}")


def _vec_apply(M: Matrix, v: dict) -> dict:
    out: dict = {}
    for c, a in v.items():
        for r in range(M.shape[0]):
            x = M.rows[r][c]
            if x:
                s = out.get(r)
                val = a * x if s is None else s + a * x
                if val:
                    out[r] = val
                else:
                    out.pop(r, None)
    return out


@dataclass
class IsotypicDecomposition:
    module: UqModule
    components: list  # (twoj, multiplicity, projector)

    def spins(self) -> list[tuple[Fraction, int]]:
        return [(Fraction(t, 2), m) for t, m, _ in self.components]

    def check(self) -> dict[str, bool]:
        f = self.module.field
        n = self.module.dim
        I = Matrix.identity(n, f)
        total = Matrix.zeros(n, n, f)
        idem = orth = comm = True
        for i, (_, _, P) in enumerate(self.components):
            total = total + P
            idem &= P @ P == P
            for X in (self.module.E, self.module.F, self.module.K()):
                comm &= P @ X == X @ P
            for j, (_, _, Q) in enumerate(self.components):
                if i != j:
                    orth &= (P @ Q).is_zero()
        dims = sum(m * (t + 1) for t, m, _ in self.components) == n
        return {"idempotent": idem, "orthogonal": orth, "complete": total == I,
                "commuting": comm, "dimension count": dims}


def decompose(M: UqModule) -> IsotypicDecomposition:
    """Isotypic projectors by Lagrange interpolation in the Casimir."""
    mult = multiplicities_from_character(M.character())
    C = M.casimir()
    f = M.field
    I = Matrix.identity(M.dim, f)
    vals = {t: M.casimir_value(t) for t in mult}
    for t in vals:
        for s in vals:
            if s != t and vals[s] == vals[t]:
                raise DegenerateSpectrum(f"spins {t}/2 and {s}/2 share a Casimir value")
    comps = []
    for t, m in mult.items():
        P = I
        for s in mult:
            if s != t:
                P = P @ (C - I.scale(vals[s])).scale((vals[t] - vals[s]).inv())
        if P.rank() != m * (t + 1):
            raise DegenerateSpectrum(f"projector for spin {t}/2 has the wrong rank")
        comps.append((t, m, P))
    return IsotypicDecomposition(M, comps)


def decompose_tensor(A: UqModule, B: UqModule) -> IsotypicDecomposition:
    return decompose(A.tensor(B))


def component_basis(M: UqModule, twoj: int, normalize_at: int | None = None) -> list[dict]:
    """Basis u_0, F u_0, ..., F^{2j} u_0 of the (multiplicity one) spin-j summand.

    The highest-weight vector is normalized to have coefficient 1 at basis
    index ``normalize_at`` (default: its first nonzero index).
    """
    hw = M.highest_weight_vectors(twoj)
    if len(hw) != 1:
        raise DegenerateSpectrum(f"spin {twoj}/2 occurs {len(hw)} times")
    u = hw[0]
    idx = normalize_at if normalize_at is not None else min(u)
    if idx not in u:
        raise DegenerateSpectrum("normalization index outside the support")
    inv = u[idx].inv()
    u = {k: v * inv for k, v in u.items()}
    out = [u]
    for _ in range(twoj):
        out.append(_vec_apply(M.F, out[-1]))
    return out


# -- the tensor-algebra sphere ----------------------------------------------------------------

GEN = ("x0", "x1", "x2")


def _pair_index(a: int, b: int) -> int:
    return 3 * a + b


def spin1_components(field: ScalarField, classical: bool = False):
    """(u_0, u_1, u_2) spanning (V(x)V)_1 and the singlet w spanning (V(x)V)_0.

    Normalizations: u_0 has coefficient 1 at f_0(x)f_1, w has coefficient 1 at
    f_0(x)f_2.  With these, alpha(u_k) = f_k defines the morphism onto V.
    """
    V = spin_module(2, field, classical)
    VV = V.tensor(V)
    u = component_basis(VV, 2, normalize_at=_pair_index(0, 1))
    w = component_basis(VV, 0, normalize_at=_pair_index(0, 2))[0]
    return u, w


def _pair_poly(alg: FreeAlgebra, vec: dict, offset: tuple[int, int] = (0, 0)) -> NCPoly:
    terms = {}
    for idx, c in vec.items():
        a, b = divmod(idx, 3)
        terms[(a + offset[0], b + offset[1])] = c
    return NCPoly(alg, terms)


@dataclass
class TensorSphere:
    field: ScalarField
    rs: RewriteSystem
    c: QScalar
    hbar: QScalar
    u: list  # spin-1 component vectors in V(x)V
    w: dict  # singlet
    classical: bool = False

    @property
    def alg(self) -> FreeAlgebra:
        return self.rs.alg

    def filtration_dims(self, dmax: int) -> list[int]:
        return [self.rs.filtered_dimension(d) for d in range(dmax + 1)]

    def module(self) -> UqModule:
        return spin_module(2, self.field, self.classical)


def _field_for(*values) -> ScalarField:
    names = ["q"]
    for v in values:
        if isinstance(v, QScalar):
            for n in v.field.names:
                if n not in names:
                    names.append(n)
    return ScalarField(tuple(names))


def build_deformed(hbar, c, degree: int = 6, *, classical: bool = False,
                   check_flat: int | None = None) -> TensorSphere:
    """T(V) / {V_1 - hbar alpha(V_1), v_0 - c} for V of spin 1."""
    field = _field_for(hbar, c)
    hbar = field.coerce(hbar) if isinstance(hbar, QScalar) else field(hbar)
    c = field.coerce(c) if isinstance(c, QScalar) else field(c)
    alg = FreeAlgebra(GEN, field)
    u, w = spin1_components(field, classical)
    rels = [_pair_poly(alg, uk) - alg.gen(GEN[k]).scale(hbar) for k, uk in enumerate(u)]
    rels.append(_pair_poly(alg, w) - c)
    rs = complete_to_degree(Presentation(alg, rels, name="tensor sphere"), degree)
    S = TensorSphere(field, rs, c, hbar, u, w, classical)
    if check_flat is not None:
        dims = S.filtration_dims(check_flat)
        expected = [(d + 1) ** 2 for d in range(check_flat + 1)]
        if dims != expected:
            raise NonFlat(f"filtration dims {dims}, expected {expected}")
    return S


def build_sphere_tensor(c, degree: int = 6, *, classical: bool = False) -> TensorSphere:
    return build_deformed(0, c, degree, classical=classical)


# -- action of U_q(sl(2)) on the sphere ---------------------------------------------------

def _letter_action(V: UqModule, X: str, a: int) -> list[tuple[int, object]]:
    M = V.E if X == "E" else V.F
    return [(r, M.rows[r][a]) for r in range(V.dim) if M.rows[r][a]]


def word_action(S: TensorSphere, X: str, word: tuple) -> dict:
    """X in {E, F, K} applied to a word of T(V) through the iterated coproduct."""
    V = S.module()
    f = S.field
    q = f.q
    weights = [V.weights[a] for a in word]
    if X == "K":
        w = sum(weights)
        return {word: f.one if S.classical else q ** w}
    out: dict = {}
    for i, a in enumerate(word):
        if X == "E":
            pw = sum(weights[:i])
        else:
            pw = -sum(weights[i + 1:])
        factor = f.one if S.classical else q ** pw
        for b, c in _letter_action(V, X, a):
            new = word[:i] + (b,) + word[i + 1:]
            val = c * factor
            s = out.get(new)
            out[new] = val if s is None else s + val
    return {w: c for w, c in out.items() if c}


def act(S: TensorSphere, X: str, f: NCPoly) -> NCPoly:
    terms: dict = {}
    for w, c in f.terms.items():
        for w2, c2 in word_action(S, X, w).items():
            s = terms.get(w2)
            terms[w2] = c * c2 if s is None else s + c * c2
    return S.rs.normal_form(NCPoly(S.alg, terms))


def ideal_is_stable(S: TensorSphere) -> bool:
    """The defining relations are U_q-submodule generators: X(rel) reduces to 0."""
    for rel in S.rs.presentation.relations:
        for X in ("E", "F", "K"):
            img = act(S, X, rel)
            if X == "K":
                img = img - S.rs.normal_form(rel)
            if not img.is_zero():
                return False
    return True


# -- form modules ------------------------------------------------------------------------

KINDS = ("omega0", "omega1", "omega2", "tangent")


def _kind(kind) -> str:
    aliases = {0: "omega0", 1: "omega1", 2: "omega2", "0": "omega0", "1": "omega1",
               "2": "omega2", "Ω⁰": "omega0", "Ω¹": "omega1", "Ω²": "omega2"}
    k = aliases.get(kind, kind)
    if k not in KINDS:
        raise ValueError(f"unknown form module kind {kind!r}")
    return k


@dataclass
class FormModule:
    """A(x)W modulo the left A-submodule generated by ``generators``, truncated.

    Elements are sparse dicts keyed by (word, b): a normal word of the sphere
    times the basis vector f_b of the fibre W.  ``level`` is the filtration
    level of the word part.
    """

    kind: str
    sphere: TensorSphere
    D: int
    fibre: UqModule
    generators: list
    relations: Echelon
    slack: int
    columns: dict = dc_field(default_factory=dict)  # level -> list of (word, b)

    @property
    def field(self) -> ScalarField:
        return self.sphere.field

    def level_of(self, col) -> int:
        return self.sphere.alg.weight(col[0])

    def weight_of(self, col) -> int:
        V = self.sphere.module()
        return sum(V.weights[a] for a in col[0]) + self.fibre.weights[col[1]]

    def basis(self, d: int) -> list:
        """Quotient basis of the level-d truncation (non-pivot columns)."""
        return [c for lev in range(d + 1) for c in self.columns[lev]
                if c not in self.relations.pivots]

    def dimension(self, d: int) -> int:
        return len(self.basis(d))

    def reduce(self, v: dict) -> dict:
        return self.relations.reduce(v)

    def act(self, X: str, v: dict) -> dict:
        S = self.sphere
        W = self.fibre
        f = self.field
        out: dict = {}

        def add(word_terms: dict, b: int, coef):
            for w, c in word_terms.items():
                key = (w, b)
                val = c * coef
                s = out.get(key)
                out[key] = val if s is None else s + val

        for (word, b), coef in v.items():
            a = NCPoly(S.alg, {word: f.one})
            if X == "K":
                kb = f.one if W.classical else f.q ** W.weights[b]
                add(act(S, "K", a).terms, b, coef * kb)
            elif X == "E":
                add(act(S, "E", a).terms, b, coef)
                Ka = act(S, "K", a).terms
                for r, c in _letter_action(W, "E", b):
                    add(Ka, r, coef * c)
            else:
                for r, c in _letter_action(W, "F", b):
                    add(a.terms, r, coef * c)
                kb = f.one if W.classical else f.q ** (-W.weights[b])
                add(act(S, "F", a).terms, b, coef * kb)
        return self.reduce({k: c for k, c in out.items() if c})

    def highest_weight_vectors(self, d: int, twoj: int) -> list[dict]:
        cols = [c for c in self.basis(d) if self.weight_of(c) == twoj]
        if not cols:
            return []
        images = {c: self.act("E", {c: self.field.one}) for c in cols}
        rows: dict = {}
        for c, img in images.items():
            for r, a in img.items():
                rows.setdefault(r, {})[c] = a
        return nullspace(list(rows.values()), cols, self.field.one)

    def multiplicities(self, d: int) -> dict[int, int]:
        """Spin multiplicities (keyed by 2j) of the level-<=d truncation."""
        weights = {self.weight_of(c) for c in self.basis(d)}
        out = {}
        for t in sorted(w for w in weights if w >= 0):
            m = len(self.highest_weight_vectors(d, t))
            if m:
                out[t] = m
        return out

    def level_table(self) -> list[dict[int, int]]:
        """Per-level isotypic content: multiplicities of F_d minus those of F_{d-1}."""
        table = []
        prev: dict[int, int] = {}
        for d in range(self.D + 1):
            cur = self.multiplicities(d)
            diff = {t: cur.get(t, 0) - prev.get(t, 0) for t in set(cur) | set(prev)}
            table.append({t: m for t, m in sorted(diff.items()) if m})
            prev = cur
        return table

    def equivariance_defect(self, d: int | None = None):
        """Check that E, F, K map relations into relations (levels <= d)."""
        d = self.D if d is None else d
        for piv, row in self.relations.pivots.items():
            if self.level_of(piv) > d:
                continue
            for X in ("E", "F", "K"):
                img = self.act(X, row)
                if img:
                    return (X, piv)
        return None


def _fibre_generators(S: TensorSphere, kind: str):
    """Fibre module and the generating elements of the submodule (as (word, b) dicts)."""
    f = S.field
    V = S.module()
    if kind == "omega0":
        return spin_module(0, f, S.classical), []
    VV = V.tensor(V)
    if kind in ("omega1", "tangent"):
        vecs = [component_basis(VV, 0, normalize_at=_pair_index(0, 2))[0]]
    else:
        vecs = component_basis(VV, 2, normalize_at=_pair_index(0, 1))
    gens = []
    for vec in vecs:
        g = {}
        for idx, c in vec.items():
            a, b = divmod(idx, 3)
            g[((a,), b)] = c
        gens.append(g)
    return V, gens


def build_omega(kind, D: int, sphere: TensorSphere | None = None, *, c=None,
                slack: int = 2, classical: bool = False) -> FormModule:
    """Truncated form module of the tensor-realization sphere.

    Relations at level <= D are computed from a * g for all normal words a up
    to level D + slack - 1, so that inhomogeneous reductions landing back in
    low levels are captured.
    """
    kind = _kind(kind)
    if sphere is None:
        f = ScalarField(("q",))
        sphere = build_sphere_tensor(f(-1) if c is None else c, degree=D + slack + 2,
                                     classical=classical)
    S = sphere
    top = D + slack
    words = S.rs.normal_words(top)
    fibre, gens = _fibre_generators(S, kind)
    alg = S.alg
    columns: dict = {lev: [] for lev in range(top + 1)}
    for w in words:
        for b in range(fibre.dim):
            columns[alg.weight(w)].append((w, b))
    ech = Echelon(key=lambda col: (alg.key(col[0]), col[1]))
    f = S.field
    for a in words:
        if alg.weight(a) > top - 1:
            continue
        pa = NCPoly(alg, {a: f.one})
        for g in gens:
            row: dict = {}
            for (gw, b), c in g.items():
                prod = S.rs.multiply(pa, NCPoly(alg, {gw: f.one}))
                for w, cw in prod.terms.items():
                    key = (w, b)
                    s = row.get(key)
                    row[key] = cw * c if s is None else s + cw * c
            ech.add({k: v for k, v in row.items() if v})
    return FormModule(kind, S, D, fibre, gens, ech, slack, columns)


# -- isotypic components and the differential ---------------------------------------------

@dataclass(frozen=True)
class Component:
    degree: int  # form degree p
    level: int
    twoj: int

    def label(self) -> str:
        return f"p{self.degree}/l{self.level}/j{Fraction(self.twoj, 2)}"


def components(M: FormModule, degree: int, D: int | None = None) -> dict:
    """Highest-weight vector of each (level, spin) component, new at its level.

    At each level the new highest-weight vectors are reduced against those of
    lower levels, which fixes a deterministic complement.
    """
    D = M.D if D is None else D
    key = lambda col: (M.sphere.alg.key(col[0]), col[1])
    out: dict = {}
    for t in sorted({M.weight_of(c) for c in M.basis(D) if M.weight_of(c) >= 0}):
        ech = Echelon(key=key)
        for d in range(D + 1):
            new = []
            for v in M.highest_weight_vectors(d, t):
                r = ech.reduce(v)
                if r:
                    ech.add(r)
                    new.append(r)
            if len(new) > 1:
                raise DegenerateSpectrum(f"spin {t}/2 is new {len(new)} times at level {d}")
            if new:
                out[Component(degree, d, t)] = new[0]
    return out


def _orbit(M: FormModule, h: dict, twoj: int) -> list[dict]:
    vecs = [h]
    for _ in range(twoj):
        vecs.append(M.act("F", vecs[-1]))
    return vecs


def _beta(S: TensorSphere) -> dict:
    """(a, b) -> coordinates of (f_a(x)f_b - f_b(x)f_a)/2 in the basis u_k (q = 1)."""
    u = S.u
    f = S.field
    unknowns = [0, 1, 2]
    out = {}
    for a in range(3):
        for b in range(3):
            target: dict = {}
            half = f(Fraction(1, 2))
            for (i, j), s in (((a, b), half), ((b, a), -half)):
                idx = _pair_index(i, j)
                target[idx] = target.get(idx, f.zero) + s
            eqs: dict = {}
            for k in unknowns:
                for idx, c in u[k].items():
                    eqs.setdefault(idx, {})[k] = c
            for idx, c in target.items():
                if c:
                    eqs.setdefault(idx, {})[None] = -c
            sol, _ = solve_affine(list(eqs.values()), unknowns, f.one)
            out[(a, b)] = sol
    return out


def classical_d(src: FormModule, dst: FormModule, v: dict) -> dict:
    """The q = 1 de Rham differential Omega^p -> Omega^{p+1}, p = 0, 1."""
    S = src.sphere
    if not S.classical:
        raise ValueError("classical_d needs the q = 1 sphere")
    f = S.field
    beta = _beta(S) if src.kind != "omega0" else None
    out: dict = {}
    for (word, b), coef in v.items():
        for i, a in enumerate(word):
            rest = S.rs.normal_form(NCPoly(S.alg, {word[:i] + word[i + 1:]: f.one}))
            if beta is None:
                targets = {a: f.one}
            else:
                targets = beta[(a, b)]
            for r, cr in targets.items():
                for w, cw in rest.terms.items():
                    key = (w, r)
                    val = coef * cw * cr
                    s = out.get(key)
                    out[key] = val if s is None else s + val
    return dst.reduce({k: c for k, c in out.items() if c})


def _coordinates(vec: dict, basis: dict, field: ScalarField) -> dict:
    """Coefficients of vec in terms of the given (labelled) vectors; raises if outside."""
    labels = list(basis)
    eqs: dict = {}
    for i, lab in enumerate(labels):
        for col, c in basis[lab].items():
            eqs.setdefault(col, {})[i] = c
    for col, c in vec.items():
        eqs.setdefault(col, {})[None] = -c
    sol, _ = solve_affine(list(eqs.values()), list(range(len(labels))), field.one)
    return {labels[i]: c for i, c in sol.items() if c}


def classical_support(D: int, c=-1, slack: int = 2) -> dict:
    """(source component) -> {target component: coefficient} for the q = 1 de Rham d."""
    f = ScalarField(("q",))
    S = build_sphere_tensor(f(c), degree=D + slack + 2, classical=True)
    mods = [build_omega(k, D, S, slack=slack) for k in ("omega0", "omega1", "omega2")]
    comps = [components(M, p) for p, M in enumerate(mods)]
    out = {}
    for p in (0, 1):
        for C, h in comps[p].items():
            img = classical_d(mods[p], mods[p + 1], h)
            same = {K: v for K, v in comps[p + 1].items() if K.twoj == C.twoj}
            out[C] = _coordinates(img, same, f) if img else {}
    return out


@dataclass
class Differential:
    """d on Omega^0 -> Omega^1 -> Omega^2, one scalar per (source, target) component pair."""

    modules: list  # [Omega^0, Omega^1, Omega^2]
    comps: list  # per degree: {Component: highest-weight vector}
    scalars: dict  # (source, target) -> scalar
    classical: bool = False

    @property
    def field(self) -> ScalarField:
        return self.modules[0].field

    def apply(self, p: int, C: Component, k: int) -> dict:
        """d(F^k h_C) as a vector of Omega^{p+1}."""
        out: dict = {}
        dst = self.modules[p + 1]
        for (src, tgt), s in self.scalars.items():
            if src != C:
                continue
            v = _orbit(dst, self.comps[p + 1][tgt], tgt.twoj)[k]
            for col, c in v.items():
                val = s * c
                prev = out.get(col)
                out[col] = val if prev is None else prev + val
        return {col: c for col, c in out.items() if c}

    def image_vectors(self, p: int, max_level: int) -> list[dict]:
        if p > 1:
            return []
        return [self.apply(p, C, k) for C in self.comps[p] if C.level <= max_level
                for k in range(C.twoj + 1)]

    def square_defect(self):
        """First component whose d(d(.)) is nonzero, or None."""
        for C in self.comps[0]:
            first = {tgt: s for (src, tgt), s in self.scalars.items() if src == C}
            acc: dict = {}
            for tgt, s in first.items():
                for col, c in self.apply(1, tgt, 0).items():
                    prev = acc.get(col)
                    acc[col] = s * c if prev is None else prev + s * c
            if any(acc.values()):
                return C
        return None

    def intertwines(self) -> bool:
        """d commutes with E and F on every orbit vector."""
        for p in (0, 1):
            src, dst = self.modules[p], self.modules[p + 1]
            for C, h in self.comps[p].items():
                orb = _orbit(src, h, C.twoj)
                for k in range(C.twoj + 1):
                    dk = self.apply(p, C, k)
                    # E(F^k h) is proportional to F^{k-1} h
                    Ev = src.act("E", orb[k])
                    if k == 0:
                        if any(dst.act("E", dk).values()):
                            return False
                        continue
                    ratio = _ratio(Ev, orb[k - 1])
                    lhs = dst.act("E", dk)
                    rhs = {c: v * ratio for c, v in self.apply(p, C, k - 1).items()}
                    if dst.reduce(_sub(lhs, rhs)):
                        return False
        return True


def _sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k)
        out[k] = -v if s is None else s - v
    return {k: v for k, v in out.items() if v}


def _ratio(v: dict, w: dict):
    if not w:
        raise DegenerateSpectrum("zero orbit vector")
    k = next(iter(w))
    r = v.get(k)
    if r is None:
        r = w[k] * 0
    if _sub(v, {c: x * r / w[k] for c, x in w.items()}):
        raise DegenerateSpectrum("vectors are not proportional")
    return r / w[k]


def _random_scalar(rng: random.Random, field: ScalarField):
    while True:
        num = rng.randint(-9, 9)
        if num:
            return field(Fraction(num, rng.randint(1, 5)))


def admissible_pairs(support: dict) -> list[tuple]:
    """Scalar slots that must be nonzero; all other (same-spin) slots are zero.

    The d o d = 0 constraints are sum_T s(C, T) s(T, C'') = 0; a constraint
    with a single surviving product is unsatisfiable.
    """
    pairs = [(C, T) for C, tgts in support.items() for T in tgts]
    nonzero = set(pairs)
    for C in support:
        if C.degree != 0:
            continue
        chains: dict = {}
        for T in support[C]:
            for U in support.get(T, {}):
                chains.setdefault(U, []).append(T)
        for U, via in chains.items():
            if len(via) == 1 and (C, via[0]) in nonzero and (via[0], U) in nonzero:
                raise NoAdmissibleDifferential(
                    f"d o d = 0 forces a zero on {C.label()} -> {via[0].label()} -> {U.label()}")
    return pairs


def build_differential(D: int, *, c=-1, seed: int | None = 0, classical: bool = False,
                       slack: int = 2, sphere: TensorSphere | None = None) -> Differential:
    """Random admissible d on the truncated complex (exact q = 1 d when classical)."""
    f = ScalarField(("q",))
    support = classical_support(D, c, slack)
    pairs = admissible_pairs(support)
    if sphere is None:
        sphere = build_sphere_tensor(f(c), degree=D + slack + 2, classical=classical)
    mods = [build_omega(k, D, sphere, slack=slack) for k in ("omega0", "omega1", "omega2")]
    comps = [components(M, p) for p, M in enumerate(mods)]
    for p in range(3):
        labels = {(C.level, C.twoj) for C in comps[p]}
        expected = {(C.level, C.twoj) for C in support if C.degree == p}
        if p < 2 and labels != expected:
            raise NoAdmissibleDifferential(f"component labels of degree {p} differ from q = 1")
    if classical:
        scalars = {pair: support[pair[0]][pair[1]] for pair in pairs}
    else:
        rng = random.Random(seed)
        scalars = {pair: _random_scalar(rng, f) for pair in pairs}
    d = Differential(mods, comps, scalars, classical)
    bad = d.square_defect()
    if bad is not None:
        raise NoAdmissibleDifferential(f"d o d != 0 on {bad.label()}")
    return d


def _rank_upto(M: FormModule, vectors: list[dict], max_level: int) -> int:
    key = lambda col: (M.sphere.alg.key(col[0]), col[1])
    ech = Echelon(key=key)
    for v in vectors:
        v = M.reduce(v)
        if v:
            ech.add(v)
    return sum(1 for piv in ech.pivots if M.level_of(piv) <= max_level)


def cohomology_dims(D: int = 4, *, d: Differential | None = None, **kw) -> tuple[int, int, int]:
    """Betti-type numbers of the complex on levels <= D - 1.

    Kernels are taken on the level <= D - 1 truncation; images come from
    levels <= D and are intersected with the same range.
    """
    d = d or build_differential(D, **kw)
    top = D - 1
    dims = []
    for p in range(3):
        M = d.modules[p]
        dim = M.dimension(top)
        if p < 2:
            rank_out = _rank_upto(d.modules[p + 1], d.image_vectors(p, top), D)
        else:
            rank_out = 0
        kernel = dim - rank_out
        image_in = _rank_upto(M, d.image_vectors(p - 1, D), top) if p > 0 else 0
        dims.append(kernel - image_in)
    return tuple(dims)


# -- cross-check with the RE-quotient sphere ---------------------------------------------------

# sl(2) weights of the entries l_i^j of L (the adjoint action of the diagonal torus).
RE_WEIGHTS = {"l11": 0, "l12": 2, "l21": -2, "l22": 0}


@dataclass
class RealizationMatch:
    images: dict  # x_k -> NCPoly in the RE sphere
    lam2: QScalar  # square of the overall scale
    lam: QScalar | None
    t: QScalar
    raising: str  # the entry of L that x_0 is sent to
    tensor_levels: list
    re_levels: list
    relations_ok: bool
    spans_ok: bool

    @property
    def levels_agree(self) -> bool:
        return self.tensor_levels == self.re_levels

    def summary(self) -> dict:
        return {
            "images": {k: str(v) for k, v in self.images.items()},
            "lambda^2": str(self.lam2),
            "t": str(self.t),
            "relations_ok": self.relations_ok,
            "spans_ok": self.spans_ok,
            "tensor_levels": [_table_json(t) for t in self.tensor_levels],
            "re_levels": [_table_json(t) for t in self.re_levels],
            "levels_agree": self.levels_agree,
        }


def _table_json(table: dict[int, int]) -> dict[str, int]:
    return {str(Fraction(t, 2)): m for t, m in sorted(table.items())}


def re_level_table(S_re, D: int) -> list[dict[int, int]]:
    """Per-level spin multiplicities of the RE sphere, from the K-weight character."""
    alg = S_re.alg
    words = S_re.rs.normal_words(D)
    out = []
    prev: dict[int, int] = {}
    for d in range(D + 1):
        char: dict[int, int] = {}
        for w in words:
            if alg.weight(w) <= d:
                wt = sum(RE_WEIGHTS[alg.names[g]] for g in w)
                char[wt] = char.get(wt, 0) + 1
        cur = multiplicities_from_character(char)
        diff = {t: cur.get(t, 0) - prev.get(t, 0) for t in set(cur) | set(prev)}
        out.append({t: m for t, m in sorted(diff.items()) if m})
        prev = cur
    return out


def _substitute(S_re, S_t: TensorSphere, vec: dict, images: list[NCPoly]) -> NCPoly:
    out = S_re.alg.zero()
    for idx, c in vec.items():
        a, b = divmod(idx, 3)
        out = out + S_re.rs.multiply(images[a], images[b]).scale(c)
    return S_re.rs.normal_form(out)


def cross_check_realizations(S_re, S_tensor: TensorSphere, D: int = 3) -> RealizationMatch:
    """Identify the spin-1 generators with the traceless part of L.

    Up to the weight torus, the identification is x_0 -> lam*l_hi,
    x_1 -> lam*l11, x_2 -> lam*t*l_lo.  The spin-1 relations are linear in t;
    the singlet then fixes lam^2 = c_tensor / kappa.  lam must lie in Q(q)
    for the match to count.
    """
    if S_re.n != 2:
        raise NoIsomorphismFound("only the n = 2 sphere has a spin-1 realization")
    F = S_re.field
    if S_tensor.hbar:
        raise NoIsomorphismFound("the RE sphere corresponds to hbar = 0")
    alg = S_re.alg
    u, w = S_tensor.u, S_tensor.w
    for hi, lo in (("l12", "l21"), ("l21", "l12")):
        x0, x1, x2 = alg.gen(hi), alg.gen("l11"), alg.gen(lo)
        # u_0 and u_2 do not involve t; they select the orientation
        base = [x0, x1, x2]
        if not _substitute(S_re, S_tensor, u[0], base).is_zero():
            continue
        # t enters linearly: relation(t) = A + t B
        zero_t = _substitute(S_re, S_tensor, u[1], [x0, x1, x2.scale(F.zero)])
        one_t = _substitute(S_re, S_tensor, u[1], base)
        B = one_t - zero_t
        eqs = []
        for word in set(zero_t.terms) | set(B.terms):
            row = {}
            if word in B.terms:
                row["t"] = B.terms[word]
            if word in zero_t.terms:
                row[None] = zero_t.terms[word]
            eqs.append(row)
        try:
            sol, homog = solve_affine(eqs, ["t"], F.one)
        except ArithmeticError:
            continue
        if homog or "t" not in sol:
            continue
        t = sol["t"]
        images = [x0, x1, x2.scale(t)]
        if not _substitute(S_re, S_tensor, u[2], images).is_zero():
            continue
        kappa_poly = _substitute(S_re, S_tensor, w, images)
        if set(kappa_poly.terms) - {()}:
            continue
        kappa = kappa_poly.terms.get((), F.zero)
        if not kappa:
            continue
        c_t = F.coerce(S_tensor.c) if S_tensor.c.field != F else S_tensor.c
        lam2 = c_t / kappa
        lam = scalar_sqrt(lam2)
        if lam is None:
            raise NoIsomorphismFound(
                f"lambda^2 = {lam2} is not a square in Q(q): sphere constants do not match")
        images = [g.scale(lam) for g in images]
        rel_ok = all(_substitute(S_re, S_tensor, uk, images).is_zero() for uk in u)
        rel_ok &= (_substitute(S_re, S_tensor, w, images) - c_t).is_zero()
        spans_ok = _spans(S_re, S_tensor, images, D)
        tensor_levels = build_omega("omega0", D, S_tensor).level_table()
        return RealizationMatch(
            {GEN[k]: images[k] for k in range(3)}, lam2, lam, t, hi,
            tensor_levels, re_level_table(S_re, D), rel_ok, spans_ok)
    raise NoIsomorphismFound("no weight-diagonal identification maps relations into relations")


def _spans(S_re, S_t: TensorSphere, images: list[NCPoly], D: int) -> bool:
    """phi maps the level <= d normal words onto a spanning set of F_d(RE sphere)."""
    key = S_re.alg.key
    for d in range(D + 1):
        ech = Echelon(key=key)
        for w in S_t.rs.normal_words(d):
            img = S_re.alg.one()
            for g in w:
                img = S_re.rs.multiply(img, images[g])
            if img.terms:
                ech.add(dict(img.terms))
        if len(ech) != S_re.rs.filtered_dimension(d):
            return False
    return True
