"""Independent oracles.

Nothing here imports the package's rewriting, linear algebra or forms code:
coefficients are sympy rational functions in q (or plain Fractions), and the
noncommutative arithmetic is a small dictionary-of-words implementation.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

import sympy as sp

q = sp.Symbol("q")
NAMES = ("l11", "l12", "l21", "l22")
LSYM = sp.symbols(" ".join(NAMES), commutative=False)


def to_sympy(x) -> sp.Expr:
    """Parse a canonical scalar string (or anything with str()) into sympy."""
    return sp.sympify(str(x).replace("^", "**"), locals={"q": q})


def textbook_r(n: int) -> sp.Matrix:
    """R = q sum e_ii(x)e_ii + sum_{i != j} e_ij(x)e_ji + (q - 1/q) sum_{i<j} e_ii(x)e_jj."""
    R = sp.zeros(n * n, n * n)
    for i in range(n):
        R[i * n + i, i * n + i] = q
        for j in range(n):
            if i != j:
                R[i * n + j, j * n + i] = 1
            if i < j:
                R[i * n + j, i * n + j] = q - 1 / q
    return R


def braid_and_hecke(R: sp.Matrix, n: int) -> tuple[bool, bool]:
    I = sp.eye(n)
    R12 = sp.kronecker_product(R, I)
    R23 = sp.kronecker_product(I, R)
    braid = sp.simplify(R12 * R23 * R12 - R23 * R12 * R23) == sp.zeros(n ** 3, n ** 3)
    hecke = sp.simplify(R * R - sp.eye(n * n) - (q - 1 / q) * R) == sp.zeros(n * n, n * n)
    return braid, hecke


def antisymmetrizer_ranks(n: int, q0: int = 3) -> list[int]:
    """Ranks of q-antisymmetrizers at a numeric q, via the kernel of R + q^-1 on each slot."""
    R = textbook_r(n).subs(q, q0)
    ranks = [1, n]
    k = 2
    while True:
        size = n ** k
        # V^{(x)k} antisymmetric part = common eigenspace of all R_i with eigenvalue -1/q
        rows = []
        for i in range(k - 1):
            Ri = sp.kronecker_product(sp.eye(n ** i), R, sp.eye(n ** (k - i - 2)))
            rows.append(Ri + sp.Rational(1, q0) * sp.eye(size))
        M = sp.Matrix.vstack(*rows)
        dim = size - M.rank()
        ranks.append(dim)
        if dim == 0:
            return ranks
        k += 1


def skew_inverse_traces(n: int) -> tuple[list, list]:
    """Diagonals of B = Tr_1 Psi and C = Tr_2 Psi for Tr_2 R_12 Psi_23 = P_13."""
    R = textbook_r(n)
    idx = lambda a, b: a * n + b
    psi = {}
    unknowns = []
    for a, b, c, d in product(range(n), repeat=4):
        s = sp.Symbol(f"psi_{a}{b}{c}{d}")
        psi[(a, b, c, d)] = s
        unknowns.append(s)
    eqs = []
    for i1, i3, k1, k3 in product(range(n), repeat=4):
        total = 0
        for i2, m in product(range(n), repeat=2):
            total += R[idx(i1, i2), idx(k1, m)] * psi[(m, i3, i2, k3)]
        rhs = 1 if (i1 == k3 and i3 == k1) else 0
        eqs.append(total - rhs)
    sol = sp.solve(eqs, unknowns, dict=True)[0]
    Psi = {key: sp.simplify(s.subs(sol)) for key, s in psi.items()}
    B = [sp.simplify(sum(Psi[(m, a, m, a)] for m in range(n))) for a in range(n)]
    C = [sp.simplify(sum(Psi[(a, m, a, m)] for m in range(n))) for a in range(n)]
    return B, C


def proportional(u: list, v: list) -> bool:
    ratio = None
    for a, b in zip(u, v):
        a, b = sp.simplify(a), sp.simplify(b)
        if a == 0 or b == 0:
            if a != b:
                return False
            continue
        r = sp.simplify(a / b)
        if ratio is None:
            ratio = r
        elif sp.simplify(r - ratio) != 0:
            return False
    return True


# -- noncommutative arithmetic for the n = 2 RE algebra ---------------------------------------

def _words(expr) -> dict:
    """sympy noncommutative polynomial -> {word (tuple of generator indices): coefficient}."""
    out: dict = {}
    expr = sp.expand(expr)
    for term in sp.Add.make_args(expr):
        if term == 0:
            continue
        comm, nc = term.args_cnc()
        word = []
        for f in nc:
            base, exp = f.as_base_exp()
            word.extend([NAMES.index(str(base))] * int(exp))
        coef = sp.Mul(*comm)
        key = tuple(word)
        out[key] = sp.cancel(out.get(key, 0) + coef)
    return {w: c for w, c in out.items() if c != 0}


def _key(word):
    return (len(word), word)


def re_relations_sympy(hbar=None) -> list[dict]:
    """Entries of R L1 R L1 - L1 R L1 R (- hbar (R L1 - L1 R)) with L[i][j] = l_i^j."""
    R = textbook_r(2)
    L = sp.Matrix(2, 2, LSYM)
    L1 = sp.kronecker_product(L, sp.eye(2))
    M = R * L1 * R * L1 - L1 * R * L1 * R
    if hbar is not None:
        M = M - hbar * (R * L1 - L1 * R)
    return [w for w in (_words(e) for e in M) if w]


class NCOracle:
    """Rewriting by the reduced relations; confluence is checked, not assumed."""

    def __init__(self, relations: list[dict]):
        rows: list[dict] = []
        for rel in relations:
            r = dict(rel)
            for piv in rows:
                lead = max(piv, key=_key)
                if lead in r:
                    c = r[lead]
                    for w, a in piv.items():
                        r[w] = sp.cancel(r.get(w, 0) - c * a)
                    r = {w: a for w, a in r.items() if a != 0}
            if not r:
                continue
            lead = max(r, key=_key)
            inv = 1 / r[lead]
            r = {w: sp.cancel(a * inv) for w, a in r.items()}
            for piv in rows:
                if lead in piv:
                    c = piv[lead]
                    for w, a in r.items():
                        piv[w] = sp.cancel(piv.get(w, 0) - c * a)
                    for w in [w for w, a in piv.items() if a == 0]:
                        del piv[w]
            rows.append(r)
        self.rules = {}
        for r in rows:
            lead = max(r, key=_key)
            self.rules[lead] = {w: -a for w, a in r.items() if w != lead}

    def reduce(self, poly: dict) -> dict:
        poly = {w: c for w, c in poly.items() if c != 0}
        while True:
            hit = None
            for w in sorted(poly, key=_key, reverse=True):
                for i in range(len(w)):
                    for lead in self.rules:
                        if w[i:i + len(lead)] == lead:
                            hit = (w, i, lead)
                            break
                    if hit:
                        break
                if hit:
                    break
            if hit is None:
                return poly
            w, i, lead = hit
            c = poly.pop(w)
            for tail, a in self.rules[lead].items():
                nw = w[:i] + tail + w[i + len(lead):]
                poly[nw] = sp.cancel(poly.get(nw, 0) + c * a)
                if poly[nw] == 0:
                    del poly[nw]

    def mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for w1, c1 in a.items():
            for w2, c2 in b.items():
                w = w1 + w2
                out[w] = sp.cancel(out.get(w, 0) + c1 * c2)
        return self.reduce(out)

    def confluent_degree3(self) -> bool:
        leads = list(self.rules)
        for a, b in product(leads, repeat=2):
            if a[1:] == b[:1]:
                word = a + b[1:]
                left = self.reduce(_apply(self, word, 0, a))
                right = self.reduce(_apply(self, word, 1, b))
                diff = dict(left)
                for w, c in right.items():
                    diff[w] = sp.cancel(diff.get(w, 0) - c)
                if any(sp.simplify(c) != 0 for c in diff.values()):
                    return False
        return True

    def graded_dims(self, dmax: int) -> list[int]:
        dims = []
        for d in range(dmax + 1):
            count = 0
            for w in product(range(4), repeat=d):
                if not any(w[i:i + 2] in self.rules for i in range(d - 1)):
                    count += 1
            dims.append(count)
        return dims


def _apply(orc: NCOracle, word, i, lead):
    out = {}
    for tail, a in orc.rules[lead].items():
        nw = word[:i] + tail + word[i + len(lead):]
        out[nw] = sp.cancel(out.get(nw, 0) + a)
    return out


@lru_cache(maxsize=None)
def re_oracle() -> NCOracle:
    return NCOracle(re_relations_sympy())


def parse_nc(text: str) -> dict:
    return _words(sp.sympify(text.replace("^", "**"), locals={**dict(zip(NAMES, LSYM)), "q": q}))


def gen_poly(i: int, j: int) -> dict:
    return {(NAMES.index(f"l{i + 1}{j + 1}"),): sp.Integer(1)}


def ch_residual(sigma1: dict, sigma2: dict) -> list[dict]:
    """Entries of L^2 - sigma1 L + sigma2 id in the oracle normal form."""
    orc = re_oracle()
    out = []
    for i in range(2):
        for j in range(2):
            acc: dict = {}
            for k in range(2):
                for w, c in orc.mul(gen_poly(i, k), gen_poly(k, j)).items():
                    acc[w] = acc.get(w, 0) + c
            for w, c in orc.mul(sigma1, gen_poly(i, j)).items():
                acc[w] = acc.get(w, 0) - c
            if i == j:
                for w, c in sigma2.items():
                    acc[w] = acc.get(w, 0) + c
            acc = {w: sp.cancel(c) for w, c in acc.items() if sp.cancel(c) != 0}
            out.append(acc)
    return out


def is_central(x: dict) -> bool:
    orc = re_oracle()
    for g in range(4):
        gp = {(g,): sp.Integer(1)}
        left, right = orc.mul(x, gp), orc.mul(gp, x)
        keys = set(left) | set(right)
        if any(sp.cancel(left.get(w, 0) - right.get(w, 0)) != 0 for w in keys):
            return False
    return True


def shift_identity_holds() -> bool:
    """R(L-h)_1 R(L-h)_1 - (L-h)_1 R (L-h)_1 R equals the deformed relation with hbar = h(q-1/q)."""
    h = sp.Symbol("h")
    R = textbook_r(2)
    L = sp.Matrix(2, 2, LSYM)
    I4 = sp.eye(4)
    L1 = sp.kronecker_product(L, sp.eye(2))
    Ls = L1 - h * I4
    lhs = R * Ls * R * Ls - Ls * R * Ls * R
    hbar = h * (q - 1 / q)
    rhs = R * L1 * R * L1 - L1 * R * L1 * R - hbar * (R * L1 - L1 * R)
    return all(not _words(sp.expand(e)) for e in (lhs - rhs))


# -- classical forms on S^2 (q = 1, commutative, Fraction arithmetic) ------------------------------

WEIGHT = (2, 0, -2)  # weights of x0, x1, x2


def _monomials(deg: int):
    return [(a, b, deg - a - b) for a in range(deg + 1) for b in range(deg + 1 - a)]


def _mono_mul(m1, m2):
    return tuple(x + y for x, y in zip(m1, m2))


def _wt(m):
    return sum(e * w for e, w in zip(m, WEIGHT))


class _Ech:
    def __init__(self, key):
        self.key = key
        self.piv: dict = {}

    def add(self, row: dict) -> None:
        row = {k: v for k, v in row.items() if v}
        for p in sorted((p for p in row if p in self.piv), key=self.key, reverse=True):
            c = row.get(p, 0)
            if c:
                for k, v in self.piv[p].items():
                    row[k] = row.get(k, 0) - c * v
                row = {k: v for k, v in row.items() if v}
        while row:
            lead = max(row, key=self.key)
            if lead not in self.piv:
                inv = 1 / row[lead]
                self.piv[lead] = {k: v * inv for k, v in row.items()}
                return
            c = row[lead]
            for k, v in self.piv[lead].items():
                row[k] = row.get(k, 0) - c * v
            row = {k: v for k, v in row.items() if v}


def classical_form_tables(p: int, D: int, c: Fraction = Fraction(-1), slack: int = 2) -> list[dict]:
    """Per-level spin multiplicities (keyed by 2j) of classical p-forms on 2 x0 x2 - x1^2 = c.

    Omega^p = (k[x] (x) Lambda^p) / (sphere ideal, nu ^ Lambda^{p-1}), with
    nu = x0 dx2 - x1 dx1 + x2 dx0 the differential of the sphere equation.
    """
    if p == 0:
        fibre = [()]
    elif p == 1:
        fibre = [(0,), (1,), (2,)]
    else:
        fibre = [(0, 1), (0, 2), (1, 2)]
    fw = {f: sum(WEIGHT[i] for i in f) for f in fibre}
    top = D + slack
    sphere_eq = {(1, 0, 1): Fraction(2), (0, 2, 0): Fraction(-1), (0, 0, 0): -c}
    nu = {((1, 0, 0), (2,)): 1, ((0, 1, 0), (1,)): -1, ((0, 0, 1), (0,)): 1}
    gens = []
    for f in fibre:
        gens.append({(m, f): v for m, v in sphere_eq.items()})
    if p >= 1:
        lower = [()] if p == 1 else [(0,), (1,), (2,)]
        for g in lower:
            rel: dict = {}
            for (m, (a,)), v in nu.items():
                idx = tuple(sorted((a,) + g))
                if len(set(idx)) < len(idx):
                    continue
                sign = 1
                if g and a > g[0]:
                    sign = -1
                key = (m, idx)
                rel[key] = rel.get(key, 0) + sign * v
            gens.append(rel)
    key = lambda col: (sum(col[0]), col[0], col[1])
    ech = _Ech(key)
    for g in gens:
        gdeg = max(sum(m) for m, _ in g)
        for d in range(top - gdeg + 1):
            for m in _monomials(d):
                ech.add({(_mono_mul(m, gm), f): Fraction(v) for (gm, f), v in g.items()})
    tables = []
    prev: dict = {}
    for d in range(D + 1):
        char: dict = {}
        for e in range(d + 1):
            for m in _monomials(e):
                for f in fibre:
                    if (m, f) not in ech.piv:
                        w = _wt(m) + fw[f]
                        char[w] = char.get(w, 0) + 1
        mult = {}
        for w in sorted(char):
            if w >= 0:
                k = char.get(w, 0) - char.get(w + 2, 0)
                if k:
                    mult[w] = k
        diff = {t: mult.get(t, 0) - prev.get(t, 0) for t in set(mult) | set(prev)}
        tables.append({t: m for t, m in sorted(diff.items()) if m})
        prev = mult
    return tables


# -- classical symmetrized extension -----------------------------------------------------------

def classical_cubic_residual(L: sp.Matrix) -> sp.Matrix:
    """For a numeric 2x2 L, evaluate the q = 1 cubic on L_+ = P (L (x) 1) P.

    With a = tr L, b = -det L and kappa = 1/2 the cubic is
    L_+^3 - a(1 + kappa) L_+^2 + (a^2 kappa - b) L_+ + a b kappa P.
    """
    P = sp.zeros(4, 4)
    for i, j in product(range(2), repeat=2):
        P[i * 2 + j, i * 2 + j] += sp.Rational(1, 2)
        P[i * 2 + j, j * 2 + i] += sp.Rational(1, 2)
    Lp = P * sp.kronecker_product(L, sp.eye(2)) * P
    a, b, k = L.trace(), -L.det(), sp.Rational(1, 2)
    return Lp ** 3 - a * (1 + k) * Lp ** 2 + (a * a * k - b) * Lp + a * b * k * P


# -- U_q(sl(2)) modules in sympy ------------------------------------------------------------------

def qint(n: int) -> sp.Expr:
    return sp.cancel((q ** n - q ** -n) / (q - 1 / q))


def uq_spin(twoj: int) -> tuple[sp.Matrix, sp.Matrix, sp.Matrix]:
    """(E, F, K) with F f_k = f_{k+1}, E f_k = [k][2j-k+1] f_{k-1}, K f_k = q^(2j-2k) f_k."""
    d = twoj + 1
    E, F, K = sp.zeros(d, d), sp.zeros(d, d), sp.zeros(d, d)
    for k in range(d):
        K[k, k] = q ** (twoj - 2 * k)
        if k + 1 < d:
            F[k + 1, k] = 1
        if k >= 1:
            E[k - 1, k] = qint(k) * qint(twoj - k + 1)
    return E, F, K


def uq_tensor(a, b):
    Ea, Fa, Ka = a
    Eb, Fb, Kb = b
    Ia, Ib = sp.eye(Ea.shape[0]), sp.eye(Eb.shape[0])
    E = sp.kronecker_product(Ea, Ib) + sp.kronecker_product(Ka, Eb)
    F = sp.kronecker_product(Fa, Kb.inv()) + sp.kronecker_product(Ia, Fb)
    return E, F, sp.kronecker_product(Ka, Kb)


def uq_relations_hold(mod) -> bool:
    E, F, K = mod
    Ki = K.inv()
    ok1 = sp.simplify(K * E * Ki - q ** 2 * E) == sp.zeros(*E.shape)
    ok2 = sp.simplify(K * F * Ki - q ** -2 * F) == sp.zeros(*E.shape)
    ok3 = sp.simplify(E * F - F * E - (K - Ki) / (q - 1 / q)) == sp.zeros(*E.shape)
    return ok1 and ok2 and ok3


def highest_weight_counts(mod) -> dict[int, int]:
    """{2j: number of independent E-killed vectors of K-eigenvalue q^(2j)}."""
    E, _, K = mod
    out = {}
    for twoj in range(0, 9):
        cols = [i for i in range(K.shape[0]) if sp.simplify(K[i, i] - q ** twoj) == 0]
        if not cols:
            continue
        sub = E[:, cols]
        k = len(cols) - sub.rank(simplify=True)
        if k:
            out[twoj] = k
    return out
