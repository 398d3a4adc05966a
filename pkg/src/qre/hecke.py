"""Hecke symmetries, q-(anti)symmetrizers and the Poincare series of the
skew-symmetric algebra.

Matrices act on V^{(x)k} with basis indices ordered lexicographically, so the
pair (i, j) of V (x) V sits at position ``i*n + j``.  R is always stored in
braid form, i.e. already composed with the flip.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .coeff import QScalar, ScalarField, ScalarParseError, q_number
from .linalg import Matrix


class NotIdempotent(ArithmeticError):
    pass


class NotHecke(ValueError):
    pass


class RMatrixParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class HeckeSymmetry:
    n: int
    matrix: Matrix
    braid_ok: bool = False
    hecke_ok: bool = False

    @property
    def field(self) -> ScalarField:
        return self.matrix.field

    @property
    def q(self) -> QScalar:
        return self.field.q

    def validated(self) -> bool:
        return self.braid_ok and self.hecke_ok

    def require_valid(self) -> None:
        if not self.validated():
            raise NotHecke("R fails the braid or Hecke condition")

    def local(self, k: int, i: int) -> Matrix:
        """R_i = id^{(i-1)} (x) R (x) id^{(k-i-1)} on V^{(x)k}, 1 <= i < k."""
        return _local(self, k, i)


def _local(R: HeckeSymmetry, k: int, i: int) -> Matrix:
    f = R.field
    left = Matrix.identity(R.n ** (i - 1), f)
    right = Matrix.identity(R.n ** (k - i - 1), f)
    return left.kron(R.matrix).kron(right)


def flip(n: int, field: ScalarField | None = None) -> Matrix:
    field = field or ScalarField(("q",))
    P = Matrix.zeros(n * n, n * n, field)
    for i in range(n):
        for j in range(n):
            P.rows[i * n + j][j * n + i] = field.one
    return P


def standard_r(n: int, field: ScalarField | None = None) -> HeckeSymmetry:
    """Braid-form Drinfeld-Jimbo symmetry of U_q(sl(n))."""
    if n < 2:
        raise ValueError("standard_r needs n >= 2")
    field = field or ScalarField(("q",))
    q = field.q
    M = Matrix.zeros(n * n, n * n, field)
    for i in range(n):
        M.rows[i * n + i][i * n + i] = q
        for j in range(i + 1, n):
            a, b = i * n + j, j * n + i
            M.rows[a][a] = q - q.inv()
            M.rows[a][b] = field.one
            M.rows[b][a] = field.one
    return make_symmetry(M, n)


def make_symmetry(M: Matrix, n: int | None = None) -> HeckeSymmetry:
    """Wrap a matrix and record the outcome of both checks."""
    size = M.shape[0]
    if n is None:
        n = round(size ** 0.5)
    if M.shape != (n * n, n * n):
        raise ValueError(f"R must be {n * n}x{n * n}, got {M.shape}")
    R = HeckeSymmetry(n, M)
    R.braid_ok = check_braid(R).ok
    R.hecke_ok = check_hecke(R).ok
    return R


def _as_symmetry(R) -> HeckeSymmetry:
    if isinstance(R, HeckeSymmetry):
        return R
    n = round(R.shape[0] ** 0.5)
    return HeckeSymmetry(n, R)


def check_braid(R) -> CheckResult:
    R = _as_symmetry(R)
    R1 = _local(R, 3, 1)
    R2 = _local(R, 3, 2)
    lhs = R1 @ R2 @ R1
    rhs = R2 @ R1 @ R2
    w = lhs.diff_witness(rhs)
    return CheckResult(w is None, w)


def check_hecke(R) -> CheckResult:
    R = _as_symmetry(R)
    M = R.matrix
    q = M.field.q
    lhs = M @ M
    rhs = Matrix.identity(M.shape[0], M.field) + M.scale(q - q.inv())
    w = lhs.diff_witness(rhs)
    return CheckResult(w is None, w)


def _idempotent_from(M: Matrix) -> Matrix:
    """Rescale M with M^2 = lam*M to an idempotent (zero stays zero)."""
    first = M.first_nonzero()
    if first is None:
        return M
    M2 = M @ M
    (i, j), a = first
    lam = M2[i, j] / a
    if not lam or M2 != M.scale(lam):
        raise NotIdempotent("recursion output is not proportional to an idempotent")
    return M.scale(lam.inv())


def _projector(R: HeckeSymmetry, k: int, sign: int) -> Matrix:
    field = R.field
    q = field.q
    if k <= 1:
        return Matrix.identity(R.n ** max(k, 0), field)
    prev = _projector_cached(R, k - 1, sign).kron(Matrix.identity(R.n, field))
    size = R.n ** k
    Rk = _local(R, k, k - 1)
    if sign > 0:
        mid = Matrix.identity(size, field).scale(q ** (-(k - 1))) + Rk.scale(q_number(k - 1, field))
    else:
        mid = Matrix.identity(size, field).scale(q ** (k - 1)) - Rk.scale(q_number(k - 1, field))
    P = _idempotent_from(prev @ mid @ prev)
    if P @ P != P:
        raise NotIdempotent(f"projector of degree {k} is not idempotent")
    return P


_CACHE: dict = {}


def _projector_cached(R: HeckeSymmetry, k: int, sign: int) -> Matrix:
    key = (id(R), k, sign)
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is R:
        return hit[1]
    P = _projector(R, k, sign)
    _CACHE[key] = (R, P)
    return P


def symmetrizer(R: HeckeSymmetry, k: int) -> Matrix:
    """Idempotent onto the q-symmetric part of V^{(x)k}."""
    if k < 1:
        raise ValueError("k >= 1 required")
    return _projector_cached(R, k, +1)


def antisymmetrizer(R: HeckeSymmetry, k: int) -> Matrix:
    """Idempotent onto the q-antisymmetric part of V^{(x)k}."""
    if k < 1:
        raise ValueError("k >= 1 required")
    return _projector_cached(R, k, -1)


def projector_rank(P: Matrix) -> int:
    r = P.rank()
    tr = P.trace()
    if tr != r:
        raise NotIdempotent(f"trace {tr} differs from rank {r}")
    return r


def poincare_minus(R: HeckeSymmetry, kmax: int) -> list[int]:
    """Ranks of P_-^{(k)} for k = 0..kmax."""
    out = [1]
    for k in range(1, kmax + 1):
        if out[-1] == 0:
            out.append(0)
            continue
        out.append(projector_rank(antisymmetrizer(R, k)))
    return out


def hecke_rank(R: HeckeSymmetry, kmax: int | None = None) -> int:
    kmax = kmax or R.n + 2
    k = 0
    while k < kmax:
        if projector_rank(antisymmetrizer(R, k + 1)) == 0:
            return k
        k += 1
    raise ValueError(f"no vanishing antisymmetrizer up to degree {kmax}")


def classical_matrix(M: Matrix) -> list[list]:
    """Entrywise q -> 1 (rational entries)."""
    from .coeff import classical_limit
    return [[classical_limit(a) for a in row] for row in M.rows]


# -- text format ----------------------------------------------------------------
#
#   n = 2
#   params = q
#   # row col = value   (0-based flat indices into V(x)V, unlisted entries are 0)
#   0 0 = q
#   1 1 = q - q^-1

def parse_rmatrix(text: str) -> HeckeSymmetry:
    n = None
    params = ("q",)
    entries: list[tuple[int, int, int, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = re.match(r"\s*(n|params)\s*=\s*(.*)$", line)
        if m:
            if m.group(1) == "n":
                if not m.group(2).strip().isdigit():
                    raise RMatrixParseError("n must be a positive integer", lineno, m.start(2) + 1)
                n = int(m.group(2))
            else:
                params = tuple(p.strip() for p in m.group(2).split(",") if p.strip())
            continue
        m = re.match(r"\s*(\d+)\s+(\d+)\s*=\s*(.*)$", line)
        if not m:
            raise RMatrixParseError("expected 'row col = value'", lineno, 1)
        entries.append((lineno, int(m.group(1)), int(m.group(2)), m.group(3), m.start(3)))
    if n is None:
        raise RMatrixParseError("missing 'n = ...' header", 1, 1)
    try:
        field = ScalarField(params)
    except ValueError as exc:
        raise RMatrixParseError(str(exc), 1, 1) from None
    M = Matrix.zeros(n * n, n * n, field)
    for lineno, r, c, expr, off in entries:
        if r >= n * n or c >= n * n:
            raise RMatrixParseError(f"index ({r}, {c}) out of range", lineno, 1)
        try:
            M.rows[r][c] = field.parse(expr)
        except ScalarParseError as exc:
            raise RMatrixParseError(str(exc).split(" (column")[0], lineno, off + (exc.col or 1)) from None
    return make_symmetry(M, n)


def load_rmatrix(path: str | Path) -> HeckeSymmetry:
    return parse_rmatrix(Path(path).read_text(encoding="utf-8"))


def format_rmatrix(R: HeckeSymmetry) -> str:
    lines = [f"n = {R.n}", "params = " + ", ".join(R.field.names)]
    for i, row in enumerate(R.matrix.rows):
        for j, a in enumerate(row):
            if a:
                lines.append(f"{i} {j} = {a}")
    return "\n".join(lines) + "\n"
