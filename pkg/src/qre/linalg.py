"""Exact linear algebra over QScalar / ExtScalar.

Sparse rows are plain dicts ``{column: scalar}`` with no stored zeros.  Columns
can be any hashable; pivot choice follows an optional sort key so that, e.g.,
relation spaces are echelonized with respect to a term order.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Sequence

from .coeff import ScalarField


class LinAlgError(ArithmeticError):
    pass


def axpy(target: dict, coef, source: dict) -> None:
    """target += coef * source, in place, dropping zeros."""
    for k, v in source.items():
        prod = coef * v
        cur = target.get(k)
        if cur is None:
            if prod:
                target[k] = prod
        else:
            s = cur + prod
            if s:
                target[k] = s
            else:
                del target[k]


class Echelon:
    """Incrementally maintained reduced row echelon form.

    ``add`` returns the reduced remainder of the new row (empty if it was
    dependent).  Pivot rows are monic at their pivot column.
    """

    def __init__(self, key: Callable | None = None):
        self.key = key
        self.pivots: dict[Hashable, dict] = {}

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        for c in [c for c in row if c in self.pivots]:
            coef = row.get(c)
            if coef:
                axpy(row, -coef, self.pivots[c])
        return row

    def add(self, row: dict) -> dict:
        row = self.reduce(row)
        if not row:
            return row
        col = max(row, key=self.key) if self.key else next(iter(row))
        inv = row[col].inv()
        row = {k: v * inv for k, v in row.items()}
        for prow in self.pivots.values():
            coef = prow.get(col)
            if coef:
                axpy(prow, -coef, row)
        self.pivots[col] = row
        return row

    def __len__(self) -> int:
        return len(self.pivots)

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def rows(self) -> list[dict]:
        if self.key:
            return [self.pivots[c] for c in sorted(self.pivots, key=self.key, reverse=True)]
        return list(self.pivots.values())


def rank(rows: Iterable[dict]) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return len(ech)


def nullspace(equations: Iterable[dict], unknowns: Sequence[Hashable], one) -> list[dict]:
    """Basis of {x : sum_u eq[u] x[u] = 0 for all eq}."""
    order = {u: i for i, u in enumerate(unknowns)}
    ech = Echelon(key=lambda u: -order[u])
    for eq in equations:
        ech.add(eq)
    free = [u for u in unknowns if u not in ech.pivots]
    basis = []
    for f in free:
        vec = {f: one}
        for p, prow in ech.pivots.items():
            c = prow.get(f)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis


def solve_affine(equations: Iterable[dict], unknowns: Sequence[Hashable], one):
    """Solve sum eq[u] x[u] + eq[None] = 0.

    Returns (particular solution, homogeneous basis) or raises LinAlgError if
    inconsistent.  ``None`` is the constant column.
    """
    order = {u: i for i, u in enumerate(unknowns)}
    order[None] = len(unknowns)
    ech = Echelon(key=lambda u: -order[u])
    for eq in equations:
        ech.add(eq)
    if None in ech.pivots:
        raise LinAlgError("inconsistent linear system")
    particular = {}
    for p, prow in ech.pivots.items():
        c = prow.get(None)
        if c:
            particular[p] = -c
    homog = []
    for f in (u for u in unknowns if u not in ech.pivots):
        vec = {f: one}
        for p, prow in ech.pivots.items():
            c = prow.get(f)
            if c:
                vec[p] = -c
        homog.append(vec)
    return particular, homog


class Matrix:
    """Dense matrix of scalars (QScalar or ExtScalar)."""

    __slots__ = ("rows", "field")

    def __init__(self, rows: list[list], field: ScalarField):
        self.rows = rows
        self.field = field

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    @classmethod
    def zeros(cls, m: int, n: int, field: ScalarField) -> Matrix:
        return cls([[field.zero] * n for _ in range(m)], field)

    @classmethod
    def identity(cls, n: int, field: ScalarField) -> Matrix:
        M = cls.zeros(n, n, field)
        for i in range(n):
            M.rows[i][i] = field.one
        return M

    @classmethod
    def from_entries(cls, entries: dict, m: int, n: int, field: ScalarField) -> Matrix:
        M = cls.zeros(m, n, field)
        for (i, j), v in entries.items():
            M.rows[i][j] = field(v) if not hasattr(v, "r") else v
        return M

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def copy(self) -> Matrix:
        return Matrix([list(r) for r in self.rows], self.field)

    def __add__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.field)

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.field)

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self.rows], self.field)

    def scale(self, c) -> Matrix:
        return Matrix([[c * a for a in r] for r in self.rows], self.field)

    def __matmul__(self, other: Matrix) -> Matrix:
        m, k = self.shape
        k2, n = other.shape
        if k != k2:
            raise LinAlgError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.field.zero
        cols = [[(t, other.rows[t][j]) for t in range(k) if other.rows[t][j]] for j in range(n)]
        out = []
        for r in self.rows:
            nz = {t: a for t, a in enumerate(r) if a}
            row = []
            for col in cols:
                acc = zero
                for t, b in col:
                    a = nz.get(t)
                    if a is not None:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, self.field)

    def kron(self, other: Matrix) -> Matrix:
        m, n = self.shape
        p, r = other.shape
        zero = self.field.zero
        out = [[zero] * (n * r) for _ in range(m * p)]
        for i in range(m):
            for j in range(n):
                a = self.rows[i][j]
                if not a:
                    continue
                for k in range(p):
                    for l in range(r):
                        b = other.rows[k][l]
                        if b:
                            out[i * p + k][j * r + l] = a * b
        return Matrix(out, self.field)

    def transpose(self) -> Matrix:
        return Matrix([list(c) for c in zip(*self.rows)], self.field)

    def map(self, fn) -> Matrix:
        return Matrix([[fn(a) for a in r] for r in self.rows], self.field)

    def trace(self):
        acc = self.field.zero
        for i in range(min(self.shape)):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def first_nonzero(self):
        for i, r in enumerate(self.rows):
            for j, a in enumerate(r):
                if a:
                    return (i, j), a
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix) or self.shape != other.shape:
            return False
        return all(a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def diff_witness(self, other: Matrix):
        """First entry index where the matrices differ, or None."""
        for i, (r, s) in enumerate(zip(self.rows, other.rows)):
            for j, (a, b) in enumerate(zip(r, s)):
                if a != b:
                    return (i, j)
        return None

    def sparse_rows(self) -> list[dict]:
        return [{j: a for j, a in enumerate(r) if a} for r in self.rows]

    def rank(self) -> int:
        return rank(self.sparse_rows())

    def _same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise LinAlgError(f"shape mismatch {self.shape} vs {other.shape}")

    def __repr__(self) -> str:
        return "Matrix([\n" + "\n".join("  [" + ", ".join(str(a) for a in r) + "]" for r in self.rows) + "\n])"
