"""Matrices whose entries live in a quotient algebra (normal forms kept)."""

from __future__ import annotations

from typing import Sequence

from ..linalg import Matrix, axpy
from .poly import NCPoly
from .rewrite import RewriteSystem


class ShapeMismatch(ValueError):
    pass


class AmbientMismatch(ValueError):
    pass


class AlgMatrix:
    """Matrix of NCPoly entries reduced modulo ``rs``.

    Scalar and central coefficients multiply from the left.
    """

    __slots__ = ("rs", "entries")

    def __init__(self, rs: RewriteSystem, entries: Sequence[Sequence[NCPoly]], reduce: bool = True):
        self.rs = rs
        if reduce:
            self.entries = [[rs.normal_form(e) for e in row] for row in entries]
        else:
            self.entries = [list(row) for row in entries]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0]) if self.entries else 0

    @classmethod
    def from_scalar(cls, rs: RewriteSystem, M: Matrix) -> AlgMatrix:
        alg = rs.alg
        return cls(rs, [[alg(a) if a else alg.zero() for a in row] for row in M.rows], reduce=False)

    @classmethod
    def identity(cls, rs: RewriteSystem, n: int) -> AlgMatrix:
        alg = rs.alg
        return cls(rs, [[alg.one() if i == j else alg.zero() for j in range(n)] for i in range(n)],
                   reduce=False)

    @classmethod
    def zeros(cls, rs: RewriteSystem, m: int, n: int) -> AlgMatrix:
        return cls(rs, [[rs.alg.zero() for _ in range(n)] for _ in range(m)], reduce=False)

    def __getitem__(self, ij) -> NCPoly:
        i, j = ij
        return self.entries[i][j]

    def _check(self, other: AlgMatrix) -> None:
        if other.rs is not self.rs:
            raise AmbientMismatch("matrices over different rewriting systems")

    def __add__(self, other: AlgMatrix) -> AlgMatrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return AlgMatrix(self.rs, [[a + b for a, b in zip(r, s)]
                                   for r, s in zip(self.entries, other.entries)], reduce=False)

    def __sub__(self, other: AlgMatrix) -> AlgMatrix:
        return self + other.scale(-1)

    def __neg__(self) -> AlgMatrix:
        return self.scale(-1)

    def scale(self, c) -> AlgMatrix:
        """Multiply by a scalar, or by an algebra element from the left."""
        if isinstance(c, NCPoly):
            return AlgMatrix(self.rs, [[self.rs.multiply(c, e) for e in row] for row in self.entries],
                             reduce=False)
        return AlgMatrix(self.rs, [[e.scale(c) for e in row] for row in self.entries], reduce=False)

    def __matmul__(self, other) -> AlgMatrix:
        if isinstance(other, Matrix):
            other = AlgMatrix.from_scalar(self.rs, other)
        self._check(other)
        m, k = self.shape
        k2, n = other.shape
        if k != k2:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        rs = self.rs
        out = []
        for i in range(m):
            row = []
            for j in range(n):
                acc: dict = {}
                for t in range(k):
                    a = self.entries[i][t]
                    b = other.entries[t][j]
                    if not a.terms or not b.terms:
                        continue
                    for u, c in a.terms.items():
                        for w, d in b.terms.items():
                            axpy(acc, c * d, rs._mult_word(u, w))
                row.append(NCPoly(rs.alg, acc))
            out.append(row)
        return AlgMatrix(rs, out, reduce=False)

    def __rmatmul__(self, other) -> AlgMatrix:
        if isinstance(other, Matrix):
            return AlgMatrix.from_scalar(self.rs, other) @ self
        return NotImplemented

    def power(self, k: int) -> AlgMatrix:
        out = AlgMatrix.identity(self.rs, self.shape[0])
        for _ in range(k):
            out = out @ self
        return out

    def transpose(self) -> AlgMatrix:
        return AlgMatrix(self.rs, [list(c) for c in zip(*self.entries)], reduce=False)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def witness(self):
        """First nonzero entry (index, value), or None."""
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if not e.is_zero():
                    return (i, j), e
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgMatrix) or self.shape != other.shape:
            return False
        return (self - other).is_zero()

    def map_entries(self, fn, rs: RewriteSystem | None = None) -> AlgMatrix:
        rs = rs or self.rs
        return AlgMatrix(rs, [[fn(e) for e in row] for row in self.entries])

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)


def mat_mul(A: AlgMatrix, B: AlgMatrix) -> AlgMatrix:
    return A @ B


def mat_add(A: AlgMatrix, B: AlgMatrix) -> AlgMatrix:
    return A + B


def mat_scale(A: AlgMatrix, c) -> AlgMatrix:
    return A.scale(c)


def mat_poly(M: AlgMatrix, coeffs: Sequence) -> AlgMatrix:
    """sum_i coeffs[i] * M^i, coefficients (central) multiplied from the left."""
    rs = M.rs
    n = M.shape[0]
    if M.shape[0] != M.shape[1]:
        raise ShapeMismatch("mat_poly needs a square matrix")
    total = AlgMatrix.zeros(rs, n, n)
    power = AlgMatrix.identity(rs, n)
    for i, c in enumerate(coeffs):
        if i:
            power = power @ M
        if isinstance(c, NCPoly):
            term = power.scale(rs.normal_form(c))
        else:
            term = power.scale(c)
        total = total + term
    return total


def tensor_identity(M: AlgMatrix, n: int, slot: int = 1) -> AlgMatrix:
    """M (x) id_n for slot=1 (acts on the first tensor factor), id_n (x) M for slot=2."""
    m = M.shape[0]
    alg = M.rs.alg
    size = m * n
    entries = [[alg.zero() for _ in range(size)] for _ in range(size)]
    for i in range(m):
        for k in range(m):
            e = M.entries[i][k]
            if e.is_zero():
                continue
            for j in range(n):
                if slot == 1:
                    entries[i * n + j][k * n + j] = e
                else:
                    entries[j * m + i][j * m + k] = e
    return AlgMatrix(M.rs, entries, reduce=False)
