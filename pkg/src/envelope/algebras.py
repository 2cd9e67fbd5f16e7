"""Finite-dimensional unital associative algebras over Q.

Two presentations share one interface (``one``, ``zero``, ``mul``, ``add``,
``scale``): :class:`FinDimAlgebra` works on coordinate vectors through a
multiplication table, optionally carrying the basis matrices it came from;
:class:`MatrixAlgebra` is the full matrix algebra acting on matrices directly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, ResultOutsideAlgebra
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    flatten,
    identity,
    mat,
    mat_add,
    mat_mul,
    mat_scale,
    solve,
    trace,
    unit_vec,
    vec_add,
    vec_scale,
    zero_vec,
    zeros,
)


class MatrixAlgebra:
    """``M_n(Q)`` with elements stored as row tuples."""

    def __init__(self, n: int):
        self.n = n

    def one(self) -> Matrix:
        return identity(self.n)

    def zero(self) -> Matrix:
        return zeros(self.n)

    def mul(self, a, b):
        return mat_mul(a, b)

    def add(self, a, b):
        return mat_add(a, b)

    def scale(self, c, a):
        return mat_scale(c, a)

    def __repr__(self):
        return f"MatrixAlgebra({self.n})"


class FinDimAlgebra:
    """Unital algebra with basis ``names`` and structure table ``table[i][j]``."""

    def __init__(self, names: Sequence[str], table, unit: Sequence, matrices=None):
        self.names = tuple(names)
        n = len(self.names)
        self.table = tuple(tuple(tuple(Fraction(c) for c in table[i][j]) for j in range(n))
                           for i in range(n))
        self.unit = tuple(Fraction(c) for c in unit)
        self.matrices = None if matrices is None else tuple(mat(m) for m in matrices)
        self._span = None
        if len(self.unit) != n:
            raise DimensionMismatch("unit vector has the wrong length")

    @property
    def dim(self) -> int:
        return len(self.names)

    def one(self) -> Vector:
        return self.unit

    def zero(self) -> Vector:
        return zero_vec(self.dim)

    def basis_vector(self, i: int) -> Vector:
        return unit_vec(self.dim, i)

    def add(self, a, b):
        return vec_add(a, b)

    def scale(self, c, a):
        return vec_scale(c, a)

    def mul(self, a: Sequence, b: Sequence) -> Vector:
        n = self.dim
        if len(a) != n or len(b) != n:
            raise DimensionMismatch(f"expected coordinate vectors of length {n}")
        out = [Fraction(0)] * n
        for i, x in enumerate(a):
            if not x:
                continue
            row = self.table[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += xy * c
        return tuple(out)

    def power(self, a, k: int):
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def left_mult_matrix(self, a: Sequence) -> Matrix:
        """Matrix of ``y -> a y`` in the algebra basis (columns are images of basis vectors)."""
        cols = [self.mul(a, self.basis_vector(j)) for j in range(self.dim)]
        return tuple(tuple(cols[j][i] for j in range(self.dim)) for i in range(self.dim))

    def trace_form(self, a, b) -> Fraction:
        return trace(self.left_mult_matrix(self.mul(a, b)))

    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i + 1, n))

    def associativity_failures(self) -> list:
        n = self.dim
        e = [self.basis_vector(i) for i in range(n)]
        bad = []
        for i in range(n):
            for j in range(n):
                ij = self.mul(e[i], e[j])
                for k in range(n):
                    if self.mul(ij, e[k]) != self.mul(e[i], self.mul(e[j], e[k])):
                        bad.append((i, j, k))
        return bad

    def is_unital(self) -> bool:
        return all(self.mul(self.unit, self.basis_vector(i)) == self.basis_vector(i)
                   and self.mul(self.basis_vector(i), self.unit) == self.basis_vector(i)
                   for i in range(self.dim))

    # -- matrix presentation --------------------------------------------------

    def to_matrix(self, a: Sequence) -> Matrix:
        if self.matrices is None:
            raise ValueError("algebra has no matrix presentation")
        n = len(self.matrices[0])
        out = zeros(n)
        for c, m in zip(a, self.matrices):
            if c:
                out = mat_add(out, mat_scale(c, m))
        return out

    def coordinates(self, m: Matrix) -> Vector:
        """Coordinates of a matrix in the basis; raises if it lies outside the span."""
        if self.matrices is None:
            raise ValueError("algebra has no matrix presentation")
        x = solve([flatten(b) for b in self.matrices], flatten(mat(m)))
        if x is None:
            raise ResultOutsideAlgebra("matrix is not in the span of the algebra basis")
        return x

    def __repr__(self):
        return f"FinDimAlgebra(dim={self.dim}, basis={' '.join(self.names)})"


def from_matrices(matrices: Sequence, names: Sequence[str] | None = None) -> FinDimAlgebra:
    """Algebra spanned by linearly independent matrices closed under products.

    The identity must lie in the span.
    """
    mats = [mat(m) for m in matrices]
    if not mats:
        raise ValueError("need at least one basis matrix")
    n = len(mats[0])
    flat = [flatten(m) for m in mats]
    if Subspace(flat, n * n).dim != len(mats):
        raise ValueError("basis matrices are linearly dependent")
    names = tuple(names) if names is not None else tuple(f"a{i}" for i in range(len(mats)))

    def coords(m):
        x = solve(flat, flatten(m))
        if x is None:
            raise ResultOutsideAlgebra("span of the matrices is not closed under products")
        return x

    table = [[coords(mat_mul(a, b)) for b in mats] for a in mats]
    unit = coords(identity(n))
    return FinDimAlgebra(names, table, unit, mats)


def full_matrix_algebra(n: int) -> FinDimAlgebra:
    mats = []
    names = []
    for i in range(n):
        for j in range(n):
            m = [[0] * n for _ in range(n)]
            m[i][j] = 1
            mats.append(m)
            names.append(f"E{i + 1}{j + 1}")
    return from_matrices(mats, names)


def diagonal_algebra(n: int) -> FinDimAlgebra:
    """``Q^n`` with componentwise product."""
    table = [[unit_vec(n, i) if i == j else zero_vec(n) for j in range(n)] for i in range(n)]
    return FinDimAlgebra([f"p{i + 1}" for i in range(n)], table, (Fraction(1),) * n)


def truncated_polynomial_algebra(k: int, var: str = "t") -> FinDimAlgebra:
    """``Q[t]/(t^k)`` on the basis ``1, t, ..., t^(k-1)``."""
    table = [[unit_vec(k, i + j) if i + j < k else zero_vec(k) for j in range(k)]
             for i in range(k)]
    names = ["1"] + [var if i == 1 else f"{var}^{i}" for i in range(1, k)]
    return FinDimAlgebra(names, table, unit_vec(k, 0))
