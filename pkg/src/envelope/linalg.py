"""Exact rational linear algebra: sparse row reduction, subspaces, small matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vector = tuple  # tuple of Fraction, one entry per basis position
Matrix = tuple  # tuple of row tuples


def vec(entries: Iterable) -> Vector:
    return tuple(Fraction(e) for e in entries)


def zero_vec(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def vec_add(v: Vector, w: Vector) -> Vector:
    if len(v) != len(w):
        raise DimensionMismatch(f"vectors of length {len(v)} and {len(w)}")
    return tuple(a + b for a, b in zip(v, w))


def vec_scale(c, v: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


def vec_combination(coeffs: Sequence, vectors: Sequence[Vector], n: int) -> Vector:
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] += c * a
    return tuple(out)


# ---------------------------------------------------------------------------
# sparse row reduction; a row is a dict {column: nonzero Fraction}
# ---------------------------------------------------------------------------

def _to_sparse(row) -> dict:
    if isinstance(row, dict):
        return {k: Fraction(v) for k, v in row.items() if v}
    return {i: Fraction(v) for i, v in enumerate(row) if v}


def rref_sparse(rows: Iterable, column_order: Sequence | None = None):
    """Reduced row echelon form of sparse rows.

    Columns are compared in ``column_order`` when given (pivot preference),
    otherwise in their natural sort order. Returns ``(rows, pivots)`` with
    rows sorted by pivot position; each pivot entry is 1 and pivot columns
    are cleared in every other row.
    """
    if column_order is None:
        position = None
    else:
        position = {c: i for i, c in enumerate(column_order)}

    def lead(row):
        if position is None:
            return min(row)
        return min(row, key=position.__getitem__)

    reduced: dict = {}  # pivot column -> row
    for raw in rows:
        row = _to_sparse(raw)
        # eliminate existing pivots
        for p, prow in reduced.items():
            c = row.get(p)
            if c:
                for k, v in prow.items():
                    nv = row.get(k, 0) - c * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if not row:
            continue
        p = lead(row)
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        for q, qrow in reduced.items():
            c = qrow.get(p)
            if c:
                for k, v in row.items():
                    nv = qrow.get(k, 0) - c * v
                    if nv:
                        qrow[k] = nv
                    else:
                        qrow.pop(k, None)
        reduced[p] = row
    key = (lambda c: c) if position is None else position.__getitem__
    pivots = sorted(reduced, key=key)
    return [reduced[p] for p in pivots], pivots


def rank(rows: Iterable) -> int:
    return len(rref_sparse(rows)[0])


def nullspace_sparse(rows: Iterable, ncols: int) -> list[Vector]:
    """Basis of {c in Q^ncols : row . c = 0 for every row}."""
    reduced, pivots = rref_sparse(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for p, row in zip(pivots, reduced):
            c = row.get(free)
            if c:
                v[p] = -c
        basis.append(tuple(v))
    return basis


def solve(columns: Sequence[Vector], target: Vector):
    """Coefficients x with sum x_i columns_i = target, or None if inconsistent."""
    n = len(target)
    k = len(columns)
    # augmented rows: one per coordinate, columns 0..k-1 then k for the target
    rows = []
    for i in range(n):
        row = {j: columns[j][i] for j in range(k) if columns[j][i]}
        if target[i]:
            row[k] = target[i]
        if row:
            rows.append(row)
    reduced, pivots = rref_sparse(rows)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for p, row in zip(pivots, reduced):
        x[p] = row.get(k, Fraction(0))
    return tuple(x)


class Subspace:
    """A subspace of Q^n stored by its canonical reduced echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, vectors: Iterable[Sequence], ambient_dim: int):
        self.ambient_dim = ambient_dim
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in Q^{ambient_dim}")
            rows.append(v)
        reduced, pivots = rref_sparse(rows)
        self.pivots = tuple(pivots)
        self.basis = tuple(
            tuple(r.get(i, Fraction(0)) for i in range(ambient_dim)) for r in reduced
        )

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls([], n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls([unit_vec(n, i) for i in range(n)], n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        rows = ", ".join("(" + ", ".join(str(a) for a in b) + ")" for b in self.basis)
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim}: [{rows}])"

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of v after clearing the pivot columns."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in Q^{self.ambient_dim}")
        out = [Fraction(a) for a in v]
        for p, b in zip(self.pivots, self.basis):
            c = out[p]
            if c:
                for i, a in enumerate(b):
                    if a:
                        out[i] -= c * a
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v):
        return self.contains(v)

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.basis + other.basis, self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        # x = sum a_i u_i = sum b_j w_j; solve in the joint coefficient space
        n = self.ambient_dim
        k = self.dim
        cols = list(self.basis) + [vec_scale(-1, w) for w in other.basis]
        rows = [{j: cols[j][i] for j in range(len(cols)) if cols[j][i]} for i in range(n)]
        null = nullspace_sparse(rows, len(cols))
        return Subspace(
            [vec_combination(c[:k], self.basis, n) for c in null], n
        )


# ---------------------------------------------------------------------------
# small dense matrices over Q
# ---------------------------------------------------------------------------

def mat(rows) -> Matrix:
    return tuple(tuple(Fraction(a) for a in r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(unit_vec(n, i) for i in range(n))


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple((Fraction(0),) * m for _ in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x?")
    bt = tuple(zip(*b)) if b else ()
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt)
        for row in a
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if len(a) != len(b):
        raise DimensionMismatch("matrix shapes differ")
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    c = Fraction(c)
    return tuple(tuple(c * x for x in r) for r in a)


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return mat_add(a, mat_scale(-1, b))


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def is_zero_matrix(a: Matrix) -> bool:
    return not any(x for r in a for x in r)


def flatten(a: Matrix) -> Vector:
    return tuple(x for r in a for x in r)


def unflatten(v: Sequence, n: int) -> Matrix:
    return tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n))


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    cols = [tuple(a[i][j] for i in range(n)) for j in range(n)]
    out_cols = []
    for j in range(n):
        x = solve(cols, unit_vec(n, j))
        if x is None:
            raise ValueError("matrix is singular")
        out_cols.append(x)
    return transpose(tuple(out_cols))


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
