"""Finite-dimensional Lie algebras over Q given by structure constants.

Only brackets ``[b_i, b_j]`` with ``i < j`` are stored; the opposite order is
read off by antisymmetry. Every object here is immutable after construction.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DependentModuloIdeal,
    DimensionMismatch,
    DuplicateBasisName,
    ImagesNotALieMorphism,
    LieParseError,
    NotAnIdeal,
    UnknownSymbol,
)
from .linalg import (
    Subspace,
    Vector,
    format_fraction,
    inverse,
    mat_mul,
    solve,
    transpose,
    unit_vec,
    vec_combination,
    zero_vec,
)

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    names: tuple
    brackets: Mapping  # (i, j) with i < j -> {k: Fraction}, zero entries dropped
    weights: tuple | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise DuplicateBasisName(f"duplicate basis names in {self.names}")
        n = len(self.names)
        table = [[() for _ in range(n)] for _ in range(n)]
        for (i, j), rhs in self.brackets.items():
            if not 0 <= i < j < n:
                raise ValueError(f"bracket key {(i, j)} must satisfy 0 <= i < j < {n}")
            terms = tuple(sorted((k, Fraction(c)) for k, c in rhs.items() if c))
            table[i][j] = terms
            table[j][i] = tuple((k, -c) for k, c in terms)
        object.__setattr__(self, "_table", tuple(tuple(r) for r in table))
        if self.weights is not None and len(self.weights) != n:
            raise DimensionMismatch("one weight per basis element is required")

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownSymbol(f"unknown basis symbol {name!r}") from None

    def basis_bracket(self, i: int, j: int) -> tuple:
        """``[b_i, b_j]`` as a tuple of ``(k, coefficient)`` pairs."""
        return self._table[i][j]

    def bracket(self, v: Sequence, w: Sequence) -> Vector:
        return bracket(self, v, w)

    def basis_vector(self, name_or_index) -> Vector:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return unit_vec(self.dim, i)

    @property
    def is_abelian(self) -> bool:
        return not any(self.brackets.values())

    def with_weights(self, weights: Sequence[int] | None) -> "LieAlgebra":
        return LieAlgebra(self.names, dict(self.brackets),
                          None if weights is None else tuple(int(w) for w in weights))

    def weights_additive(self) -> bool:
        if self.weights is None:
            return False
        if any(w <= 0 for w in self.weights):
            return False
        for (i, j), rhs in self.brackets.items():
            for k, c in rhs.items():
                if c and self.weights[k] != self.weights[i] + self.weights[j]:
                    return False
        return True

    def __repr__(self):
        return f"LieAlgebra({' '.join(self.names) or '0'}; {len(self.brackets)} brackets)"

    def to_lie_text(self) -> str:
        lines = ["basis " + " ".join(self.names)]
        for (i, j) in sorted(self.brackets):
            rhs = format_linear(self.brackets[(i, j)], self.names)
            if rhs != "0":
                lines.append(f"bracket {self.names[i]} {self.names[j]} = {rhs}")
        if self.weights is not None:
            for name, w in zip(self.names, self.weights):
                lines.append(f"weight {name} = {w}")
        return "\n".join(lines) + "\n"


def make_lie(names: Sequence[str], brackets: Mapping | None = None,
             weights: Sequence[int] | None = None) -> LieAlgebra:
    """Build a Lie algebra from ``{(a, b): {c: coeff}}`` keyed by names or indices."""
    names = tuple(names)
    pos = {n: i for i, n in enumerate(names)}
    if len(pos) != len(names):
        raise DuplicateBasisName(f"duplicate basis names in {names}")

    def ix(a):
        if isinstance(a, int):
            return a
        if a not in pos:
            raise UnknownSymbol(f"unknown basis symbol {a!r}")
        return pos[a]

    stored: dict = {}
    for (a, b), rhs in (brackets or {}).items():
        i, j = ix(a), ix(b)
        terms = {ix(k): Fraction(c) for k, c in rhs.items() if c}
        if i == j:
            if terms:
                raise ValueError(f"[{names[i]}, {names[i]}] must vanish")
            continue
        if i > j:
            i, j = j, i
            terms = {k: -c for k, c in terms.items()}
        if terms:
            stored[(i, j)] = terms
    return LieAlgebra(names, stored, None if weights is None else tuple(weights))


def format_linear(coeffs: Mapping, names: Sequence[str]) -> str:
    parts = []
    for k in sorted(coeffs):
        c = Fraction(coeffs[k])
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        term = names[k] if mag == 1 else f"{format_fraction(mag)}*{names[k]}"
        parts.append((sign, term))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


# ---------------------------------------------------------------------------
# .lie text format
# ---------------------------------------------------------------------------

_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+)(?:\s*/\s*(\d+))?\s*(\*)?\s*)?([A-Za-z_][A-Za-z0-9_']*)?\s*"
)


def parse_linear(text: str, names: Sequence[str], line: int | None = None) -> dict:
    """Parse ``2*x - y + 1/2*z`` into ``{index: Fraction}`` (zero entries dropped)."""
    pos = {n: i for i, n in enumerate(names)}
    text = text.strip()
    if text == "0":
        return {}
    out: dict = {}
    i = 0
    first = True
    while i < len(text):
        m = _TERM.match(text, i)
        if not m or m.end() == i:
            raise LieParseError(f"cannot parse linear expression {text!r}", line)
        sign, num, den, star, name = m.groups()
        if sign is None and not first:
            raise LieParseError(f"missing operator in {text!r}", line)
        if name is None:
            if num is not None and m.end() == len(text) and first and not star:
                raise LieParseError(f"bare scalar {text!r} is not a vector", line)
            raise LieParseError(f"malformed term in {text!r}", line)
        if den is not None and int(den) == 0:
            raise LieParseError(f"malformed rational {num}/{den}", line)
        c = Fraction(int(num), int(den) if den else 1) if num is not None else Fraction(1)
        if sign == "-":
            c = -c
        if name not in pos:
            raise UnknownSymbol(f"unknown basis symbol {name!r}", line)
        k = pos[name]
        out[k] = out.get(k, Fraction(0)) + c
        i = m.end()
        first = False
    return {k: c for k, c in out.items() if c}


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def parse_lie(text: str, *, extra_keywords: Iterable[str] = ()) -> LieAlgebra:
    """Parse the ``.lie`` format.

    Lines whose keyword is in ``extra_keywords`` are skipped so that richer
    formats (tower files) can layer on top.
    """
    extra = set(extra_keywords)
    names: tuple | None = None
    brackets: dict = {}
    weights: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if names is None:
            if keyword != "basis":
                raise LieParseError("first statement must be 'basis'", lineno)
            toks = rest.split()
            for t in toks:
                if not _NAME.match(t):
                    raise LieParseError(f"invalid basis name {t!r}", lineno)
            if len(set(toks)) != len(toks):
                dup = next(t for t in toks if toks.count(t) > 1)
                raise DuplicateBasisName(f"duplicate basis name {dup!r}", lineno)
            names = tuple(toks)
            continue
        pos = {n: i for i, n in enumerate(names)}
        if keyword == "basis":
            raise LieParseError("only one 'basis' line is allowed", lineno)
        if keyword == "bracket":
            lhs, eq, rhs = rest.partition("=")
            if not eq:
                raise LieParseError("bracket line needs '='", lineno)
            pair = lhs.split()
            if len(pair) != 2:
                raise LieParseError("bracket needs exactly two basis symbols", lineno)
            for p in pair:
                if p not in pos:
                    raise UnknownSymbol(f"unknown basis symbol {p!r}", lineno)
            i, j = pos[pair[0]], pos[pair[1]]
            terms = parse_linear(rhs, names, lineno)
            if i == j:
                if terms:
                    raise LieParseError(f"[{pair[0]}, {pair[0]}] must be 0", lineno)
                continue
            if i > j:
                i, j = j, i
                terms = {k: -c for k, c in terms.items()}
            if (i, j) in brackets:
                raise LieParseError(f"bracket [{names[i]}, {names[j]}] given twice", lineno)
            brackets[(i, j)] = terms
        elif keyword == "weight":
            lhs, eq, rhs = rest.partition("=")
            name = lhs.strip()
            if not eq or name not in pos:
                if eq:
                    raise UnknownSymbol(f"unknown basis symbol {name!r}", lineno)
                raise LieParseError("weight line must read 'weight <name> = <int>'", lineno)
            try:
                w = int(rhs.strip())
            except ValueError:
                raise LieParseError(f"weight must be a positive integer, got {rhs.strip()!r}",
                                    lineno) from None
            if w <= 0:
                raise LieParseError("weight must be a positive integer", lineno)
            weights[pos[name]] = w
        elif keyword in extra:
            continue
        else:
            raise LieParseError(f"unknown statement {keyword!r}", lineno)
    if names is None:
        raise LieParseError("missing 'basis' line")
    wt = None
    if weights:
        missing = [names[i] for i in range(len(names)) if i not in weights]
        if missing:
            raise LieParseError(f"weights missing for {', '.join(missing)}")
        wt = tuple(weights[i] for i in range(len(names)))
    return LieAlgebra(names, {k: v for k, v in brackets.items() if v}, wt)


# ---------------------------------------------------------------------------
# axioms and elementwise operations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    failures: tuple = ()  # (i, j, k, residual vector)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def bracket(L: LieAlgebra, v: Sequence, w: Sequence) -> Vector:
    n = L.dim
    if len(v) != n or len(w) != n:
        raise DimensionMismatch(f"expected vectors of length {n}")
    out = [Fraction(0)] * n
    for i, a in enumerate(v):
        if not a:
            continue
        for j, b in enumerate(w):
            if not b or i == j:
                continue
            ab = a * b
            for k, c in L.basis_bracket(i, j):
                out[k] += ab * c
    return tuple(out)


def check_jacobi(L: LieAlgebra) -> ValidationReport:
    n = L.dim
    e = [unit_vec(n, i) for i in range(n)]
    failures = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                s = [Fraction(0)] * n
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    t = bracket(L, e[a], bracket(L, e[b], e[c]))
                    s = [x + y for x, y in zip(s, t)]
                if any(s):
                    failures.append((i, j, k, tuple(s)))
    return ValidationReport(tuple(failures))


def direct_product(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    """``L1 x L2`` with zero cross brackets; clashing names get ``_1``/``_2`` suffixes."""
    clash = set(L1.names) & set(L2.names)
    n1 = tuple(f"{a}_1" if a in clash else a for a in L1.names)
    n2 = tuple(f"{a}_2" if a in clash else a for a in L2.names)
    if clash:
        warnings.warn(f"renamed clashing basis names {sorted(clash)} with _1/_2 suffixes",
                      stacklevel=2)
    off = L1.dim
    brackets = dict(L1.brackets)
    for (i, j), rhs in L2.brackets.items():
        brackets[(i + off, j + off)] = {k + off: c for k, c in rhs.items()}
    weights = None
    if L1.weights is not None and L2.weights is not None:
        weights = L1.weights + L2.weights
    return LieAlgebra(n1 + n2, brackets, weights)


def span(L: LieAlgebra, vectors: Iterable[Sequence]) -> Subspace:
    return Subspace([tuple(Fraction(a) for a in v) for v in vectors], L.dim)


def is_ideal(L: LieAlgebra, S: Subspace) -> bool:
    if S.ambient_dim != L.dim:
        raise DimensionMismatch(f"subspace of Q^{S.ambient_dim} in a {L.dim}-dim algebra")
    for i in range(L.dim):
        e = unit_vec(L.dim, i)
        for s in S.basis:
            if not S.contains(bracket(L, e, s)):
                return False
    return True


def ideal_closure(L: LieAlgebra, S: Subspace) -> Subspace:
    """Smallest ideal containing ``S``."""
    cur = S
    while True:
        new = list(cur.basis)
        for i in range(L.dim):
            e = unit_vec(L.dim, i)
            for s in cur.basis:
                new.append(bracket(L, e, s))
        nxt = Subspace(new, L.dim)
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def derived_ideal(L: LieAlgebra) -> Subspace:
    e = [unit_vec(L.dim, i) for i in range(L.dim)]
    return Subspace([bracket(L, e[i], e[j]) for i in range(L.dim) for j in range(i + 1, L.dim)],
                    L.dim)


# ---------------------------------------------------------------------------
# morphisms, change of basis, quotients
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LieMorphism:
    """Linear map ``source -> target``; ``matrix[k][i]`` is coordinate k of the image of b_i."""

    source: LieAlgebra
    target: LieAlgebra
    matrix: tuple

    def image_of_basis(self, i: int) -> Vector:
        return tuple(row[i] for row in self.matrix)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.source.dim:
            raise DimensionMismatch("vector does not live in the source algebra")
        return tuple(sum((r * a for r, a in zip(row, v) if r and a), Fraction(0))
                     for row in self.matrix)

    __call__ = apply

    def failures(self) -> list:
        """Basis pairs ``(i, j)`` where the bracket is not preserved."""
        src = self.source
        bad = []
        for i in range(src.dim):
            for j in range(i + 1, src.dim):
                lhs = self.apply(bracket(src, unit_vec(src.dim, i), unit_vec(src.dim, j)))
                rhs = bracket(self.target, self.image_of_basis(i), self.image_of_basis(j))
                if lhs != rhs:
                    bad.append((i, j))
        return bad

    def is_lie_morphism(self) -> bool:
        return not self.failures()

    def kernel(self) -> Subspace:
        from .linalg import nullspace_sparse
        return Subspace(nullspace_sparse(self.matrix, self.source.dim), self.source.dim)

    def compose(self, first: "LieMorphism") -> "LieMorphism":
        """``self o first``."""
        if first.target is not self.source:
            raise DimensionMismatch("morphisms are not composable")
        if not self.matrix or not first.matrix:
            rows = tuple((Fraction(0),) * first.source.dim for _ in range(self.target.dim))
            return LieMorphism(first.source, self.target, rows)
        return LieMorphism(first.source, self.target, mat_mul(self.matrix, first.matrix))


def identity_morphism(L: LieAlgebra) -> LieMorphism:
    return LieMorphism(L, L, tuple(unit_vec(L.dim, i) for i in range(L.dim)))


def morphism_from_images(source: LieAlgebra, target: LieAlgebra,
                         images: Sequence[Sequence], *, check: bool = True) -> LieMorphism:
    if len(images) != source.dim or any(len(v) != target.dim for v in images):
        raise DimensionMismatch("need one target vector per source basis element")
    cols = [tuple(Fraction(a) for a in v) for v in images]
    rows = tuple(tuple(cols[i][k] for i in range(source.dim)) for k in range(target.dim))
    f = LieMorphism(source, target, rows)
    if check:
        bad = f.failures()
        if bad:
            i, j = bad[0]
            raise ImagesNotALieMorphism(
                f"bracket [{source.names[i]}, {source.names[j]}] is not preserved")
    return f


def _fresh_names(L: LieAlgebra, vectors: Sequence[Vector], names: Sequence[str] | None):
    if names is not None:
        return tuple(names)
    out = []
    for a, v in enumerate(vectors):
        nz = [i for i, c in enumerate(v) if c]
        if len(nz) == 1 and v[nz[0]] == 1 and L.names[nz[0]] not in out:
            out.append(L.names[nz[0]])
        else:
            out.append(f"u{a}")
    # keep names unique even if a generated u<a> clashes with an inherited one
    seen: dict = {}
    for a, n in enumerate(out):
        if n in seen:
            out[a] = f"u{a}_"
        seen[out[a]] = a
    return tuple(out)


def change_basis(L: LieAlgebra, vectors: Sequence[Sequence],
                 names: Sequence[str] | None = None):
    """Re-express ``L`` in the ordered basis ``vectors``.

    Returns ``(L2, to_new, to_old)`` where ``to_new: L -> L2`` and
    ``to_old: L2 -> L`` are mutually inverse Lie isomorphisms.
    """
    vectors = [tuple(Fraction(a) for a in v) for v in vectors]
    n = L.dim
    if len(vectors) != n:
        raise DimensionMismatch("a basis needs exactly dim L vectors")
    B = transpose(tuple(vectors))  # columns are the new basis vectors
    Binv = inverse(B)
    brackets = {}
    for a in range(n):
        for b in range(a + 1, n):
            w = bracket(L, vectors[a], vectors[b])
            coords = tuple(sum((r * x for r, x in zip(row, w) if r and x), Fraction(0))
                           for row in Binv)
            terms = {k: c for k, c in enumerate(coords) if c}
            if terms:
                brackets[(a, b)] = terms
    L2 = LieAlgebra(_fresh_names(L, vectors, names), brackets)
    to_new = LieMorphism(L, L2, Binv)
    to_old = LieMorphism(L2, L, B)
    return L2, to_new, to_old


def complement_indices(L: LieAlgebra, S: Subspace, start: Sequence = ()) -> list[int]:
    """Greedy choice of standard basis indices completing ``start`` + ``S`` to all of L.

    The lowest index is tried first.
    """
    cur = Subspace(list(start) + list(S.basis), L.dim)
    chosen = []
    for i in range(L.dim):
        e = unit_vec(L.dim, i)
        if not cur.contains(e):
            chosen.append(i)
            cur = Subspace(cur.basis + (e,), L.dim)
    return chosen


def quotient(L: LieAlgebra, J: Subspace):
    """``(L/J, projection)``; the quotient basis is the greedy complement of J."""
    if not is_ideal(L, J):
        raise NotAnIdeal("subspace is not an ideal")
    comp = complement_indices(L, J)
    n = L.dim
    comp_vecs = [unit_vec(n, i) for i in comp]
    cols = comp_vecs + list(J.basis)
    proj_cols = []
    for i in range(n):
        x = solve(cols, unit_vec(n, i))
        proj_cols.append(x[: len(comp)])
    P = tuple(tuple(proj_cols[i][a] for i in range(n)) for a in range(len(comp)))
    brackets = {}
    for a in range(len(comp)):
        for b in range(a + 1, len(comp)):
            w = bracket(L, comp_vecs[a], comp_vecs[b])
            image = tuple(sum((r * x for r, x in zip(row, w) if r and x), Fraction(0))
                          for row in P)
            terms = {k: c for k, c in enumerate(image) if c}
            if terms:
                brackets[(a, b)] = terms
    weights = None
    if L.weights is not None:
        weights = tuple(L.weights[i] for i in comp)
    Q = LieAlgebra(tuple(L.names[i] for i in comp), brackets, weights)
    if weights is not None and not Q.weights_additive():
        Q = Q.with_weights(None)
    return Q, LieMorphism(L, Q, P)


@dataclass(frozen=True)
class OrderedAdaptedBasis:
    """Basis ``F + F' + F''`` where ``F + F'`` spans a complement H of the ideal ``J = span F''``."""

    F: tuple
    F_prime: tuple
    F_double_prime: tuple

    @property
    def vectors(self) -> tuple:
        return self.F + self.F_prime + self.F_double_prime

    @property
    def ideal_start(self) -> int:
        """Index of the first ``F''`` vector in the concatenated order."""
        return len(self.F) + len(self.F_prime)


def adapted_basis(L: LieAlgebra, J: Subspace, F: Sequence[Sequence] = ()) -> OrderedAdaptedBasis:
    if not is_ideal(L, J):
        raise NotAnIdeal("subspace is not an ideal")
    F = tuple(tuple(Fraction(a) for a in v) for v in F)
    if Subspace(list(F) + list(J.basis), L.dim).dim != len(F) + J.dim:
        raise DependentModuloIdeal("F is linearly dependent modulo the ideal")
    comp = complement_indices(L, J, start=F)
    F1 = tuple(unit_vec(L.dim, i) for i in comp)
    return OrderedAdaptedBasis(F, F1, J.basis)


def zero_vector(L: LieAlgebra) -> Vector:
    return zero_vec(L.dim)


def combination(L: LieAlgebra, coeffs: Mapping) -> Vector:
    """Vector from ``{name_or_index: coefficient}``."""
    out = [Fraction(0)] * L.dim
    for k, c in coeffs.items():
        i = k if isinstance(k, int) else L.index(k)
        out[i] += Fraction(c)
    return tuple(out)


__all__ = [
    "LieAlgebra", "LieMorphism", "OrderedAdaptedBasis", "ValidationReport",
    "adapted_basis", "bracket", "change_basis", "check_jacobi", "combination",
    "complement_indices", "derived_ideal", "direct_product", "format_linear",
    "identity_morphism", "ideal_closure", "is_ideal", "make_lie", "morphism_from_images",
    "parse_lie", "parse_linear", "quotient", "span", "vec_combination", "zero_vector",
]
