"""Finite-dimensional stages of the completed enveloping algebra.

Two computable families of quotients are modelled:

* weight truncations ``U(L) / (weight >= N)`` for Lie algebras carrying
  positive bracket-additive weights (nilpotent, graded ones only; for sl2 the
  augmentation powers do not shrink, so no degree cutoff is an algebra
  quotient there), and
* images of matrix representations, i.e. the unital matrix algebra generated
  by a Lie morphism ``L -> gl_n``.

Projective-limit towers are built over chains of ideals
``J_1 >= J_2 >= ... >= J_m`` with stages ``U(L/J_k)`` and bonding maps induced
by the quotient projections.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

import numpy as np
from scipy.linalg import expm

from .algebras import FinDimAlgebra, from_matrices
from .errors import (
    AlgebraMismatch,
    ChainNotDecreasing,
    ClosureExceedsBound,
    CounitNotOne,
    LieParseError,
    NoStageContained,
    NonzeroConstantTerm,
    NotAnIdeal,
    NotPrimitive,
    ResultOutsideAlgebra,
    StageMismatch,
    WeightsNotAdditive,
)
from .lie import (
    LieAlgebra,
    LieMorphism,
    complement_indices,
    is_ideal,
    parse_lie,
    parse_linear,
    quotient,
)
from .linalg import (
    Subspace,
    flatten,
    format_fraction,
    identity,
    is_zero_matrix,
    mat,
    mat_add,
    mat_mul,
    mat_scale,
    nullspace_sparse,
    zeros,
)
from .pbw import (
    AlgebraMorphismWindow,
    EnvelopeMorphism,
    PbwElement,
    Tensor,
    _accumulate,
    envelope,
    extend_into_algebra,
    extend_lie_morphism,
    monomial_key,
    tensor,
)

# ---------------------------------------------------------------------------
# weight truncations
# ---------------------------------------------------------------------------


def _monomials_below(weights: Sequence[int], cutoff: int) -> list:
    out = []

    def walk(start, prefix, w):
        out.append(prefix)
        for i in range(start, len(weights)):
            if w + weights[i] < cutoff:
                walk(i, prefix + (i,), w + weights[i])

    walk(0, (), 0)
    return sorted(out, key=monomial_key)


class GradedTruncation:
    """``U(L)`` modulo the span of PBW monomials of total weight ``>= cutoff``."""

    def __init__(self, lie: LieAlgebra, cutoff: int, weights: Sequence[int] | None = None):
        if cutoff < 1:
            raise ValueError("cutoff must be at least 1")
        if weights is not None:
            lie = lie.with_weights(weights)
        if lie.weights is None or not lie.weights_additive():
            raise WeightsNotAdditive(
                "weights must be positive and satisfy w(c) = w(a) + w(b) for every "
                "nonzero structure constant of [a, b]")
        self.lie = lie
        self.cutoff = cutoff
        self.weights = lie.weights
        self.env = envelope(lie)
        self.basis = _monomials_below(self.weights, cutoff)
        self._basis_set = frozenset(self.basis)

    def __repr__(self):
        return f"GradedTruncation({self.lie!r}, cutoff={self.cutoff}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def weight(self, m: tuple) -> int:
        return sum(self.weights[i] for i in m)

    def _cut(self, terms: Mapping) -> dict:
        return {m: c for m, c in terms.items() if self.weight(m) < self.cutoff}

    def element(self, u) -> "TruncElement":
        """Image of a PBW element, or of ``{monomial: coeff}``, in the truncation."""
        if isinstance(u, TruncElement):
            return u
        if isinstance(u, PbwElement):
            if u.env is not self.env:
                raise AlgebraMismatch("element of a different enveloping algebra")
            return TruncElement(self, self._cut(u.terms))
        return TruncElement(self, self._cut(self.env.element(u).terms))

    def gen(self, name_or_index) -> "TruncElement":
        return self.element(self.env.gen(name_or_index))

    def one(self) -> "TruncElement":
        return TruncElement(self, {(): Fraction(1)})

    def zero(self) -> "TruncElement":
        return TruncElement(self, {})

    def scalar(self, c) -> "TruncElement":
        c = Fraction(c)
        return TruncElement(self, {(): c} if c else {})

    def mul_terms(self, a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        for m, x in a.items():
            wm = self.weight(m)
            for n, y in b.items():
                if wm + self.weight(n) >= self.cutoff:
                    continue
                _accumulate(out, self.env.mul_monomials(m, n), x * y)
        return out

    def associativity_failures(self) -> list:
        bad = []
        for a in self.basis:
            for b in self.basis:
                ab = self.mul_terms({a: 1}, {b: 1})
                for c in self.basis:
                    if self.mul_terms(ab, {c: 1}) != self.mul_terms(
                            {a: 1}, self.mul_terms({b: 1}, {c: 1})):
                        bad.append((a, b, c))
        return bad

    def to_algebra(self) -> FinDimAlgebra:
        pos = {m: i for i, m in enumerate(self.basis)}
        n = self.dim

        def vecof(terms):
            v = [Fraction(0)] * n
            for m, c in terms.items():
                v[pos[m]] = c
            return tuple(v)

        table = [[vecof(self.mul_terms({a: 1}, {b: 1})) for b in self.basis] for a in self.basis]
        names = [self.env.format_monomial(m) for m in self.basis]
        return FinDimAlgebra(names, table, vecof({(): 1}))


class TruncElement:
    __slots__ = ("trunc", "terms")

    def __init__(self, trunc: GradedTruncation, terms: dict):
        self.trunc = trunc
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, TruncElement):
            if other.trunc is not self.trunc:
                raise AlgebraMismatch("elements of different truncations")
            return other
        if isinstance(other, (int, Fraction)):
            return self.trunc.scalar(other)
        if isinstance(other, PbwElement):
            return self.trunc.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        _accumulate(out, other.terms, 1)
        return TruncElement(self.trunc, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncElement(self.trunc, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        _accumulate(out, other.terms, -1)
        return TruncElement(self.trunc, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return TruncElement(self.trunc,
                                {m: c * v for m, v in self.terms.items()} if c else {})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TruncElement(self.trunc, self.trunc.mul_terms(self.terms, other.terms))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = self.trunc.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.trunc.scalar(other)
        if not isinstance(other, TruncElement):
            return NotImplemented
        return self.trunc is other.trunc and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def counit(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def as_pbw(self) -> PbwElement:
        return PbwElement(self.trunc.env, dict(self.terms))

    def __repr__(self):
        return repr(self.as_pbw())

    def to_json(self) -> dict:
        return self.as_pbw().to_json()


def build_truncation(L: LieAlgebra, weights: Sequence[int] | None, N: int) -> GradedTruncation:
    return GradedTruncation(L, N, weights)


def exp_trunc(T: GradedTruncation, a: TruncElement) -> TruncElement:
    """``sum_k a^k / k!``; the series stops because ``a^k`` has weight ``>= k``."""
    a = T.element(a)
    if a.counit():
        raise NonzeroConstantTerm("exp is only taken of elements with zero constant term")
    out = T.one()
    term = T.one()
    for k in range(1, T.cutoff):
        term = term * a * Fraction(1, k)
        if not term:
            break
        out = out + term
    return out


def log_trunc(T: GradedTruncation, u: TruncElement) -> TruncElement:
    u = T.element(u)
    if u.counit() != 1:
        raise CounitNotOne("log is only taken of elements with constant term 1")
    x = u - 1
    out = T.zero()
    term = T.one()
    for k in range(1, T.cutoff):
        term = term * x
        if not term:
            break
        out = out + term * Fraction((-1) ** (k + 1), k)
    return out


def coproduct_trunc(T: GradedTruncation, a: TruncElement) -> Tensor:
    """Coproduct in the truncated tensor square (pairs of total weight below the cutoff)."""
    from .pbw import coproduct
    a = T.element(a)
    full = coproduct(T.lie, a.as_pbw())
    return Tensor(full.envs, {k: c for k, c in full.terms.items()
                              if T.weight(k[0]) + T.weight(k[1]) < T.cutoff})


def _trunc_tensor(T: GradedTruncation, t: Tensor) -> Tensor:
    return Tensor(t.envs, {k: c for k, c in t.terms.items()
                           if T.weight(k[0]) + T.weight(k[1]) < T.cutoff})


def is_primitive_trunc(T: GradedTruncation, a: TruncElement) -> bool:
    a = T.element(a)
    one = T.env.one()
    p = a.as_pbw()
    return coproduct_trunc(T, a) == _trunc_tensor(T, tensor(p, one) + tensor(one, p))


def is_grouplike_trunc(T: GradedTruncation, u: TruncElement) -> bool:
    u = T.element(u)
    p = u.as_pbw()
    return u.counit() == 1 and coproduct_trunc(T, u) == _trunc_tensor(T, tensor(p, p))


def bch(T: GradedTruncation, a: TruncElement, b: TruncElement) -> TruncElement:
    """``log(exp a exp b)`` for primitive ``a, b``."""
    a, b = T.element(a), T.element(b)
    for name, v in (("first", a), ("second", b)):
        if not is_primitive_trunc(T, v):
            raise NotPrimitive(f"{name} argument is not primitive")
    return log_trunc(T, exp_trunc(T, a) * exp_trunc(T, b))


def inverse_trunc(T: GradedTruncation, u: TruncElement) -> TruncElement:
    """Inverse of an element with nonzero constant term (geometric series)."""
    u = T.element(u)
    c = u.counit()
    if not c:
        raise ValueError("element with zero constant term is not invertible")
    x = 1 - u * (1 / c)
    out = T.one()
    term = T.one()
    for _ in range(1, T.cutoff):
        term = term * x
        if not term:
            break
        out = out + term
    return out * (1 / c)


# ---------------------------------------------------------------------------
# representation images
# ---------------------------------------------------------------------------

class RepQuotient(FinDimAlgebra):
    """Unital matrix algebra generated by a Lie representation, with its PBW quotient map."""

    def __init__(self, lie: LieAlgebra, images, names, table, unit, matrices, passes: int):
        super().__init__(names, table, unit, matrices)
        self.lie = lie
        self.images = tuple(mat(m) for m in images)
        self.passes = passes

    def generator_coordinates(self) -> list:
        return [self.coordinates(m) for m in self.images]

    def quotient_map(self, d: int) -> AlgebraMorphismWindow:
        """``U(L) -> A`` on the degree-<=d window, in algebra coordinates."""
        return extend_into_algebra(self.lie, self, self.generator_coordinates(), d)

    def closure_failures(self) -> list:
        """Basis pairs whose product does not re-expand exactly."""
        bad = []
        for i, a in enumerate(self.matrices):
            for j, b in enumerate(self.matrices):
                if self.to_matrix(self.table[i][j]) != mat_mul(a, b):
                    bad.append((i, j))
        return bad


def rep_quotient(L: LieAlgebra, images: Sequence, max_passes: int | None = None) -> RepQuotient:
    """Span closure of the identity and the images under right multiplication by generators."""
    ext = extend_lie_morphism(L, images, 1)  # validates the bracket relations
    mats = list(ext.generator_images)
    n = len(mats[0]) if mats else 0
    max_passes = n * n + 1 if max_passes is None else max_passes
    basis = [identity(n)]
    words = [""]
    space = Subspace([flatten(basis[0])], n * n)
    frontier = [(identity(n), "")]
    passes = 0
    while frontier:
        passes += 1
        if passes > max_passes:
            raise ClosureExceedsBound(f"span closure not stable after {max_passes} passes")
        nxt = []
        for m, w in frontier:
            for i, g in enumerate(mats):
                p = mat_mul(m, g)
                if not space.contains(flatten(p)):
                    space = Subspace(space.basis + (flatten(p),), n * n)
                    word = L.names[i] if not w else f"{w}*{L.names[i]}"
                    basis.append(p)
                    words.append(word)
                    nxt.append((p, word))
        frontier = nxt
    names = ["1"] + words[1:]
    alg = from_matrices(basis, names)
    return RepQuotient(L, mats, alg.names, alg.table, alg.unit, alg.matrices, passes)


def _mat_power(m, k):
    out = identity(len(m))
    for _ in range(k):
        out = mat_mul(out, m)
    return out


@dataclass
class ExpResult:
    coordinates: tuple  # Fractions when exact, floats otherwise
    exact: bool
    residual: float = 0.0


def matrix_exp(A: FinDimAlgebra, a: Sequence, tol: float = 1e-12) -> ExpResult:
    """Exponential of an element of a matrix-presented algebra.

    Nilpotent arguments give the exact terminating series; otherwise the
    matrix exponential is computed in floating point and re-expanded in the
    algebra basis, with a least-squares residual bounded by ``tol``.
    """
    M = A.to_matrix(a)
    n = len(M)
    power = identity(n)
    for k in range(1, n + 1):
        power = mat_mul(power, M)
        if is_zero_matrix(power):
            total = zeros(n)
            term = identity(n)
            for j in range(k):
                total = mat_add(total, mat_scale(Fraction(1, factorial(j)), term))
                term = mat_mul(term, M)
            return ExpResult(A.coordinates(total), True)
    E = expm(np.array([[float(x) for x in row] for row in M]))
    B = np.array([[float(x) for x in flatten(b)] for b in A.matrices]).T
    coords, *_ = np.linalg.lstsq(B, E.reshape(-1), rcond=None)
    residual = float(np.max(np.abs(B @ coords - E.reshape(-1)))) if E.size else 0.0
    if residual > tol * max(1.0, float(np.max(np.abs(E)))):
        raise ResultOutsideAlgebra(f"re-expansion residual {residual:.3e} exceeds {tol}")
    return ExpResult(tuple(float(c) for c in coords), False, residual)


# ---------------------------------------------------------------------------
# towers
# ---------------------------------------------------------------------------

@dataclass
class Stage:
    ideal: Subspace
    algebra: LieAlgebra  # L / J
    projection: EnvelopeMorphism  # U(L) -> U(L/J)
    lift: tuple  # basis index in L of each quotient basis element


@dataclass
class Tower:
    base: LieAlgebra
    stages: list
    bonding: list  # bonding[k]: U(L/J_{k+1}) -> U(L/J_k)
    names: list = field(default_factory=list)

    def __len__(self):
        return len(self.stages)

    def bonding_between(self, i: int, j: int) -> EnvelopeMorphism:
        """``U(p_ij): U(L/J_j) -> U(L/J_i)`` for ``i <= j`` (composite of adjacent bondings)."""
        if i > j:
            raise ValueError("bonding maps run from smaller to larger ideals")
        stage_j = self.stages[j]
        stage_i = self.stages[i]
        rows = tuple(tuple(stage_i.projection.lie_map.matrix[a][stage_j.lift[b]]
                           for b in range(stage_j.algebra.dim))
                     for a in range(stage_i.algebra.dim))
        return EnvelopeMorphism(LieMorphism(stage_j.algebra, stage_i.algebra, rows))

    def thread(self, elements: Sequence) -> "Thread":
        return Thread(self, tuple(elements))

    def project(self, u: PbwElement) -> "Thread":
        """The thread of images of one element of ``U(L)``."""
        return Thread(self, tuple(s.projection(u) for s in self.stages))

    def verify(self, d: int) -> list:
        """Composition and morphism failures on the degree-<=d stage windows."""
        failures = []
        m = len(self.stages)
        for k in range(m - 1):
            b = self.bonding[k]
            env = b.source
            for mono in env.window(d):
                u = PbwElement(env, {mono: Fraction(1)})
                for mono2 in env.window(d - len(mono)):
                    v = PbwElement(env, {mono2: Fraction(1)})
                    if b(u * v) != b(u) * b(v):
                        failures.append(("multiplicative", k, mono, mono2))
            if b(env.one()) != b.target.one():
                failures.append(("unital", k))
        for i in range(m):
            for j in range(i, m):
                for k in range(j, m):
                    direct = self.bonding_between(i, k)
                    left = self.bonding_between(i, j)
                    right = self.bonding_between(j, k)
                    for mono in self.stages[k].projection.target.window(d):
                        u = PbwElement(right.source, {mono: Fraction(1)})
                        if direct(u) != left(right(u)):
                            failures.append(("composition", i, j, k, mono))
        base_env = envelope(self.base)
        for k in range(m - 1):
            for mono in base_env.window(d):
                u = PbwElement(base_env, {mono: Fraction(1)})
                if self.bonding[k](self.stages[k + 1].projection(u)) != self.stages[k].projection(u):
                    failures.append(("projection", k, mono))
        return failures


@dataclass(frozen=True)
class Thread:
    tower: Tower
    elements: tuple

    def __mul__(self, other: "Thread") -> "Thread":
        return thread_mul(self, other)


def make_tower(L: LieAlgebra, chain: Sequence[Subspace], names: Sequence[str] | None = None) -> Tower:
    chain = list(chain)
    for k, J in enumerate(chain):
        if J.ambient_dim != L.dim or not is_ideal(L, J):
            raise NotAnIdeal(f"chain member {k} is not an ideal")
    for k in range(len(chain) - 1):
        if not chain[k + 1].issubspace(chain[k]):
            raise ChainNotDecreasing(f"chain member {k + 1} is not contained in member {k}")
    stages = []
    for J in chain:
        Q, p = quotient(L, J)
        lift = tuple(complement_indices(L, J))
        stages.append(Stage(J, Q, EnvelopeMorphism(p), lift))
    tower = Tower(L, stages, [], list(names) if names else [f"J{k + 1}" for k in range(len(chain))])
    tower.bonding = [tower.bonding_between(k, k + 1) for k in range(len(stages) - 1)]
    return tower


def check_thread(t: Thread) -> bool:
    tower = t.tower
    if len(t.elements) != len(tower.stages):
        raise StageMismatch("thread length differs from the number of stages")
    for k, (e, s) in enumerate(zip(t.elements, tower.stages)):
        if e.env is not s.projection.target:
            raise StageMismatch(f"entry {k} does not live in stage {k}")
    return all(tower.bonding[k](t.elements[k + 1]) == t.elements[k]
               for k in range(len(tower.stages) - 1))


def thread_mul(t: Thread, s: Thread) -> Thread:
    if t.tower is not s.tower or len(t.elements) != len(s.elements):
        raise StageMismatch("threads over different towers")
    return Thread(t.tower, tuple(a * b for a, b in zip(t.elements, s.elements)))


@dataclass
class Factorization:
    stage: int
    quotient_images: tuple  # matrices of f_J on the quotient basis
    extension: AlgebraMorphismWindow  # over U(L/J_stage)
    direct: AlgebraMorphismWindow  # over U(L)
    mismatches: list

    @property
    def agrees(self) -> bool:
        return not self.mismatches


def lie_map_kernel(L: LieAlgebra, images: Sequence) -> Subspace:
    mats = [mat(m) for m in images]
    flat = [flatten(m) for m in mats]
    rows = [{i: flat[i][r] for i in range(L.dim) if flat[i][r]} for r in range(len(flat[0]))] \
        if flat else []
    return Subspace(nullspace_sparse(rows, L.dim), L.dim)


def factor_through_tower(tower: Tower, images: Sequence, d: int) -> Factorization:
    """Factor ``f: L -> gl_n`` through the first stage whose ideal lies in ``ker f``."""
    L = tower.base
    direct = extend_lie_morphism(L, images, d)
    kernel = lie_map_kernel(L, direct.generator_images)
    for k, stage in enumerate(tower.stages):
        if stage.ideal.issubspace(kernel):
            break
    else:
        raise NoStageContained("no ideal of the chain lies in the kernel of f")
    q_images = tuple(direct.generator_images[i] for i in stage.lift)
    ext = extend_lie_morphism(stage.algebra, q_images, d)
    mismatches = []
    for mono in envelope(L).window(d):
        u = PbwElement(envelope(L), {mono: Fraction(1)})
        if ext(stage.projection(u)) != direct(u):
            mismatches.append(mono)
    return Factorization(k, q_images, ext, direct, mismatches)


_STAGE = re.compile(r"^stage\s+([A-Za-z_][A-Za-z0-9_']*)\s*=\s*span\s*\((.*)\)\s*$")
_VECTOR = re.compile(r"\(([^()]*)\)")


def _span_members(body: str, L: LieAlgebra, lineno: int) -> list:
    """Vectors listed inside ``span(...)``: linear expressions or ``(c1, ..., cn)`` tuples."""
    vectors = []
    for m in _VECTOR.finditer(body):
        parts = [t.strip() for t in m.group(1).split(",")]
        try:
            v = tuple(Fraction(t) for t in parts)
        except (ValueError, ZeroDivisionError):
            raise LieParseError(f"malformed vector ({m.group(1)})", lineno) from None
        if len(v) != L.dim:
            raise LieParseError(f"vector of length {len(v)}, expected {L.dim}", lineno)
        vectors.append(v)
    rest = _VECTOR.sub("", body)
    for piece in rest.split(","):
        if not piece.strip():
            continue
        coeffs = parse_linear(piece, L.names, lineno)
        vectors.append(tuple(coeffs.get(i, Fraction(0)) for i in range(L.dim)))
    return vectors


def parse_tower(text: str) -> Tower:
    """A ``.lie`` description plus ``stage <name> = span(...)`` lines, largest ideal first."""
    L = parse_lie(text, extra_keywords=("stage",))
    chain, names = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line.startswith("stage"):
            continue
        m = _STAGE.match(line)
        if not m:
            raise LieParseError("stage line must read 'stage <name> = span(...)'", lineno)
        name, body = m.groups()
        if name in names:
            raise LieParseError(f"stage {name!r} given twice", lineno)
        names.append(name)
        chain.append(Subspace(_span_members(body, L, lineno), L.dim))
    if not chain:
        raise LieParseError("tower file has no stage lines")
    return make_tower(L, chain, names)


__all__ = [
    "ExpResult", "Factorization", "GradedTruncation", "RepQuotient", "Stage", "Thread",
    "Tower", "TruncElement", "bch", "build_truncation", "check_thread", "coproduct_trunc",
    "exp_trunc", "factor_through_tower", "format_fraction", "inverse_trunc",
    "is_grouplike_trunc", "is_primitive_trunc", "lie_map_kernel", "log_trunc", "make_tower",
    "matrix_exp", "parse_tower", "rep_quotient", "thread_mul",
]
