"""Functions on the dual of an abelian Lie algebra.

For abelian ``g`` of dimension ``d`` the completed enveloping algebra is the
algebra of all functions ``g' -> K``.  We compute on the subclass of
exp-polynomials ``sum_i p_i(w) * exp(l_i(w))`` (``p_i`` polynomial, ``l_i``
linear), which contains the image of ``g``, is closed under the algebra and
Hopf operations and receives every PBW element.  Equality is decided on the
canonical form; this relies on the exponentials of distinct rational linear
forms being linearly independent over the polynomials.

The last part of the module covers the 2-dimensional algebra ``A2``
(``(x1, y1)(x2, y2) = (y1 x2 + y2 x1, y1 y2)``), a unital commutative algebra
with nonzero radical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Mapping, Sequence

from .algebras import FinDimAlgebra, from_matrices
from .errors import DimensionMismatch, NotAbelian, NotCommutative
from .lie import LieAlgebra
from .linalg import (
    Subspace,
    format_fraction,
    nullspace_sparse,
    rank,
)
from .pbw import PbwElement, Tensor

# ---------------------------------------------------------------------------
# exact values
# ---------------------------------------------------------------------------


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class ExpRational:
    """A finite sum ``sum c_q * e^q`` with rational ``c_q`` and distinct rational ``q``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = {_fr(q): _fr(c) for q, c in (terms or {}).items() if c}

    @classmethod
    def rational(cls, c) -> "ExpRational":
        return cls({0: c})

    def __add__(self, other):
        other = _as_exprational(other)
        out = dict(self.terms)
        for q, c in other.terms.items():
            out[q] = out.get(q, 0) + c
        return ExpRational(out)

    __radd__ = __add__

    def __neg__(self):
        return ExpRational({q: -c for q, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_exprational(other))

    def __mul__(self, other):
        other = _as_exprational(other)
        out: dict = {}
        for q, c in self.terms.items():
            for r, e in other.terms.items():
                out[q + r] = out.get(q + r, 0) + c * e
        return ExpRational(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExpRational.rational(other)
        if not isinstance(other, ExpRational):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_rational(self) -> bool:
        return set(self.terms) <= {0}

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def __float__(self):
        import math
        return sum(float(c) * math.exp(q) for q, c in self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for q, c in self.sorted_terms():
            if q == 0:
                parts.append(format_fraction(c))
            else:
                e = f"e^({format_fraction(q)})"
                parts.append({1: e, -1: "-" + e}.get(c, f"{format_fraction(c)}*{e}"))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [{"exp": format_fraction(q), "coeff": format_fraction(c)}
                for q, c in self.sorted_terms()]


def _as_exprational(x) -> ExpRational:
    if isinstance(x, ExpRational):
        return x
    if isinstance(x, (int, Fraction)):
        return ExpRational.rational(x)
    raise TypeError(f"cannot combine ExpRational with {type(x).__name__}")


# ---------------------------------------------------------------------------
# exp-polynomial functions
# ---------------------------------------------------------------------------

def _poly_clean(p: Mapping) -> dict:
    return {m: c for m, c in p.items() if c}


def _poly_add(p: Mapping, q: Mapping, scale=1) -> dict:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, 0) + scale * c
    return _poly_clean(out)


def _poly_mul(p: Mapping, q: Mapping) -> dict:
    out: dict = {}
    for m, c in p.items():
        for n, e in q.items():
            k = tuple(a + b for a, b in zip(m, n))
            out[k] = out.get(k, 0) + c * e
    return _poly_clean(out)


def _poly_eval(p: Mapping, point: Sequence) -> Fraction:
    total = Fraction(0)
    for m, c in p.items():
        t = c
        for x, k in zip(point, m):
            if k:
                t *= x ** k
        total += t
    return total


@dataclass(frozen=True, eq=False)
class ExpPolyFunction:
    """``w -> sum_l p_l(w) exp(<l, w>)`` on ``Q^dim``; ``summands`` maps ``l`` to ``p_l``.

    Polynomials are ``{exponent tuple: Fraction}``.  The constructor
    canonicalizes (zero polynomials dropped, coefficients as Fractions).
    """

    dim: int
    summands: Mapping

    def __post_init__(self):
        canon = {}
        for ell, poly in self.summands.items():
            ell = tuple(_fr(x) for x in ell)
            if len(ell) != self.dim:
                raise DimensionMismatch(f"linear form of length {len(ell)}, expected {self.dim}")
            p = {}
            for m, c in poly.items():
                m = tuple(int(k) for k in m)
                if len(m) != self.dim or any(k < 0 for k in m):
                    raise DimensionMismatch("bad exponent vector")
                if c:
                    p[m] = p.get(m, 0) + _fr(c)
            p = _poly_clean(p)
            if p:
                prev = canon.get(ell)
                canon[ell] = _poly_add(prev, p) if prev else p
        object.__setattr__(self, "summands", {k: v for k, v in canon.items() if v})

    # -- constructors ----------------------------------------------------------

    @classmethod
    def constant(cls, dim: int, c) -> "ExpPolyFunction":
        return cls(dim, {(0,) * dim: {(0,) * dim: c}})

    @classmethod
    def coordinate(cls, dim: int, i: int) -> "ExpPolyFunction":
        m = [0] * dim
        m[i] = 1
        return cls(dim, {(0,) * dim: {tuple(m): 1}})

    @classmethod
    def exp_linear(cls, dim: int, ell: Sequence) -> "ExpPolyFunction":
        return cls(dim, {tuple(ell): {(0,) * dim: 1}})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "ExpPolyFunction":
        dim = len(coeffs)
        poly = {}
        for i, c in enumerate(coeffs):
            m = [0] * dim
            m[i] = 1
            poly[tuple(m)] = c
        return cls(dim, {(0,) * dim: poly})

    # -- arithmetic --------------------------------------------------------------

    def _check(self, other: "ExpPolyFunction"):
        if not isinstance(other, ExpPolyFunction):
            raise TypeError("expected an ExpPolyFunction")
        if other.dim != self.dim:
            raise DimensionMismatch(f"functions on Q^{self.dim} and Q^{other.dim}")

    def _lift(self, other):
        if isinstance(other, (int, Fraction)):
            return ExpPolyFunction.constant(self.dim, other)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.summands)
        for ell, p in other.summands.items():
            out[ell] = _poly_add(out.get(ell, {}), p)
        return type(self)(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _fr(other)
            return type(self)(self.dim, {ell: {m: c * v for m, v in p.items()}
                                              for ell, p in self.summands.items()})
        self._check(other)
        out: dict = {}
        for l1, p1 in self.summands.items():
            for l2, p2 in other.summands.items():
                ell = tuple(a + b for a, b in zip(l1, l2))
                out[ell] = _poly_add(out.get(ell, {}), _poly_mul(p1, p2))
        return type(self)(self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ExpPolyFunction.constant(self.dim, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExpPolyFunction.constant(self.dim, other)
        if not isinstance(other, ExpPolyFunction):
            return NotImplemented
        return self.dim == other.dim and self.summands == other.summands

    def __hash__(self):
        return hash((self.dim, tuple(self.sorted_summands_key())))

    def __bool__(self):
        return bool(self.summands)

    # -- evaluation and substitution -------------------------------------------

    def __call__(self, point: Sequence) -> ExpRational:
        return fn_eval(self, point)

    def substitute(self, rows: Sequence[Sequence], new_dim: int) -> "ExpPolyFunction":
        """Pull back along the linear map ``w_i = sum_j rows[i][j] v_j`` (``v`` in ``Q^new_dim``)."""
        if len(rows) != self.dim:
            raise DimensionMismatch("need one row per variable")
        rows = [tuple(_fr(x) for x in r) for r in rows]
        var_polys = []
        for r in rows:
            p = {}
            for j, c in enumerate(r):
                if c:
                    m = [0] * new_dim
                    m[j] = 1
                    p[tuple(m)] = c
            var_polys.append(p)
        unit = {(0,) * new_dim: Fraction(1)}
        out: dict = {}
        for ell, poly in self.summands.items():
            new_ell = tuple(sum((ell[i] * rows[i][j] for i in range(self.dim)), Fraction(0))
                            for j in range(new_dim))
            acc: dict = {}
            for m, c in poly.items():
                term = {k: c * v for k, v in unit.items()}
                for i, k in enumerate(m):
                    for _ in range(k):
                        term = _poly_mul(term, var_polys[i])
                acc = _poly_add(acc, term)
            out[new_ell] = _poly_add(out.get(new_ell, {}), acc)
        return ExpPolyFunction(new_dim, out)

    def is_polynomial(self) -> bool:
        return set(self.summands) <= {(Fraction(0),) * self.dim}

    # -- output ----------------------------------------------------------------

    def sorted_summands_key(self):
        return sorted((ell, tuple(sorted(p.items()))) for ell, p in self.summands.items())

    def sorted_summands(self) -> list:
        return [(ell, sorted(p.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0]))))
                for ell, p in sorted(self.summands.items())]

    def format(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names is not None else [f"w{i + 1}" for i in range(self.dim)]
        if not self.summands:
            return "0"
        pieces = []
        for ell, terms in self.sorted_summands():
            e = _format_linear_form(ell, names)
            for m, c in terms:
                mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, m) if k)
                if e:
                    mono = f"{mono}*exp({e})" if mono else f"exp({e})"
                if not mono:
                    pieces.append(format_fraction(c))
                elif c == 1:
                    pieces.append(mono)
                elif c == -1:
                    pieces.append(f"-{mono}")
                else:
                    pieces.append(f"{format_fraction(c)}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self):
        return self.format()

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "text": self.format(),
            "summands": [
                {"exp": [format_fraction(x) for x in ell],
                 "poly": [{"powers": list(m), "coeff": format_fraction(c)} for m, c in terms]}
                for ell, terms in self.sorted_summands()
            ],
        }


def _format_linear_form(ell, names) -> str:
    parts = []
    for n, c in zip(names, ell):
        if not c:
            continue
        parts.append(n if c == 1 else f"-{n}" if c == -1 else f"{format_fraction(c)}*{n}")
    return " + ".join(parts).replace("+ -", "- ")


def fn_add(phi: ExpPolyFunction, psi: ExpPolyFunction) -> ExpPolyFunction:
    return phi + psi


def fn_mul(phi: ExpPolyFunction, psi: ExpPolyFunction) -> ExpPolyFunction:
    return phi * psi


def fn_eval(phi: ExpPolyFunction, point: Sequence) -> ExpRational:
    """Exact value at a rational point of the dual."""
    point = tuple(_fr(x) for x in point)
    if len(point) != phi.dim:
        raise DimensionMismatch(f"point of length {len(point)}, expected {phi.dim}")
    out: dict = {}
    for ell, poly in phi.summands.items():
        q = sum((a * b for a, b in zip(ell, point)), Fraction(0))
        out[q] = out.get(q, 0) + _poly_eval(poly, point)
    return ExpRational(out)


@dataclass(frozen=True)
class DualVector:
    coordinates: tuple

    def __post_init__(self):
        object.__setattr__(self, "coordinates", tuple(_fr(x) for x in self.coordinates))

    @property
    def dim(self) -> int:
        return len(self.coordinates)

    def pair(self, x: Sequence) -> Fraction:
        if len(x) != self.dim:
            raise DimensionMismatch("vector and dual vector differ in length")
        return sum((a * _fr(b) for a, b in zip(self.coordinates, x)), Fraction(0))


# ---------------------------------------------------------------------------
# Hopf structure
# ---------------------------------------------------------------------------

class PairFunction(ExpPolyFunction):
    """A function of ``(w^(1), w^(2))`` stored on ``Q^(2d)``; ``block`` is ``d``."""

    @property
    def block(self) -> int:
        return self.dim // 2

    def format(self, names=None):
        d = self.block
        names = names or [f"w{i + 1}_1" for i in range(d)] + [f"w{i + 1}_2" for i in range(d)]
        return super().format(names)


def _as_pair(f: ExpPolyFunction) -> PairFunction:
    return PairFunction(f.dim, f.summands)


def _identity_rows(d: int):
    return [[1 if i == j else 0 for j in range(d)] for i in range(d)]


def _block_rows(d: int, blocks: int, which: Sequence[int]):
    """Rows of ``w_i = sum_{b in which} w_i^(b)`` into ``Q^(blocks*d)``."""
    rows = []
    for i in range(d):
        r = [0] * (blocks * d)
        for b in which:
            r[b * d + i] = 1
        rows.append(r)
    return rows


def gamma(phi: ExpPolyFunction) -> PairFunction:
    """The coproduct: ``phi(w1 + w2)``."""
    return _as_pair(phi.substitute(_block_rows(phi.dim, 2, (0, 1)), 2 * phi.dim))


def fn_tensor(phi: ExpPolyFunction, psi: ExpPolyFunction) -> PairFunction:
    """``(w1, w2) -> phi(w1) psi(w2)``."""
    phi._check(psi)
    d = phi.dim
    left = phi.substitute(_block_rows(d, 2, (0,)), 2 * d)
    right = psi.substitute(_block_rows(d, 2, (1,)), 2 * d)
    return _as_pair(left * right)


def gamma_left(pair: PairFunction) -> ExpPolyFunction:
    """``(gamma (x) id)``: ``(w1, w2, w3) -> F(w1 + w2, w3)``."""
    d = pair.dim // 2
    rows = _block_rows(d, 3, (0, 1)) + _block_rows(d, 3, (2,))
    return pair.substitute(rows, 3 * d)


def gamma_right(pair: PairFunction) -> ExpPolyFunction:
    """``(id (x) gamma)``: ``(w1, w2, w3) -> F(w1, w2 + w3)``."""
    d = pair.dim // 2
    rows = _block_rows(d, 3, (0,)) + _block_rows(d, 3, (1, 2))
    return pair.substitute(rows, 3 * d)


def is_coassociative_on(phi: ExpPolyFunction) -> bool:
    g = gamma(phi)
    return gamma_left(g) == gamma_right(g)


def antipode_fn(phi: ExpPolyFunction) -> ExpPolyFunction:
    """``w -> phi(-w)``."""
    d = phi.dim
    return phi.substitute([[-1 if i == j else 0 for j in range(d)] for i in range(d)], d)


def counit_fn(phi: ExpPolyFunction) -> Fraction:
    """Value at ``0`` (always rational, since ``e^0 = 1``)."""
    v = fn_eval(phi, (0,) * phi.dim)
    return v.terms.get(Fraction(0), Fraction(0))


def diagonal(pair: ExpPolyFunction) -> ExpPolyFunction:
    """Multiplication ``V (x) V -> V``: restrict ``F(w1, w2)`` to ``w1 = w2``."""
    d = pair.dim // 2
    rows = _identity_rows(d) + _identity_rows(d)
    return pair.substitute(rows, d)


def _map_block(pair: ExpPolyFunction, which: int, rows_for_block) -> ExpPolyFunction:
    d = pair.dim // 2
    rows = []
    for b in range(2):
        for i in range(d):
            r = [0] * (2 * d)
            if b == which:
                for j, c in enumerate(rows_for_block[i]):
                    r[b * d + j] = c
            else:
                r[b * d + i] = 1
            rows.append(r)
    return pair.substitute(rows, 2 * d)


def convolution_failures(phi: ExpPolyFunction) -> list:
    """Sides of the antipode law ``m (S (x) id) gamma = m (id (x) S) gamma = eps * 1`` that fail."""
    d = phi.dim
    neg = [[-1 if i == j else 0 for j in range(d)] for i in range(d)]
    expected = ExpPolyFunction.constant(d, counit_fn(phi))
    g = gamma(phi)
    bad = []
    if diagonal(_map_block(g, 0, neg)) != expected:
        bad.append("left")
    if diagonal(_map_block(g, 1, neg)) != expected:
        bad.append("right")
    return bad


def is_primitive_fn(phi: ExpPolyFunction) -> bool:
    one = ExpPolyFunction.constant(phi.dim, 1)
    return gamma(phi) == fn_tensor(phi, one) + fn_tensor(one, phi)


def is_grouplike_fn(phi: ExpPolyFunction) -> bool:
    return counit_fn(phi) == 1 and gamma(phi) == fn_tensor(phi, phi)


def nu_embed(x: Sequence) -> ExpPolyFunction:
    """``x -> (w -> <w, x>)``."""
    return ExpPolyFunction.linear(x)


# ---------------------------------------------------------------------------
# the quotient map from the enveloping algebra
# ---------------------------------------------------------------------------

def _require_abelian(L: LieAlgebra):
    if not L.is_abelian:
        raise NotAbelian("the function model needs an abelian Lie algebra")


def q_monomial(d: int, m: tuple) -> ExpPolyFunction:
    powers = [0] * d
    for i in m:
        powers[i] += 1
    return ExpPolyFunction(d, {(0,) * d: {tuple(powers): 1}})


def q_map(u: PbwElement, exponent: Sequence | None = None) -> ExpPolyFunction:
    """Image of ``u`` (times ``exp(exponent)`` if given) as a function on the dual."""
    L = u.env.lie
    _require_abelian(L)
    d = L.dim
    poly: dict = {}
    for m, c in u.terms.items():
        powers = [0] * d
        for i in m:
            powers[i] += 1
        poly[tuple(powers)] = poly.get(tuple(powers), 0) + c
    ell = tuple(_fr(x) for x in exponent) if exponent is not None else (0,) * d
    if len(ell) != d:
        raise DimensionMismatch("exponent has the wrong length")
    return ExpPolyFunction(d, {ell: poly})


def q_tensor(t: Tensor) -> PairFunction:
    """``(q (x) q)`` on a tensor of two PBW factors over the same abelian algebra."""
    if t.order != 2:
        raise DimensionMismatch("expected a tensor with two factors")
    L = t.envs[0].lie
    _require_abelian(L)
    d = L.dim
    poly: dict = {}
    for (a, b), c in t.terms.items():
        powers = [0] * (2 * d)
        for i in a:
            powers[i] += 1
        for i in b:
            powers[d + i] += 1
        poly[tuple(powers)] = poly.get(tuple(powers), 0) + c
    return PairFunction(2 * d, {(0,) * (2 * d): poly})


def q_injective_rank(L: LieAlgebra, d: int) -> tuple:
    """``(rank of q on the degree-<=d window, window dimension)``."""
    from .pbw import envelope
    _require_abelian(L)
    env = envelope(L)
    rows = []
    for m in env.window(d):
        f = q_map(env.monomial(m))
        poly = f.summands.get((Fraction(0),) * L.dim, {})
        rows.append(dict(poly))
    return rank(rows), len(rows)


# ---------------------------------------------------------------------------
# radicals
# ---------------------------------------------------------------------------

def radical_commutative(A: FinDimAlgebra) -> Subspace:
    """Radical of a commutative algebra: the kernel of ``(x, y) -> tr(L_x L_y)``."""
    if not A.is_commutative():
        raise NotCommutative("trace-form radical needs a commutative algebra")
    n = A.dim
    e = [A.basis_vector(i) for i in range(n)]
    gram = [{j: v for j in range(n) if (v := A.trace_form(e[i], e[j]))} for i in range(n)]
    return Subspace(nullspace_sparse(gram, n), n)


def is_nilpotent(A: FinDimAlgebra, a: Sequence) -> bool:
    return all(c == 0 for c in A.power(a, A.dim + 1)) if A.dim else True


def radical_by_enumeration(A: FinDimAlgebra, bound: int = 1) -> Subspace:
    """Span of the nilpotent elements with integer coordinates in ``[-bound, bound]``.

    A cross-check for small commutative algebras, where the nilpotent elements
    form the radical.
    """
    n = A.dim
    found = [v for v in iproduct(range(-bound, bound + 1), repeat=n)
             if any(v) and is_nilpotent(A, tuple(Fraction(x) for x in v))]
    return Subspace([tuple(Fraction(x) for x in v) for v in found], n)


# ---------------------------------------------------------------------------
# the algebra A2
# ---------------------------------------------------------------------------

def a2_mul(a: Sequence, b: Sequence) -> tuple:
    x1, y1 = (_fr(t) for t in a)
    x2, y2 = (_fr(t) for t in b)
    return (y1 * x2 + y2 * x1, y1 * y2)


def a2_matrix(a: Sequence) -> tuple:
    x, y = (_fr(t) for t in a)
    return ((y, x), (Fraction(0), y))


def a2_is_unit(a: Sequence) -> bool:
    return _fr(a[1]) != 0


def a2_inverse(a: Sequence) -> tuple:
    x, y = (_fr(t) for t in a)
    if not y:
        raise ZeroDivisionError("(x, 0) is not invertible in A2")
    return (-x / (y * y), 1 / y)


A2_ONE = (Fraction(0), Fraction(1))


@dataclass(frozen=True)
class A2Element:
    """``(x, y)`` in A2; rational scalars ``c`` coerce to ``(0, c)``."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", _fr(self.x))
        object.__setattr__(self, "y", _fr(self.y))

    @classmethod
    def coerce(cls, v) -> "A2Element":
        if isinstance(v, A2Element):
            return v
        if isinstance(v, (int, Fraction)):
            return cls(0, v)
        return NotImplemented

    def pair(self) -> tuple:
        return (self.x, self.y)

    def __add__(self, other):
        other = A2Element.coerce(other)
        if other is NotImplemented:
            return other
        return A2Element(self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __neg__(self):
        return A2Element(-self.x, -self.y)

    def __sub__(self, other):
        other = A2Element.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = A2Element.coerce(other)
        if other is NotImplemented:
            return other
        return A2Element(*a2_mul(self.pair(), other.pair()))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = A2Element(0, 1)
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        return f"({format_fraction(self.x)}, {format_fraction(self.y)})"

    def to_json(self) -> dict:
        return {"x": format_fraction(self.x), "y": format_fraction(self.y)}


def a2_algebra() -> FinDimAlgebra:
    """A2 in coordinates ``(x, y)``: basis ``c = (1, 0)`` and ``1 = (0, 1)``."""
    return from_matrices([a2_matrix((1, 0)), a2_matrix((0, 1))], ["c", "1"])


def a2_idempotents() -> list:
    """Solutions of ``(x, y)^2 = (x, y)``: ``y^2 = y`` forces ``y in {0, 1}``, then ``x(2y - 1) = 0``."""
    out = []
    for y in (Fraction(0), Fraction(1)):
        # 2xy = x has the single solution x = 0 because 2y - 1 != 0
        out.append((Fraction(0), y))
    return out


@dataclass(frozen=True)
class A2Morphism:
    """Unital algebra morphism ``K^n -> A2`` given by the images of the coordinate idempotents."""

    images: tuple

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, t: Sequence) -> tuple:
        x = sum((_fr(c) * img[0] for c, img in zip(t, self.images)), Fraction(0))
        y = sum((_fr(c) * img[1] for c, img in zip(t, self.images)), Fraction(0))
        return (x, y)

    def matrix(self) -> list:
        """2 x n matrix of the underlying linear map."""
        return [[img[0] for img in self.images], [img[1] for img in self.images]]

    def kernel(self) -> Subspace:
        rows = [{j: c for j, c in enumerate(r) if c} for r in self.matrix()]
        return Subspace(nullspace_sparse(rows, self.n), self.n)

    def radical_preimage(self) -> Subspace:
        """``F^-1(K x {0})``: vectors whose image has zero second coordinate."""
        row = {j: c for j, c in enumerate(self.matrix()[1]) if c}
        return Subspace(nullspace_sparse([row], self.n), self.n)

    def preimage_in_kernel(self) -> bool:
        return self.radical_preimage().issubspace(self.kernel())

    def morphism_failures(self) -> list:
        bad = []
        n = self.n
        e = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
        for i in range(n):
            for j in range(n):
                prod = tuple(a * b for a, b in zip(e[i], e[j]))
                if self(prod) != a2_mul(self(e[i]), self(e[j])):
                    bad.append((i, j))
        if self((1,) * n) != A2_ONE:
            bad.append("unit")
        return bad


def a2_morphism_census(n: int) -> list:
    """All unital algebra morphisms ``K^n -> A2``.

    The coordinate idempotents must go to pairwise orthogonal idempotents of
    A2 summing to ``1``; each surviving assignment is checked to be a morphism
    and to satisfy ``F^-1(radical) <= ker F``.
    """
    if not 1 <= n <= 8:
        raise ValueError("census is enumerated for 1 <= n <= 8")
    idem = a2_idempotents()
    zero = (Fraction(0), Fraction(0))
    out = []
    for images in iproduct(idem, repeat=n):
        if any(a2_mul(images[i], images[j]) != zero
               for i in range(n) for j in range(i + 1, n)):
            continue
        total = (sum(i[0] for i in images), sum(i[1] for i in images))
        if total != A2_ONE:
            continue
        F = A2Morphism(tuple(images))
        if F.morphism_failures():  # pragma: no cover - forced by the constraints above
            raise AssertionError(f"assignment {images} is not a morphism")
        out.append(F)
    return out


def a2_matrix_kernel_trivial() -> bool:
    """The representation ``(x, y) -> [[y, x], [0, y]]`` is injective (checked on the basis)."""
    return Subspace([tuple(c for row in a2_matrix(v) for c in row) for v in ((1, 0), (0, 1))],
                    4).dim == 2


def a2_unit_check(a: Sequence) -> bool:
    """Invertibility as a matrix agrees with ``a2_is_unit``."""
    m = a2_matrix(a)
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return (det != 0) == a2_is_unit(a)


__all__ = [
    "A2Element", "A2Morphism", "A2_ONE", "DualVector", "ExpPolyFunction", "ExpRational", "PairFunction",
    "a2_algebra", "a2_idempotents", "a2_inverse", "a2_is_unit", "a2_matrix",
    "a2_matrix_kernel_trivial", "a2_morphism_census", "a2_mul", "a2_unit_check",
    "antipode_fn", "convolution_failures", "counit_fn", "diagonal", "fn_add", "fn_eval",
    "fn_mul", "fn_tensor", "gamma", "gamma_left", "gamma_right", "is_coassociative_on",
    "is_grouplike_fn", "is_nilpotent", "is_primitive_fn", "nu_embed", "q_injective_rank",
    "q_map", "q_monomial", "q_tensor", "radical_by_enumeration", "radical_commutative",
]
