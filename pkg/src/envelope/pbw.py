"""The enveloping algebra U(L) on its Poincare-Birkhoff-Witt basis.

A PBW monomial is a non-decreasing tuple of basis positions; the empty tuple
is the unit. Products of generators are brought to normal form by repeatedly
rewriting an adjacent inversion ``b_j b_i`` (``j > i``) as
``b_i b_j + [b_j, b_i]``; each rewrite lowers either the length or the number of
inversions, so the process terminates for any choice of position.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .errors import (
    AlgebraMismatch,
    DimensionMismatch,
    ImagesNotALieMorphism,
    NotAnIdeal,
)
from .lie import (
    LieAlgebra,
    LieMorphism,
    adapted_basis,
    change_basis,
    is_ideal,
    make_lie,
    quotient,
)
from .linalg import Subspace, commutator, format_fraction, mat, nullspace_sparse, rank
from .algebras import FinDimAlgebra, MatrixAlgebra


def monomial_key(m: tuple):
    """Graded-lexicographic sort key."""
    return (len(m), m)


# ---------------------------------------------------------------------------
# straightening
# ---------------------------------------------------------------------------

def rewrite_descent(L: LieAlgebra, word: tuple, pos: int) -> list:
    """One rewriting step at an inversion ``word[pos] > word[pos + 1]``.

    Returns ``[(word', coefficient), ...]`` with
    ``b_j b_i = b_i b_j + [b_j, b_i]``.
    """
    j, i = word[pos], word[pos + 1]
    head, tail = word[:pos], word[pos + 2:]
    out = [(head + (i, j) + tail, Fraction(1))]
    for k, c in L.basis_bracket(j, i):
        out.append((head + (k,) + tail, c))
    return out


def _first_descent(word: tuple) -> int:
    for p in range(len(word) - 1):
        if word[p] > word[p + 1]:
            return p
    return -1


def _normal_form(L: LieAlgebra, word: tuple) -> dict:
    cache = L._cache.setdefault("normal_form", {})
    hit = cache.get(word)
    if hit is not None:
        return hit
    p = _first_descent(word)
    if p < 0:
        result = {word: Fraction(1)}
    else:
        result: dict = {}
        for w, c in rewrite_descent(L, word, p):
            for m, d in _normal_form(L, w).items():
                v = result.get(m, 0) + c * d
                if v:
                    result[m] = v
                else:
                    result.pop(m, None)
    cache[word] = result
    return result


def _descents(word: tuple) -> list:
    return [p for p in range(len(word) - 1) if word[p] > word[p + 1]]


def _straighten_with(L: LieAlgebra, word: tuple, choose) -> dict:
    todo = {word: Fraction(1)}
    done: dict = {}
    while todo:
        w, c = todo.popitem()
        ds = _descents(w)
        if not ds:
            v = done.get(w, 0) + c
            if v:
                done[w] = v
            else:
                done.pop(w, None)
            continue
        for w2, d in rewrite_descent(L, w, choose(ds)):
            v = todo.get(w2, 0) + c * d
            if v:
                todo[w2] = v
            else:
                todo.pop(w2, None)
    return done


def straighten(L: LieAlgebra, word: Sequence, strategy: str = "leftmost",
               rng: random.Random | None = None) -> "PbwElement":
    """PBW normal form of the product of generators ``word`` (indices or names).

    ``strategy`` picks the inversion rewritten at each step: ``leftmost``
    (the default, memoised), ``rightmost`` or ``random``.
    """
    env = envelope(L)
    w = env._word(word)
    if strategy == "leftmost":
        return PbwElement(env, dict(_normal_form(L, w)))
    if strategy == "rightmost":
        return PbwElement(env, _straighten_with(L, w, lambda ds: ds[-1]))
    if strategy == "random":
        rng = rng or random.Random(0)
        return PbwElement(env, _straighten_with(L, w, rng.choice))
    raise ValueError(f"unknown strategy {strategy!r}")


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

def _accumulate(out: dict, terms: Mapping, scale) -> None:
    for m, d in terms.items():
        v = out.get(m, 0) + scale * d
        if v:
            out[m] = v
        else:
            out.pop(m, None)


class Envelope:
    """U(L) for a fixed Lie algebra; hands out elements and caches products."""

    def __init__(self, lie: LieAlgebra):
        self.lie = lie

    def __repr__(self):
        return f"Envelope({self.lie!r})"

    def _word(self, word: Sequence) -> tuple:
        out = []
        for a in word:
            if isinstance(a, str):
                out.append(self.lie.index(a))
            else:
                if not 0 <= a < self.lie.dim:
                    raise DimensionMismatch(f"basis index {a} out of range")
                out.append(int(a))
        return tuple(out)

    def element(self, terms: Mapping | None = None) -> "PbwElement":
        """Element from ``{monomial: coeff}``; monomials need not be sorted."""
        out: dict = {}
        for m, c in (terms or {}).items():
            w = self._word(m)
            _accumulate(out, _normal_form(self.lie, w), Fraction(c))
        return PbwElement(self, out)

    def one(self) -> "PbwElement":
        return PbwElement(self, {(): Fraction(1)})

    def zero(self) -> "PbwElement":
        return PbwElement(self, {})

    def scalar(self, c) -> "PbwElement":
        c = Fraction(c)
        return PbwElement(self, {(): c} if c else {})

    def gen(self, name_or_index) -> "PbwElement":
        i = self._word([name_or_index])[0]
        return PbwElement(self, {(i,): Fraction(1)})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.lie.dim)]

    def from_vector(self, v: Sequence) -> "PbwElement":
        if len(v) != self.lie.dim:
            raise DimensionMismatch("vector does not match the Lie algebra")
        return PbwElement(self, {(i,): Fraction(c) for i, c in enumerate(v) if c})

    def monomial(self, m: Sequence) -> "PbwElement":
        """Product of the listed generators, straightened."""
        return self.element({tuple(m): 1})

    def window(self, d: int) -> list:
        """All PBW monomials of degree <= d in graded-lex order."""
        out = []
        for k in range(d + 1):
            out.extend(combinations_with_replacement(range(self.lie.dim), k))
        return out

    def mul_monomials(self, a: tuple, b: tuple) -> dict:
        cache = self.lie._cache.setdefault("mono_mul", {})
        key = (a, b)
        hit = cache.get(key)
        if hit is None:
            hit = _normal_form(self.lie, a + b)
            cache[key] = hit
        return hit

    def format_monomial(self, m: tuple) -> str:
        if not m:
            return "1"
        parts = []
        i = 0
        while i < len(m):
            j = i
            while j < len(m) and m[j] == m[i]:
                j += 1
            name = self.lie.names[m[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)


def envelope(L: LieAlgebra) -> Envelope:
    env = L._cache.get("envelope")
    if env is None:
        env = Envelope(L)
        L._cache["envelope"] = env
    return env


class PbwElement:
    """Finite rational combination of PBW monomials (zero coefficients never stored)."""

    __slots__ = ("env", "terms")

    def __init__(self, env: Envelope, terms: dict):
        self.env = env
        self.terms = terms

    @property
    def lie(self) -> LieAlgebra:
        return self.env.lie

    def _coerce(self, other) -> "PbwElement":
        if isinstance(other, PbwElement):
            if other.env is not self.env:
                raise AlgebraMismatch("elements of different enveloping algebras")
            return other
        if isinstance(other, (int, Fraction)):
            return self.env.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        _accumulate(out, other.terms, 1)
        return PbwElement(self.env, out)

    __radd__ = __add__

    def __neg__(self):
        return PbwElement(self.env, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        _accumulate(out, other.terms, -1)
        return PbwElement(self.env, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return PbwElement(self.env, {m: c * v for m, v in self.terms.items()} if c else {})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                _accumulate(out, self.env.mul_monomials(a, b), x * y)
        return PbwElement(self.env, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = self.env.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.env.scalar(other)
        if not isinstance(other, PbwElement):
            return NotImplemented
        return self.env is other.env and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        """Largest monomial length; -1 for zero."""
        return max((len(m) for m in self.terms), default=-1)

    def coefficient(self, m: Sequence) -> Fraction:
        return self.terms.get(self.env._word(m), Fraction(0))

    def counit(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        out = ""
        for m, c in self.sorted_terms():
            mon = self.env.format_monomial(m)
            mag = abs(c)
            piece = format_fraction(mag) if not m else (
                mon if mag == 1 else f"{format_fraction(mag)}*{mon}")
            if not out:
                out = ("-" if c < 0 else "") + piece
            else:
                out += (" - " if c < 0 else " + ") + piece
        return out

    def to_json(self) -> dict:
        names = self.env.lie.names
        return {"terms": [{"monomial": [names[i] for i in m], "coeff": format_fraction(c)}
                          for m, c in self.sorted_terms()]}


def element_from_json(env: Envelope, data: Mapping) -> PbwElement:
    return env.element({tuple(t["monomial"]): Fraction(t["coeff"]) for t in data["terms"]})


def mul(L: LieAlgebra, a: PbwElement, b: PbwElement) -> PbwElement:
    if a.env.lie is not L or b.env.lie is not L:
        raise AlgebraMismatch("elements do not belong to U(L)")
    return a * b


def counit(a: PbwElement) -> Fraction:
    return a.counit()


# ---------------------------------------------------------------------------
# tensor powers
# ---------------------------------------------------------------------------

class Tensor:
    """Element of ``U(L_1) (x) ... (x) U(L_k)``; keys are tuples of PBW monomials."""

    __slots__ = ("envs", "terms")

    def __init__(self, envs: Sequence[Envelope], terms: dict):
        self.envs = tuple(envs)
        self.terms = terms

    @property
    def order(self) -> int:
        return len(self.envs)

    def _check(self, other: "Tensor"):
        if self.envs != other.envs:
            raise AlgebraMismatch("tensors over different factors")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        _accumulate(out, other.terms, 1)
        return Tensor(self.envs, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        _accumulate(out, other.terms, -1)
        return Tensor(self.envs, out)

    def __neg__(self):
        return Tensor(self.envs, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Tensor(self.envs, {k: c * v for k, v in self.terms.items()} if c else {})
        self._check(other)
        out: dict = {}
        for ka, x in self.terms.items():
            for kb, y in other.terms.items():
                parts = [env.mul_monomials(a, b) for env, a, b in zip(self.envs, ka, kb)]
                _accumulate(out, _product_terms(parts), x * y)
        return Tensor(self.envs, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.envs == other.envs and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: tuple(monomial_key(m) for m in t[0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        pieces = []
        for key, c in self.sorted_terms():
            mons = " (x) ".join(env.format_monomial(m) for env, m in zip(self.envs, key))
            pieces.append(f"{format_fraction(c)}*[{mons}]")
        return " + ".join(pieces)

    def to_json(self) -> dict:
        return {"terms": [
            {"monomials": [[env.lie.names[i] for i in m] for env, m in zip(self.envs, key)],
             "coeff": format_fraction(c)}
            for key, c in self.sorted_terms()]}


def _product_terms(parts: list) -> dict:
    """Tensor product of per-factor term dicts."""
    out = {(): Fraction(1)}
    for p in parts:
        nxt: dict = {}
        for k, c in out.items():
            for m, d in p.items():
                nxt[k + (m,)] = c * d
        out = nxt
    return out


def tensor(*elements: PbwElement) -> Tensor:
    """``a_1 (x) a_2 (x) ...``."""
    parts = [e.terms for e in elements]
    return Tensor([e.env for e in elements], _product_terms(parts))


def tensor_unit(envs: Sequence[Envelope]) -> Tensor:
    return Tensor(envs, {tuple(() for _ in envs): Fraction(1)})


def map_factor(t: Tensor, index: int, f, new_envs: Sequence[Envelope] | None = None) -> Tensor:
    """Apply a linear map ``f: PBW monomial -> PbwElement | Tensor`` to one factor.

    When ``f`` returns tensors, the factor is replaced by their factors.
    """
    out: dict = {}
    envs = None
    for key, c in t.terms.items():
        img = f(key[index])
        if isinstance(img, Tensor):
            envs = t.envs[:index] + img.envs + t.envs[index + 1:]
            for k2, d in img.terms.items():
                _accumulate(out, {key[:index] + k2 + key[index + 1:]: d}, c)
        elif isinstance(img, PbwElement):
            envs = t.envs[:index] + (img.env,) + t.envs[index + 1:]
            for m, d in img.terms.items():
                _accumulate(out, {key[:index] + (m,) + key[index + 1:]: d}, c)
        else:  # scalar-valued: the factor disappears
            envs = t.envs[:index] + t.envs[index + 1:]
            _accumulate(out, {key[:index] + key[index + 1:]: Fraction(img)}, c)
    if envs is None:
        envs = new_envs if new_envs is not None else t.envs
    return Tensor(envs, out)


def multiply_out(t: Tensor) -> PbwElement:
    """The multiplication map ``U (x) U -> U``."""
    env = t.envs[0]
    if any(e is not env for e in t.envs):
        raise AlgebraMismatch("can only multiply factors of one algebra")
    out: dict = {}
    for key, c in t.terms.items():
        prod = {(): Fraction(1)}
        for m in key:
            nxt: dict = {}
            for p, x in prod.items():
                _accumulate(nxt, env.mul_monomials(p, m), x)
            prod = nxt
        _accumulate(out, prod, c)
    return PbwElement(env, out)


# ---------------------------------------------------------------------------
# Hopf structure
# ---------------------------------------------------------------------------

def _coproduct_monomial(env: Envelope, m: tuple) -> Tensor:
    cache = env.lie._cache.setdefault("coproduct", {})
    hit = cache.get(m)
    if hit is not None:
        return hit
    out = tensor_unit((env, env))
    for i in m:
        g = PbwElement(env, {(i,): Fraction(1)})
        primitive = tensor(g, env.one()) + tensor(env.one(), g)
        out = out * primitive
    cache[m] = out
    return out


def coproduct(L: LieAlgebra, a: PbwElement) -> Tensor:
    """The algebra morphism ``U(L) -> U(L) (x) U(L)`` making every generator primitive."""
    env = envelope(L)
    out: dict = {}
    for m, c in a.terms.items():
        _accumulate(out, _coproduct_monomial(env, m).terms, c)
    return Tensor((env, env), out)


def antipode(L: LieAlgebra, a: PbwElement) -> PbwElement:
    """``S(b_1 ... b_n) = (-1)^n b_n ... b_1``, re-straightened."""
    out: dict = {}
    for m, c in a.terms.items():
        sign = -1 if len(m) % 2 else 1
        _accumulate(out, _normal_form(L, tuple(reversed(m))), sign * c)
    return PbwElement(envelope(L), out)


def is_primitive(L: LieAlgebra, a: PbwElement) -> bool:
    one = envelope(L).one()
    return coproduct(L, a) == tensor(a, one) + tensor(one, a)


def is_grouplike(L: LieAlgebra, a: PbwElement) -> bool:
    return a.counit() == 1 and coproduct(L, a) == tensor(a, a)


@dataclass(frozen=True)
class WindowSpan:
    """A subspace of the degree-<=d window, in coordinates over ``window``."""

    env: Envelope
    window: tuple
    subspace: Subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def elements(self) -> list:
        return [PbwElement(self.env, {m: c for m, c in zip(self.window, v) if c})
                for v in self.subspace.basis]

    def coordinates(self, u: PbwElement) -> tuple:
        pos = {m: i for i, m in enumerate(self.window)}
        v = [Fraction(0)] * len(self.window)
        for m, c in u.terms.items():
            if m not in pos:
                raise ValueError("element leaves the window")
            v[pos[m]] = c
        return tuple(v)

    def contains(self, u: PbwElement) -> bool:
        return self.subspace.contains(self.coordinates(u))


def _kernel_on_window(env: Envelope, window: list, images: list) -> WindowSpan:
    """Nullspace of the linear map sending window monomial ``i`` to ``images[i]`` (term dicts)."""
    rows: dict = {}
    for col, img in enumerate(images):
        for key, c in img.items():
            rows.setdefault(key, {})[col] = c
    null = nullspace_sparse(rows.values(), len(window))
    return WindowSpan(env, tuple(window), Subspace(null, len(window)))


def primitive_space(L: LieAlgebra, d: int) -> WindowSpan:
    """Primitive elements among the degree-<=d window, solved as a linear system."""
    if d < 1:
        raise ValueError("degree bound must be at least 1")
    env = envelope(L)
    window = env.window(d)
    images = []
    for m in window:
        u = PbwElement(env, {m: Fraction(1)})
        defect = coproduct(L, u) - tensor(u, env.one()) - tensor(env.one(), u)
        images.append(defect.terms)
    return _kernel_on_window(env, window, images)


# ---------------------------------------------------------------------------
# morphisms of enveloping algebras
# ---------------------------------------------------------------------------

class EnvelopeMorphism:
    """``U(f): U(L) -> U(L')`` induced by a Lie morphism ``f``."""

    def __init__(self, f: LieMorphism):
        self.lie_map = f
        self.source = envelope(f.source)
        self.target = envelope(f.target)
        self._cache: dict = {}
        self._gens = [self.target.from_vector(f.image_of_basis(i))
                      for i in range(f.source.dim)]

    def on_monomial(self, m: tuple) -> PbwElement:
        hit = self._cache.get(m)
        if hit is None:
            hit = self.target.one()
            for i in m:
                hit = hit * self._gens[i]
            self._cache[m] = hit
        return hit

    def __call__(self, u: PbwElement) -> PbwElement:
        if u.env is not self.source:
            raise AlgebraMismatch("element does not live in the source envelope")
        out: dict = {}
        for m, c in u.terms.items():
            _accumulate(out, self.on_monomial(m).terms, c)
        return PbwElement(self.target, out)

    def compose(self, first: "EnvelopeMorphism") -> "EnvelopeMorphism":
        """``self o first``."""
        return EnvelopeMorphism(self.lie_map.compose(first.lie_map))

    def kernel_on_window(self, d: int) -> WindowSpan:
        window = self.source.window(d)
        return _kernel_on_window(self.source, window,
                                 [self.on_monomial(m).terms for m in window])


def functor_U_on_quotient(L: LieAlgebra, J: Subspace):
    """``(L/J, U(p))`` for the projection ``p: L -> L/J``."""
    if not is_ideal(L, J):
        raise NotAnIdeal("subspace is not an ideal")
    Q, p = quotient(L, J)
    return Q, EnvelopeMorphism(p)


def _adapted_data(L: LieAlgebra, J: Subspace, F: Sequence = ()):
    key = ("adapted", J, tuple(tuple(v) for v in F))
    hit = L._cache.get(key)
    if hit is None:
        ab = adapted_basis(L, J, F)
        L2, to_new, _ = change_basis(L, ab.vectors)
        hit = (ab, EnvelopeMorphism(to_new))
        L._cache[key] = hit
    return hit


def to_adapted_basis(L: LieAlgebra, u: PbwElement, J: Subspace, F: Sequence = ()):
    """Rewrite ``u`` over the ordered basis ``F, F', F''``; returns ``(element, basis)``."""
    ab, iso = _adapted_data(L, J, F)
    return iso(u), ab


def membership_ULJ(L: LieAlgebra, u: PbwElement, J: Subspace, F: Sequence = ()) -> bool:
    """Whether ``u`` lies in the left ideal ``U(L) J`` (a two-sided ideal since J is a Lie ideal).

    After rewriting in the adapted basis, ``u`` belongs to ``U(L) J`` exactly
    when every surviving monomial ends in a factor from ``F''``.
    """
    if not is_ideal(L, J):
        raise NotAnIdeal("subspace is not an ideal")
    v, ab = to_adapted_basis(L, u, J, F)
    start = ab.ideal_start
    return all(m and m[-1] >= start for m in v.terms)


def membership_subspace(L: LieAlgebra, J: Subspace, d: int) -> WindowSpan:
    """All window elements in ``U(L) J``, found by the adapted-basis criterion."""
    if not is_ideal(L, J):
        raise NotAnIdeal("subspace is not an ideal")
    ab, iso = _adapted_data(L, J)
    env = envelope(L)
    window = env.window(d)
    start = ab.ideal_start
    images = []
    for m in window:
        img = iso.on_monomial(m)
        images.append({k: c for k, c in img.terms.items() if not (k and k[-1] >= start)})
    return _kernel_on_window(env, window, images)


# ---------------------------------------------------------------------------
# universal property on finite windows
# ---------------------------------------------------------------------------

class AlgebraMorphismWindow:
    """An algebra morphism ``U(L) -> A`` evaluated on monomials of degree <= ``degree``."""

    def __init__(self, env: Envelope, degree: int, target, generator_images: Sequence):
        self.env = env
        self.degree = degree
        self.target = target
        self.generator_images = tuple(generator_images)
        self._cache: dict = {}

    def on_monomial(self, m: tuple):
        if len(m) > self.degree:
            raise ValueError(f"monomial of degree {len(m)} outside the window {self.degree}")
        hit = self._cache.get(m)
        if hit is None:
            hit = self.target.one()
            for i in m:
                hit = self.target.mul(hit, self.generator_images[i])
            self._cache[m] = hit
        return hit

    def __call__(self, u: PbwElement):
        if u.env is not self.env:
            raise AlgebraMismatch("element does not live in the source envelope")
        out = self.target.zero()
        for m, c in u.terms.items():
            out = self.target.add(out, self.target.scale(c, self.on_monomial(m)))
        return out

    def multiplicativity_failures(self) -> list:
        """Window pairs ``(m, m')`` with ``f(m m') != f(m) f(m')``."""
        window = self.env.window(self.degree)
        bad = []
        for a in window:
            for b in window:
                if len(a) + len(b) > self.degree:
                    continue
                lhs = self(PbwElement(self.env, dict(self.env.mul_monomials(a, b))))
                rhs = self.target.mul(self.on_monomial(a), self.on_monomial(b))
                if lhs != rhs:
                    bad.append((a, b))
        return bad


def _lie_relation_failures(L: LieAlgebra, images: Sequence, target) -> list:
    bad = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = target.add(target.mul(images[i], images[j]),
                             target.scale(-1, target.mul(images[j], images[i])))
            rhs = target.zero()
            for k, c in L.basis_bracket(i, j):
                rhs = target.add(rhs, target.scale(c, images[k]))
            if lhs != rhs:
                bad.append((i, j))
    return bad


def extend_lie_morphism(L: LieAlgebra, images: Sequence, d: int) -> AlgebraMorphismWindow:
    """Extend generator images (square matrices) to ``U(L)`` on the degree-<=d window."""
    mats = [mat(m) for m in images]
    if len(mats) != L.dim:
        raise DimensionMismatch("need one image per basis element")
    n = len(mats[0]) if mats else 0
    if any(len(m) != n or any(len(r) != n for r in m) for m in mats):
        raise DimensionMismatch("images must be square matrices of one size")
    bad = [(i, j) for i in range(L.dim) for j in range(i + 1, L.dim)
           if commutator(mats[i], mats[j]) != _combo(L.basis_bracket(i, j), mats, n)]
    if bad:
        i, j = bad[0]
        raise ImagesNotALieMorphism(
            f"images violate the relation for [{L.names[i]}, {L.names[j]}]")
    return AlgebraMorphismWindow(envelope(L), d, MatrixAlgebra(n), mats)


def _combo(terms, mats, n):
    target = MatrixAlgebra(n)
    out = target.zero()
    for k, c in terms:
        out = target.add(out, target.scale(c, mats[k]))
    return out


def extend_into_algebra(L: LieAlgebra, A: FinDimAlgebra, images: Sequence,
                        d: int) -> AlgebraMorphismWindow:
    """Extend a Lie morphism ``L -> li A`` given by coordinate vectors of ``A``."""
    imgs = [tuple(Fraction(c) for c in v) for v in images]
    bad = _lie_relation_failures(L, imgs, A)
    if bad:
        i, j = bad[0]
        raise ImagesNotALieMorphism(
            f"images violate the relation for [{L.names[i]}, {L.names[j]}]")
    return AlgebraMorphismWindow(envelope(L), d, A, imgs)


def underlying_lie(A: FinDimAlgebra) -> LieAlgebra:
    """``li A``: the basis of A with the commutator bracket."""
    brackets = {}
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            ab = A.mul(A.basis_vector(i), A.basis_vector(j))
            ba = A.mul(A.basis_vector(j), A.basis_vector(i))
            terms = {k: x - y for k, (x, y) in enumerate(zip(ab, ba)) if x != y}
            if terms:
                brackets[(i, j)] = terms
    return make_lie(A.names, {(A.names[i], A.names[j]): {A.names[k]: c for k, c in t.items()}
                              for (i, j), t in brackets.items()})


def nu_backadjunction(A: FinDimAlgebra, d: int) -> AlgebraMorphismWindow:
    """``nu_A: U(li A) -> A`` sending a monomial in the basis of A to its product in A."""
    L = underlying_lie(A)
    return AlgebraMorphismWindow(envelope(L), d, A, [A.basis_vector(i) for i in range(A.dim)])


# ---------------------------------------------------------------------------
# U(L1 x L2) versus U(L1) (x) U(L2)
# ---------------------------------------------------------------------------

@dataclass
class MultiplicativityWitness:
    source_window_dim: int
    target_window_dim: int
    rank: int
    images_in_window: bool
    images: dict  # source monomial -> Tensor

    @property
    def bijective(self) -> bool:
        return (self.images_in_window and self.rank == self.source_window_dim
                == self.target_window_dim)


def product_to_tensor(L1: LieAlgebra, L2: LieAlgebra, product: LieAlgebra | None = None):
    """The algebra map ``U(L1 x L2) -> U(L1) (x) U(L2)`` on generators ``(v,0)->v(x)1, (0,w)->1(x)w``."""
    from .lie import direct_product
    import warnings
    if product is None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            product = direct_product(L1, L2)
    e1, e2 = envelope(L1), envelope(L2)
    gens = []
    for i in range(L1.dim):
        gens.append(tensor(e1.gen(i), e2.one()))
    for i in range(L2.dim):
        gens.append(tensor(e1.one(), e2.gen(i)))
    penv = envelope(product)
    cache: dict = {}

    def on_monomial(m: tuple) -> Tensor:
        hit = cache.get(m)
        if hit is None:
            hit = tensor_unit((e1, e2))
            for i in m:
                hit = hit * gens[i]
            cache[m] = hit
        return hit

    def apply(u: PbwElement) -> Tensor:
        out: dict = {}
        for m, c in u.terms.items():
            _accumulate(out, on_monomial(m).terms, c)
        return Tensor((e1, e2), out)

    apply.on_monomial = on_monomial
    apply.source = penv
    return apply


def multiplicativity_witness(L1: LieAlgebra, L2: LieAlgebra, d: int) -> MultiplicativityWitness:
    if d < 1:
        raise ValueError("degree bound must be at least 1")
    f = product_to_tensor(L1, L2)
    window = f.source.window(d)
    images = {m: f.on_monomial(m) for m in window}
    in_window = all(len(a) + len(b) <= d for t in images.values() for (a, b) in t.terms)
    target_dim = sum(1 for k in range(d + 1) for a in envelope(L1).window(k)
                     if len(a) == k for b in envelope(L2).window(d - k))
    r = rank([t.terms for t in images.values()])
    return MultiplicativityWitness(len(window), target_dim, r, in_window, images)


def window_dimension(L: LieAlgebra, d: int) -> int:
    return len(envelope(L).window(d))


def elements_of(env: Envelope, vectors: Iterable, window: Sequence) -> list:
    return [PbwElement(env, {m: Fraction(c) for m, c in zip(window, v) if c}) for v in vectors]
