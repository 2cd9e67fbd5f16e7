"""Bundled test algebras.

The free-nilpotent algebras are built by expanding right-normed brackets of
the generators inside the free associative algebra and keeping a greedy
independent subset in each degree; structure constants come from re-expanding
commutators in that basis.
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources

from . import ncpoly
from .lie import LieAlgebra, make_lie, parse_lie
from .linalg import solve


def heisenberg() -> LieAlgebra:
    return make_lie("x y z".split(), {("x", "y"): {"z": 1}}, weights=(1, 1, 2))


def sl2() -> LieAlgebra:
    return make_lie(
        "e f h".split(),
        {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}},
    )


def solvable2() -> LieAlgebra:
    """The non-abelian 2-dimensional algebra ``[a, b] = b``."""
    return make_lie(["a", "b"], {("a", "b"): {"b": 1}})


def abelian(n: int) -> LieAlgebra:
    names = ["x"] if n == 1 else [f"x{i}" for i in range(1, n + 1)]
    return make_lie(names, {}, weights=(1,) * n)


def _coords(poly: dict, basis_polys: list, words: list):
    cols = [tuple(b.get(w, Fraction(0)) for w in words) for b in basis_polys]
    target = tuple(poly.get(w, Fraction(0)) for w in words)
    return solve(cols, target)


def free_nilpotent(nilpotency_class: int, generators=("x", "y")) -> LieAlgebra:
    """Free nilpotent Lie algebra of the given class; weight of an element = its degree."""
    gens = list(generators)
    basis = [(g, ncpoly.letter(i), 1) for i, g in enumerate(gens)]
    by_degree = {1: list(basis)}
    for k in range(2, nilpotency_class + 1):
        chosen = []
        for gi, g in enumerate(gens):
            for name, poly, _ in by_degree[k - 1]:
                cand = ncpoly.commutator(ncpoly.letter(gi), poly)
                if not cand:
                    continue
                if chosen:
                    words = sorted({w for _, p, _ in chosen for w in p} | set(cand))
                    if _coords(cand, [p for _, p, _ in chosen], words) is not None:
                        continue
                chosen.append((g + name, cand, k))
        by_degree[k] = chosen
        basis.extend(chosen)
    names = [b[0] for b in basis]
    brackets = {}
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            d = basis[a][2] + basis[b][2]
            if d > nilpotency_class:
                continue
            comm = ncpoly.commutator(basis[a][1], basis[b][1])
            if not comm:
                continue
            level = [(i, p) for i, (_, p, deg) in enumerate(basis) if deg == d]
            words = sorted({w for _, p in level for w in p} | set(comm))
            x = _coords(comm, [p for _, p in level], words)
            if x is None:  # pragma: no cover - the degree-d basis spans
                raise AssertionError("commutator outside the degree span")
            brackets[(a, b)] = {level[t][0]: c for t, c in enumerate(x) if c}
    return LieAlgebra(tuple(names), brackets, tuple(b[2] for b in basis))


def free_nilpotent_generator_polys(nilpotency_class: int, generators=("x", "y")) -> dict:
    """Name -> free-associative expansion for every basis element of ``free_nilpotent``."""
    gens = list(generators)
    out = {g: ncpoly.letter(i) for i, g in enumerate(gens)}
    L = free_nilpotent(nilpotency_class, generators)
    for name in L.names:
        if name in out:
            continue
        # right-normed: first letter bracketed with the rest
        head, tail = name[0], name[1:]
        out[name] = ncpoly.commutator(out[head], out[tail])
    return out


def load_bundled(name: str) -> LieAlgebra:
    """Parse one of the ``.lie`` files shipped in ``envelope/data``."""
    text = resources.files("envelope.data").joinpath(name).read_text(encoding="utf-8")
    return parse_lie(text, extra_keywords=("stage",))


def bundled() -> dict:
    """Fresh instances of every corpus algebra, keyed by a short name."""
    return {
        "abelian1": abelian(1),
        "abelian2": abelian(2),
        "abelian3": abelian(3),
        "heisenberg": heisenberg(),
        "sl2": sl2(),
        "solvable2": solvable2(),
        "freenil2": free_nilpotent(2),
        "freenil3": free_nilpotent(3),
        "freenil4": free_nilpotent(4),
    }
