"""Reference computations that share no code path with :mod:`envelope.pbw`.

``free_algebra_normal_form`` reduces a word in the free associative algebra
modulo the two-sided ideal generated by ``b_j b_i - b_i b_j - [b_j, b_i]``
(``j > i``), using a generic deg-lex reducer that always rewrites the largest
reducible word at its rightmost occurrence.

``bch_free`` computes ``log(exp X exp Y)`` in the degree-truncated free
associative algebra and reads off coordinates in the right-normed basis of
the free nilpotent Lie algebra.
"""

from __future__ import annotations

from fractions import Fraction

from . import ncpoly
from .corpus import free_nilpotent_generator_polys
from .linalg import solve


def _deglex(word: tuple):
    return (len(word), word)


def pbw_relations(L) -> list:
    """``(leading word, relation polynomial)`` for every ordered generator pair."""
    rules = []
    n = L.dim
    raw = L.brackets
    for i in range(n):
        for j in range(i + 1, n):
            # [b_j, b_i] = -[b_i, b_j]
            rel = {(j, i): Fraction(1), (i, j): Fraction(-1)}
            for k, c in raw.get((i, j), {}).items():
                rel = ncpoly.add(rel, {(k,): Fraction(c)})
            rules.append(((j, i), rel))
    return rules


def _find(word: tuple, lead: tuple) -> int:
    """Rightmost occurrence of ``lead`` in ``word`` or -1."""
    k = len(lead)
    for p in range(len(word) - k, -1, -1):
        if word[p:p + k] == lead:
            return p
    return -1


def reduce_polynomial(poly: dict, rules: list) -> dict:
    p = dict(poly)
    while True:
        target = None
        for w in sorted(p, key=_deglex, reverse=True):
            for lead, rel in rules:
                pos = _find(w, lead)
                if pos >= 0:
                    target = (w, pos, lead, rel)
                    break
            if target:
                break
        if target is None:
            return p
        w, pos, lead, rel = target
        c = p[w]
        left, right = w[:pos], w[pos + len(lead):]
        shifted = {left + u + right: v for u, v in rel.items()}
        p = ncpoly.add(p, shifted, -c)


def free_algebra_normal_form(L, word) -> dict:
    """Normal form of a generator word as ``{sorted word: Fraction}``."""
    return reduce_polynomial({tuple(word): Fraction(1)}, pbw_relations(L))


def bch_free(nilpotency_class: int, generators=("x", "y")) -> dict:
    """Coordinates of ``log(exp x exp y)`` in the basis of ``free_nilpotent``."""
    polys = free_nilpotent_generator_polys(nilpotency_class, generators)
    x, y = ncpoly.letter(0), ncpoly.letter(1)
    z = ncpoly.log_series(
        ncpoly.mul(ncpoly.exp_series(x, nilpotency_class), ncpoly.exp_series(y, nilpotency_class),
                   nilpotency_class),
        nilpotency_class,
    )
    names = list(polys)
    out = {}
    for deg in range(1, nilpotency_class + 1):
        part = {w: c for w, c in z.items() if len(w) == deg}
        level = [n for n in names if len(next(iter(polys[n]))) == deg]
        words = sorted({w for n in level for w in polys[n]} | set(part))
        cols = [tuple(polys[n].get(w, Fraction(0)) for w in words) for n in level]
        coords = solve(cols, tuple(part.get(w, Fraction(0)) for w in words))
        if coords is None:
            raise AssertionError(f"degree-{deg} part of the series is not a Lie element")
        out.update({n: c for n, c in zip(level, coords) if c})
    return out
