"""Noncommutative polynomials over Q: dicts mapping words (tuples of ints) to Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping


def clean(p: Mapping) -> dict:
    return {w: Fraction(c) for w, c in p.items() if c}


def add(p: Mapping, q: Mapping, scale=1) -> dict:
    out = dict(p)
    scale = Fraction(scale)
    for w, c in q.items():
        v = out.get(w, 0) + scale * c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


def scale(c, p: Mapping) -> dict:
    c = Fraction(c)
    return {w: c * v for w, v in p.items()} if c else {}


def mul(p: Mapping, q: Mapping, max_degree: int | None = None) -> dict:
    out: dict = {}
    for u, a in p.items():
        for v, b in q.items():
            if max_degree is not None and len(u) + len(v) > max_degree:
                continue
            w = u + v
            c = out.get(w, 0) + a * b
            if c:
                out[w] = c
            else:
                out.pop(w, None)
    return out


def commutator(p: Mapping, q: Mapping) -> dict:
    return add(mul(p, q), mul(q, p), -1)


def letter(i: int) -> dict:
    return {(i,): Fraction(1)}


def one() -> dict:
    return {(): Fraction(1)}


def power(p: Mapping, k: int, max_degree: int | None = None) -> dict:
    out = one()
    for _ in range(k):
        out = mul(out, p, max_degree)
    return out


def truncate(p: Mapping, max_degree: int) -> dict:
    return {w: c for w, c in p.items() if len(w) <= max_degree}


def exp_series(p: Mapping, max_degree: int) -> dict:
    """``sum p^k / k!`` truncated; ``p`` must have no constant term."""
    assert () not in p
    out = one()
    term = one()
    for k in range(1, max_degree + 1):
        term = scale(Fraction(1, k), mul(term, p, max_degree))
        out = add(out, term)
    return out


def log_series(p: Mapping, max_degree: int) -> dict:
    """``log(p)`` truncated; ``p`` must have constant term 1."""
    assert p.get((), 0) == 1
    x = add(p, one(), -1)
    out: dict = {}
    term = one()
    for k in range(1, max_degree + 1):
        term = mul(term, x, max_degree)
        out = add(out, term, Fraction((-1) ** (k + 1), k))
    return out
