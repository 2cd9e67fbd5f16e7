from fractions import Fraction as F

import pytest

from envelope.abelian import (
    A2Element,
    ExpPolyFunction as E,
    ExpRational,
    a2_algebra,
    a2_idempotents,
    a2_is_unit,
    a2_matrix,
    a2_morphism_census,
    a2_mul,
    antipode_fn,
    convolution_failures,
    counit_fn,
    fn_eval,
    fn_tensor,
    gamma,
    is_grouplike_fn,
    is_primitive_fn,
    nu_embed,
    q_map,
    q_tensor,
    radical_by_enumeration,
    radical_commutative,
)
from envelope.algebras import diagonal_algebra, full_matrix_algebra, truncated_polynomial_algebra
from envelope.corpus import abelian, heisenberg
from envelope.errors import DimensionMismatch, NotAbelian, NotCommutative
from envelope.linalg import Subspace
from envelope.pbw import coproduct, envelope


def w(d, i):
    return E.coordinate(d, i)


def test_nu_embed():
    assert nu_embed((1, 0)) == w(2, 0)
    assert nu_embed((0, 0)) == E.constant(2, 0)
    assert nu_embed((2, 1)) == 2 * nu_embed((1, 0)) + nu_embed((0, 1))


def test_pointwise_algebra():
    assert w(1, 0) * w(1, 0) == E(1, {(0,): {(2,): 1}})
    assert E.exp_linear(1, (1,)) * E.exp_linear(1, (1,)) == E.exp_linear(1, (2,))
    assert fn_eval(w(1, 0) ** 2, (2,)) == ExpRational({0: 4})
    assert fn_eval(E.exp_linear(1, (1,)) * 3, (2,)) == ExpRational({2: 3})
    with pytest.raises(DimensionMismatch):
        w(1, 0) + w(2, 0)


def test_canonical_form_matches_sampling():
    import random
    rng = random.Random(2)
    f = (w(2, 0) + 1) * (w(2, 1) - 1) * E.exp_linear(2, (1, -1))
    g = (w(2, 0) * w(2, 1) - w(2, 0) + w(2, 1) - 1) * E.exp_linear(2, (1, -1))
    assert f == g
    for _ in range(20):
        p = (F(rng.randint(-9, 9), rng.randint(1, 5)), F(rng.randint(-9, 9), rng.randint(1, 5)))
        assert fn_eval(f, p) == fn_eval(g, p)


def test_gamma_examples():
    d = 1
    x1, x2 = (E.coordinate(2, i) for i in range(2))
    assert gamma(w(d, 0)) == x1 + x2
    assert gamma(E.constant(d, 5)) == E.constant(2, 5)
    assert gamma(w(d, 0) ** 2) == (x1 + x2) ** 2


def test_primitive_examples():
    assert is_primitive_fn(3 * w(2, 0) - w(2, 1))
    assert not is_primitive_fn(w(2, 0) ** 2)
    assert not is_primitive_fn(E.exp_linear(2, (1, 0)))


def test_grouplike_examples():
    assert is_grouplike_fn(E.exp_linear(2, (2, 0)))
    assert is_grouplike_fn(E.constant(2, 1))
    assert not is_grouplike_fn(1 + w(2, 0))
    assert not is_grouplike_fn(E.exp_linear(1, (1,)) * 2)


def test_grouplike_and_primitive_closure():
    g1, g2 = E.exp_linear(2, (1, 2)), E.exp_linear(2, (F(-1, 2), 3))
    assert is_grouplike_fn(g1 * g2) and is_grouplike_fn(antipode_fn(g1))
    assert g1 * antipode_fn(g1) == 1
    assert is_primitive_fn(nu_embed((1, 2)) + nu_embed((3, -1)))


def test_antipode_and_counit():
    f = (w(2, 0) ** 2 + 3) * E.exp_linear(2, (1, -1)) + w(2, 1)
    assert antipode_fn(antipode_fn(f)) == f
    assert counit_fn(f) == 3
    assert not convolution_failures(f)


def test_q_map_examples(k1):
    env = envelope(k1)
    x = env.gen(0)
    assert q_map(x * x) == E(1, {(0,): {(2,): 1}})
    assert q_map(env.one()) == E.constant(1, 1)
    assert gamma(q_map(x)) == q_tensor(coproduct(k1, x))
    assert q_map(x, exponent=(2,)) == w(1, 0) * E.exp_linear(1, (2,))
    with pytest.raises(NotAbelian):
        q_map(envelope(heisenberg()).gen(0))


def test_q_map_morphism_small():
    L = abelian(2)
    env = envelope(L)
    a, b = env.gens()
    u, v = a * a + 3 * b, a * b - 1
    assert q_map(u * v) == q_map(u) * q_map(v)
    assert gamma(q_map(u * v)) == q_tensor(coproduct(L, u * v))
    one = E.constant(2, 1)
    assert gamma(q_map(a)) == fn_tensor(q_map(a), one) + fn_tensor(one, q_map(a))


def test_radicals():
    assert radical_commutative(diagonal_algebra(3)).dim == 0
    assert radical_commutative(a2_algebra()) == Subspace([(1, 0)], 2)
    assert radical_commutative(truncated_polynomial_algebra(2)) == Subspace([(0, 1)], 2)
    for A in (diagonal_algebra(2), a2_algebra(), truncated_polynomial_algebra(3)):
        assert radical_by_enumeration(A) == radical_commutative(A)
    with pytest.raises(NotCommutative):
        radical_commutative(full_matrix_algebra(2))


def test_a2_examples():
    assert a2_mul((3, 5), (0, 1)) == (3, 5)
    assert a2_mul((1, 0), (1, 0)) == (0, 0)
    assert a2_mul((1, 2), (3, 4)) == (10, 8)
    assert a2_matrix((1, 2)) == ((2, 1), (0, 2))
    assert a2_is_unit((5, 1)) and not a2_is_unit((5, 0))
    assert a2_idempotents() == [(0, 0), (0, 1)]
    for e in a2_idempotents():
        assert a2_mul(e, e) == e
    assert A2Element(1, 2) * A2Element(3, 4) == A2Element(10, 8)
    assert A2Element(1, 0) ** 2 == 0 * A2Element(0, 1)


def test_a2_census():
    (only,) = a2_morphism_census(1)
    assert only((F(7),)) == (0, 7)
    maps = a2_morphism_census(3)
    assert len(maps) == 3
    for F_ in maps:
        assert F_.kernel().dim == 2 and F_.preimage_in_kernel()
    for n in range(1, 9):
        assert len(a2_morphism_census(n)) == n


def test_json_and_text():
    f = w(1, 0) ** 2
    assert f.format() == "w1^2"
    assert f.to_json()["text"] == "w1^2"
    assert repr(ExpRational({0: 3, 2: -1})) == "3 - e^(2)"
