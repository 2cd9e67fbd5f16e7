from fractions import Fraction

from hypothesis import given, settings, strategies as st

from envelope.abelian import ExpPolyFunction, a2_matrix, a2_mul, antipode_fn, fn_eval, gamma
from envelope.completion import build_truncation, exp_trunc, log_trunc
from envelope.corpus import heisenberg, sl2
from envelope.linalg import mat_mul
from envelope.oracles import free_algebra_normal_form
from envelope.pbw import antipode, coproduct, straighten

SL2 = sl2()
HEIS = heisenberg()
T5 = build_truncation(HEIS, None, 5)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
words = st.lists(st.integers(0, 2), max_size=6)


@settings(max_examples=60, deadline=None)
@given(words)
def test_straighten_matches_oracle(w):
    assert straighten(SL2, w).terms == free_algebra_normal_form(SL2, w)


@settings(max_examples=30, deadline=None)
@given(words.filter(lambda w: len(w) <= 3), words.filter(lambda w: len(w) <= 3))
def test_coproduct_and_antipode_are_morphisms(a, b):
    u, v = straighten(HEIS, a), straighten(HEIS, b)
    assert coproduct(HEIS, u * v) == coproduct(HEIS, u) * coproduct(HEIS, v)
    assert antipode(HEIS, u * v) == antipode(HEIS, v) * antipode(HEIS, u)


@settings(max_examples=25, deadline=None)
@given(st.dictionaries(st.sampled_from([m for m in T5.basis if m]), small, max_size=4))
def test_exp_log_inverse(terms):
    a = T5.element(terms)
    assert log_trunc(T5, exp_trunc(T5, a)) == a


pairs = st.tuples(small, small)


@given(pairs, pairs)
def test_a2_matrix_multiplicative(p, q):
    assert a2_matrix(a2_mul(p, q)) == mat_mul(a2_matrix(p), a2_matrix(q))


@settings(max_examples=40)
@given(st.lists(small, min_size=2, max_size=2), st.integers(0, 3), small, pairs)
def test_function_ops_pointwise(lin, k, c, point):
    f = ExpPolyFunction.exp_linear(2, tuple(lin)) * ExpPolyFunction.coordinate(2, 0) ** k + c
    assert fn_eval(antipode_fn(f), point) == fn_eval(f, tuple(-x for x in point))
    g = gamma(f)
    other = (Fraction(1, 3), Fraction(-2))
    total = tuple(a + b for a, b in zip(point, other))
    assert fn_eval(g, point + other) == fn_eval(f, total)
