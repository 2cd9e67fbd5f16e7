from fractions import Fraction as F

import pytest

from envelope.algebras import from_matrices
from envelope.completion import (
    bch,
    build_truncation,
    check_thread,
    exp_trunc,
    factor_through_tower,
    inverse_trunc,
    is_grouplike_trunc,
    is_primitive_trunc,
    log_trunc,
    make_tower,
    matrix_exp,
    parse_tower,
    rep_quotient,
    thread_mul,
)
from envelope.corpus import abelian, free_nilpotent, heisenberg, sl2
from envelope.errors import (
    ChainNotDecreasing,
    CounitNotOne,
    ImagesNotALieMorphism,
    LieParseError,
    NoStageContained,
    NonzeroConstantTerm,
    NotAnIdeal,
    NotPrimitive,
    StageMismatch,
    WeightsNotAdditive,
)
from envelope.linalg import Subspace
from envelope.oracles import bch_free
from envelope.pbw import envelope


def test_truncation_bases():
    T = build_truncation(abelian(1), (1,), 3)
    assert T.basis == [(), (0,), (0, 0)]
    H = build_truncation(heisenberg(), (1, 1, 2), 3)
    assert H.dim == 7
    names = {H.env.format_monomial(m) for m in H.basis}
    assert names == {"1", "x", "y", "z", "x^2", "x*y", "y^2"}
    x = T.gen(0)
    assert x * (x * x) == T.zero()


def test_truncation_rejects_non_additive_weights():
    with pytest.raises(WeightsNotAdditive):
        build_truncation(heisenberg(), (1, 1, 1), 3)
    with pytest.raises(WeightsNotAdditive):
        build_truncation(sl2(), None, 3)


def test_truncation_associative():
    assert not build_truncation(heisenberg(), None, 4).associativity_failures()
    A = build_truncation(free_nilpotent(3), None, 4).to_algebra()
    assert not A.associativity_failures() and A.is_unital()


def test_exp_log_examples():
    T = build_truncation(abelian(1), None, 3)
    x = T.gen(0)
    assert exp_trunc(T, T.zero()) == T.one()
    assert exp_trunc(T, x) == 1 + x + x * x * F(1, 2)
    assert log_trunc(T, T.one()) == T.zero()
    assert log_trunc(T, 1 + x) == x - x * x * F(1, 2)
    assert log_trunc(T, exp_trunc(T, x)) == x
    H = build_truncation(heisenberg(), None, 4)
    hx = H.gen("x")
    assert exp_trunc(H, hx) * exp_trunc(H, -hx) == H.one()
    with pytest.raises(NonzeroConstantTerm):
        exp_trunc(T, 1 + x)
    with pytest.raises(CounitNotOne):
        log_trunc(T, x)


def test_bch_examples():
    T = build_truncation(abelian(2), None, 4)
    a, b = T.gen(0), T.gen(1)
    assert bch(T, a, b) == a + b
    H = build_truncation(heisenberg(), None, 4)
    x, y, z = (H.gen(n) for n in "xyz")
    assert bch(H, x, y) == x + y + z * F(1, 2)
    with pytest.raises(NotPrimitive):
        bch(H, x * x, y)


@pytest.mark.parametrize("cls", [3, 4])
def test_bch_matches_series_oracle(cls):
    L = free_nilpotent(cls)
    T = build_truncation(L, None, cls + 1)
    got = bch(T, T.gen("x"), T.gen("y"))
    assert got.terms == {(L.index(n),): c for n, c in bch_free(cls).items()}
    assert is_primitive_trunc(T, got)


def test_grouplike_predicates():
    H = build_truncation(heisenberg(), None, 4)
    x = H.gen("x")
    assert is_grouplike_trunc(H, H.one())
    assert is_grouplike_trunc(H, exp_trunc(H, x))
    assert not is_grouplike_trunc(H, 1 + x)
    g = exp_trunc(H, x) * exp_trunc(H, H.gen("y"))
    assert is_grouplike_trunc(H, g) and is_grouplike_trunc(H, inverse_trunc(H, g))


STD = [((0, 1, 0), (0, 0, 0), (0, 0, 0)), ((0, 0, 0), (0, 0, 1), (0, 0, 0)),
       ((0, 0, 1), (0, 0, 0), (0, 0, 0))]
Z3 = ((0,) * 3,) * 3


def test_rep_quotient_examples():
    A = rep_quotient(heisenberg(), STD)
    assert A.dim == 4 and not A.closure_failures()
    assert not A.quotient_map(3).multiplicativity_failures()
    assert rep_quotient(heisenberg(), [Z3] * 3).dim == 1
    ad = [((0, 0, -2), (0, 0, 0), (0, 1, 0)),  # ad e on (e, f, h): [e,f]=h, [e,h]=-2e
          ((0, 0, 0), (0, 0, 2), (-1, 0, 0)),  # ad f: [f,e]=-h, [f,h]=2f
          ((2, 0, 0), (0, -2, 0), (0, 0, 0))]  # ad h
    assert rep_quotient(sl2(), ad).dim == 9
    with pytest.raises(ImagesNotALieMorphism):
        rep_quotient(heisenberg(), [STD[0], STD[1], Z3])


def test_matrix_exp():
    A = rep_quotient(heisenberg(), STD)
    zero = matrix_exp(A, A.zero())
    assert zero.exact and A.to_matrix(zero.coordinates) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    r = matrix_exp(A, A.coordinates(STD[0]))
    assert r.exact and A.to_matrix(r.coordinates) == ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    D = from_matrices([((1, 0), (0, 1)), ((1, 0), (0, 2))], ["1", "d"])
    r = matrix_exp(D, (0, 1))
    import math
    m = [[sum(c * float(b[i][j]) for c, b in zip(r.coordinates, D.matrices)) for j in range(2)]
         for i in range(2)]
    assert not r.exact
    assert abs(m[0][0] - math.e) < 1e-12 and abs(m[1][1] - math.e ** 2) < 1e-12
    assert abs(m[0][1]) < 1e-12 and abs(m[1][0]) < 1e-12


def _heis_tower():
    return make_tower(heisenberg(), [Subspace([(0, 0, 1)], 3), Subspace.zero(3)])


def test_tower_examples():
    tower = _heis_tower()
    assert len(tower) == 2 and len(tower.bonding) == 1
    assert not tower.verify(3)
    const = make_tower(heisenberg(), [Subspace([(0, 0, 1)], 3)] * 2)
    assert const.bonding[0].lie_map.matrix == ((1, 0), (0, 1))
    single = make_tower(heisenberg(), [Subspace([(0, 0, 1)], 3)])
    assert single.bonding == []
    with pytest.raises(ChainNotDecreasing):
        make_tower(heisenberg(), [Subspace.zero(3), Subspace([(0, 0, 1)], 3)])
    with pytest.raises(NotAnIdeal):
        make_tower(sl2(), [Subspace([(1, 0, 0)], 3)])


def test_threads():
    tower = _heis_tower()
    top, bottom = (s.projection.target for s in tower.stages)
    xy = bottom.gen(0) * bottom.gen(1)
    xy_bar = top.gen(0) * top.gen(1)
    assert check_thread(tower.thread([xy_bar, xy]))
    assert not check_thread(tower.thread([xy_bar + 1, xy]))
    units = tower.thread([top.one() * 2, bottom.one() * 2])
    assert check_thread(thread_mul(units, units))
    with pytest.raises(StageMismatch):
        check_thread(tower.thread([xy]))
    with pytest.raises(StageMismatch):
        check_thread(tower.thread([xy, xy_bar]))


def test_factor_through_tower():
    tower = _heis_tower()
    abelianized = [((1, 0), (0, 2)), ((3, 0), (0, -1)), ((0, 0), (0, 0))]
    f = factor_through_tower(tower, abelianized, 3)
    assert f.stage == 0 and f.agrees
    assert factor_through_tower(tower, [Z3] * 3, 3).stage == 0
    assert factor_through_tower(tower, STD, 3).stage == 1
    short = make_tower(heisenberg(), [Subspace([(0, 0, 1)], 3)])
    with pytest.raises(NoStageContained):
        factor_through_tower(short, STD, 2)


def test_parse_tower_file():
    text = "basis x y z\nbracket x y = z\nstage c = span(z)\nstage v = span((0, 0, 0))\n"
    tower = parse_tower(text)
    assert tower.names == ["c", "v"]
    assert [s.ideal.dim for s in tower.stages] == [1, 0]
    with pytest.raises(LieParseError):
        parse_tower("basis x y z\nbracket x y = z\nstage c = z\n")
    with pytest.raises(LieParseError):
        parse_tower("basis x y z\nbracket x y = z\nstage c = span((1, 0))\n")


def test_tower_projection_is_thread():
    tower = _heis_tower()
    env = envelope(tower.base)
    x, y, z = env.gens()
    assert check_thread(tower.project(y * x * x + z))
