from fractions import Fraction as F

from envelope.linalg import (
    Subspace,
    format_fraction,
    inverse,
    mat_mul,
    nullspace_sparse,
    rank,
    rref_sparse,
    solve,
)


def test_rref_is_reduced():
    rows, pivots = rref_sparse([{0: 2, 1: 4}, {0: 1, 2: 1}])
    assert pivots == [0, 1]
    assert rows[0] == {0: 1, 2: 1}
    assert rows[1] == {1: 1, 2: F(-1, 2)}


def test_rank_and_nullspace():
    rows = [{0: 1, 1: 2, 2: 3}, {0: 2, 1: 4, 2: 6}, {1: 1}]
    assert rank(rows) == 2
    null = nullspace_sparse(rows, 3)
    assert len(null) == 1
    (v,) = null
    for r in rows:
        assert sum(c * v[k] for k, c in r.items()) == 0


def test_solve_consistent_and_inconsistent():
    cols = [(1, 0, 1), (0, 1, 1)]
    assert solve(cols, (2, 3, 5)) == (2, 3)
    assert solve(cols, (1, 1, 0)) is None


def test_subspace_canonical_equality():
    a = Subspace([(1, 1, 0), (0, 1, 0)], 3)
    b = Subspace([(1, 0, 0), (3, 5, 0)], 3)
    assert a == b and hash(a) == hash(b)
    assert (1, 2, 0) in a and (0, 0, 1) not in a


def test_subspace_operations():
    a = Subspace([(1, 0, 0)], 3)
    b = Subspace([(0, 1, 0)], 3)
    assert (a + b).dim == 2
    assert a.intersection(b).dim == 0
    assert a.issubspace(a + b)
    assert Subspace.zero(3).issubspace(a)


def test_inverse_exact():
    m = ((2, 1), (1, 1))
    assert mat_mul(m, inverse(m)) == ((1, 0), (0, 1))


def test_format_fraction():
    assert format_fraction(F(3, 2)) == "3/2"
    assert format_fraction(F(-4)) == "-4"
