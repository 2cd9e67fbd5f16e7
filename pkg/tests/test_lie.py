import warnings
from fractions import Fraction as F

import pytest

from envelope.corpus import abelian, free_nilpotent, heisenberg, sl2
from envelope.errors import (
    DependentModuloIdeal,
    DuplicateBasisName,
    LieParseError,
    NotAnIdeal,
    UnknownSymbol,
)
from envelope.lie import (
    adapted_basis,
    bracket,
    check_jacobi,
    derived_ideal,
    direct_product,
    ideal_closure,
    is_ideal,
    make_lie,
    parse_lie,
    quotient,
    span,
)
from envelope.linalg import Subspace


def test_parse_heisenberg():
    L = parse_lie("basis x y z\nbracket x y = z\n")
    assert L.names == ("x", "y", "z")
    assert bracket(L, (1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    assert bracket(L, (0, 1, 0), (1, 0, 0)) == (0, 0, -1)


def test_parse_abelian_without_brackets():
    L = parse_lie("basis a b")
    assert L.dim == 2 and L.is_abelian


def test_parse_rational_coefficients_and_comments():
    L = parse_lie("# comment\nbasis a b c\nbracket a b = 3/2*c - a  # trailing\n")
    assert bracket(L, (1, 0, 0), (0, 1, 0)) == (F(-1), 0, F(3, 2))


def test_parse_unknown_symbol_has_line_number():
    with pytest.raises(UnknownSymbol) as exc:
        parse_lie("basis x y z\nbracket x w = z\n")
    assert exc.value.line == 2
    assert "line 2" in str(exc.value)


def test_parse_unknown_symbol_in_rhs():
    with pytest.raises(UnknownSymbol):
        parse_lie("basis x y\nbracket x y = q\n")


def test_parse_duplicate_basis_name():
    with pytest.raises(DuplicateBasisName):
        parse_lie("basis x y x")


@pytest.mark.parametrize("text", [
    "bracket x y = z",
    "basis x y\nbracket x y = 1/0*x",
    "basis x y\nbracket x y",
    "basis x y\nbasis z",
    "basis x y\nweight x = 0\nweight y = 1",
    "basis x y\nfoo x",
])
def test_parse_errors(text):
    with pytest.raises(LieParseError):
        parse_lie(text)


def test_roundtrip_text():
    for L in (heisenberg(), sl2(), free_nilpotent(3)):
        L2 = parse_lie(L.to_lie_text())
        assert L2.names == L.names and L2.brackets == L.brackets and L2.weights == L.weights


def test_jacobi_corpus():
    for L in (heisenberg(), sl2(), free_nilpotent(4), abelian(3)):
        assert check_jacobi(L).ok


def test_jacobi_detects_perturbed_sl2():
    bad = make_lie("e f h".split(), {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2},
                                     ("e", "f"): {"h": 1, "e": 1}})
    assert not check_jacobi(bad).ok


def test_bracket_bilinear_and_alternating(heis):
    assert bracket(heis, (2, 1, 0), (0, 1, 0)) == (0, 0, 2)
    v = (F(1, 3), 2, -1)
    assert bracket(heis, v, v) == (0, 0, 0)


def test_direct_product():
    L = direct_product(heisenberg(), abelian(2))
    assert L.dim == 5 and check_jacobi(L).ok
    assert bracket(L, (1, 0, 0, 0, 0), (0, 0, 0, 1, 0)) == (0,) * 5
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        with pytest.raises(UserWarning):
            direct_product(heisenberg(), heisenberg())
    assert check_jacobi(direct_product(sl2(), heisenberg())).ok


def test_ideals(heis, sl):
    assert is_ideal(heis, Subspace([(0, 0, 1)], 3))
    assert not is_ideal(sl, Subspace([(1, 0, 0)], 3))
    assert is_ideal(sl, Subspace.full(3))
    assert ideal_closure(sl, Subspace([(1, 0, 0)], 3)).dim == 3
    assert derived_ideal(heis) == Subspace([(0, 0, 1)], 3)


def test_quotients(heis):
    Q, p = quotient(heis, Subspace([(0, 0, 1)], 3))
    assert Q.dim == 2 and Q.is_abelian
    assert p.apply((1, 2, 3)) == (1, 2)
    Z, _ = quotient(heis, Subspace.full(3))
    assert Z.dim == 0
    same, ident = quotient(heis, Subspace.zero(3))
    assert same.dim == 3 and ident.matrix == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    with pytest.raises(NotAnIdeal):
        quotient(sl2(), Subspace([(1, 0, 0)], 3))


def test_projection_is_lie_morphism(heis):
    Q, p = quotient(heis, Subspace([(0, 0, 1)], 3))
    assert p.is_lie_morphism()


def test_adapted_basis_examples(heis):
    J = Subspace([(0, 0, 1)], 3)
    ab = adapted_basis(heis, J, [(1, 0, 0)])
    assert ab.F == ((1, 0, 0),)
    assert ab.F_prime == ((0, 1, 0),)
    assert ab.F_double_prime == ((0, 0, 1),)
    full = adapted_basis(heis, Subspace.zero(3))
    assert len(full.F_prime) == 3 and not full.F_double_prime
    everything = adapted_basis(heis, Subspace.full(3))
    assert not everything.F and not everything.F_prime and len(everything.F_double_prime) == 3
    with pytest.raises(DependentModuloIdeal):
        adapted_basis(heis, J, [(0, 0, 1)])


def test_adapted_basis_invariants(sl):
    L = free_nilpotent(3)
    J = derived_ideal(L)
    ab = adapted_basis(L, J)
    assert Subspace(ab.vectors, L.dim).dim == L.dim
    assert Subspace(ab.F_double_prime, L.dim) == J
    assert Subspace(ab.F + ab.F_prime, L.dim).intersection(J).dim == 0


def test_span_helper(heis):
    assert span(heis, [(0, 0, 2)]) == Subspace([(0, 0, 1)], 3)
