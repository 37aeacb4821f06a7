import pytest
import sympy

from errors import DomainError, TruncationError
from oracle import (
    TruncatedPoly,
    alphabet_split_eval,
    certify_equal,
    expand,
    expand_eta_by_letters,
    expand_tensor,
    is_quasisymmetric,
    make_monomial,
    poly_add,
    poly_mul,
    to_sympy,
)
from qsym import Basis, QSymElement, coproduct, eta_to_M

x = make_monomial


def mono(basis, comp, coeff=1):
    return QSymElement.monomial(basis, comp, coeff)


def test_M_and_L_in_three_variables():
    assert expand(mono(Basis.M, (2, 1)), 3, 3) == TruncatedPoly(
        3, 3, {x((1, 2), (2, 1)): 1, x((1, 3), (2, 1)): 1, x((2, 3), (2, 1)): 1}
    )
    assert expand(mono(Basis.L, (2, 1)), 3, 3) == TruncatedPoly(3, 3, {
        x((1, 2), (2, 1)): 1, x((1, 3), (2, 1)): 1, x((2, 3), (2, 1)): 1, x((1, 2, 3), (1, 1, 1)): 1,
    })


def test_eta_and_K_carry_powers_of_two():
    # eta_(1) = 2 M_(1); K_(1) = eta_(1)
    assert expand(mono(Basis.ETA, (1,)), 2, 1) == TruncatedPoly(2, 1, {x((1,), (1,)): 2, x((2,), (1,)): 2})
    assert expand(mono(Basis.K, (1,)), 2, 1) == expand(mono(Basis.ETA, (1,)), 2, 1)
    p = expand(mono(Basis.ETA, (1, 1)), 2, 2)
    assert p.coefficient(x((1,), (2,))) == 2
    assert p.coefficient(x((1, 2), (1, 1))) == 4


def test_constant_term():
    assert expand(QSymElement.one(Basis.M), 0, 0) == TruncatedPoly(0, 0, {(): 1})
    assert expand(mono(Basis.M, (1,)), 0, 1).is_zero()


def test_expand_refuses_a_low_bound():
    with pytest.raises(TruncationError):
        expand(mono(Basis.M, (2, 1)), 3, 2)


def test_monomials_are_validated():
    with pytest.raises(DomainError):
        TruncatedPoly(2, 3, {x((3,), (1,)): 1})
    with pytest.raises(DomainError):
        TruncatedPoly(2, 1, {x((1,), (2,)): 1})


def test_multiplication_truncates_and_flags():
    p = TruncatedPoly(2, 2, {x((1,), (1,)): 1, x((2,), (1,)): 1})
    square = poly_mul(p, p)
    assert not square.truncated
    assert square.coefficient(x((1, 2), (1, 1))) == 2
    cut = poly_mul(p, p, 1)
    assert cut.truncated and cut.is_zero()
    assert cut != TruncatedPoly(2, 1)
    assert poly_add(p, p) == 2 * p


def test_certify_equal_across_bases():
    assert certify_equal(mono(Basis.ETA, (1, 3, 1)), eta_to_M((1, 3, 1)))
    assert not certify_equal(mono(Basis.ETA, (2,)), mono(Basis.M, (2,)))


@pytest.mark.parametrize("basis, comp", [(Basis.M, (1, 2)), (Basis.L, (2, 1)), (Basis.ETA, (1, 1, 1)), (Basis.K, (3,))])
def test_alphabet_split_matches_coproduct(basis, comp):
    element = mono(basis, comp)
    assert alphabet_split_eval(element, 2, 2, 3) == expand_tensor(coproduct(element), 2, 2, 3)


def test_quasisymmetry_test():
    assert is_quasisymmetric(expand(mono(Basis.L, (1, 2)), 4, 3))
    assert not is_quasisymmetric(TruncatedPoly(2, 1, {x((1,), (1,)): 1}))
    assert not is_quasisymmetric(TruncatedPoly(2, 2, {x((1,), (2,)): 1, x((2,), (2,)): 3}))


def test_sympy_rendering():
    x1, x2 = sympy.symbols("x1 x2")
    assert to_sympy(expand(mono(Basis.M, (1,)), 2, 1)) == x1 + x2


@pytest.mark.parametrize("comp", [(), (1,), (2,), (1, 1), (1, 3, 1), (2, 1, 2), (1, 1, 1, 1)])
def test_eta_through_letters_matches_the_part_series(comp):
    n = sum(comp)
    assert expand_eta_by_letters(comp, n) == expand(mono(Basis.ETA, comp), n, n)
    assert expand_eta_by_letters(comp, n + 1, n + 1) == expand(mono(Basis.ETA, comp), n + 1, n + 1)


def test_eta_through_letters_refuses_a_low_bound():
    with pytest.raises(TruncationError):
        expand_eta_by_letters((2, 1), 3, 2)
