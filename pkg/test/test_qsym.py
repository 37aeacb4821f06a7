from fractions import Fraction

import pytest

from combinatorics import compositions, contract_set, coshuffles, identity, odd_compositions
from errors import DomainError, NotInSpanError
from qsym import (
    Basis,
    K_of_permutation,
    K_to_eta,
    L_of_permutation,
    L_to_M,
    M_to_L,
    M_to_eta,
    QSymElement,
    TensorElement,
    antipode,
    basis_convert,
    contract_expansion,
    conversion_matrix,
    coproduct,
    coshuffle_peaks,
    eta_to_K,
    eta_to_L,
    eta_to_M,
    lemma_sign_sum,
    product,
    product_eta,
    tensor_map,
    tensor_multiply,
)


def M(terms):
    return QSymElement(Basis.M, terms)


def L(terms):
    return QSymElement(Basis.L, terms)


def eta(terms):
    return QSymElement(Basis.ETA, terms)


def test_eta_in_M_worked_example():
    assert eta_to_M((1, 3, 1)) == M({(5,): 2, (1, 4): 4, (4, 1): 4, (1, 3, 1): 8})


def test_small_conversions():
    assert eta_to_M((1, 1)) == M({(2,): 2, (1, 1): 4})
    assert M_to_eta((1, 1)) == eta({(1, 1): Fraction(1, 4), (2,): Fraction(-1, 4)})
    assert L_to_M((1, 2)) == M({(1, 2): 1, (1, 1, 1): 1})
    assert M_to_L((1, 2)) == L({(1, 2): 1, (1, 1, 1): -1})
    assert eta_to_L((2,)) == L({(2,): 2, (1, 1): -2})
    assert eta_to_L(()) == L({(): 1})


def test_peak_function_in_eta():
    assert K_to_eta((3,)) == eta({(1, 1, 1): 1, (3,): -1})
    assert eta_to_K((3,)) == QSymElement(Basis.K, {(1, 1, 1): 1, (3,): -1})


def test_eta_to_K_rejects_even_parts():
    with pytest.raises(NotInSpanError) as info:
        eta_to_K((2,))
    assert info.value.residual == eta({(2,): 1})


def test_converting_outside_the_peak_algebra_reports_the_residual():
    with pytest.raises(NotInSpanError) as info:
        basis_convert(M({(2,): 1}), Basis.K)
    assert info.value.residual == eta({(2,): Fraction(1, 2)})


@pytest.mark.parametrize("n", range(0, 6))
@pytest.mark.parametrize("source, target", [("eta", "M"), ("L", "eta"), ("M", "L"), ("eta", "L")])
def test_conversions_round_trip(n, source, target):
    for alpha in compositions(n):
        element = QSymElement.monomial(source, alpha, 3)
        assert basis_convert(basis_convert(element, target), source) == element


@pytest.mark.parametrize("n", range(0, 8))
def test_K_round_trip(n):
    for alpha in odd_compositions(n):
        element = QSymElement.monomial(Basis.K, alpha)
        assert basis_convert(basis_convert(element, Basis.M), Basis.K) == element


def test_K_requires_odd_compositions():
    with pytest.raises(DomainError):
        QSymElement.monomial(Basis.K, (2, 1))


def test_element_arithmetic_and_canonical_order():
    a = M({(1,): 1, (2,): Fraction(1, 2)})
    assert (a + a) == M({(1,): 2, (2,): 1})
    assert (a - a).is_zero()
    assert 2 * a == a * 2
    assert [c for c, _ in (a + M({(1, 1): 1})).items()] == [(1,), (2,), (1, 1)]
    # mixed bases are converted into the left operand's basis
    assert M({(1,): 2}) + eta({(1,): 1}) == M({(1,): 4})
    assert a.degree == 2 and QSymElement.zero(Basis.M).degree == 0
    assert QSymElement.one(Basis.ETA).counit() == 1


def test_products_in_each_basis():
    assert product(M({(1,): 1}), M({(1,): 1})) == M({(1, 1): 2, (2,): 1})
    assert product(L({(1,): 1}), L({(1,): 1})) == L({(2,): 1, (1, 1): 1})
    assert product(eta({(1,): 1}), eta({(1,): 1})) == eta({(1, 1): 2})
    k = QSymElement.monomial(Basis.K, (1,))
    assert product(k, k).basis is Basis.ETA


def test_eta_products_of_worked_example():
    assert product_eta((1, 2), (2,)) == eta({(2, 1, 2): 1, (1, 2, 2): 2, (5,): -1})
    assert product_eta((1, 1), (2, 3)) == eta({
        (1, 1, 2, 3): 1, (1, 2, 1, 3): 1, (4, 3): -1, (2, 1, 1, 3): 1, (1, 2, 3, 1): 1,
        (1, 6): -1, (2, 1, 3, 1): 1, (2, 5): -1, (2, 3, 1, 1): 1, (6, 1): -1,
    })


@pytest.mark.parametrize("alpha, beta", [((1,), (2, 1)), ((2, 1), (1, 1)), ((3,), (1, 2)), ((), (2,))])
def test_eta_product_agrees_with_M_product(alpha, beta):
    via_M = product(eta_to_M(alpha), eta_to_M(beta))
    assert basis_convert(product_eta(alpha, beta), Basis.M) == via_M


def test_coproduct_deconcatenates():
    delta = coproduct(eta({(1, 2): 1}))
    assert delta == TensorElement(
        (Basis.ETA, Basis.ETA), {((), (1, 2)): 1, ((1,), (2,)): 1, ((1, 2), ()): 1}
    )
    assert coproduct(L({(2,): 1})) == TensorElement(
        (Basis.L, Basis.L), {((), (2,)): 1, ((1,), (1,)): 1, ((2,), ()): 1}
    )


def test_tensor_map_and_multiply():
    delta = coproduct(eta({(2,): 1}))
    to_M = lambda f: basis_convert(f, Basis.M)
    assert tensor_map(delta, to_M, to_M) == coproduct(M({(2,): 2}))
    assert tensor_multiply(delta) == eta({(2,): 2})


def test_antipodes():
    assert antipode(eta({(1, 2): 1})) == eta({(2, 1): 1})
    assert antipode(eta({(1,): 1})) == eta({(1,): -1})
    assert antipode(M({(1, 2): 1})) == M({(3,): 1, (2, 1): 1})
    assert antipode(L({(1, 2): 1})) == L({(1, 2): -1})
    assert antipode(L({(): 1})) == L({(): 1})
    k = QSymElement.monomial(Basis.K, (3,))
    assert antipode(k).basis is Basis.K
    assert antipode(antipode(k)) == k


@pytest.mark.parametrize("n", range(1, 5))
def test_hopf_axiom_on_eta(n):
    for alpha in compositions(n):
        convolved = tensor_multiply(tensor_map(coproduct(eta({alpha: 1})), antipode, lambda g: g))
        assert convolved.is_zero()


def test_permutation_elements():
    assert L_of_permutation((2, 1, 3)) == L({(1, 2): 1})
    assert K_of_permutation((1, 3, 2)) == QSymElement(Basis.K, {(3,): 1})


def test_contract_expansion():
    assert contract_expansion((1, 1, 1), (2,)) == eta({(1, 1, 1): 1, (3,): -1})
    assert contract_expansion((1, 2), ()) == eta({(1, 2): 1})


def test_peaks_of_a_coshuffle_and_their_contractions():
    pairs = coshuffles(identity(3), (2, 1, 2), identity(2), (1, 1))
    pair = next(p for p in pairs if p.perm == (1, 4, 2, 5, 3))
    assert pair.comp == (2, 1, 1, 1, 2) and pair.beta_positions == (2, 4)
    assert coshuffle_peaks(pair) == [2, 4]
    assert contract_set(pair.comp, {2}) == (4, 1, 2)
    assert contract_set(pair.comp, {4}) == (2, 1, 4)
    assert contract_set(pair.comp, {2, 4}) == (7,)
    # no peak when the last letter comes from beta
    last = next(p for p in pairs if p.perm == (1, 2, 3, 4, 5))
    assert coshuffle_peaks(last) == []


def test_lemma_sign_sum():
    assert lemma_sign_sum({1, 2}, {1, 2, 3}) == 4
    assert lemma_sign_sum({1, 4}, {1, 2}) == 0
    assert lemma_sign_sum(set(), set()) == 1


def test_conversion_matrix_is_triangular_with_powers_of_two():
    matrix = conversion_matrix(Basis.ETA, Basis.M, 3)
    assert matrix.shape == (4, 4)
    assert [matrix[i, i] for i in range(4)] == [2, 4, 4, 8]
    assert matrix[0, 3] == 2 and matrix[3, 0] == 0
