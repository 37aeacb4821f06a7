import pytest

from combinatorics import (
    Composition,
    Permutation,
    SubsetOfInterval,
    complement_omega,
    composition_of_subset,
    compositions,
    contract,
    contract_set,
    contraction_blocks,
    coshuffles,
    descent_set,
    descent_set_of_permutation,
    hat,
    is_peak_lacunar,
    odd_composition_of_peak_set,
    odd_compositions,
    peak_set_of_composition,
    peak_set_of_permutation,
    quasi_shuffles,
    reverse,
    shuffles,
)
from errors import DomainError


def test_descent_and_peak_sets_of_worked_example():
    alpha = (1, 1, 3, 3, 1)
    assert descent_set(alpha).elements == (1, 2, 5, 8)
    assert hat(alpha) == (1, 1, 2, 1, 2, 1, 1)
    assert peak_set_of_composition(alpha).elements == (4, 7)
    assert odd_composition_of_peak_set(9, {4, 7}) == alpha


def test_composition_of_subset():
    assert composition_of_subset(5, {1, 4}) == (1, 3, 1)
    assert composition_of_subset(0, ()) == ()
    assert composition_of_subset(3, ()) == (3,)


@pytest.mark.parametrize("n", range(0, 8))
def test_descent_set_is_a_bijection(n):
    comps = compositions(n)
    assert len(comps) == (2 ** (n - 1) if n else 1)
    assert len({descent_set(alpha) for alpha in comps}) == len(comps)
    for alpha in comps:
        assert composition_of_subset(n, descent_set(alpha)) == alpha


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 1), (3, 2), (4, 3), (5, 5), (6, 8), (7, 13)])
def test_odd_compositions_are_counted_by_fibonacci(n, count):
    assert len(odd_compositions(n)) == count
    for alpha in odd_compositions(n):
        peaks = peak_set_of_composition(alpha)
        assert peaks.is_peak_lacunar
        assert odd_composition_of_peak_set(n, peaks) == alpha


def test_compositions_are_in_canonical_order():
    assert compositions(3) == [(3,), (1, 2), (2, 1), (1, 1, 1)]


@pytest.mark.parametrize(
    "subset, expected",
    [((), True), ((2,), True), ((2, 4), True), ((1,), False), ((2, 3), False), ((3, 5, 8), True)],
)
def test_is_peak_lacunar(subset, expected):
    assert is_peak_lacunar(subset) is expected


def test_bad_inputs_are_domain_errors():
    with pytest.raises(DomainError):
        Composition((2, 0, 1))
    with pytest.raises(DomainError):
        Permutation((1, 1, 2))
    with pytest.raises(DomainError):
        SubsetOfInterval(3, (3,))
    with pytest.raises(DomainError):
        hat((2, 1))
    with pytest.raises(DomainError):
        odd_composition_of_peak_set(5, {2, 3})
    with pytest.raises(DomainError):
        composition_of_subset(3, {0})


def test_permutation_statistics():
    assert descent_set_of_permutation((3, 1, 4, 2)).elements == (1, 3)
    assert peak_set_of_permutation((1, 3, 2, 5, 4)).elements == (2, 4)
    assert peak_set_of_permutation((3, 2, 1)).elements == ()


def test_contraction_examples():
    assert contract((2, 1, 4, 3, 2), 3) == (2, 8, 2)
    assert contract_set((2, 1, 4, 3, 2), {2, 4}) == (12,)
    assert contract_set((1, 2, 3), ()) == (1, 2, 3)


def test_contraction_errors():
    with pytest.raises(DomainError):
        contract((1, 2, 3), 1)
    with pytest.raises(DomainError):
        contract((1, 2, 3), 3)
    with pytest.raises(DomainError):
        contract_set((1, 1, 1, 1), {2, 3})


def test_shuffles_count_and_content():
    result = shuffles((2, 1), (1,))
    assert result == [(2, 1, 3), (2, 3, 1), (3, 2, 1)]
    assert len(shuffles((1, 2), (2, 1))) == 6
    assert shuffles((), (1,)) == [(1,)]


def test_coshuffles_carry_parts_along():
    pairs = coshuffles((1,), (2,), (1,), (3,))
    assert [(p.perm, p.comp) for p in pairs] == [((1, 2), (2, 3)), ((2, 1), (3, 2))]
    pairs = coshuffles((1,), (1,), (1,), (2,))
    assert [(p.perm, p.comp, p.beta_positions) for p in pairs] == [((1, 2), (1, 2), (2,)), ((2, 1), (2, 1), (1,))]
    pairs = coshuffles((1, 2), (2, 2), (1,), (1,))
    assert [p.beta_positions for p in pairs if p.perm == (1, 3, 2)] == [(2,)]
    assert [p.comp for p in pairs if p.perm == (1, 3, 2)] == [(2, 1, 2)]
    with pytest.raises(DomainError):
        coshuffles((1,), (1, 1), (1,), (1,))


def test_quasi_shuffles():
    assert sorted(quasi_shuffles((1,), (2,))) == [(1, 2), (2, 1), (3,)]
    assert len(quasi_shuffles((1, 1), (1,))) == 5


def test_reverse_and_complement():
    assert reverse((1, 2, 3)) == (3, 2, 1)
    # Des(rev (1,2)) = {2} inside [2], so the complement is {1}
    assert complement_omega((1, 2)) == (1, 2)
    assert complement_omega((3,)) == (1, 1, 1)
    assert complement_omega((1, 1, 1)) == (3,)
    with pytest.raises(DomainError):
        complement_omega(())


def test_contraction_blocks_follow_contract_set():
    assert contraction_blocks(5, {2, 4}) == [(1, 2, 3, 4, 5)]
    assert contraction_blocks(5, {2}) == [(1, 2, 3), (4,), (5,)]
    assert contraction_blocks(5, {4}) == [(1,), (2,), (3, 4, 5)]
    assert contraction_blocks(3, ()) == [(1,), (2,), (3,)]
    with pytest.raises(DomainError):
        contraction_blocks(4, {2, 3})
    with pytest.raises(DomainError):
        contraction_blocks(3, {3})


def test_descent_sets_compare_by_inclusion():
    assert descent_set((1, 2, 1)).issubset(descent_set((1, 1, 1, 1)))
    assert not descent_set((1, 3)).issubset({2, 3})
    assert SubsetOfInterval(4).issubset(())
