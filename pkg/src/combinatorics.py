"""Compositions, permutations, descent and peak statistics, shuffles and contractions.

Everything here is immutable and pure. Positions and labels are 1-based, as in
one-line notation.
"""

from dataclasses import dataclass
from itertools import accumulate, chain, combinations
from itertools import permutations as _permutations

from errors import DomainError


class Composition(tuple):
    """A finite sequence of positive integers."""

    def __new__(cls, parts=()):
        if isinstance(parts, Composition):
            return parts
        parts = tuple(parts)
        for part in parts:
            if not isinstance(part, int) or isinstance(part, bool) or part < 1:
                raise DomainError(f"composition parts must be positive integers, got {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self):
        return sum(self)

    @property
    def length(self):
        return len(self)

    def is_odd(self):
        return all(part % 2 == 1 for part in self)

    def __repr__(self):
        return f"Composition({tuple(self)})"


class Permutation(tuple):
    """A permutation of [n] in one-line notation."""

    def __new__(cls, word=()):
        if isinstance(word, Permutation):
            return word
        word = tuple(word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise DomainError(f"{word} is not a rearrangement of 1..{len(word)}")
        return super().__new__(cls, word)

    def __repr__(self):
        return f"Permutation({tuple(self)})"


@dataclass(frozen=True)
class SubsetOfInterval:
    """A subset of [n-1], stored as a strictly increasing tuple."""

    n: int
    elements: tuple = ()

    def __post_init__(self):
        elements = tuple(sorted(set(self.elements)))
        if self.n < 0:
            raise DomainError(f"ambient degree must be nonnegative, got {self.n}")
        for e in elements:
            if not 1 <= e <= self.n - 1:
                raise DomainError(f"element {e} outside [1, {self.n - 1}]")
        object.__setattr__(self, "elements", elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, item):
        return item in self.elements

    def issubset(self, other):
        return set(self.elements) <= set(other)

    def complement(self):
        return SubsetOfInterval(self.n, tuple(i for i in range(1, self.n) if i not in self.elements))

    @property
    def is_peak_lacunar(self):
        return is_peak_lacunar(self.elements)


@dataclass(frozen=True)
class CoshufflePair:
    perm: Permutation
    comp: Composition
    beta_positions: tuple = ()

    def __post_init__(self):
        if len(self.perm) != len(self.comp):
            raise DomainError(
                f"coshuffle needs as many parts as letters: {self.perm} vs {self.comp}"
            )


def _elements(subset):
    if isinstance(subset, SubsetOfInterval):
        return subset.elements
    return tuple(sorted(set(subset)))


def is_peak_lacunar(subset):
    elements = _elements(subset)
    if 1 in elements:
        return False
    return all(b - a > 1 for a, b in zip(elements, elements[1:]))


def composition_key(alpha):
    """Canonical order: degree, then length, then parts lexicographically."""
    return (sum(alpha), len(alpha), tuple(alpha))


def subsets(elements):
    """All subsets of ``elements`` as sorted tuples, smallest first."""
    elements = tuple(sorted(elements))
    return chain.from_iterable(combinations(elements, k) for k in range(len(elements) + 1))


# ---------------------------------------------------------------------------
# Descents and peaks
# ---------------------------------------------------------------------------

def descent_set(alpha):
    alpha = Composition(alpha)
    return SubsetOfInterval(alpha.size, tuple(accumulate(alpha))[:-1])


def composition_of_subset(n, subset):
    elements = _elements(subset)
    for e in elements:
        if not 1 <= e <= n - 1:
            raise DomainError(f"element {e} outside [1, {n - 1}]")
    if n == 0:
        return Composition()
    cuts = (0,) + elements + (n,)
    return Composition(b - a for a, b in zip(cuts, cuts[1:]))


def hat(alpha):
    """Replace every odd part 2i+1 by i copies of 2 followed by a 1."""
    alpha = Composition(alpha)
    if not alpha.is_odd():
        raise DomainError(f"{tuple(alpha)} has an even part; peak sets need odd compositions")
    return tuple(chain.from_iterable([2] * (part // 2) + [1] for part in alpha))


def peak_set_of_composition(alpha):
    alpha = Composition(alpha)
    peaks = []
    position = 0
    for entry in hat(alpha):
        position += entry
        if entry == 2:
            peaks.append(position)
    return SubsetOfInterval(alpha.size, tuple(peaks))


def odd_composition_of_peak_set(n, subset):
    elements = _elements(subset)
    for e in elements:
        if not 1 <= e <= n - 1:
            raise DomainError(f"element {e} outside [1, {n - 1}]")
    if not is_peak_lacunar(elements):
        raise DomainError(f"{set(elements) or '{}'} is not peak-lacunar")

    hatted = []
    position = 0
    for peak in elements:
        hatted += [1] * (peak - 2 - position) + [2]
        position = peak
    hatted += [1] * (n - position)

    parts = []
    twos = 0
    for entry in hatted:
        if entry == 2:
            twos += 1
        else:
            parts.append(2 * twos + 1)
            twos = 0
    return Composition(parts)


def descent_set_of_permutation(pi):
    pi = Permutation(pi)
    return SubsetOfInterval(len(pi), tuple(i for i in range(1, len(pi)) if pi[i - 1] > pi[i]))


def peak_set_of_permutation(pi):
    pi = Permutation(pi)
    return SubsetOfInterval(
        len(pi),
        tuple(i for i in range(2, len(pi)) if pi[i - 2] < pi[i - 1] > pi[i]),
    )


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def compositions(n):
    """All compositions of n in canonical order."""
    result = [composition_of_subset(n, s) for s in subsets(range(1, n))]
    return sorted(result, key=composition_key)


def odd_compositions(n):
    return [alpha for alpha in compositions(n) if alpha.is_odd()]


def permutations(n):
    return [Permutation(word) for word in _permutations(range(1, n + 1))]


def identity(n):
    return Permutation(range(1, n + 1))


def reverse_identity(n):
    return Permutation(range(n, 0, -1))


# ---------------------------------------------------------------------------
# Shuffles
# ---------------------------------------------------------------------------

def _interleavings(n, m):
    """Yield, per interleaving pattern, the 1-based positions taken by the second word."""
    for first in combinations(range(1, n + m + 1), n):
        taken = set(first)
        yield tuple(i for i in range(1, n + m + 1) if i not in taken)


def _interleave(left, right, right_positions):
    right_positions = set(right_positions)
    left_iter, right_iter = iter(left), iter(right)
    return tuple(
        next(right_iter) if i in right_positions else next(left_iter)
        for i in range(1, len(left) + len(right) + 1)
    )


def shuffles(pi, sigma):
    pi, sigma = Permutation(pi), Permutation(sigma)
    n, m = len(pi), len(sigma)
    shifted = tuple(n + s for s in sigma)
    return [Permutation(_interleave(pi, shifted, pos)) for pos in _interleavings(n, m)]


def coshuffles(pi, alpha, sigma, beta):
    pi, sigma = Permutation(pi), Permutation(sigma)
    alpha, beta = Composition(alpha), Composition(beta)
    n, m = len(pi), len(sigma)
    if len(alpha) != n or len(beta) != m:
        raise DomainError(
            f"coshuffle needs ℓ(α) = {n} and ℓ(β) = {m}, got {len(alpha)} and {len(beta)}"
        )
    shifted = tuple(n + s for s in sigma)
    return [
        CoshufflePair(
            perm=Permutation(_interleave(pi, shifted, pos)),
            comp=Composition(_interleave(alpha, beta, pos)),
            beta_positions=pos,
        )
        for pos in _interleavings(n, m)
    ]


def quasi_shuffles(alpha, beta):
    """Index compositions of the overlapping shuffle of alpha and beta, with repetition."""
    alpha, beta = tuple(alpha), tuple(beta)
    if not alpha:
        return [Composition(beta)]
    if not beta:
        return [Composition(alpha)]
    head_a, head_b = alpha[0], beta[0]
    return (
        [Composition((head_a,) + rest) for rest in quasi_shuffles(alpha[1:], beta)]
        + [Composition((head_b,) + rest) for rest in quasi_shuffles(alpha, beta[1:])]
        + [Composition((head_a + head_b,) + rest) for rest in quasi_shuffles(alpha[1:], beta[1:])]
    )


# ---------------------------------------------------------------------------
# Contraction, reversal, complement
# ---------------------------------------------------------------------------

def contract(alpha, i):
    alpha = Composition(alpha)
    if not 2 <= i <= len(alpha) - 1:
        raise DomainError(f"contraction index {i} outside [2, {len(alpha) - 1}] for {tuple(alpha)}")
    return Composition(alpha[: i - 2] + (sum(alpha[i - 2 : i + 1]),) + alpha[i + 1 :])


def contract_set(alpha, indices):
    """Contract at every index of a peak-lacunar set, largest index first."""
    alpha = Composition(alpha)
    elements = _elements(indices)
    if not is_peak_lacunar(elements):
        raise DomainError(f"contraction set {set(elements)} is not peak-lacunar")
    for i in reversed(elements):
        alpha = contract(alpha, i)
    return alpha


def contraction_blocks(length, indices):
    """Positions 1..length grouped into the parts that contract_set merges."""
    elements = _elements(indices)
    if not is_peak_lacunar(elements):
        raise DomainError(f"contraction set {set(elements)} is not peak-lacunar")
    blocks = [(p,) for p in range(1, length + 1)]
    for i in reversed(elements):
        if not 2 <= i <= len(blocks) - 1:
            raise DomainError(f"contraction index {i} outside [2, {len(blocks) - 1}]")
        blocks[i - 2 : i + 1] = [blocks[i - 2] + blocks[i - 1] + blocks[i]]
    return blocks


def reverse(alpha):
    return Composition(tuple(reversed(Composition(alpha))))


def complement_omega(alpha):
    alpha = Composition(alpha)
    if alpha.size == 0:
        raise DomainError("the complement is only defined for nonempty compositions")
    return composition_of_subset(alpha.size, descent_set(reverse(alpha)).complement())
