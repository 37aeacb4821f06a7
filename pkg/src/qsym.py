"""Sparse exact elements of QSym in the bases M, L, K and eta.

An element is a map from compositions to nonzero Fractions, tagged with its basis.
Every conversion is defined per basis element and extended linearly; the per-element
tables are memoized with ``functools.lru_cache`` (thread-safe, read-mostly).
"""

from collections import defaultdict
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from combinatorics import (
    Composition,
    complement_omega,
    composition_key,
    composition_of_subset,
    compositions,
    contract_set,
    coshuffles,
    descent_set,
    identity,
    odd_composition_of_peak_set,
    peak_set_of_composition,
    peak_set_of_permutation,
    descent_set_of_permutation,
    quasi_shuffles,
    reverse,
    subsets,
)
from errors import DomainError, NotInSpanError


class Basis(str, Enum):
    M = "M"
    L = "L"
    K = "K"
    ETA = "eta"

    def __str__(self):
        return self.value


def _sign(k):
    return -1 if k % 2 else 1


class QSymElement:
    """An immutable linear combination of basis elements."""

    __slots__ = ("basis", "_terms")

    def __init__(self, basis, terms=None):
        basis = Basis(basis)
        collected = defaultdict(Fraction)
        for comp, coeff in dict(terms or {}).items():
            collected[Composition(comp)] += Fraction(coeff)
        clean = {comp: c for comp, c in collected.items() if c != 0}
        if basis is Basis.K:
            for comp in clean:
                if not comp.is_odd():
                    raise DomainError(f"K is indexed by odd compositions, got {tuple(comp)}")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("QSymElement is immutable")

    @classmethod
    def monomial(cls, basis, comp, coeff=1):
        return cls(basis, {Composition(comp): coeff})

    @classmethod
    def zero(cls, basis):
        return cls(basis)

    @classmethod
    def one(cls, basis):
        return cls(basis, {Composition(): 1})

    # -- inspection -------------------------------------------------------

    def items(self):
        """Terms in canonical order (degree, length, parts)."""
        return sorted(self._terms.items(), key=lambda kv: composition_key(kv[0]))

    def coefficient(self, comp):
        return self._terms.get(Composition(comp), Fraction(0))

    @property
    def degree(self):
        return max((comp.size for comp in self._terms), default=0)

    def is_zero(self):
        return not self._terms

    def counit(self):
        return self.coefficient(())

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, QSymElement):
            return NotImplemented
        return self.basis is other.basis and self._terms == other._terms

    def __hash__(self):
        return hash((self.basis, frozenset(self._terms.items())))

    def __repr__(self):
        inner = ", ".join(f"{tuple(c)}: {v}" for c, v in self.items())
        return f"QSymElement({self.basis.value!r}, {{{inner}}})"

    # -- arithmetic -------------------------------------------------------

    def _same_basis(self, other):
        if other.basis is self.basis:
            return other
        return basis_convert(other, self.basis)

    def __add__(self, other):
        if not isinstance(other, QSymElement):
            return NotImplemented
        other = self._same_basis(other)
        terms = dict(self._terms)
        for comp, coeff in other._terms.items():
            terms[comp] = terms.get(comp, 0) + coeff
        return QSymElement(self.basis, terms)

    def __neg__(self):
        return QSymElement(self.basis, {c: -v for c, v in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, QSymElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QSymElement):
            return product(self, other)
        if isinstance(other, (int, Fraction)):
            return QSymElement(self.basis, {c: v * other for c, v in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented


class TensorElement:
    """An immutable element of QSym ⊗ QSym with a basis on each side."""

    __slots__ = ("bases", "_terms")

    def __init__(self, bases, terms=None):
        left, right = Basis(bases[0]), Basis(bases[1])
        collected = defaultdict(Fraction)
        for (a, b), coeff in dict(terms or {}).items():
            collected[(Composition(a), Composition(b))] += Fraction(coeff)
        object.__setattr__(self, "bases", (left, right))
        object.__setattr__(self, "_terms", {k: v for k, v in collected.items() if v != 0})

    def __setattr__(self, name, value):
        raise AttributeError("TensorElement is immutable")

    def items(self):
        return sorted(
            self._terms.items(),
            key=lambda kv: (composition_key(kv[0][0]), composition_key(kv[0][1])),
        )

    def coefficient(self, left, right):
        return self._terms.get((Composition(left), Composition(right)), Fraction(0))

    def is_zero(self):
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.bases == other.bases and self._terms == other._terms

    def __hash__(self):
        return hash((self.bases, frozenset(self._terms.items())))

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        other = tensor_convert(other, *self.bases)
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            terms[key] = terms.get(key, 0) + coeff
        return TensorElement(self.bases, terms)

    def __repr__(self):
        inner = ", ".join(f"({tuple(a)}, {tuple(b)}): {v}" for (a, b), v in self.items())
        return f"TensorElement(({self.bases[0].value!r}, {self.bases[1].value!r}), {{{inner}}})"


def _extend(element, target, table):
    """Apply a per-composition expansion table linearly."""
    terms = defaultdict(Fraction)
    for comp, coeff in element.items():
        for image, c in table(comp):
            terms[image] += coeff * c
    return QSymElement(target, terms)


# ---------------------------------------------------------------------------
# Per-composition conversion tables
# ---------------------------------------------------------------------------

def _supersets(n, subset):
    """All subsets of [n-1] containing ``subset``."""
    fixed = tuple(subset)
    free = [i for i in range(1, n) if i not in fixed]
    for extra in subsets(free):
        yield tuple(sorted(fixed + extra))


@lru_cache(maxsize=None)
def _eta_to_M(alpha):
    n = alpha.size
    result = []
    for s in subsets(descent_set(alpha)):
        beta = composition_of_subset(n, s)
        result.append((beta, Fraction(2 ** beta.length)))
    return tuple(result)


@lru_cache(maxsize=None)
def _M_to_eta(beta):
    n = beta.size
    scale = Fraction(1, 2 ** beta.length)
    result = []
    for s in subsets(descent_set(beta)):
        alpha = composition_of_subset(n, s)
        result.append((alpha, scale * _sign(beta.length - alpha.length)))
    return tuple(result)


@lru_cache(maxsize=None)
def _L_to_M(alpha):
    n = alpha.size
    return tuple(
        (composition_of_subset(n, s), Fraction(1))
        for s in _supersets(n, descent_set(alpha))
    )


@lru_cache(maxsize=None)
def _M_to_L(beta):
    n = beta.size
    result = []
    for s in _supersets(n, descent_set(beta)):
        gamma = composition_of_subset(n, s)
        result.append((gamma, Fraction(_sign(gamma.length - beta.length))))
    return tuple(result)


@lru_cache(maxsize=None)
def _eta_to_L(alpha):
    n = alpha.size
    if n == 0:
        return ((alpha, Fraction(1)),)
    des = set(descent_set(alpha))
    return tuple(
        (gamma, Fraction(2 * _sign(len(set(descent_set(gamma)) - des))))
        for gamma in compositions(n)
    )


def _peak_triangle(alpha):
    """Odd compositions with peak sets inside Peak(alpha), signed by (n - ℓ)/2."""
    n = alpha.size
    result = []
    for s in subsets(peak_set_of_composition(alpha)):
        beta = odd_composition_of_peak_set(n, s)
        result.append((beta, Fraction(_sign((n - beta.length) // 2))))
    return tuple(result)


@lru_cache(maxsize=None)
def _K_to_eta(alpha):
    return _peak_triangle(alpha)


@lru_cache(maxsize=None)
def _eta_to_K(alpha):
    # the signed peak triangle squares to the identity
    return _peak_triangle(alpha)


# ---------------------------------------------------------------------------
# Public conversions
# ---------------------------------------------------------------------------

def eta_to_M(alpha):
    return _extend(QSymElement.monomial(Basis.ETA, alpha), Basis.M, _eta_to_M)


def M_to_eta(beta):
    return _extend(QSymElement.monomial(Basis.M, beta), Basis.ETA, _M_to_eta)


def L_to_M(alpha):
    return _extend(QSymElement.monomial(Basis.L, alpha), Basis.M, _L_to_M)


def M_to_L(beta):
    return _extend(QSymElement.monomial(Basis.M, beta), Basis.L, _M_to_L)


def eta_to_L(alpha):
    return _extend(QSymElement.monomial(Basis.ETA, alpha), Basis.L, _eta_to_L)


def K_to_eta(alpha):
    return _extend(QSymElement.monomial(Basis.K, alpha), Basis.ETA, _K_to_eta)


def K_to_M(alpha):
    return basis_convert(K_to_eta(alpha), Basis.M)


def eta_to_K(alpha):
    alpha = Composition(alpha)
    if not alpha.is_odd():
        raise NotInSpanError(
            f"eta{list(alpha)} is not in the peak subalgebra",
            residual=QSymElement.monomial(Basis.ETA, alpha),
        )
    return _extend(QSymElement.monomial(Basis.ETA, alpha), Basis.K, _eta_to_K)


def L_of_permutation(pi):
    n = len(pi)
    return QSymElement.monomial(Basis.L, composition_of_subset(n, descent_set_of_permutation(pi)))


def K_of_permutation(pi):
    n = len(pi)
    return QSymElement.monomial(Basis.K, odd_composition_of_peak_set(n, peak_set_of_permutation(pi)))


def lemma_sign_sum(s, t):
    """Sum over I ⊆ S of (-1)^{|I \\ T|}, computed term by term."""
    t = set(t)
    return sum(_sign(len(set(i) - t)) for i in subsets(set(s)))


_DIRECT = {
    (Basis.ETA, Basis.M): _eta_to_M,
    (Basis.M, Basis.ETA): _M_to_eta,
    (Basis.L, Basis.M): _L_to_M,
    (Basis.M, Basis.L): _M_to_L,
    (Basis.ETA, Basis.L): _eta_to_L,
    (Basis.K, Basis.ETA): _K_to_eta,
}


def basis_convert(element, target):
    target = Basis(target)
    source = element.basis
    if source is target:
        return element
    if (source, target) in _DIRECT:
        return _extend(element, target, _DIRECT[(source, target)])

    if target is Basis.K:
        eta = basis_convert(element, Basis.ETA)
        residual = QSymElement(Basis.ETA, {c: v for c, v in eta.items() if not c.is_odd()})
        if not residual.is_zero():
            raise NotInSpanError("element is not in the span of K", residual=residual)
        return _extend(eta, Basis.K, _eta_to_K)

    if source is Basis.K:
        return basis_convert(_extend(element, Basis.ETA, _K_to_eta), target)
    # L <-> eta goes through M
    return basis_convert(basis_convert(element, Basis.M), target)


def conversion_matrix(source, target, n):
    """Matrix of basis_convert over Comp(n), columns indexed by the source basis.

    Rows and columns follow the canonical composition order; entries are Fractions
    in a numpy object array.
    """
    source, target = Basis(source), Basis(target)
    comps = compositions(n)
    index = {c: i for i, c in enumerate(comps)}
    matrix = np.full((len(comps), len(comps)), Fraction(0), dtype=object)
    for j, comp in enumerate(comps):
        image = basis_convert(QSymElement.monomial(source, comp), target)
        for c, v in image.items():
            matrix[index[c], j] = v
    return matrix


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _product_M(alpha, beta):
    terms = defaultdict(Fraction)
    for gamma in quasi_shuffles(alpha, beta):
        terms[gamma] += 1
    return tuple(terms.items())


def coshuffle_peaks(pair):
    """Peaks of a coshuffle of two identities."""
    from_beta = set(pair.beta_positions)
    last = len(pair.perm)
    # a letter of β followed by a letter of α, away from both ends
    return [i for i in pair.beta_positions if i + 1 not in from_beta and 1 < i < last]


@lru_cache(maxsize=None)
def _product_eta(alpha, beta):
    n, m = alpha.length, beta.length
    terms = defaultdict(Fraction)
    for pair in coshuffles(identity(n), alpha, identity(m), beta):
        for comp, coeff in contract_expansion(pair.comp, coshuffle_peaks(pair)).items():
            terms[comp] += coeff
    return tuple(terms.items())


def product_eta(alpha, beta):
    return QSymElement(Basis.ETA, dict(_product_eta(Composition(alpha), Composition(beta))))


def _bilinear(a, b, basis, table):
    terms = defaultdict(Fraction)
    for ca, va in a.items():
        for cb, vb in b.items():
            for gamma, c in table(ca, cb):
                terms[gamma] += va * vb * c
    return QSymElement(basis, terms)


def product(a, b):
    """Product of two elements, computed in a's basis (K products come back in eta)."""
    basis = a.basis
    if basis is Basis.K:
        basis = Basis.ETA
    a, b = basis_convert(a, basis), basis_convert(b, basis)
    if basis is Basis.M:
        return _bilinear(a, b, Basis.M, _product_M)
    if basis is Basis.ETA:
        return _bilinear(a, b, Basis.ETA, _product_eta)
    result = _bilinear(basis_convert(a, Basis.M), basis_convert(b, Basis.M), Basis.M, _product_M)
    return basis_convert(result, Basis.L)


# ---------------------------------------------------------------------------
# Coproducts
# ---------------------------------------------------------------------------

def _deconcatenate(element, basis):
    terms = defaultdict(Fraction)
    for comp, coeff in element.items():
        for k in range(comp.length + 1):
            terms[(comp[:k], comp[k:])] += coeff
    return TensorElement((basis, basis), terms)


def tensor_convert(tensor, left, right):
    left, right = Basis(left), Basis(right)
    if tensor.bases == (left, right):
        return tensor
    terms = defaultdict(Fraction)
    for (a, b), coeff in tensor.items():
        image_a = basis_convert(QSymElement.monomial(tensor.bases[0], a), left)
        image_b = basis_convert(QSymElement.monomial(tensor.bases[1], b), right)
        for ca, va in image_a.items():
            for cb, vb in image_b.items():
                terms[(ca, cb)] += coeff * va * vb
    return TensorElement((left, right), terms)


def coproduct(a):
    """Deconcatenation in M and eta; L goes through M, K through eta."""
    if a.basis in (Basis.M, Basis.ETA):
        return _deconcatenate(a, a.basis)
    if a.basis is Basis.L:
        return tensor_convert(_deconcatenate(basis_convert(a, Basis.M), Basis.M), Basis.L, Basis.L)
    return _deconcatenate(basis_convert(a, Basis.ETA), Basis.ETA)


def tensor_multiply(tensor):
    """The multiplication map QSym ⊗ QSym -> QSym."""
    result = QSymElement.zero(tensor.bases[0] if tensor.bases[0] is not Basis.K else Basis.ETA)
    for (a, b), coeff in tensor.items():
        left = QSymElement.monomial(tensor.bases[0], a, coeff)
        right = QSymElement.monomial(tensor.bases[1], b)
        result = result + product(left, right)
    return result


def tensor_map(tensor, left_fn, right_fn):
    """Apply linear maps on each side: (f ⊗ g)(tensor)."""
    result = None
    for (a, b), coeff in tensor.items():
        image_a = left_fn(QSymElement.monomial(tensor.bases[0], a))
        image_b = right_fn(QSymElement.monomial(tensor.bases[1], b))
        piece = TensorElement(
            (image_a.basis, image_b.basis),
            {(ca, cb): coeff * va * vb for ca, va in image_a.items() for cb, vb in image_b.items()},
        )
        result = piece if result is None else result + piece
    if result is None:
        result = TensorElement(tensor.bases)
    return result


# ---------------------------------------------------------------------------
# Antipodes
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _antipode_M(alpha):
    n = alpha.size
    sign = _sign(alpha.length)
    return tuple(
        (composition_of_subset(n, s), Fraction(sign))
        for s in subsets(descent_set(reverse(alpha)))
    )


def _antipode_eta(alpha):
    return ((reverse(alpha), Fraction(_sign(alpha.length))),)


def _antipode_L(alpha):
    if alpha.size == 0:
        return ((alpha, Fraction(1)),)
    return ((complement_omega(alpha), Fraction(_sign(alpha.size))),)


def antipode(a):
    if a.basis is Basis.M:
        return _extend(a, Basis.M, _antipode_M)
    if a.basis is Basis.ETA:
        return _extend(a, Basis.ETA, _antipode_eta)
    if a.basis is Basis.L:
        return _extend(a, Basis.L, _antipode_L)
    # the peak subalgebra is stable under S, so the image converts back into K
    image = _extend(basis_convert(a, Basis.ETA), Basis.ETA, _antipode_eta)
    return basis_convert(image, Basis.K)


def contract_expansion(gamma, indices):
    """Signed inclusion-exclusion over subsets of a peak-lacunar index set."""
    terms = defaultdict(Fraction)
    indices = tuple(indices)
    for k in range(len(indices) + 1):
        for chosen in combinations(indices, k):
            terms[contract_set(gamma, chosen)] += _sign(k)
    return QSymElement(Basis.ETA, terms)
