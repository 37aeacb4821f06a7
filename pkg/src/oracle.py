"""Truncated polynomial expansion of quasisymmetric functions.

Every basis element is expanded from its defining series by direct enumeration
of index tuples in x_1..x_N, so it checks the symbolic conversions independently.
Monomials are stored sparsely as sorted ((var, exp), ...) tuples.
"""

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import sympy

from combinatorics import Composition, descent_set, peak_set_of_composition
from errors import DomainError, TruncationError
from qsym import Basis, QSymElement


def make_monomial(indices, exponents):
    counts = Counter()
    for var, exp in zip(indices, exponents):
        counts[var] += exp
    return tuple(sorted((var, exp) for var, exp in counts.items() if exp))


def monomial_degree(monomial):
    return sum(exp for _, exp in monomial)


@dataclass(frozen=True, eq=False)
class TruncatedPoly:
    nvars: int
    degree: int
    terms: dict = field(default_factory=dict)
    truncated: bool = False

    def __post_init__(self):
        clean = {}
        for monomial, coeff in self.terms.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            for var, exp in monomial:
                if not 1 <= var <= self.nvars or exp < 1:
                    raise DomainError(f"monomial {monomial} outside {self.nvars} variables")
            if monomial_degree(monomial) > self.degree:
                raise DomainError(f"monomial {monomial} exceeds degree bound {self.degree}")
            clean[monomial] = coeff
        object.__setattr__(self, "terms", clean)

    __hash__ = None

    def __eq__(self, other):
        if not isinstance(other, TruncatedPoly):
            return NotImplemented
        # a truncated result never certifies an identity
        return (self.nvars, self.degree, self.terms, self.truncated) == (
            other.nvars, other.degree, other.terms, other.truncated
        )

    def coefficient(self, monomial):
        return self.terms.get(tuple(monomial), Fraction(0))

    def items(self):
        """Terms in graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda kv: _graded_lex(kv[0], self.nvars))

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        return poly_add(self, other)

    def __sub__(self, other):
        return poly_sub(self, other)

    def __mul__(self, other):
        if isinstance(other, TruncatedPoly):
            return poly_mul(self, other)
        return poly_scale(self, other)

    __rmul__ = __mul__


def _graded_lex(monomial, nvars):
    dense = dict(monomial)
    return (monomial_degree(monomial), tuple(-dense.get(v, 0) for v in range(1, nvars + 1)))


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------

def poly_add(p, q, degree=None):
    bound = min(p.degree, q.degree) if degree is None else degree
    terms = defaultdict(Fraction)
    truncated = p.truncated or q.truncated
    for poly in (p, q):
        for monomial, coeff in poly.terms.items():
            if monomial_degree(monomial) > bound:
                truncated = True
                continue
            terms[monomial] += coeff
    return TruncatedPoly(max(p.nvars, q.nvars), bound, terms, truncated)


def poly_scale(p, c):
    c = Fraction(c)
    return TruncatedPoly(p.nvars, p.degree, {m: v * c for m, v in p.terms.items()}, p.truncated)


def poly_sub(p, q, degree=None):
    return poly_add(p, poly_scale(q, -1), degree)


def _merge(m1, m2):
    counts = Counter(dict(m1))
    counts.update(dict(m2))
    return tuple(sorted(counts.items()))


def poly_mul(p, q, degree=None):
    """Exact product; monomials above the bound are dropped and flagged."""
    bound = min(p.degree, q.degree) if degree is None else degree
    terms = defaultdict(Fraction)
    truncated = p.truncated or q.truncated
    for m1, c1 in p.terms.items():
        d1 = monomial_degree(m1)
        for m2, c2 in q.terms.items():
            if d1 + monomial_degree(m2) > bound:
                truncated = True
                continue
            terms[_merge(m1, m2)] += c1 * c2
    return TruncatedPoly(max(p.nvars, q.nvars), bound, terms, truncated)


def shift_variables(p, offset, nvars):
    """Rename x_i to x_{i+offset} inside a ring of ``nvars`` variables."""
    terms = {tuple((var + offset, exp) for var, exp in m): c for m, c in p.terms.items()}
    return TruncatedPoly(nvars, p.degree, terms, p.truncated)


# ---------------------------------------------------------------------------
# Expansion of basis elements
# ---------------------------------------------------------------------------

def _expand_M(comp, nvars):
    for indices in combinations(range(1, nvars + 1), comp.length):
        yield make_monomial(indices, comp), 1


def _expand_L(comp, nvars):
    n = comp.size
    descents = tuple(descent_set(comp))
    for indices in combinations_with_replacement(range(1, nvars + 1), n):
        if all(indices[j - 1] < indices[j] for j in descents):
            yield make_monomial(indices, [1] * n), 1


def _expand_K(comp, nvars):
    n = comp.size
    peaks = tuple(peak_set_of_composition(comp))
    for indices in combinations_with_replacement(range(1, nvars + 1), n):
        if all(indices[j - 2] < indices[j] for j in peaks):
            yield make_monomial(indices, [1] * n), 2 ** len(set(indices))


def _expand_eta(comp, nvars):
    for indices in combinations_with_replacement(range(1, nvars + 1), comp.length):
        yield make_monomial(indices, comp), 2 ** len(set(indices))


def _expand_eta_by_letters(comp, nvars):
    """One index per unit of weight; indices stay equal across every non-descent."""
    n = comp.size
    descents = set(descent_set(comp))
    for indices in combinations_with_replacement(range(1, nvars + 1), n):
        if all(indices[j - 1] == indices[j] for j in range(1, n) if j not in descents):
            yield make_monomial(indices, [1] * n), 2 ** len(set(indices))


_EXPANDERS = {
    Basis.M: _expand_M,
    Basis.L: _expand_L,
    Basis.K: _expand_K,
    Basis.ETA: _expand_eta,
}


def expand(a, nvars, degree):
    """Expand ``a`` in x_1..x_nvars; refuses a bound that would cut off terms."""
    if nvars < 0:
        raise DomainError(f"variable count must be nonnegative, got {nvars}")
    if degree < a.degree:
        raise TruncationError(f"degree bound {degree} is below the element degree {a.degree}")
    expander = _EXPANDERS[a.basis]
    terms = defaultdict(Fraction)
    for comp, coeff in a.items():
        for monomial, c in expander(comp, nvars):
            terms[monomial] += coeff * c
    return TruncatedPoly(nvars, degree, terms)


def expand_eta_by_letters(alpha, nvars, degree=None):
    """Expand eta_alpha from its letter-by-letter series, independently of ``expand``."""
    alpha = Composition(alpha)
    degree = alpha.size if degree is None else degree
    if degree < alpha.size:
        raise TruncationError(f"degree bound {degree} is below the element degree {alpha.size}")
    terms = defaultdict(Fraction)
    for monomial, c in _expand_eta_by_letters(alpha, nvars):
        terms[monomial] += c
    return TruncatedPoly(nvars, degree, terms)


def alphabet_split_eval(a, nvars_left, nvars_right, degree):
    """Evaluate ``a`` on the ordered alphabet x_1..x_{N1}, y_1..y_{N2}.

    The y block is numbered N1+1..N1+N2.
    """
    return expand(a, nvars_left + nvars_right, degree)


def expand_tensor(tensor, nvars_left, nvars_right, degree):
    """Sum of expand(left)(x) * expand(right)(y) over the terms of a tensor."""
    nvars = nvars_left + nvars_right
    result = TruncatedPoly(nvars, degree)
    left_basis, right_basis = tensor.bases
    for (a, b), coeff in tensor.items():
        left = expand(QSymElement.monomial(left_basis, a), nvars_left, degree)
        right = expand(QSymElement.monomial(right_basis, b), nvars_right, degree)
        piece = poly_mul(left, shift_variables(right, nvars_left, nvars), degree)
        result = poly_add(result, poly_scale(piece, coeff), degree)
    return result


def certify_equal(a, b, nvars=None):
    """Compare two elements through their expansions in d = max degree variables.

    Quasisymmetric functions of degree <= d agree iff they agree in d variables.
    """
    degree = max(a.degree, b.degree)
    nvars = degree if nvars is None else nvars
    left, right = expand(a, nvars, degree), expand(b, nvars, degree)
    return not (left.truncated or right.truncated) and left == right


def is_quasisymmetric(p):
    """True iff each coefficient depends only on the exponent composition."""
    by_composition = defaultdict(dict)
    for monomial, coeff in p.terms.items():
        indices = tuple(var for var, _ in monomial)
        exponents = tuple(exp for _, exp in monomial)
        by_composition[exponents][indices] = coeff

    for exponents, found in by_composition.items():
        expected = list(combinations(range(1, p.nvars + 1), len(exponents)))
        if len(found) != len(expected):
            return False
        if len(set(found.values())) > 1:
            return False
    return True


def to_sympy(p):
    symbols = sympy.symbols(f"x1:{p.nvars + 1}") if p.nvars else ()
    expr = sympy.Integer(0)
    for monomial, coeff in p.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for var, exp in monomial:
            term *= symbols[var - 1] ** exp
        expr += term
    return expr
