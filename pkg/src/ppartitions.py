"""Labelled weighted posets and their Z-enriched P-partitions.

Z alphabets are finite here; generating functions come back as TruncatedPoly
values. Results are canonically ordered, independent of enumeration order.
"""

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import networkx as nx

from combinatorics import (
    Composition,
    Permutation,
    coshuffles,
    peak_set_of_permutation,
)
from errors import DomainError
from oracle import TruncatedPoly, make_monomial
from qsym import contract_expansion


@dataclass(frozen=True, order=True)
class SignedValue:
    """An element of P± ordered -1 < 1 < -2 < 2 < ..."""

    magnitude: int
    positive: bool = True

    def __post_init__(self):
        if not isinstance(self.magnitude, int) or self.magnitude < 1:
            raise DomainError(f"signed values need a positive magnitude, got {self.magnitude}")

    @classmethod
    def parse(cls, text):
        text = text.strip()
        try:
            value = int(text)
        except ValueError:
            raise DomainError(f"cannot read signed value {text!r}") from None
        if value == 0:
            raise DomainError("0 is not a signed value")
        return cls(abs(value), value > 0)

    def __str__(self):
        return f"{'+' if self.positive else '-'}{self.magnitude}"


@dataclass(frozen=True)
class ZAlphabet:
    values: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(sorted(set(self.values))))

    @classmethod
    def positive(cls, nvars):
        return cls(tuple(SignedValue(i, True) for i in range(1, nvars + 1)))

    @classmethod
    def signed(cls, nvars):
        return cls(
            tuple(SignedValue(i, sign) for i in range(1, nvars + 1) for sign in (False, True))
        )

    @classmethod
    def parse(cls, spec, nvars=None):
        """'P' and 'Ppm' need nvars; anything else is a list like '-1,+1,-2'."""
        spec = spec.strip()
        if spec in ("P", "Ppm"):
            if nvars is None:
                raise DomainError(f"alphabet {spec} needs a variable count")
            return cls.positive(nvars) if spec == "P" else cls.signed(nvars)
        return cls(tuple(SignedValue.parse(v) for v in spec.split(",") if v.strip()))

    @property
    def max_magnitude(self):
        return max((v.magnitude for v in self.values), default=0)

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __str__(self):
        return ",".join(str(v) for v in self.values)


class LabelledWeightedPoset:
    """A strict partial order on [n] with a positive weight per vertex."""

    def __init__(self, n, relations=(), weights=None):
        graph = nx.DiGraph()
        graph.add_nodes_from(range(1, n + 1))
        for i, j in relations:
            if not (1 <= i <= n and 1 <= j <= n):
                raise DomainError(f"relation {i} < {j} uses a label outside [1, {n}]")
            graph.add_edge(i, j)
        if not nx.is_directed_acyclic_graph(graph):
            raise DomainError("relations contain a cycle, not a partial order")

        weights = tuple(weights) if weights is not None else (1,) * n
        if len(weights) != n:
            raise DomainError(f"expected {n} weights, got {len(weights)}")
        if any(not isinstance(w, int) or w < 1 for w in weights):
            raise DomainError(f"weights must be positive integers, got {weights}")

        self.n = n
        self.weights = weights
        self._closure = nx.transitive_closure_dag(graph)
        self.relations = frozenset(self._closure.edges())

    def less(self, i, j):
        return (i, j) in self.relations

    def comparable(self, i, j):
        return self.less(i, j) or self.less(j, i)

    def weight(self, label):
        return self.weights[label - 1]

    def linear_extension(self):
        """Smallest-label-first topological order."""
        return list(nx.lexicographical_topological_sort(self._closure))

    def covers(self):
        return sorted(nx.transitive_reduction(self._closure).edges())

    def incomparable_pairs(self):
        return [
            (i, j)
            for i, j in combinations(range(1, self.n + 1), 2)
            if not self.comparable(i, j)
        ]

    def is_chain(self):
        return not self.incomparable_pairs()

    def with_relation(self, i, j):
        return LabelledWeightedPoset(self.n, self.relations | {(i, j)}, self.weights)

    def to_dict(self):
        return {"n": self.n, "covers": [list(c) for c in self.covers()], "weights": list(self.weights)}

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(
                int(data["n"]),
                [tuple(pair) for pair in data.get("covers", [])],
                data.get("weights"),
            )
        except (KeyError, TypeError) as e:
            raise DomainError(f"malformed poset description: {e}") from e

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as f:
            return cls.from_dict(json.load(f))

    def __eq__(self, other):
        if not isinstance(other, LabelledWeightedPoset):
            return NotImplemented
        return (self.n, self.relations, self.weights) == (other.n, other.relations, other.weights)

    def __hash__(self):
        return hash((self.n, self.relations, self.weights))

    def __repr__(self):
        return f"LabelledWeightedPoset(n={self.n}, covers={self.covers()}, weights={self.weights})"


def _allowed(i, j, fi, fj):
    """Enriched condition on a relation i <_P j."""
    if fi < fj:
        return True
    if fi == fj:
        return fj.positive if i < j else not fj.positive
    return False


def is_enriched_partition(poset, f):
    values = _as_values(poset, f)
    return all(_allowed(i, j, values[i - 1], values[j - 1]) for i, j in poset.relations)


def _as_values(poset, f):
    if isinstance(f, dict):
        try:
            values = tuple(f[label] for label in range(1, poset.n + 1))
        except KeyError as e:
            raise DomainError(f"assignment is missing label {e}") from None
    else:
        values = tuple(f)
    if len(values) != poset.n:
        raise DomainError(f"assignment needs {poset.n} values, got {len(values)}")
    return values


@dataclass(frozen=True)
class EnrichedAssignment:
    """Values f(1), ..., f(n) of an enriched P-partition."""

    poset: LabelledWeightedPoset
    values: tuple

    def __post_init__(self):
        if not is_enriched_partition(self.poset, self.values):
            raise DomainError(f"{[str(v) for v in self.values]} is not an enriched P-partition")

    def __getitem__(self, label):
        return self.values[label - 1]


def _search(poset, alphabet, allowed):
    """Backtrack along a linear extension, checking each relation once both ends are set."""
    order = poset.linear_extension()
    position = {label: k for k, label in enumerate(order)}
    checks = [[] for _ in order]
    for i, j in poset.relations:
        checks[max(position[i], position[j])].append((i, j))

    found = []
    values = {}

    def extend(k):
        if k == len(order):
            found.append(tuple(values[label] for label in range(1, poset.n + 1)))
            return
        label = order[k]
        for z in alphabet:
            values[label] = z
            if all(allowed(i, j, values[i], values[j]) for i, j in checks[k]):
                extend(k + 1)
        values.pop(label, None)

    extend(0)
    return sorted(found)


def enumerate_assignments(poset, alphabet):
    return [EnrichedAssignment(poset, values) for values in _search(poset, alphabet, _allowed)]


def _p_allowed(i, j, fi, fj):
    return fi < fj or (fi == fj and i < j)


def is_p_partition(poset, f):
    """Classical P-partition: f(i) <= f(j) for i <_P j, strictly when i > j."""
    values = _as_values(poset, f)
    return all(_p_allowed(i, j, values[i - 1], values[j - 1]) for i, j in poset.relations)


def enumerate_p_partitions(poset, nvars):
    return _search(poset, range(1, nvars + 1), _p_allowed)


@lru_cache(maxsize=4096)
def gamma(poset, alphabet, nvars=None):
    """Generating function: sum over L_Z(P) of prod x_{|f(i)|}^{weight(i)}."""
    nvars = alphabet.max_magnitude if nvars is None else nvars
    if alphabet.max_magnitude > nvars:
        raise DomainError(f"alphabet uses x_{alphabet.max_magnitude} but only {nvars} variables exist")
    terms = {}
    for values in _search(poset, alphabet, _allowed):
        monomial = make_monomial([v.magnitude for v in values], poset.weights)
        terms[monomial] = terms.get(monomial, 0) + 1
    return TruncatedPoly(nvars, sum(poset.weights), terms)


def chain_poset(pi):
    pi = Permutation(pi)
    return LabelledWeightedPoset(len(pi), zip(pi, pi[1:]))


def weighted_chain(pi, alpha):
    pi, alpha = Permutation(pi), Composition(alpha)
    if len(alpha) != len(pi):
        raise DomainError(f"weighted chain needs ℓ(α) = {len(pi)}, got {len(alpha)}")
    weights = [0] * len(pi)
    for label, part in zip(pi, alpha):
        weights[label - 1] = part
    return LabelledWeightedPoset(len(pi), zip(pi, pi[1:]), weights)


def U(pi, alpha, alphabet, nvars=None):
    return gamma(weighted_chain(pi, alpha), alphabet, nvars)


def U_to_eta(pi, alpha):
    pi, alpha = Permutation(pi), Composition(alpha)
    if len(alpha) != len(pi):
        raise DomainError(f"U needs ℓ(α) = {len(pi)}, got {len(alpha)}")
    return contract_expansion(alpha, peak_set_of_permutation(pi))


def product_U(pi, alpha, sigma, beta):
    return [(pair.perm, pair.comp) for pair in coshuffles(pi, alpha, sigma, beta)]


def double_chain(pi, alpha, sigma, beta):
    """Disjoint union of the chains of (pi, alpha) and (n + sigma, beta)."""
    pi, sigma = Permutation(pi), Permutation(sigma)
    n = len(pi)
    left = weighted_chain(pi, alpha)
    right = weighted_chain(sigma, beta)
    relations = set(left.relations) | {(n + i, n + j) for i, j in right.relations}
    return LabelledWeightedPoset(n + len(sigma), relations, left.weights + right.weights)


def split_incomparable(poset, i, j):
    if i == j or poset.comparable(i, j):
        raise DomainError(f"labels {i} and {j} are comparable")
    return poset.with_relation(i, j), poset.with_relation(j, i)


def split_to_chains(poset):
    """Split on the first incomparable pair until only chains remain.

    Each chain comes back as (word, weights read along the chain).
    """
    pending = [poset]
    chains = []
    while pending:
        current = pending.pop()
        pairs = current.incomparable_pairs()
        if not pairs:
            order = current.linear_extension()
            chains.append(
                (Permutation(order), Composition(current.weight(label) for label in order))
            )
            continue
        first, second = split_incomparable(current, *pairs[0])
        pending += [second, first]
    return sorted(chains)
