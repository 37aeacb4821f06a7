"""The bundled verification suite behind ``main.py verify``.

Each check sweeps a family of identities at desk scale and compares the symbolic
side against the truncated-polynomial oracle or against an independent route.
Sweep bounds are min(documented bound, max_degree).
"""

import json
import os
import random
from dataclasses import dataclass, field
from itertools import product as cartesian

import sympy
from tqdm import tqdm

from combinatorics import (
    Composition,
    complement_omega,
    composition_of_subset,
    compositions,
    contract,
    contract_set,
    contraction_blocks,
    coshuffles,
    descent_set,
    hat,
    identity,
    odd_composition_of_peak_set,
    odd_compositions,
    peak_set_of_composition,
    peak_set_of_permutation,
    permutations,
    reverse_identity,
    shuffles,
    subsets,
)
from errors import DomainError
from formatting import format_composition, format_element, format_permutation, format_subset
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
)
from ppartitions import (
    LabelledWeightedPoset,
    U,
    U_to_eta,
    ZAlphabet,
    chain_poset,
    double_chain,
    enumerate_assignments,
    enumerate_p_partitions,
    gamma,
    product_U,
    split_incomparable,
    split_to_chains,
)
from qsym import (
    Basis,
    K_of_permutation,
    K_to_M,
    L_of_permutation,
    M_to_eta,
    QSymElement,
    antipode,
    basis_convert,
    conversion_matrix,
    coproduct,
    coshuffle_peaks,
    eta_to_L,
    eta_to_M,
    lemma_sign_sum,
    product,
    product_eta,
    tensor_map,
    tensor_multiply,
)

MAX_FAILURES_KEPT = 10
UU_SAMPLES = 6


@dataclass
class CheckResult:
    name: str
    description: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def expect(self, condition, counterexample):
        self.cases += 1
        if not condition and len(self.failures) < MAX_FAILURES_KEPT:
            self.failures.append(counterexample() if callable(counterexample) else counterexample)


@dataclass
class SuiteContext:
    max_degree: int
    rng: random.Random
    split_samples: int = 50
    coproduct_samples: int = 20

    def bound(self, documented):
        return min(documented, self.max_degree)


def _mono(basis, comp, coeff=1):
    return QSymElement.monomial(basis, comp, coeff)


def random_composition(rng, n):
    return composition_of_subset(n, [i for i in range(1, n) if rng.random() < 0.5])


def random_element(rng, basis, max_degree, terms=3):
    element = QSymElement.zero(basis)
    for _ in range(terms):
        n = rng.randint(0, max_degree)
        if basis is Basis.K:
            choices = odd_compositions(n)
            comp = choices[rng.randrange(len(choices))]
        else:
            comp = random_composition(rng, n)
        element = element + _mono(basis, comp, rng.randint(-3, 3))
    return element


def random_poset(rng, n):
    relations = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j and rng.random() < 0.2]
    order = list(range(1, n + 1))
    rng.shuffle(order)
    rank = {label: k for k, label in enumerate(order)}
    # keep only relations agreeing with a random total order, so the graph is acyclic
    relations = [(i, j) for i, j in relations if rank[i] < rank[j]]
    weights = [rng.randint(1, 2) for _ in range(n)]
    return LabelledWeightedPoset(n, relations, weights)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def check_golden_examples(ctx, result):
    M, ETA, L = Basis.M, Basis.ETA, Basis.L
    expected = QSymElement(M, {(5,): 2, (1, 4): 4, (4, 1): 4, (1, 3, 1): 8})
    result.expect(eta_to_M((1, 3, 1)) == expected, "eta[1,3,1] in M")

    expected = QSymElement(ETA, {(2, 1, 2): 1, (1, 2, 2): 2, (5,): -1})
    got = product_eta((1, 2), (2,))
    result.expect(got == expected, lambda: f"eta[1,2]*eta[2] = {format_element(got)}")

    expected = QSymElement(ETA, {
        (1, 1, 2, 3): 1, (1, 2, 1, 3): 1, (4, 3): -1, (2, 1, 1, 3): 1, (1, 2, 3, 1): 1,
        (1, 6): -1, (2, 1, 3, 1): 1, (2, 5): -1, (2, 3, 1, 1): 1, (6, 1): -1,
    })
    got = product_eta((1, 1), (2, 3))
    result.expect(got == expected, lambda: f"eta[1,1]*eta[2,3] = {format_element(got)}")

    alpha = (1, 1, 3, 3, 1)
    result.expect(descent_set(alpha).elements == (1, 2, 5, 8), "Des(1,1,3,3,1)")
    result.expect(hat(alpha) == (1, 1, 2, 1, 2, 1, 1), "hat(1,1,3,3,1)")
    result.expect(peak_set_of_composition(alpha).elements == (4, 7), "Peak(1,1,3,3,1)")

    result.expect(contract((2, 1, 4, 3, 2), 3) == (2, 8, 2), "contraction at 3")
    result.expect(contract_set((2, 1, 4, 3, 2), {2, 4}) == (12,), "contraction at {2,4}")

    pair = next(p for p in coshuffles(identity(3), (2, 1, 2), identity(2), (1, 1)) if p.perm == (1, 4, 2, 5, 3))
    peaks = coshuffle_peaks(pair)
    got = {frozenset(s): contract_set(pair.comp, s) for s in subsets(peaks) if s}
    expected = {frozenset({2}): (4, 1, 2), frozenset({4}): (2, 1, 4), frozenset({2, 4}): (7,)}
    result.expect(peaks == [2, 4] and got == expected, lambda: f"contractions of 14253: {got}")

    x = make_monomial
    expected = TruncatedPoly(3, 3, {x((1, 2), (2, 1)): 1, x((1, 3), (2, 1)): 1, x((2, 3), (2, 1)): 1})
    result.expect(expand(_mono(M, (2, 1)), 3, 3) == expected, "M[2,1] in 3 variables")
    expected = TruncatedPoly(3, 3, {
        x((1, 2), (2, 1)): 1, x((1, 3), (2, 1)): 1, x((1, 2, 3), (1, 1, 1)): 1, x((2, 3), (2, 1)): 1,
    })
    result.expect(expand(_mono(L, (2, 1)), 3, 3) == expected, "L[2,1] in 3 variables")


def check_bijections(ctx, result):
    for n in range(0, 9):
        for alpha in compositions(n):
            result.expect(
                composition_of_subset(n, descent_set(alpha)) == alpha,
                f"descent round trip at {format_composition(alpha)}",
            )
        for s in subsets(range(1, n)):
            result.expect(
                descent_set(composition_of_subset(n, s)).elements == s,
                f"subset round trip at {format_subset(s)}",
            )
    for n in range(0, 10):
        odd = odd_compositions(n)
        lacunar = [s for s in subsets(range(2, n)) if all(b - a > 1 for a, b in zip(s, s[1:]))]
        result.expect(len(odd) == len(lacunar), f"|Odd({n})| = {len(odd)} vs {len(lacunar)} lacunar sets")
        for alpha in odd:
            back = odd_composition_of_peak_set(n, peak_set_of_composition(alpha))
            result.expect(back == alpha, f"peak round trip at {format_composition(alpha)}")
    for n in range(0, 8):
        for pi in permutations(n):
            result.expect(peak_set_of_permutation(pi).is_peak_lacunar, f"Peak({format_permutation(pi)})")
    for n in range(1, 8):
        for alpha in compositions(n):
            omega = complement_omega(alpha)
            reversed_des = set(descent_set(tuple(reversed(alpha))))
            result.expect(
                set(descent_set(omega)) == set(range(1, n)) - reversed_des,
                f"complement of {format_composition(alpha)}",
            )


def check_basis_theorem(ctx, result):
    for n in range(0, ctx.bound(7) + 1):
        for alpha in compositions(n):
            one = _mono(Basis.ETA, alpha)
            back = basis_convert(eta_to_M(alpha), Basis.ETA)
            result.expect(back == one, f"M_to_eta(eta_to_M({format_composition(alpha)}))")
            forth = basis_convert(M_to_eta(alpha), Basis.M)
            result.expect(forth == _mono(Basis.M, alpha), f"eta_to_M(M_to_eta({format_composition(alpha)}))")

            image = eta_to_M(alpha)
            des = descent_set(alpha)
            result.expect(
                image.coefficient(alpha) == 2 ** len(alpha)
                and all(descent_set(beta).issubset(des) for beta, _ in image.items()),
                f"triangularity at {format_composition(alpha)}",
            )
            result.expect(
                all(_is_power_of_two(v.denominator) for _, v in M_to_eta(alpha).items()),
                f"denominators of M_to_eta({format_composition(alpha)})",
            )
        matrix = sympy.Matrix(conversion_matrix(Basis.ETA, Basis.M, n).tolist())
        result.expect(matrix.det() != 0, f"eta-to-M matrix singular at n = {n}")


def _is_power_of_two(k):
    return k > 0 and k & (k - 1) == 0


def check_product_rule(ctx, result):
    top = ctx.bound(7)
    for total in range(top + 1):
        for a in range(total + 1):
            for alpha in compositions(a):
                for beta in compositions(total - a):
                    lhs = product_eta(alpha, beta)
                    rhs = product(eta_to_M(alpha), eta_to_M(beta))
                    result.expect(
                        certify_equal(lhs, rhs) and lhs.degree == total,
                        f"eta[{format_composition(alpha)}]*eta[{format_composition(beta)}]",
                    )


def check_products(ctx, result):
    """Commutativity, associativity and the oracle on random triples in every basis."""
    top = ctx.bound(7)
    for basis in Basis:
        for _ in range(8):
            a = random_element(ctx.rng, basis, top // 3, terms=2)
            b = random_element(ctx.rng, basis, top // 3, terms=2)
            c = random_element(ctx.rng, basis, top - 2 * (top // 3), terms=2)
            ab = product(a, b)
            result.expect(certify_equal(ab, product(b, a)), f"{basis}: commutativity")
            result.expect(
                certify_equal(product(ab, c), product(a, product(b, c))),
                f"{basis}: associativity",
            )
            d = a.degree + b.degree
            result.expect(
                expand(ab, d, d) == poly_mul(expand(a, d, d), expand(b, d, d), d),
                f"{basis}: expand(a*b) = expand(a)*expand(b)",
            )


def check_coproduct(ctx, result):
    to_M = lambda f: basis_convert(f, Basis.M)
    for n in range(ctx.bound(6) + 1):
        for alpha in compositions(n):
            via_eta = tensor_map(coproduct(_mono(Basis.ETA, alpha)), to_M, to_M)
            via_M = coproduct(eta_to_M(alpha))
            result.expect(via_eta == via_M, f"Delta(eta[{format_composition(alpha)}])")
            result.expect(
                all(a.size + b.size == n for (a, b), _ in via_eta.items()),
                f"grading of Delta(eta[{format_composition(alpha)}])",
            )

    degree = ctx.bound(4)
    for k in range(ctx.coproduct_samples):
        basis = list(Basis)[k % len(Basis)]
        element = random_element(ctx.rng, basis, degree)
        d = max(element.degree, 1)
        split = alphabet_split_eval(element, 2, 2, d)
        blockwise = expand_tensor(coproduct(element), 2, 2, d)
        result.expect(split == blockwise, lambda: f"alphabet split of {format_element(element)}")


def check_coassociativity(ctx, result):
    for n in range(ctx.bound(5) + 1):
        for alpha in compositions(n):
            delta = coproduct(_mono(Basis.ETA, alpha))
            left, right = {}, {}
            for (a, b), v in delta.items():
                for (a1, a2), w in coproduct(_mono(Basis.ETA, a)).items():
                    left[(a1, a2, b)] = left.get((a1, a2, b), 0) + v * w
                for (b1, b2), w in coproduct(_mono(Basis.ETA, b)).items():
                    right[(a, b1, b2)] = right.get((a, b1, b2), 0) + v * w
            result.expect(left == right, f"coassociativity at eta[{format_composition(alpha)}]")


def check_antipode(ctx, result):
    for n in range(ctx.bound(6) + 1):
        for alpha in compositions(n):
            for basis in (Basis.M, Basis.ETA, Basis.L):
                f = _mono(basis, alpha)
                result.expect(antipode(antipode(f)) == f, f"S^2 on {basis}[{format_composition(alpha)}]")
            s_eta = basis_convert(antipode(_mono(Basis.ETA, alpha)), Basis.M)
            result.expect(s_eta == antipode(eta_to_M(alpha)), f"S(eta[{format_composition(alpha)}]) via M")
            s_L = basis_convert(antipode(_mono(Basis.L, alpha)), Basis.M)
            via_M = antipode(basis_convert(_mono(Basis.L, alpha), Basis.M))
            result.expect(s_L == via_M, f"S(L[{format_composition(alpha)}]) via M")
        for alpha in odd_compositions(n):
            f = _mono(Basis.K, alpha)
            result.expect(certify_equal(antipode(antipode(f)), f), f"S^2 on K[{format_composition(alpha)}]")

    for n in range(ctx.bound(5) + 1):
        for alpha in compositions(n):
            f = _mono(Basis.ETA, alpha)
            convolved = tensor_multiply(tensor_map(coproduct(f), antipode, lambda g: g))
            result.expect(
                convolved == QSymElement.one(Basis.ETA) * f.counit(),
                f"m(S⊗id)Delta on eta[{format_composition(alpha)}]",
            )

    pool = [c for n in range(ctx.bound(6) + 1) for c in compositions(n)]
    for _ in range(20):
        alpha, beta = ctx.rng.choice(pool), ctx.rng.choice(pool)
        if alpha.size + beta.size > ctx.bound(6):
            continue
        f, g = _mono(Basis.ETA, alpha), _mono(Basis.ETA, beta)
        result.expect(
            antipode(product(f, g)) == product(antipode(f), antipode(g)),
            f"S(fg) = S(f)S(g) at {format_composition(alpha)} | {format_composition(beta)}",
        )


def check_specializations(ctx, result):
    P5, Ppm5 = ZAlphabet.positive(5), ZAlphabet.signed(5)
    for n in range(ctx.bound(5) + 1):
        ones = Composition((1,) * n)
        for pi in permutations(n):
            label = format_permutation(pi)
            result.expect(U(pi, ones, P5) == expand(L_of_permutation(pi), 5, n), f"U^P({label}, 1^n) = L")
            result.expect(U(pi, ones, Ppm5) == expand(K_of_permutation(pi), 5, n), f"U^P±({label}, 1^n) = K")
        for parts in cartesian((1, 2), repeat=n):
            alpha = Composition(parts)
            d = alpha.size
            result.expect(
                U(identity(n), alpha, Ppm5) == expand(_mono(Basis.ETA, alpha), 5, d),
                f"U^P±(id, {format_composition(alpha)}) = eta",
            )
            result.expect(
                U(reverse_identity(n), alpha, P5) == expand(_mono(Basis.M, alpha), 5, d),
                f"U^P(rev-id, {format_composition(alpha)}) = M",
            )


def check_shuffle_products(ctx, result):
    for alphabet in (ZAlphabet.positive(4), ZAlphabet.signed(4)):
        for total in range(ctx.bound(6) + 1):
            for n in range(total + 1):
                m = total - n
                for pi in permutations(n):
                    for sigma in permutations(m):
                        lhs = poly_mul(gamma(chain_poset(pi), alphabet), gamma(chain_poset(sigma), alphabet), total)
                        rhs = TruncatedPoly(4, total)
                        for tau in shuffles(pi, sigma):
                            rhs = poly_add(rhs, gamma(chain_poset(tau), alphabet), total)
                        result.expect(
                            lhs == rhs,
                            f"Gamma({format_permutation(pi)})Gamma({format_permutation(sigma)}) over Z={alphabet}",
                        )

                # weighted chains: a random sample per (n, m)
                left, right = permutations(n), permutations(m)
                for _ in range(UU_SAMPLES):
                    pi, sigma = ctx.rng.choice(left), ctx.rng.choice(right)
                    alpha = Composition(ctx.rng.randint(1, 2) for _ in range(n))
                    beta = Composition(ctx.rng.randint(1, 2) for _ in range(m))
                    d = alpha.size + beta.size
                    lhs = poly_mul(U(pi, alpha, alphabet), U(sigma, beta, alphabet), d)
                    rhs = TruncatedPoly(4, d)
                    for tau, comp in product_U(pi, alpha, sigma, beta):
                        rhs = poly_add(rhs, U(tau, comp, alphabet), d)
                    result.expect(
                        lhs == rhs,
                        f"U({format_permutation(pi)}; {format_composition(alpha)}) * "
                        f"U({format_permutation(sigma)}; {format_composition(beta)}) over Z={alphabet}",
                    )


def check_U_as_sum(ctx, result):
    Ppm4 = ZAlphabet.signed(4)
    for n in range(ctx.bound(4) + 1):
        for pi in permutations(n):
            for parts in cartesian((1, 2, 3), repeat=n):
                alpha = Composition(parts)
                symbolic = expand(U_to_eta(pi, alpha), 4, alpha.size)
                result.expect(
                    symbolic == U(pi, alpha, Ppm4),
                    f"U({format_permutation(pi)}, {format_composition(alpha)}) as a sum of eta",
                )


def check_split_recursion(ctx, result):
    Ppm3 = ZAlphabet.signed(3)
    done = 0 if ctx.bound(6) >= 2 else ctx.split_samples
    while done < ctx.split_samples:
        poset = random_poset(ctx.rng, ctx.rng.randint(2, ctx.bound(6)))
        pairs = [(i, j) for i in range(1, poset.n + 1) for j in range(i + 1, poset.n + 1) if not poset.comparable(i, j)]
        if not pairs:
            continue
        done += 1
        first, second = split_incomparable(poset, *ctx.rng.choice(pairs))
        total = poly_add(gamma(first, Ppm3), gamma(second, Ppm3))
        result.expect(gamma(poset, Ppm3) == total, lambda: f"split of {poset!r}")

        plain = [tuple(v.magnitude for v in f.values) for f in enumerate_assignments(poset, ZAlphabet.positive(3))]
        result.expect(plain == enumerate_p_partitions(poset, 3), lambda: f"P-partitions of {poset!r}")

    for n in range(ctx.bound(4) + 1):
        for m in range(ctx.bound(4) - n + 1):
            pi, sigma = identity(n), reverse_identity(m)
            alpha, beta = Composition((1,) * n), Composition((2,) * m)
            chains = split_to_chains(double_chain(pi, alpha, sigma, beta))
            result.expect(
                chains == sorted(product_U(pi, alpha, sigma, beta)),
                f"split of two chains ({n}, {m})",
            )


def check_K_conversion(ctx, result):
    for n in range(ctx.bound(7) + 1):
        for alpha in odd_compositions(n):
            k = _mono(Basis.K, alpha)
            result.expect(certify_equal(K_to_M(alpha), k), f"K[{format_composition(alpha)}] in M")
            result.expect(basis_convert(basis_convert(k, Basis.ETA), Basis.K) == k, f"eta/K round trip at {format_composition(alpha)}")


def check_through_F(ctx, result):
    for n in range(ctx.bound(6) + 1):
        for alpha in compositions(n):
            direct = eta_to_L(alpha)
            routed = basis_convert(eta_to_M(alpha), Basis.L)
            result.expect(direct == routed, f"eta[{format_composition(alpha)}] in L")


def check_through_letters(ctx, result):
    for n in range(ctx.bound(6) + 1):
        for alpha in compositions(n):
            lhs = expand(_mono(Basis.ETA, alpha), n, n)
            rhs = expand_eta_by_letters(alpha, n, n)
            result.expect(lhs == rhs, f"eta[{format_composition(alpha)}] through M and through letters")


def check_contraction_parts(ctx, result):
    top = ctx.bound(6)
    for total in range(top + 1):
        for n in range(total + 1):
            for alpha in compositions(n):
                for beta in compositions(total - n):
                    pairs = coshuffles(identity(len(alpha)), alpha, identity(len(beta)), beta)
                    for pair in pairs:
                        from_beta = set(pair.beta_positions)
                        for chosen in subsets(coshuffle_peaks(pair)):
                            blocks = contraction_blocks(len(pair.comp), chosen)
                            sums = tuple(sum(pair.comp[p - 1] for p in block) for block in blocks)
                            # each merged entry takes u parts of alpha and v of beta, |u - v| = 1
                            balanced = all(
                                abs(sum(p not in from_beta for p in block) - sum(p in from_beta for p in block)) == 1
                                for block in blocks
                            )
                            result.expect(
                                balanced and sums == contract_set(pair.comp, chosen),
                                lambda: f"{format_permutation(pair.perm)} contracted at {format_subset(chosen)}",
                            )


def check_lemma(ctx, result):
    ground = range(1, 6)
    for s in subsets(ground):
        for t in subsets(ground):
            expected = 2 ** len(s) if set(s) <= set(t) else 0
            result.expect(lemma_sign_sum(s, t) == expected, f"sign sum at S={format_subset(s)}, T={format_subset(t)}")


def check_quasisymmetry(ctx, result):
    for basis in Basis:
        for _ in range(5):
            element = random_element(ctx.rng, basis, ctx.bound(3))
            d = element.degree
            result.expect(is_quasisymmetric(expand(element, d + 1, d)), lambda: f"quasisymmetry of {format_element(element)}")


CHECKS = [
    ("golden", "worked examples reproduced exactly", check_golden_examples),
    ("bijections", "descent/peak bijections, peak-lacunarity, complement", check_bijections),
    ("basis", "eta is a basis: M <-> eta round trips and triangularity", check_basis_theorem),
    ("product-eta", "eta product rule against the M quasi-shuffle", check_product_rule),
    ("products", "commutativity, associativity, oracle product per basis", check_products),
    ("coproduct", "deconcatenation of eta and the alphabet split", check_coproduct),
    ("coassociativity", "coassociativity on eta", check_coassociativity),
    ("antipode", "antipode involution, routes, Hopf axiom", check_antipode),
    ("specializations", "U specializes to L, K, eta, M", check_specializations),
    ("shuffles", "Gamma and U products over shuffles and coshuffles", check_shuffle_products),
    ("u-as-sum", "U expands into eta by contractions", check_U_as_sum),
    ("split", "split recursion and plain P-partitions", check_split_recursion),
    ("K", "K conversion sign convention", check_K_conversion),
    ("through-F", "eta in L directly and through M", check_through_F),
    ("through-x", "eta expanded through M and letter by letter", check_through_letters),
    ("contraction-parts", "contracted entries of the eta product balance alpha and beta parts", check_contraction_parts),
    ("lemma", "signed subset sum", check_lemma),
    ("quasisymmetry", "expansions are quasisymmetric", check_quasisymmetry),
]


def run_suite(max_degree, seed=0, split_samples=50, coproduct_samples=20, quiet=False, only=None):
    ctx = SuiteContext(max_degree, random.Random(seed), split_samples, coproduct_samples)
    if only is not None:
        unknown = sorted(set(only) - {name for name, _, _ in CHECKS})
        if unknown:
            raise DomainError(f"unknown checks: {', '.join(unknown)}")
    selected = [c for c in CHECKS if only is None or c[0] in only]
    results = []
    for name, description, check in tqdm(selected, desc="verify", disable=quiet, leave=False):
        result = CheckResult(name, description)
        check(ctx, result)
        results.append(result)
        if not quiet:
            mark = "✓" if result.passed else "✗"
            tqdm.write(f"{mark} {name:<16} | {result.cases:>6} cases | {description}")
            for failure in result.failures:
                tqdm.write(f"    counterexample: {failure}")
    return results


def save_report(results, path, max_degree, seed):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    report = {
        "max_degree": max_degree,
        "seed": seed,
        "passed": all(r.passed for r in results),
        "checks": [
            {"name": r.name, "description": r.description, "cases": r.cases, "passed": r.passed, "failures": r.failures}
            for r in results
        ],
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(report, f, ensure_ascii=False, indent=4)
    return path
