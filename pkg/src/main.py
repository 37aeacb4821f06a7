import argparse
import sys

from errors import ParseError, QSymError
from formatting import parse_composition, parse_element, parse_permutation, render
from oracle import expand
from ppartitions import LabelledWeightedPoset, U, U_to_eta, ZAlphabet, gamma
from qsym import Basis, antipode, basis_convert, coproduct, product, tensor_convert
from settings import load_settings
from verify import run_suite, save_report

BASES = [b.value for b in Basis]


def banner(args, title):
    if not args.quiet:
        print(f"🔬 {title}")
        print("=" * 50)


def emit(args, value):
    print(render(value, args.format))


def _reexpress(args, element):
    return basis_convert(element, args.basis) if args.basis else element


def _alphabet(args, settings, degree):
    """--nvars, then the configured count, then the degree of the input."""
    nvars = args.nvars if args.nvars is not None else settings.cli.nvars
    if nvars is None:
        nvars = degree
    alphabet = ZAlphabet.parse(args.zset, nvars)
    return alphabet, max(nvars, alphabet.max_magnitude)


# ---------------------------------------------------------------------------
# Verbs
# ---------------------------------------------------------------------------

def cmd_convert(args, settings):
    emit(args, basis_convert(parse_element(args.element), args.to))
    return 0


def cmd_multiply(args, settings):
    result = product(parse_element(args.left), parse_element(args.right))
    emit(args, _reexpress(args, result))
    return 0


def cmd_coproduct(args, settings):
    result = coproduct(parse_element(args.element))
    if args.basis:
        result = tensor_convert(result, args.basis, args.basis)
    emit(args, result)
    return 0


def cmd_antipode(args, settings):
    emit(args, _reexpress(args, antipode(parse_element(args.element))))
    return 0


def cmd_expand(args, settings):
    element = parse_element(args.element)
    degree = element.degree if args.degree is None else args.degree
    nvars = element.degree if args.nvars is None else args.nvars
    emit(args, expand(element, nvars, degree))
    return 0


def cmd_gamma(args, settings):
    try:
        poset = LabelledWeightedPoset.load(args.poset)
    except QSymError:
        raise
    except (OSError, ValueError) as e:
        raise QSymError(f"cannot read poset {args.poset}: {e}") from e
    alphabet, nvars = _alphabet(args, settings, sum(poset.weights))
    emit(args, gamma(poset, alphabet, nvars))
    return 0


def cmd_u_function(args, settings):
    pi, alpha = parse_permutation(args.permutation), parse_composition(args.composition)
    if args.symbolic:
        emit(args, U_to_eta(pi, alpha))
        return 0
    alphabet, nvars = _alphabet(args, settings, alpha.size)
    emit(args, U(pi, alpha, alphabet, nvars))
    return 0


def cmd_verify(args, settings):
    cfg = settings.verify
    max_degree = cfg.max_degree if args.max_degree is None else args.max_degree
    seed = cfg.seed if args.seed is None else args.seed
    results = run_suite(
        max_degree,
        seed=seed,
        split_samples=cfg.split_samples,
        coproduct_samples=cfg.coproduct_samples,
        quiet=args.quiet,
        only=args.only,
    )
    passed = sum(r.passed for r in results)

    path = save_report(results, args.report or cfg.report_path, max_degree, seed)
    if not args.quiet:
        print("=" * 50)
        print(f"💾 Report saved to {path}")
    mark = "✓" if passed == len(results) else "✗"
    print(f"{mark} {passed}/{len(results)} checks passed at max degree {max_degree}")
    return 0 if passed == len(results) else 1


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser(settings):
    parser = argparse.ArgumentParser(
        prog="qsym",
        description="exact arithmetic in quasisymmetric functions (bases M, L, K, eta)",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=settings.cli.format)
    common.add_argument("-q", "--quiet", action="store_true", help="no banners or progress bars")

    verbs = parser.add_subparsers(dest="verb", required=True)

    p = verbs.add_parser("convert", parents=[common], help="re-express an element in another basis")
    p.add_argument("element")
    p.add_argument("--to", choices=BASES, required=True)
    p.set_defaults(handler=cmd_convert)

    p = verbs.add_parser("multiply", parents=[common], help="product of two elements")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--basis", choices=BASES)
    p.set_defaults(handler=cmd_multiply)

    p = verbs.add_parser("coproduct", parents=[common], help="deconcatenation coproduct")
    p.add_argument("element")
    p.add_argument("--basis", choices=BASES)
    p.set_defaults(handler=cmd_coproduct)

    p = verbs.add_parser("antipode", parents=[common], help="Hopf algebra antipode")
    p.add_argument("element")
    p.add_argument("--basis", choices=BASES)
    p.set_defaults(handler=cmd_antipode)

    p = verbs.add_parser("expand", parents=[common], help="truncated polynomial in x_1..x_N")
    p.add_argument("element")
    p.add_argument("--nvars", type=int, help="number of variables (default: degree of the element)")
    p.add_argument("--degree", type=int, help="degree bound (default: degree of the element)")
    p.set_defaults(handler=cmd_expand)

    p = verbs.add_parser("gamma", parents=[common], help="enriched P-partition generating function")
    p.add_argument("--poset", required=True, help="poset JSON file")
    p.add_argument("--zset", default="Ppm", help="P, Ppm or a list like --zset=-1,+1,-2")
    p.add_argument("--nvars", type=int)
    p.set_defaults(handler=cmd_gamma)

    p = verbs.add_parser("u-function", parents=[common], help="U of a weighted chain")
    p.add_argument("permutation", help="one-line notation, e.g. 2413 or 2,4,1,3")
    p.add_argument("composition", help="weights along the chain, e.g. 1,2,1,1")
    p.add_argument("--zset", default="Ppm", help="P, Ppm or a list like --zset=-1,+1,-2")
    p.add_argument("--nvars", type=int)
    p.add_argument("--symbolic", action="store_true", help="print the eta expansion instead")
    p.set_defaults(handler=cmd_u_function)

    p = verbs.add_parser("verify", parents=[common], help="run the bundled identity checks")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--report", help="where to write the JSON report")
    p.add_argument("--only", nargs="+", help="run only the named checks")
    p.set_defaults(handler=cmd_verify)

    return parser


def run(argv=None):
    try:
        settings = load_settings()
    except QSymError as e:
        print(f"✗ Error in configuration: {e}", file=sys.stderr)
        return 1

    args = build_parser(settings).parse_args(argv)
    banner(args, f"QSYM {args.verb.upper()}")
    try:
        return args.handler(args, settings)
    except ParseError as e:
        print(f"✗ Error in {args.verb}: {e}", file=sys.stderr)
        print(e.highlight(), file=sys.stderr)
        return 1
    except QSymError as e:
        print(f"✗ Error in {args.verb}: {e}", file=sys.stderr)
        return 1


def main():
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
