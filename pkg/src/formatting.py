"""Text and JSON forms of compositions, elements, tensors and polynomials.

Text element grammar:
    element := "0" | [sign] term (("+" | "-") term)*
    term    := [coeff "*"] basis "[" comp "]"
    coeff   := integer | integer "/" integer
    basis   := "M" | "L" | "K" | "eta"

A zero element prints as 0*<basis>[] so that its basis survives parsing.
"""

import json
import re
from fractions import Fraction

from combinatorics import Composition, Permutation
from errors import DomainError, ParseError
from oracle import TruncatedPoly, to_sympy
from qsym import Basis, QSymElement, TensorElement

TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<basis>eta|M|L|K)|(?P<op>[-+*/\[\],]))")


def format_coefficient(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_coefficient(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"cannot read coefficient {text!r}") from None


def format_composition(comp):
    return ",".join(str(part) for part in comp)


def parse_composition(text):
    text = text.strip()
    if not text:
        return Composition()
    try:
        return Composition(int(part) for part in text.split(","))
    except ValueError:
        raise DomainError(f"cannot read composition {text!r}") from None


def format_permutation(pi):
    return " ".join(str(letter) for letter in pi)


def parse_permutation(text):
    text = text.strip()
    if re.search(r"[\s,]", text):
        letters = [t for t in re.split(r"[\s,]+", text) if t]
    else:
        # compact one-line notation, one digit per letter
        letters = list(text)
    try:
        return Permutation(int(letter) for letter in letters)
    except ValueError:
        raise DomainError(f"cannot read permutation {text!r}") from None


def format_subset(subset):
    return "{" + ",".join(str(e) for e in subset) + "}"


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

def _format_terms(pairs, zero="0"):
    if not pairs:
        return zero
    pieces = []
    for k, (body, coeff) in enumerate(pairs):
        sign = "-" if coeff < 0 else "+"
        magnitude = abs(coeff)
        text = body if magnitude == 1 else f"{format_coefficient(magnitude)}*{body}"
        if k == 0:
            pieces.append(text if sign == "+" else f"-{text}")
        else:
            pieces.append(f" {sign} {text}")
    return "".join(pieces)


def _basis_term(basis, comp):
    return f"{basis}[{format_composition(comp)}]"


def format_element(element):
    # zero keeps its basis: 0*eta[]
    return _format_terms(
        [(_basis_term(element.basis, c), v) for c, v in element.items()],
        zero=f"0*{_basis_term(element.basis, ())}",
    )


def format_tensor(tensor):
    left, right = tensor.bases
    return _format_terms(
        [(f"{_basis_term(left, a)} ⊗ {_basis_term(right, b)}", v) for (a, b), v in tensor.items()]
    )


class _ElementParser:
    def __init__(self, text):
        self.text = text
        self.tokens = []
        position = 0
        stripped = text.rstrip()
        while position < len(stripped):
            match = TOKEN_RE.match(stripped, position)
            if not match or match.end() == position:
                start = position + (len(stripped[position:]) - len(stripped[position:].lstrip()))
                raise ParseError("unexpected character", text, (start, start + 1))
            kind = match.lastgroup
            self.tokens.append((kind, match.group(kind), match.start(kind), match.end(kind)))
            position = match.end()
        self.index = 0

    def peek(self):
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        end = len(self.text)
        return ("end", "", end, end)

    def take(self, kind, value=None):
        token = self.peek()
        if token[0] != kind or (value is not None and token[1] != value):
            expected = value or kind
            found = token[1] or "end of input"
            raise ParseError(f"expected {expected!r}, found {found!r}", self.text, (token[2], max(token[3], token[2] + 1)))
        self.index += 1
        return token

    def parse(self, default_basis):
        if [t[1] for t in self.tokens] == ["0"]:
            return QSymElement.zero(default_basis)

        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take("op")[1] == "-" else 1
        result = self.term(sign)
        while self.peek()[0] != "end":
            op = self.take("op")
            if op[1] not in "+-":
                raise ParseError("expected '+' or '-' between terms", self.text, (op[2], op[3]))
            result = result + self.term(-1 if op[1] == "-" else 1)
        return result

    def term(self, sign):
        coeff = Fraction(sign)
        if self.peek()[0] == "num":
            numerator = int(self.take("num")[1])
            denominator = 1
            if self.peek()[1] == "/":
                self.take("op", "/")
                token = self.take("num")
                denominator = int(token[1])
                if denominator == 0:
                    raise ParseError("zero denominator", self.text, (token[2], token[3]))
            self.take("op", "*")
            coeff *= Fraction(numerator, denominator)

        basis_token = self.take("basis")
        self.take("op", "[")
        parts = []
        if self.peek()[1] != "]":
            parts.append(self.part())
            while self.peek()[1] == ",":
                self.take("op", ",")
                parts.append(self.part())
        self.take("op", "]")
        return QSymElement.monomial(basis_token[1], parts, coeff)

    def part(self):
        token = self.take("num")
        if int(token[1]) == 0:
            raise ParseError("composition parts must be positive", self.text, (token[2], token[3]))
        return int(token[1])


def parse_element(text, default_basis=Basis.M):
    """Parse the text grammar; mixed bases are converted into the first term's basis."""
    return _ElementParser(text).parse(Basis(default_basis))


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def element_to_json(element):
    return {
        "basis": element.basis.value,
        "terms": [
            {"comp": list(comp), "coeff": format_coefficient(coeff)}
            for comp, coeff in element.items()
        ],
    }


def element_from_json(data):
    try:
        terms = {tuple(t["comp"]): parse_coefficient(t["coeff"]) for t in data["terms"]}
        return QSymElement(data["basis"], terms)
    except (KeyError, TypeError) as e:
        raise DomainError(f"malformed element JSON: {e}") from e


def tensor_to_json(tensor):
    return {
        "basis_left": tensor.bases[0].value,
        "basis_right": tensor.bases[1].value,
        "terms": [
            {"comp_left": list(a), "comp_right": list(b), "coeff": format_coefficient(v)}
            for (a, b), v in tensor.items()
        ],
    }


def poly_to_json(poly):
    return {
        "nvars": poly.nvars,
        "degree": poly.degree,
        "truncated": poly.truncated,
        "terms": [
            {"exps": [list(pair) for pair in monomial], "coeff": format_coefficient(coeff)}
            for monomial, coeff in poly.items()
        ],
    }


def format_poly(poly):
    return str(to_sympy(poly))


def render(value, fmt="text"):
    """Render an element, tensor or polynomial for output."""
    if fmt == "json":
        if isinstance(value, QSymElement):
            data = element_to_json(value)
        elif isinstance(value, TensorElement):
            data = tensor_to_json(value)
        elif isinstance(value, TruncatedPoly):
            data = poly_to_json(value)
        else:
            data = value
        return json.dumps(data, ensure_ascii=False, indent=2)

    if isinstance(value, QSymElement):
        return format_element(value)
    if isinstance(value, TensorElement):
        return format_tensor(value)
    if isinstance(value, TruncatedPoly):
        return format_poly(value)
    return str(value)
