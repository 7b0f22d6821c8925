"""Textual notations for structure equations.

Salamon notation lists de^1..de^m, each entry "0" or a signed sum of
two-digit tokens "ab" meaning e^a∧e^b:

    (0,0,0,12,23,14-35)

The complex notation has one "dwJ = <sum>" statement per generator,
separated by semicolons or newlines. Terms are "<coeff>*<monomial>" or a
bare monomial, with monomials "w1^w2b" and coefficients as Gaussian
rational literals; coefficients containing a sign go in parentheses:

    dw1=0; dw2=w1^w1b; dw3=w1^w2 + (4/1)*w1^w2b + (1/2)*w2^w1b
"""
import logging
import re
from typing import Iterator
from typing import List
from typing import Tuple
from typing import Union

from .errors import DomainError
from .errors import ParseError
from .exterior import Form
from .exterior import Scalar
from .liealg import RealStructureEquations
from .liealg import StructureEquations
from .liealg import structure

logger = logging.getLogger(__name__)

_FACTOR = re.compile(r"w(\d+)(b?)")
_STATEMENT = re.compile(r"\s*dw(\d+)\s*=")


def _split_terms(text: str, offset: int) -> Iterator[Tuple[str, int]]:
    """Signed terms of a sum at parenthesis depth zero, with their offsets."""
    depth = 0
    start = 0
    for i, char in enumerate(text):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ')'", text, offset + i)
        elif char in "+-−" and depth == 0 and text[start:i].strip():
            yield text[start:i], offset + start
            start = i
    if depth:
        raise ParseError("unbalanced '('", text, offset + len(text))
    yield text[start:], offset + start


def _sign_and_body(term: str) -> Tuple[int, str, int]:
    stripped = term.lstrip()
    skipped = len(term) - len(stripped)
    if stripped[:1] in ("+", "-", "−"):
        sign = -1 if stripped[0] in "-−" else 1
        body = stripped[1:]
        return sign, body.strip(), skipped + 1 + len(body) - len(body.lstrip())
    return 1, stripped.strip(), skipped


# Salamon notation


def parse_salamon(text: str) -> RealStructureEquations:
    """Real structure equations from Salamon notation, with d² = 0 checked."""
    source = text.strip()
    if not (source.startswith("(") and source.endswith(")")):
        raise ParseError("Salamon notation must be enclosed in parentheses", text, 0)
    offset = text.index("(") + 1
    entries = source[1:-1].split(",")
    m = len(entries)
    if m > 9:
        raise ParseError("Salamon notation supports at most 9 generators", text, 0)

    forms = []
    for entry in entries:
        forms.append(_salamon_entry(entry, offset, m, text))
        offset += len(entry) + 1
    eqs = RealStructureEquations(m, tuple(forms)).validate()
    logger.debug("Parsed Salamon %s", text)
    return eqs


def _salamon_entry(entry: str, offset: int, m: int, text: str) -> Form:
    if entry.strip() == "0":
        return Form()
    if not entry.strip():
        raise ParseError("empty entry", text, offset)
    form = Form()
    for term, position in _split_terms(entry, offset):
        sign, body, skipped = _sign_and_body(term)
        position += skipped
        if not re.fullmatch(r"\d\d", body):
            raise ParseError(f"expecting a two-digit token, got {body!r}", text, position)
        a, b = int(body[0]), int(body[1])
        if a == b or not (1 <= a <= m and 1 <= b <= m):
            raise ParseError(f"invalid index pair {body!r}", text, position)
        form = form + Form.monomial((a, b), (), sign)
    return form


def format_salamon(eqs: RealStructureEquations) -> str:
    """Salamon notation; every coefficient must be ±1."""
    if eqs.m > 9:
        raise DomainError("Salamon notation supports at most 9 generators.")
    entries = []
    for form in eqs.d_of_real:
        entry = ""
        for monomial, coeff in form:
            if coeff not in (1, -1):
                raise DomainError(f"Coefficient {coeff} has no Salamon notation.")
            token = "".join(str(j) for j in monomial.holo)
            if coeff == -1:
                entry += "-" + token
            else:
                entry += ("+" if entry else "") + token
        entries.append(entry or "0")
    return "(" + ",".join(entries) + ")"


# Complex notation


def _complex_monomial(body: str, position: int, text: str) -> Form:
    holo: List[int] = []
    anti: List[int] = []
    for factor in body.split("^"):
        match = _FACTOR.fullmatch(factor.strip())
        if match is None:
            raise ParseError(f"invalid generator {factor.strip()!r}", text, position)
        index = int(match.group(1))
        if index < 1:
            raise ParseError("generators are numbered from 1", text, position)
        (anti if match.group(2) else holo).append(index)
        position += len(factor) + 1
    return Form.monomial(holo, anti)


def _complex_term(term: str, position: int, text: str) -> Form:
    sign, body, skipped = _sign_and_body(term)
    position += skipped
    if not body:
        raise ParseError("empty term", text, position)
    coeff = Scalar(sign)
    if "*" in body:
        literal, monomial = body.rsplit("*", 1)
        literal = literal.strip()
        if literal.startswith("(") and literal.endswith(")"):
            literal = literal[1:-1]
        try:
            coeff = coeff * Scalar.parse(literal)
        except ParseError as error:
            raise ParseError(f"invalid coefficient {literal!r}", text, position + error.position) from None
        position += len(body) - len(monomial)
        body = monomial.strip()
    if body == "0":
        return Form()
    return _complex_monomial(body, position, text).scale(coeff)


def parse_complex(text: str) -> StructureEquations:
    """Complex structure equations from the dw-notation, integrability checked."""
    statements = {}
    offset = 0
    for line in re.split(r"([;\n])", text):
        if line in (";", "\n"):
            offset += 1
            continue
        if line.strip():
            match = _STATEMENT.match(line)
            if match is None:
                raise ParseError("expecting 'dwJ ='", text, offset + len(line) - len(line.lstrip()))
            j = int(match.group(1))
            if j in statements:
                raise ParseError(f"dw{j} is given twice", text, offset + match.start(1))
            rhs = line[match.end():]
            if not rhs.strip():
                raise ParseError(f"dw{j} has no right-hand side", text, offset + match.end())
            form = Form()
            for term, position in _split_terms(rhs, offset + match.end()):
                form = form + _complex_term(term, position, text)
            statements[j] = form
        offset += len(line)

    n = len(statements)
    if not n:
        raise ParseError("no equations given", text, 0)
    missing = [j for j in range(1, n + 1) if j not in statements]
    if missing:
        raise ParseError(f"dw{missing[0]} is missing", text, len(text))
    eqs = structure([statements[j] for j in range(1, n + 1)], n)
    logger.debug("Parsed complex equations %s", eqs)
    return eqs


def format_complex(eqs: StructureEquations) -> str:
    return str(eqs)


def parse_input(text: str) -> Union[StructureEquations, RealStructureEquations]:
    """Either notation: text starting with "(" is read as Salamon notation."""
    if text.lstrip().startswith("("):
        return parse_salamon(text)
    return parse_complex(text)
