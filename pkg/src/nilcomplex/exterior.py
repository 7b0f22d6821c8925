"""Exact scalars and the bigraded exterior algebra.

Generators are ω^1..ω^n (unbarred) and ω^1̄..ω^n̄ (barred). A monomial is
stored in canonical order, unbarred indices ascending followed by barred
indices ascending, and every sign in the package is relative to that order.
Real algebras reuse the same machinery with an empty barred part.
"""
import functools
import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict
from typing import Iterable
from typing import Mapping
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

from .errors import DomainError
from .errors import NonHomogeneousError
from .errors import ParseError

Generator = Tuple[int, bool]

_TERM = re.compile(r"[+-]?[^+-]+")


def _fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"Expecting an exact rational but got {type(value)}.")


def _rational_text(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rational_sqrt(value) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None if irrational."""
    value = _fraction(value)
    if value < 0:
        return None
    num = math.isqrt(value.numerator)
    den = math.isqrt(value.denominator)
    if num * num != value.numerator or den * den != value.denominator:
        return None
    return Fraction(num, den)


@dataclass(frozen=True, eq=False)
class Scalar:
    """Exact Gaussian rational `re + im·i`."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _fraction(self.re))
        object.__setattr__(self, "im", _fraction(self.im))

    @classmethod
    def of(cls, value: "ScalarLike") -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, (float, complex)):
            raise TypeError("Floating point values are not exact scalars.")
        return cls(_fraction(value))

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse literals such as "3", "-1/2", "1/2+3/4i", "1+1i", "-i/2"."""
        source = text.replace(" ", "").replace("−", "-")
        if not source:
            raise ParseError("empty scalar literal", text, 0)
        tokens = list(_TERM.finditer(source))
        if "".join(t.group() for t in tokens) != source:
            raise ParseError(f"invalid scalar literal {text!r}", text, 0)

        re_part = Fraction(0)
        im_part = Fraction(0)
        for match in tokens:
            token = match.group()
            imaginary = "i" in token
            body = token.replace("*", "").replace("i", "", 1) if imaginary else token
            sign = ""
            if body[:1] in ("+", "-"):
                sign, body = body[0], body[1:]
            if imaginary and body == "":
                body = "1"
            elif imaginary and body.startswith("/"):
                body = "1" + body
            try:
                value = Fraction(sign + body)
            except (ValueError, ZeroDivisionError):
                raise ParseError(
                    f"invalid scalar literal {text!r}", text, match.start()
                ) from None
            if imaginary:
                im_part += value
            else:
                re_part += value
        return cls(re_part, im_part)

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|s|² as an exact rational."""
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        norm = other.abs2()
        if norm == 0:
            raise ZeroDivisionError("Scalar division by zero")
        numerator = self * other.conj()
        return Scalar(numerator.re / norm, numerator.im / norm)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if self.im == 0:
            return _rational_text(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{_rational_text(self.im)}i"
        if self.re == 0:
            return imag
        sign = "+" if self.im > 0 else ""
        return f"{_rational_text(self.re)}{sign}{imag}"


ScalarLike = Union[Scalar, int, Fraction]

ZERO = Scalar()
ONE = Scalar(1)
I = Scalar(0, 1)


def _coerce(value) -> Optional[Scalar]:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    return None


def _sort_sign(indices: Sequence[int]) -> Tuple[Optional[Tuple[int, ...]], int]:
    """Sort indices counting transpositions; None if an index repeats."""
    if len(set(indices)) != len(indices):
        return None, 0
    inversions = sum(
        1
        for i, j in itertools.combinations(range(len(indices)), 2)
        if indices[i] > indices[j]
    )
    return tuple(sorted(indices)), -1 if inversions % 2 else 1


def _merge_sign(
    left: Tuple[int, ...], right: Tuple[int, ...]
) -> Tuple[Optional[Tuple[int, ...]], int]:
    if set(left) & set(right):
        return None, 0
    inversions = sum(1 for a in left for b in right if a > b)
    return tuple(sorted(left + right)), -1 if inversions % 2 else 1


@dataclass(frozen=True, order=True)
class Monomial:
    """Wedge monomial ω^{holo} ∧ ω^{anti̅} in canonical order."""

    holo: Tuple[int, ...] = ()
    anti: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "holo", tuple(self.holo))
        object.__setattr__(self, "anti", tuple(self.anti))
        for part in (self.holo, self.anti):
            if any(i < 1 for i in part) or any(
                a >= b for a, b in zip(part, part[1:])
            ):
                raise DomainError(f"Monomial indices must ascend strictly: {part}")

    @property
    def bidegree(self) -> Tuple[int, int]:
        return len(self.holo), len(self.anti)

    @property
    def degree(self) -> int:
        return len(self.holo) + len(self.anti)

    def generators(self) -> Tuple[Generator, ...]:
        return tuple((j, False) for j in self.holo) + tuple(
            (j, True) for j in self.anti
        )

    def __str__(self):
        names = [f"w{j}" for j in self.holo] + [f"w{j}b" for j in self.anti]
        return "^".join(names) if names else "1"


@dataclass(frozen=True)
class Form:
    """Sparse linear combination of monomials with exact coefficients.

    Items are kept sorted by monomial with zero coefficients removed, so
    two forms are equal exactly when their term mappings are equal.
    """

    items: Tuple[Tuple[Monomial, Scalar], ...] = ()

    def __post_init__(self):
        merged: Dict[Monomial, Scalar] = {}
        for monomial, coeff in self.items:
            merged[monomial] = merged.get(monomial, ZERO) + Scalar.of(coeff)
        items = tuple(
            sorted(((m, c) for m, c in merged.items() if c), key=lambda it: it[0])
        )
        object.__setattr__(self, "items", items)

    @classmethod
    def from_terms(cls, terms: Mapping[Monomial, ScalarLike]) -> "Form":
        return cls(tuple(terms.items()))

    @classmethod
    def monomial(
        cls,
        holo: Sequence[int] = (),
        anti: Sequence[int] = (),
        coeff: ScalarLike = 1,
    ) -> "Form":
        """Form for ω^{holo} ∧ ω^{anti̅} given in any index order."""
        sorted_holo, holo_sign = _sort_sign(list(holo))
        sorted_anti, anti_sign = _sort_sign(list(anti))
        if sorted_holo is None or sorted_anti is None:
            return cls()
        sign = holo_sign * anti_sign
        return cls(((Monomial(sorted_holo, sorted_anti), Scalar.of(coeff) * sign),))

    @classmethod
    def constant(cls, coeff: ScalarLike = 1) -> "Form":
        return cls(((Monomial(), Scalar.of(coeff)),))

    @property
    def terms(self) -> Dict[Monomial, Scalar]:
        return dict(self.items)

    def __bool__(self):
        return bool(self.items)

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def coefficient(self, monomial: Monomial) -> Scalar:
        return self.terms.get(monomial, ZERO)

    def bidegrees(self) -> set:
        return {m.bidegree for m, _ in self.items}

    def is_homogeneous(self, p: int, q: int) -> bool:
        return all(m.bidegree == (p, q) for m, _ in self.items)

    def scale(self, coeff: ScalarLike) -> "Form":
        coeff = Scalar.of(coeff)
        return Form(tuple((m, c * coeff) for m, c in self.items))

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return Form(self.items + other.items)

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self):
        if not self.items:
            return "0"
        parts = []
        for monomial, coeff in self.items:
            if coeff == 1:
                parts.append(str(monomial))
            else:
                parts.append(f"({coeff})*{monomial}")
        return " + ".join(parts)


def generator(index: int, barred: bool = False, coeff: ScalarLike = 1) -> Form:
    """The 1-form ω^index (or its conjugate generator)."""
    if barred:
        return Form.monomial((), (index,), coeff)
    return Form.monomial((index,), (), coeff)


def _wedge_pair(a: Form, b: Form) -> Form:
    terms: Dict[Monomial, Scalar] = {}
    for m1, c1 in a.items:
        for m2, c2 in b.items:
            holo, s1 = _merge_sign(m1.holo, m2.holo)
            if holo is None:
                continue
            anti, s2 = _merge_sign(m1.anti, m2.anti)
            if anti is None:
                continue
            sign = s1 * s2
            if (len(m1.anti) * len(m2.holo)) % 2:
                sign = -sign
            key = Monomial(holo, anti)
            terms[key] = terms.get(key, ZERO) + c1 * c2 * sign
    return Form.from_terms(terms)


def wedge(a: Form, b: Form, *more: Form) -> Form:
    """Exterior product, bilinear and associative."""
    result = _wedge_pair(a, b)
    for form in more:
        result = _wedge_pair(result, form)
    return result


def conjugate(a: Form) -> Form:
    """Complex conjugation: conjugates coefficients and swaps bars."""
    items = []
    for monomial, coeff in a.items:
        sign = -1 if (len(monomial.holo) * len(monomial.anti)) % 2 else 1
        items.append((Monomial(monomial.anti, monomial.holo), coeff.conj() * sign))
    return Form(tuple(items))


def conjugate_coefficients(a: Form) -> Form:
    """Conjugation on a real algebra: generators are fixed."""
    return Form(tuple((m, c.conj()) for m, c in a.items))


def project(a: Form, p: int, q: int) -> Form:
    """Component of bidegree exactly (p, q)."""
    return Form(tuple((m, c) for m, c in a.items if m.bidegree == (p, q)))


@functools.lru_cache(maxsize=None)
def basis(n: int, p: int, q: int) -> Tuple[Monomial, ...]:
    """Lexicographic monomial basis of ⋀^{p,q} on n generators."""
    if not (0 <= p <= n and 0 <= q <= n):
        return ()
    return tuple(
        Monomial(holo, anti)
        for holo in itertools.combinations(range(1, n + 1), p)
        for anti in itertools.combinations(range(1, n + 1), q)
    )


@functools.lru_cache(maxsize=None)
def total_basis(n: int, k: int) -> Tuple[Monomial, ...]:
    """Monomials of total degree k, grouped by ascending holomorphic degree."""
    return tuple(
        monomial for p in range(0, k + 1) for monomial in basis(n, p, k - p)
    )


@functools.lru_cache(maxsize=None)
def real_basis(m: int, k: int) -> Tuple[Monomial, ...]:
    """Monomials e^{i1..ik} of a real algebra on m generators."""
    return tuple(Monomial(holo, ()) for holo in itertools.combinations(range(1, m + 1), k))


def coordinates_in(a: Form, monomials: Sequence[Monomial]) -> Tuple[Scalar, ...]:
    """Coefficient vector of `a` relative to an explicit monomial list."""
    position = {m: i for i, m in enumerate(monomials)}
    vector = [ZERO] * len(monomials)
    for monomial, coeff in a.items:
        if monomial not in position:
            raise NonHomogeneousError(f"Monomial {monomial} lies outside the basis.")
        vector[position[monomial]] = coeff
    return tuple(vector)


def coordinates(a: Form, p: int, q: int, n: int = 3) -> Tuple[Scalar, ...]:
    """Coefficient vector of a (p,q)-form in the basis `basis(n, p, q)`."""
    if not a.is_homogeneous(p, q):
        raise NonHomogeneousError(
            f"Form has bidegrees {sorted(a.bidegrees())}, expected ({p},{q})."
        )
    return coordinates_in(a, basis(n, p, q))


def from_coordinates(vector: Sequence[ScalarLike], monomials: Sequence[Monomial]) -> Form:
    if len(vector) != len(monomials):
        raise DomainError(
            f"Vector of length {len(vector)} does not match {len(monomials)} monomials."
        )
    return Form(tuple(zip(monomials, (Scalar.of(c) for c in vector))))


def pullback(a: Form, images: Mapping[Generator, Form]) -> Form:
    """Substitute every generator by the given 1-form and expand."""
    result = Form()
    for monomial, coeff in a.items:
        product = Form.constant(coeff)
        for gen in monomial.generators():
            if gen not in images:
                raise DomainError(f"No image given for generator {gen}.")
            product = wedge(product, images[gen])
        result = result + product
    return result


def linear_combination(coeffs: Iterable[ScalarLike], forms: Iterable[Form]) -> Form:
    result = Form()
    for coeff, form in zip(coeffs, forms):
        result = result + form.scale(coeff)
    return result
