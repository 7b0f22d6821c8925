"""Canonical families of complex structures and their classification.

Four parameter families cover the structures handled here:

- `TwoStepTriple` (ρ, λ, D): dω³ = ρω^{12} + ω^{11̄} + λω^{12̄} + Dω^{22̄},
- `ThreeStepTriple` (ρ, B, c): dω² = ω^{11̄}, dω³ = ρω^{12} + Bω^{12̄} + cω^{21̄},
- `GeneralNilpotentParams` (ε, ρ, A, B, C, D):
  dω² = εω^{11̄}, dω³ = ρω^{12} + (1−ε)Aω^{11̄} + Bω^{12̄} + Cω^{21̄} + (1−ε)Dω^{22̄},
- `NonNilpotentParams` (ε, ±): dω² = ω^{13} + ω^{13̄},
  dω³ = iεω^{11̄} ± i(ω^{12̄} − ω^{21̄}).

dω¹ = 0 throughout. Arbitrary equations are identified by comparing Lie
algebra fingerprints with those of the eighteen real algebras in
`REAL_ALGEBRAS`.
"""
import functools
import logging
from dataclasses import dataclass
from dataclasses import replace
from enum import Enum
from fractions import Fraction
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple
from typing import Union

from .cohomology import cup_product_rank
from .errors import AmbiguousMatchError
from .errors import ConsistencyAlarm
from .errors import DomainError
from .errors import NoMatchError
from .errors import UnrepresentableError
from .errors import UnsupportedCaseError
from .errors import VerificationError
from .exterior import I
from .exterior import ONE
from .exterior import ZERO
from .exterior import Form
from .exterior import Scalar
from .exterior import ScalarLike
from .exterior import coordinates_in
from .exterior import generator
from .exterior import rational_sqrt
from .exterior import wedge
from .liealg import Algebra
from .liealg import Fingerprint
from .liealg import StructureEquations
from .liealg import exact_real_two_forms
from .liealg import fingerprint
from .liealg import rebase
from .liealg import structure
from .linalg import row_reduce
from .parsing import parse_salamon

logger = logging.getLogger(__name__)


class AlgebraClass(str, Enum):
    """The six-dimensional nilpotent Lie algebras admitting complex structures."""

    H1 = "h1"
    H2 = "h2"
    H3 = "h3"
    H4 = "h4"
    H5 = "h5"
    H6 = "h6"
    H7 = "h7"
    H8 = "h8"
    H9 = "h9"
    H10 = "h10"
    H11 = "h11"
    H12 = "h12"
    H13 = "h13"
    H14 = "h14"
    H15 = "h15"
    H16 = "h16"
    H19_MINUS = "h19-"
    H26_PLUS = "h26+"

    def __str__(self):
        return self.value


REAL_ALGEBRAS: Dict[AlgebraClass, str] = {
    AlgebraClass.H1: "(0,0,0,0,0,0)",
    AlgebraClass.H2: "(0,0,0,0,12,34)",
    AlgebraClass.H3: "(0,0,0,0,0,12+34)",
    AlgebraClass.H4: "(0,0,0,0,12,14+23)",
    AlgebraClass.H5: "(0,0,0,0,13+42,14+23)",
    AlgebraClass.H6: "(0,0,0,0,12,13)",
    AlgebraClass.H7: "(0,0,0,12,13,23)",
    AlgebraClass.H8: "(0,0,0,0,0,12)",
    AlgebraClass.H9: "(0,0,0,0,12,14+25)",
    AlgebraClass.H10: "(0,0,0,12,13,14)",
    AlgebraClass.H11: "(0,0,0,12,13,14+23)",
    AlgebraClass.H12: "(0,0,0,12,13,24)",
    AlgebraClass.H13: "(0,0,0,12,13+14,24)",
    AlgebraClass.H14: "(0,0,0,12,14,13+42)",
    AlgebraClass.H15: "(0,0,0,12,13+42,14+23)",
    AlgebraClass.H16: "(0,0,0,12,14,24)",
    AlgebraClass.H19_MINUS: "(0,0,0,12,23,14-35)",
    AlgebraClass.H26_PLUS: "(0,0,12,13,23,14+25)",
}


def _rational(value: ScalarLike, name: str) -> Fraction:
    scalar = Scalar.of(value)
    if not scalar.is_real:
        raise DomainError(f"{name} must be real, got {scalar}.")
    return scalar.re


def _flag(value: int, name: str) -> int:
    if value not in (0, 1):
        raise DomainError(f"{name} must be 0 or 1, got {value}.")
    return int(value)


@dataclass(frozen=True)
class TwoStepTriple:
    """(ρ, λ, D) with λ ≥ 0 real and ℑD ≥ 0."""

    rho: int
    lam: Fraction
    D: Scalar = ZERO

    def __post_init__(self):
        object.__setattr__(self, "rho", _flag(self.rho, "rho"))
        object.__setattr__(self, "lam", _rational(self.lam, "lambda"))
        object.__setattr__(self, "D", Scalar.of(self.D))
        if self.lam < 0:
            raise DomainError(f"lambda must be non-negative, got {self.lam}.")
        if self.D.im < 0:
            raise DomainError(f"Im D must be non-negative, got {self.D}.")

    @property
    def x(self) -> Fraction:
        return self.D.re

    @property
    def y(self) -> Fraction:
        return self.D.im

    def __str__(self):
        return f"({self.rho}, {Scalar(self.lam)}, {self.D})"


@dataclass(frozen=True)
class ThreeStepTriple:
    """(ρ, B, c) with c ≥ 0 real, not all zero."""

    rho: int
    B: Scalar
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rho", _flag(self.rho, "rho"))
        object.__setattr__(self, "B", Scalar.of(self.B))
        object.__setattr__(self, "c", _rational(self.c, "c"))
        if self.c < 0:
            raise DomainError(f"c must be non-negative, got {self.c}.")
        if not (self.rho or self.B or self.c):
            raise DomainError("(rho, B, c) = (0, 0, 0) is not a three-step structure.")

    def __str__(self):
        return f"({self.rho}, {self.B}, {Scalar(self.c)})"


@dataclass(frozen=True)
class GeneralNilpotentParams:
    epsilon: int
    rho: int
    A: Scalar = ZERO
    B: Scalar = ZERO
    C: Scalar = ZERO
    D: Scalar = ZERO

    def __post_init__(self):
        object.__setattr__(self, "epsilon", _flag(self.epsilon, "epsilon"))
        object.__setattr__(self, "rho", _flag(self.rho, "rho"))
        for name in "ABCD":
            object.__setattr__(self, name, Scalar.of(getattr(self, name)))

    @property
    def complex_parallelizable(self) -> bool:
        return not (self.epsilon or self.A or self.B or self.C or self.D)

    def __str__(self):
        return (
            f"(eps={self.epsilon}, rho={self.rho}, A={self.A}, "
            f"B={self.B}, C={self.C}, D={self.D})"
        )


@dataclass(frozen=True)
class NonNilpotentParams:
    epsilon: int
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "epsilon", _flag(self.epsilon, "epsilon"))
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}.")

    def __str__(self):
        return f"(eps={self.epsilon}, {'+' if self.sign > 0 else '-'})"


Params = Union[TwoStepTriple, ThreeStepTriple, GeneralNilpotentParams, NonNilpotentParams]


def _w(holo=(), anti=(), coeff: ScalarLike = 1) -> Form:
    return Form.monomial(holo, anti, coeff)


def equations_of(params: Params) -> StructureEquations:
    """Validated structure equations of a family member."""
    if isinstance(params, TwoStepTriple):
        d2 = Form()
        d3 = (
            _w((1, 2), (), params.rho)
            + _w((1,), (1,))
            + _w((1,), (2,), params.lam)
            + _w((2,), (2,), params.D)
        )
    elif isinstance(params, ThreeStepTriple):
        d2 = _w((1,), (1,))
        d3 = (
            _w((1, 2), (), params.rho)
            + _w((1,), (2,), params.B)
            + _w((2,), (1,), params.c)
        )
    elif isinstance(params, GeneralNilpotentParams):
        eps = params.epsilon
        d2 = _w((1,), (1,), eps)
        d3 = (
            _w((1, 2), (), params.rho)
            + _w((1,), (1,), params.A * (1 - eps))
            + _w((1,), (2,), params.B)
            + _w((2,), (1,), params.C)
            + _w((2,), (2,), params.D * (1 - eps))
        )
    elif isinstance(params, NonNilpotentParams):
        d2 = _w((1, 3)) + _w((1,), (3,))
        d3 = _w((1,), (1,), I * params.epsilon) + (
            _w((1,), (2,)) - _w((2,), (1,))
        ).scale(I * params.sign)
    else:
        raise DomainError(f"Unknown parameter family {type(params).__name__}.")
    return structure([Form(), d2, d3], 3)


def classify_2step(t: TwoStepTriple) -> AlgebraClass:
    x, y, rho, lam = t.x, t.y, t.rho, t.lam
    if lam == rho:
        if y > 0:
            return AlgebraClass.H2
        if x != 0:
            return AlgebraClass.H4 if rho else AlgebraClass.H3
        return AlgebraClass.H6 if rho else AlgebraClass.H8
    lhs = 4 * y * y
    rhs = (rho - lam * lam) * (4 * x + rho - lam * lam)
    if lhs > rhs:
        return AlgebraClass.H2
    if lhs == rhs:
        return AlgebraClass.H4
    return AlgebraClass.H5


def classify_3step(t: ThreeStepTriple) -> AlgebraClass:
    B, c = t.B, t.c
    norm = B.abs2()
    if not t.rho:
        if not B:
            return AlgebraClass.H15
        return AlgebraClass.H9 if c * c == norm else AlgebraClass.H15
    if not c:
        if B == 1:
            return AlgebraClass.H7
        if norm == 1:
            return AlgebraClass.H16
    elif c * c == (B - 1).abs2():
        if not B:
            return AlgebraClass.H10
        return AlgebraClass.H11 if B.is_real else AlgebraClass.H12
    delta = c ** 4 - 2 * (norm + 1) * c * c + (norm - 1) ** 2
    if delta < 0:
        return AlgebraClass.H13
    if delta == 0:
        return AlgebraClass.H14
    return AlgebraClass.H15


def _exact_sqrt(value: Fraction, what: str) -> Fraction:
    root = rational_sqrt(value)
    if root is None:
        raise UnrepresentableError(f"{what} = sqrt({value}) is irrational.")
    return root


def reduce_eq4(rho: int, B: ScalarLike, D: ScalarLike) -> TwoStepTriple:
    """(ρ, λ, D) equivalent to dω³ = ρω^{12} + ω^{11̄} + Bω^{12̄} + Dω^{22̄}.

    A unit rotation of ω¹, ω² makes the ω^{12̄} coefficient |B|; a negative
    imaginary part of D is removed by conjugation.
    """
    B, D = Scalar.of(B), Scalar.of(D)
    lam = _exact_sqrt(B.abs2(), "|B|")
    return TwoStepTriple(rho, lam, D if D.im >= 0 else D.conj())


def reduce_general(params: GeneralNilpotentParams) -> Optional[Params]:
    """Family triple of a general member, or None outside the reachable cases."""
    try:
        if not params.epsilon:
            if params.A == 1 and not params.C:
                return reduce_eq4(params.rho, params.B, params.D)
            return None
        c = _exact_sqrt(params.C.abs2(), "|C|")
        if params.rho:
            return ThreeStepTriple(1, params.B, c)
        if not params.B:
            return ThreeStepTriple(0, ZERO, c) if c else None
        return ThreeStepTriple(0, ONE, c / _exact_sqrt(params.B.abs2(), "|B|"))
    except UnrepresentableError:
        return None


def classify(params: Params) -> AlgebraClass:
    """Algebra class of any family member."""
    if isinstance(params, TwoStepTriple):
        return classify_2step(params)
    if isinstance(params, ThreeStepTriple):
        return classify_3step(params)
    if isinstance(params, NonNilpotentParams):
        return AlgebraClass.H26_PLUS if params.epsilon else AlgebraClass.H19_MINUS
    if isinstance(params, GeneralNilpotentParams):
        if params.complex_parallelizable:
            return AlgebraClass.H5 if params.rho else AlgebraClass.H1
        reduced = reduce_general(params)
        if reduced is not None:
            return classify(reduced)
        logger.debug("No family reduction for %s, identifying", params)
        return identify(equations_of(params))
    raise DomainError(f"Unknown parameter family {type(params).__name__}.")


def family_one_region(t: TwoStepTriple) -> bool:
    """(1, λ, iy) with λ > 0 inside the first canonical h5 region."""
    if t.rho != 1 or t.x != 0 or t.lam == 0:
        return False
    lam2 = t.lam * t.lam
    bound = lam2 if lam2 < Fraction(1, 2) else abs(1 - lam2)
    return 0 <= 2 * t.y < bound


def family_two_region(t: TwoStepTriple) -> bool:
    """(1, 0, D) with 4(ℑD)² < 1 + 4ℜD."""
    return t.rho == 1 and t.lam == 0 and 4 * t.y * t.y < 1 + 4 * t.x


def _require_non_abelian(*triples: TwoStepTriple):
    for t in triples:
        if t.rho != 1:
            raise DomainError(f"{t} is abelian; only rho = 1 triples are compared.")


def equivalent_2step(a: TwoStepTriple, b: TwoStepTriple) -> bool:
    """Whether (1, λ, D) and (1, t, E) define equivalent complex structures.

    A basis change must scale ω³ by some e with E = D·e/ē. For λ ≠ t the
    ratio w = e₁/e₂ read off E/D has to solve

        w²(t² − λ²) + 4y·w + (t² − λ² + 4x) = 0,

    and any solution extends to a full basis change.
    """
    _require_non_abelian(a, b)
    D, E = a.D, b.D
    if not D:
        return a.lam == b.lam and not E
    if not E or D.abs2() != E.abs2():
        return False
    if a.lam == b.lam:
        return E == D
    u = E / D
    if u == 1:
        return False
    w = u.im / (1 - u.re)
    spread = b.lam * b.lam - a.lam * a.lam
    return w * w * spread + 4 * a.y * w + spread + 4 * a.x == 0


@dataclass(frozen=True)
class AutomorphismWitness:
    """σ¹ = aω¹ + bω², σ² = cω¹ + fω², σ³ = eω³."""

    a: Scalar
    b: Scalar
    c: Scalar
    e: Scalar
    f: Scalar

    def forms(self) -> List[Form]:
        return [
            generator(1, coeff=self.a) + generator(2, coeff=self.b),
            generator(1, coeff=self.c) + generator(2, coeff=self.f),
            generator(3, coeff=self.e),
        ]

    def __str__(self):
        return f"(a={self.a}, b={self.b}, c={self.c}, e={self.e}, f={self.f})"


IDENTITY_WITNESS = AutomorphismWitness(ONE, ZERO, ZERO, ONE, ONE)

_WITNESS_DIRECTIONS = (ONE, I, ONE + I, ONE - I, Scalar(2, 1))


def verify_witness(
    witness: AutomorphismWitness, a: TwoStepTriple, b: TwoStepTriple
) -> bool:
    """The equations of `a` rewritten in the witness basis equal those of `b`."""
    try:
        return rebase(equations_of(a), witness.forms()) == equations_of(b)
    except DomainError:
        return False


def automorphism_witness(a: TwoStepTriple, b: TwoStepTriple) -> AutomorphismWitness:
    """Verified basis change taking the equations of `a` to those of `b`.

    With u = E/D the coefficient e points along w + i, and for a chosen f

        b̄ = (λf − t f̄)/(1 − D/Ē),   c̄ = −b/E,   a = (e + bc)/f,

    while the real length of e follows from D·e = |b|² + t·b·f̄ + E|f|².
    """
    if not equivalent_2step(a, b):
        raise DomainError(f"{a} and {b} are not equivalent.")
    if a == b:
        return IDENTITY_WITNESS
    lam, t, D, E = a.lam, b.lam, a.D, b.D
    u = E / D
    direction = Scalar(u.im / (1 - u.re), 1)
    shift = 1 - D / E.conj()
    if not shift:
        raise ConsistencyAlarm(f"D equals conj(E) for {a} and {b}.")

    for f in _WITNESS_DIRECTIONS:
        b_coeff = ((f * lam - f.conj() * t) / shift).conj()
        c_coeff = (-b_coeff / E).conj()
        length = (b_coeff.abs2() + b_coeff * f.conj() * t + E * f.abs2()) / (D * direction)
        if not length.is_real:
            raise VerificationError(f"Non-real length {length} of e for {a} and {b}.")
        if not length:
            continue
        e = direction * length
        witness = AutomorphismWitness((e + b_coeff * c_coeff) / f, b_coeff, c_coeff, e, f)
        if verify_witness(witness, a, b):
            logger.debug("Witness %s takes %s to %s", witness, a, b)
            return witness
        raise VerificationError(f"Witness {witness} does not take {a} to {b}.")
    raise VerificationError(f"No admissible direction f for {a} and {b}.")


@dataclass(frozen=True)
class CanonicalForm:
    params: Params
    algebra_class: AlgebraClass

    def __str__(self):
        return f"{self.algebra_class} {self.params}"


def _rotated_target(t: TwoStepTriple, target: Fraction) -> Scalar:
    """E with (1, λ, D) ~ (1, target, E) and ℑE ≥ 0.

    E = D·(β² − L² + 2βL·i)/(β² + L²), L = λ² − target², where β is a
    root of β² − 4yβ + L² − 4xL = 0.
    """
    L = t.lam * t.lam - target * target
    root = _exact_sqrt(4 * t.y * t.y - L * L + 4 * t.x * L, "beta discriminant")
    for beta in (2 * t.y + root, 2 * t.y - root):
        E = t.D * Scalar(beta * beta - L * L, 2 * beta * L) / (beta * beta + L * L)
        if E.im >= 0:
            return E
    raise ConsistencyAlarm(f"No target with Im E >= 0 for {t}.")


def _canonical_abelian(t: TwoStepTriple, cls: AlgebraClass) -> TwoStepTriple:
    if t.lam == 0:
        if cls is AlgebraClass.H3:
            return TwoStepTriple(0, 0, 1 if t.x > 0 else -1)
        if cls is AlgebraClass.H2:
            return TwoStepTriple(0, 0, t.D / _exact_sqrt(t.D.abs2(), "|D|"))
        return t
    scaled = TwoStepTriple(0, 1, t.D / (t.lam * t.lam))
    if scaled.D.is_real and 0 <= scaled.x <= Fraction(1, 4):
        return scaled
    raise UnsupportedCaseError(f"No canonical abelian form for {t} beyond scaling.")


def _canonical_h5(t: TwoStepTriple) -> TwoStepTriple:
    if family_two_region(t) or family_one_region(t):
        return t
    lam2 = t.lam * t.lam
    if lam2 < 2 * t.x:
        return TwoStepTriple(1, 0, _rotated_target(t, Fraction(0)))
    lam = _exact_sqrt(lam2 - 2 * t.x, "lambda")
    y = _exact_sqrt(t.D.abs2(), "|D|")
    candidate = TwoStepTriple(1, lam, Scalar(0, y))
    if lam == 0 or family_one_region(candidate):
        return candidate
    height = _exact_sqrt(4 * y * y - lam ** 4, "Im E")
    return TwoStepTriple(1, 0, Scalar(-lam * lam / 2, height / 2))


def _canonical_two_step(t: TwoStepTriple) -> TwoStepTriple:
    cls = classify_2step(t)
    if not t.rho:
        return _canonical_abelian(t, cls)
    if cls is AlgebraClass.H5:
        return _canonical_h5(t)
    if cls in (AlgebraClass.H2, AlgebraClass.H4) and t.lam != 1:
        return TwoStepTriple(1, 1, _rotated_target(t, Fraction(1)))
    return t


def _canonical_three_step(t: ThreeStepTriple) -> ThreeStepTriple:
    if t.rho:
        return t
    if not t.B:
        return ThreeStepTriple(0, ZERO, 1)
    return ThreeStepTriple(0, ONE, t.c / _exact_sqrt(t.B.abs2(), "|B|"))


def canonical_form(params: Params) -> CanonicalForm:
    """The listed representative equivalent to `params`, with its class."""
    if isinstance(params, TwoStepTriple):
        canonical: Params = _canonical_two_step(params)
    elif isinstance(params, ThreeStepTriple):
        canonical = _canonical_three_step(params)
    elif isinstance(params, NonNilpotentParams):
        canonical = params
    elif isinstance(params, GeneralNilpotentParams):
        if params.complex_parallelizable:
            canonical = params
        else:
            reduced = reduce_general(params)
            if reduced is None:
                raise UnsupportedCaseError(f"{params} is outside the reducible cases.")
            return canonical_form(reduced)
    else:
        raise DomainError(f"Unknown parameter family {type(params).__name__}.")
    result = CanonicalForm(canonical, classify(canonical))
    logger.debug("Canonical form of %s is %s", params, result)
    return result


# Identification by fingerprint

EXTENSION_NAMES = ("dim_exact", "dim_exact_products", "cup_product_rank")


def fingerprint_extensions(eqs: Algebra) -> Tuple[int, int, int]:
    """dim d(g*), dim span{τ∧τ'} over exact τ, τ', and the rank of H¹ × H¹ → H²."""
    taus = exact_real_two_forms(eqs)
    target = eqs.degree_basis(4)
    products = [
        coordinates_in(wedge(taus[i], taus[j]), target)
        for i in range(len(taus))
        for j in range(i, len(taus))
    ]
    span = row_reduce(products, len(target)).rank if products else 0
    return len(taus), span, cup_product_rank(eqs)


@dataclass(frozen=True)
class FingerprintTable:
    """Fingerprints of the known algebras, extended to `depth` extra invariants."""

    depth: int
    entries: Tuple[Tuple[AlgebraClass, Fingerprint], ...]

    def matches(self, print_: Fingerprint) -> List[AlgebraClass]:
        return [cls for cls, known in self.entries if known == print_]


def _collisions(prints: Dict[AlgebraClass, Fingerprint]) -> List[AlgebraClass]:
    seen: Dict[Fingerprint, AlgebraClass] = {}
    colliding = []
    for cls, print_ in prints.items():
        if print_ in seen:
            colliding += [seen[print_], cls]
        seen.setdefault(print_, cls)
    return colliding


@functools.lru_cache(maxsize=None)
def fingerprint_table() -> FingerprintTable:
    """Fingerprints of `REAL_ALGEBRAS`, pairwise distinct at the smallest depth."""
    algebras = {cls: parse_salamon(text) for cls, text in REAL_ALGEBRAS.items()}
    base = {cls: fingerprint(eqs) for cls, eqs in algebras.items()}
    extensions = {cls: fingerprint_extensions(eqs) for cls, eqs in algebras.items()}
    colliding: List[AlgebraClass] = []
    for depth in range(len(EXTENSION_NAMES) + 1):
        prints = {
            cls: replace(base[cls], extensions=extensions[cls][:depth]) for cls in algebras
        }
        colliding = _collisions(prints)
        if not colliding:
            logger.info("Fingerprints separate all algebras at extension depth %d", depth)
            return FingerprintTable(depth, tuple(prints.items()))
        logger.debug("Depth %d leaves collisions %s", depth, colliding)
    raise AmbiguousMatchError(colliding)


def identify(eqs: Algebra) -> AlgebraClass:
    """Class of arbitrary complex or real structure equations."""
    table = fingerprint_table()
    print_ = fingerprint(eqs)
    if table.depth:
        print_ = replace(print_, extensions=fingerprint_extensions(eqs)[: table.depth])
    matches = table.matches(print_)
    if not matches:
        raise NoMatchError(f"No known algebra has fingerprint {print_}.")
    if len(matches) > 1:
        raise AmbiguousMatchError(matches)
    return matches[0]
