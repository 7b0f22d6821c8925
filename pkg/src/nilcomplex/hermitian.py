"""Invariant Hermitian structures and the balanced, sG and Gauduchon conditions.

A Hermitian structure on three generators is

    2Ω = i(r²ω^{11̄} + s²ω^{22̄} + t²ω^{33̄})
         + uω^{12̄} − ūω^{21̄} + vω^{23̄} − v̄ω^{32̄} + zω^{13̄} − z̄ω^{31̄}.

With F = Ω∧Ω the metric is balanced when dF = 0, strongly Gauduchon when
∂F is ∂̄-exact and Gauduchon when ∂∂̄F = 0.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

from .classify import AlgebraClass
from .classify import GeneralNilpotentParams
from .classify import NonNilpotentParams
from .classify import Params
from .classify import ThreeStepTriple
from .classify import TwoStepTriple
from .classify import classify
from .classify import equations_of
from .classify import identify
from .classify import reduce_general
from .errors import ConsistencyAlarm
from .errors import DomainError
from .errors import NotPositiveError
from .errors import UnsupportedCaseError
from .errors import VerificationError
from .exterior import I
from .exterior import ZERO
from .exterior import Form
from .exterior import Scalar
from .exterior import ScalarLike
from .exterior import conjugate
from .exterior import coordinates
from .exterior import wedge
from .liealg import StructureEquations
from .liealg import del_and_delbar
from .liealg import is_abelian
from .liealg import delbar_map
from .linalg import image
from .linalg import member
from .spectral import behaviour

logger = logging.getLogger(__name__)

SG_CLASSES = frozenset(
    (
        AlgebraClass.H1,
        AlgebraClass.H2,
        AlgebraClass.H3,
        AlgebraClass.H4,
        AlgebraClass.H5,
        AlgebraClass.H6,
        AlgebraClass.H19_MINUS,
    )
)


class Positivity(Enum):
    POSITIVE = "positive"
    DEGENERATE = "degenerate"
    INDEFINITE = "indefinite"


def _real(value: ScalarLike, name: str) -> Fraction:
    scalar = Scalar.of(value)
    if not scalar.is_real:
        raise DomainError(f"{name} must be real, got {scalar}.")
    return scalar.re


@dataclass(frozen=True)
class HermitianParams:
    """Coefficients (r², s², t², u, v, z) of 2Ω.

    Usage:
        p = HermitianParams(1, 1, 1)
        is_positive(p)
    """

    r2: Fraction
    s2: Fraction
    t2: Fraction
    u: Scalar = ZERO
    v: Scalar = ZERO
    z: Scalar = ZERO

    def __post_init__(self):
        for name in ("r2", "s2", "t2"):
            object.__setattr__(self, name, _real(getattr(self, name), name))
        for name in ("u", "v", "z"):
            object.__setattr__(self, name, Scalar.of(getattr(self, name)))

    @classmethod
    def diagonal(cls) -> "HermitianParams":
        return cls(1, 1, 1)

    def scale(self, kappa: ScalarLike) -> "HermitianParams":
        kappa = _real(kappa, "kappa")
        return HermitianParams(
            self.r2 * kappa,
            self.s2 * kappa,
            self.t2 * kappa,
            self.u * kappa,
            self.v * kappa,
            self.z * kappa,
        )

    def determinant(self) -> Fraction:
        """det of the Hermitian coefficient matrix, i.e. a multiple of Ω³."""
        u, v, z = self.u, self.v, self.z
        twisted = I * u.conj() * v.conj() * z
        return (
            self.r2 * self.s2 * self.t2
            + 2 * twisted.re
            - self.t2 * u.abs2()
            - self.r2 * v.abs2()
            - self.s2 * z.abs2()
        )

    def __str__(self):
        return (
            f"(r2={Scalar(self.r2)}, s2={Scalar(self.s2)}, t2={Scalar(self.t2)}, "
            f"u={self.u}, v={self.v}, z={self.z})"
        )


def build_omega(p: HermitianParams) -> Form:
    """Ω (half of the 2Ω above)."""

    def pair(a: int, b: int, coeff: Scalar) -> Form:
        return Form.monomial((a,), (b,), coeff) - Form.monomial((b,), (a,), coeff.conj())

    twice = (
        Form.monomial((1,), (1,), I * p.r2)
        + Form.monomial((2,), (2,), I * p.s2)
        + Form.monomial((3,), (3,), I * p.t2)
        + pair(1, 2, p.u)
        + pair(2, 3, p.v)
        + pair(1, 3, p.z)
    )
    return twice.scale(Fraction(1, 2))


def is_positive(p: HermitianParams) -> Positivity:
    if p.determinant() == 0:
        return Positivity.DEGENERATE
    if (
        p.r2 > 0
        and p.r2 * p.s2 > p.u.abs2()
        and p.s2 * p.t2 > p.v.abs2()
        and p.r2 * p.t2 > p.z.abs2()
        and p.determinant() > 0
    ):
        return Positivity.POSITIVE
    return Positivity.INDEFINITE


def omega_cubed(p: HermitianParams) -> Form:
    omega = build_omega(p)
    return wedge(omega, omega, omega)


@dataclass(frozen=True)
class MetricFlags:
    balanced: bool
    sg: bool
    gauduchon: bool


def metric_flags(eqs: StructureEquations, p: HermitianParams) -> MetricFlags:
    """Balanced, strongly Gauduchon and Gauduchon conditions of one metric."""
    if eqs.n != 3:
        raise DomainError(f"Metric conditions are implemented for n = 3, got {eqs.n}.")
    positivity = is_positive(p)
    if positivity is not Positivity.POSITIVE:
        raise NotPositiveError(f"{p} is {positivity.value}.")
    omega = build_omega(p)
    square = wedge(omega, omega)
    del_part, delbar_part = del_and_delbar(eqs, square)
    balanced = not del_part and not delbar_part
    exact = image(delbar_map(eqs, 3, 1))
    sg = member(coordinates(del_part, 3, 2), exact) if del_part else True
    gauduchon = not del_and_delbar(eqs, delbar_part)[0] if delbar_part else True
    flags = MetricFlags(balanced, sg, gauduchon)
    if (balanced and not sg) or (sg and not gauduchon):
        raise ConsistencyAlarm(f"Metric implications fail for {p} on {eqs}: {flags}.")
    logger.debug("Flags %s for %s", flags, p)
    return flags


def top_delbar_vanishes(eqs: StructureEquations) -> bool:
    """∂̄ vanishes on ⋀^{n,k} for k = 0..n."""
    return all(
        not any(any(row) for row in delbar_map(eqs, eqs.n, k).matrix)
        for k in range(eqs.n + 1)
    )


@dataclass(frozen=True)
class ExistenceResult:
    exists: bool
    witness: Optional[HermitianParams] = None

    def __bool__(self):
        return self.exists


def _two_step_balanced(t: TwoStepTriple) -> ExistenceResult:
    lam, x, y = t.lam, t.x, t.y
    if lam:
        lam2 = lam * lam
        if lam2 * lam2 - 4 * x * lam2 - 4 * y * y <= 0:
            return ExistenceResult(False)
        s2 = (lam2 - 2 * x) / 2
        return ExistenceResult(True, HermitianParams(1, s2, 1, Scalar(y / lam, (s2 + x) / lam)))
    if y == 0 and x < 0:
        return ExistenceResult(True, HermitianParams(1, -x, 1))
    return ExistenceResult(False)


def _verified(params: Params, result: ExistenceResult, flag: str) -> ExistenceResult:
    if result.witness is None:
        return result
    flags = metric_flags(equations_of(params), result.witness)
    if not getattr(flags, flag):
        raise VerificationError(f"Witness {result.witness} is not {flag} for {params}.")
    return result


_CLASS_DEPENDENT = frozenset(
    (AlgebraClass.H2, AlgebraClass.H3, AlgebraClass.H4, AlgebraClass.H5)
)


def balanced_exists(target: Union[Params, AlgebraClass]) -> ExistenceResult:
    """Whether the structure (or every structure on the class) has balanced metrics."""
    if isinstance(target, AlgebraClass):
        if target in _CLASS_DEPENDENT:
            raise UnsupportedCaseError(f"Balanced metrics on {target} depend on J.")
        return ExistenceResult(target in (AlgebraClass.H1, AlgebraClass.H6, AlgebraClass.H19_MINUS))
    if isinstance(target, TwoStepTriple):
        result = _two_step_balanced(target)
    elif isinstance(target, ThreeStepTriple):
        result = ExistenceResult(False)
    elif isinstance(target, NonNilpotentParams):
        result = ExistenceResult(not target.epsilon, None if target.epsilon else HermitianParams.diagonal())
    elif isinstance(target, GeneralNilpotentParams):
        if target.complex_parallelizable:
            result = ExistenceResult(True, HermitianParams.diagonal())
        else:
            return balanced_exists(_family_of(target))
    else:
        raise DomainError(f"Unknown parameter family {type(target).__name__}.")
    return _verified(target, result, "balanced")


def _family_of(params: GeneralNilpotentParams) -> Params:
    reduced = reduce_general(params)
    if reduced is None:
        raise UnsupportedCaseError(f"{params} is outside the reducible cases.")
    return reduced


def sg_exists(target: Union[Params, AlgebraClass, StructureEquations]) -> ExistenceResult:
    """Whether strongly Gauduchon metrics exist, with a verified witness."""
    if isinstance(target, AlgebraClass):
        return ExistenceResult(target in SG_CLASSES)
    if isinstance(target, StructureEquations):
        return _sg_of_equations(target)
    if classify(target) not in SG_CLASSES:
        return ExistenceResult(False)
    balanced = balanced_exists(target)
    if balanced:
        return balanced
    if isinstance(target, TwoStepTriple) and target.rho == 1:
        return _verified(target, ExistenceResult(True, HermitianParams.diagonal()), "sg")
    if isinstance(target, GeneralNilpotentParams):
        return sg_exists(_family_of(target))
    return ExistenceResult(False)


def _sg_of_equations(eqs: StructureEquations) -> ExistenceResult:
    algebra_class = identify(eqs)
    if algebra_class not in SG_CLASSES:
        return ExistenceResult(False)
    diagonal = HermitianParams.diagonal()
    if is_abelian(eqs):
        if not _abelian_balanced(eqs, algebra_class):
            return ExistenceResult(False)
        witness = diagonal if metric_flags(eqs, diagonal).balanced else None
        return ExistenceResult(True, witness)
    if metric_flags(eqs, diagonal).sg:
        return ExistenceResult(True, diagonal)
    raise UnsupportedCaseError(f"sG existence for {eqs} needs its family parameters.")


def _abelian_balanced(eqs: StructureEquations, algebra_class: AlgebraClass) -> bool:
    """Abelian structures have sG metrics exactly when they have balanced ones:
    always on h1 and h5, on h3 only for the indefinite sign, never elsewhere.
    """
    if algebra_class in (AlgebraClass.H1, AlgebraClass.H5):
        return True
    if algebra_class is AlgebraClass.H3:
        return _indefinite_differential(eqs)
    return False


def _indefinite_differential(eqs: StructureEquations) -> bool:
    """Whether the (1,1)-form spanning d(g^{1,0}) has an indefinite coefficient matrix.

    The form is a complex multiple of a real one, so dividing by a non-zero
    diagonal entry leaves a Hermitian matrix of rank 2 whose 2x2 principal
    minors sum to the product of its non-zero eigenvalues.
    """
    form = next(f for f in eqs.d_of if f)
    n = eqs.n
    h = [[ZERO] * n for _ in range(n)]
    for monomial, coeff in form:
        (j,), (k,) = monomial.holo, monomial.anti
        h[j - 1][k - 1] = coeff
    pivot = next((h[j][j] for j in range(n) if h[j][j]), None)
    if pivot is None:
        return True
    h = [[c / pivot for c in row] for row in h]
    minors = sum(
        (h[j][j] * h[k][k] - h[j][k] * h[k][j]).re
        for j in range(n)
        for k in range(j + 1, n)
    )
    if minors == 0:
        raise ConsistencyAlarm(f"{eqs} identified as h3 has a degenerate differential.")
    return minors < 0


def sg_without_balanced(params: Params) -> bool:
    """sG metrics exist but balanced ones do not."""
    return bool(sg_exists(params)) and not balanced_exists(params)


def h19_metric(u: ScalarLike, z: ScalarLike) -> HermitianParams:
    """r = 1, v = 0, real u and z, s² = t² = 2(u² + z² + 1)."""
    u, z = _real(u, "u"), _real(z, "z")
    side = 2 * (u * u + z * z + 1)
    return HermitianParams(1, side, side, u, ZERO, z)


def h4_abelian_ansatz(a: ScalarLike, r2: ScalarLike = 1, t2: ScalarLike = 1) -> HermitianParams:
    """2Ω = i r²μ^{11̄} + i|a|²r²μ^{22̄} + i t²μ^{33̄} in the μ-basis of the h4 family."""
    a = Scalar.of(a)
    r2 = _real(r2, "r2")
    return HermitianParams(r2, a.abs2() * r2, t2)


@dataclass(frozen=True)
class SgStepRow:
    params: Params
    algebra_class: AlgebraClass
    sg_exists: bool
    degeneration_step: int

    @property
    def violates(self) -> bool:
        if not self.sg_exists:
            return False
        if self.degeneration_step > 2:
            return True
        return self.algebra_class is not AlgebraClass.H5 and self.degeneration_step != 1


@dataclass(frozen=True)
class SgStepReport:
    rows: Tuple[SgStepRow, ...]

    @property
    def violations(self) -> List[SgStepRow]:
        return [row for row in self.rows if row.violates]

    def __bool__(self):
        return not self.violations


def sg_implies_e2(suite: Sequence[Params]) -> SgStepReport:
    """sG existence against the degeneration step of the Frölicher sequence."""
    rows = []
    for params in suite:
        rows.append(
            SgStepRow(
                params,
                classify(params),
                bool(sg_exists(params)),
                behaviour(equations_of(params)).degeneration_step,
            )
        )
    report = SgStepReport(tuple(rows))
    for row in report.violations:
        logger.error("sG structure %s degenerates at step %d", row.params, row.degeneration_step)
    return report


def is_real_form(omega: Form) -> bool:
    return conjugate(omega) == omega
