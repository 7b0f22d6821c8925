"""Explicit one-parameter families of complex structures.

Each family maps an exact parameter to structure equations together with
the parameter record (triple) that classify and hermitian understand:

- ``h5-drift`` (λ fixed, t ∈ [0, 1/2)): (ρ, λ, D) = (1, λ, i·d(t, λ)),
  moving off a degenerate h5 structure along imaginary D,
- ``h15-sine`` (s ∈ [−1, 1]): dω² = ω^{11̄},
  dω³ = (1−s)/2 ω^{12} + 2ω^{12̄} + (1+s)/4 ω^{21̄},
- ``h5-lambda`` (λ ≥ 0, λ² < 1/2) and ``h5-x`` (x > −1/4): real almost
  complex matrices on h5 complexified to (1, λ, 0) and (1, 0, x),
- ``h4-abelian`` (|a| < 1): the deformation μ¹ = η¹ + aη^{1̄} − iaη^{2̄} of
  the abelian structure of h4, normalised in three steps to (1, 1/|a|, D).

Sweeps evaluate rows on worker threads and return them sorted by
parameter; a failing row carries an `ErrorInfo` instead of aborting.
"""
import logging
import math
import queue
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from threading import RLock
from traceback import format_tb
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from .classify import REAL_ALGEBRAS
from .classify import AlgebraClass
from .classify import GeneralNilpotentParams
from .classify import Params
from .classify import ThreeStepTriple
from .classify import TwoStepTriple
from .classify import classify
from .classify import equations_of
from .classify import identify
from .classify import reduce_eq4
from .errors import ConsistencyAlarm
from .errors import DomainError
from .errors import ErrorInfo
from .errors import UnrepresentableError
from .errors import UnsupportedCaseError
from .errors import VerificationError
from .exterior import I
from .exterior import ONE
from .exterior import ZERO
from .exterior import Form
from .exterior import Scalar
from .exterior import ScalarLike
from .exterior import from_coordinates
from .exterior import generator
from .exterior import rational_sqrt
from .exterior import real_basis
from .hermitian import balanced_exists
from .hermitian import sg_exists
from .liealg import AlmostComplexMatrix
from .liealg import RealStructureEquations
from .liealg import StructureEquations
from .liealg import complexify
from .liealg import declare_holomorphic
from .liealg import realify
from .liealg import rebase
from .liealg import structure
from .liealg import verify_approximate
from .parsing import parse_salamon
from .spectral import Dims
from .spectral import einfty_check
from .spectral import sequence_of

logger = logging.getLogger(__name__)

PAGES = (1, 2, 3, 4)


class FamilyTag(str, Enum):
    H5_DRIFT = "h5-drift"
    H15_SINE = "h15-sine"
    H5_LAMBDA = "h5-lambda"
    H5_X = "h5-x"
    H4_ABELIAN = "h4-abelian"

    def __str__(self):
        return self.value


DOMAINS = {
    FamilyTag.H5_DRIFT: "t ∈ [0, 1/2), with λ ≥ 0, λ ≠ 1 fixed",
    FamilyTag.H15_SINE: "s ∈ [-1, 1]",
    FamilyTag.H5_LAMBDA: "λ ≥ 0 with λ² < 1/2",
    FamilyTag.H5_X: "x > -1/4",
    FamilyTag.H4_ABELIAN: "a Gaussian rational with |a| < 1",
}


def _real_parameter(value: ScalarLike, tag: FamilyTag) -> Fraction:
    scalar = Scalar.of(value)
    if not scalar.is_real:
        raise DomainError(f"{tag} takes a real parameter, got {scalar}.")
    return scalar.re


@dataclass(frozen=True)
class Family:
    """A deformation family; only ``h5-drift`` takes the extra λ.

    Usage:
        family = Family(FamilyTag.H15_SINE)
        member = instantiate(family, Fraction(1, 2))
        rows = sweep(family, [-1, 0, 1])
    """

    tag: FamilyTag
    lam: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "tag", FamilyTag(self.tag))
        if self.tag is FamilyTag.H5_DRIFT:
            if self.lam is None:
                raise DomainError("h5-drift needs lambda.")
            lam = _real_parameter(self.lam, self.tag)
            if lam < 0 or lam == 1:
                raise DomainError(f"h5-drift needs lambda ≥ 0 and ≠ 1, got {lam}.")
            object.__setattr__(self, "lam", lam)
        elif self.lam is not None:
            raise DomainError(f"{self.tag} takes no lambda.")

    @property
    def domain(self) -> str:
        return DOMAINS[self.tag]

    def check(self, param: ScalarLike) -> Scalar:
        """The parameter as a Scalar; DomainError outside the family's domain."""
        tag = self.tag
        value = Scalar.of(param)
        if tag is FamilyTag.H4_ABELIAN:
            inside = value.abs2() < 1
        else:
            v = _real_parameter(value, tag)
            if tag is FamilyTag.H5_DRIFT:
                inside = 0 <= v < Fraction(1, 2)
            elif tag is FamilyTag.H15_SINE:
                inside = -1 <= v <= 1
            elif tag is FamilyTag.H5_LAMBDA:
                inside = v >= 0 and v * v < Fraction(1, 2)
            else:
                inside = v > Fraction(-1, 4)
        if not inside:
            raise DomainError(f"{value} is outside {tag}: {self.domain}.")
        return value

    def __str__(self):
        if self.lam is None:
            return str(self.tag)
        return f"{self.tag}(lambda={Scalar(self.lam)})"


@dataclass(frozen=True)
class NormalisationStep:
    label: str
    equations: StructureEquations


@dataclass(frozen=True)
class FamilyMember:
    """One family member.

    `raw` are the equations in the family's own basis, `chain` the
    successive basis changes ending in the normal form, `triple` the
    declared normal-form parameters (None when they need an irrational
    |a|) and `params` the best exact parameter record.
    """

    family: Family
    param: Scalar
    raw: StructureEquations
    chain: Tuple[NormalisationStep, ...]
    triple: Optional[Params]
    params: Params

    def require_triple(self) -> Params:
        if self.triple is None:
            raise UnrepresentableError(f"{self.family} at {self.param} has no rational normal form.")
        return self.triple


def drift(t: Fraction, lam: Fraction) -> Fraction:
    """d(t, λ) ≥ 0, the imaginary part of D along ``h5-drift``."""
    lam2 = lam * lam
    if lam == 0:
        return t
    if lam2 < Fraction(1, 2):
        return t * lam2 / 4
    if lam2 < 1:
        return t * (1 - lam2) / 4
    return -t * (1 - lam2) / 4


def _w(holo=(), anti=(), coeff: ScalarLike = 1) -> Form:
    return Form.monomial(holo, anti, coeff)


def _check_equal(computed: StructureEquations, expected: StructureEquations, what: str):
    if computed != expected:
        raise VerificationError(f"{what}: got {computed}, expected {expected}.")


def _h5_drift(family: Family, t: Fraction) -> FamilyMember:
    triple = TwoStepTriple(1, family.lam, Scalar(0, drift(t, family.lam)))
    raw = equations_of(triple)
    chain = (NormalisationStep("deformed basis", raw),)
    return FamilyMember(family, Scalar(t), raw, chain, triple, triple)


def h15_equations(s: Fraction) -> StructureEquations:
    d3 = _w((1, 2), (), (1 - s) / 2) + _w((1,), (2,), 2) + _w((2,), (1,), (1 + s) / 4)
    return structure([Form(), _w((1,), (1,)), d3], 3)


def _h15_sine(family: Family, s: Fraction) -> FamilyMember:
    raw = h15_equations(s)
    if s == 1:
        triple = ThreeStepTriple(0, ONE, Fraction(1, 4))
        factor = Fraction(1, 2)
    else:
        triple = ThreeStepTriple(1, Scalar(4 / (1 - s)), (1 + s) / (2 * (1 - s)))
        factor = 2 / (1 - s)
    normalised = rebase(raw, [generator(1), generator(2), generator(3, coeff=factor)])
    _check_equal(normalised, equations_of(triple), f"h15-sine at s={s}")
    chain = (
        NormalisationStep("raw", raw),
        NormalisationStep(f"w3 scaled by {Scalar(factor)}", normalised),
    )
    return FamilyMember(family, Scalar(s), raw, chain, triple, triple)


# Real almost complex matrices on h5, rows are J e^k.


def _h5_lambda_matrix(lam):
    mu = 1 / (1 - lam)
    return [
        [0, -1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, -2 * mu, 0, -(1 + lam) * mu, 0, 0],
        [-2 / (1 + lam), 0, (1 - lam) / (1 + lam), 0, 0, 0],
        [0, 0, 0, 0, 0, -1],
        [0, 0, 0, 0, 1, 0],
    ]


def _h5_x_matrix(x, r):
    return [
        [0, (4 * x - 1) / r, 0, 2 * x / r, 0, 0],
        [r, 0, 2 * x / r, 0, 0, 0],
        [0, -2 * r, 0, -r, 0, 0],
        [-2 * r, 0, (1 - 4 * x) / r, 0, 0, 0],
        [0, 0, 0, 0, 0, -r],
        [0, 0, 0, 0, 1 / r, 0],
    ]


def _unit(k: int, j: int) -> int:
    return 1 if k == j else 0


def _h5_lambda_coefficients(lam, i):
    """(1,0)-forms e^{2k−1} − iJe^{2k−1}, the last one scaled by 1 + λ."""
    J = _h5_lambda_matrix(lam)
    rows = [[_unit(k, j) - i * J[k][j] for j in range(6)] for k in (0, 2, 4)]
    rows[2] = [(1 + lam) * c for c in rows[2]]
    return rows


def _h5_x_coefficients(x, r, i):
    J = _h5_x_matrix(x, r)
    first = [i * (_unit(1, j) - i * J[1][j]) for j in range(6)]
    second = [(_unit(2, j) - i * J[2][j]) / r for j in range(6)]
    third = [_unit(4, j) - i * J[4][j] for j in range(6)]
    return [first, second, third]


def _h5_real() -> RealStructureEquations:
    return parse_salamon(REAL_ALGEBRAS[AlgebraClass.H5])


def _exact_complexify(matrix, coefficients) -> StructureEquations:
    J = AlmostComplexMatrix(tuple(tuple(Scalar.of(c) for c in row) for row in matrix))
    forms = [from_coordinates(row, real_basis(6, 1)) for row in coefficients]
    return complexify(_h5_real(), J, forms)


def _h5_lambda(family: Family, lam: Fraction) -> FamilyMember:
    triple = TwoStepTriple(1, lam, ZERO)
    raw = _exact_complexify(_h5_lambda_matrix(lam), _h5_lambda_coefficients(lam, I))
    _check_equal(raw, equations_of(triple), f"h5-lambda at {lam}")
    chain = (NormalisationStep("e^{2k-1} - iJe^{2k-1}", raw),)
    return FamilyMember(family, Scalar(lam), raw, chain, triple, triple)


def _h5_x(family: Family, x: Fraction) -> FamilyMember:
    triple = TwoStepTriple(1, 0, Scalar(x))
    r = rational_sqrt(1 + 4 * x)
    if r is None:
        raw = equations_of(triple)
        label = "normal form"
    else:
        raw = _exact_complexify(_h5_x_matrix(x, r), _h5_x_coefficients(x, r, I))
        _check_equal(raw, equations_of(triple), f"h5-x at {x}")
        label = "complexified real basis"
    chain = (NormalisationStep(label, raw),)
    return FamilyMember(family, Scalar(x), raw, chain, triple, triple)


ABELIAN_H4 = TwoStepTriple(0, 1, Fraction(1, 4))


def abelian_h4_eta() -> StructureEquations:
    """dη³ = (i/2)η^{11̄} + (1/2)η^{12̄} + (1/2)η^{21̄}."""
    forms = [
        generator(1, coeff=2) + generator(2),
        generator(1, coeff=4 * I) + generator(2, coeff=I),
        generator(3, coeff=2 * I),
    ]
    return rebase(equations_of(ABELIAN_H4), forms)


def deformed_h4_equations(a: Scalar) -> StructureEquations:
    """2(1 − |a|²)dμ³ = 2āμ^{12} + iμ^{11̄} + μ^{12̄} + μ^{21̄} − i|a|²μ^{22̄}."""
    scale = 1 / (2 * (1 - a.abs2()))
    d3 = (
        _w((1, 2), (), 2 * a.conj())
        + _w((1,), (1,), I)
        + _w((1,), (2,))
        + _w((2,), (1,))
        + _w((2,), (2,), -I * a.abs2())
    ).scale(scale)
    return structure([Form(), Form(), d3], 3)


def _h4_abelian(family: Family, a: Scalar) -> FamilyMember:
    eta = abelian_h4_eta()
    mu = [
        generator(1) + generator(1, barred=True, coeff=a) + generator(2, barred=True, coeff=-I * a),
        generator(2),
        generator(3),
    ]
    raw = declare_holomorphic(eta, mu)
    _check_equal(raw, deformed_h4_equations(a), f"h4-abelian at {a}")
    chain = [NormalisationStep("abelian eta-basis", eta), NormalisationStep("mu-basis", raw)]
    if not a:
        return FamilyMember(family, a, raw, tuple(chain), ABELIAN_H4, ABELIAN_H4)

    norm = 1 - a.abs2()
    sigma = rebase(raw, [generator(1), generator(2), generator(3, coeff=norm / a.conj())])
    tau = rebase(
        sigma,
        [
            generator(1) + generator(2, coeff=-I),
            generator(2, coeff=-2 * I * a.conj()),
            generator(3, coeff=-2 * I * a.conj()),
        ],
    )
    general = GeneralNilpotentParams(0, 1, ONE, -1 / a, ZERO, Scalar(norm / (4 * a.abs2())))
    _check_equal(tau, equations_of(general), f"h4-abelian tau-basis at {a}")
    chain += [
        NormalisationStep("w3 scaled by (1-|a|^2)/conj(a)", sigma),
        NormalisationStep("tau-basis", tau),
    ]
    try:
        triple = reduce_eq4(1, general.B, general.D)
    except UnrepresentableError:
        logger.debug("h4-abelian at %s: |a| is irrational", a)
        return FamilyMember(family, a, raw, tuple(chain), None, general)
    chain.append(NormalisationStep("rotated", equations_of(triple)))
    return FamilyMember(family, a, raw, tuple(chain), triple, triple)


_BUILDERS = {
    FamilyTag.H5_DRIFT: _h5_drift,
    FamilyTag.H15_SINE: _h15_sine,
    FamilyTag.H5_LAMBDA: _h5_lambda,
    FamilyTag.H5_X: _h5_x,
}


def instantiate(family: Family, param: ScalarLike) -> FamilyMember:
    value = family.check(param)
    if family.tag is FamilyTag.H4_ABELIAN:
        member = _h4_abelian(family, value)
    else:
        member = _BUILDERS[family.tag](family, value.re)
    logger.debug("%s at %s: %s", family, value, member.raw)
    return member


# Approximate fixtures


@dataclass(frozen=True)
class RealFixture:
    """A real algebra, J acting on 1-forms by rows and n (1,0)-forms."""

    real: RealStructureEquations
    J: np.ndarray
    forms: np.ndarray
    expected: StructureEquations

    def residual(self) -> float:
        return verify_approximate(self.real, self.J, self.forms, self.expected)


def _drift_fixture(family: Family, t: Fraction) -> RealFixture:
    lam = family.lam
    if lam > 1:
        raise UnsupportedCaseError("Real fixtures of h5-drift need lambda < 1.")
    e = [generator(k) for k in range(1, 7)]
    basis_at_zero = [
        e[0] + e[1].scale(I),
        (e[2] - e[0]).scale(1 / (1 + lam)) + (e[1] + e[3]).scale(I / (1 - lam)),
        e[4] + e[5].scale(I),
    ]
    real = realify(equations_of(TwoStepTriple(1, lam, ZERO)), basis_at_zero)

    l, d = float(lam), float(drift(t, lam))
    m1 = 1 - l * l
    a = math.sqrt(m1 * m1 - 4 * d * d)
    J = np.array(
        [
            [4 * d * (1 - l) / a**2, -m1 / a, -2 * d * (1 - l) ** 2 / a**2, 8 * d * d * (1 - l) / a**3, 0, 0],
            [m1 / a, 0, 0, 2 * d * m1 / a**2, 0, 0],
            [-2 * d / (1 - l) ** 2, -2 * a / (m1 * (1 - l)), 0, -((1 + l) ** 2) / a, 0, 0],
            [-2 * (1 - l) / a, 2 * d / m1, (1 - l) ** 2 / a, -4 * d * (1 - l) / a**2, 0, 0],
            [0, 0, 0, 0, 2 * d / m1, -(4 * d * d + m1 * m1) / (a * m1)],
            [0, 0, 0, 0, a / m1, -2 * d / m1],
        ]
    )
    forms = np.array(
        [
            [m1 / a, 1j, 0, 2 * d * m1 / a**2, 0, 0],
            [
                -(1 - l) / a + 1j * 2 * d / (a * (1 - l)),
                1j / (1 - l),
                (1 - l) / a,
                -2 * d * (1 - l) / a**2 + 1j * m1 * m1 / (a * a * (1 - l)),
                0,
                0,
            ],
            [0, 0, 0, 0, 1, -2 * d / a + 1j * m1 / a],
        ]
    )
    return RealFixture(real, J, forms, instantiate(family, t).raw)


def _sine_fixture(family: Family, s: Fraction) -> RealFixture:
    v = float(s)
    a1 = math.sqrt(3 * (3 - v) * (7 + 3 * v) / ((5 + v) * (11 - v)))
    a3 = math.sqrt(3 * (3 - v) * (11 - v) / ((5 + v) * (7 + 3 * v)))
    a5 = math.sqrt((11 - v) * (7 + 3 * v) / (3 * (3 - v) * (5 + v)))
    J = np.array(
        [
            [0, -a1, 0, 0, 0, 0],
            [1 / a1, 0, 0, 0, 0, 0],
            [0, 0, 0, a3, 0, 0],
            [0, 0, -1 / a3, 0, 0, 0],
            [0, 0, 0, 0, 0, -a5],
            [0, 0, 0, 0, 1 / a5, 0],
        ]
    )
    p = (5 + v) * (7 + 3 * v)
    root_a = math.sqrt((11 - v) * (5 + v))
    root_b = math.sqrt(3 * (3 - v) * (7 + 3 * v))
    forms = np.array(
        [
            [root_a / 4, 1j * root_b / 4, 0, 0, 0, 0],
            [0, 0, p / 8, -1j * root_a * root_b / 8, 0, 0],
            [0, 0, 0, 0, p * 3 * (3 - v) * root_a / 128, 1j * p * (11 - v) * root_b / 128],
        ]
    )
    real = parse_salamon(REAL_ALGEBRAS[AlgebraClass.H15])
    return RealFixture(real, J, forms, h15_equations(s))


def _lambda_fixture(family: Family, lam: Fraction) -> RealFixture:
    l = float(lam)
    return RealFixture(
        _h5_real(),
        np.array(_h5_lambda_matrix(l), dtype=float),
        np.array(_h5_lambda_coefficients(l, 1j), dtype=complex),
        equations_of(TwoStepTriple(1, lam, ZERO)),
    )


def _x_fixture(family: Family, x: Fraction) -> RealFixture:
    v = float(x)
    r = math.sqrt(1 + 4 * v)
    return RealFixture(
        _h5_real(),
        np.array(_h5_x_matrix(v, r), dtype=float),
        np.array(_h5_x_coefficients(v, r, 1j), dtype=complex),
        equations_of(TwoStepTriple(1, 0, Scalar(x))),
    )


_FIXTURES = {
    FamilyTag.H5_DRIFT: _drift_fixture,
    FamilyTag.H15_SINE: _sine_fixture,
    FamilyTag.H5_LAMBDA: _lambda_fixture,
    FamilyTag.H5_X: _x_fixture,
}


def real_fixture(family: Family, param: ScalarLike) -> RealFixture:
    """Floating-point real J of a family member; never used for ranks."""
    value = family.check(param)
    if family.tag not in _FIXTURES:
        raise UnsupportedCaseError(f"{family} has no real fixture.")
    return _FIXTURES[family.tag](family, value.re)


# Sweeps


@dataclass(frozen=True)
class SweepRow:
    param: Scalar
    triple: Optional[Params] = None
    algebra_class: Optional[AlgebraClass] = None
    dims: Tuple[Dims, ...] = ()
    behaviour: str = ""
    degeneration_step: int = 0
    sg_exists: Optional[bool] = None
    balanced_exists: Optional[bool] = None
    error: Optional[ErrorInfo] = None

    @property
    def failed(self) -> bool:
        return self.error is not None

    def dim(self, r: int, p: int, q: int) -> int:
        return self.dims[r - 1][p][q]


def _existence(check, params: Params) -> Optional[bool]:
    try:
        return bool(check(params))
    except UnsupportedCaseError as error:
        logger.info("%s", error)
        return None


def compute_row(family: Family, param: ScalarLike) -> SweepRow:
    """One consistent row; raises on any failure."""
    member = instantiate(family, param)
    params = member.params
    algebra_class = classify(params)
    identified = identify(member.raw)
    if identified is not algebra_class:
        raise ConsistencyAlarm(
            f"{family} at {member.param}: classified {algebra_class}, identified {identified}."
        )
    sequence = sequence_of(member.raw)
    if not einfty_check(member.raw):
        raise ConsistencyAlarm(f"E_inf differs from the Betti numbers at {member.param}.")
    signature = sequence.behaviour()
    return SweepRow(
        param=member.param,
        triple=member.triple,
        algebra_class=algebra_class,
        dims=tuple(sequence.dims(r) for r in PAGES),
        behaviour=signature.text,
        degeneration_step=signature.degeneration_step,
        sg_exists=_existence(sg_exists, params),
        balanced_exists=_existence(balanced_exists, params),
    )


def sweep_row(family: Family, param: Scalar) -> SweepRow:
    try:
        return compute_row(family, param)
    except Exception as error:
        logger.warning("Sweep row %s of %s failed: %s", param, family, error)
        return SweepRow(
            param=param,
            error=ErrorInfo(
                error=type(error),
                value=str(error),
                traceback="".join(format_tb(error.__traceback__)),
            ),
        )


def _order(value: Scalar) -> Tuple[Fraction, Fraction]:
    return value.re, value.im


def sweep(family: Family, params: Iterable[ScalarLike], workers: int = 4) -> List[SweepRow]:
    """Rows for every parameter, sorted by parameter.

    All parameters are checked against the family's domain before any
    row is computed.
    """
    values = [family.check(param) for param in params]
    tasks: "queue.Queue[Tuple[int, Scalar]]" = queue.Queue()
    for index, value in enumerate(values):
        tasks.put((index, value))
    rows: List[Optional[SweepRow]] = [None] * len(values)
    lock = RLock()

    def worker():
        while True:
            try:
                index, value = tasks.get_nowait()
            except queue.Empty:
                return
            row = sweep_row(family, value)
            with lock:
                rows[index] = row

    logger.info("Sweeping %s over %d parameters with %d workers", family, len(values), workers)
    threads = [
        threading.Thread(target=worker, daemon=True)
        for _ in range(max(1, min(workers, len(values))))
    ]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    return sorted(rows, key=lambda row: _order(row.param))


# Semicontinuity


@dataclass(frozen=True)
class Jump:
    """A cell where the center value is above ("upper") or below ("lower")
    every nearby value."""

    r: int
    p: int
    q: int
    center: int
    nearby: Tuple[int, ...]
    kind: str


@dataclass(frozen=True)
class SemicontinuityReport:
    family: Family
    center: Scalar
    nearby: Tuple[Scalar, ...]
    center_step: int
    nearby_steps: Tuple[int, ...]
    jumps: Tuple[Jump, ...]

    def jump(self, r: int, p: int, q: int) -> Optional[Jump]:
        return next((j for j in self.jumps if (j.r, j.p, j.q) == (r, p, q)), None)

    @property
    def step_jump(self) -> Optional[str]:
        """"upper"/"lower" when the center degenerates later/earlier than all nearby."""
        if not self.nearby_steps:
            return None
        if all(self.center_step > s for s in self.nearby_steps):
            return "upper"
        if all(self.center_step < s for s in self.nearby_steps):
            return "lower"
        return None


def _page_dims(family: Family, value: Scalar) -> Tuple[Tuple[Dims, ...], int]:
    eqs = instantiate(family, value).raw
    sequence = sequence_of(eqs)
    return tuple(sequence.dims(r) for r in PAGES), sequence.behaviour().degeneration_step


def semicontinuity_report(
    family: Family, center: ScalarLike, nearby: Sequence[ScalarLike]
) -> SemicontinuityReport:
    """dim E_r^{p,q} at the center against nearby parameters, r = 1..4."""
    center_value = family.check(center)
    nearby_values = tuple(family.check(v) for v in nearby)
    center_dims, center_step = _page_dims(family, center_value)
    others = [_page_dims(family, v) for v in nearby_values]

    jumps = []
    n = len(center_dims[0]) - 1
    for r in PAGES:
        for p in range(n + 1):
            for q in range(n + 1):
                here = center_dims[r - 1][p][q]
                there = tuple(dims[r - 1][p][q] for dims, _ in others)
                if there and all(here > v for v in there):
                    jumps.append(Jump(r, p, q, here, there, "upper"))
                elif there and all(here < v for v in there):
                    jumps.append(Jump(r, p, q, here, there, "lower"))
    report = SemicontinuityReport(
        family,
        center_value,
        nearby_values,
        center_step,
        tuple(step for _, step in others),
        tuple(jumps),
    )
    logger.info("%s at %s: %d jumping cells", family, center_value, len(jumps))
    return report
