from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from nilcomplex import DomainError
from nilcomplex import NotPositiveError
from nilcomplex import UnsupportedCaseError
from nilcomplex.classify import AlgebraClass
from nilcomplex.classify import GeneralNilpotentParams
from nilcomplex.classify import NonNilpotentParams
from nilcomplex.classify import ThreeStepTriple
from nilcomplex.classify import TwoStepTriple
from nilcomplex.classify import classify
from nilcomplex.classify import equations_of
from nilcomplex.deform import deformed_h4_equations
from nilcomplex.exterior import I
from nilcomplex.exterior import Form
from nilcomplex.exterior import Scalar
from nilcomplex.hermitian import HermitianParams
from nilcomplex.hermitian import Positivity
from nilcomplex.hermitian import balanced_exists
from nilcomplex.hermitian import build_omega
from nilcomplex.hermitian import h19_metric
from nilcomplex.hermitian import is_positive
from nilcomplex.hermitian import is_real_form
from nilcomplex.hermitian import metric_flags
from nilcomplex.hermitian import omega_cubed
from nilcomplex.hermitian import sg_exists
from nilcomplex.hermitian import sg_implies_e2
from nilcomplex.hermitian import sg_without_balanced
from nilcomplex.hermitian import h4_abelian_ansatz
from nilcomplex.hermitian import top_delbar_vanishes
from nilcomplex.liealg import is_abelian
from nilcomplex.liealg import rebase

from .corpus import PARAMS

QUARTER = Fraction(1, 4)

bounded = st.fractions(min_value=-QUARTER, max_value=QUARTER, max_denominator=8)
sides = st.fractions(min_value=1, max_value=4, max_denominator=8)
off_diagonal = st.builds(Scalar, bounded, bounded)
# diagonally dominant, hence positive
metrics = st.builds(HermitianParams, sides, sides, sides, off_diagonal, off_diagonal, off_diagonal)

reals = st.fractions(min_value=-2, max_value=2, max_denominator=4)
non_negative = st.fractions(min_value=0, max_value=2, max_denominator=4)
positive = st.fractions(min_value=QUARTER, max_value=2, max_denominator=4)
bits = st.sampled_from([0, 1])


def two_step(rho):
    return st.builds(TwoStepTriple, rho, non_negative, st.builds(Scalar, reals, non_negative))


def three_step(rho):
    return st.builds(ThreeStepTriple, rho, st.builds(Scalar, reals, reals), positive)


STRUCTURES = {
    "two-step": two_step(bits),
    "three-step": three_step(bits),
    "non-nilpotent": st.builds(NonNilpotentParams, bits, st.sampled_from([1, -1])),
    "general": st.builds(
        GeneralNilpotentParams,
        bits,
        bits,
        *[st.builds(Scalar, reals, reals)] * 4,
    ),
}
ABELIAN = st.one_of(two_step(st.just(0)), three_step(st.just(0)))


def w(j, coeff=1):
    return Form.monomial((j,), (), coeff)


def test_positivity():
    assert is_positive(HermitianParams.diagonal()) is Positivity.POSITIVE
    assert is_positive(HermitianParams(1, 1, 1, u=1)) is Positivity.DEGENERATE
    assert is_positive(HermitianParams(-1, 1, 1)) is Positivity.INDEFINITE
    assert is_positive(HermitianParams(1, 3, 3, u=1, z=1)) is Positivity.POSITIVE


def test_hermitian_params_are_real_on_the_diagonal():
    with pytest.raises(DomainError):
        HermitianParams(I, 1, 1)

    assert HermitianParams(1, 2, 3).scale(2) == HermitianParams(2, 4, 6)


def test_omega_is_real():
    p = HermitianParams(1, 2, 3, u=1 + I, v=Scalar(0, Fraction(1, 2)), z=-1)
    assert is_real_form(build_omega(p))
    assert omega_cubed(p) != Form()


def test_degenerate_ansatz():
    p = h4_abelian_ansatz(0)
    assert is_positive(p) is Positivity.DEGENERATE
    assert omega_cubed(p) == Form()


def test_ansatz_is_balanced_on_the_deformed_h4():
    a = Scalar(Fraction(1, 2))
    flags = metric_flags(deformed_h4_equations(a), h4_abelian_ansatz(a))
    assert flags.balanced
    assert flags.sg
    assert flags.gauduchon


def test_metric_flags_need_positive_metrics(iwasawa):
    with pytest.raises(NotPositiveError):
        metric_flags(iwasawa, HermitianParams(-1, 1, 1))


def test_complex_parallelizable_structure_is_balanced(iwasawa):
    flags = metric_flags(iwasawa, HermitianParams.diagonal())
    assert flags.balanced and flags.sg and flags.gauduchon
    assert not top_delbar_vanishes(iwasawa)
    assert top_delbar_vanishes(equations_of(TwoStepTriple(0, 0, 0)))


def test_balanced_two_step():
    result = balanced_exists(TwoStepTriple(1, 1, 0))
    assert result
    assert result.witness == HermitianParams(1, Fraction(1, 2), 1, Scalar(0, Fraction(1, 2)))

    assert balanced_exists(TwoStepTriple(1, 0, Fraction(-1, 8)))
    assert not balanced_exists(TwoStepTriple(1, 0, 1))
    assert not balanced_exists(TwoStepTriple(0, 1, Fraction(1, 4)))
    assert not balanced_exists(ThreeStepTriple(1, 1, 1))


def test_balanced_by_class():
    assert balanced_exists(AlgebraClass.H6)
    assert balanced_exists(AlgebraClass.H19_MINUS)
    assert not balanced_exists(AlgebraClass.H7)

    with pytest.raises(UnsupportedCaseError):
        balanced_exists(AlgebraClass.H5)


def test_balanced_general_and_non_nilpotent():
    assert balanced_exists(GeneralNilpotentParams(0, 1)).witness == HermitianParams.diagonal()
    assert balanced_exists(NonNilpotentParams(0, 1))
    assert not balanced_exists(NonNilpotentParams(1, 1))

    with pytest.raises(UnsupportedCaseError):
        balanced_exists(GeneralNilpotentParams(0, 1, 0, 1, 1, 0))


def test_sg_exists():
    assert sg_exists(AlgebraClass.H2)
    assert not sg_exists(AlgebraClass.H7)
    assert not sg_exists(ThreeStepTriple(0, 1, Fraction(1, 4)))
    assert not sg_exists(TwoStepTriple(0, 1, Fraction(1, 4)))

    result = sg_exists(TwoStepTriple(1, 0, 1))
    assert result
    assert result.witness == HermitianParams.diagonal()
    assert sg_without_balanced(TwoStepTriple(1, 0, 1))
    assert not sg_without_balanced(TwoStepTriple(1, 1, 0))


def test_sg_exists_on_equations(iwasawa):
    assert sg_exists(iwasawa)
    assert not sg_exists(equations_of(ThreeStepTriple(1, 1, 1)))


def test_h19_metric():
    p = h19_metric(1, 2)
    assert p == HermitianParams(1, 12, 12, 1, 0, 2)
    assert is_positive(p) is Positivity.POSITIVE


def test_sg_structures_degenerate_early():
    report = sg_implies_e2(PARAMS)
    assert report
    assert report.violations == []
    assert len(report.rows) == len(PARAMS)


@pytest.mark.parametrize("triple, expected", [
    (TwoStepTriple(0, 0, 0), False),
    (TwoStepTriple(0, 0, 1), False),
    (TwoStepTriple(0, 0, -1), True),
    (TwoStepTriple(0, 0, I), False),
    (TwoStepTriple(0, 1, 0), True),
    (TwoStepTriple(0, 1, -QUARTER), True),
    (TwoStepTriple(0, 1, QUARTER), False),
    (TwoStepTriple(0, Fraction(1, 2), I), False),
    (ThreeStepTriple(0, 1, 1), False),
])
def test_sg_exists_on_abelian_equations(triple, expected):
    eqs = equations_of(triple)
    result = sg_exists(eqs)
    assert bool(result) is expected
    assert bool(result) is bool(sg_exists(triple))
    if result.witness is not None:
        assert metric_flags(eqs, result.witness).balanced


def test_sg_exists_on_rebased_h3():
    minus = equations_of(TwoStepTriple(0, 0, -1))
    assert sg_exists(rebase(minus, [w(1), w(2), w(3, I)]))
    assert sg_exists(rebase(minus, [w(1), w(1) + w(2), w(3, 2)]))

    plus = equations_of(TwoStepTriple(0, 0, 1))
    assert not sg_exists(rebase(plus, [w(1), w(1) + w(2), w(3)]))
    assert not sg_exists(rebase(plus, [w(1), w(2), w(3, 1 + I)]))


@pytest.mark.parametrize("triple, cls, expected", [
    (TwoStepTriple(1, 1, Scalar(0, Fraction(2, 5))), AlgebraClass.H2, True),
    (TwoStepTriple(1, 1, Scalar(0, Fraction(1, 2))), AlgebraClass.H2, False),
    (TwoStepTriple(1, 1, Fraction(1, 5)), AlgebraClass.H4, True),
    (TwoStepTriple(1, 1, QUARTER), AlgebraClass.H4, False),
])
def test_balanced_boundaries(triple, cls, expected):
    assert classify(triple) is cls
    result = balanced_exists(triple)
    assert bool(result) is expected
    if expected:
        assert metric_flags(equations_of(triple), result.witness).balanced
    assert sg_exists(triple)


@pytest.mark.parametrize("sign", [1, -1])
def test_h19_metric_flags(sign):
    eqs = equations_of(NonNilpotentParams(0, sign))

    flags = metric_flags(eqs, h19_metric(0, 0))
    assert flags.balanced

    flags = metric_flags(eqs, h19_metric(0, 1))
    assert flags.sg
    assert not flags.balanced

    flags = metric_flags(eqs, h19_metric(1, 0))
    assert not flags.sg


@pytest.mark.parametrize("family", sorted(STRUCTURES))
@settings(max_examples=100, deadline=None)
@given(data=st.data(), metric=metrics)
def test_balanced_implies_sg_implies_gauduchon(family, data, metric):
    eqs = equations_of(data.draw(STRUCTURES[family]))
    assert is_positive(metric) is Positivity.POSITIVE
    flags = metric_flags(eqs, metric)
    assert flags.sg or not flags.balanced
    assert flags.gauduchon or not flags.sg


@settings(max_examples=100, deadline=None)
@given(ABELIAN, metrics)
def test_abelian_sg_metrics_are_balanced(triple, metric):
    eqs = equations_of(triple)
    assert is_abelian(eqs)
    assert top_delbar_vanishes(eqs)
    flags = metric_flags(eqs, metric)
    assert flags.sg is flags.balanced
