from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from nilcomplex import DomainError
from nilcomplex import UnsupportedCaseError
from nilcomplex.classify import REAL_ALGEBRAS
from nilcomplex.classify import AlgebraClass
from nilcomplex.classify import GeneralNilpotentParams
from nilcomplex.classify import NonNilpotentParams
from nilcomplex.classify import ThreeStepTriple
from nilcomplex.classify import TwoStepTriple
from nilcomplex.classify import automorphism_witness
from nilcomplex.classify import canonical_form
from nilcomplex.classify import classify
from nilcomplex.classify import equations_of
from nilcomplex.classify import equivalent_2step
from nilcomplex.classify import family_two_region
from nilcomplex.classify import fingerprint_table
from nilcomplex.classify import identify
from nilcomplex.classify import reduce_eq4
from nilcomplex.classify import reduce_general
from nilcomplex.classify import verify_witness
from nilcomplex.exterior import I
from nilcomplex.exterior import Scalar
from nilcomplex.exterior import generator
from nilcomplex.liealg import rebase
from nilcomplex.parsing import parse_salamon

from .corpus import CORPUS
from .corpus import corpus_id

EQUIVALENT = (
    TwoStepTriple(1, Fraction(1, 2), Fraction(5, 16)),
    TwoStepTriple(1, 0, Scalar(Fraction(3, 16), Fraction(1, 4))),
)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@pytest.mark.parametrize("params, cls, expected", CORPUS, ids=[corpus_id(e) for e in CORPUS])
def test_classify(params, cls, expected):
    assert str(classify(params)) == cls


@pytest.mark.parametrize("params, cls, expected", CORPUS, ids=[corpus_id(e) for e in CORPUS])
def test_identify_agrees_with_classify(params, cls, expected):
    assert identify(equations_of(params)) is classify(params)


@pytest.mark.parametrize("params", [
    GeneralNilpotentParams(0, 0),
    TwoStepTriple(1, 1, 0),
    TwoStepTriple(0, 0, 0),
    ThreeStepTriple(1, 0, 1),
])
def test_identify_after_change_of_basis(params):
    forms = [
        generator(1),
        generator(1) + generator(2),
        generator(2) + generator(3, coeff=2),
    ]
    assert identify(rebase(equations_of(params), forms)) is classify(params)


@pytest.mark.parametrize("cls", list(AlgebraClass))
def test_identify_real_algebras(cls):
    assert identify(parse_salamon(REAL_ALGEBRAS[cls])) is cls


def test_fingerprint_table_separates_algebras():
    table = fingerprint_table()
    prints = [print_ for _, print_ in table.entries]
    assert len(set(prints)) == len(AlgebraClass)


def test_parameter_domains():
    with pytest.raises(DomainError):
        TwoStepTriple(2, 0, 0)

    with pytest.raises(DomainError):
        TwoStepTriple(1, -1, 0)

    with pytest.raises(DomainError):
        TwoStepTriple(1, 0, -I)

    with pytest.raises(DomainError):
        TwoStepTriple(1, I, 0)

    with pytest.raises(DomainError):
        ThreeStepTriple(0, 0, 0)

    with pytest.raises(DomainError):
        ThreeStepTriple(1, 0, -1)

    with pytest.raises(DomainError):
        NonNilpotentParams(0, 2)


def test_two_step_boundaries():
    assert classify(TwoStepTriple(1, 0, Scalar(0, Fraction(1, 2)))) is AlgebraClass.H4
    assert classify(TwoStepTriple(1, 0, Scalar(0, 1))) is AlgebraClass.H2
    assert classify(TwoStepTriple(1, 0, Fraction(-1, 4))) is AlgebraClass.H4
    assert classify(TwoStepTriple(1, 0, -1)) is AlgebraClass.H2


def test_three_step_special_cases():
    assert classify(ThreeStepTriple(1, 1, 0)) is AlgebraClass.H7
    assert classify(ThreeStepTriple(1, I, 0)) is AlgebraClass.H16
    assert classify(ThreeStepTriple(0, 0, 1)) is AlgebraClass.H15


def test_general_params():
    assert classify(GeneralNilpotentParams(0, 0)) is AlgebraClass.H1
    assert classify(GeneralNilpotentParams(0, 1)) is AlgebraClass.H5
    assert reduce_general(GeneralNilpotentParams(0, 1, 1, -2, 0, Fraction(3, 4))) == TwoStepTriple(
        1, 2, Fraction(3, 4)
    )
    assert reduce_general(GeneralNilpotentParams(1, 1, 0, 2, 1, 0)) == ThreeStepTriple(1, 2, 1)
    assert reduce_general(GeneralNilpotentParams(1, 0, 0, 2, 2, 0)) == ThreeStepTriple(0, 1, 1)
    assert reduce_general(GeneralNilpotentParams(1, 1, 0, 0, 1 + I, 0)) is None


def test_general_params_fall_back_to_identification():
    params = GeneralNilpotentParams(1, 1, 0, 0, 1 + I, 0)
    assert classify(params) is identify(equations_of(params))


def test_reduce_eq4_conjugates():
    assert reduce_eq4(1, 3 * I, -I) == TwoStepTriple(1, 3, I)


@settings(max_examples=25, deadline=None)
@given(rationals, rationals)
def test_equivalence_is_reflexive(lam, x):
    t = TwoStepTriple(1, abs(lam), Scalar(x, abs(x)))
    assert equivalent_2step(t, t)


def test_equivalence():
    a, b = EQUIVALENT
    assert equivalent_2step(a, b)
    assert equivalent_2step(b, a)
    assert not equivalent_2step(a, TwoStepTriple(1, 0, Fraction(5, 16)))
    assert not equivalent_2step(TwoStepTriple(1, Fraction(1, 2), 0), TwoStepTriple(1, Fraction(1, 3), 0))

    with pytest.raises(DomainError):
        equivalent_2step(TwoStepTriple(0, 0, 1), b)


def test_automorphism_witness():
    a, b = EQUIVALENT
    witness = automorphism_witness(a, b)
    assert witness.f == 1
    assert witness.e == Scalar(Fraction(8, 5), Fraction(4, 5))
    assert verify_witness(witness, a, b)

    with pytest.raises(DomainError):
        automorphism_witness(a, TwoStepTriple(1, 0, 1))


def test_canonical_forms():
    a, b = EQUIVALENT
    assert canonical_form(a).params == b
    assert canonical_form(a).algebra_class is AlgebraClass.H5
    assert family_two_region(b)

    assert canonical_form(TwoStepTriple(0, 0, 5)).params == TwoStepTriple(0, 0, 1)
    assert canonical_form(TwoStepTriple(0, 0, Scalar(3, 4))).params == TwoStepTriple(
        0, 0, Scalar(Fraction(3, 5), Fraction(4, 5))
    )
    assert canonical_form(ThreeStepTriple(0, 2, 1)).params == ThreeStepTriple(0, 1, Fraction(1, 2))
    assert canonical_form(ThreeStepTriple(0, 0, 3)).params == ThreeStepTriple(0, 0, 1)


def test_canonical_form_outside_reducible_cases():
    with pytest.raises(UnsupportedCaseError):
        canonical_form(GeneralNilpotentParams(1, 1, 0, 0, 1 + I, 0))
