from fractions import Fraction

import pytest

from nilcomplex import DomainError
from nilcomplex import UnrepresentableError
from nilcomplex import UnsupportedCaseError
from nilcomplex import deform
from nilcomplex.classify import AlgebraClass
from nilcomplex.classify import GeneralNilpotentParams
from nilcomplex.classify import ThreeStepTriple
from nilcomplex.classify import TwoStepTriple
from nilcomplex.classify import classify
from nilcomplex.classify import equations_of
from nilcomplex.classify import identify
from nilcomplex.deform import ABELIAN_H4
from nilcomplex.deform import Family
from nilcomplex.deform import FamilyTag
from nilcomplex.deform import abelian_h4_eta
from nilcomplex.deform import compute_row
from nilcomplex.deform import deformed_h4_equations
from nilcomplex.deform import drift
from nilcomplex.deform import instantiate
from nilcomplex.deform import real_fixture
from nilcomplex.deform import semicontinuity_report
from nilcomplex.deform import sweep
from nilcomplex.exterior import I
from nilcomplex.exterior import ONE
from nilcomplex.exterior import ZERO
from nilcomplex.exterior import Form
from nilcomplex.exterior import Scalar
from nilcomplex.hermitian import balanced_exists
from nilcomplex.hermitian import metric_flags
from nilcomplex.hermitian import omega_cubed
from nilcomplex.hermitian import h4_abelian_ansatz
from nilcomplex.spectral import behaviour

SINE = Family(FamilyTag.H15_SINE)
LAMBDA = Family(FamilyTag.H5_LAMBDA)
X = Family(FamilyTag.H5_X)
H4 = Family(FamilyTag.H4_ABELIAN)


def test_family_domains():
    with pytest.raises(DomainError):
        Family(FamilyTag.H5_DRIFT)

    with pytest.raises(DomainError):
        Family(FamilyTag.H5_DRIFT, lam=1)

    with pytest.raises(DomainError):
        Family(FamilyTag.H15_SINE, lam=Fraction(1, 2))

    with pytest.raises(DomainError):
        SINE.check(2)

    with pytest.raises(DomainError):
        SINE.check(I)

    with pytest.raises(DomainError):
        LAMBDA.check(Fraction(3, 4))

    with pytest.raises(DomainError):
        X.check(Fraction(-1, 4))

    with pytest.raises(DomainError):
        H4.check(1)

    assert H4.check(Scalar(Fraction(1, 2), Fraction(1, 2))) == Scalar(Fraction(1, 2), Fraction(1, 2))
    assert str(Family("h5-drift", lam=Fraction(1, 2))) == "h5-drift(lambda=1/2)"
    assert str(SINE) == "h15-sine"


def test_drift():
    t = Fraction(1, 4)
    assert drift(t, Fraction(0)) == t
    assert drift(t, Fraction(1, 2)) == Fraction(1, 64)
    assert drift(t, Fraction(3, 4)) == Fraction(7, 256)
    assert drift(t, Fraction(2)) == Fraction(3, 16)


@pytest.mark.parametrize(
    "s, triple",
    [
        (Fraction(1), ThreeStepTriple(0, 1, Fraction(1, 4))),
        (Fraction(-1), ThreeStepTriple(1, 2, 0)),
        (Fraction(0), ThreeStepTriple(1, 4, Fraction(1, 2))),
        (Fraction(1, 2), ThreeStepTriple(1, 8, Fraction(3, 2))),
        (Fraction(-1, 2), ThreeStepTriple(1, Fraction(8, 3), Fraction(1, 6))),
    ],
)
def test_h15_sine(s, triple):
    member = instantiate(SINE, s)
    assert member.triple == triple
    assert classify(member.params) is AlgebraClass.H15
    assert len(member.chain) == 2
    assert member.chain[0].equations == member.raw


def test_h15_sine_behaviour():
    assert behaviour(instantiate(SINE, 1).raw).text == "E1≇E2≇E3≅E∞"
    assert behaviour(instantiate(SINE, 0).raw).text == "E1≅E2≇E3≅E∞"
    assert behaviour(instantiate(SINE, -1).raw).text == "E1≇E2≅E∞"


@pytest.mark.parametrize("lam", [Fraction(0), Fraction(1, 2), Fraction(2, 3)])
def test_h5_lambda(lam):
    member = instantiate(LAMBDA, lam)
    assert member.triple == TwoStepTriple(1, lam, 0)
    assert identify(member.raw) is AlgebraClass.H5


@pytest.mark.parametrize("x", [Fraction(0), Fraction(3, 4), Fraction(2), Fraction(-1, 8), Fraction(1)])
def test_h5_x(x):
    member = instantiate(X, x)
    assert member.triple == TwoStepTriple(1, 0, x)
    assert identify(member.raw) is AlgebraClass.H5


def test_h5_x_balanced():
    assert balanced_exists(instantiate(X, Fraction(-1, 8)).params)
    assert not balanced_exists(instantiate(X, 1).params)
    assert behaviour(instantiate(X, Fraction(-1, 8)).raw).text == "E1≅E∞"
    assert behaviour(instantiate(X, 1).raw).text == "E1≅E∞"


def test_h5_drift():
    family = Family(FamilyTag.H5_DRIFT, lam=Fraction(1, 2))
    start = instantiate(family, 0)
    moved = instantiate(family, Fraction(1, 4))
    assert start.triple == TwoStepTriple(1, Fraction(1, 2), 0)
    assert moved.triple == TwoStepTriple(1, Fraction(1, 2), Scalar(0, Fraction(1, 64)))
    assert behaviour(start.raw).text == "E1≇E2≅E∞"
    assert behaviour(moved.raw).text == "E1≅E∞"


def test_abelian_h4_at_zero():
    member = instantiate(H4, 0)
    assert member.triple == ABELIAN_H4
    assert member.raw == abelian_h4_eta()
    eta_d3 = (
        Form.monomial((1,), (1,), Scalar(0, Fraction(1, 2)))
        + Form.monomial((1,), (2,), Fraction(1, 2))
        + Form.monomial((2,), (1,), Fraction(1, 2))
    )
    assert abelian_h4_eta().d_of == (Form(), Form(), eta_d3)


def test_abelian_h4_deformed():
    member = instantiate(H4, Fraction(1, 2))
    assert member.triple == TwoStepTriple(1, 2, Fraction(3, 4))
    assert member.raw == deformed_h4_equations(Scalar(Fraction(1, 2)))
    assert [step.label for step in member.chain][:2] == ["abelian eta-basis", "mu-basis"]
    assert classify(member.params) is AlgebraClass.H4


def test_abelian_h4_irrational_modulus():
    a = Scalar(Fraction(1, 3), Fraction(1, 3))
    member = instantiate(H4, a)
    assert member.triple is None
    assert member.params == GeneralNilpotentParams(0, 1, ONE, -1 / a, ZERO, Scalar(Fraction(7, 8)))

    with pytest.raises(UnrepresentableError):
        member.require_triple()


def test_abelian_h4_center_has_no_sg_metrics():
    center = compute_row(H4, 0)
    assert center.sg_exists is False
    assert center.balanced_exists is False
    assert omega_cubed(h4_abelian_ansatz(0)) == Form()


@pytest.mark.parametrize("a", [
    Scalar(Fraction(1, 2)),
    Scalar(0, Fraction(1, 2)),
    Scalar(Fraction(3, 5)),
    Scalar(Fraction(4, 5)),
])
def test_abelian_h4_metrics(a):
    row = compute_row(H4, a)
    assert row.sg_exists is True
    assert row.balanced_exists is True

    member = instantiate(H4, a)
    witness = balanced_exists(member.params).witness
    assert metric_flags(equations_of(member.params), witness).balanced
    assert metric_flags(member.raw, h4_abelian_ansatz(a)).balanced


@pytest.mark.parametrize("family, param", [
    (SINE, Fraction(-1, 2)),
    (SINE, 0),
    (SINE, Fraction(1, 2)),
    (LAMBDA, 0),
    (LAMBDA, Fraction(1, 2)),
    (LAMBDA, Fraction(2, 3)),
    (X, 0),
    (X, Fraction(3, 4)),
    (X, 2),
    (Family(FamilyTag.H5_DRIFT, lam=Fraction(0)), Fraction(1, 4)),
    (Family(FamilyTag.H5_DRIFT, lam=Fraction(0)), Fraction(1, 8)),
    (Family(FamilyTag.H5_DRIFT, lam=Fraction(1, 2)), 0),
])
def test_real_fixtures(family, param):
    assert real_fixture(family, param).residual() < 1e-9



def test_real_fixture_unsupported():
    with pytest.raises(UnsupportedCaseError):
        real_fixture(H4, 0)

    with pytest.raises(UnsupportedCaseError):
        real_fixture(Family(FamilyTag.H5_DRIFT, lam=Fraction(2)), 0)


def test_sweep_is_sorted():
    rows = sweep(SINE, [1, -1, 0], workers=3)
    assert [row.param for row in rows] == [-1, 0, 1]
    assert not any(row.failed for row in rows)
    assert [row.degeneration_step for row in rows] == [2, 3, 3]
    assert rows[-1].dim(2, 0, 2) == 3
    assert rows[-1].dim(3, 0, 2) == 2


def test_sweep_checks_every_parameter_first():
    with pytest.raises(DomainError):
        sweep(SINE, [0, 2])


def test_sweep_keeps_failed_rows(monkeypatch):
    original = deform.compute_row

    def failing(family, param):
        if param == 0:
            raise RuntimeError("crash")
        return original(family, param)

    monkeypatch.setattr(deform, "compute_row", failing)
    rows = sweep(X, [0, 1])
    assert rows[0].failed
    assert rows[0].error.error is RuntimeError
    assert rows[0].error.value == "crash"
    assert "failing" in rows[0].error.traceback
    assert not rows[1].failed


def test_semicontinuity_at_degenerate_h5():
    family = Family(FamilyTag.H5_DRIFT, lam=Fraction(1, 2))
    report = semicontinuity_report(family, 0, [Fraction(1, 8), Fraction(1, 4)])
    assert report.center_step == 2
    assert report.nearby_steps == (1, 1)
    assert report.step_jump == "upper"
    for jump in report.jumps:
        assert jump.kind in ("upper", "lower")
        assert report.jump(jump.r, jump.p, jump.q) == jump


def test_semicontinuity_without_neighbours():
    report = semicontinuity_report(SINE, 0, [])
    assert report.jumps == ()
    assert report.step_jump is None
