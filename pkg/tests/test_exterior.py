from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilcomplex import DomainError
from nilcomplex import NonHomogeneousError
from nilcomplex import ParseError
from nilcomplex.exterior import I
from nilcomplex.exterior import ONE
from nilcomplex.exterior import ZERO
from nilcomplex.exterior import Form
from nilcomplex.exterior import Monomial
from nilcomplex.exterior import Scalar
from nilcomplex.exterior import basis
from nilcomplex.exterior import conjugate
from nilcomplex.exterior import coordinates
from nilcomplex.exterior import from_coordinates
from nilcomplex.exterior import generator
from nilcomplex.exterior import project
from nilcomplex.exterior import pullback
from nilcomplex.exterior import rational_sqrt
from nilcomplex.exterior import total_basis
from nilcomplex.exterior import wedge

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(Scalar, fractions, fractions)
generators = st.sampled_from(
    [generator(j, barred) for j in (1, 2, 3) for barred in (False, True)]
)
one_forms = st.lists(st.tuples(scalars, generators), min_size=1, max_size=4).map(
    lambda terms: sum((g.scale(c) for c, g in terms), Form())
)


def w(j):
    return generator(j)


def wb(j):
    return generator(j, barred=True)


def test_scalar_parse():
    assert Scalar.parse("3") == 3
    assert Scalar.parse("-1/2") == Fraction(-1, 2)
    assert Scalar.parse("1/2+3/4i") == Scalar(Fraction(1, 2), Fraction(3, 4))
    assert Scalar.parse("i") == I
    assert Scalar.parse("-i/2") == Scalar(0, Fraction(-1, 2))
    assert Scalar.parse("1 + 1i") == ONE + I


def test_scalar_parse_rejects_garbage():
    with pytest.raises(ParseError):
        Scalar.parse("")

    with pytest.raises(ParseError):
        Scalar.parse("1/0")

    with pytest.raises(ParseError) as info:
        Scalar.parse("1+x")
    assert info.value.position == 1


def test_scalar_refuses_floats():
    with pytest.raises(TypeError):
        Scalar.of(0.5)


def test_scalar_text():
    assert str(Scalar(0, 1)) == "i"
    assert str(Scalar(0, -1)) == "-i"
    assert str(Scalar(Fraction(1, 2), -2)) == "1/2-2i"
    assert str(Scalar(1, Fraction(1, 4))) == "1+1/4i"
    assert Scalar.parse(str(Scalar(Fraction(-3, 5), Fraction(7, 2)))) == Scalar(
        Fraction(-3, 5), Fraction(7, 2)
    )


@given(scalars, scalars)
def test_scalar_field_operations(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a * a.conj()).im == 0
    assert (a * a.conj()).re == a.abs2()
    if b:
        assert (a / b) * b == a


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(0) == 0
    assert rational_sqrt(2) is None
    assert rational_sqrt(-1) is None


def test_monomial_must_ascend():
    with pytest.raises(DomainError):
        Monomial((2, 1), ())

    with pytest.raises(DomainError):
        Monomial((0,), ())


def test_wedge_canonical_order():
    assert wedge(w(2), w(1)) == -wedge(w(1), w(2))
    assert wedge(wb(1), w(2)) == Form.monomial((2,), (1,), -1)
    assert wedge(w(1), w(1)) == Form()
    assert wedge(w(1), wb(2), w(3)) == Form.monomial((1, 3), (2,), -1)


@given(one_forms, one_forms, one_forms)
def test_wedge_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(one_forms, one_forms)
def test_one_forms_anticommute(a, b):
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(a, a) == Form()


@given(one_forms, one_forms)
def test_conjugate_is_an_involutive_algebra_map(a, b):
    assert conjugate(conjugate(a)) == a
    assert conjugate(wedge(a, b)) == wedge(conjugate(a), conjugate(b))


def test_conjugate_swaps_bidegree():
    f = Form.monomial((1, 2), (3,), I)
    g = conjugate(f)
    assert g.bidegrees() == {(1, 2)}
    assert conjugate(wedge(w(1), wb(2))) == wedge(wb(1), w(2))


def test_basis_sizes():
    assert len(basis(3, 1, 1)) == 9
    assert len(basis(3, 2, 3)) == 3
    assert len(basis(3, 4, 0)) == 0
    assert [len(total_basis(3, k)) for k in range(7)] == [1, 6, 15, 20, 15, 6, 1]


def test_coordinates():
    f = wedge(w(1), wb(1)).scale(2) + wedge(w(3), wb(2)).scale(I)
    vector = coordinates(f, 1, 1)
    assert vector[0] == 2
    assert vector[7] == I
    assert from_coordinates(vector, basis(3, 1, 1)) == f

    with pytest.raises(NonHomogeneousError):
        coordinates(f + w(1), 1, 1)


def test_project():
    f = wedge(w(1), w(2)) + wedge(w(1), wb(2))
    assert project(f, 2, 0) == wedge(w(1), w(2))
    assert project(f, 0, 2) == Form()


def test_pullback():
    images = {
        (1, False): w(1) + w(2),
        (2, False): w(2),
        (1, True): wb(1),
        (2, True): wb(2),
    }
    assert pullback(wedge(w(1), w(2)), images) == wedge(w(1), w(2))
    assert pullback(wedge(w(1), wb(1)), images) == wedge(w(1), wb(1)) + wedge(w(2), wb(1))

    with pytest.raises(DomainError):
        pullback(w(3), images)


def test_zero_form():
    assert not Form()
    assert str(Form()) == "0"
    assert w(1).scale(ZERO) == Form()
