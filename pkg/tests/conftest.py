from fractions import Fraction

import pytest

from nilcomplex.classify import GeneralNilpotentParams
from nilcomplex.classify import ThreeStepTriple
from nilcomplex.classify import equations_of


@pytest.fixture
def iwasawa():
    """The complex parallelizable structure dω³ = ω^{12}."""
    return equations_of(GeneralNilpotentParams(0, 1))


@pytest.fixture
def h15_twice():
    return equations_of(ThreeStepTriple(0, 1, Fraction(1, 4)))
