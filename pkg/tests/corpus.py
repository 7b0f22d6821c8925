"""Structures with known algebra class and Frölicher behaviour."""
from fractions import Fraction

from nilcomplex.classify import GeneralNilpotentParams
from nilcomplex.classify import NonNilpotentParams
from nilcomplex.classify import ThreeStepTriple
from nilcomplex.classify import TwoStepTriple
from nilcomplex.exterior import I
from nilcomplex.exterior import Scalar

E1 = "E1≅E∞"
E2 = "E1≇E2≅E∞"
E3_LATE = "E1≅E2≇E3≅E∞"
E3_TWICE = "E1≇E2≇E3≅E∞"

# (params, class, behaviour)
CORPUS = [
    (GeneralNilpotentParams(0, 0), "h1", E1),
    (TwoStepTriple(0, 0, 1), "h3", E1),
    (TwoStepTriple(0, 0, -1), "h3", E1),
    (TwoStepTriple(1, 1, 0), "h6", E1),
    (TwoStepTriple(0, 0, 0), "h8", E1),
    (ThreeStepTriple(0, 1, 1), "h9", E1),
    (ThreeStepTriple(1, 0, 1), "h10", E1),
    (ThreeStepTriple(1, 2, 1), "h11", E1),
    (ThreeStepTriple(1, 1 + I, 1), "h12", E1),
    (NonNilpotentParams(0, 1), "h19-", E1),
    (NonNilpotentParams(0, -1), "h19-", E1),
    (TwoStepTriple(1, 1, I), "h2", E1),
    (TwoStepTriple(1, 1, 1), "h4", E1),
    (TwoStepTriple(1, 0, Scalar(0, Fraction(1, 4))), "h5", E1),
    (TwoStepTriple(0, 0, I), "h2", E2),
    (TwoStepTriple(0, 1, Fraction(1, 4)), "h4", E2),
    (TwoStepTriple(1, 0, 0), "h5", E2),
    (GeneralNilpotentParams(0, 1), "h5", E2),
    (TwoStepTriple(0, 1, 0), "h5", E2),
    (ThreeStepTriple(1, -1, 0), "h16", E2),
    (NonNilpotentParams(1, 1), "h26+", E2),
    (ThreeStepTriple(1, 2, 0), "h15", E2),
    (ThreeStepTriple(1, 1, 1), "h13", E3_LATE),
    (ThreeStepTriple(1, 2, 3), "h14", E3_LATE),
    (ThreeStepTriple(1, 4, Fraction(1, 2)), "h15", E3_LATE),
    (ThreeStepTriple(0, 1, Fraction(1, 4)), "h15", E3_TWICE),
    (ThreeStepTriple(0, 2, 2), "h9", E1),
    (ThreeStepTriple(1, 3, 2), "h11", E1),
    (ThreeStepTriple(1, 1 + 2 * I, 2), "h12", E1),
    (ThreeStepTriple(1, 2, 2), "h13", E3_LATE),
    (ThreeStepTriple(1, 3, 4), "h14", E3_LATE),
    (ThreeStepTriple(1, I, 0), "h16", E2),
    (NonNilpotentParams(1, -1), "h26+", E2),
]

PARAMS = [params for params, _, _ in CORPUS]


def corpus_id(entry) -> str:
    params, cls, _ = entry
    return f"{cls}{params}"
