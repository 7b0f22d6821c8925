from ._version import __version__
from .errors import *
from .exterior import Scalar
from .exterior import Form
from .exterior import generator
from .exterior import wedge
from .exterior import conjugate
from .linalg import SubspaceBasis
from .linalg import LinearMap
from .liealg import StructureEquations
from .liealg import RealStructureEquations
from .liealg import structure
from .liealg import rebase
from .cohomology import hodge_table
from .spectral import FrolicherSequence
from .spectral import behaviour
from .classify import AlgebraClass
from .classify import TwoStepTriple
from .classify import ThreeStepTriple
from .classify import GeneralNilpotentParams
from .classify import NonNilpotentParams
from .classify import classify
from .classify import identify
from .classify import equations_of
from .hermitian import HermitianParams
from .hermitian import metric_flags
from .hermitian import balanced_exists
from .hermitian import sg_exists
from .deform import Family
from .deform import FamilyTag
from .deform import instantiate
from .deform import sweep
from .deform import semicontinuity_report
from .parsing import parse_input
