from .base import Base
from .exceptions import (
    BoundaryCaseError,
    ConventionsMismatchError,
    DegenerateRankError,
    InvalidMomentsError,
    MomentError,
    ParameterRangeError,
    SingularBlockError,
    UnsolvableError,
)
from .extensions import DiscreteMeasure, ExtensionSpec
from .moments import MomentSequence, SolvabilityReport
from .orthopoly import ConjugateSystem, OrthoPolySystem
from .solvers import LocalProblem, MomentSolver, ParameterRange

__version__ = "0.1.0"
