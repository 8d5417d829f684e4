"""Linear relations (multivalued operators) in C^n: calculus, spectra, extensions
and numerical checks of finite-rank perturbation bounds."""

from .errors import (
    DimensionMismatch,
    ExtensionCheckFailed,
    LambdaNotQuasiRegular,
    NotALacuna,
    NotInRegularSet,
    NotSelfadjoint,
    NotSymmetric,
    PreconditionFailed,
    RelcalcError,
)
from .relation import LinearRelation, RelationParts
from .spectral import Interval
from .subspace import DEFAULT_TOL, Subspace

__version__ = "0.1.0"
