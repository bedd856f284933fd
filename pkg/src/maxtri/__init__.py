"""Triangularization and tropical determinants over the max-times algebra."""

from .core import (
    DEFAULT_TOLERANCE,
    MaxMatrix,
    Permutation,
    Tolerance,
    approx_eq,
    conjugate,
    identity,
    is_upper_triangular,
    oplus,
    otimes,
    power,
    zeros,
)
from .errors import (
    CyclicGraph,
    DimensionMismatch,
    EmptyFamily,
    MaxAlgebraError,
    NotFactorable,
    NotInCommutant,
    NotTriangularizable,
    ParseError,
    PreconditionFailed,
    TheoremViolation,
    TooLarge,
)
from .graph import Digraph, SupportChain, digraph_of, topological_order
from .triangularize import (
    TriangularizationResult,
    is_nilpotent,
    simultaneously_triangularize,
    triangularize,
)
from .commutator import is_projector, is_unicellular, max_commutator, in_commutant
from .tropical import (
    LinearFactorization,
    TdetResult,
    TropicalPoly2,
    char_poly,
    factor_char_poly,
    tdet,
    tdet_bruteforce,
)
from .matrix_io import parse_matrix, serialize_matrix

__version__ = "0.1.0"
