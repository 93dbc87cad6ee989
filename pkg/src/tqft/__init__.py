"""Exact finite models of low-dimensional topological field theories.

Bordism words, their evaluation through Frobenius algebras, finite gauge
theory by counting, and the Morita 2-category of algebras and bimodules.
"""

__version__ = "0.1.0"

from .algebra import Algebra, ground_field, matrix_algebra
from .bordism import (
    BordismWord,
    Object1D,
    Object2D,
    TypeMismatch,
    cerf_normalize_1d,
    closed_surface_word,
    open_surface_word,
    s_diagram,
)
from .dsl import ParseError, parse_bordism_dsl
from .evaluate import OneDTheory, TwoDTheory, evaluate_1d, evaluate_2d
from .frobenius import (
    FrobeniusAlgebra,
    partition_function,
    semisimple_spectrum,
    truncated_polynomial,
    validate,
)
from .gauge import (
    FiniteGroup,
    builtin_group,
    center_frobenius_algebra,
    convolution_algebra,
    count_homs,
    mednykh_verify,
    push_pull_map,
)
from .linalg import ExactMatrix, ExactTensor
from .morita import (
    Bimodule,
    DualityData,
    check_adjunction,
    check_duality_data,
    hochschild_h0,
    relative_tensor,
)
