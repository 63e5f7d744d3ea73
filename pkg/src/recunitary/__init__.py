"""Recursive parameterisation of unitary matrices.

A general ``n x n`` unitary is written ``Phi(alpha) V Phi(beta)``, where the
``Phi`` are diagonal phase matrices and ``V`` is grown one dimension at a
time by levels of (angle, unit vector). The package composes matrices from
parameters, decomposes unitaries back into canonical parameters, and fits
parameters to arbitrary square targets.
"""

from .cxcore import (
    adjoint,
    frobenius_distance,
    matmul,
    outer_product,
    unitarity_deviation,
)
from .decompose import RawDecomposition, canonicalize, decompose, decompose_raw, peel_last
from .errors import (
    NonFiniteError,
    NormError,
    NotUnitaryError,
    ParameterError,
    ShapeError,
    UnitaryError,
)
from .gauge import (
    LevelParams,
    ParameterSet,
    SphericalCoords,
    canonicalize_vector,
    compose_parameters,
    levels_to_factor_specs,
    parameter_count,
    spherical_to_vector,
    vector_to_spherical,
)
from .recursion import (
    FactorKind,
    FactorSpec,
    a_factor_block,
    a_from_b,
    b_factor_block,
    b_from_a,
    compose_a,
    compose_b,
    compose_full,
    embed_factor,
    factor_conjugation,
    mixed_form,
    paired_b_levels,
    step_a,
    step_b,
)
from .toolkit import (
    FitConfig,
    UnitaryCheckReport,
    fit,
    haar_unitary,
    sample_parameters,
    verify,
)

__version__ = "0.1.0"
