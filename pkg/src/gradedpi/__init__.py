"""Graded polynomial identities of sl2 over small finite fields.

Library and CLI for verifying identity bases exhaustively, computing exact
graded-identity kernels and consequence spans per multidegree cell, and
checking the structural facts (diagonalizability, nilradical, monolith,
criticality criteria) on concrete small algebras.
"""

from .field import FieldContext, make_field, parse_field_spec, primitive_cube_root
from .algebra import GradedAlgebra, GradeGroup, Subspace, builtin, direct_product, load_algebra
from .exprs import GradedVar, Multidegree
from .freelie import LiePoly, evaluate, lyndon_basis, normalize, witt_dimension
from .dsl import PROFILES, expand_macro, load_basis, parse_cell, parse_poly
from .engine import (
    CellSpan,
    EngineConfig,
    GenLimits,
    VerifyReport,
    compare_algebra_kernels,
    compare_spans,
    consequence_span,
    identity_kernel,
    verify_basis,
    verify_identity,
)

__version__ = "0.1.0"
