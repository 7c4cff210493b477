"""Exact computations with sl2, its enveloping algebra modulo the Casimir ideal,
and the rank-2 torsion-free module ``C[h] + C[h]B``."""

from .enveloping import (
    CartanNF,
    ExprSum,
    PauliNF,
    cartan_to_pauli,
    casimir_nf,
    grade_components_z,
    grade_components_z2sq,
    nf_multiply,
    normalize_cartan,
    normalize_pauli,
    pauli_to_cartan,
)
from .errors import DomainError, InternalInconsistencyError, ParameterMismatchError
from .grading import Z, Z2, Z2sq, grade_coarsen_z2
from .module import (
    ModuleElement,
    act_generator,
    act_nf,
    casimir_scalar_check,
    mu,
    x_kernel_truncated,
    z2sq_split,
)
from .parser import ParseError, format_expr, parse_element, parse_expr
from .poly import Poly, poly_shift, shift_avg, shift_diff
from .scalars import GaussianRational, gr
from .submodules import (
    ReductionCertificate,
    RPolyResult,
    SubmoduleId,
    classify_generated,
    compute_r,
    graded_simplicity_probe,
    membership,
    quotient_dim,
    rank2_n,
    special_vector,
)

__version__ = "0.1.0"
