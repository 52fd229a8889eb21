"""Exact engine for the quantum projective space fiber calculus."""

from .scalars import (
    GaussianRational, LaurentPoly, Scalar, HodgeMode, H_EQ_Q, H_EQ_ONE,
    PoleError, qint, qint_signed, qfact, qbinom, parse_scalar, render_scalar,
)
from .fiber import (
    BasisMonomial, FiberForm, e_plus, e_minus, basis_degree, basis_bidegree,
    weight,
)
from .linalg import ScalarMatrix, LDLCertificate
from .lefschetz import (
    kappa, kappa_power, L, L_power, primitive_basis, primitive_basis_degree,
    lefschetz_decompose, verify_lefschetz_iso, lambda_string_factor,
)
from .hodge import (
    vol, hodge, hodge_inverse, lambda_apply, metric, gram, gram_to_json,
    certify_posdef, serre_pairing, GradedOperator, adjoint,
    hodge_operator, l_operator, lambda_operator,
)
from .uqsl2 import (
    h_operator, k_operator, counting_ops, Sl2String,
    verify_lefschetz_identities, string_decomposition, string_inventory,
)
from .su2 import (
    SU2Element, TensorElement, u_entry, antipode_u_entry, coproduct,
    coproduct2, projective_coordinate, laplacian0_cp1, verify_cp1_laplacian,
)
from .verify import run_suites, SUITES

__all__ = [
    "GaussianRational", "LaurentPoly", "Scalar", "HodgeMode",
    "H_EQ_Q", "H_EQ_ONE", "PoleError",
    "qint", "qint_signed", "qfact", "qbinom", "parse_scalar", "render_scalar",
    "BasisMonomial", "FiberForm", "e_plus", "e_minus",
    "basis_degree", "basis_bidegree", "weight",
    "ScalarMatrix", "LDLCertificate",
    "kappa", "kappa_power", "L", "L_power", "primitive_basis",
    "primitive_basis_degree", "lefschetz_decompose", "verify_lefschetz_iso",
    "lambda_string_factor",
    "vol", "hodge", "hodge_inverse", "lambda_apply", "metric", "gram",
    "gram_to_json", "certify_posdef", "serre_pairing", "GradedOperator",
    "adjoint", "hodge_operator", "l_operator", "lambda_operator",
    "h_operator", "k_operator", "counting_ops", "Sl2String",
    "verify_lefschetz_identities", "string_decomposition", "string_inventory",
    "SU2Element", "TensorElement", "u_entry", "antipode_u_entry",
    "coproduct", "coproduct2", "projective_coordinate", "laplacian0_cp1",
    "verify_cp1_laplacian",
    "run_suites", "SUITES",
]
