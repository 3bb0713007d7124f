"""Numerical verification of sharp inequalities for Chebyshev polynomials."""
from .core import (
    BracketError,
    ChebValues,
    DegreeError,
    DomainError,
    NodeSystem,
    check_t3_relation,
    eval_cheb,
    largest_zero_T2,
    node_system,
    zeros_T3_in,
)
from .hermite import (
    Certificate,
    CertificateError,
    HermiteScheme,
    build_certificate,
    derivs_at_nodes,
    hermite_interp,
    l_functional,
    verify_certificate,
)
from .inequalities import (
    InequalityFn,
    Kind,
    SharpConstant,
    VerificationReport,
    eval_ineq,
    falsify_sharpness,
    phi_at_zero,
    sharp_constant_closed,
    sharp_constant_numeric,
    verify_nonneg,
)
from .ultraspherical import (
    connection_coeffs,
    corollary1_check,
    eval_ultra,
    find_counterexample,
)

__version__ = "0.1.0"
