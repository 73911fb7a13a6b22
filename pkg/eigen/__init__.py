# Eigen Module
# 주 고유값 λ₁ (해석적 / 절단 Dirichlet 수치) 및 고유함수 φ₁

from .analytic import (
    EigenResult,
    arccot,
    zeta,
    critical_length,
    critical_r2,
    lambda1_analytic,
    length_for_lambda1,
    resolve_length,
)
from .eigenfunction import PiecewiseEigenfunction, eigenfunction
from .truncated import (
    LadderResult,
    TruncatedEigenpair,
    lambda1_truncated,
    truncated_eigenpair,
    run_ladder,
    lambda1_general,
    lambda1_numeric,
)

__all__ = [
    "EigenResult",
    "arccot",
    "zeta",
    "critical_length",
    "critical_r2",
    "lambda1_analytic",
    "length_for_lambda1",
    "resolve_length",
    "PiecewiseEigenfunction",
    "eigenfunction",
    "LadderResult",
    "TruncatedEigenpair",
    "lambda1_truncated",
    "truncated_eigenpair",
    "run_ladder",
    "lambda1_general",
    "lambda1_numeric",
]
