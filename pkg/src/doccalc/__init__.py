"""Exact discrete ordered calculus with companion experiment engines.

Modules: ``scalar`` (exact coefficients), ``ncalg`` (non-commutative
algebra with the time-shift rewrite), ``poisson``, ``dynamics``, ``qcalc``,
``netamp``, ``hopf`` and the ``cli``.
"""

from .errors import DomainError, LimitError, SingularStep
from .ncalg import (
    Algebra,
    Expr,
    Var,
    D,
    bracket_leibniz_defect,
    commutator,
    d,
    jacobi_defect,
    leibniz_defect_D,
    leibniz_defect_d,
    metric,
    normalize,
    shift,
)
from .scalar import I, ONE, Q, ZERO, Scalar

__all__ = [
    "Algebra", "Expr", "Var", "Scalar", "I", "ONE", "Q", "ZERO",
    "D", "d", "shift", "commutator", "metric", "normalize",
    "jacobi_defect", "leibniz_defect_d", "leibniz_defect_D", "bracket_leibniz_defect",
    "DomainError", "LimitError", "SingularStep",
]
__version__ = "0.1.0"
