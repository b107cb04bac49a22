"""Exact symbolic toolkit for Schwarzian equations in triangular form.

Decides whether the Riccati equation attached to a triangular Schwarzian
equation admits algebraic solutions (via the 15-row Kimura table and the
odd-sum test), cross-checks the verdict with an exact rational-solution
oracle, and mechanizes the Puiseux-series reduction that turns the verdict
into the absence of order-two differential subvarieties.
"""

from .scalars import INF, ExtRational, Q, ZeroParameter
from .polynomials import (
    NotSplitOverRationals,
    PartialFractions,
    Poly,
    PoleEvaluation,
    RatFunc,
    partial_fractions,
)
from .schwarzian import (
    ConstantInput,
    Moebius,
    NotTriangular,
    SchwarzianEquation,
    SingularMoebius,
    TriangleParams,
    build_triangular_R,
    check_solution,
    moebius_pullback,
    recognize_triangular,
    schwarzian_of,
)
from .kimura import (
    KimuraVerdict,
    condition_one,
    condition_two,
    decide_condition_ric,
    hyperbolic_integer_sweep,
    verify_witness,
)
from .riccati import (
    ConsistencyReport,
    LinearODE2,
    OracleResult,
    RiccatiEq,
    associate_riccati,
    cross_check,
    rational_solutions,
    to_linear_ode,
)
from .puiseux import (
    PuiseuxSeries,
    SeriesContext,
    derive,
    leading_constraints,
    residual,
    series_arith,
)
from .parser import parse_expr, parse_ratfunc, print_expr, to_ratfunc

__version__ = "0.1.0"
