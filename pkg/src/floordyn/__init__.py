"""Exact simulation and classification of A(x, y) = (floor(l*y), floor(l*x))."""

from .classifier import (
    ExtLatticePoint,
    FixSet,
    OmegaSet,
    TheoremVerdict,
    fixed_points,
    omega,
    parity_limits_analytic,
    theorem_omega,
)
from .dynamics import (
    LatticePoint,
    OrbitTrace,
    ParityLimits,
    Point,
    apply_A,
    apply_f,
    iterate_orbit,
    parity_limits_simulated,
)
from .numeric import (
    MINUS_INF,
    PLUS_INF,
    ParamClass,
    Regime,
    classify_lambda,
    floor_scale,
    parse_rational,
)
from .verifier import GridSpec, verify_fixed_points, verify_omega, verify_period2

__version__ = "0.1.0"
