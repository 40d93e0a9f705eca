"""Monogenic functions in a biharmonic plane: Schwartz-type integrals and the (1-3)-problem."""

__version__ = "0.1.0"

from .algebra import (
    E1,
    E2,
    EPS_DIV,
    RHO,
    ZERO,
    BNumber,
    BPoint,
    add,
    components,
    embed,
    from_canonical,
    from_components,
    inv,
    is_zero_divisor,
    mul,
    norm,
    to_canonical,
)
from .disk import (
    DiskSolution,
    MainBiharmonicSolution,
    MomentSet,
    biharmonic_schwartz_disk,
    boundary_value_disk,
    moment_coefficients,
    singular_boundary_disk,
    solvability_integral,
    solve_13_disk,
    solve_main_biharmonic,
)
from .errors import BiharmError, DomainError, RegionError, Unsolvable, ZeroDivisor
from .halfplane import (
    HalfplaneSolution,
    biharmonic_schwartz_halfplane,
    boundary_value_halfplane,
    limit_at_infinity,
    solve_13_halfplane,
)
from .kernels import (
    CircleData,
    LineData,
    circle_moment,
    conjugate_boundary,
    eval_circle,
    hp_second_kernel,
    line_pv_boundary,
    line_pv_infinity,
    schwartz_disk,
    schwartz_halfplane,
)
from .verification import (
    FieldProbe,
    HolomorphicPair,
    biharmonic_residual,
    cr_residual,
    match_up_to_homogeneous,
    monogenic_from_holomorphic,
    roundtrip_check,
)
