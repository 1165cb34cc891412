"""Exact intersections of torsion-translated subgroups of complex tori.

Every question about algebraic subgroups of T = Hom(H, C*) is answered on the
H side, with integer lattices and rational exponent vectors.
"""

from .duality import (
    AlgSubgroupDescriptor,
    FgAbGroup,
    Subgroup,
    TorsionPoint,
    char_representatives,
    contains_point,
    coset_rep,
    epsilon_of,
    join,
    meet,
    prop_xi_pair,
    subgroup_from_generators,
    v_of,
)
from .errors import (
    AmbientMismatch,
    HypothesisViolated,
    InvariantViolation,
    NonTorsionError,
    NotPrimitive,
    ParentMismatch,
    ShapeError,
    SubtorusError,
    TorsionParentError,
)
from .intersect import (
    IntersectionResult,
    OrderData,
    TranslatedSubgroup,
    VirtualCheck,
    dimtori_construct,
    exp_identity_lattice,
    exp_intersect,
    exp_subtorus,
    intersect_many,
    intersect_two,
    intersect_two_virtual,
    intersect_unions,
    is_finite_intersection,
    virtual_check,
    virtually_belongs,
)
from .lattice import (
    FiniteAbelianGroup,
    IntMatrix,
    Lattice,
    det_group,
    dual_quotient,
    hnf,
    kernel,
    lattice_intersect,
    lattice_sum,
    membership,
    minor_gcd,
    saturation,
    snf,
    solve_mod_one,
)
from .oracle import GridSpec, brute_points, grid_trace, sufficient_modulus, verify
from .zeta import ZetaCoefficients, count_sublattices, count_with_fixed_identity_component, enumerate_hnf

__version__ = "0.1.0"
