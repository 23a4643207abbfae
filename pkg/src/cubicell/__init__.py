"""Exact verification toolkit for homology 3-cell complements in blow-ups
of P^3 along smooth curves: catalog checks, divisor-class enumeration,
boundary cokernels, and the case classifier."""

from .catalog import (
    Catalog,
    CatalogError,
    Chain,
    SurfaceModel,
    dump_catalog,
    exceptional_chain_profile,
    load_catalog,
    verify_catalog,
)
from .classifier import (
    AdmittedPair,
    CaseOutcome,
    HyperplaneChoice,
    TripleDescriptor,
    admitted_pairs,
    canonical_descriptor,
    canonical_descriptor_keys,
    classify,
    infer_delta_iso,
    verify_example_non_a3,
)
from .curves import (
    CurveConstraintSet,
    SolutionSet,
    bounds_from_cauchy_schwarz,
    cuspidal_cubic_class_g1,
    enumerate_curve_classes,
    enumerate_curve_classes_all,
    enumerate_tuples,
    hirzebruch_degree_genus,
    solve_blowup_bidegrees,
)
from .homology import (
    EulerBudget,
    H2ModelR3,
    PlaneCubicType,
    coker_theta,
    coker_xi_r3,
    euler_of_F,
    feasible_intersections,
    minimality_dichotomy,
    plane_cubic_table,
    surface_b2,
    surface_euler_number,
)
from .lattice import (
    DivClass,
    FgAbGroup,
    IntLattice,
    SmithNormalForm,
    blowup_class,
    cokernel,
    cubic_blowup_lattice,
    hirzebruch_lattice,
    smith_normal_form,
)
from .poly import (
    LineP3,
    MultiPoly,
    PointP3,
    jacobian_vanishes,
    parse_poly,
    poly_eval,
    restrict_to_line,
)
from .replay import LemmaReport, run_all_lemmas

__version__ = "0.1.0"
