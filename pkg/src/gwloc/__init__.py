"""gwloc: exact genus-zero Gromov-Witten invariants via torus localization.

Computes invariants of chain-type hypersurfaces in weighted projective
spaces by summing equivariant fixed-locus contributions over decorated
trees, specializing all torus parameters to multiples of a single one,
and extracting the constant coefficient.  All arithmetic is exact.
"""

from gwloc.exact import (
    LinForm,
    Poly,
    RatFunc,
    NotPolynomial,
    DivisionByZero,
    specialize_linform,
    constant_coefficient,
    ratfunc_arith,
)
from gwloc.targets import (
    WeightedProjSpace,
    ChainStructure,
    LoopStructure,
    FixedPoint,
    Specialization,
    tangent_weights,
    bundle_fiber_weight,
    chain_specialization,
    find_chain_structures,
    gorenstein_check,
    hyperplane_lift,
    point_class_integral,
    random_specialization,
)
from gwloc.classify import (
    InvertibleDecomposition,
    MonomialSet,
    MalformedInput,
    find_invertible,
    regularizable_check,
    scan,
)
from gwloc.trees import (
    LocGraph,
    GraphAut,
    DegreeNotRepresentable,
    enumerate_graphs,
    graph_count,
)
from gwloc.footballs import (
    FootballBundle,
    WeightClass,
    EdgeCover,
    Inconsistent,
    NoSuchCover,
    football_cohomology,
    football_chi,
    edge_cover_data,
)
from gwloc.engine import (
    GraphContribution,
    InvariantResult,
    SpecializationDegenerate,
    ZeroWeight,
    virtual_tangent_class,
    obstruction_class,
    graph_contribution,
    contribution_trace,
    compute_invariant,
    uniform_marks_invariant,
)
from gwloc.oracles import wdvv_p2, convex_invariant, NotConvex
from gwloc.config import JobConfig, ParseError, parse_config
from gwloc.cache import CacheMismatch, cache_key
from gwloc.report import Report, run, trace_records

__version__ = "0.1.0"
