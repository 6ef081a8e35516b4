"""Score-based polytree learning: exact subset DP, pruned DP for bounded
in-degree, greedy approximations with certified ratios, brute-force
oracles, and hardness-reduction instance generators."""

from .errors import ParseError, PreconditionError, RefusalError
from .exactdp import connectify, solve_full_dp, solve_pruned_dp, state_bound
from .gen import GenConfig, adversarial_hub, random_instance
from .greedy import greedy_arcs_additive, greedy_density_comp, greedy_parent_sets
from .model import (
    NEG_INF,
    Instance,
    NormalizationWarning,
    ParentSetFamily,
    Polytree,
    SolveResult,
    UnionFind,
    check_constraints,
    is_additive_consistent,
    make_family,
    make_instance,
    mask_of,
    nodes_of,
    normalize,
    score,
    validate_polytree,
)
from .oracle import (
    ConstraintSet,
    brute_force,
    brute_mis,
    brute_set_partition,
    max_weight_forest_additive,
)
from .reductions import (
    ReductionCertificate,
    reduce_independent_set,
    reduce_independent_set_comp,
    reduce_set_partition,
)
from .scoreio import (
    GraphInput,
    SetFamilyInput,
    parse_graph,
    parse_scores,
    parse_set_family,
    write_result,
    write_scores,
)

__version__ = "0.1.0"
