"""Isoperimetric invariants of weighted multigraphs.

Library computing the weighted systole, volume entropy, scale constants,
stable-norm unit-ball measure, subshift entropy/minimal period and the
systolic constant, together with machine verification of the inequalities
relating them.
"""

from .graph import (
    Chain,
    Edge,
    WeightedMultigraph,
    betti_number,
    bouquet,
    build_graph,
    c_max,
    c_min_literal,
    c_min_maximal,
    complete,
    cycle,
    from_json,
    generate,
    maximal_chains,
    random_regular,
    random_weighted,
    scale,
    subdivide,
    subdivide_all,
    theta,
    to_json,
    valence_profile,
    volume,
)
from .cycles import (
    CycleWitness,
    SystolicBasisResult,
    detect_systolic_basis,
    min_closed_walk_in_class,
    shortest_cycle_through_edge,
    systole,
)
from .entropy import (
    DirectedEdgeSystem,
    EntropyEstimate,
    check_entropy_inequalities,
    cover_ball_volume,
    directed_edge_system,
    entropy_estimate,
    free_group_growth_bound,
    spectral_radius,
    transfer_matrix,
    volume_entropy,
)
from .stable import (
    CycleBasis,
    StableBallVolume,
    check_stable_inequalities,
    cycle_basis,
    euclidean_ball_volume,
    gram_matrix,
    stable_ball_volume_exact,
    stable_ball_volume_mc,
    stable_norm,
)
from .subshift import (
    betti_bA,
    check_prop6,
    count_admissible_words,
    equality_family,
    minimal_period,
    topological_entropy,
)
from .optimize import (
    SystolicOptimum,
    bs_lower_bound,
    check_bs,
    optimize_systolic_volume,
    reference_upper_asymptotic,
)
from .report import InequalityReport, make_report

__version__ = "0.1.0"
