"""Dynamic chance-constrained knapsack benchmark library."""

from .chance import (
    CHEBYSHEV,
    CHERNOFF,
    ChanceParams,
    capacity_bound,
    chebyshev_capacity_bound,
    chebyshev_violation_prob,
    chernoff_capacity_bound,
    chernoff_violation_prob,
    monte_carlo_violation,
    violation_prob,
)
from .campaign import CampaignConfig, run_campaign
from .dynamics import CapacitySchedule, build_schedule
from .metrics import RunRecord, offline_error, total_offline_error
from .model import (
    BOUNDED_STRONGLY_CORRELATED,
    UNCORRELATED,
    Instance,
    InstanceFormatError,
    Item,
    SolutionAggregates,
    generate_instance,
    parse_instance,
    serialize_instance,
)
from .oracle import brute_force_chance_optimum, brute_force_optimum, dp_optimal_profits
from .solvers import (
    LexFitness,
    Nsga2,
    OnePlusOneEA,
    Posdc,
    lex_better_or_equal,
    posdc_dominates,
    run_algorithm,
)
from .stats import kruskal_wallis, pairwise_labels

__version__ = "0.1.0"
