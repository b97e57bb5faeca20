"""Mediator-assisted reconstruction of monitoring in games.

Given each player's private monitoring of the joint action, a mediator's
noisy observation and a broadcast channel from the mediator to the players,
decide whether (almost) perfect monitoring can be re-established and what it
costs in signalling.
"""

from .capacity import CapacityResult, check_rate_condition, common_message_capacity, single_user_capacity
from .essential import (
    EssentialRate,
    PriceReport,
    essential_distribution,
    essential_rate,
    essential_recoding,
    induced_transition,
    prices,
)
from .graphs import (
    Coloring,
    EquivClasses,
    UndirectedGraph,
    auxiliary_graph,
    bi_auxiliary_graph,
    check_painting,
    check_xy_coloring,
    equivalence_classes,
    minimal_coloring,
    support_graph,
)
from .model import (
    Broadcast,
    EssentialRecoding,
    MonitoringInstance,
    Player,
    broadcast_marginal,
    builtin_pd_instance,
    induced_joint,
)
from .precision import PrecisionResult, auxiliary_precision, monitoring_precision, z_perfect
from .prob_core import (
    Channel,
    Distribution,
    JointDistribution,
    compose,
    conditional_entropy,
    entropy,
    marginalize,
    mutual_information,
    push_forward,
)
from .simulate import SimulationResult, simulate_one_shot
from .verdicts import ReconstructionReport, check_theorem2, check_theorem3, check_theorem4, combined_error

__version__ = "0.1.0"

__all__ = [
    "CapacityResult",
    "check_rate_condition",
    "common_message_capacity",
    "single_user_capacity",
    "EssentialRate",
    "PriceReport",
    "essential_distribution",
    "essential_rate",
    "essential_recoding",
    "induced_transition",
    "prices",
    "Coloring",
    "EquivClasses",
    "UndirectedGraph",
    "auxiliary_graph",
    "bi_auxiliary_graph",
    "check_painting",
    "check_xy_coloring",
    "equivalence_classes",
    "minimal_coloring",
    "support_graph",
    "Broadcast",
    "EssentialRecoding",
    "MonitoringInstance",
    "Player",
    "broadcast_marginal",
    "builtin_pd_instance",
    "induced_joint",
    "PrecisionResult",
    "auxiliary_precision",
    "monitoring_precision",
    "z_perfect",
    "Channel",
    "Distribution",
    "JointDistribution",
    "compose",
    "conditional_entropy",
    "entropy",
    "marginalize",
    "mutual_information",
    "push_forward",
    "SimulationResult",
    "simulate_one_shot",
    "ReconstructionReport",
    "check_theorem2",
    "check_theorem3",
    "check_theorem4",
    "combined_error",
]
