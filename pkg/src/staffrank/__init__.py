"""Deterministic analytics for administration-staff assessment compromise.

The engine turns per-person evidence (achievements, rewards) and
declared value systems into ranking lists, stratifications, distance
metrics, justice measurements and work-passion scores, all reproducible
to the bit for a fixed scenario.
"""

from .bundles import (
    ReconstructionResult,
    load_scenario,
    reconstruct_weight_matrix,
    reconstruct_weights,
    save_scenario,
    scenario_from_document,
    scenario_to_document,
    snap_weights_to_grid,
)
from .errors import (
    ComputationError,
    DivisionByZeroError,
    ShapeError,
    StaffrankError,
    ValidationError,
)
from .matrixops import DivisionPolicy, elementwise_div, elementwise_mul, mat_mul, row_normalize
from .metrics import (
    ACHIEVEMENT_PROCEDURES,
    REWARD_PROCEDURES,
    JusticeReport,
    injustice,
    justice_report,
    max_place_diff,
    overall_injustice,
    place_diff,
    place_distance,
    procedure_shares,
    score_diff,
    score_distance,
)
from .model import (
    AssessmentMatrix,
    CategorySet,
    EvidenceChannel,
    EvidenceMatrix,
    Provenance,
    RankEntry,
    RankingList,
    Roster,
    Scenario,
    ScenarioConfig,
    ScoreVector,
    WeightMatrix,
    WeightVector,
)
from .passion import PassionResult, passion_average, passion_ranking, work_passion
from .ranking import (
    LeaderStrategy,
    OptimismReport,
    administrative_scores,
    democratic_assessment,
    leader_compromise,
    normalize_and_rank,
    optimism_report,
    rank_scores,
    select_leader,
    self_assessment_matrix,
    weighted_democracy,
)
from .reports import document_for, emit_report, fmt
from .service import ScenarioStore, create_app, run_procedure
from .stratify import (
    ClusterAssignment,
    DichotomyConfig,
    LeaguePartition,
    cluster_value_systems,
    dichotomy,
    form_leagues,
    rerank_leagues,
    social_lift,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "StaffrankError",
    "ValidationError",
    "ShapeError",
    "ComputationError",
    "DivisionByZeroError",
    # model
    "Roster",
    "CategorySet",
    "EvidenceMatrix",
    "WeightVector",
    "WeightMatrix",
    "ScoreVector",
    "RankEntry",
    "RankingList",
    "AssessmentMatrix",
    "Provenance",
    "Scenario",
    "ScenarioConfig",
    "EvidenceChannel",
    # kernel
    "DivisionPolicy",
    "mat_mul",
    "row_normalize",
    "elementwise_mul",
    "elementwise_div",
    # ranking
    "LeaderStrategy",
    "OptimismReport",
    "administrative_scores",
    "normalize_and_rank",
    "rank_scores",
    "self_assessment_matrix",
    "optimism_report",
    "democratic_assessment",
    "weighted_democracy",
    "leader_compromise",
    "select_leader",
    # stratification
    "LeaguePartition",
    "ClusterAssignment",
    "DichotomyConfig",
    "form_leagues",
    "rerank_leagues",
    "social_lift",
    "cluster_value_systems",
    "dichotomy",
    # metrics
    "JusticeReport",
    "ACHIEVEMENT_PROCEDURES",
    "REWARD_PROCEDURES",
    "place_diff",
    "max_place_diff",
    "place_distance",
    "score_diff",
    "score_distance",
    "injustice",
    "overall_injustice",
    "procedure_shares",
    "justice_report",
    # passion
    "PassionResult",
    "work_passion",
    "passion_average",
    "passion_ranking",
    # io
    "ReconstructionResult",
    "load_scenario",
    "save_scenario",
    "scenario_from_document",
    "scenario_to_document",
    "reconstruct_weights",
    "reconstruct_weight_matrix",
    "snap_weights_to_grid",
    # reports / service
    "fmt",
    "document_for",
    "emit_report",
    "ScenarioStore",
    "create_app",
    "run_procedure",
]
