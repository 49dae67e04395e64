"""Work-passion scoring: intrinsic output weighed against extrinsic reward."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DivisionByZeroError, ValidationError
from .matrixops import elementwise_div, elementwise_mul, mat_mul, row_normalize, transpose
from .model import AssessmentMatrix, Provenance, RankingList, Scenario, ScoreVector
from .ranking import rank_scores

__all__ = ["PassionStages", "PassionResult", "work_passion", "passion_average", "passion_ranking"]


@dataclass(frozen=True)
class PassionStages:
    """Intermediates kept for inspection and figure rendering.

    weighted_achievements: each person's evidence scaled by their own
    achievement weights; achievement_cross: how much each assessor's
    weighting credits each colleague's record; the reward pair mirrors
    both on the bonus side; ratio is the raw intrinsic/extrinsic
    quotient before row normalization.
    """

    weighted_achievements: np.ndarray
    achievement_cross: np.ndarray
    weighted_rewards: np.ndarray
    reward_cross: np.ndarray
    ratio: np.ndarray


@dataclass(frozen=True)
class PassionResult:
    """Normalized passion matrix plus its per-person average and order."""

    wp: AssessmentMatrix
    average: ScoreVector
    ranking: RankingList
    zero_policy_used: str
    stage_trace: PassionStages | None = None


def work_passion(
    scenario: Scenario,
    zero_policy: str | None = None,
    keep_stages: bool = False,
    tie_rule: str | None = None,
) -> PassionResult:
    """Score how strongly each person's drive is internal rather than bought.

    Each assessor's value-weighted view of everyone's achievements is
    divided, cell by cell, by the same view of everyone's rewards; each
    row is then normalized to shares.  A large share means the person
    produces much relative to what they are paid, as seen through the
    assessor's values.  Zero denominators (valued achievements but no
    valued rewards) follow the scenario's division policy unless one is
    passed explicitly.
    """
    if not scenario.has_rewards:
        raise ValidationError("work passion needs both achievement and reward channels")
    ach = scenario.channel("achievements")
    rew = scenario.channel("rewards")
    policy = scenario.config.division_policy(zero_policy)
    rule = tie_rule or scenario.config.tie_rule

    weighted_ach = elementwise_mul(ach.evidence.values, ach.personnel_weights.rows)
    ach_cross = mat_mul(weighted_ach, transpose(ach.evidence.values))
    weighted_rew = elementwise_mul(rew.evidence.values, rew.personnel_weights.rows)
    rew_cross = mat_mul(weighted_rew, transpose(rew.evidence.values))
    try:
        ratio = elementwise_div(ach_cross, rew_cross, policy)
    except DivisionByZeroError as err:
        ids = scenario.roster.staff_ids
        pairs = [(ids[r], ids[c]) for r, c in err.cells]
        detail = ", ".join(f"assessor {a!r} / assessed {b!r}" for a, b in pairs[:10])
        raise DivisionByZeroError(
            f"work passion undefined: zero reward value at {len(pairs)} pair(s) "
            f"under policy {policy.kind!r} ({detail})",
            err.cells,
        ) from err
    normalized, degenerate = row_normalize(ratio)

    roster = scenario.roster
    wp = AssessmentMatrix(
        roster, normalized, normalized=True, degenerate_rows=degenerate, channel="achievements"
    )
    average = passion_average(wp)
    ranking = rank_scores(average, rule)
    stages = (
        PassionStages(weighted_ach, ach_cross, weighted_rew, rew_cross, ratio)
        if keep_stages
        else None
    )
    return PassionResult(wp, average, ranking, policy.kind, stages)


def passion_average(wp: AssessmentMatrix) -> ScoreVector:
    """Column means of the passion matrix: the group's view of each person."""
    if not wp.normalized:
        raise ValidationError("passion average needs the normalized passion matrix")
    means = wp.values.mean(axis=0)
    return ScoreVector(
        wp.roster,
        means,
        normalized=True,
        degenerate=bool(wp.degenerate_rows),
        provenance=Provenance("passion", wp.channel),
    )


def passion_ranking(wp: AssessmentMatrix, tie_rule: str = "ascending_id") -> RankingList:
    """Order the roster by average passion share, highest first."""
    return rank_scores(passion_average(wp), tie_rule)
