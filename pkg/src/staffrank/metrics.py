"""Distances between ranking lists and the justice analytics built on them."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .model import Provenance, RankingList, Scenario, ScoreVector
from .ranking import (
    administrative_scores,
    democratic_assessment,
    leader_compromise,
    normalize_and_rank,
    rank_scores,
    self_assessment_matrix,
    weighted_democracy,
)
from .stratify import DichotomyConfig, dichotomy, form_leagues, rerank_leagues, social_lift

__all__ = [
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
]

# The eight list-producing procedures, applicable to either evidence channel.
ACHIEVEMENT_PROCEDURES = (
    "admin",
    "democratic",
    "weighted_democracy",
    "leader_compromise",
    "social_lift",
    "dichotomy_weak",
    "dichotomy_strong",
    "dichotomy_self",
)
REWARD_PROCEDURES = ACHIEVEMENT_PROCEDURES

# Diagnostic readings for the four canonical achievement/reward pairings.
INTERPRETATIONS = {
    ("admin", "admin"): (
        "The rewards handed out by the administration do not track the "
        "achievements it says it values."
    ),
    ("democratic", "democratic"): (
        "Staff see a gap between what they feel they contribute and how "
        "the rewards they care about are shared out."
    ),
    ("admin", "democratic"): (
        "Each side is unhappy with what it receives: the administration "
        "with the output, the staff with the compensation."
    ),
    ("democratic", "admin"): (
        "Each side overrates its own half of the exchange: staff their "
        "effort, the administration its generosity."
    ),
}
OVERALL_INTERPRETATION = (
    "Aggregate mismatch between how achievements and rewards are spread; "
    "high values point to a poor perception of fairness overall."
)


@dataclass(frozen=True)
class JusticeReport:
    """Pairwise and aggregate injustice across the two evidence channels."""

    pairwise: dict[tuple[str, str], float]
    overall: float
    interpretation_notes: dict[tuple[str, str], str] = field(default_factory=dict)
    all_zero: bool = False  # overall is 0 by convention, not by computation

    def __post_init__(self):
        for pair, value in self.pairwise.items():
            if not 0.0 <= value <= 1.0 + 1e-12:
                raise ValidationError(f"injustice for {pair} out of [0,1]: {value!r}")
        if not 0.0 <= self.overall <= 1.0 + 1e-12:
            raise ValidationError(f"overall injustice out of [0,1]: {self.overall!r}")


def _check_same_roster(a, b, what: str):
    if a.roster.staff_ids != b.roster.staff_ids:
        raise ValidationError(f"{what} need identical rosters")


def place_diff(a: RankingList, b: RankingList) -> int:
    """Total positional displacement between two orderings of one roster."""
    ids_a = set(e.staff_id for e in a.entries)
    ids_b = set(e.staff_id for e in b.entries)
    if ids_a != ids_b:
        raise ValidationError("place_diff needs rankings over the same roster")
    return int(sum(abs(a.position_of(s) - b.position_of(s)) for s in ids_a))


def max_place_diff(m: int) -> int:
    """Displacement between a list of m and its reversal: floor(m^2 / 2)."""
    if m < 1:
        raise ValidationError(f"roster size must be at least 1, got {m}")
    return (m * m) // 2


def place_distance(a: RankingList, b: RankingList) -> float:
    """place_diff scaled into [0, 1] by its maximum; 0 for a single member."""
    m = len(a)
    if m == 1:
        place_diff(a, b)  # still validates the rosters match
        return 0.0
    return place_diff(a, b) / max_place_diff(m)


def score_diff(a: ScoreVector, b: ScoreVector) -> float:
    """L1 difference of two normalized score vectors, aligned by person."""
    if not a.normalized or not b.normalized:
        raise ValidationError("score_diff needs normalized score vectors")
    _check_same_roster(a, b, "score_diff arguments")
    return float(np.abs(a.scores - b.scores).sum())


def score_distance(a: ScoreVector, b: ScoreVector) -> float:
    """Half the L1 difference, landing in [0, 1]."""
    return 0.5 * score_diff(a, b)


def injustice(achievement_scores: ScoreVector, reward_scores: ScoreVector) -> float:
    """Distance between how achievements and rewards are spread.

    0 means rewards mirror achievements exactly; 1 means the mass sits
    on disjoint people.  Channel provenance is enforced so the two
    arguments cannot be swapped or drawn from one channel.
    """
    a_kind = achievement_scores.provenance.channel if achievement_scores.provenance else None
    b_kind = reward_scores.provenance.channel if reward_scores.provenance else None
    if a_kind != "achievements" or b_kind != "rewards":
        raise ValidationError(
            "injustice takes an achievement-channel vector then a reward-channel vector, "
            f"got channels {a_kind!r} and {b_kind!r}"
        )
    return score_distance(achievement_scores, reward_scores)


def overall_injustice(pairwise: list[float] | tuple[float, ...]) -> float:
    """Contra-harmonic mean of the pairwise values.

    Weighs large injustices more than the plain mean does.  An all-zero
    list returns 0 by convention (the ratio is undefined there).
    """
    values = np.asarray(pairwise, dtype=float)
    if values.size == 0:
        raise ValidationError("overall_injustice needs at least one pairwise value")
    if np.any(values < 0) or np.any(values > 1.0 + 1e-12):
        raise ValidationError("pairwise injustice values must lie in [0,1]")
    total = float(values.sum())
    if total == 0:
        return 0.0
    return float((values**2).sum() / total)


def _shares_from_list(ranking: RankingList, scenario: Scenario, name: str, kind: str) -> ScoreVector:
    """Turn a (possibly segmented) ranking's carried scores into shares by person."""
    roster = scenario.roster
    scores = np.zeros(len(roster))
    for entry in ranking.entries:
        scores[roster.index_of(entry.staff_id)] = entry.score
    total = scores.sum()
    degenerate = total == 0
    if not degenerate:
        scores = scores / total
    return ScoreVector(
        roster,
        scores,
        normalized=True,
        degenerate=degenerate,
        provenance=Provenance(name, kind, "shares_from_list"),
    )


def procedure_shares(scenario: Scenario, procedure: str, channel_kind: str) -> ScoreVector:
    """Run a named list procedure on one channel and return its score shares.

    Score procedures return their normalized vectors directly.  List
    procedures (social lift, dichotomies) carry segment-local scores,
    which are renormalized across the roster so Eq-13-style comparisons
    apply; the resulting shares rank people, they do not compare across
    segments.
    """
    channel = scenario.channel(channel_kind)
    if procedure == "admin":
        shares, _ = normalize_and_rank(administrative_scores(channel), scenario.config.tie_rule)
        return shares
    if procedure in ("democratic", "weighted_democracy", "leader_compromise", "social_lift"):
        _, normalized = self_assessment_matrix(channel)
        if procedure == "democratic":
            return democratic_assessment(normalized)
        if procedure == "weighted_democracy":
            admin_shares, _ = normalize_and_rank(administrative_scores(channel), scenario.config.tie_rule)
            return weighted_democracy(admin_shares, normalized)
        if procedure == "leader_compromise":
            _, admin_ranking = normalize_and_rank(administrative_scores(channel), scenario.config.tie_rule)
            return leader_compromise(normalized, admin_ranking.entries[0].staff_id)
        _, admin_ranking = normalize_and_rank(administrative_scores(channel), scenario.config.tie_rule)
        partition = form_leagues(admin_ranking, scenario.config.league_count)
        lifted = social_lift(rerank_leagues(partition, channel), partition, scenario.config.swap_count)
        return _shares_from_list(lifted, scenario, procedure, channel_kind)
    if procedure.startswith("dichotomy_"):
        variant = procedure.removeprefix("dichotomy_")
        config = DichotomyConfig(variant=variant, split=scenario.config.split_rule, channel_kind=channel_kind)
        return _shares_from_list(dichotomy(scenario, config), scenario, procedure, channel_kind)
    raise ValidationError(
        f"unknown procedure {procedure!r}; expected one of {ACHIEVEMENT_PROCEDURES}"
    )


def justice_report(
    scenario: Scenario,
    achievement_procedures: tuple[str, ...] = ("admin", "democratic"),
    reward_procedures: tuple[str, ...] = ("admin", "democratic"),
) -> JusticeReport:
    """Cross every requested achievement list with every reward list.

    The default four-pair request carries a diagnostic reading per
    pair; wider requests (up to the full 8x8) report values only.
    """
    if not scenario.has_rewards:
        raise ValidationError("justice analytics need the reward channel")
    if not achievement_procedures or not reward_procedures:
        raise ValidationError("at least one procedure per channel is required")
    achievement_shares = {
        p: procedure_shares(scenario, p, "achievements") for p in achievement_procedures
    }
    reward_shares = {p: procedure_shares(scenario, p, "rewards") for p in reward_procedures}
    pairwise = {
        (pa, pb): injustice(sa, sb)
        for pa, sa in achievement_shares.items()
        for pb, sb in reward_shares.items()
    }
    values = list(pairwise.values())
    overall = overall_injustice(values)
    notes = {pair: INTERPRETATIONS[pair] for pair in pairwise if pair in INTERPRETATIONS}
    return JusticeReport(pairwise, overall, notes, all_zero=sum(values) == 0)


def rank_shares(shares: ScoreVector, tie_rule: str = "ascending_id") -> RankingList:
    """Convenience: order a shares vector produced by procedure_shares."""
    return rank_scores(shares, tie_rule)
