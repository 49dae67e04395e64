"""Core ranking procedures: administrative scoring, self-assessment,
democratic averaging, and the weighted/leader compromises.

Every procedure is generic over an EvidenceChannel, so the same code
ranks by achievements or by rewards (the two sides of the mirror).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .matrixops import row_normalize
from .model import (
    AssessmentMatrix,
    EvidenceChannel,
    Provenance,
    RankEntry,
    RankingList,
    Roster,
    ScoreVector,
    Scenario,
)

__all__ = [
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
]


@dataclass(frozen=True)
class LeaderStrategy:
    """How to pick the leader whose assessment row weighs the experts.

    kind: "admin_top" | "league_top" | "democratic_top" | "explicit".
    league_index applies to league_top; staff_id applies to explicit.
    """

    kind: str
    league_index: int = 0
    staff_id: str | None = None

    KINDS = ("admin_top", "league_top", "democratic_top", "explicit")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValidationError(f"leader strategy must be one of {self.KINDS}, got {self.kind!r}")
        if self.kind == "explicit" and not self.staff_id:
            raise ValidationError("explicit leader strategy needs a staff id")
        if self.kind == "league_top" and self.league_index < 0:
            raise ValidationError("league index must be non-negative")

    @classmethod
    def parse(cls, text: str) -> "LeaderStrategy":
        """Parse "admin_top", "democratic_top", "league_top:1", "explicit:Bod"."""
        kind, _, arg = text.partition(":")
        if kind == "league_top":
            return cls("league_top", league_index=int(arg or 0))
        if kind == "explicit":
            return cls("explicit", staff_id=arg)
        return cls(kind)


@dataclass(frozen=True)
class OptimismReport:
    """Per-assessor raw totals: each expert's view of the whole group's output."""

    roster: Roster
    totals: tuple[float, ...]
    most_optimistic: tuple[str, ...]
    most_pessimistic: tuple[str, ...]


def _ordering(ids, scores, tie_rule: str) -> list[int]:
    """Indices sorted by descending score; ties per rule.

    "ascending_id" breaks ties alphabetically; "source_order" keeps the
    input order of tied entries (the order they held in the list being
    re-ranked), which is what re-ranking procedures use.
    """
    if tie_rule == "source_order":
        return sorted(range(len(ids)), key=lambda i: -scores[i])
    return sorted(range(len(ids)), key=lambda i: (-scores[i], ids[i]))


def rank_scores(scores: ScoreVector, tie_rule: str = "ascending_id") -> RankingList:
    """Order a score vector into a RankingList without renormalizing."""
    ids = scores.roster.staff_ids
    order = _ordering(ids, scores.scores, tie_rule)
    entries = tuple(
        RankEntry(ids[i], float(scores.scores[i]), pos) for pos, i in enumerate(order, start=1)
    )
    prov = scores.provenance or Provenance("scores")
    return RankingList(entries, tie_rule, prov)


def administrative_scores(channel: EvidenceChannel) -> ScoreVector:
    """Score everyone with the administration's value system (raw, unnormalized)."""
    raw = channel.evidence.values @ channel.admin_weights.weights
    return ScoreVector(
        channel.roster,
        raw,
        normalized=False,
        provenance=Provenance("admin", channel.kind),
    )


def normalize_and_rank(
    scores: ScoreVector, tie_rule: str = "ascending_id"
) -> tuple[ScoreVector, RankingList]:
    """Turn raw scores into shares of the total and an ordered list.

    An all-zero total yields a degenerate result: every share is 0 and
    the order falls back to the tie rule alone.
    """
    total = float(scores.scores.sum())
    degenerate = total == 0
    shares = scores.scores / total if not degenerate else np.zeros(len(scores.roster))
    prov = scores.provenance or Provenance("scores")
    normalized = ScoreVector(
        scores.roster, shares, normalized=True, degenerate=degenerate, provenance=prov
    )
    return normalized, rank_scores(normalized, tie_rule)


def self_assessment_matrix(channel: EvidenceChannel) -> tuple[AssessmentMatrix, AssessmentMatrix]:
    """Each person scores everyone through their own value system.

    Returns the raw matrix (rows comparable only by their totals) and
    the row-normalized matrix of shares.
    """
    raw = channel.personnel_weights.rows @ channel.evidence.values.T
    normalized, degenerate = row_normalize(raw)
    roster = channel.roster
    return (
        AssessmentMatrix(roster, raw, normalized=False, channel=channel.kind),
        AssessmentMatrix(
            roster, normalized, normalized=True, degenerate_rows=degenerate, channel=channel.kind
        ),
    )


def optimism_report(raw: AssessmentMatrix) -> OptimismReport:
    """Surface each assessor's raw total: the most generous and the most
    reserved view of the group's combined output."""
    if raw.normalized:
        raise ValidationError("optimism report needs the raw assessment matrix")
    totals = raw.values.sum(axis=1)
    ids = raw.roster.staff_ids
    hi, lo = totals.max(), totals.min()
    return OptimismReport(
        raw.roster,
        tuple(float(t) for t in totals),
        tuple(s for s, t in zip(ids, totals) if t == hi),
        tuple(s for s, t in zip(ids, totals) if t == lo),
    )


def democratic_assessment(normalized: AssessmentMatrix) -> ScoreVector:
    """Average every assessor's shares: one person, one vote."""
    if not normalized.normalized:
        raise ValidationError("democratic assessment needs the normalized assessment matrix")
    means = normalized.values.mean(axis=0)
    return ScoreVector(
        normalized.roster,
        means,
        normalized=True,
        degenerate=bool(normalized.degenerate_rows),
        provenance=Provenance("democratic", normalized.channel),
    )


def weighted_democracy(admin_normalized: ScoreVector, normalized: AssessmentMatrix) -> ScoreVector:
    """Average assessors' shares weighted by each assessor's administrative share."""
    if not admin_normalized.normalized:
        raise ValidationError("weighted democracy needs normalized administrative shares")
    if not normalized.normalized:
        raise ValidationError("weighted democracy needs the normalized assessment matrix")
    if admin_normalized.roster.staff_ids != normalized.roster.staff_ids:
        raise ValidationError("administrative shares and assessments disagree on the roster")
    combined = admin_normalized.scores @ normalized.values
    degenerate = admin_normalized.degenerate or abs(float(combined.sum()) - 1.0) > 1e-9
    return ScoreVector(
        normalized.roster,
        combined,
        normalized=True,
        degenerate=degenerate,
        provenance=Provenance("weighted_democracy", normalized.channel),
    )


def leader_compromise(normalized: AssessmentMatrix, leader: str) -> ScoreVector:
    """Average assessors' shares weighted by the leader's assessment row."""
    if not normalized.normalized:
        raise ValidationError("leader compromise needs the normalized assessment matrix")
    lead = normalized.row_of(leader)
    if normalized.roster.index_of(leader) in normalized.degenerate_rows:
        raise ValidationError(f"leader {leader!r} has a degenerate (all-zero) assessment row")
    combined = lead @ normalized.values
    degenerate = abs(float(combined.sum()) - 1.0) > 1e-9
    return ScoreVector(
        normalized.roster,
        combined,
        normalized=True,
        degenerate=degenerate,
        provenance=Provenance("leader_compromise", normalized.channel, detail=f"leader={leader}"),
    )


def select_leader(scenario: Scenario, strategy: LeaderStrategy, channel_kind: str = "achievements") -> str:
    """Resolve a leader id from the scenario per the chosen strategy."""
    channel = scenario.channel(channel_kind)
    tie_rule = scenario.config.tie_rule
    if strategy.kind == "explicit":
        scenario.roster.index_of(strategy.staff_id)  # validates membership
        return strategy.staff_id
    if strategy.kind == "admin_top":
        _, ranking = normalize_and_rank(administrative_scores(channel), tie_rule)
        return ranking.entries[0].staff_id
    if strategy.kind == "democratic_top":
        _, normalized = self_assessment_matrix(channel)
        ranking = rank_scores(democratic_assessment(normalized), tie_rule)
        return ranking.entries[0].staff_id
    # league_top: first position of the chosen league after re-ranking
    from .stratify import form_leagues, rerank_leagues  # local import avoids cycle

    _, ranking = normalize_and_rank(administrative_scores(channel), tie_rule)
    partition = form_leagues(ranking, scenario.config.league_count)
    if strategy.league_index >= len(partition.leagues):
        raise ValidationError(
            f"league index {strategy.league_index} out of range for {len(partition.leagues)} leagues"
        )
    reranked = rerank_leagues(partition, channel)
    offset = sum(len(lg) for lg in partition.leagues[: strategy.league_index])
    return reranked.entries[offset].staff_id
