"""Roster stratification: leagues, social lift, value-system clustering,
and the recursive winners/losers compromise rankings.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .matrixops import row_normalize
from .model import (
    EvidenceChannel,
    Provenance,
    RankEntry,
    RankingList,
    Scenario,
    WeightMatrix,
)

__all__ = [
    "LeaguePartition",
    "ClusterAssignment",
    "DichotomyConfig",
    "form_leagues",
    "rerank_leagues",
    "social_lift",
    "cluster_value_systems",
    "dichotomy",
]


@dataclass(frozen=True)
class LeaguePartition:
    """Contiguous strata of a ranking, highest league first."""

    leagues: tuple[tuple[str, ...], ...]
    leaders: tuple[str, ...]
    source: Provenance

    def __post_init__(self):
        object.__setattr__(self, "leagues", tuple(tuple(lg) for lg in self.leagues))
        object.__setattr__(self, "leaders", tuple(self.leaders))
        if len(self.leaders) != len(self.leagues):
            raise ValidationError("one leader per league required")
        for leader, league in zip(self.leaders, self.leagues):
            if leader not in league:
                raise ValidationError(f"leader {leader!r} is not a member of its league")
        sizes = [len(lg) for lg in self.leagues]
        if max(sizes) - min(sizes) > 1:
            raise ValidationError(f"league sizes may differ by at most 1, got {sizes}")

    def members(self) -> tuple[str, ...]:
        return tuple(s for lg in self.leagues for s in lg)


@dataclass(frozen=True)
class ClusterAssignment:
    """k-means grouping of staff by their value-system rows."""

    clusters: tuple[tuple[str, ...], ...]
    centroids: tuple[tuple[float, ...], ...]
    typical_representatives: tuple[tuple[str, ...], ...]
    seed: int
    objective: float


@dataclass(frozen=True)
class DichotomyConfig:
    """Settings for the recursive winners/losers compromise.

    variant "weak" ranks odd iterations administratively and even ones
    democratically; "strong" swaps the two; "self" ranks every
    iteration democratically.  split "golden_ratio" replaces the even
    split with a 0.618 winners share.  league_driven_swap > 0 exchanges
    that many members across the winners/losers boundary after each
    split, giving losers a recovery path.
    """

    variant: str = "weak"
    split: str = "half"
    league_driven_swap: int = 0
    channel_kind: str = "achievements"

    VARIANTS = ("weak", "strong", "self")
    SPLITS = ("half", "golden_ratio")
    GOLDEN = 0.618

    def __post_init__(self):
        if self.variant not in self.VARIANTS:
            raise ValidationError(f"dichotomy variant must be one of {self.VARIANTS}, got {self.variant!r}")
        if self.split not in self.SPLITS:
            raise ValidationError(f"dichotomy split must be one of {self.SPLITS}, got {self.split!r}")
        if self.league_driven_swap < 0:
            raise ValidationError("league_driven_swap must be non-negative")


def form_leagues(ranking: RankingList, league_count: int) -> LeaguePartition:
    """Slice an ordered ranking into contiguous leagues of near-equal size.

    When the roster does not divide evenly, the higher leagues take the
    extra members.  Each league's leader is its top-ranked member.
    """
    m = len(ranking)
    if not 1 <= league_count <= m:
        raise ValidationError(f"league count must be in [1, {m}], got {league_count}")
    base, extra = divmod(m, league_count)
    ids = ranking.ordered_ids()
    leagues = []
    start = 0
    for i in range(league_count):
        size = base + (1 if i < extra else 0)
        leagues.append(ids[start : start + size])
        start += size
    return LeaguePartition(
        tuple(leagues),
        tuple(lg[0] for lg in leagues),
        Provenance("leagues", ranking.provenance.channel, f"count={league_count}"),
    )


def rerank_leagues(partition: LeaguePartition, channel: EvidenceChannel) -> RankingList:
    """Re-score each league with its own leader's value system.

    Membership never changes; only order within each league does.  Ties
    keep the order the members held in the source ranking, so a leader
    whose weights zero out a category cannot reshuffle equally scored
    colleagues arbitrarily.
    """
    evidence = channel.evidence
    entries = []
    position = 1
    for leader, league in zip(partition.leaders, partition.leagues):
        weights = channel.personnel_weights.row_vector(leader).weights
        scored = [(member, float(evidence.row(member) @ weights)) for member in league]
        scored.sort(key=lambda pair: -pair[1])  # stable: ties keep source order
        for member, score in scored:
            entries.append(RankEntry(member, score, position))
            position += 1
    return RankingList(
        tuple(entries),
        "source_order",
        Provenance("league_rerank", channel.kind, "leaders=" + ",".join(partition.leaders)),
        segmented=True,
    )


def social_lift(reranked: RankingList, partition: LeaguePartition, swap_k: int) -> RankingList:
    """Exchange each league boundary's neighbors: the bottom swap_k of the
    upper league trade list positions with the top swap_k of the lower
    league.  Each trio (or k-group) keeps its internal order.
    """
    if swap_k < 0:
        raise ValidationError("swap_k must be non-negative")
    sizes = [len(lg) for lg in partition.leagues]
    for i, size in enumerate(sizes):
        if 2 * swap_k > size:
            raise ValidationError(
                f"swap_k={swap_k} too large: league {i + 1} has only {size} members "
                "(needs 2*swap_k or more)"
            )
    ids = reranked.ordered_ids()
    if len(ids) != sum(sizes):
        raise ValidationError("ranking and partition cover different rosters")
    blocks = []
    start = 0
    for league, size in zip(partition.leagues, sizes):
        block = list(reranked.entries[start : start + size])
        if {e.staff_id for e in block} != set(league):
            raise ValidationError("ranking blocks do not match the partition's leagues")
        blocks.append(block)
        start += size
    for upper, lower in zip(blocks, blocks[1:]):
        if swap_k:
            upper[-swap_k:], lower[:swap_k] = lower[:swap_k], upper[-swap_k:]
    entries = tuple(
        RankEntry(e.staff_id, e.score, pos)
        for pos, e in enumerate((e for block in blocks for e in block), start=1)
    )
    return RankingList(
        entries,
        reranked.tie_rule,
        Provenance("social_lift", reranked.provenance.channel, f"swap_k={swap_k}"),
        segmented=True,
    )


def _kmeans(points: np.ndarray, k: int, seed: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Seeded k-means++ initialization plus Lloyd iterations (cap 100)."""
    rng = np.random.default_rng(seed)
    n = len(points)
    centroids = [points[int(rng.integers(n))]]
    while len(centroids) < k:
        dist2 = np.min([np.sum((points - c) ** 2, axis=1) for c in centroids], axis=0)
        total = dist2.sum()
        if total == 0:  # all remaining points coincide with a centroid
            centroids.append(points[int(rng.integers(n))])
            continue
        centroids.append(points[int(rng.choice(n, p=dist2 / total))])
    centers = np.array(centroids)
    labels = np.zeros(n, dtype=int)
    for _ in range(100):
        dist = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        labels = dist.argmin(axis=1)
        updated = np.array(
            [points[labels == j].mean(axis=0) if np.any(labels == j) else centers[j] for j in range(k)]
        )
        if np.allclose(updated, centers, rtol=0, atol=1e-15):
            break
        centers = updated
    objective = float(((points - centers[labels]) ** 2).sum())
    return labels, centers, objective


def cluster_value_systems(weights: WeightMatrix, k: int, seed: int) -> ClusterAssignment:
    """Group staff whose value systems point the same way.

    Deterministic for a given seed.  Clusters are listed in roster
    order of their first member; the two members nearest each centroid
    are reported as that cluster's typical representatives.
    """
    m = len(weights.roster)
    if not 1 <= k <= m:
        raise ValidationError(f"cluster count must be in [1, {m}], got {k}")
    labels, centers, objective = _kmeans(weights.rows, k, seed)
    ids = weights.roster.staff_ids
    order = sorted(range(k), key=lambda j: min(i for i in range(m) if labels[i] == j) if np.any(labels == j) else m)
    clusters = []
    centroids = []
    representatives = []
    for j in order:
        member_idx = [i for i in range(m) if labels[i] == j]
        clusters.append(tuple(ids[i] for i in member_idx))
        centroids.append(tuple(float(x) for x in centers[j]))
        dists = [(float(np.sum((weights.rows[i] - centers[j]) ** 2)), ids[i]) for i in member_idx]
        dists.sort()
        representatives.append(tuple(sid for _, sid in dists[:2]))
    return ClusterAssignment(tuple(clusters), tuple(centroids), tuple(representatives), seed, objective)


def _rank_subgroup(
    members: list[str], channel: EvidenceChannel, algorithm: str, tie_rule: str
) -> list[tuple[str, float]]:
    """Rank a subgroup in isolation.

    "admin" scores members with the administration's weights.
    "democratic" runs the full self-assessment loop with only subgroup
    members as assessors and assessed, renormalized within the
    subgroup, then averages.
    """
    idx = [channel.roster.index_of(s) for s in members]
    if algorithm == "admin":
        scores = channel.evidence.values[idx] @ channel.admin_weights.weights
    else:
        raw = channel.personnel_weights.rows[idx] @ channel.evidence.values[idx].T
        normalized, _ = row_normalize(raw)
        scores = normalized.mean(axis=0)
    if tie_rule == "source_order":
        order = sorted(range(len(members)), key=lambda i: -scores[i])
    else:
        order = sorted(range(len(members)), key=lambda i: (-scores[i], members[i]))
    return [(members[i], float(scores[i])) for i in order]


def dichotomy(scenario: Scenario, config: DichotomyConfig) -> RankingList:
    """Recursive winners/losers compromise ranking.

    Each iteration ranks every current subgroup with the iteration's
    algorithm, splits it (winners keep the extra member on odd sizes),
    optionally trades league_driven_swap members across the boundary,
    and recurses until all subgroups are singletons.  The final list is
    the left-to-right concatenation.
    """
    channel = scenario.channel(config.channel_kind)
    tie_rule = scenario.config.tie_rule

    def algorithm_for(level: int) -> str:
        odd = level % 2 == 1
        if config.variant == "self":
            return "democratic"
        if config.variant == "weak":
            return "admin" if odd else "democratic"
        return "democratic" if odd else "admin"

    def winners_count(size: int) -> int:
        if config.split == "half":
            return (size + 1) // 2
        return min(max(int(round(config.GOLDEN * size)), 1), size - 1)

    def recurse(members: list[str], level: int) -> list[tuple[str, float]]:
        ranked = _rank_subgroup(members, channel, algorithm_for(level), tie_rule)
        if len(members) == 2 and config.league_driven_swap == 0:
            return ranked  # splitting into singletons changes nothing
        w = winners_count(len(members))
        winners = [s for s, _ in ranked[:w]]
        losers = [s for s, _ in ranked[w:]]
        k = min(config.league_driven_swap, len(winners), len(losers))
        if k:
            winners[-k:], losers[:k] = losers[:k], winners[-k:]
        scores = dict(ranked)
        out: list[tuple[str, float]] = []
        for part in (winners, losers):
            if len(part) == 1:
                # carry the score from the last ranking that included them
                out.append((part[0], scores[part[0]]))
            else:
                out.extend(recurse(part, level + 1))
        return out

    ids = list(scenario.roster.staff_ids)
    if len(ids) == 1:
        final = _rank_subgroup(ids, channel, algorithm_for(1), tie_rule)
    else:
        final = recurse(ids, 1)
    entries = tuple(RankEntry(s, v, pos) for pos, (s, v) in enumerate(final, start=1))
    detail = f"variant={config.variant} split={config.split} swap={config.league_driven_swap}"
    return RankingList(
        entries,
        tie_rule,
        Provenance("dichotomy", config.channel_kind, detail),
        segmented=True,
    )
