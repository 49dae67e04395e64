"""Domain types for evidence, value systems, scores, and scenarios.

Everything here is immutable after validation; the wrapped numpy arrays
are defensive copies with the write flag cleared, so instances can be
shared freely across threads and cached results.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeError, ValidationError

NORM_TOL = 1e-9

ACHIEVEMENTS = "achievements"
REWARDS = "rewards"
CHANNEL_KINDS = (ACHIEVEMENTS, REWARDS)

TIE_RULES = ("ascending_id", "source_order")


def _frozen_array(values, ndim: int, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != ndim:
        raise ShapeError(f"{name} must have {ndim} dimension(s), got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite values")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Roster:
    """Ordered collection of unique staff identifiers."""

    staff_ids: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "staff_ids", tuple(self.staff_ids))
        if not self.staff_ids:
            raise ValidationError("roster must contain at least one staff id")
        if any(not isinstance(s, str) or not s for s in self.staff_ids):
            raise ValidationError("staff ids must be non-empty strings")
        if len(set(self.staff_ids)) != len(self.staff_ids):
            dupes = sorted({s for s in self.staff_ids if self.staff_ids.count(s) > 1})
            raise ValidationError(f"duplicate staff ids: {dupes}")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.staff_ids)})

    def __len__(self) -> int:
        return len(self.staff_ids)

    def __contains__(self, staff_id: str) -> bool:
        return staff_id in self._index

    def index_of(self, staff_id: str) -> int:
        try:
            return self._index[staff_id]
        except KeyError:
            raise ValidationError(f"unknown staff id {staff_id!r}") from None


@dataclass(frozen=True)
class CategorySet:
    """Ordered labels for one evidence channel (achievements or rewards)."""

    names: tuple[str, ...]
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if not self.names:
            raise ValidationError("category set must contain at least one category")
        if any(not isinstance(n, str) or not n for n in self.names):
            raise ValidationError("category names must be non-empty strings")
        if len(set(self.names)) != len(self.names):
            raise ValidationError("category names must be unique")
        if self.kind not in CHANNEL_KINDS:
            raise ValidationError(f"category kind must be one of {CHANNEL_KINDS}, got {self.kind!r}")

    def __len__(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class EvidenceMatrix:
    """Per-person counts (possibly fractional) for each category."""

    roster: Roster
    categories: CategorySet
    values: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.values, 2, "evidence matrix")
        if arr.shape != (len(self.roster), len(self.categories)):
            raise ShapeError(
                f"evidence matrix shape {arr.shape} does not match "
                f"{len(self.roster)} staff x {len(self.categories)} categories"
            )
        if np.any(arr < 0):
            bad = [(self.roster.staff_ids[r], self.categories.names[c]) for r, c in np.argwhere(arr < 0)]
            raise ValidationError(f"evidence entries must be non-negative; negative at {bad}")
        object.__setattr__(self, "values", arr)

    def row(self, staff_id: str) -> np.ndarray:
        return self.values[self.roster.index_of(staff_id)]


@dataclass(frozen=True)
class WeightVector:
    """A published value system: non-negative weights summing to 1."""

    categories: CategorySet
    weights: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.weights, 1, "weight vector")
        if arr.shape != (len(self.categories),):
            raise ShapeError(
                f"weight vector has {arr.shape[0]} entries for {len(self.categories)} categories"
            )
        if np.any(arr < 0) or np.any(arr > 1):
            raise ValidationError("weights must lie in [0, 1]")
        total = float(arr.sum())
        if abs(total - 1.0) > NORM_TOL:
            raise ValidationError(f"weights must sum to 1 within {NORM_TOL}, got {total!r}")
        object.__setattr__(self, "weights", arr)


@dataclass(frozen=True)
class WeightMatrix:
    """One value system per staff member, roster-aligned."""

    roster: Roster
    categories: CategorySet
    rows: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.rows, 2, "weight matrix")
        if arr.shape != (len(self.roster), len(self.categories)):
            raise ShapeError(
                f"weight matrix shape {arr.shape} does not match "
                f"{len(self.roster)} staff x {len(self.categories)} categories"
            )
        if np.any(arr < 0) or np.any(arr > 1):
            raise ValidationError("weights must lie in [0, 1]")
        sums = arr.sum(axis=1)
        bad = [self.roster.staff_ids[i] for i in np.flatnonzero(np.abs(sums - 1.0) > NORM_TOL)]
        if bad:
            raise ValidationError(f"weight rows must sum to 1 within {NORM_TOL}; offending rows: {bad}")
        object.__setattr__(self, "rows", arr)

    def row_vector(self, staff_id: str) -> WeightVector:
        return WeightVector(self.categories, self.rows[self.roster.index_of(staff_id)])


@dataclass(frozen=True)
class Provenance:
    """Where a score vector or ranking came from."""

    procedure: str
    channel: str | None = None
    detail: str = ""

    def describe(self) -> str:
        parts = [self.procedure]
        if self.channel:
            parts.append(self.channel)
        if self.detail:
            parts.append(self.detail)
        return " ".join(parts)


@dataclass(frozen=True)
class ScoreVector:
    """Roster-aligned scores, optionally normalized to shares of 1.

    The degenerate flag marks normalized vectors whose mass is below 1
    because some contribution was an all-zero row (or the whole vector
    is zero); consumers decide whether that is acceptable.
    """

    roster: Roster
    scores: np.ndarray
    normalized: bool
    degenerate: bool = False
    provenance: Provenance | None = None

    def __post_init__(self):
        arr = _frozen_array(self.scores, 1, "score vector")
        if arr.shape != (len(self.roster),):
            raise ShapeError(f"score vector has {arr.shape[0]} entries for roster of {len(self.roster)}")
        if np.any(arr < 0):
            raise ValidationError("scores must be non-negative")
        if self.normalized and not self.degenerate and abs(float(arr.sum()) - 1.0) > NORM_TOL:
            raise ValidationError(
                f"normalized scores must sum to 1 within {NORM_TOL}, got {float(arr.sum())!r} "
                "(pass degenerate=True when zero rows removed mass)"
            )
        object.__setattr__(self, "scores", arr)

    def score_of(self, staff_id: str) -> float:
        return float(self.scores[self.roster.index_of(staff_id)])


@dataclass(frozen=True)
class RankEntry:
    staff_id: str
    score: float
    position: int


@dataclass(frozen=True)
class RankingList:
    """An ordered list of staff with scores and 1-based positions.

    segmented=True marks lists assembled from independently scored
    blocks (leagues, lifts, dichotomies); their scores are comparable
    within a block but not monotone across the whole list.
    """

    entries: tuple[RankEntry, ...]
    tie_rule: str
    provenance: Provenance
    segmented: bool = False

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if self.tie_rule not in TIE_RULES:
            raise ValidationError(f"tie rule must be one of {TIE_RULES}, got {self.tie_rule!r}")
        ids = [e.staff_id for e in self.entries]
        if len(set(ids)) != len(ids):
            raise ValidationError("ranking entries repeat a staff id")
        if [e.position for e in self.entries] != list(range(1, len(ids) + 1)):
            raise ValidationError("ranking positions must be exactly 1..m in order")
        if not self.segmented:
            for prev, cur in zip(self.entries, self.entries[1:]):
                if cur.score > prev.score + 1e-12:
                    raise ValidationError(
                        f"scores must be non-increasing by position; {cur.staff_id} at "
                        f"{cur.position} outranks {prev.staff_id}"
                    )
                if self.tie_rule == "ascending_id" and cur.score == prev.score and cur.staff_id < prev.staff_id:
                    raise ValidationError(
                        f"tie between {prev.staff_id} and {cur.staff_id} violates ascending-id rule"
                    )

    def __len__(self) -> int:
        return len(self.entries)

    def ordered_ids(self) -> tuple[str, ...]:
        return tuple(e.staff_id for e in self.entries)

    def position_of(self, staff_id: str) -> int:
        for e in self.entries:
            if e.staff_id == staff_id:
                return e.position
        raise ValidationError(f"staff id {staff_id!r} not in ranking")


@dataclass(frozen=True)
class AssessmentMatrix:
    """Square each-assesses-each matrix; rows are assessors."""

    roster: Roster
    values: np.ndarray
    normalized: bool
    degenerate_rows: tuple[int, ...] = ()
    channel: str | None = None  # evidence kind the matrix was built from

    def __post_init__(self):
        arr = _frozen_array(self.values, 2, "assessment matrix")
        m = len(self.roster)
        if arr.shape != (m, m):
            raise ShapeError(f"assessment matrix must be {m}x{m}, got {arr.shape}")
        if np.any(arr < 0):
            raise ValidationError("assessment entries must be non-negative")
        object.__setattr__(self, "degenerate_rows", tuple(int(i) for i in self.degenerate_rows))
        if self.normalized:
            sums = arr.sum(axis=1)
            for i, s in enumerate(sums):
                if i in self.degenerate_rows:
                    if s != 0:
                        raise ValidationError(f"row {i} flagged degenerate but sums to {s!r}")
                elif abs(s - 1.0) > NORM_TOL:
                    raise ValidationError(
                        f"normalized assessment row {self.roster.staff_ids[i]!r} sums to {s!r}"
                    )
        object.__setattr__(self, "values", arr)

    def row_of(self, staff_id: str) -> np.ndarray:
        return self.values[self.roster.index_of(staff_id)]


@dataclass(frozen=True)
class ScenarioConfig:
    """Per-scenario knobs; every default is a documented convention."""

    tie_rule: str = "ascending_id"
    zero_division_policy: str = "strict"
    epsilon: float = 1e-9
    league_count: int = 3
    swap_count: int = 3
    split_rule: str = "half"
    cluster_seed: int = 0

    SPLIT_RULES = ("half", "golden_ratio")

    def __post_init__(self):
        if self.tie_rule not in TIE_RULES:
            raise ValidationError(f"tie rule must be one of {TIE_RULES}, got {self.tie_rule!r}")
        from .matrixops import DivisionPolicy  # local import avoids cycle

        DivisionPolicy(self.zero_division_policy, self.epsilon if self.zero_division_policy == "epsilon" else 1e-9)
        if self.league_count < 1:
            raise ValidationError("league count must be at least 1")
        if self.swap_count < 0:
            raise ValidationError("swap count must be non-negative")
        if self.split_rule not in self.SPLIT_RULES:
            raise ValidationError(f"split rule must be one of {self.SPLIT_RULES}, got {self.split_rule!r}")
        if not isinstance(self.cluster_seed, int):
            raise ValidationError("cluster seed must be an integer")

    def division_policy(self, override: str | None = None):
        from .matrixops import DivisionPolicy

        return DivisionPolicy(override or self.zero_division_policy, self.epsilon)


@dataclass(frozen=True)
class EvidenceChannel:
    """Evidence plus both value systems for one side of the Table-1 mirror."""

    evidence: EvidenceMatrix
    admin_weights: WeightVector
    personnel_weights: WeightMatrix
    kind: str

    def __post_init__(self):
        if self.kind not in CHANNEL_KINDS:
            raise ValidationError(f"channel kind must be one of {CHANNEL_KINDS}, got {self.kind!r}")
        if not (
            self.evidence.roster.staff_ids == self.personnel_weights.roster.staff_ids
        ):
            raise ValidationError("channel components disagree on the roster")
        names = self.evidence.categories.names
        if self.admin_weights.categories.names != names or self.personnel_weights.categories.names != names:
            raise ValidationError("channel components disagree on the category set")

    @property
    def roster(self) -> Roster:
        return self.evidence.roster


@dataclass(frozen=True)
class Scenario:
    """Everything one analysis run needs: evidence, value systems, config."""

    roster: Roster
    achievements: EvidenceMatrix
    admin_achievement_weights: WeightVector
    personnel_achievement_weights: WeightMatrix
    rewards: EvidenceMatrix | None = None
    admin_reward_weights: WeightVector | None = None
    personnel_reward_weights: WeightMatrix | None = None
    config: ScenarioConfig = field(default_factory=ScenarioConfig)
    name: str = "scenario"

    def __post_init__(self):
        ids = self.roster.staff_ids
        for label, part in (
            ("achievements", self.achievements),
            ("personnel achievement weights", self.personnel_achievement_weights),
        ):
            if part.roster.staff_ids != ids:
                raise ValidationError(f"{label} roster does not match the scenario roster")
        if self.achievements.categories.kind != ACHIEVEMENTS:
            raise ValidationError("achievement evidence must use an achievement category set")
        names = self.achievements.categories.names
        if (
            self.admin_achievement_weights.categories.names != names
            or self.personnel_achievement_weights.categories.names != names
        ):
            raise ValidationError("achievement weights disagree with achievement categories")

        reward_parts = (self.rewards, self.admin_reward_weights, self.personnel_reward_weights)
        present = [p is not None for p in reward_parts]
        if any(present) and not all(present):
            raise ValidationError(
                "reward data is all-or-nothing: evidence, admin weights, and personnel "
                "weights must be supplied together"
            )
        if self.rewards is not None:
            if self.rewards.roster.staff_ids != ids or self.personnel_reward_weights.roster.staff_ids != ids:
                raise ValidationError("reward components disagree on the roster")
            if self.rewards.categories.kind != REWARDS:
                raise ValidationError("reward evidence must use a reward category set")
            rnames = self.rewards.categories.names
            if (
                self.admin_reward_weights.categories.names != rnames
                or self.personnel_reward_weights.categories.names != rnames
            ):
                raise ValidationError("reward weights disagree with reward categories")

    @property
    def has_rewards(self) -> bool:
        return self.rewards is not None

    def channel(self, kind: str) -> EvidenceChannel:
        if kind == ACHIEVEMENTS:
            return EvidenceChannel(
                self.achievements,
                self.admin_achievement_weights,
                self.personnel_achievement_weights,
                ACHIEVEMENTS,
            )
        if kind == REWARDS:
            if not self.has_rewards:
                raise ValidationError("scenario has no reward data; reward-channel procedures unavailable")
            return EvidenceChannel(
                self.rewards, self.admin_reward_weights, self.personnel_reward_weights, REWARDS
            )
        raise ValidationError(f"channel kind must be one of {CHANNEL_KINDS}, got {kind!r}")

    def replace_weights(
        self,
        *,
        admin_achievement: WeightVector | None = None,
        admin_reward: WeightVector | None = None,
        personnel_achievement: WeightMatrix | None = None,
        personnel_reward: WeightMatrix | None = None,
    ) -> "Scenario":
        """Return a copy with the given value systems swapped in."""
        return Scenario(
            roster=self.roster,
            achievements=self.achievements,
            admin_achievement_weights=admin_achievement or self.admin_achievement_weights,
            personnel_achievement_weights=personnel_achievement or self.personnel_achievement_weights,
            rewards=self.rewards,
            admin_reward_weights=admin_reward or self.admin_reward_weights,
            personnel_reward_weights=personnel_reward or self.personnel_reward_weights,
            config=self.config,
            name=self.name,
        )
