"""Ranking procedures checked against small hand-worked scenarios."""
import numpy as np
import pytest

from staffrank import (
    CategorySet,
    EvidenceMatrix,
    LeaderStrategy,
    Roster,
    Scenario,
    ScoreVector,
    ValidationError,
    WeightMatrix,
    WeightVector,
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

ROSTER = Roster(("Ann", "Ben", "Cal"))
CATS = CategorySet(("pubs", "talks"), "achievements")


@pytest.fixture(scope="module")
def trio() -> Scenario:
    # Ann strong on pubs, Cal strong on talks, Ben weak everywhere.
    evidence = EvidenceMatrix(ROSTER, CATS, [[2, 1], [1, 0], [0, 3]])
    admin = WeightVector(CATS, [0.5, 0.5])
    personnel = WeightMatrix(ROSTER, CATS, [[1, 0], [0, 1], [0.5, 0.5]])
    return Scenario(ROSTER, evidence, admin, personnel)


def test_administrative_scores_by_hand(trio):
    raw = administrative_scores(trio.channel("achievements"))
    assert raw.scores == pytest.approx([1.5, 0.5, 1.5])
    assert not raw.normalized
    assert raw.provenance.procedure == "admin"


def test_normalize_and_rank_shares_and_tie(trio):
    raw = administrative_scores(trio.channel("achievements"))
    shares, ranking = normalize_and_rank(raw)
    assert shares.scores == pytest.approx([3 / 7, 1 / 7, 3 / 7])
    # Ann and Cal tie at 3/7; ascending id puts Ann first
    assert ranking.ordered_ids() == ("Ann", "Cal", "Ben")


def test_normalize_and_rank_all_zero_is_degenerate():
    zero = ScoreVector(ROSTER, [0.0, 0.0, 0.0], normalized=False)
    shares, ranking = normalize_and_rank(zero)
    assert shares.degenerate
    assert shares.scores == pytest.approx([0.0, 0.0, 0.0])
    assert ranking.ordered_ids() == ("Ann", "Ben", "Cal")  # tie rule alone


def test_rank_scores_source_order_keeps_input_order():
    roster = Roster(("Zoe", "Amy"))
    tied = ScoreVector(roster, [0.5, 0.5], normalized=True)
    assert rank_scores(tied, "source_order").ordered_ids() == ("Zoe", "Amy")
    assert rank_scores(tied, "ascending_id").ordered_ids() == ("Amy", "Zoe")


def test_self_assessment_matrix_by_hand(trio):
    raw, normalized = self_assessment_matrix(trio.channel("achievements"))
    assert np.allclose(raw.values, [[2, 1, 0], [1, 0, 3], [1.5, 0.5, 1.5]], atol=1e-12)
    assert np.allclose(
        normalized.values,
        [[2 / 3, 1 / 3, 0], [1 / 4, 0, 3 / 4], [3 / 7, 1 / 7, 3 / 7]],
        atol=1e-12,
    )
    assert raw.channel == "achievements"
    assert normalized.degenerate_rows == ()


def test_optimism_report(trio):
    raw, _ = self_assessment_matrix(trio.channel("achievements"))
    report = optimism_report(raw)
    assert report.totals == pytest.approx((3.0, 4.0, 3.5))
    assert report.most_optimistic == ("Ben",)
    assert report.most_pessimistic == ("Ann",)


def test_optimism_report_refuses_normalized(trio):
    _, normalized = self_assessment_matrix(trio.channel("achievements"))
    with pytest.raises(ValidationError):
        optimism_report(normalized)


def test_democratic_assessment_by_hand(trio):
    _, normalized = self_assessment_matrix(trio.channel("achievements"))
    votes = democratic_assessment(normalized)
    expected = np.array([2 / 3 + 1 / 4 + 3 / 7, 1 / 3 + 1 / 7, 3 / 4 + 3 / 7]) / 3
    assert votes.scores == pytest.approx(expected, abs=1e-12)
    assert float(votes.scores.sum()) == pytest.approx(1.0)


def test_weighted_democracy_by_hand(trio):
    channel = trio.channel("achievements")
    shares, _ = normalize_and_rank(administrative_scores(channel))
    _, normalized = self_assessment_matrix(channel)
    combined = weighted_democracy(shares, normalized)
    assert combined.scores == pytest.approx(
        [
            (3 / 7) * (2 / 3) + (1 / 7) * (1 / 4) + (3 / 7) * (3 / 7),
            (3 / 7) * (1 / 3) + (3 / 7) * (1 / 7),
            (1 / 7) * (3 / 4) + (3 / 7) * (3 / 7),
        ],
        abs=1e-12,
    )
    assert combined.provenance.procedure == "weighted_democracy"


def test_weighted_democracy_requires_normalized_inputs(trio):
    channel = trio.channel("achievements")
    raw_scores = administrative_scores(channel)
    raw, normalized = self_assessment_matrix(channel)
    with pytest.raises(ValidationError):
        weighted_democracy(raw_scores, normalized)
    shares, _ = normalize_and_rank(raw_scores)
    with pytest.raises(ValidationError):
        weighted_democracy(shares, raw)


def test_leader_compromise_by_hand(trio):
    _, normalized = self_assessment_matrix(trio.channel("achievements"))
    compromise = leader_compromise(normalized, "Ann")
    assert compromise.scores == pytest.approx(
        [4 / 9 + 1 / 12, 2 / 9, 1 / 4], abs=1e-12
    )
    assert "leader=Ann" in compromise.provenance.detail


def test_degenerate_assessor_flows_through():
    roster = Roster(("Ada", "Bee"))
    cats = CategorySet(("pubs", "talks"), "achievements")
    evidence = EvidenceMatrix(roster, cats, [[1, 0], [2, 0]])  # nobody gives talks
    personnel = WeightMatrix(roster, cats, [[1, 0], [0, 1]])
    scenario = Scenario(roster, evidence, WeightVector(cats, [1, 0]), personnel)
    raw, normalized = self_assessment_matrix(scenario.channel("achievements"))
    assert normalized.degenerate_rows == (1,)  # Bee values only talks, sees nothing
    votes = democratic_assessment(normalized)
    assert votes.degenerate
    assert float(votes.scores.sum()) == pytest.approx(0.5)
    with pytest.raises(ValidationError, match="degenerate"):
        leader_compromise(normalized, "Bee")


def test_select_leader_strategies(campus30, golden):
    assert select_leader(campus30, LeaderStrategy("admin_top")) == golden["admin_order"][0]
    assert (
        select_leader(campus30, LeaderStrategy("democratic_top"))
        == golden["democratic_order"][0]
    )
    assert select_leader(campus30, LeaderStrategy("explicit", staff_id="Chu")) == "Chu"
    assert select_leader(campus30, LeaderStrategy("league_top", league_index=1)) == golden[
        "league_leaders"
    ][1]
    with pytest.raises(ValidationError):
        select_leader(campus30, LeaderStrategy("explicit", staff_id="Nobody"))
    with pytest.raises(ValidationError, match="out of range"):
        select_leader(campus30, LeaderStrategy("league_top", league_index=99))


def test_leader_strategy_parse():
    assert LeaderStrategy.parse("league_top:2").league_index == 2
    assert LeaderStrategy.parse("explicit:Bod").staff_id == "Bod"
    assert LeaderStrategy.parse("admin_top").kind == "admin_top"
    with pytest.raises(ValidationError):
        LeaderStrategy.parse("chief")
