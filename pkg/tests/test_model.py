"""Domain type validation."""
import numpy as np
import pytest

from staffrank import (
    AssessmentMatrix,
    CategorySet,
    EvidenceMatrix,
    Provenance,
    RankEntry,
    RankingList,
    Roster,
    Scenario,
    ScenarioConfig,
    ScoreVector,
    ShapeError,
    ValidationError,
    WeightMatrix,
    WeightVector,
)

ROSTER = Roster(("Ann", "Ben", "Cal"))
CATS = CategorySet(("pubs", "talks"), "achievements")


def test_roster_rejects_duplicates():
    with pytest.raises(ValidationError, match="duplicate"):
        Roster(("Ann", "Ann"))


def test_roster_rejects_empty_ids():
    with pytest.raises(ValidationError):
        Roster(("Ann", ""))
    with pytest.raises(ValidationError):
        Roster(())


def test_roster_lookup():
    assert ROSTER.index_of("Ben") == 1
    assert "Cal" in ROSTER
    with pytest.raises(ValidationError, match="'Dee'"):
        ROSTER.index_of("Dee")


def test_category_kind_checked():
    with pytest.raises(ValidationError):
        CategorySet(("pubs",), "outputs")
    with pytest.raises(ValidationError):
        CategorySet(("pubs", "pubs"), "achievements")


def test_evidence_rejects_negative_and_names_the_cell():
    with pytest.raises(ValidationError, match="Ben.*talks"):
        EvidenceMatrix(ROSTER, CATS, [[1, 2], [3, -1], [0, 0]])


def test_evidence_shape():
    with pytest.raises(ShapeError):
        EvidenceMatrix(ROSTER, CATS, [[1, 2], [3, 4]])


def test_weight_vector_sum_checked():
    WeightVector(CATS, [0.4, 0.6])
    with pytest.raises(ValidationError, match="sum to 1"):
        WeightVector(CATS, [0.4, 0.7])
    with pytest.raises(ValidationError):
        WeightVector(CATS, [-0.1, 1.1])


def test_weight_matrix_names_offending_rows():
    with pytest.raises(ValidationError, match="Ben"):
        WeightMatrix(ROSTER, CATS, [[0.5, 0.5], [0.5, 0.6], [1.0, 0.0]])


def test_score_vector_normalization_flag():
    ScoreVector(ROSTER, [0.2, 0.3, 0.5], normalized=True)
    with pytest.raises(ValidationError, match="degenerate=True"):
        ScoreVector(ROSTER, [0.2, 0.3, 0.4], normalized=True)
    # degenerate vectors may carry less than unit mass
    ScoreVector(ROSTER, [0.2, 0.3, 0.4], normalized=True, degenerate=True)


def test_score_vector_rejects_negative():
    with pytest.raises(ValidationError):
        ScoreVector(ROSTER, [0.5, -0.1, 0.6], normalized=False)


def _entries(*triples):
    return tuple(RankEntry(s, v, p) for s, v, p in triples)


def test_ranking_positions_must_be_dense():
    prov = Provenance("test")
    with pytest.raises(ValidationError, match="1..m"):
        RankingList(_entries(("Ann", 1.0, 1), ("Ben", 0.5, 3)), "ascending_id", prov)


def test_ranking_rejects_repeats():
    prov = Provenance("test")
    with pytest.raises(ValidationError, match="repeat"):
        RankingList(_entries(("Ann", 1.0, 1), ("Ann", 0.5, 2)), "ascending_id", prov)


def test_ranking_monotone_unless_segmented():
    prov = Provenance("test")
    rising = _entries(("Ann", 0.2, 1), ("Ben", 0.8, 2))
    with pytest.raises(ValidationError, match="non-increasing"):
        RankingList(rising, "ascending_id", prov)
    RankingList(rising, "ascending_id", prov, segmented=True)  # blocks may restart


def test_ranking_tie_rule_enforced():
    prov = Provenance("test")
    tied_wrong = _entries(("Ben", 0.5, 1), ("Ann", 0.5, 2))
    with pytest.raises(ValidationError, match="ascending-id"):
        RankingList(tied_wrong, "ascending_id", prov)
    # source_order accepts any tie order
    RankingList(tied_wrong, "source_order", prov)


def test_ranking_lookup():
    prov = Provenance("test")
    ranking = RankingList(_entries(("Ben", 0.7, 1), ("Ann", 0.3, 2)), "ascending_id", prov)
    assert ranking.ordered_ids() == ("Ben", "Ann")
    assert ranking.position_of("Ann") == 2
    with pytest.raises(ValidationError):
        ranking.position_of("Dee")


def test_assessment_matrix_row_sums():
    values = np.full((3, 3), 1 / 3)
    AssessmentMatrix(ROSTER, values, normalized=True)
    with pytest.raises(ValidationError, match="'Ann'"):
        bad = values.copy()
        bad[0, 0] = 0.5
        AssessmentMatrix(ROSTER, bad, normalized=True)


def test_assessment_matrix_degenerate_rows():
    values = np.full((3, 3), 1 / 3)
    values[1] = 0.0
    AssessmentMatrix(ROSTER, values, normalized=True, degenerate_rows=(1,))
    with pytest.raises(ValidationError, match="flagged degenerate"):
        AssessmentMatrix(ROSTER, np.full((3, 3), 1 / 3), normalized=True, degenerate_rows=(1,))


def test_config_validation():
    ScenarioConfig()
    with pytest.raises(ValidationError):
        ScenarioConfig(tie_rule="random")
    with pytest.raises(ValidationError):
        ScenarioConfig(league_count=0)
    with pytest.raises(ValidationError):
        ScenarioConfig(swap_count=-1)
    with pytest.raises(ValidationError):
        ScenarioConfig(split_rule="thirds")
    with pytest.raises(ValidationError):
        ScenarioConfig(zero_division_policy="never")


def _tiny_scenario(**kwargs):
    evidence = EvidenceMatrix(ROSTER, CATS, [[2, 1], [1, 0], [0, 3]])
    admin = WeightVector(CATS, [0.5, 0.5])
    personnel = WeightMatrix(ROSTER, CATS, np.full((3, 2), 0.5))
    return Scenario(ROSTER, evidence, admin, personnel, **kwargs)


def test_scenario_reward_all_or_nothing():
    rcats = CategorySet(("salary",), "rewards")
    rewards = EvidenceMatrix(ROSTER, rcats, [[1], [2], [3]])
    with pytest.raises(ValidationError, match="all-or-nothing"):
        _tiny_scenario(rewards=rewards)


def test_scenario_channel_access():
    scenario = _tiny_scenario()
    assert scenario.channel("achievements").kind == "achievements"
    assert not scenario.has_rewards
    with pytest.raises(ValidationError, match="no reward data"):
        scenario.channel("rewards")
    with pytest.raises(ValidationError):
        scenario.channel("bonuses")


def test_scenario_replace_weights_keeps_everything_else():
    scenario = _tiny_scenario()
    new_admin = WeightVector(CATS, [0.9, 0.1])
    swapped = scenario.replace_weights(admin_achievement=new_admin)
    assert swapped.admin_achievement_weights is new_admin
    assert swapped.achievements is scenario.achievements
    assert swapped.config is scenario.config


def test_arrays_are_frozen():
    scenario = _tiny_scenario()
    with pytest.raises(ValueError):
        scenario.achievements.values[0, 0] = 99.0


def test_provenance_describe():
    assert Provenance("admin", "achievements", "x=1").describe() == "admin achievements x=1"
    assert Provenance("admin").describe() == "admin"
