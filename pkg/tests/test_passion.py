"""Work-passion scoring.

Desk oracle, worked by hand from the fixture's four staff members:
weighting everyone's achievements through each assessor's values and
dividing by the same view of the rewards gives raw quotient rows
(8,0,4,0), (0,8,4,0), (2,2,1,0) and all zeros, hence the normalized
rows asserted below.
"""
import numpy as np
import pytest

from staffrank import (
    DivisionByZeroError,
    ValidationError,
    passion_average,
    passion_ranking,
    work_passion,
)


def test_desk_passion_matrix_hand_oracle(desk4):
    result = work_passion(desk4)  # fixture config says zero_for_zero
    assert result.zero_policy_used == "zero_for_zero"
    expected = np.array(
        [
            [2 / 3, 0.0, 1 / 3, 0.0],
            [0.0, 2 / 3, 1 / 3, 0.0],
            [0.4, 0.4, 0.2, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]
    )
    assert result.wp.values == pytest.approx(expected, abs=1e-12)
    assert result.wp.degenerate_rows == (desk4.roster.index_of("D"),)


def test_desk_passion_average_and_ranking(desk4):
    result = work_passion(desk4)
    expected = np.array([(2 / 3 + 0.4) / 4, (2 / 3 + 0.4) / 4, (1 / 3 + 1 / 3 + 0.2) / 4, 0.0])
    assert result.average.scores == pytest.approx(expected, abs=1e-12)
    assert result.average.degenerate  # one assessor contributed nothing
    assert result.ranking.ordered_ids() == ("A", "B", "C", "D")


def test_passion_strict_policy_names_the_pairs(desk4):
    with pytest.raises(DivisionByZeroError, match="assessor 'A' / assessed 'B'"):
        work_passion(desk4, zero_policy="strict")


def test_passion_epsilon_policy_matches_here(desk4):
    """Every zero denominator in the fixture has a zero numerator, so the
    epsilon fallback and the zero_for_zero rule coincide."""
    lenient = work_passion(desk4)
    padded = work_passion(desk4, zero_policy="epsilon")
    assert padded.wp.values == pytest.approx(lenient.wp.values, abs=1e-9)


def test_passion_scale_invariance_spot_check(desk4):
    import staffrank as sr

    def scaled(evidence, factor):
        return sr.EvidenceMatrix(evidence.roster, evidence.categories, evidence.values * factor)

    base = work_passion(desk4)
    bigger = sr.Scenario(
        roster=desk4.roster,
        achievements=scaled(desk4.achievements, 3.0),
        admin_achievement_weights=desk4.admin_achievement_weights,
        personnel_achievement_weights=desk4.personnel_achievement_weights,
        rewards=scaled(desk4.rewards, 7.0),
        admin_reward_weights=desk4.admin_reward_weights,
        personnel_reward_weights=desk4.personnel_reward_weights,
        config=desk4.config,
    )
    assert work_passion(bigger).wp.values == pytest.approx(base.wp.values, abs=1e-9)


def test_passion_requires_rewards(campus30_without_rewards):
    with pytest.raises(ValidationError, match="reward"):
        work_passion(campus30_without_rewards)


def test_passion_keeps_stages_on_request(desk4):
    result = work_passion(desk4, keep_stages=True)
    stages = result.stage_trace
    assert stages is not None
    assert stages.achievement_cross[0] == pytest.approx([4.0, 0.0, 2.0, 0.0])
    assert stages.reward_cross[0] == pytest.approx([0.5, 0.0, 0.5, 0.5])
    assert work_passion(desk4).stage_trace is None


def test_passion_rows_are_shares(campus30):
    result = work_passion(campus30)
    sums = result.wp.values.sum(axis=1)
    assert sums == pytest.approx(np.ones(30), abs=1e-9)
    assert float(result.average.scores.sum()) == pytest.approx(1.0, abs=1e-9)
    assert not result.average.degenerate


def test_passion_average_needs_normalized_matrix(desk4):
    raw = work_passion(desk4).wp
    import staffrank as sr

    denorm = sr.AssessmentMatrix(raw.roster, raw.values * 2.0, normalized=False)
    with pytest.raises(ValidationError):
        passion_average(denorm)


def test_passion_ranking_tie_rule(desk4):
    # A and B tie on average share; source order keeps A first either way,
    # ascending id would as well, so force a reversed roster through ranking
    result = work_passion(desk4)
    ranking = passion_ranking(result.wp, "source_order")
    assert ranking.ordered_ids()[:2] == ("A", "B")
