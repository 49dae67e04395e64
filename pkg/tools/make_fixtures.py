"""Regenerate the fixture bundles under fixtures/.

campus30 carries the 30-person achievement tables from tests/data/
campus30_golden.json; its value systems are recovered from the
published score tables by non-negative least squares and snapped back
onto the 2-decimal grid the source tables use.  The reward side of the
bundle is synthetic (the source reward tables are not recoverable):
drawn once from a fixed-seed generator and committed.

desk4 is a four-person bundle small enough to check every pipeline by
hand; tests/test_acceptance.py hard-codes its oracle values.

Usage: python tools/make_fixtures.py [output_root]
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

from staffrank import (
    AssessmentMatrix,
    CategorySet,
    EvidenceMatrix,
    Roster,
    Scenario,
    ScenarioConfig,
    WeightMatrix,
    WeightVector,
    reconstruct_weight_matrix,
    reconstruct_weights,
    save_scenario,
    snap_weights_to_grid,
)

ROOT = Path(__file__).resolve().parent.parent
REWARD_SEED = 20240613


def build_campus30() -> Scenario:
    golden = json.loads((ROOT / "tests" / "data" / "campus30_golden.json").read_text())
    roster = Roster(tuple(golden["staff"]))
    categories = CategorySet(tuple(golden["achievement_categories"]), "achievements")
    evidence = EvidenceMatrix(roster, categories, np.array(golden["achievements"]))

    admin_fit = reconstruct_weights(evidence, np.array(golden["admin_scores"]))
    admin = snap_weights_to_grid(admin_fit.weights)
    if admin is None:
        raise SystemExit("administrative weights no longer snap to the 2-decimal grid")

    raw = AssessmentMatrix(roster, np.array(golden["self_raw"]), normalized=False)
    fitted, _ = reconstruct_weight_matrix(evidence, raw)
    rows = []
    for staff_id, weights in zip(roster.staff_ids, fitted.rows):
        snapped = snap_weights_to_grid(WeightVector(categories, weights))
        if snapped is None:
            raise SystemExit(f"weights for {staff_id} no longer snap to the 2-decimal grid")
        rows.append(snapped.weights)
    personnel = WeightMatrix(roster, categories, np.array(rows))

    # Synthetic reward side: the source tables for it are placeholders.
    # Every count is at least 1 so the strict division policy stays viable.
    rng = np.random.default_rng(REWARD_SEED)
    reward_categories = CategorySet(("Salary", "Advancements", "Awards"), "rewards")
    bonuses = rng.integers(1, 9, size=(len(roster), 3)).astype(float)
    rewards = EvidenceMatrix(roster, reward_categories, bonuses)
    admin_reward = WeightVector(reward_categories, np.array([0.5, 0.3, 0.2]))
    cuts = np.sort(rng.integers(1, 100, size=(len(roster), 2)), axis=1)
    grid_rows = np.column_stack([cuts[:, 0], cuts[:, 1] - cuts[:, 0], 100 - cuts[:, 1]]) / 100
    personnel_reward = WeightMatrix(roster, reward_categories, grid_rows)

    return Scenario(
        roster=roster,
        achievements=evidence,
        admin_achievement_weights=admin,
        personnel_achievement_weights=personnel,
        rewards=rewards,
        admin_reward_weights=admin_reward,
        personnel_reward_weights=personnel_reward,
        config=ScenarioConfig(),
        name="campus30",
    )


def build_desk4() -> Scenario:
    roster = Roster(("A", "B", "C", "D"))
    ach_cats = CategorySet(("Papers", "Talks"), "achievements")
    rew_cats = CategorySet(("Bonus", "Awards"), "rewards")
    return Scenario(
        roster=roster,
        achievements=EvidenceMatrix(
            roster, ach_cats, np.array([[2.0, 0.0], [0.0, 2.0], [1.0, 1.0], [0.0, 0.0]])
        ),
        admin_achievement_weights=WeightVector(ach_cats, np.array([0.5, 0.5])),
        personnel_achievement_weights=WeightMatrix(
            roster, ach_cats, np.array([[1.0, 0.0], [0.0, 1.0], [0.5, 0.5], [0.5, 0.5]])
        ),
        rewards=EvidenceMatrix(
            roster, rew_cats, np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 1.0]])
        ),
        admin_reward_weights=WeightVector(rew_cats, np.array([0.5, 0.5])),
        personnel_reward_weights=WeightMatrix(
            roster, rew_cats, np.array([[0.5, 0.5]] * 4)
        ),
        config=ScenarioConfig(zero_division_policy="zero_for_zero", league_count=2, swap_count=1),
        name="desk4",
    )


def main() -> None:
    out_root = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "fixtures"
    for scenario in (build_campus30(), build_desk4()):
        manifest = save_scenario(scenario, out_root / scenario.name)
        print(f"wrote {manifest}")


if __name__ == "__main__":
    main()
