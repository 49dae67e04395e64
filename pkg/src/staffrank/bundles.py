"""Scenario bundles on disk: CSV matrices, a JSON manifest, and the
least-squares oracle that recovers value systems from published scores.

CSV layout: header row names the categories, first column holds the
staff id (or an actor label for one-row weight files).  Files written
here always use point decimals and comma separators; the loader also
accepts semicolon-separated files with comma decimals.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import nnls

from .errors import ComputationError, ValidationError
from .model import (
    AssessmentMatrix,
    CategorySet,
    EvidenceMatrix,
    Roster,
    Scenario,
    ScenarioConfig,
    ScoreVector,
    WeightMatrix,
    WeightVector,
)

__all__ = [
    "ReconstructionResult",
    "load_scenario",
    "save_scenario",
    "scenario_from_document",
    "scenario_to_document",
    "reconstruct_weights",
    "reconstruct_weight_matrix",
    "snap_weights_to_grid",
]

MANIFEST_NAME = "manifest.json"
WEIGHT_ROW_TOL = 1e-6  # loader tolerance; rows inside it are renormalized exactly


# ---------------------------------------------------------------- CSV layer


def _split_rows(text: str, name: str) -> list[list[str]]:
    if not text.strip():
        raise ValidationError(f"{name}: file is empty")
    delimiter = ";" if ";" in text.splitlines()[0] else ","
    rows = [row for row in csv.reader(io.StringIO(text), delimiter=delimiter) if row]
    if len(rows) < 2:
        raise ValidationError(f"{name}: need a header row and at least one data row")
    return rows


def _parse_number(cell: str, name: str, row: int, col: str) -> float:
    try:
        return float(cell.strip().replace(",", "."))
    except ValueError:
        raise ValidationError(
            f"{name}: cannot parse {cell!r} as a number", [f"file {name}, row {row}, column {col}"]
        ) from None


def _read_table(text: str, name: str) -> tuple[list[str], list[str], np.ndarray]:
    """Returns (row labels, column labels, values)."""
    rows = _split_rows(text, name)
    header = [c.strip() for c in rows[0][1:]]
    labels = []
    values = []
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != len(header) + 1:
            raise ValidationError(
                f"{name}: row {r} has {len(row)} cells, expected {len(header) + 1}"
            )
        labels.append(row[0].strip())
        values.append([_parse_number(c, name, r, header[i]) for i, c in enumerate(row[1:])])
    return labels, header, np.array(values, dtype=float)


def _format_cell(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def _write_table(labels: list[str], header: list[str], values: np.ndarray, label_name: str) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([label_name, *header])
    for label, row in zip(labels, values):
        writer.writerow([label, *[_format_cell(v) for v in row]])
    return out.getvalue()


def _weight_rows(values: np.ndarray, name: str, labels: list[str]) -> np.ndarray:
    """Check each row sums to 1 within loader tolerance, then make it exact."""
    sums = values.sum(axis=1)
    for label, s in zip(labels, sums):
        if abs(s - 1.0) > WEIGHT_ROW_TOL:
            raise ValidationError(
                f"{name}: weight row {label!r} sums to {s!r}, expected 1 within {WEIGHT_ROW_TOL}"
            )
    return values / sums[:, None]


# ------------------------------------------------------------- bundle layer


def _expect(mapping: dict, key: str, where: str):
    if key not in mapping:
        raise ValidationError(f"{where}: missing required key {key!r}")
    return mapping[key]


def _channel_from_files(
    directory: Path, refs: dict, kind: str, roster: Roster | None
) -> tuple[Roster, CategorySet, EvidenceMatrix, WeightVector, WeightMatrix]:
    def read(key: str) -> tuple[str, tuple[list[str], list[str], np.ndarray]]:
        rel = _expect(refs, key, f"manifest {kind}")
        path = directory / rel
        if not path.exists():
            raise ValidationError(f"manifest references missing file {rel!r}")
        return rel, _read_table(path.read_text(encoding="utf-8"), rel)

    ev_name, (ids, cats, ev_values) = read("evidence")
    if roster is None:
        roster = Roster(tuple(ids))
    elif tuple(ids) != roster.staff_ids:
        raise ValidationError(f"{ev_name}: staff ids disagree with the achievement files")
    categories = CategorySet(tuple(cats), kind)
    evidence = EvidenceMatrix(roster, categories, ev_values)

    av_name, (av_labels, av_cats, av_values) = read("admin_weights")
    if av_cats != cats:
        raise ValidationError(f"{av_name}: categories disagree with the evidence file")
    if av_values.shape[0] != 1:
        raise ValidationError(f"{av_name}: expected exactly one weight row")
    admin = WeightVector(categories, _weight_rows(av_values, av_name, av_labels)[0])

    pv_name, (pv_ids, pv_cats, pv_values) = read("personnel_weights")
    if pv_cats != cats:
        raise ValidationError(f"{pv_name}: categories disagree with the evidence file")
    if tuple(pv_ids) != roster.staff_ids:
        raise ValidationError(f"{pv_name}: staff ids disagree with the evidence file")
    personnel = WeightMatrix(roster, categories, _weight_rows(pv_values, pv_name, pv_ids))
    return roster, categories, evidence, admin, personnel


def _config_from_document(doc: dict) -> ScenarioConfig:
    known = {f: doc[f] for f in doc}
    allowed = {
        "tie_rule",
        "zero_division_policy",
        "epsilon",
        "league_count",
        "swap_count",
        "split_rule",
        "cluster_seed",
    }
    unknown = set(known) - allowed
    if unknown:
        raise ValidationError(f"manifest config has unknown keys {sorted(unknown)}")
    return ScenarioConfig(**known)


def load_scenario(bundle_path: str | Path) -> Scenario:
    """Read a manifest (or a directory holding manifest.json) into a Scenario.

    Everything is validated before anything is returned; a bundle
    without reward files loads with reward procedures unavailable.
    """
    path = Path(bundle_path)
    if path.is_dir():
        path = path / MANIFEST_NAME
    if not path.exists():
        raise ValidationError(f"bundle manifest not found at {path}")
    try:
        manifest = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise ValidationError(f"manifest {path.name}: invalid JSON ({err})") from err
    directory = path.parent

    roster, _, evidence, admin_w, personnel_w = _channel_from_files(
        directory, _expect(manifest, "achievements", "manifest"), "achievements", None
    )
    rewards = admin_rw = personnel_rw = None
    if manifest.get("rewards"):
        _, _, rewards, admin_rw, personnel_rw = _channel_from_files(
            directory, manifest["rewards"], "rewards", roster
        )
    return Scenario(
        roster=roster,
        achievements=evidence,
        admin_achievement_weights=admin_w,
        personnel_achievement_weights=personnel_w,
        rewards=rewards,
        admin_reward_weights=admin_rw,
        personnel_reward_weights=personnel_rw,
        config=_config_from_document(manifest.get("config", {})),
        name=str(manifest.get("name", path.parent.name)),
    )


def save_scenario(scenario: Scenario, directory: str | Path) -> Path:
    """Write a scenario as a bundle; returns the manifest path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    ids = list(scenario.roster.staff_ids)

    def write_channel(prefix: str, evidence: EvidenceMatrix, admin: WeightVector, personnel: WeightMatrix) -> dict:
        cats = list(evidence.categories.names)
        files = {
            "evidence": f"{prefix}.csv",
            "admin_weights": f"admin_{prefix[:-1]}_weights.csv",
            "personnel_weights": f"personnel_{prefix[:-1]}_weights.csv",
        }
        (directory / files["evidence"]).write_text(
            _write_table(ids, cats, evidence.values, "staff_id"), encoding="utf-8"
        )
        (directory / files["admin_weights"]).write_text(
            _write_table(["administration"], cats, admin.weights[None, :], "actor"),
            encoding="utf-8",
        )
        (directory / files["personnel_weights"]).write_text(
            _write_table(ids, cats, personnel.rows, "staff_id"), encoding="utf-8"
        )
        return files

    manifest: dict = {
        "name": scenario.name,
        "config": {
            "tie_rule": scenario.config.tie_rule,
            "zero_division_policy": scenario.config.zero_division_policy,
            "epsilon": scenario.config.epsilon,
            "league_count": scenario.config.league_count,
            "swap_count": scenario.config.swap_count,
            "split_rule": scenario.config.split_rule,
            "cluster_seed": scenario.config.cluster_seed,
        },
        "achievements": write_channel(
            "achievements",
            scenario.achievements,
            scenario.admin_achievement_weights,
            scenario.personnel_achievement_weights,
        ),
        "rewards": None,
    }
    if scenario.has_rewards:
        manifest["rewards"] = write_channel(
            "rewards",
            scenario.rewards,
            scenario.admin_reward_weights,
            scenario.personnel_reward_weights,
        )
    path = directory / MANIFEST_NAME
    path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return path


# --------------------------------------------------------- inline documents


def _floats(values, where: str) -> list[float]:
    out = []
    for i, v in enumerate(values):
        try:
            out.append(float(v))
        except (TypeError, ValueError):
            raise ValidationError(f"{where}[{i}]: {v!r} is not a number") from None
    return out


def scenario_from_document(doc: dict) -> Scenario:
    """Build a Scenario from an inline JSON document (service create body).

    Numeric cells may be JSON numbers or decimal strings.
    """
    if not isinstance(doc, dict):
        raise ValidationError("scenario document must be a JSON object")
    staff = _expect(doc, "staff", "scenario")
    roster = Roster(tuple(str(s) for s in staff))

    def channel(block: dict, kind: str):
        cats = CategorySet(tuple(str(c) for c in _expect(block, "categories", kind)), kind)
        rows = _expect(block, "evidence", kind)
        if len(rows) != len(roster):
            raise ValidationError(f"{kind} evidence: {len(rows)} rows for {len(roster)} staff")
        evidence = EvidenceMatrix(
            roster, cats, np.array([_floats(r, f"{kind} evidence row") for r in rows])
        )
        admin_raw = np.array([_floats(_expect(block, "admin_weights", kind), f"{kind} admin_weights")])
        admin = WeightVector(cats, _weight_rows(admin_raw, f"{kind} admin_weights", ["administration"])[0])
        p_rows = _expect(block, "personnel_weights", kind)
        if len(p_rows) != len(roster):
            raise ValidationError(
                f"{kind} personnel_weights: {len(p_rows)} rows for {len(roster)} staff"
            )
        p_raw = np.array([_floats(r, f"{kind} personnel_weights row") for r in p_rows])
        personnel = WeightMatrix(
            roster, cats, _weight_rows(p_raw, f"{kind} personnel_weights", list(roster.staff_ids))
        )
        return evidence, admin, personnel

    evidence, admin_w, personnel_w = channel(_expect(doc, "achievements", "scenario"), "achievements")
    rewards = admin_rw = personnel_rw = None
    if doc.get("rewards"):
        rewards, admin_rw, personnel_rw = channel(doc["rewards"], "rewards")
    return Scenario(
        roster=roster,
        achievements=evidence,
        admin_achievement_weights=admin_w,
        personnel_achievement_weights=personnel_w,
        rewards=rewards,
        admin_reward_weights=admin_rw,
        personnel_reward_weights=personnel_rw,
        config=_config_from_document(doc.get("config", {})),
        name=str(doc.get("name", "scenario")),
    )


def scenario_to_document(scenario: Scenario) -> dict:
    """Inverse of scenario_from_document; numbers stay JSON numbers."""

    def channel(evidence: EvidenceMatrix, admin: WeightVector, personnel: WeightMatrix) -> dict:
        return {
            "categories": list(evidence.categories.names),
            "evidence": [[float(v) for v in row] for row in evidence.values],
            "admin_weights": [float(v) for v in admin.weights],
            "personnel_weights": [[float(v) for v in row] for row in personnel.rows],
        }

    doc = {
        "name": scenario.name,
        "staff": list(scenario.roster.staff_ids),
        "config": {
            "tie_rule": scenario.config.tie_rule,
            "zero_division_policy": scenario.config.zero_division_policy,
            "epsilon": scenario.config.epsilon,
            "league_count": scenario.config.league_count,
            "swap_count": scenario.config.swap_count,
            "split_rule": scenario.config.split_rule,
            "cluster_seed": scenario.config.cluster_seed,
        },
        "achievements": channel(
            scenario.achievements,
            scenario.admin_achievement_weights,
            scenario.personnel_achievement_weights,
        ),
        "rewards": None,
    }
    if scenario.has_rewards:
        doc["rewards"] = channel(
            scenario.rewards, scenario.admin_reward_weights, scenario.personnel_reward_weights
        )
    return doc


# ------------------------------------------------------ weight reconstruction


@dataclass(frozen=True)
class ReconstructionResult:
    """Non-negative least-squares fit of a value system to observed scores."""

    weights: WeightVector
    raw_weights: tuple[float, ...]
    pre_normalization_sum: float
    max_residual: float


def _dependent_columns(values: np.ndarray, names: tuple[str, ...]) -> list[str]:
    kept: list[int] = []
    dependent = []
    for j in range(values.shape[1]):
        trial = values[:, kept + [j]]
        if np.linalg.matrix_rank(trial) > len(kept):
            kept.append(j)
        else:
            dependent.append(names[j])
    return dependent


def reconstruct_weights(
    evidence: EvidenceMatrix, observed: ScoreVector | np.ndarray
) -> ReconstructionResult:
    """Recover the value system w that best explains evidence @ w ~ observed.

    Solves a non-negative least squares problem and renormalizes the fit
    to sum 1; the pre-normalization sum and the worst per-person
    residual of the raw fit are kept as fidelity diagnostics.
    """
    values = evidence.values
    m, n = values.shape
    if m < n:
        raise ValidationError(
            f"need at least as many people ({m}) as categories ({n}) to reconstruct weights"
        )
    if np.linalg.matrix_rank(values) < n:
        dep = _dependent_columns(values, evidence.categories.names)
        raise ComputationError(
            "evidence columns are linearly dependent; weights are not identifiable",
            [f"dependent column {name!r}" for name in dep],
        )
    target = observed.scores if isinstance(observed, ScoreVector) else np.asarray(observed, dtype=float)
    if target.shape != (m,):
        raise ValidationError(f"observed scores have shape {target.shape}, expected ({m},)")
    raw, _ = nnls(values, target)
    total = float(raw.sum())
    if total == 0:
        raise ComputationError("all fitted weights are zero; nothing to normalize")
    residual = float(np.abs(values @ raw - target).max())
    return ReconstructionResult(
        WeightVector(evidence.categories, raw / total),
        tuple(float(w) for w in raw),
        total,
        residual,
    )


def reconstruct_weight_matrix(
    evidence: EvidenceMatrix, raw_assessments: AssessmentMatrix
) -> tuple[WeightMatrix, tuple[ReconstructionResult, ...]]:
    """Row-by-row reconstruction: each assessor's weights from their raw row."""
    results = tuple(
        reconstruct_weights(evidence, raw_assessments.values[i])
        for i in range(len(evidence.roster))
    )
    rows = np.array([r.weights.weights for r in results])
    return WeightMatrix(evidence.roster, evidence.categories, rows), results


def snap_weights_to_grid(weights: WeightVector, decimals: int = 2) -> WeightVector | None:
    """Round weights onto a fixed decimal grid when they still sum to 1 there.

    Published tables round to two decimals; a fit that lands within
    rounding noise of such a grid point is replaced by it exactly.
    Returns None when the rounded values no longer sum to 1.
    """
    scale = 10**decimals
    ints = np.rint(np.asarray(weights.weights) * scale).astype(int)
    if ints.sum() != scale or np.any(ints < 0):
        return None
    return WeightVector(weights.categories, ints / scale)
