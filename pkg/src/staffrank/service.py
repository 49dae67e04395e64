"""HTTP facade over the engine: scenario storage, weight patching,
procedure execution, and cached results for before/after comparison.

Every numeric leaf in a response body is a decimal string at 12
significant digits; identical (revision, procedure, parameters)
requests return byte-identical documents.
"""
from __future__ import annotations

import hashlib
import json
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bundles import load_scenario, save_scenario, scenario_from_document
from .errors import StaffrankError, ValidationError
from .metrics import (
    justice_report,
    place_diff,
    place_distance,
    procedure_shares,
    rank_shares,
    score_diff,
    score_distance,
)
from .model import Scenario, WeightMatrix, WeightVector
from .passion import work_passion
from .ranking import (
    LeaderStrategy,
    administrative_scores,
    democratic_assessment,
    leader_compromise,
    normalize_and_rank,
    rank_scores,
    select_leader,
    self_assessment_matrix,
    weighted_democracy,
)
from .reports import comparison_document, document_for, fmt, ranking_document
from .stratify import (
    DichotomyConfig,
    cluster_value_systems,
    dichotomy,
    form_leagues,
    rerank_leagues,
    social_lift,
)

__all__ = ["ScenarioStore", "StoredScenario", "run_procedure", "create_app", "PROCEDURES"]

PROCEDURES = (
    "admin_rank",
    "democratic_rank",
    "weighted_democracy",
    "leader_compromise",
    "leagues",
    "social_lift",
    "dichotomy",
    "cluster",
    "justice",
    "passion",
    "compare",
)

_LIST_PROCEDURES = (
    "admin",
    "democratic",
    "weighted_democracy",
    "leader_compromise",
    "social_lift",
    "dichotomy_weak",
    "dichotomy_strong",
    "dichotomy_self",
)


class NotFoundError(StaffrankError):
    code = "not_found"


class ConflictError(StaffrankError):
    code = "conflict"


def _as_float_list(values, where: str) -> list[float]:
    if not isinstance(values, (list, tuple)):
        raise ValidationError(f"{where} must be a list of numbers")
    out = []
    for i, v in enumerate(values):
        try:
            out.append(float(v))
        except (TypeError, ValueError):
            raise ValidationError(f"{where}[{i}]: {v!r} is not a number") from None
    return out


def _as_int(value, where: str, default: int | None = None) -> int:
    if value is None:
        if default is None:
            raise ValidationError(f"{where} is required")
        return default
    try:
        return int(str(value))
    except ValueError:
        raise ValidationError(f"{where}: {value!r} is not an integer") from None


# --------------------------------------------------------------- procedures


def _ranked_list(scenario: Scenario, name: str, channel_kind: str):
    """A named list procedure reduced to an orderable RankingList."""
    if name not in _LIST_PROCEDURES:
        raise ValidationError(f"unknown list {name!r}; expected one of {_LIST_PROCEDURES}")
    shares = procedure_shares(scenario, name, channel_kind)
    return rank_shares(shares, scenario.config.tie_rule), shares


def run_procedure(scenario: Scenario, procedure: str, params: dict | None = None) -> dict:
    """Execute one named procedure and return its result document."""
    params = dict(params or {})
    kind = str(params.pop("channel", "achievements"))
    tie = scenario.config.tie_rule

    if procedure == "admin_rank":
        channel = scenario.channel(kind)
        shares, ranking = normalize_and_rank(administrative_scores(channel), tie)
        return ranking_document(ranking, shares=True)
    if procedure == "democratic_rank":
        channel = scenario.channel(kind)
        _, normalized = self_assessment_matrix(channel)
        return ranking_document(rank_scores(democratic_assessment(normalized), tie), shares=True)
    if procedure == "weighted_democracy":
        channel = scenario.channel(kind)
        shares, _ = normalize_and_rank(administrative_scores(channel), tie)
        _, normalized = self_assessment_matrix(channel)
        return ranking_document(rank_scores(weighted_democracy(shares, normalized), tie), shares=True)
    if procedure == "leader_compromise":
        channel = scenario.channel(kind)
        strategy = LeaderStrategy.parse(str(params.pop("leader_strategy", "admin_top")))
        leader = select_leader(scenario, strategy, kind)
        _, normalized = self_assessment_matrix(channel)
        return ranking_document(rank_scores(leader_compromise(normalized, leader), tie), shares=True)
    if procedure == "leagues":
        channel = scenario.channel(kind)
        count = _as_int(params.pop("count", None), "count", scenario.config.league_count)
        _, admin_ranking = normalize_and_rank(administrative_scores(channel), tie)
        partition = form_leagues(admin_ranking, count)
        doc = document_for(partition)
        doc["reranked"] = ranking_document(rerank_leagues(partition, channel), shares=False)
        return doc
    if procedure == "social_lift":
        channel = scenario.channel(kind)
        swap_k = _as_int(params.pop("swap_k", None), "swap_k", scenario.config.swap_count)
        count = _as_int(params.pop("count", None), "count", scenario.config.league_count)
        _, admin_ranking = normalize_and_rank(administrative_scores(channel), tie)
        partition = form_leagues(admin_ranking, count)
        lifted = social_lift(rerank_leagues(partition, channel), partition, swap_k)
        return ranking_document(lifted, shares=False)
    if procedure == "dichotomy":
        config = DichotomyConfig(
            variant=str(params.pop("variant", "weak")),
            split=str(params.pop("split", scenario.config.split_rule)),
            league_driven_swap=_as_int(params.pop("swap", None), "swap", 0),
            channel_kind=kind,
        )
        return ranking_document(dichotomy(scenario, config), shares=False)
    if procedure == "cluster":
        channel = scenario.channel(kind)
        k = _as_int(params.pop("k", None), "k", 3)
        seed = _as_int(params.pop("seed", None), "seed", scenario.config.cluster_seed)
        return document_for(cluster_value_systems(channel.personnel_weights, k, seed))
    if procedure == "justice":
        ach = tuple(params.pop("achievement_procedures", ("admin", "democratic")))
        rew = tuple(params.pop("reward_procedures", ("admin", "democratic")))
        return document_for(justice_report(scenario, ach, rew))
    if procedure == "passion":
        policy = params.pop("zero_policy", None)
        return document_for(work_passion(scenario, policy and str(policy)))
    if procedure == "compare":
        return _compare(scenario, params)
    raise ValidationError(f"unknown procedure {procedure!r}; expected one of {PROCEDURES}")


def _compare(scenario: Scenario, params: dict) -> dict:
    metric = str(params.pop("metric", "place_distance"))
    name_a = str(params.pop("list_a", "admin"))
    name_b = str(params.pop("list_b", "democratic"))
    kind_a = str(params.pop("channel_a", "achievements"))
    kind_b = str(params.pop("channel_b", "achievements"))
    ranking_a, shares_a = _ranked_list(scenario, name_a, kind_a)
    ranking_b, shares_b = _ranked_list(scenario, name_b, kind_b)
    if metric == "place_diff":
        value = float(place_diff(ranking_a, ranking_b))
    elif metric == "place_distance":
        value = place_distance(ranking_a, ranking_b)
    elif metric == "score_diff":
        value = score_diff(shares_a, shares_b)
    elif metric == "score_distance":
        value = score_distance(shares_a, shares_b)
    else:
        raise ValidationError(
            f"unknown metric {metric!r}; expected place_diff, place_distance, score_diff or score_distance"
        )
    return comparison_document(metric, value, f"{name_a}@{kind_a}", f"{name_b}@{kind_b}")


# -------------------------------------------------------------------- store


@dataclass
class StoredScenario:
    id: str
    scenario: Scenario
    revision: int = 1
    results: dict[str, dict] = field(default_factory=dict)
    lock: threading.RLock = field(default_factory=threading.RLock)


class ScenarioStore:
    """In-memory scenario index with bundle-file snapshots per mutation."""

    def __init__(self, root: str | Path | None = None):
        self._root = Path(root) if root else None
        self._lock = threading.Lock()
        self._scenarios: dict[str, StoredScenario] = {}
        if self._root and self._root.exists():
            self._reload()

    def _reload(self):
        for state_path in sorted(self._root.glob("*/state.json")):
            state = json.loads(state_path.read_text(encoding="utf-8"))
            scenario = load_scenario(state_path.parent)
            self._scenarios[state["id"]] = StoredScenario(
                state["id"], scenario, int(state["revision"])
            )

    def _snapshot(self, stored: StoredScenario):
        if not self._root:
            return
        directory = self._root / stored.id
        save_scenario(stored.scenario, directory)
        (directory / "state.json").write_text(
            json.dumps({"id": stored.id, "revision": stored.revision}) + "\n", encoding="utf-8"
        )

    def create(self, document: dict, scenario_id: str | None = None) -> StoredScenario:
        scenario = scenario_from_document(document)
        if scenario_id is None:
            digest = hashlib.sha256(
                json.dumps(document, sort_keys=True).encode("utf-8")
            ).hexdigest()[:12]
            scenario_id = f"{_slug(scenario.name)}-{digest}"
        elif not re.fullmatch(r"[A-Za-z0-9_.-]{1,64}", scenario_id):
            raise ValidationError(f"scenario id {scenario_id!r} must be a short slug")
        with self._lock:
            if scenario_id in self._scenarios:
                raise ConflictError(f"scenario id {scenario_id!r} already exists")
            stored = StoredScenario(scenario_id, scenario)
            self._scenarios[scenario_id] = stored
        self._snapshot(stored)
        return stored

    def get(self, scenario_id: str) -> StoredScenario:
        with self._lock:
            stored = self._scenarios.get(scenario_id)
        if stored is None:
            raise NotFoundError(f"no scenario with id {scenario_id!r}")
        return stored

    def ids(self) -> list[str]:
        with self._lock:
            return sorted(self._scenarios)

    def patch_weights(self, scenario_id: str, body: dict) -> StoredScenario:
        stored = self.get(scenario_id)
        with stored.lock:
            self._check_revision(stored, body)
            stored.scenario = _apply_weight_patch(stored.scenario, body)
            stored.revision += 1
            self._snapshot(stored)
        return stored

    def run(self, scenario_id: str, procedure: str, params: dict | None, save_as: str | None, body: dict) -> tuple[StoredScenario, dict]:
        stored = self.get(scenario_id)
        with stored.lock:
            self._check_revision(stored, body)
            document = run_procedure(stored.scenario, procedure, params)
            name = save_as or procedure
            stored.results[name] = {
                "name": name,
                "procedure": procedure,
                "parameters": _echo_params(params),
                "revision": fmt(stored.revision),
                "document": document,
            }
        return stored, document

    @staticmethod
    def _check_revision(stored: StoredScenario, body: dict):
        expected = body.get("expected_revision")
        if expected is not None and int(str(expected)) != stored.revision:
            raise ConflictError(
                f"scenario {stored.id!r} is at revision {stored.revision}, "
                f"request expected {expected}"
            )


def _slug(name: str) -> str:
    cleaned = re.sub(r"[^A-Za-z0-9_.-]+", "-", name).strip("-") or "scenario"
    return cleaned[:32]


def _echo_params(params: dict | None) -> dict:
    out = {}
    for key, value in (params or {}).items():
        if isinstance(value, bool):
            out[key] = value
        elif isinstance(value, (int, float)):
            out[key] = fmt(value)
        elif isinstance(value, (list, tuple)):
            out[key] = [str(v) for v in value]
        else:
            out[key] = str(value)
    return out


def _apply_weight_patch(scenario: Scenario, body: dict) -> Scenario:
    target = str(body.get("target", ""))
    weights = _as_float_list(body.get("weights"), "weights")
    if target == "admin_achievement":
        vector = WeightVector(scenario.achievements.categories, np.array(weights))
        return scenario.replace_weights(admin_achievement=vector)
    if target == "admin_reward":
        if not scenario.has_rewards:
            raise ValidationError("scenario has no reward data; reward-channel procedures unavailable")
        vector = WeightVector(scenario.rewards.categories, np.array(weights))
        return scenario.replace_weights(admin_reward=vector)
    if target == "person":
        staff_id = str(body.get("staff_id", ""))
        kind = str(body.get("channel", "achievements"))
        channel = scenario.channel(kind)
        index = scenario.roster.index_of(staff_id)
        rows = channel.personnel_weights.rows.copy()
        if len(weights) != rows.shape[1]:
            raise ValidationError(
                f"weights must have {rows.shape[1]} entries for channel {kind!r}, got {len(weights)}"
            )
        rows[index] = weights
        matrix = WeightMatrix(scenario.roster, channel.evidence.categories, rows)
        if kind == "achievements":
            return scenario.replace_weights(personnel_achievement=matrix)
        return scenario.replace_weights(personnel_reward=matrix)
    raise ValidationError(
        f"patch target must be admin_achievement, admin_reward or person, got {target!r}"
    )


# ---------------------------------------------------------------- HTTP app


def _summary(stored: StoredScenario) -> dict:
    scenario = stored.scenario
    config = scenario.config
    doc = {
        "id": stored.id,
        "name": scenario.name,
        "revision": fmt(stored.revision),
        "staff": list(scenario.roster.staff_ids),
        "achievement_categories": list(scenario.achievements.categories.names),
        "reward_categories": (
            list(scenario.rewards.categories.names) if scenario.has_rewards else None
        ),
        "config": {
            "tie_rule": config.tie_rule,
            "zero_division_policy": config.zero_division_policy,
            "epsilon": fmt(config.epsilon),
            "league_count": fmt(config.league_count),
            "swap_count": fmt(config.swap_count),
            "split_rule": config.split_rule,
            "cluster_seed": fmt(config.cluster_seed),
        },
        "weights": {
            "admin_achievement": [fmt(float(w)) for w in scenario.admin_achievement_weights.weights],
            "personnel_achievement": {
                s: [fmt(float(w)) for w in row]
                for s, row in zip(
                    scenario.roster.staff_ids, scenario.personnel_achievement_weights.rows
                )
            },
        },
    }
    if scenario.has_rewards:
        doc["weights"]["admin_reward"] = [
            fmt(float(w)) for w in scenario.admin_reward_weights.weights
        ]
        doc["weights"]["personnel_reward"] = {
            s: [fmt(float(w)) for w in row]
            for s, row in zip(scenario.roster.staff_ids, scenario.personnel_reward_weights.rows)
        }
    return doc


def create_app(store: ScenarioStore | None = None, cors_origins: list[str] | None = None):
    from fastapi import Body, FastAPI, Request
    from fastapi.responses import JSONResponse

    app = FastAPI(title="staffrank", docs_url=None, redoc_url=None)
    app.state.store = store or ScenarioStore()
    if cors_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=cors_origins,
            allow_methods=["GET", "POST", "PATCH"],
            allow_headers=["Content-Type"],
        )

    status_by_code = {
        "not_found": 404,
        "conflict": 409,
        "validation_error": 400,
        "shape_error": 400,
        "computation_error": 422,
        "division_by_zero": 422,
    }

    @app.exception_handler(StaffrankError)
    async def _engine_error(_request: Request, err: StaffrankError):
        return JSONResponse(
            status_code=status_by_code.get(err.code, 400),
            content={"code": err.code, "message": err.message, "details": err.details},
        )

    @app.get("/scenarios")
    def list_scenarios():
        return {"scenarios": app.state.store.ids()}

    @app.post("/scenarios", status_code=201)
    def create_scenario(body: dict = Body(...)):
        scenario_id = body.pop("id", None)
        stored = app.state.store.create(body, scenario_id and str(scenario_id))
        return _summary(stored)

    @app.get("/scenarios/{scenario_id}")
    def get_scenario(scenario_id: str):
        return _summary(app.state.store.get(scenario_id))

    @app.patch("/scenarios/{scenario_id}/weights")
    def patch_weights(scenario_id: str, body: dict = Body(...)):
        stored = app.state.store.patch_weights(scenario_id, body)
        return {"id": stored.id, "revision": fmt(stored.revision)}

    @app.post("/scenarios/{scenario_id}/run")
    def run(scenario_id: str, body: dict = Body(...)):
        procedure = str(body.get("procedure", ""))
        params = body.get("parameters") or {}
        if not isinstance(params, dict):
            raise ValidationError("parameters must be an object")
        save_as = body.get("save_as")
        stored, document = app.state.store.run(
            scenario_id, procedure, params, save_as and str(save_as), body
        )
        return {
            "id": stored.id,
            "revision": fmt(stored.revision),
            "procedure": procedure,
            "parameters": _echo_params(params),
            "result": document,
        }

    @app.get("/scenarios/{scenario_id}/results")
    def list_results(scenario_id: str):
        stored = app.state.store.get(scenario_id)
        with stored.lock:
            results = [
                {**entry, "stale": int(entry["revision"]) < stored.revision}
                for _, entry in sorted(stored.results.items())
            ]
            return {"id": stored.id, "revision": fmt(stored.revision), "results": results}

    return app


def serve(
    host: str, port: int, root: str | Path | None, cors_origins: list[str] | None = None
) -> None:  # pragma: no cover
    import uvicorn

    uvicorn.run(
        create_app(ScenarioStore(root), cors_origins), host=host, port=port, log_level="warning"
    )
