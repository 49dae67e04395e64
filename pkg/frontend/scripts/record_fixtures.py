"""Record service responses the explorer tests replay.

Runs a fixed request sequence against an in-process service holding the
thirty-person bundle and stores each raw response body under
tests/fixtures/.  The explorer's contract tests assert against these
bytes, and a test on the Python side replays the same sequence to prove
the recordings still match the live service.
"""
from pathlib import Path

FRONTEND = Path(__file__).resolve().parent.parent
REPO = FRONTEND.parent
FIXTURES = FRONTEND / "tests" / "fixtures"

STALE_PATCH = {
    "target": "admin_achievement",
    "weights": [0.3, 0.3, 0.3, 0.1],
    "expected_revision": "1",
}


def run_sequence():
    """Return [(file name, status, body bytes)] for the fixed sequence."""
    from fastapi.testclient import TestClient

    import staffrank as sr

    scenario = sr.load_scenario(REPO / "fixtures" / "campus30")
    document = sr.scenario_to_document(scenario)
    document["id"] = "campus30"

    recordings = []
    app = sr.create_app(sr.ScenarioStore())
    with TestClient(app) as client:
        def record(name, response, expected_status):
            assert response.status_code == expected_status, (
                name,
                response.status_code,
                response.text,
            )
            recordings.append((name, response.status_code, response.content))

        record("scenario_created.json", client.post("/scenarios", json=document), 201)
        record("scenarios_list.json", client.get("/scenarios"), 200)
        record("scenario_summary.json", client.get("/scenarios/campus30"), 200)
        for procedure in ("admin_rank", "weighted_democracy", "justice", "passion"):
            record(
                f"run_{procedure}.json",
                client.post("/scenarios/campus30/run", json={"procedure": procedure}),
                200,
            )
        record(
            "error_unknown_procedure.json",
            client.post("/scenarios/campus30/run", json={"procedure": "tarot"}),
            400,
        )
        record(
            "patch_ok.json",
            client.patch(
                "/scenarios/campus30/weights",
                json={
                    "target": "admin_achievement",
                    "weights": [0.25, 0.25, 0.25, 0.25],
                    "expected_revision": "1",
                },
            ),
            200,
        )
        record(
            "conflict_409.json",
            client.patch("/scenarios/campus30/weights", json=STALE_PATCH),
            409,
        )
        record("scenario_summary_rev2.json", client.get("/scenarios/campus30"), 200)
        record(
            "run_admin_rank_rev2.json",
            client.post("/scenarios/campus30/run", json={"procedure": "admin_rank"}),
            200,
        )
        record("results_listing.json", client.get("/scenarios/campus30/results"), 200)
    return recordings


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    for name, _, content in run_sequence():
        (FIXTURES / name).write_bytes(content)
        print(f"wrote {FIXTURES / name} ({len(content)} bytes)")


if __name__ == "__main__":
    main()
