"""Result documents and their JSON / CSV / markdown renderings.

Every numeric leaf is serialized as a decimal string with 12
significant digits, so identical inputs give byte-identical documents
on every platform.  Percent rendering happens only in the markdown
layer; stored values are always plain fractions.
"""
from __future__ import annotations

import csv
import io
import json

from .bundles import ReconstructionResult
from .errors import ValidationError
from .metrics import OVERALL_INTERPRETATION, JusticeReport
from .model import AssessmentMatrix, RankingList, ScoreVector
from .passion import PassionResult
from .ranking import OptimismReport
from .stratify import ClusterAssignment, LeaguePartition

__all__ = ["fmt", "document_for", "emit_report", "FORMATS"]

FORMATS = ("json", "csv", "markdown")


def fmt(x: float | int) -> str:
    """Decimal string at 12 significant digits; integers stay integral."""
    if isinstance(x, bool):
        raise ValidationError("booleans are not numeric report values")
    if isinstance(x, int):
        return str(x)
    return "%.12g" % float(x)


# ------------------------------------------------------------ document layer


def ranking_document(ranking: RankingList, shares: bool | None = None) -> dict:
    if shares is None:
        total = sum(e.score for e in ranking.entries)
        shares = not ranking.segmented and abs(total - 1.0) <= 1e-6
    return {
        "kind": "ranking",
        "procedure": ranking.provenance.describe(),
        "tie_rule": ranking.tie_rule,
        "segmented": ranking.segmented,
        "share_scores": bool(shares),
        "entries": [
            {"position": fmt(e.position), "staff_id": e.staff_id, "score": fmt(e.score)}
            for e in ranking.entries
        ],
    }


def scores_document(scores: ScoreVector) -> dict:
    return {
        "kind": "scores",
        "procedure": scores.provenance.describe() if scores.provenance else "scores",
        "normalized": scores.normalized,
        "degenerate": scores.degenerate,
        "scores": [
            {"staff_id": s, "score": fmt(float(v))}
            for s, v in zip(scores.roster.staff_ids, scores.scores)
        ],
    }


def assessment_document(matrix: AssessmentMatrix) -> dict:
    ids = matrix.roster.staff_ids
    return {
        "kind": "assessment_matrix",
        "normalized": matrix.normalized,
        "staff": list(ids),
        "degenerate_rows": [ids[i] for i in matrix.degenerate_rows],
        "rows": [[fmt(float(v)) for v in row] for row in matrix.values],
    }


def optimism_document(report: OptimismReport) -> dict:
    return {
        "kind": "optimism",
        "totals": [
            {"staff_id": s, "total": fmt(t)}
            for s, t in zip(report.roster.staff_ids, report.totals)
        ],
        "most_optimistic": list(report.most_optimistic),
        "most_pessimistic": list(report.most_pessimistic),
    }


def leagues_document(partition: LeaguePartition) -> dict:
    return {
        "kind": "leagues",
        "source": partition.source.describe(),
        "leagues": [
            {"league": fmt(i), "leader": leader, "members": list(members)}
            for i, (leader, members) in enumerate(zip(partition.leaders, partition.leagues), start=1)
        ],
    }


def clusters_document(assignment: ClusterAssignment) -> dict:
    return {
        "kind": "clusters",
        "seed": fmt(assignment.seed),
        "objective": fmt(assignment.objective),
        "clusters": [
            {
                "cluster": fmt(i),
                "members": list(members),
                "centroid": [fmt(c) for c in centroid],
                "typical_representatives": list(reps),
            }
            for i, (members, centroid, reps) in enumerate(
                zip(assignment.clusters, assignment.centroids, assignment.typical_representatives),
                start=1,
            )
        ],
    }


def justice_document(report: JusticeReport) -> dict:
    return {
        "kind": "justice",
        "pairs": [
            {
                "achievement_list": a,
                "reward_list": b,
                "injustice": fmt(v),
                **(
                    {"interpretation": report.interpretation_notes[(a, b)]}
                    if (a, b) in report.interpretation_notes
                    else {}
                ),
            }
            for (a, b), v in report.pairwise.items()
        ],
        "overall": fmt(report.overall),
        "overall_interpretation": OVERALL_INTERPRETATION,
        "all_zero": report.all_zero,
    }


def passion_document(result: PassionResult, include_matrix: bool = True) -> dict:
    doc = {
        "kind": "passion",
        "zero_policy": result.zero_policy_used,
        "average": [
            {"staff_id": s, "share": fmt(float(v))}
            for s, v in zip(result.average.roster.staff_ids, result.average.scores)
        ],
        "ranking": [
            {"position": fmt(e.position), "staff_id": e.staff_id, "score": fmt(e.score)}
            for e in result.ranking.entries
        ],
    }
    if include_matrix:
        doc["matrix"] = assessment_document(result.wp)
    return doc


def comparison_document(metric: str, value: float, list_a: str, list_b: str) -> dict:
    return {
        "kind": "comparison",
        "metric": metric,
        "list_a": list_a,
        "list_b": list_b,
        "value": fmt(value),
    }


def reconstruction_document(result: ReconstructionResult) -> dict:
    return {
        "kind": "reconstruction",
        "categories": list(result.weights.categories.names),
        "weights": [fmt(float(w)) for w in result.weights.weights],
        "raw_weights": [fmt(w) for w in result.raw_weights],
        "pre_normalization_sum": fmt(result.pre_normalization_sum),
        "max_residual": fmt(result.max_residual),
    }


_BUILDERS = {
    RankingList: ranking_document,
    ScoreVector: scores_document,
    AssessmentMatrix: assessment_document,
    OptimismReport: optimism_document,
    LeaguePartition: leagues_document,
    ClusterAssignment: clusters_document,
    JusticeReport: justice_document,
    PassionResult: passion_document,
    ReconstructionResult: reconstruction_document,
}


def document_for(result) -> dict:
    if isinstance(result, dict):
        return result
    builder = _BUILDERS.get(type(result))
    if builder is None:
        raise ValidationError(f"no report layout for {type(result).__name__}")
    return builder(result)


# ------------------------------------------------------------ render layer


def _percent(decimal_string: str) -> str:
    return f"{float(decimal_string) * 100:.2f}%"


def _csv_rows(doc: dict) -> list[list[str]]:
    kind = doc["kind"]
    if kind == "ranking":
        return [["position", "staff_id", "score"]] + [
            [e["position"], e["staff_id"], e["score"]] for e in doc["entries"]
        ]
    if kind == "scores":
        return [["staff_id", "score"]] + [[s["staff_id"], s["score"]] for s in doc["scores"]]
    if kind == "assessment_matrix":
        return [["assessor", *doc["staff"]]] + [
            [sid, *row] for sid, row in zip(doc["staff"], doc["rows"])
        ]
    if kind == "optimism":
        return [["staff_id", "total"]] + [[t["staff_id"], t["total"]] for t in doc["totals"]]
    if kind == "leagues":
        return [["league", "leader", "member"]] + [
            [lg["league"], lg["leader"], member] for lg in doc["leagues"] for member in lg["members"]
        ]
    if kind == "clusters":
        return [["cluster", "member", "typical"]] + [
            [c["cluster"], member, "yes" if member in c["typical_representatives"] else "no"]
            for c in doc["clusters"]
            for member in c["members"]
        ]
    if kind == "justice":
        rows = [["achievement_list", "reward_list", "injustice"]]
        rows += [[p["achievement_list"], p["reward_list"], p["injustice"]] for p in doc["pairs"]]
        rows.append(["overall", "", doc["overall"]])
        return rows
    if kind == "passion":
        return [["position", "staff_id", "average_share"]] + [
            [e["position"], e["staff_id"], e["score"]] for e in doc["ranking"]
        ]
    if kind == "comparison":
        return [["metric", "list_a", "list_b", "value"], [doc["metric"], doc["list_a"], doc["list_b"], doc["value"]]]
    if kind == "reconstruction":
        rows = [["category", "weight", "raw_weight"]]
        rows += [
            [c, w, r] for c, w, r in zip(doc["categories"], doc["weights"], doc["raw_weights"])
        ]
        rows.append(["pre_normalization_sum", doc["pre_normalization_sum"], ""])
        rows.append(["max_residual", doc["max_residual"], ""])
        return rows
    raise ValidationError(f"no csv layout for document kind {kind!r}")


def _md_table(header: list[str], rows: list[list[str]]) -> list[str]:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join(" --- " for _ in header) + "|"]
    lines += ["| " + " | ".join(row) + " |" for row in rows]
    return lines


def _markdown_lines(doc: dict) -> list[str]:
    kind = doc["kind"]
    if kind == "ranking":
        share = doc.get("share_scores", False)
        title = doc.get("procedure", "ranking")
        rows = [
            [e["position"], e["staff_id"], _percent(e["score"]) if share else e["score"]]
            for e in doc["entries"]
        ]
        return [f"## Ranking: {title}", ""] + _md_table(["#", "Staff", "Score"], rows)
    if kind == "scores":
        rows = [[s["staff_id"], _percent(s["score"]) if doc["normalized"] else s["score"]] for s in doc["scores"]]
        return [f"## Scores: {doc.get('procedure', '')}".rstrip(), ""] + _md_table(["Staff", "Score"], rows)
    if kind == "assessment_matrix":
        header = ["Assessor \\ Assessed", *doc["staff"]]
        rows = [
            [sid, *([_percent(v) for v in row] if doc["normalized"] else row)]
            for sid, row in zip(doc["staff"], doc["rows"])
        ]
        return ["## Assessment matrix", ""] + _md_table(header, rows)
    if kind == "optimism":
        lines = ["## Assessor raw totals", ""]
        lines += _md_table(["Staff", "Total"], [[t["staff_id"], t["total"]] for t in doc["totals"]])
        lines += [
            "",
            f"Most optimistic: {', '.join(doc['most_optimistic'])}.",
            f"Most pessimistic: {', '.join(doc['most_pessimistic'])}.",
        ]
        return lines
    if kind == "leagues":
        lines = ["## Leagues", ""]
        for lg in doc["leagues"]:
            lines.append(f"- League {lg['league']} (leader {lg['leader']}): " + ", ".join(lg["members"]))
        if "reranked" in doc:
            lines += ["", "### Re-ranked by league leaders", ""]
            lines += _md_table(
                ["#", "Staff", "Score"],
                [[e["position"], e["staff_id"], e["score"]] for e in doc["reranked"]["entries"]],
            )
        return lines
    if kind == "clusters":
        lines = ["## Value-system clusters", ""]
        for c in doc["clusters"]:
            reps = ", ".join(c["typical_representatives"])
            lines.append(f"- Cluster {c['cluster']}: " + ", ".join(c["members"]) + f" (typical: {reps})")
        return lines
    if kind == "justice":
        rows = [
            [p["achievement_list"], p["reward_list"], _percent(p["injustice"])]
            for p in doc["pairs"]
        ]
        lines = ["## Justice report", ""] + _md_table(
            ["Achievement list", "Reward list", "Injustice"], rows
        )
        lines += ["", f"Overall injustice: {_percent(doc['overall'])}.", ""]
        for p in doc["pairs"]:
            if "interpretation" in p:
                lines.append(f"- {p['achievement_list']} vs {p['reward_list']}: {p['interpretation']}")
        return lines
    if kind == "passion":
        rows = [[e["position"], e["staff_id"], _percent(e["score"])] for e in doc["ranking"]]
        return ["## Work passion", ""] + _md_table(["#", "Staff", "Average share"], rows)
    if kind == "comparison":
        return [f"{doc['metric']}({doc['list_a']}, {doc['list_b']}) = {doc['value']}"]
    if kind == "reconstruction":
        rows = list(zip(doc["categories"], doc["weights"], doc["raw_weights"]))
        lines = ["## Reconstructed value system", ""] + _md_table(
            ["Category", "Weight", "Raw fit"], [list(r) for r in rows]
        )
        lines += [
            "",
            f"Pre-normalization sum: {doc['pre_normalization_sum']}; "
            f"max residual: {doc['max_residual']}.",
        ]
        return lines
    raise ValidationError(f"no markdown layout for document kind {kind!r}")


def emit_report(result, format: str = "json") -> str:
    """Serialize any engine result deterministically in the chosen format."""
    if format not in FORMATS:
        raise ValidationError(f"format must be one of {FORMATS}, got {format!r}")
    doc = document_for(result)
    if format == "json":
        return json.dumps(doc, indent=2) + "\n"
    if format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerows(_csv_rows(doc))
        return out.getvalue()
    return "\n".join(_markdown_lines(doc)) + "\n"
