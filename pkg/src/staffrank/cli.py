"""Command-line entry point mirroring every service procedure.

Exit codes: 0 success, 1 invalid input, 2 computation failure,
64 usage errors (unknown flags or subcommands).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bundles import (
    _read_table,
    load_scenario,
    reconstruct_weight_matrix,
    reconstruct_weights,
    snap_weights_to_grid,
)
from .errors import ComputationError, StaffrankError, ValidationError
from .model import AssessmentMatrix, CategorySet, EvidenceMatrix, Roster, Scenario
from .reports import FORMATS, document_for, emit_report, fmt
from .service import run_procedure

USAGE_EXIT = 64


class Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; the contract wants 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _add_common(sub: argparse.ArgumentParser, bundle: bool = True):
    if bundle:
        sub.add_argument("--bundle", required=True, help="bundle directory or manifest path")
    sub.add_argument("--format", choices=FORMATS, default="json", help="output format")
    sub.add_argument("--out", help="write the report here instead of stdout")
    sub.add_argument("--figures", help="also render figures into this directory")


def build_parser() -> Parser:
    parser = Parser(prog="staffrank", description="Staff-assessment analytics engine")
    commands = parser.add_subparsers(dest="command", required=True)

    rank = commands.add_parser("rank", help="administrative, democratic and compromise rankings")
    rank.add_argument(
        "--procedure",
        default="admin",
        choices=["admin", "democratic", "weighted-democracy", "leader-compromise"],
    )
    rank.add_argument("--channel", default="achievements", choices=["achievements", "rewards"])
    rank.add_argument("--leader-strategy", default="admin_top", help="admin_top, league_top:N or explicit:ID")
    _add_common(rank)

    leagues = commands.add_parser("leagues", help="split the administrative ranking into leagues")
    leagues.add_argument("--count", type=int, help="number of leagues (default from bundle config)")
    leagues.add_argument("--channel", default="achievements", choices=["achievements", "rewards"])
    _add_common(leagues)

    lift = commands.add_parser("social-lift", help="swap league boundaries after leader re-ranking")
    lift.add_argument("--swap-k", type=int, help="members exchanged per boundary")
    lift.add_argument("--count", type=int, help="number of leagues")
    lift.add_argument("--channel", default="achievements", choices=["achievements", "rewards"])
    _add_common(lift)

    cluster = commands.add_parser("cluster", help="group staff by value-system similarity")
    cluster.add_argument("--k", type=int, default=3)
    cluster.add_argument("--seed", type=int, help="clustering seed (default from bundle config)")
    cluster.add_argument("--channel", default="achievements", choices=["achievements", "rewards"])
    _add_common(cluster)

    dich = commands.add_parser("dichotomy", help="recursive winners/losers compromise ranking")
    dich.add_argument("--variant", default="weak", choices=["weak", "strong", "self"])
    dich.add_argument("--split", default=None, choices=["half", "golden", "golden_ratio"])
    dich.add_argument("--swap", type=int, default=0, help="cross-boundary exchanges per split")
    dich.add_argument("--channel", default="achievements", choices=["achievements", "rewards"])
    _add_common(dich)

    compare = commands.add_parser("compare", help="distance between two ranking lists")
    compare.add_argument("--list-a", default="admin")
    compare.add_argument("--list-b", default="democratic")
    compare.add_argument(
        "--metric",
        default="place_distance",
        choices=["place_diff", "place_distance", "score_diff", "score_distance"],
    )
    compare.add_argument("--channel-a", default="achievements", choices=["achievements", "rewards"])
    compare.add_argument("--channel-b", default="achievements", choices=["achievements", "rewards"])
    _add_common(compare)

    justice = commands.add_parser("justice", help="achievement/reward mismatch analytics")
    justice.add_argument("--pairs", default="canonical", choices=["canonical", "all"])
    justice.add_argument("--achievement-procedures", nargs="+", help="override the achievement lists")
    justice.add_argument("--reward-procedures", nargs="+", help="override the reward lists")
    _add_common(justice)

    passion = commands.add_parser("passion", help="intrinsic vs extrinsic motivation scoring")
    passion.add_argument("--zero-policy", choices=["strict", "zero_for_zero", "epsilon"])
    _add_common(passion)

    recon = commands.add_parser(
        "reconstruct-weights", help="recover a value system from published scores"
    )
    recon.add_argument("--evidence", required=True, help="evidence CSV (staff x categories)")
    recon.add_argument(
        "--observed", required=True, help="observed CSV: one score column, or a full matrix with --per-row"
    )
    recon.add_argument("--per-row", action="store_true", help="treat observed as an assessment matrix")
    recon.add_argument("--snap", type=int, help="snap weights to this many decimals when exact")
    _add_common(recon, bundle=False)

    serve = commands.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--root", help="directory for scenario snapshots")
    serve.add_argument(
        "--cors-origin",
        action="append",
        dest="cors_origins",
        metavar="ORIGIN",
        help="origin allowed to call the service from a browser; repeatable",
    )

    return parser


def _emit(document, args) -> None:
    text = emit_report(document, args.format)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _render_figures(args, scenario: Scenario, document: dict) -> None:
    if not getattr(args, "figures", None):
        return
    from . import figures as fig
    from .metrics import justice_report
    from .passion import work_passion

    directory = Path(args.figures)
    kind = document.get("kind")
    if kind in ("ranking", "leagues"):
        name = document.get("procedure", "ranking").split()[0] if kind == "ranking" else "league_rerank"
        entries = document["entries"] if kind == "ranking" else document["reranked"]["entries"]
        ranking = _ranking_from_entries(entries)
        fig.save_ranking_figure(ranking, directory / f"{name}.png", title=name)
    elif kind == "clusters":
        from .stratify import cluster_value_systems

        channel = scenario.channel(getattr(args, "channel", "achievements"))
        assignment = cluster_value_systems(
            channel.personnel_weights,
            int(document["clusters"][-1]["cluster"]),
            int(document["seed"]),
        )
        fig.save_cluster_scatter(channel.personnel_weights, assignment, directory / "clusters.png")
    elif kind == "justice":
        ach = tuple(p["achievement_list"] for p in document["pairs"])
        rew = tuple(p["reward_list"] for p in document["pairs"])
        report = justice_report(scenario, tuple(dict.fromkeys(ach)), tuple(dict.fromkeys(rew)))
        fig.save_justice_heatmap(report, directory / "justice.png")
    elif kind == "passion":
        result = work_passion(scenario, document.get("zero_policy"))
        fig.save_passion_figure(result, directory / "passion.png")
        fig.save_assessment_heatmap(result.wp, directory / "passion_matrix.png", title="work passion shares")


def _ranking_from_entries(entries):
    from .model import Provenance, RankEntry, RankingList

    return RankingList(
        tuple(
            RankEntry(e["staff_id"], float(e["score"]), int(e["position"])) for e in entries
        ),
        "source_order",
        Provenance("figure"),
        segmented=True,
    )


def _run_bundle_command(args) -> dict:
    scenario = load_scenario(args.bundle)
    command = args.command
    if command == "rank":
        procedure = {
            "admin": "admin_rank",
            "democratic": "democratic_rank",
            "weighted-democracy": "weighted_democracy",
            "leader-compromise": "leader_compromise",
        }[args.procedure]
        params = {"channel": args.channel}
        if procedure == "leader_compromise":
            params["leader_strategy"] = args.leader_strategy
        document = run_procedure(scenario, procedure, params)
    elif command == "leagues":
        params = {"channel": args.channel}
        if args.count is not None:
            params["count"] = args.count
        document = run_procedure(scenario, "leagues", params)
    elif command == "social-lift":
        params = {"channel": args.channel}
        if args.swap_k is not None:
            params["swap_k"] = args.swap_k
        if args.count is not None:
            params["count"] = args.count
        document = run_procedure(scenario, "social_lift", params)
    elif command == "cluster":
        params = {"channel": args.channel, "k": args.k}
        if args.seed is not None:
            params["seed"] = args.seed
        document = run_procedure(scenario, "cluster", params)
    elif command == "dichotomy":
        split = args.split or scenario.config.split_rule
        if split == "golden":
            split = "golden_ratio"
        document = run_procedure(
            scenario,
            "dichotomy",
            {"channel": args.channel, "variant": args.variant, "split": split, "swap": args.swap},
        )
    elif command == "compare":
        document = run_procedure(
            scenario,
            "compare",
            {
                "list_a": args.list_a,
                "list_b": args.list_b,
                "metric": args.metric,
                "channel_a": args.channel_a,
                "channel_b": args.channel_b,
            },
        )
    elif command == "justice":
        params = {}
        if args.pairs == "all":
            from .metrics import ACHIEVEMENT_PROCEDURES, REWARD_PROCEDURES

            params["achievement_procedures"] = list(ACHIEVEMENT_PROCEDURES)
            params["reward_procedures"] = list(REWARD_PROCEDURES)
        if args.achievement_procedures:
            params["achievement_procedures"] = args.achievement_procedures
        if args.reward_procedures:
            params["reward_procedures"] = args.reward_procedures
        document = run_procedure(scenario, "justice", params)
    elif command == "passion":
        params = {}
        if args.zero_policy:
            params["zero_policy"] = args.zero_policy
        document = run_procedure(scenario, "passion", params)
    else:  # pragma: no cover
        raise ValidationError(f"unknown command {command!r}")
    _render_figures(args, scenario, document)
    return document


def _run_reconstruct(args):
    ids, cats, values = _read_table(
        Path(args.evidence).read_text(encoding="utf-8"), Path(args.evidence).name
    )
    roster = Roster(tuple(ids))
    evidence = EvidenceMatrix(roster, CategorySet(tuple(cats), "achievements"), values)
    obs_ids, obs_cols, obs_values = _read_table(
        Path(args.observed).read_text(encoding="utf-8"), Path(args.observed).name
    )
    if tuple(obs_ids) != roster.staff_ids:
        raise ValidationError("observed scores list different staff than the evidence file")
    if args.per_row:
        matrix = AssessmentMatrix(roster, obs_values, normalized=False)
        _, results = reconstruct_weight_matrix(evidence, matrix)
        documents = []
        for staff_id, result in zip(roster.staff_ids, results):
            doc = document_for(result)
            doc["staff_id"] = staff_id
            if args.snap:
                snapped = snap_weights_to_grid(result.weights, args.snap)
                doc["snapped"] = [fmt(float(w)) for w in snapped.weights] if snapped else None
            documents.append(doc)
        return {"kind": "reconstruction_rows", "rows": documents}
    if obs_values.shape[1] != 1:
        raise ValidationError(
            f"{Path(args.observed).name}: expected one score column, got {obs_values.shape[1]} "
            "(use --per-row for matrices)"
        )
    result = reconstruct_weights(evidence, obs_values[:, 0])
    document = document_for(result)
    if args.snap:
        snapped = snap_weights_to_grid(result.weights, args.snap)
        document["snapped"] = [fmt(float(w)) for w in snapped.weights] if snapped else None
    return document


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "serve":
            from .service import serve

            serve(args.host, args.port, args.root, args.cors_origins)
            return 0
        if args.command == "reconstruct-weights":
            document = _run_reconstruct(args)
            if document["kind"] == "reconstruction_rows" and args.format != "json":
                raise ValidationError("per-row reconstruction reports are json only")
        else:
            document = _run_bundle_command(args)
        _emit(document, args)
        return 0
    except ValidationError as err:
        sys.stderr.write(f"error ({err.code}): {err.message}\n")
        for detail in err.details:
            sys.stderr.write(f"  - {detail}\n")
        return 1
    except ComputationError as err:
        sys.stderr.write(f"error ({err.code}): {err.message}\n")
        for detail in err.details:
            sys.stderr.write(f"  - {detail}\n")
        return 2
    except StaffrankError as err:  # pragma: no cover
        sys.stderr.write(f"error ({err.code}): {err.message}\n")
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
