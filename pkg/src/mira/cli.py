"""Command-line entry point.

Subcommands: ingest, recommend, experiment, compare, rate-session.
Exit codes: 0 success, 1 data error (I/O, parsing, integrity, session
collisions), 2 query error (unknown user, invalid stimulus).

Every file artifact gets a sibling RunManifest (<name>.manifest.json)
recording the command, configuration, dataset paths, resolved user list
and tool version — enough to replay the run exactly. Manifests carry no
timestamps, so identical invocations produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .clustering import fit_catalog_model
from .cycle import CycleConfig, RecommendationList, run_cycle
from .errors import (
    InfeasibleClusteringError,
    InvalidStimulusError,
    MiraError,
    ParseError,
    ReferentialIntegrityError,
    UserNotFoundError,
)
from .evaluation import (
    comparison_to_csv_text,
    comparison_to_json_dict,
    compare_models,
    evaluate_session,
    run_grid,
    top_users_by_rating_count,
)
from .ingest import Catalog, RatingsStore, ingest_session_ratings, parse_movies, parse_ratings

TITLE_WIDTH = 60

DEFAULT_KS = (5, 6, 7, 8, 9, 10)
DEFAULT_SIMILARS = (5, 10, 20, 30, 40, 50)


def _parse_with_source(path: Path, parser, *extra):
    try:
        with open(path, "rb") as handle:
            return parser(handle, *extra)
    except ParseError as err:
        err.source = str(path)
        raise
    except ReferentialIntegrityError as err:
        raise ReferentialIntegrityError(err.movie_ids, f"{path}: {err}") from None


def _load_dataset(args) -> tuple[Catalog, RatingsStore]:
    catalog = _parse_with_source(Path(args.movies), parse_movies)
    store = _parse_with_source(Path(args.ratings), parse_ratings, catalog)
    return catalog, store


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _resolve_users(args, store: RatingsStore) -> list[int]:
    if getattr(args, "users", None):
        return list(args.users)
    return top_users_by_rating_count(store, args.top_users)


def _config_dict(config: CycleConfig) -> dict:
    return {
        "k": config.k,
        "n_similar": config.n_similar,
        "n_recommendations": config.n_recommendations,
        "seed": config.seed,
    }


def _write_manifest(out_path: Path, command: str, config: CycleConfig | None,
                    args, outputs: list[str], extra: dict | None = None) -> None:
    manifest = {
        "command": command,
        "config": _config_dict(config) if config else None,
        "dataset": {
            "movies": args.movies,
            "ratings": args.ratings,
        },
        "outputs": outputs,
        "version": __version__,
    }
    if extra:
        manifest.update(extra)
    out_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")


def _recommendation_table(rec: RecommendationList) -> str:
    lines = [f"user {rec.user_id}  cluster: {rec.cluster_label}"]
    lines.append(f"{'rank':>4}  {'movie':>6}  {'rating':>6}  title")
    for item in rec.items:
        title = item.title[:TITLE_WIDTH]
        lines.append(f"{item.rank:>4}  {item.movie_id:>6}  {item.mean_rating:>6.3f}  {title}")
    return "\n".join(lines) + "\n"


def _render_recommendation(rec: RecommendationList, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rec.to_json_dict(), indent=2) + "\n"
    return _recommendation_table(rec)


def cmd_ingest(args) -> int:
    catalog, store = _load_dataset(args)
    print(f"{len(catalog)} movies, {store.n_users()} users, {store.n_ratings()} ratings")
    print("referential integrity: OK")
    return 0


def cmd_recommend(args) -> int:
    catalog, store = _load_dataset(args)
    config = CycleConfig(k=args.k, n_similar=args.similar,
                         n_recommendations=args.count, seed=args.seed)
    model = fit_catalog_model(catalog, config.k, config.seed)
    rec = run_cycle(store, catalog, model, config, args.user_id)
    text = _render_recommendation(rec, args.format)
    if args.out:
        out_path = Path(args.out)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_text(text, encoding="utf-8")
        manifest_path = out_path.with_name(out_path.stem + ".manifest.json")
        _write_manifest(manifest_path, "recommend", config, args,
                        [str(out_path)], {"user_id": args.user_id, "format": args.format})
        print(f"wrote {out_path}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_experiment(args) -> int:
    catalog, store = _load_dataset(args)
    users = _resolve_users(args, store)
    grid = run_grid(store, catalog, users, args.ks, args.similars,
                    args.count, args.seed)

    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    csv_path = prefix.with_name(prefix.name + ".csv")
    json_path = prefix.with_name(prefix.name + ".json")
    manifest_path = prefix.with_name(prefix.name + ".manifest.json")
    csv_path.write_text(grid.to_csv_text(), encoding="utf-8")
    json_path.write_text(json.dumps(grid.to_json_dict(), indent=2) + "\n", encoding="utf-8")
    config = CycleConfig(k=args.ks[0], n_similar=args.similars[0],
                         n_recommendations=args.count, seed=args.seed)
    _write_manifest(manifest_path, "experiment", config, args,
                    [str(csv_path), str(json_path)],
                    {"ks": list(args.ks), "similars": list(args.similars),
                     "users": users})
    print(f"wrote {csv_path}")
    print(f"wrote {json_path}")
    return 0


def cmd_compare(args) -> int:
    catalog, store = _load_dataset(args)
    users = _resolve_users(args, store)
    config = CycleConfig(k=args.k, n_similar=args.similar,
                         n_recommendations=args.count, seed=args.seed)
    mira_report, baseline_report = compare_models(store, catalog, users, config)
    print(f"mira mean precision: {mira_report.mean_precision!r}")
    print(f"baseline mean precision: {baseline_report.mean_precision!r}")
    if args.out:
        prefix = Path(args.out)
        prefix.parent.mkdir(parents=True, exist_ok=True)
        csv_path = prefix.with_name(prefix.name + ".csv")
        json_path = prefix.with_name(prefix.name + ".json")
        manifest_path = prefix.with_name(prefix.name + ".manifest.json")
        csv_path.write_text(comparison_to_csv_text(mira_report, baseline_report),
                            encoding="utf-8")
        payload = comparison_to_json_dict(mira_report, baseline_report)
        json_path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        _write_manifest(manifest_path, "compare", config, args,
                        [str(csv_path), str(json_path)], {"users": users})
        print(f"wrote {csv_path}")
        print(f"wrote {json_path}")
    return 0


def cmd_rate_session(args) -> int:
    catalog, store = _load_dataset(args)
    extended = _parse_with_source(Path(args.session), ingest_session_ratings,
                                  store, catalog)
    (session_user,) = set(extended.by_user) - set(store.by_user)
    config = CycleConfig(k=args.k, n_similar=args.similar,
                         n_recommendations=args.count, seed=args.seed)
    model = fit_catalog_model(catalog, config.k, config.seed)
    rec = run_cycle(extended, catalog, model, config, session_user)
    report = evaluate_session(extended, catalog, session_user, config)
    sys.stdout.write(_recommendation_table(rec))
    value = report.per_user[session_user]
    print(f"session user {session_user}: precision {value!r}")
    if args.out:
        out_path = Path(args.out)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        payload = {
            "user_id": session_user,
            "precision": value,
            "config": _config_dict(config),
            "recommendations": rec.to_json_dict(),
        }
        out_path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        manifest_path = out_path.with_name(out_path.stem + ".manifest.json")
        _write_manifest(manifest_path, "rate-session", config, args,
                        [str(out_path)], {"session": args.session})
        print(f"wrote {out_path}")
    return 0


def _add_dataset_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--movies", required=True, help="path to the movies file")
    sub.add_argument("--ratings", required=True, help="path to the ratings file")


def _add_config_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--k", type=int, default=8, help="number of clusters")
    sub.add_argument("--similar", type=int, default=10, help="similar users per cycle")
    sub.add_argument("--count", type=int, default=40, help="recommendations per list")
    sub.add_argument("--seed", type=int, default=0, help="clustering seed")


def _add_user_selection_args(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--users", type=_int_list,
                       help="comma-separated user ids to evaluate")
    group.add_argument("--top-users", type=int, default=10, dest="top_users",
                       help="evaluate the N users with the most ratings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mira",
        description="Cognitive-cycle movie recommender and evaluation harness",
    )
    parser.add_argument("--version", action="version", version=f"mira {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    ingest = subparsers.add_parser("ingest", help="validate a dataset and print counts")
    _add_dataset_args(ingest)
    ingest.set_defaults(func=cmd_ingest)

    recommend = subparsers.add_parser("recommend", help="recommend movies for one user")
    _add_dataset_args(recommend)
    recommend.add_argument("user_id", type=int)
    _add_config_args(recommend)
    recommend.add_argument("--format", choices=("json", "table"), default="table")
    recommend.add_argument("--out", help="write the list here instead of stdout")
    recommend.set_defaults(func=cmd_recommend)

    experiment = subparsers.add_parser(
        "experiment", help="run the (k, n_similar) precision grid")
    _add_dataset_args(experiment)
    experiment.add_argument("--ks", type=_int_list, default=list(DEFAULT_KS),
                            help="comma-separated cluster counts")
    experiment.add_argument("--similars", type=_int_list, default=list(DEFAULT_SIMILARS),
                            help="comma-separated similar-user counts")
    _add_user_selection_args(experiment)
    experiment.add_argument("--count", type=int, default=40)
    experiment.add_argument("--seed", type=int, default=0)
    experiment.add_argument("--out", required=True,
                            help="output prefix for the CSV/JSON reports")
    experiment.set_defaults(func=cmd_experiment)

    compare = subparsers.add_parser(
        "compare", help="precision of the cognitive model vs the CF baseline")
    _add_dataset_args(compare)
    _add_config_args(compare)
    _add_user_selection_args(compare)
    compare.add_argument("--out", help="optional output prefix for CSV/JSON reports")
    compare.set_defaults(func=cmd_compare)

    session = subparsers.add_parser(
        "rate-session", help="ingest a volunteer session CSV and evaluate it")
    session.add_argument("session", help="CSV with header user_id,movie_id,rating")
    _add_dataset_args(session)
    _add_config_args(session)
    session.add_argument("--out", help="optional output path for the session report")
    session.set_defaults(func=cmd_rate_session)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UserNotFoundError, InvalidStimulusError,
            InfeasibleClusteringError, ValueError) as err:
        # bad query or bad configuration for this dataset
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (MiraError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
