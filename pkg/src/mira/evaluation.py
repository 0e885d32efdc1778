"""Precision metric, experiment grid, model comparison, session evaluation.

A recommended movie counts as correct when at least one of its genres is
among the user's preferred genres: the six genres with the highest counts
of that user's movies rated 4 or above. Precision of a list is
correct / length; reports keep the raw per-user values so per-user plots
can be regenerated, not just the means.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .baseline import baseline_recommend
from .clustering import fit_catalog_model
from .cycle import CycleConfig, RecommendationList, run_cycle
from .errors import UserNotFoundError
from .ingest import Catalog, RatingsStore
from .memory import UserHistory, fetch_user

PREFERRED_GENRE_COUNT = 6


@dataclass(frozen=True)
class PreferredGenres:
    """A user's top genres, best first."""

    user_id: int
    genres: tuple[str, ...]


@dataclass(frozen=True)
class PrecisionReport:
    """Per-user precision plus the arithmetic mean, for one configuration."""

    config: CycleConfig
    per_user: dict[int, float]
    mean_precision: float

    @classmethod
    def from_per_user(cls, config: CycleConfig, per_user: dict[int, float]) -> "PrecisionReport":
        mean = sum(per_user.values()) / len(per_user) if per_user else 0.0
        return cls(config, per_user, mean)


@dataclass(frozen=True)
class GridReport:
    """PrecisionReports keyed by (k, n_similar), covering the full grid."""

    cells: dict[tuple[int, int], PrecisionReport]

    def to_json_dict(self) -> dict:
        cells = []
        for (k, n_similar), report in self.cells.items():
            cells.append({
                "k": k,
                "n_similar": n_similar,
                "n_recommendations": report.config.n_recommendations,
                "seed": report.config.seed,
                "mean_precision": report.mean_precision,
                "per_user": {str(u): p for u, p in report.per_user.items()},
            })
        return {"cells": cells}

    def to_csv_text(self) -> str:
        lines = ["k,n_similar,user_id,precision"]
        for (k, n_similar), report in self.cells.items():
            for user_id, value in report.per_user.items():
                lines.append(f"{k},{n_similar},{user_id},{value!r}")
            lines.append(f"{k},{n_similar},MEAN,{report.mean_precision!r}")
        return "\n".join(lines) + "\n"


def preferred_genres(history: UserHistory, catalog: Catalog) -> PreferredGenres:
    """The user's six preferred genres.

    Per genre, count the user's movies rated >= 4 carrying it (a movie
    contributes once to each of its genres). Ties at the cutoff break by
    the genre's total rated-movie count (any rating value), then
    alphabetically. Genres with no >= 4 count are never preferred.
    """
    high = Counter()
    total = Counter()
    for movie_id, value in history.ratings.items():
        for genre in catalog[movie_id].genres:
            total[genre] += 1
            if value >= 4:
                high[genre] += 1
    ranked = sorted(high, key=lambda g: (-high[g], -total[g], g))
    return PreferredGenres(history.user_id, tuple(ranked[:PREFERRED_GENRE_COUNT]))


def precision(recs: RecommendationList, preferred: PreferredGenres,
              catalog: Catalog) -> float:
    """Fraction of recommended movies carrying >= 1 preferred genre.

    An empty recommendation list scores 0. Order-insensitive by
    construction.
    """
    if not recs.items:
        return 0.0
    wanted = set(preferred.genres)
    correct = sum(
        1 for item in recs.items
        if any(g in wanted for g in catalog[item.movie_id].genres)
    )
    return correct / len(recs.items)


def top_users_by_rating_count(store: RatingsStore, n: int) -> list[int]:
    """The n users with the most ratings; ties break by ascending user_id."""
    return sorted(store.by_user, key=lambda u: (-len(store.by_user[u]), u))[:n]


def _require_users(store: RatingsStore, users: Iterable[int]) -> None:
    for user_id in users:
        if user_id not in store.by_user:
            raise UserNotFoundError(user_id)


def run_grid(store: RatingsStore, catalog: Catalog, users: Sequence[int],
             ks: Sequence[int], n_similars: Sequence[int],
             n_recs: int, seed: int) -> GridReport:
    """Run the full (k, n_similar) grid over the given users.

    One K-Means fit per k (shared across that row's users and neighbor
    counts, same seed); per cell, one cycle per user and the cell's mean
    precision. Fails on any missing user before computing anything.
    """
    _require_users(store, users)
    prefs = {u: preferred_genres(fetch_user(store, u), catalog) for u in users}
    cells: dict[tuple[int, int], PrecisionReport] = {}
    for k in ks:
        model = fit_catalog_model(catalog, k, seed)
        for n_similar in n_similars:
            config = CycleConfig(k=k, n_similar=n_similar,
                                 n_recommendations=n_recs, seed=seed)
            per_user = {
                u: precision(run_cycle(store, catalog, model, config, u),
                             prefs[u], catalog)
                for u in users
            }
            cells[(k, n_similar)] = PrecisionReport.from_per_user(config, per_user)
    return GridReport(cells)


Recommender = Callable[[RatingsStore, Catalog, int], RecommendationList]


def compare_models(store: RatingsStore, catalog: Catalog, users: Sequence[int],
                   config: CycleConfig,
                   mira_recommender: Recommender | None = None,
                   baseline_recommender: Recommender | None = None,
                   ) -> tuple[PrecisionReport, PrecisionReport]:
    """Same users, same metric: the cognitive cycle vs the CF baseline.

    config.n_similar doubles as the baseline's neighbor count and
    config.n_recommendations as both list lengths, for a controlled
    comparison. The recommender hooks exist for testing; the defaults are
    the real models.
    """
    _require_users(store, users)
    if mira_recommender is None:
        model = fit_catalog_model(catalog, config.k, config.seed)

        def mira_recommender(s, c, u):
            return run_cycle(s, c, model, config, u)

    if baseline_recommender is None:
        def baseline_recommender(s, c, u):
            return baseline_recommend(s, c, u, n_recs=config.n_recommendations,
                                      n_neighbors=config.n_similar, config=config)

    prefs = {u: preferred_genres(fetch_user(store, u), catalog) for u in users}
    mira_per_user = {
        u: precision(mira_recommender(store, catalog, u), prefs[u], catalog)
        for u in users
    }
    baseline_per_user = {
        u: precision(baseline_recommender(store, catalog, u), prefs[u], catalog)
        for u in users
    }
    return (PrecisionReport.from_per_user(config, mira_per_user),
            PrecisionReport.from_per_user(config, baseline_per_user))


def evaluate_session(store_with_session: RatingsStore, catalog: Catalog,
                     session_user_id: int, config: CycleConfig) -> PrecisionReport:
    """Precision of the cycle's recommendations for one ingested session user."""
    _require_users(store_with_session, [session_user_id])
    model = fit_catalog_model(catalog, config.k, config.seed)
    recs = run_cycle(store_with_session, catalog, model, config, session_user_id)
    history = fetch_user(store_with_session, session_user_id)
    value = precision(recs, preferred_genres(history, catalog), catalog)
    return PrecisionReport.from_per_user(config, {session_user_id: value})


def comparison_to_json_dict(mira_report: PrecisionReport,
                            baseline_report: PrecisionReport) -> dict:
    def report_dict(report: PrecisionReport) -> dict:
        return {
            "mean_precision": report.mean_precision,
            "per_user": {str(u): p for u, p in report.per_user.items()},
        }

    return {
        "config": {
            "k": mira_report.config.k,
            "n_similar": mira_report.config.n_similar,
            "n_recommendations": mira_report.config.n_recommendations,
            "seed": mira_report.config.seed,
        },
        "mira": report_dict(mira_report),
        "baseline": report_dict(baseline_report),
    }


def comparison_to_csv_text(mira_report: PrecisionReport,
                           baseline_report: PrecisionReport) -> str:
    lines = ["model,user_id,precision"]
    for name, report in (("mira", mira_report), ("baseline", baseline_report)):
        for user_id, value in report.per_user.items():
            lines.append(f"{name},{user_id},{value!r}")
        lines.append(f"{name},MEAN,{report.mean_precision!r}")
    return "\n".join(lines) + "\n"
