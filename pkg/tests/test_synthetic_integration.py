"""Full-pipeline checks on a mid-scale synthetic corpus.

These mirror the dataset-bound acceptance criteria in shape so the same
code paths get exercised even where the real MovieLens archive is not
present.
"""

from __future__ import annotations

import numpy as np
import pytest

from mira import (
    CycleConfig,
    fetch_user,
    fit_catalog_model,
    parse_movies,
    parse_ratings,
    run_cycle,
    serialize_ratings,
    top_users_by_rating_count,
    user_cluster,
)
from mira.synthetic import synthetic_dataset

N_USERS, N_MOVIES, SEED = 250, 300, 20260809


@pytest.fixture(scope="module")
def corpus():
    movies_text, ratings_text = synthetic_dataset(
        n_users=N_USERS, n_movies=N_MOVIES, seed=SEED,
        min_ratings=20, max_ratings=60)
    catalog = parse_movies(movies_text)
    store = parse_ratings(ratings_text, catalog)
    return movies_text, ratings_text, catalog, store


def test_ingestion_totality(corpus):
    movies_text, ratings_text, catalog, store = corpus
    assert len(catalog) == movies_text.count("\n") == N_MOVIES
    assert store.n_ratings() == ratings_text.count("\n")
    assert store.n_users() == N_USERS


def test_round_trip_at_scale(corpus):
    _, _, catalog, store = corpus
    reparsed = parse_ratings(serialize_ratings(store), catalog)
    assert reparsed.by_user == store.by_user
    assert reparsed.by_movie == store.by_movie


def test_cycle_invariants_for_fifty_users(corpus):
    _, _, catalog, store = corpus
    config = CycleConfig()  # defaults: k=8, 10 similar, 40 recommendations
    model = fit_catalog_model(catalog, config.k, config.seed)
    rng = np.random.default_rng(SEED)
    users = rng.choice(store.users(), size=50, replace=False)
    for user_id in sorted(int(u) for u in users):
        rec = run_cycle(store, catalog, model, config, user_id)
        watched = set(store.by_user[user_id])
        assert all(item.movie_id not in watched for item in rec.items)
        expected_cluster = user_cluster(fetch_user(store, user_id), catalog, model)
        assert all(model.assignments[item.movie_id] == expected_cluster
                   for item in rec.items)
        means = [item.mean_rating for item in rec.items]
        assert means == sorted(means, reverse=True)
        for a, b in zip(rec.items, rec.items[1:]):
            if a.mean_rating == b.mean_rating:
                assert a.movie_id < b.movie_id
        assert len(rec.items) <= config.n_recommendations


def test_top_users_have_plausible_precision_signal(corpus):
    # sanity: genre-structured data should give the metric real signal
    from mira import compare_models

    _, _, catalog, store = corpus
    users = top_users_by_rating_count(store, 10)
    config = CycleConfig(k=8, n_similar=10, n_recommendations=40, seed=0)
    mira_report, baseline_report = compare_models(store, catalog, users, config)
    assert 0.0 <= mira_report.mean_precision <= 1.0
    assert 0.0 <= baseline_report.mean_precision <= 1.0
    # preferred-genre lovers should beat a coin flip here by construction
    assert mira_report.mean_precision > 0.5


def test_synthetic_generator_is_deterministic():
    first = synthetic_dataset(n_users=30, n_movies=40, seed=4)
    second = synthetic_dataset(n_users=30, n_movies=40, seed=4)
    assert first == second
