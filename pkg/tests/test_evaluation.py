"""evaluation: the precision metric, the grid, comparisons, sessions."""

from __future__ import annotations

import random

import pytest
from pytest import approx

from mira import (
    CycleConfig,
    RecommendationItem,
    RecommendationList,
    UserHistory,
    UserNotFoundError,
    compare_models,
    evaluate_session,
    fetch_user,
    fit_catalog_model,
    ingest_session_ratings,
    parse_movies,
    parse_ratings,
    precision,
    preferred_genres,
    run_cycle,
    run_grid,
    top_users_by_rating_count,
)
from mira.evaluation import PreferredGenres

from oracles import precision_bruteforce, preferred_genres_bruteforce

CFG = CycleConfig(k=2, n_similar=2, n_recommendations=3, seed=0)


def _rec_list(movie_ids, user_id=1):
    items = tuple(
        RecommendationItem(rank, m, f"M{m}", 5.0 - rank * 0.01)
        for rank, m in enumerate(movie_ids, start=1)
    )
    return RecommendationList(user_id, "test", CFG, items)


class TestPreferredGenres:
    def test_three_genres_available(self, toy_catalog):
        # >=4 ratings span exactly Comedy (m3) and Drama/Romance (m9)
        history = UserHistory(1, {3: 5, 9: 4, 7: 2})
        result = preferred_genres(history, toy_catalog)
        assert len(result.genres) == 3
        assert set(result.genres) == {"Comedy", "Drama", "Romance"}

    def test_no_high_ratings_gives_empty(self, toy_catalog):
        history = UserHistory(1, {1: 3, 5: 2, 9: 1})
        assert preferred_genres(history, toy_catalog).genres == ()

    def test_hand_built_ranking_with_cutoff_ties(self, toy_catalog):
        ratings = {1: 5, 2: 4, 3: 5, 4: 4, 5: 4, 6: 4, 7: 2, 8: 5, 9: 4, 10: 3}
        history = UserHistory(1, ratings)
        result = preferred_genres(history, toy_catalog)
        # high counts: Action/Animation/Comedy 3; Thriller/Children's/Sci-Fi 2
        # (Thriller outranks the other two on total count 3 vs 2); Drama and
        # Romance, at 1, fall past the cutoff
        assert result.genres == (
            "Action", "Animation", "Comedy", "Thriller", "Children's", "Sci-Fi",
        )
        assert result.genres == preferred_genres_bruteforce(ratings, toy_catalog)

    def test_matches_bruteforce_on_store_users(self, toy_catalog, toy_store):
        for user_id in toy_store.users():
            history = fetch_user(toy_store, user_id)
            assert preferred_genres(history, toy_catalog).genres == \
                preferred_genres_bruteforce(dict(history.ratings), toy_catalog)

    def test_never_more_than_six(self, toy_catalog):
        ratings = dict.fromkeys(range(1, 11), 5)
        history = UserHistory(1, ratings)
        assert len(preferred_genres(history, toy_catalog).genres) == 6


class TestPrecision:
    def test_all_correct(self, toy_catalog):
        preferred = PreferredGenres(1, ("Drama",))
        recs = _rec_list([9, 10, 9, 10])
        assert precision(recs, preferred, toy_catalog) == 1.0

    def test_empty_preferred_set(self, toy_catalog):
        recs = _rec_list([1, 2, 3])
        assert precision(recs, PreferredGenres(1, ()), toy_catalog) == 0.0

    def test_empty_recommendations(self, toy_catalog):
        assert precision(_rec_list([]), PreferredGenres(1, ("Drama",)),
                         toy_catalog) == 0.0

    def test_ten_of_forty(self, toy_catalog):
        # 10 Drama carriers + 30 Action/Sci-Fi items
        recs = _rec_list([9] * 10 + [5] * 30)
        preferred = PreferredGenres(1, ("Drama",))
        assert precision(recs, preferred, toy_catalog) == approx(0.25, abs=0)

    def test_one_shared_genre_is_enough(self, toy_catalog):
        # movie 1 carries Animation|Children's|Comedy; only Comedy preferred
        preferred = PreferredGenres(1, ("Comedy", "Western"))
        assert precision(_rec_list([1]), preferred, toy_catalog) == 1.0

    def test_permutation_insensitive(self, toy_catalog):
        preferred = PreferredGenres(1, ("Drama", "Action"))
        ids = [9, 5, 3, 10, 1, 7]
        rng = random.Random(4)
        baseline_value = precision(_rec_list(ids), preferred, toy_catalog)
        for _ in range(10):
            shuffled = ids[:]
            rng.shuffle(shuffled)
            assert precision(_rec_list(shuffled), preferred, toy_catalog) == \
                baseline_value

    def test_replacing_incorrect_with_correct_never_decreases(self, toy_catalog):
        preferred = PreferredGenres(1, ("Drama",))
        incorrect, correct = 5, 9
        ids = [incorrect, 3, 9, 7]
        before = precision(_rec_list(ids), preferred, toy_catalog)
        ids[0] = correct
        after = precision(_rec_list(ids), preferred, toy_catalog)
        assert after >= before

    def test_matches_bruteforce(self, toy_catalog):
        rng = random.Random(11)
        pool = list(range(1, 11))
        for _ in range(25):
            ids = [rng.choice(pool) for _ in range(rng.randint(0, 12))]
            preferred = tuple(rng.sample(
                ["Drama", "Comedy", "Action", "Thriller", "Romance"],
                rng.randint(0, 3)))
            got = precision(_rec_list(ids), PreferredGenres(1, preferred),
                            toy_catalog)
            assert got == precision_bruteforce(ids, preferred, toy_catalog)
            assert 0.0 <= got <= 1.0


class TestTopUsers:
    def test_by_rating_count_with_id_ties(self, toy_store):
        # counts: u1=4 u2=5 u3=4 u4=5 u5=4 u6=4
        assert top_users_by_rating_count(toy_store, 3) == [2, 4, 1]

    def test_requesting_more_than_available(self, toy_store):
        assert len(top_users_by_rating_count(toy_store, 50)) == 6


class TestRunGrid:
    def test_single_cell(self, toy_catalog, toy_store):
        grid = run_grid(toy_store, toy_catalog, [1], [2], [2], 3, seed=0)
        assert set(grid.cells) == {(2, 2)}
        report = grid.cells[(2, 2)]
        assert set(report.per_user) == {1}
        assert report.mean_precision == report.per_user[1]

    def test_covers_requested_grid(self, toy_catalog, toy_store):
        grid = run_grid(toy_store, toy_catalog, [1, 4], [1, 2], [2, 3], 3, seed=0)
        assert set(grid.cells) == {(1, 2), (1, 3), (2, 2), (2, 3)}

    def test_cell_means_match_hand_computation(self, toy_catalog, toy_store):
        users = [1, 2, 4]
        grid = run_grid(toy_store, toy_catalog, users, [2], [2, 3], 3, seed=0)
        model = fit_catalog_model(toy_catalog, 2, 0)
        for (k, n_similar), report in grid.cells.items():
            per_user = {}
            for u in users:
                config = CycleConfig(k=k, n_similar=n_similar,
                                     n_recommendations=3, seed=0)
                rec = run_cycle(toy_store, toy_catalog, model, config, u)
                preferred = preferred_genres_bruteforce(
                    dict(toy_store.by_user[u]), toy_catalog)
                per_user[u] = precision_bruteforce(
                    [i.movie_id for i in rec.items], preferred, toy_catalog)
            assert report.per_user == approx(per_user, abs=1e-12)
            assert report.mean_precision == \
                approx(sum(per_user.values()) / len(per_user), abs=1e-12)

    def test_mean_is_arithmetic_mean(self, toy_catalog, toy_store):
        grid = run_grid(toy_store, toy_catalog, [1, 2, 3], [2], [2], 3, seed=0)
        report = grid.cells[(2, 2)]
        assert report.mean_precision == approx(
            sum(report.per_user.values()) / 3, abs=1e-12)
        assert all(0.0 <= p <= 1.0 for p in report.per_user.values())

    def test_missing_user_fails_before_computation(self, toy_catalog, toy_store):
        with pytest.raises(UserNotFoundError):
            run_grid(toy_store, toy_catalog, [1, 999], [2], [2], 3, seed=0)

    def test_deterministic(self, toy_catalog, toy_store):
        a = run_grid(toy_store, toy_catalog, [1, 2], [2, 3], [2], 3, seed=7)
        b = run_grid(toy_store, toy_catalog, [1, 2], [2, 3], [2], 3, seed=7)
        assert a == b

    def test_csv_shape(self, toy_catalog, toy_store):
        grid = run_grid(toy_store, toy_catalog, [1, 2], [2], [2, 3], 3, seed=0)
        lines = grid.to_csv_text().strip().split("\n")
        assert lines[0] == "k,n_similar,user_id,precision"
        mean_rows = [l for l in lines if ",MEAN," in l]
        assert len(mean_rows) == 2
        # per-user rows + MEAN row per cell + header
        assert len(lines) == 1 + 2 * (2 + 1)

    def test_json_shape(self, toy_catalog, toy_store):
        grid = run_grid(toy_store, toy_catalog, [1], [2], [2], 3, seed=0)
        payload = grid.to_json_dict()
        (cell,) = payload["cells"]
        assert cell["k"] == 2 and cell["n_similar"] == 2
        assert set(cell["per_user"]) == {"1"}


class TestCompareModels:
    def test_identical_recommenders_give_identical_reports(self, toy_catalog,
                                                           toy_store):
        model = fit_catalog_model(toy_catalog, CFG.k, CFG.seed)

        def recommender(store, catalog, user_id):
            return run_cycle(store, catalog, model, CFG, user_id)

        mira_report, baseline_report = compare_models(
            toy_store, toy_catalog, [1, 2, 4], CFG,
            mira_recommender=recommender, baseline_recommender=recommender)
        assert mira_report == baseline_report

    def test_means_match_hand_computation(self, toy_catalog, toy_store):
        from mira import baseline_recommend

        users = [1, 4]
        mira_report, baseline_report = compare_models(
            toy_store, toy_catalog, users, CFG)

        model = fit_catalog_model(toy_catalog, CFG.k, CFG.seed)
        for u in users:
            preferred = preferred_genres_bruteforce(
                dict(toy_store.by_user[u]), toy_catalog)
            mira_rec = run_cycle(toy_store, toy_catalog, model, CFG, u)
            base_rec = baseline_recommend(
                toy_store, toy_catalog, u,
                n_recs=CFG.n_recommendations, n_neighbors=CFG.n_similar)
            assert mira_report.per_user[u] == approx(precision_bruteforce(
                [i.movie_id for i in mira_rec.items], preferred, toy_catalog),
                abs=1e-12)
            assert baseline_report.per_user[u] == approx(precision_bruteforce(
                [i.movie_id for i in base_rec.items], preferred, toy_catalog),
                abs=1e-12)

    def test_single_user_series(self, toy_catalog, toy_store):
        mira_report, baseline_report = compare_models(
            toy_store, toy_catalog, [3], CFG)
        assert len(mira_report.per_user) == len(baseline_report.per_user) == 1

    def test_missing_user_rejected(self, toy_catalog, toy_store):
        with pytest.raises(UserNotFoundError):
            compare_models(toy_store, toy_catalog, [404], CFG)


class TestEvaluateSession:
    ALL_DRAMA_MOVIES = (
        "1::Quiet Street (1990)::Drama\n"
        "2::Long Rain (1991)::Drama\n"
        "3::Glass Door (1992)::Drama\n"
        "4::Low Tide (1993)::Drama\n"
        "5::Old Letters (1994)::Drama\n"
    )
    BASE_RATINGS = (
        "1::1::5::1\n1::2::4::2\n1::3::4::3\n"
        "2::2::5::4\n2::4::5::5\n2::5::3::6\n"
    )

    def test_all_drama_session_scores_one(self):
        catalog = parse_movies(self.ALL_DRAMA_MOVIES)
        store = parse_ratings(self.BASE_RATINGS, catalog)
        session = "user_id,movie_id,rating\n9001,1,5\n9001,3,4\n"
        extended = ingest_session_ratings(session, store, catalog)
        config = CycleConfig(k=1, n_similar=2, n_recommendations=5, seed=0)
        report = evaluate_session(extended, catalog, 9001, config)
        # recs can only be Drama movies and the preferred set is {Drama}
        assert report.per_user[9001] == 1.0
        assert report.mean_precision == 1.0

    def test_matches_metric_oracle(self, toy_catalog, toy_store):
        session = "user_id,movie_id,rating\n9001,5,5\n9001,6,4\n9001,9,2\n"
        extended = ingest_session_ratings(session, toy_store, toy_catalog)
        config = CycleConfig(k=2, n_similar=3, n_recommendations=4, seed=0)
        report = evaluate_session(extended, toy_catalog, 9001, config)

        model = fit_catalog_model(toy_catalog, config.k, config.seed)
        rec = run_cycle(extended, toy_catalog, model, config, 9001)
        preferred = preferred_genres_bruteforce(
            dict(extended.by_user[9001]), toy_catalog)
        expected = precision_bruteforce(
            [i.movie_id for i in rec.items], preferred, toy_catalog)
        assert report.per_user[9001] == approx(expected, abs=1e-12)
        assert 0.0 <= report.mean_precision <= 1.0

    def test_session_user_must_exist(self, toy_catalog, toy_store):
        config = CycleConfig(k=2, n_similar=2, n_recommendations=3, seed=0)
        with pytest.raises(UserNotFoundError):
            evaluate_session(toy_store, toy_catalog, 9001, config)
