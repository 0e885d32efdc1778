"""The traditional comparison model: user-based collaborative filtering.

The system under comparison in the source experiments is cited but never
described, so this is a documented reconstruction of the canonical
predictive design: cosine-similar neighbors, similarity-weighted mean
prediction, global-mean fallbacks. Read comparisons against it as "the
cognitive cycle vs a standard CF baseline", not as a faithful
reimplementation of an unpublished system.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cycle import CycleConfig, RecommendationItem, RecommendationList
from .ingest import Catalog, RatingsStore
from .memory import SimilarUser, top_n_similar


@dataclass(frozen=True)
class PredictedRating:
    movie_id: int
    predicted: float  # clamped to [1, 5]


def _clamp(value: float) -> float:
    return min(5.0, max(1.0, value))


def _predict_from_neighbors(neighbors: list[SimilarUser], store: RatingsStore,
                            movie_id: int) -> PredictedRating:
    num = den = 0.0
    for neighbor in neighbors:
        value = neighbor.history.ratings.get(movie_id)
        if value is not None:
            num += neighbor.similarity * value
            den += neighbor.similarity
    if den > 0.0:
        predicted = num / den
    else:
        # no neighbor rated it (or only zero-similarity neighbors did):
        # fall back to the movie's global mean, then the store-wide mean
        mean = store.movie_mean(movie_id)
        predicted = mean if mean is not None else store.global_mean()
    return PredictedRating(movie_id, _clamp(predicted))


def predict_rating(store: RatingsStore, user_id: int, movie_id: int,
                   n_neighbors: int = 10) -> PredictedRating:
    """Similarity-weighted mean of the most similar users' ratings of a movie.

    Neighbors who did not rate the movie contribute nothing. Raises
    UserNotFoundError for an unknown user.
    """
    neighbors = top_n_similar(store, user_id, n_neighbors)
    return _predict_from_neighbors(neighbors, store, movie_id)


def baseline_recommend(store: RatingsStore, catalog: Catalog, user_id: int,
                       n_recs: int = 40, n_neighbors: int = 10,
                       config: CycleConfig | None = None) -> RecommendationList:
    """Top-n list of unwatched movies by predicted rating.

    Candidates are every catalog movie rated by at least one neighbor and
    not watched by the user; ties on the prediction break toward the lower
    movie_id. The optional config only decorates the report envelope.
    """
    if config is None:
        config = CycleConfig(n_similar=n_neighbors, n_recommendations=n_recs)
    neighbors = top_n_similar(store, user_id, n_neighbors)
    watched = store.user_ratings(user_id)
    candidates = sorted({
        movie_id
        for neighbor in neighbors
        for movie_id in neighbor.history.ratings
        if movie_id not in watched
    })
    predictions = [_predict_from_neighbors(neighbors, store, m) for m in candidates]
    predictions.sort(key=lambda p: (-p.predicted, p.movie_id))
    items = tuple(
        RecommendationItem(rank, p.movie_id, catalog[p.movie_id].title, p.predicted)
        for rank, p in enumerate(predictions[:n_recs], start=1)
    )
    return RecommendationList(user_id, "baseline", config, items)
