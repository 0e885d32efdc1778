"""Long-term declarative memory: user lookups and similar-user retrieval.

Similarity is plain cosine over raw rating vectors on the union of rated
movie ids, missing entries treated as 0 (no mean-centering). Ratings are
small integers, so dot products and squared norms are exact in float64;
the sparse-matrix scan in top_n_similar and the pairwise cosine_similarity
below therefore agree bit for bit on store data.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Mapping

import numpy as np

from .errors import UserNotFoundError
from .ingest import RatingsStore


@dataclass(frozen=True)
class UserHistory:
    """One user's rating mapping (movie_id -> value)."""

    user_id: int
    ratings: Mapping[int, float]


@dataclass(frozen=True)
class SimilarUser:
    user_id: int
    similarity: float
    history: UserHistory


def fetch_user(store: RatingsStore, user_id: int) -> UserHistory:
    """Return the exact rating mapping for user_id.

    Raises UserNotFoundError for an id with no ratings (an invalid stimulus
    upstream).
    """
    try:
        ratings = store.by_user[user_id]
    except KeyError:
        raise UserNotFoundError(user_id) from None
    return UserHistory(user_id, ratings)


def cosine_similarity(a: UserHistory, b: UserHistory) -> float:
    """dot(a, b) / (|a| * |b|) over the union of rated movies, unrated = 0.

    Returns 0.0 when the histories share no movies. For nonnegative inputs
    the result lies in [0, 1] up to float rounding.
    """
    ra, rb = a.ratings, b.ratings
    if len(rb) < len(ra):
        ra, rb = rb, ra
    dot = 0.0
    for movie_id, va in ra.items():
        vb = rb.get(movie_id)
        if vb is not None:
            dot += va * vb
    if dot == 0.0:
        return 0.0
    norm_a_sq = sum(v * v for v in a.ratings.values())
    norm_b_sq = sum(v * v for v in b.ratings.values())
    return dot / sqrt(norm_a_sq * norm_b_sq)


def top_n_similar(store: RatingsStore, user_id: int, n: int) -> list[SimilarUser]:
    """The n most similar users to user_id, excluding user_id itself.

    Sorted by similarity descending, ties broken by ascending user_id.
    Returns fewer than n entries when fewer other users exist. The scan is
    exhaustive over every other user in the store; zero-overlap users are
    eligible and rank last.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if user_id not in store.by_user:
        raise UserNotFoundError(user_id)

    user_ids, user_row, _, matrix, sq_norms = store.to_user_matrix()
    row = user_row[user_id]
    query = matrix.getrow(row).toarray().ravel()
    dots = matrix @ query
    sims = np.zeros_like(dots)
    nonzero = dots != 0.0
    sims[nonzero] = dots[nonzero] / np.sqrt(sq_norms[nonzero] * sq_norms[row])

    ids = np.asarray(user_ids)
    keep = np.arange(len(ids)) != row
    sims, ids = sims[keep], ids[keep]
    order = np.lexsort((ids, -sims))[:n]
    return [
        SimilarUser(int(ids[i]), float(sims[i]), fetch_user(store, int(ids[i])))
        for i in order
    ]
