"""Binary genre vectors and K-Means clustering over them.

The clustering is Lloyd's algorithm with greedy k-means++ seeding and a
fixed number of restarts, keeping the lowest-cost run — the standard
production recipe. Everything is driven by one seeded PCG64 generator so
identical (vectors, k, seed) inputs yield a bit-identical model. Distances
are squared Euclidean on the raw binary vectors. One model is fit on the
full catalog and shared by the workspace histogram and the attention step,
so cluster indices are comparable across both.

Determinism contract: movies are processed in ascending movie_id order,
nearest-centroid ties resolve to the lowest cluster index, an empty
cluster is reseeded with the point currently farthest from its assigned
centroid (never silently dropped), and cost ties between restarts keep the
earliest run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleClusteringError
from .genres import GENRE_INDEX, GENRES, N_GENRES
from .ingest import Catalog, Movie
from .memory import UserHistory

MAX_ITERATIONS = 300
N_RESTARTS = 10

GenreVector = np.ndarray  # shape (18,), values in {0.0, 1.0}


def genre_vector(movie: Movie) -> GenreVector:
    """Binary vector over the fixed vocabulary: bit i set iff genre i present."""
    bits = np.zeros(N_GENRES, dtype=np.float64)
    for genre in movie.genres:
        bits[GENRE_INDEX[genre]] = 1.0
    return bits


def catalog_genre_vectors(catalog: Catalog) -> dict[int, GenreVector]:
    return {movie_id: genre_vector(catalog[movie_id]) for movie_id in catalog.ids()}


@dataclass
class ClusterModel:
    """Fitted K-Means state over a set of genre vectors."""

    k: int
    centroids: np.ndarray            # (k, dim), each component in [0, 1]
    assignments: dict[int, int]      # movie_id -> cluster index
    seed: int
    iterations_run: int
    cost_history: list[float] = field(default_factory=list)


def _sq_dists(X: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    return ((X[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)


def _kmeanspp_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Greedy k-means++ seeding.

    Each new center is chosen among 2 + floor(ln k) candidates sampled by
    the D^2 distribution, keeping the candidate that minimizes the running
    potential. Already-chosen points have zero weight and are unreachable
    because side="right" skips flat cumsum segments.
    """
    n = X.shape[0]
    centers = np.empty((k, X.shape[1]), dtype=np.float64)
    centers[0] = X[int(rng.integers(n))]
    d2 = ((X - centers[0]) ** 2).sum(axis=1)
    n_candidates = 2 + int(np.log(k)) if k > 1 else 1
    for j in range(1, k):
        cum = np.cumsum(d2)
        draws = rng.random(n_candidates) * cum[-1]
        candidates = np.minimum(np.searchsorted(cum, draws, side="right"), n - 1)
        best_potential = np.inf
        best_point = best_d2 = None
        for idx in candidates:
            candidate_d2 = np.minimum(d2, ((X - X[idx]) ** 2).sum(axis=1))
            potential = candidate_d2.sum()
            if potential < best_potential:
                best_potential = potential
                best_point, best_d2 = X[idx], candidate_d2
        centers[j] = best_point
        d2 = best_d2
    return centers


def _fix_empty_clusters(labels: np.ndarray, dists: np.ndarray, k: int) -> np.ndarray:
    """Reseed each empty cluster with the point farthest from its centroid.

    Empty clusters are handled in ascending index order; each claims the
    current worst-fit point (ties to the lowest point index). A claimed
    point cannot be claimed twice, and a cluster's only member is never
    claimed: draining a singleton would just move the hole elsewhere.
    """
    counts = np.bincount(labels, minlength=k)
    empties = np.flatnonzero(counts == 0)
    if empties.size == 0:
        return labels
    labels = labels.copy()
    counts = counts.copy()
    point_dist = dists[np.arange(len(labels)), labels].copy()
    for j in empties:
        candidates = np.where(counts[labels] > 1, point_dist, -np.inf)
        p = int(np.argmax(candidates))
        counts[labels[p]] -= 1
        labels[p] = j
        counts[j] = 1
        point_dist[p] = -np.inf
    return labels


def _centroid_means(X: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    return np.array([X[labels == j].mean(axis=0) for j in range(k)])


def _lloyd(X: np.ndarray, centroids: np.ndarray, k: int):
    """One Lloyd run to convergence (or the iteration cap).

    Returns (labels, centroids, iterations, cost_history) where
    cost_history[i] is the total within-cluster squared distance after the
    i-th centroid update — non-increasing by construction, including across
    empty-cluster reseeds.
    """
    labels: np.ndarray | None = None
    costs: list[float] = []
    iterations = 0
    for _ in range(MAX_ITERATIONS):
        iterations += 1
        dists = _sq_dists(X, centroids)
        new_labels = _fix_empty_clusters(dists.argmin(axis=1), dists, k)
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        centroids = _centroid_means(X, labels, k)
        costs.append(float(((X - centroids[labels]) ** 2).sum()))
    return labels, centroids, iterations, costs


def fit_kmeans(vectors: dict[int, GenreVector], k: int, seed: int) -> ClusterModel:
    """Fit K-Means to a movie_id -> genre-vector mapping.

    Runs N_RESTARTS seeded greedy-k-means++ initializations and keeps the
    run with the lowest final cost (the earliest on an exact tie), which
    keeps tiny instances near the global optimum without giving up
    determinism.

    Raises InfeasibleClusteringError when fewer distinct vectors than k
    exist.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not vectors:
        raise InfeasibleClusteringError("no vectors to cluster")
    movie_ids = sorted(vectors)
    X = np.asarray([vectors[m] for m in movie_ids], dtype=np.float64)
    n_distinct = np.unique(X, axis=0).shape[0]
    if n_distinct < k:
        raise InfeasibleClusteringError(
            f"{n_distinct} distinct vectors cannot form {k} clusters"
        )

    rng = np.random.default_rng(seed)
    best = None
    for _ in range(N_RESTARTS):
        run = _lloyd(X, _kmeanspp_init(X, k, rng), k)
        if best is None or run[3][-1] < best[3][-1]:
            best = run

    labels, centroids, iterations, costs = best
    assignments = {m: int(c) for m, c in zip(movie_ids, labels)}
    return ClusterModel(k, centroids, assignments, seed, iterations, costs)


def fit_catalog_model(catalog: Catalog, k: int, seed: int) -> ClusterModel:
    """Fit the shared model on the full catalog's genre vectors."""
    return fit_kmeans(catalog_genre_vectors(catalog), k, seed)


def assign_cluster(v: GenreVector, model: ClusterModel) -> int:
    """Index of the nearest centroid; ties go to the lowest index."""
    return int(((model.centroids - v) ** 2).sum(axis=1).argmin())


def user_cluster(history: UserHistory, catalog: Catalog, model: ClusterModel) -> int:
    """The cluster a user most likely watches.

    Counts the user's movies rated >= 4 per cluster (all watched movies if
    no rating reaches 4). Frequency ties break toward the higher mean
    rating within the tied clusters, then the lowest cluster index.
    """
    rated = history.ratings
    selected = {m: v for m, v in rated.items() if v >= 4} or dict(rated)
    counts: dict[int, int] = {}
    sums: dict[int, float] = {}
    for movie_id in sorted(selected):
        c = model.assignments.get(movie_id)
        if c is None:
            c = assign_cluster(genre_vector(catalog[movie_id]), model)
        counts[c] = counts.get(c, 0) + 1
        sums[c] = sums.get(c, 0.0) + selected[movie_id]
    return min(counts, key=lambda c: (-counts[c], -sums[c] / counts[c], c))


def cluster_label(model: ClusterModel, cluster: int, threshold: float = 0.5) -> str:
    """Human-readable label for a cluster: its dominant genre names.

    All genres whose centroid component reaches the threshold, joined by
    "/" in vocabulary order; if none reach it, the single largest
    component's genre.
    """
    centroid = model.centroids[cluster]
    dominant = [GENRES[i] for i in range(len(centroid)) if centroid[i] >= threshold]
    if not dominant:
        dominant = [GENRES[int(centroid.argmax())]]
    return "/".join(dominant)


def model_to_json(model: ClusterModel) -> str:
    """JSON dump of a fitted model for experiment auditing."""
    payload = {
        "k": model.k,
        "seed": model.seed,
        "centroids": [[float(x) for x in row] for row in model.centroids],
        "assignments": {str(m): c for m, c in sorted(model.assignments.items())},
    }
    return json.dumps(payload, indent=2, sort_keys=True)
