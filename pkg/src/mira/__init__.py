"""MIRA: a cognitive-cycle movie recommender with an evaluation harness."""

__version__ = "0.1.0"

from .baseline import PredictedRating, baseline_recommend, predict_rating
from .clustering import (
    ClusterModel,
    assign_cluster,
    catalog_genre_vectors,
    cluster_label,
    fit_catalog_model,
    fit_kmeans,
    genre_vector,
    model_to_json,
    user_cluster,
)
from .cycle import (
    CompetitionResult,
    CycleConfig,
    RecommendationItem,
    RecommendationList,
    Stimulus,
    WorkspaceHistogram,
    attend,
    build_histogram,
    compete,
    prepare,
    run_cycle,
    sense,
)
from .errors import (
    DuplicateKeyError,
    InfeasibleClusteringError,
    InvalidStimulusError,
    MiraError,
    ParseError,
    ReferentialIntegrityError,
    UserCollisionError,
    UserNotFoundError,
)
from .evaluation import (
    GridReport,
    PrecisionReport,
    PreferredGenres,
    compare_models,
    evaluate_session,
    precision,
    preferred_genres,
    run_grid,
    top_users_by_rating_count,
)
from .genres import GENRES
from .ingest import (
    Catalog,
    Movie,
    Rating,
    RatingsStore,
    ingest_session_ratings,
    parse_movies,
    parse_ratings,
    parse_users,
    serialize_ratings,
)
from .memory import SimilarUser, UserHistory, cosine_similarity, fetch_user, top_n_similar
from .synthetic import synthetic_dataset, write_synthetic_dataset

__all__ = [
    "__version__",
    "GENRES",
    "Movie", "Rating", "Catalog", "RatingsStore",
    "parse_movies", "parse_ratings", "ingest_session_ratings", "parse_users",
    "serialize_ratings",
    "UserHistory", "SimilarUser", "fetch_user", "cosine_similarity", "top_n_similar",
    "ClusterModel", "genre_vector", "catalog_genre_vectors", "fit_kmeans",
    "fit_catalog_model", "assign_cluster", "user_cluster", "cluster_label",
    "model_to_json",
    "Stimulus", "CycleConfig", "WorkspaceHistogram", "CompetitionResult",
    "RecommendationItem", "RecommendationList",
    "sense", "build_histogram", "attend", "compete", "prepare", "run_cycle",
    "PredictedRating", "predict_rating", "baseline_recommend",
    "PreferredGenres", "PrecisionReport", "GridReport",
    "preferred_genres", "precision", "run_grid", "compare_models",
    "evaluate_session", "top_users_by_rating_count",
    "synthetic_dataset", "write_synthetic_dataset",
    "MiraError", "ParseError", "DuplicateKeyError", "ReferentialIntegrityError",
    "UserCollisionError", "UserNotFoundError", "InvalidStimulusError",
    "InfeasibleClusteringError",
]
