"""The cognitive cycle: one stimulus in, one ranked recommendation list out.

The cycle wires the architecture's modules as a linear message flow:
sensory input captures the user id, associative memory routes it to the
declarative store, the workspace assembles a histogram of similar users'
movies, an attention codelet keeps only the user's own movie cluster, the
global workspace runs a mean-rating competition, and procedural memory
prepares the final titled, ranked list. Sensory and associative stages
carry no learned state here; they are pure routing, modeled as functions.

Every stage is a pure function of immutable inputs, so arbitrarily many
cycles may run concurrently over one store/catalog/model.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .clustering import ClusterModel, assign_cluster, cluster_label, genre_vector, user_cluster
from .errors import InvalidStimulusError, ReferentialIntegrityError
from .ingest import Catalog, RatingsStore
from .memory import SimilarUser, UserHistory, fetch_user, top_n_similar


@dataclass(frozen=True)
class Stimulus:
    """The raw input to a cycle: a user identification number."""

    user_id: int


@dataclass(frozen=True)
class CycleConfig:
    """Knobs of one cycle; defaults follow the best-performing setup."""

    k: int = 8
    n_similar: int = 10
    n_recommendations: int = 40
    seed: int = 0


@dataclass
class HistogramEntry:
    ratings: list[int]
    cluster: int


@dataclass
class WorkspaceHistogram:
    """Per-movie rating multisets from similar users, labeled by cluster."""

    entries: dict[int, HistogramEntry] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class CompetitionResult:
    """Movies surviving the rating competition, best mean first."""

    winners: tuple[tuple[int, float], ...]  # (movie_id, mean_rating)


@dataclass(frozen=True)
class RecommendationItem:
    rank: int
    movie_id: int
    title: str
    mean_rating: float


@dataclass(frozen=True)
class RecommendationList:
    user_id: int
    cluster_label: str
    config: CycleConfig
    items: tuple[RecommendationItem, ...]

    def to_json_dict(self) -> dict:
        return {
            "user_id": self.user_id,
            "cluster_label": self.cluster_label,
            "config": {
                "k": self.config.k,
                "n_similar": self.config.n_similar,
                "n_recommendations": self.config.n_recommendations,
                "seed": self.config.seed,
            },
            "items": [
                {
                    "rank": item.rank,
                    "movie_id": item.movie_id,
                    "title": item.title,
                    "mean_rating": item.mean_rating,
                }
                for item in self.items
            ],
        }


def sense(user_id: int) -> Stimulus:
    """Capture the stimulus. The only entry point to the cycle."""
    if not isinstance(user_id, int) or isinstance(user_id, bool) or user_id <= 0:
        raise InvalidStimulusError(f"user id must be a positive integer, got {user_id!r}")
    return Stimulus(user_id)


def build_histogram(similar: list[SimilarUser], catalog: Catalog,
                    model: ClusterModel, main_history: UserHistory) -> WorkspaceHistogram:
    """Histogram of all movies the similar users watched.

    One entry per movie watched by at least one similar user, excluding
    anything the main user has already watched; each entry collects every
    similar-user rating of that movie plus its cluster under the shared
    model.
    """
    watched = main_history.ratings
    histogram = WorkspaceHistogram()
    for neighbor in similar:
        for movie_id in sorted(neighbor.history.ratings):
            if movie_id in watched:
                continue
            entry = histogram.entries.get(movie_id)
            if entry is None:
                cluster = model.assignments.get(movie_id)
                if cluster is None:
                    cluster = assign_cluster(genre_vector(catalog[movie_id]), model)
                entry = histogram.entries[movie_id] = HistogramEntry([], cluster)
            entry.ratings.append(neighbor.history.ratings[movie_id])
    return histogram


def attend(histogram: WorkspaceHistogram, user_c: int) -> WorkspaceHistogram:
    """Keep only the histogram entries in the user's own cluster."""
    return WorkspaceHistogram({
        movie_id: entry
        for movie_id, entry in histogram.entries.items()
        if entry.cluster == user_c
    })


def compete(attended: WorkspaceHistogram, n: int) -> CompetitionResult:
    """Mean-rating competition: the n highest-averaged movies win.

    Ties on the mean break toward the lower movie_id. Returns fewer than n
    winners when fewer entries exist.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    scored = [
        (movie_id, sum(entry.ratings) / len(entry.ratings))
        for movie_id, entry in attended.entries.items()
    ]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return CompetitionResult(tuple(scored[:n]))


def prepare(result: CompetitionResult, catalog: Catalog, user_c: int,
            model: ClusterModel, config: CycleConfig, user_id: int) -> RecommendationList:
    """Title the winners and name the selected cluster."""
    items = []
    for rank, (movie_id, mean_rating) in enumerate(result.winners, start=1):
        movie = catalog.get(movie_id)
        if movie is None:
            raise ReferentialIntegrityError(
                [movie_id], f"competition winner {movie_id} missing from catalog"
            )
        items.append(RecommendationItem(rank, movie_id, movie.title, mean_rating))
    return RecommendationList(user_id, cluster_label(model, user_c), config, tuple(items))


def run_cycle(store: RatingsStore, catalog: Catalog, model: ClusterModel,
              config: CycleConfig, user_id: int) -> RecommendationList:
    """Run the full cycle for one user id.

    The model must have been fitted with config.k and config.seed so that
    workspace and attention cluster indices agree.
    """
    if model.k != config.k or model.seed != config.seed:
        raise ValueError(
            f"model fitted with (k={model.k}, seed={model.seed}) does not match "
            f"config (k={config.k}, seed={config.seed})"
        )
    stimulus = sense(user_id)
    history = fetch_user(store, stimulus.user_id)
    similar = top_n_similar(store, stimulus.user_id, config.n_similar)
    histogram = build_histogram(similar, catalog, model, history)
    user_c = user_cluster(history, catalog, model)
    attended = attend(histogram, user_c)
    result = compete(attended, config.n_recommendations)
    return prepare(result, catalog, user_c, model, config, stimulus.user_id)
