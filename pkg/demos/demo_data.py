"""Shared corpus for the demo scripts.

Every demo runs on the same deterministic synthetic dataset, written once
into demos/_data/. Point MIRA_DEMO_DATA at a directory containing real
movies.dat/ratings.dat files (e.g. an unpacked MovieLens 1M archive) to
run the demos on that instead.
"""

from __future__ import annotations

import os
from pathlib import Path

from mira import Catalog, RatingsStore, parse_movies, parse_ratings
from mira.synthetic import write_synthetic_dataset

DATA_DIR = Path(__file__).resolve().parent / "_data"


def dataset_paths() -> tuple[Path, Path]:
    override = os.environ.get("MIRA_DEMO_DATA")
    if override:
        directory = Path(override)
        return directory / "movies.dat", directory / "ratings.dat"
    movies = DATA_DIR / "movies.dat"
    ratings = DATA_DIR / "ratings.dat"
    if not (movies.exists() and ratings.exists()):
        write_synthetic_dataset(DATA_DIR, n_users=300, n_movies=400, seed=42,
                                min_ratings=25, max_ratings=80)
    return movies, ratings


def load() -> tuple[Catalog, RatingsStore]:
    movies, ratings = dataset_paths()
    catalog = parse_movies(movies.read_bytes())
    store = parse_ratings(ratings.read_bytes(), catalog)
    return catalog, store
