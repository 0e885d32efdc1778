"""Shared fixtures: a hand-built toy corpus and MovieLens 1M discovery."""

from __future__ import annotations

import os
from pathlib import Path

import pytest

from mira import parse_movies, parse_ratings

ML1M_ENV = "MIRA_ML1M_DIR"

# Ten movies in two clear genre groups plus two drama stragglers; six users
# split between the groups. Small enough to trace every pipeline stage by
# hand, structured enough that clustering and similarity have real signal.
TOY_MOVIES = """\
1::Toy Parade (1995)::Animation|Children's|Comedy
2::Block Town (1996)::Animation|Children's
3::Giggle Reel (1997)::Comedy
4::Paper Zoo (1998)::Animation|Comedy
5::Steel Orbit (1994)::Action|Sci-Fi
6::Night Chase (1995)::Action|Thriller
7::Silent Signal (1996)::Thriller
8::Red Horizon (1997)::Action|Sci-Fi|Thriller
9::Quiet Harbor (1993)::Drama|Romance
10::Last Waltz (1992)::Drama
"""

TOY_RATINGS = """\
1::1::5::978300001
1::2::4::978300002
1::3::4::978300003
1::9::2::978300004
2::1::5::978300011
2::2::5::978300012
2::3::3::978300013
2::4::4::978300014
2::10::2::978300015
3::1::4::978300021
3::3::5::978300022
3::4::5::978300023
3::6::2::978300024
4::5::5::978300031
4::6::4::978300032
4::7::4::978300033
4::8::5::978300034
4::9::1::978300035
5::5::4::978300041
5::6::5::978300042
5::8::4::978300043
5::10::3::978300044
6::3::2::978300051
6::7::3::978300052
6::9::4::978300053
6::10::5::978300054
"""


@pytest.fixture(scope="session")
def toy_catalog():
    return parse_movies(TOY_MOVIES)


@pytest.fixture()
def toy_store(toy_catalog):
    # function-scoped: some tests probe the lazy caches
    return parse_ratings(TOY_RATINGS, toy_catalog)


def ml1m_dir() -> Path:
    override = os.environ.get(ML1M_ENV)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent.parent / "data" / "ml-1m"


@pytest.fixture(scope="session")
def ml1m_paths():
    directory = ml1m_dir()
    movies = directory / "movies.dat"
    ratings = directory / "ratings.dat"
    if not (movies.exists() and ratings.exists()):
        pytest.skip(
            f"MovieLens 1M not found at {directory}; set {ML1M_ENV} or unpack "
            "ml-1m.zip (https://files.grouplens.org/datasets/movielens/ml-1m.zip) "
            "into data/ml-1m"
        )
    return movies, ratings


@pytest.fixture(scope="session")
def ml1m_data(ml1m_paths):
    movies_path, ratings_path = ml1m_paths
    catalog = parse_movies(movies_path.read_bytes())
    store = parse_ratings(ratings_path.read_bytes(), catalog)
    return catalog, store
