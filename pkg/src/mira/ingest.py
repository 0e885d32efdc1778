"""MovieLens-format ingestion: catalog and ratings parsing, session ingest.

Wire formats
------------
movies file    lines ``MovieID::Title::Genre1|Genre2|...``
ratings file   lines ``UserID::MovieID::Rating::Timestamp``
session file   CSV with header ``user_id,movie_id,rating``
users file     lines ``UserID::Gender::Age::Occupation::Zip`` (accepted,
               content discarded — nothing downstream consumes demographics)

Files are decoded as UTF-8 with lossy replacement: MovieLens 1M titles
contain a handful of Latin-1 bytes and titles are display-only. Every input
line either yields a record or raises a positioned error; nothing is
silently dropped.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import IO, Iterator, Union

import numpy as np
from scipy import sparse

from .errors import (
    DuplicateKeyError,
    ParseError,
    ReferentialIntegrityError,
    UserCollisionError,
)
from .genres import GENRE_INDEX

Source = Union[bytes, str, IO[bytes], IO[str]]


@dataclass(frozen=True)
class Movie:
    """One catalog entry. ``title`` keeps the year suffix verbatim."""

    movie_id: int
    title: str
    genres: frozenset[str]


@dataclass(frozen=True)
class Rating:
    """One parsed rating line. ``timestamp`` is preserved but unused."""

    user_id: int
    movie_id: int
    value: int
    timestamp: int | None = None


class Catalog:
    """Immutable movie_id -> Movie mapping."""

    def __init__(self, movies: dict[int, Movie]):
        self.movies = movies

    def __len__(self) -> int:
        return len(self.movies)

    def __contains__(self, movie_id: int) -> bool:
        return movie_id in self.movies

    def __getitem__(self, movie_id: int) -> Movie:
        return self.movies[movie_id]

    def get(self, movie_id: int, default=None):
        return self.movies.get(movie_id, default)

    def ids(self) -> list[int]:
        return sorted(self.movies)


class RatingsStore:
    """Sparse user->movie->value mapping with its exact transpose.

    Instances are immutable after construction and safe to share across
    concurrent readers. ``by_user`` and ``by_movie`` hold the same
    (user, movie, value) triples.
    """

    def __init__(self, by_user: dict[int, dict[int, int]],
                 by_movie: dict[int, dict[int, int]]):
        self.by_user = by_user
        self.by_movie = by_movie
        self._matrix = None
        self._global_mean = None
        self._movie_means: dict[int, float] = {}

    # -- queries ------------------------------------------------------

    def users(self) -> list[int]:
        return sorted(self.by_user)

    def n_users(self) -> int:
        return len(self.by_user)

    def n_ratings(self) -> int:
        return sum(len(r) for r in self.by_user.values())

    def user_ratings(self, user_id: int) -> dict[int, int]:
        return self.by_user[user_id]

    def global_mean(self) -> float:
        """Mean of every rating in the store (0.0 for an empty store)."""
        if self._global_mean is None:
            total = count = 0
            for ratings in self.by_user.values():
                total += sum(ratings.values())
                count += len(ratings)
            self._global_mean = total / count if count else 0.0
        return self._global_mean

    def movie_mean(self, movie_id: int) -> float | None:
        """Mean rating of one movie, or None if nobody rated it."""
        raters = self.by_movie.get(movie_id)
        if not raters:
            return None
        if movie_id not in self._movie_means:
            self._movie_means[movie_id] = sum(raters.values()) / len(raters)
        return self._movie_means[movie_id]

    # -- dense access for the similarity scan --------------------------

    def to_user_matrix(self):
        """CSR user x movie rating matrix plus index maps, built lazily.

        Returns (user_ids, user_row, movie_col, matrix, row_sq_norms) where
        user_ids is sorted ascending, user_row/movie_col map ids to indices,
        and row_sq_norms[i] is the exact squared norm of row i. Cached: the
        store never changes after construction.
        """
        if self._matrix is None:
            user_ids = self.users()
            movie_ids = sorted(self.by_movie)
            user_row = {u: i for i, u in enumerate(user_ids)}
            movie_col = {m: j for j, m in enumerate(movie_ids)}
            rows, cols, vals = [], [], []
            for u in user_ids:
                i = user_row[u]
                for m, v in self.by_user[u].items():
                    rows.append(i)
                    cols.append(movie_col[m])
                    vals.append(v)
            matrix = sparse.csr_matrix(
                (np.asarray(vals, dtype=np.float64),
                 (np.asarray(rows), np.asarray(cols))),
                shape=(len(user_ids), len(movie_ids)),
            )
            sq_norms = np.asarray(matrix.multiply(matrix).sum(axis=1)).ravel()
            self._matrix = (user_ids, user_row, movie_col, matrix, sq_norms)
        return self._matrix


def _lines(source: Source) -> Iterator[str]:
    """Decode a byte/str source into lines without trailing newlines."""
    if isinstance(source, bytes):
        text = source.decode("utf-8", errors="replace")
    elif isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8", errors="replace") if isinstance(raw, bytes) else raw
    for line in text.splitlines():
        yield line


def parse_movies(source: Source) -> Catalog:
    """Parse a MovieLens movies file into a Catalog.

    Raises ParseError (with line number) on a wrong field count, a bad
    movie id, an unknown genre token, or a duplicate movie id.
    """
    movies: dict[int, Movie] = {}
    for line_no, line in enumerate(_lines(source), start=1):
        fields = line.split("::")
        if len(fields) != 3:
            raise ParseError(line_no, f"expected 3 '::'-separated fields, got {len(fields)}")
        raw_id, title, genre_field = fields
        try:
            movie_id = int(raw_id)
        except ValueError:
            raise ParseError(line_no, f"movie id {raw_id!r} is not an integer") from None
        if movie_id <= 0:
            raise ParseError(line_no, f"movie id must be positive, got {movie_id}")
        if movie_id in movies:
            raise DuplicateKeyError(line_no, f"duplicate movie id {movie_id}")
        genres = set()
        for token in genre_field.split("|"):
            if token not in GENRE_INDEX:
                raise ParseError(line_no, f"unknown genre token {token!r}")
            genres.add(token)
        movies[movie_id] = Movie(movie_id, title, frozenset(genres))
    return Catalog(movies)


def _insert_rating(by_user, by_movie, rating: Rating, line_no: int) -> None:
    user = by_user.setdefault(rating.user_id, {})
    if rating.movie_id in user:
        raise DuplicateKeyError(
            line_no,
            f"duplicate rating for user {rating.user_id}, movie {rating.movie_id}",
        )
    user[rating.movie_id] = rating.value
    by_movie.setdefault(rating.movie_id, {})[rating.user_id] = rating.value


def _check_rating(line_no: int, user_id: int, movie_id: int, value: int,
                  catalog: Catalog) -> None:
    if user_id <= 0:
        raise ParseError(line_no, f"user id must be positive, got {user_id}")
    if movie_id <= 0:
        raise ParseError(line_no, f"movie id must be positive, got {movie_id}")
    if not 1 <= value <= 5:
        raise ParseError(line_no, f"rating must be in [1, 5], got {value}")
    if movie_id not in catalog:
        raise ReferentialIntegrityError(
            [movie_id], f"line {line_no}: rating references unknown movie id {movie_id}"
        )


def parse_ratings(source: Source, catalog: Catalog) -> RatingsStore:
    """Parse a MovieLens ratings file against an already-loaded catalog.

    Both indexes are populated; the transpose invariant holds on return.
    Raises ParseError for malformed lines or out-of-range values,
    DuplicateKeyError for a repeated (user, movie) pair, and
    ReferentialIntegrityError for a movie id absent from the catalog.
    """
    by_user: dict[int, dict[int, int]] = {}
    by_movie: dict[int, dict[int, int]] = {}
    for line_no, line in enumerate(_lines(source), start=1):
        fields = line.split("::")
        if len(fields) != 4:
            raise ParseError(line_no, f"expected 4 '::'-separated fields, got {len(fields)}")
        try:
            user_id, movie_id, value = int(fields[0]), int(fields[1]), int(fields[2])
            timestamp = int(fields[3])
        except ValueError:
            raise ParseError(line_no, f"non-integer field in {line!r}") from None
        _check_rating(line_no, user_id, movie_id, value, catalog)
        _insert_rating(by_user, by_movie, Rating(user_id, movie_id, value, timestamp), line_no)
    return RatingsStore(by_user, by_movie)


def ingest_session_ratings(source: Source, store: RatingsStore,
                           catalog: Catalog) -> RatingsStore:
    """Ingest a volunteer session CSV for one fresh user.

    The file must carry a header ``user_id,movie_id,rating`` and one rating
    per row, all under a single user_id not already present in the store.
    Returns a new extended store; the original is left untouched.
    """
    reader = csv.reader(_lines(source))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError(1, "empty session file") from None
    if [h.strip() for h in header] != ["user_id", "movie_id", "rating"]:
        raise ParseError(1, f"expected header 'user_id,movie_id,rating', got {','.join(header)!r}")

    session_user: int | None = None
    ratings: dict[int, int] = {}
    for line_no, row in enumerate(reader, start=2):
        if len(row) != 3:
            raise ParseError(line_no, f"expected 3 columns, got {len(row)}")
        try:
            user_id, movie_id, value = (int(f.strip()) for f in row)
        except ValueError:
            raise ParseError(line_no, f"non-integer field in {row!r}") from None
        _check_rating(line_no, user_id, movie_id, value, catalog)
        if session_user is None:
            session_user = user_id
            if user_id in store.by_user:
                raise UserCollisionError(user_id)
        elif user_id != session_user:
            raise ParseError(line_no, f"session mixes user ids {session_user} and {user_id}")
        if movie_id in ratings:
            raise DuplicateKeyError(
                line_no, f"duplicate rating for user {user_id}, movie {movie_id}"
            )
        ratings[movie_id] = value

    if session_user is None:
        raise ParseError(1, "session file contains no ratings")

    by_user = dict(store.by_user)
    by_user[session_user] = ratings
    by_movie = dict(store.by_movie)
    for movie_id, value in ratings.items():
        raters = dict(by_movie.get(movie_id, {}))
        raters[session_user] = value
        by_movie[movie_id] = raters
    return RatingsStore(by_user, by_movie)


def parse_users(source: Source) -> int:
    """Validate a MovieLens users file and return the user count.

    Demographics are accepted if present but never consumed; no MIRA step
    reads them.
    """
    seen: set[int] = set()
    for line_no, line in enumerate(_lines(source), start=1):
        fields = line.split("::")
        if len(fields) != 5:
            raise ParseError(line_no, f"expected 5 '::'-separated fields, got {len(fields)}")
        try:
            user_id = int(fields[0])
        except ValueError:
            raise ParseError(line_no, f"user id {fields[0]!r} is not an integer") from None
        if user_id in seen:
            raise DuplicateKeyError(line_no, f"duplicate user id {user_id}")
        seen.add(user_id)
    return len(seen)


def serialize_ratings(store: RatingsStore) -> str:
    """Write a store back to the ratings wire format, user then movie order.

    Timestamps are not retained in the store, so 0 is emitted; re-parsing
    the output yields an identical store under (user, movie, value)
    comparison.
    """
    out = io.StringIO()
    for user_id in sorted(store.by_user):
        ratings = store.by_user[user_id]
        for movie_id in sorted(ratings):
            out.write(f"{user_id}::{movie_id}::{ratings[movie_id]}::0\n")
    return out.getvalue()
