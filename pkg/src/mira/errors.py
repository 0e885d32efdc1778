"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: data errors (parsing,
referential integrity, session collisions) exit 1, query errors (unknown
user, invalid stimulus) exit 2.
"""

from __future__ import annotations


class MiraError(Exception):
    """Base class for all package errors."""


class ParseError(MiraError):
    """A malformed input line. Carries the 1-based line number.

    ``source`` names the offending file when known (the CLI fills it in).
    """

    def __init__(self, line_no: int, message: str, source: str | None = None):
        self.line_no = line_no
        self.message = message
        self.source = source
        super().__init__(message)

    def __str__(self) -> str:
        prefix = f"{self.source}, " if self.source else ""
        return f"{prefix}line {self.line_no}: {self.message}"


class DuplicateKeyError(ParseError):
    """The same key appeared twice where uniqueness is required."""


class ReferentialIntegrityError(MiraError):
    """A rating or recommendation references a movie_id absent from the catalog."""

    def __init__(self, movie_ids, message: str | None = None):
        self.movie_ids = tuple(movie_ids)
        ids = ", ".join(str(m) for m in self.movie_ids)
        super().__init__(message or f"unknown movie id(s): {ids}")


class UserCollisionError(MiraError):
    """A session tried to ingest ratings under an already-existing user_id."""

    def __init__(self, user_id: int):
        self.user_id = user_id
        super().__init__(f"user id {user_id} already exists in the ratings store")


class UserNotFoundError(MiraError):
    """The requested user_id has no ratings in the store."""

    def __init__(self, user_id: int):
        self.user_id = user_id
        super().__init__(f"user id {user_id} not found")


class InvalidStimulusError(MiraError):
    """The incoming stimulus is not a positive integer user id."""


class InfeasibleClusteringError(MiraError):
    """Fewer distinct vectors than requested clusters."""
