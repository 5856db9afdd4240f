"""Exception types shared across the package.

Every error that can cross the HTTP boundary carries a stable ``code``
string so the service layer can map it to a machine-readable payload.
"""

from __future__ import annotations


class AspectSimError(Exception):
    """Base class for all package errors."""

    code = "AspectSimError"


class FileUnreadable(AspectSimError):
    code = "FileUnreadable"


class SchemaMismatch(AspectSimError):
    """Input file is missing required fields."""

    code = "SchemaMismatch"

    def __init__(self, missing: list[str]):
        self.missing = list(missing)
        super().__init__(f"missing required fields: {', '.join(self.missing)}")


class EmptyCorpus(AspectSimError):
    code = "EmptyCorpus"


class MissingVector(AspectSimError):
    """An imported vector file does not cover some article id."""

    code = "MissingVector"

    def __init__(self, article_id: str):
        self.article_id = article_id
        super().__init__(f"no vector for article id {article_id!r}")


class NoFitState(AspectSimError):
    """Raw-text embedding requested but no builtin text fit is available."""

    code = "NoFitState"


class NoKnownTokens(AspectSimError):
    """Uploaded text has no tokens left after tokenization and vocabulary lookup."""

    code = "NoKnownTokens"


class DimensionMismatch(AspectSimError):
    code = "DimensionMismatch"


class ZeroVector(AspectSimError):
    code = "ZeroVector"


class UnknownId(AspectSimError):
    code = "UnknownId"

    def __init__(self, article_id: str):
        self.article_id = article_id
        super().__init__(f"unknown article id {article_id!r}")


class NoActiveCriteria(AspectSimError):
    code = "NoActiveCriteria"


class EmptyQuery(AspectSimError):
    code = "EmptyQuery"


class MissingArtifact(AspectSimError):
    """A pipeline stage was invoked before its prerequisites were produced."""

    code = "MissingArtifact"


class ChecksumMismatch(AspectSimError):
    """Pipeline artifacts were built from different corpus snapshots."""

    code = "ChecksumMismatch"
