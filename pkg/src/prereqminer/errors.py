"""Error types raised across the package.

Every error carries a stable ``code`` (the class name) so the CLI and the
HTTP service can report machine-readable problem documents without string
matching on messages.
"""

from __future__ import annotations


class PrereqError(Exception):
    """Base class for all validation and state errors in this package."""

    code = "PrereqError"

    def __init__(self, message: str, detail: object = None):
        super().__init__(message)
        self.detail = detail

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        cls.code = cls.__name__


# --- threshold / alpha validation ---

class NonNegativeS1(PrereqError):
    """s1 must be strictly negative."""


class NonPositiveS2(PrereqError):
    """s2 must be strictly positive."""


class S3NotAboveS2(PrereqError):
    """s3 must be strictly greater than s2."""


class NonFinite(PrereqError):
    """A parameter was NaN or infinite."""


class AlphaOutOfRange(PrereqError):
    """alpha must lie in [0, 1]."""


class InvalidAlphaSweep(PrereqError):
    """The alpha list for a sweep was empty or not ascending."""


# --- course document validation ---

class MalformedDocument(PrereqError):
    """Structurally invalid course document, grades file or model document."""


class DuplicateConceptId(PrereqError):
    """Two concepts share an id."""


class UnknownLinkEndpoint(PrereqError):
    """A link names a concept id that does not exist."""


class SelfLoop(PrereqError):
    """A link has identical source and target."""


class InitialModelCyclic(PrereqError):
    """The expert's initial link set contains a cycle."""


class BidirectionalPair(PrereqError):
    """Both (a, b) and (b, a) appear in the initial links."""


# --- grades CSV validation ---

class MissingHeader(PrereqError):
    """The CSV has no header row starting with 'learner'."""


class UnknownConceptColumn(PrereqError):
    """A header column names a concept absent from the course."""


class DuplicateConceptColumn(PrereqError):
    """A concept id appears twice in the header."""


class MissingConceptColumn(PrereqError):
    """A course concept has no column in the CSV."""


class NonNumericGrade(PrereqError):
    """A grade cell could not be parsed as a number."""


class GradeOutOfRange(PrereqError):
    """A grade is NaN, infinite, or outside [0, grade_scale_max]."""


class DuplicateLearnerId(PrereqError):
    """Two rows share a learner id."""


# --- pipeline and graph ---

class CourseMatrixMismatch(PrereqError):
    """The grade matrix does not belong to the course."""


class GraphCyclic(PrereqError):
    """Operation requires an acyclic graph."""


# --- service state ---

class NotFound(PrereqError):
    """No such course."""


class Conflict(PrereqError):
    """Course id already exists with different content."""


class NoGradesUploaded(PrereqError):
    """Refinement requested before any grades were uploaded."""


class NoModelYet(PrereqError):
    """Model requested before any refinement was run."""
