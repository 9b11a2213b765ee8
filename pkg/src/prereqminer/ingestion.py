"""Parsing and validation of course documents and learner grade matrices.

Course files are JSON: ``{id, title, grade_scale_max, concepts: [{id, name}],
links: [{source, target}]}``. Grades are CSV with a ``learner`` first column
and one column per concept id; empty cells are explicit absences, never 0.

Each parser comes in two flavours: a raising one (``parse_course``,
``parse_grades_csv``) that fails on the first violation, and a collecting
one (``course_issues``, ``grade_issues``) that reports every violation for
the ``validate`` CLI command. Both run the same checks.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass

from . import errors
from .graph import ConceptGraph, find_cycle

__all__ = [
    "Concept",
    "PrerequisiteLink",
    "Course",
    "GradeMatrix",
    "Issue",
    "parse_course",
    "course_issues",
    "course_to_json",
    "parse_grades_csv",
    "grade_issues",
    "write_grades_csv",
]

_ID_PATTERN = re.compile(r"[A-Za-z0-9_-]+\Z")

DEFAULT_GRADE_SCALE_MAX = 20.0


@dataclass(frozen=True)
class Concept:
    id: str
    name: str


@dataclass(frozen=True, order=True)
class PrerequisiteLink:
    """A hypothesized edge: ``source`` must be learned before ``target``."""

    source: str
    target: str

    @property
    def flipped(self) -> "PrerequisiteLink":
        return PrerequisiteLink(self.target, self.source)

    def __str__(self) -> str:
        return f"{self.source} -> {self.target}"


@dataclass(frozen=True)
class Course:
    id: str
    title: str
    grade_scale_max: float
    concepts: tuple[Concept, ...]
    initial_links: tuple[PrerequisiteLink, ...]

    def concept_ids(self) -> list[str]:
        return [c.id for c in self.concepts]

    def concept_index(self) -> dict[str, int]:
        return {c.id: i for i, c in enumerate(self.concepts)}

    def concept_names(self) -> dict[str, str]:
        return {c.id: c.name for c in self.concepts}


@dataclass(frozen=True)
class GradeMatrix:
    """Dense learners x concepts grades, aligned to the course concept order.

    ``grades[row][col]`` is a float in [0, grade_scale_max] or None for an
    explicitly absent grade. Zero learners is allowed (a matrix that only
    ever produces insufficient-data verdicts).
    """

    course_id: str
    learner_ids: tuple[str, ...]
    grades: tuple[tuple[float | None, ...], ...]

    def absent_cells(self) -> int:
        return sum(1 for row in self.grades for cell in row if cell is None)

    def column(self, index: int) -> list[float | None]:
        return [row[index] for row in self.grades]


@dataclass(frozen=True)
class Issue:
    """One validation violation, with the error code it maps to."""

    code: str
    message: str

    def to_error(self) -> errors.PrereqError:
        cls = getattr(errors, self.code)
        return cls(self.message)


def _raise_first(issues: list[Issue]):
    if issues:
        raise issues[0].to_error()


# --- course documents ---

def course_issues(document: str) -> tuple[list[Issue], Course | None]:
    """Validate a course document, returning every violation found.

    The Course is only constructed when there are no violations.
    """
    issues: list[Issue] = []

    def bad(code, message):
        issues.append(Issue(code, message))

    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        return [Issue("MalformedDocument", f"invalid JSON: {exc}")], None
    if not isinstance(doc, dict):
        return [Issue("MalformedDocument", "top level must be a JSON object")], None

    course_id = doc.get("id")
    if not isinstance(course_id, str) or not _ID_PATTERN.match(course_id):
        bad("MalformedDocument",
            f"course id must match [A-Za-z0-9_-]+, got {course_id!r}")
    title = doc.get("title")
    if not isinstance(title, str) or not title:
        bad("MalformedDocument", f"course title must be a nonempty string, got {title!r}")

    scale = doc.get("grade_scale_max", DEFAULT_GRADE_SCALE_MAX)
    if (isinstance(scale, bool) or not isinstance(scale, (int, float))
            or not math.isfinite(scale) or scale <= 0):
        bad("MalformedDocument",
            f"grade_scale_max must be a positive finite number, got {scale!r}")
        scale = DEFAULT_GRADE_SCALE_MAX

    raw_concepts = doc.get("concepts")
    concepts: list[Concept] = []
    if not isinstance(raw_concepts, list):
        bad("MalformedDocument", "concepts must be an array")
    else:
        seen_ids: set[str] = set()
        for i, entry in enumerate(raw_concepts):
            if not isinstance(entry, dict):
                bad("MalformedDocument", f"concepts[{i}] must be an object")
                continue
            cid, name = entry.get("id"), entry.get("name")
            if not isinstance(cid, str) or not _ID_PATTERN.match(cid):
                bad("MalformedDocument",
                    f"concepts[{i}].id must match [A-Za-z0-9_-]+, got {cid!r}")
                continue
            if not isinstance(name, str) or not name:
                bad("MalformedDocument",
                    f"concepts[{i}].name must be a nonempty string, got {name!r}")
                continue
            if cid in seen_ids:
                bad("DuplicateConceptId", f"concept id {cid!r} appears more than once")
                continue
            seen_ids.add(cid)
            concepts.append(Concept(cid, name))
        if isinstance(raw_concepts, list) and len(raw_concepts) < 2:
            bad("MalformedDocument", "a course needs at least 2 concepts")

    known = {c.id for c in concepts}
    raw_links = doc.get("links", [])
    links: list[PrerequisiteLink] = []
    if not isinstance(raw_links, list):
        bad("MalformedDocument", "links must be an array")
    else:
        seen_pairs: set[tuple[str, str]] = set()
        for i, entry in enumerate(raw_links):
            if not isinstance(entry, dict):
                bad("MalformedDocument", f"links[{i}] must be an object")
                continue
            src, tgt = entry.get("source"), entry.get("target")
            if not isinstance(src, str) or not isinstance(tgt, str):
                bad("MalformedDocument",
                    f"links[{i}] must have string source and target")
                continue
            missing = [e for e in (src, tgt) if e not in known]
            if missing:
                bad("UnknownLinkEndpoint",
                    f"links[{i}] ({src} -> {tgt}) references unknown concept "
                    + ", ".join(repr(m) for m in missing))
                continue
            if src == tgt:
                bad("SelfLoop", f"links[{i}] is a self-loop on {src!r}")
                continue
            if (src, tgt) in seen_pairs:
                bad("MalformedDocument", f"links[{i}] duplicates link {src} -> {tgt}")
                continue
            if (tgt, src) in seen_pairs:
                bad("BidirectionalPair",
                    f"links[{i}] ({src} -> {tgt}) conflicts with existing {tgt} -> {src}")
                continue
            seen_pairs.add((src, tgt))
            links.append(PrerequisiteLink(src, tgt))

    if not issues:
        cycle = find_cycle(ConceptGraph(sorted(known), [(l.source, l.target) for l in links]))
        if cycle is not None:
            bad("InitialModelCyclic",
                "initial links contain a cycle: " + " -> ".join(cycle))

    if issues:
        return issues, None
    return [], Course(course_id, title, float(scale), tuple(concepts), tuple(links))


def parse_course(document: str) -> Course:
    """Parse and fully validate a course document; raises on the first violation."""
    issues, course = course_issues(document)
    _raise_first(issues)
    assert course is not None
    return course


def course_to_json(course: Course) -> str:
    """Canonical serialization; parse_course round-trips it byte-identically."""
    scale = course.grade_scale_max
    doc = {
        "id": course.id,
        "title": course.title,
        "grade_scale_max": int(scale) if scale == int(scale) else scale,
        "concepts": [{"id": c.id, "name": c.name} for c in course.concepts],
        "links": [{"source": l.source, "target": l.target} for l in course.initial_links],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# --- grade matrices ---

def _parse_grade_cell(cell: str, scale: float, where: str) -> tuple[float | None, Issue | None]:
    text = cell.strip()
    if text == "":
        return None, None
    try:
        value = float(text)
    except ValueError:
        return None, Issue("NonNumericGrade", f"grade {text!r} at {where} is not a number")
    if not math.isfinite(value):
        return None, Issue("GradeOutOfRange", f"grade {text!r} at {where} is not finite")
    if value < 0 or value > scale:
        return None, Issue(
            "GradeOutOfRange", f"grade {value:g} at {where} outside [0, {scale:g}]")
    return value, None


def grade_issues(text: str, course: Course) -> tuple[list[Issue], GradeMatrix | None]:
    """Validate a grades CSV against a course, returning every violation."""
    issues: list[Issue] = []
    rows = list(csv.reader(io.StringIO(text, newline="")))
    if not rows or not rows[0] or rows[0][0].strip() != "learner":
        return [Issue("MissingHeader", "first row must be a header starting with 'learner'")], None

    header = [cell.strip() for cell in rows[0][1:]]
    known = set(course.concept_ids())
    seen_cols: set[str] = set()
    for col in header:
        if col not in known:
            issues.append(Issue("UnknownConceptColumn",
                                f"column {col!r} is not a concept of course {course.id!r}"))
        elif col in seen_cols:
            issues.append(Issue("DuplicateConceptColumn",
                                f"concept column {col!r} appears more than once"))
        seen_cols.add(col)
    for cid in course.concept_ids():
        if cid not in seen_cols:
            issues.append(Issue("MissingConceptColumn",
                                f"no column for concept {cid!r}"))
    if issues:
        return issues, None

    # reorder columns to course concept order
    col_of = {cid: header.index(cid) for cid in course.concept_ids()}
    learner_ids: list[str] = []
    seen_learners: set[str] = set()
    grades: list[tuple[float | None, ...]] = []
    for row_no, row in enumerate(rows[1:], start=2):
        if not row or all(cell.strip() == "" for cell in row):
            continue  # ignore blank lines
        learner = row[0].strip()
        if not learner:
            issues.append(Issue("MalformedDocument", f"row {row_no} has an empty learner id"))
            continue
        if len(row) != len(header) + 1:
            issues.append(Issue(
                "MalformedDocument",
                f"row {row_no} has {len(row) - 1} grade cells, expected {len(header)}"))
            continue
        if learner in seen_learners:
            issues.append(Issue("DuplicateLearnerId",
                                f"learner id {learner!r} appears more than once (row {row_no})"))
            continue
        seen_learners.add(learner)
        cells: list[float | None] = []
        row_ok = True
        for cid in course.concept_ids():
            raw = row[1 + col_of[cid]]
            value, issue = _parse_grade_cell(
                raw, course.grade_scale_max,
                f"row {row_no} (learner {learner!r}), column {cid!r}")
            if issue is not None:
                issues.append(issue)
                row_ok = False
                continue
            cells.append(value)
        if row_ok:
            learner_ids.append(learner)
            grades.append(tuple(cells))

    if issues:
        return issues, None
    return [], GradeMatrix(course.id, tuple(learner_ids), tuple(grades))


def parse_grades_csv(text: str, course: Course) -> GradeMatrix:
    """Parse a grades CSV aligned to the course; raises on the first violation."""
    issues, matrix = grade_issues(text, course)
    _raise_first(issues)
    assert matrix is not None
    return matrix


def _format_grade(value: float | None) -> str:
    if value is None:
        return ""
    if value == int(value):
        return str(int(value))
    return repr(value)


def write_grades_csv(matrix: GradeMatrix, course: Course) -> str:
    """Serialize a matrix to canonical CSV (course concept order, LF endings).

    parse_grades_csv inverts it, and a second write is byte-identical.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["learner", *course.concept_ids()])
    for learner, row in zip(matrix.learner_ids, matrix.grades):
        writer.writerow([learner, *(_format_grade(cell) for cell in row)])
    return out.getvalue()
