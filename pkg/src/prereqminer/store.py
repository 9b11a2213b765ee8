"""File-backed persistence for courses, grades and refined models.

Layout: one directory per course id under the store root, holding
``course.json`` (canonical course document), ``grades.csv`` (canonical
grades) and ``model.json`` (latest refinement result). Every write goes
through write-temp-then-rename, so a crash mid-write never exposes a
half-written file and readers always see the last committed version.

Refinements on one course are serialized by an in-process per-course
lock; reads never take the lock.
"""

from __future__ import annotations

import os
import tempfile
import threading
from pathlib import Path

from .errors import Conflict, NoGradesUploaded, NoModelYet, NotFound
from .export import export_model_json
from .ingestion import (
    Course,
    GradeMatrix,
    course_to_json,
    parse_course,
    parse_grades_csv,
    write_grades_csv,
)
from .membership import validate_thresholds
from .miner import refine_model, validate_alpha

__all__ = ["CourseStore", "atomic_write_text"]

COURSE_FILE = "course.json"
GRADES_FILE = "grades.csv"
MODEL_FILE = "model.json"


def atomic_write_text(path: Path, text: str):
    """Write via a temp file in the same directory plus atomic rename."""
    directory = path.parent
    fd, tmp_path = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except FileNotFoundError:
            pass
        raise


class CourseStore:
    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock(self, course_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(course_id, threading.Lock())

    def _course_dir(self, course_id: str) -> Path:
        return self.root / course_id

    def _read(self, course_id: str, filename: str) -> str | None:
        path = self._course_dir(course_id) / filename
        if not path.exists():
            return None
        return path.read_text(encoding="utf-8")

    # --- courses ---

    def create_course(self, document: str) -> tuple[Course, bool]:
        """Validate and persist a course; returns (course, created).

        Re-posting a document identical after canonicalization is a no-op;
        a different document under an existing id raises Conflict.
        """
        course = parse_course(document)
        canonical = course_to_json(course)
        with self._lock(course.id):
            existing = self._read(course.id, COURSE_FILE)
            if existing is not None:
                if existing == canonical:
                    return course, False
                raise Conflict(
                    f"course {course.id!r} already exists with different content")
            self._course_dir(course.id).mkdir(parents=True, exist_ok=True)
            atomic_write_text(self._course_dir(course.id) / COURSE_FILE, canonical)
        return course, True

    def list_courses(self) -> list[dict]:
        entries = []
        for child in sorted(self.root.iterdir()):
            if not (child / COURSE_FILE).exists():
                continue
            course = parse_course((child / COURSE_FILE).read_text(encoding="utf-8"))
            entries.append({
                "id": course.id,
                "title": course.title,
                "concepts": len(course.concepts),
                "links": len(course.initial_links),
                "has_grades": (child / GRADES_FILE).exists(),
                "has_model": (child / MODEL_FILE).exists(),
            })
        return entries

    def course_document(self, course_id: str) -> str:
        text = self._read(course_id, COURSE_FILE)
        if text is None:
            raise NotFound(f"no course {course_id!r}")
        return text

    def get_course(self, course_id: str) -> Course:
        return parse_course(self.course_document(course_id))

    # --- grades ---

    def put_grades(self, course_id: str, csv_text: str) -> GradeMatrix:
        """Validate and store grades, replacing any previous matrix."""
        course = self.get_course(course_id)
        matrix = parse_grades_csv(csv_text, course)
        with self._lock(course_id):
            atomic_write_text(self._course_dir(course_id) / GRADES_FILE,
                              write_grades_csv(matrix, course))
        return matrix

    def get_grades(self, course_id: str) -> GradeMatrix:
        course = self.get_course(course_id)
        text = self._read(course_id, GRADES_FILE)
        if text is None:
            raise NoGradesUploaded(f"no grades uploaded for course {course_id!r}")
        return parse_grades_csv(text, course)

    # --- models ---

    def refine(self, course_id: str, s1: float, s2: float, s3: float,
               alpha: float) -> str:
        """Run a refinement and persist the model document; returns it."""
        thresholds = validate_thresholds(s1, s2, s3)
        cut = validate_alpha(alpha)
        with self._lock(course_id):
            course = self.get_course(course_id)
            matrix = self.get_grades(course_id)
            model = refine_model(course, matrix, thresholds, cut)
            document = export_model_json(model)
            atomic_write_text(self._course_dir(course_id) / MODEL_FILE, document)
        return document

    def model_document(self, course_id: str) -> str:
        self.course_document(course_id)  # 404 on unknown course
        text = self._read(course_id, MODEL_FILE)
        if text is None:
            raise NoModelYet(f"course {course_id!r} has not been refined yet")
        return text
