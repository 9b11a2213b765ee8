"""Bundled example data: a 12-concept Java course with 48 synthetic learners.

The concept list follows a classic introductory Java curriculum; the link
set and all grades are synthetic stand-ins constructed for demonstrations
and tests, not observations from a real cohort.
"""

from __future__ import annotations

from importlib import resources

from .ingestion import Course, GradeMatrix, parse_course, parse_grades_csv

__all__ = [
    "java_course_text",
    "java_grades_text",
    "load_java_course",
    "load_java_grades",
]


def _data(name: str) -> str:
    return (resources.files("prereqminer") / "data" / name).read_text(encoding="utf-8")


def java_course_text() -> str:
    return _data("java_course.json")


def java_grades_text() -> str:
    return _data("java_grades.csv")


def load_java_course() -> Course:
    return parse_course(java_course_text())


def load_java_grades(course: Course | None = None) -> GradeMatrix:
    return parse_grades_csv(java_grades_text(), course or load_java_course())
