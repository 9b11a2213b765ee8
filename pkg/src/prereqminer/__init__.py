"""Refine expert-authored prerequisite concept graphs with fuzzy evidence
from learner grades.

The pipeline scores every candidate prerequisite link by two piecewise
membership functions over per-learner grade variations, averages them into
link strengths, and keeps, reverses or drops each link by an alpha cut,
yielding a final acyclic domain model.
"""

from .errors import PrereqError
from .export import export_dot, export_model_json, parse_model_json
from .graph import ConceptGraph, find_cycle, topological_levels
from .ingestion import (
    Concept,
    Course,
    GradeMatrix,
    PrerequisiteLink,
    course_to_json,
    parse_course,
    parse_grades_csv,
    write_grades_csv,
)
from .membership import FuzzyThresholds, mu_cpr, mu_rpr, validate_thresholds
from .miner import (
    AlphaCut,
    FinalDomainModel,
    LinkReport,
    LinkStrength,
    Verdict,
    classify,
    link_deltas,
    link_strength,
    refine_model,
    sweep_alpha,
    validate_alpha,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaCut",
    "Concept",
    "ConceptGraph",
    "Course",
    "FinalDomainModel",
    "FuzzyThresholds",
    "GradeMatrix",
    "LinkReport",
    "LinkStrength",
    "PrerequisiteLink",
    "PrereqError",
    "Verdict",
    "classify",
    "course_to_json",
    "export_dot",
    "export_model_json",
    "find_cycle",
    "link_deltas",
    "link_strength",
    "mu_cpr",
    "mu_rpr",
    "parse_course",
    "parse_grades_csv",
    "parse_model_json",
    "refine_model",
    "sweep_alpha",
    "topological_levels",
    "validate_alpha",
    "validate_thresholds",
    "write_grades_csv",
]
