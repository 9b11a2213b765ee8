"""The refinement pipeline over an expert's initial prerequisite model.

For each initial link the per-learner grade variation
``delta = grade(target) - grade(source)`` is fuzzified through the two
membership functions, averaged over the cohort into a link strength, and
classified against the alpha cut:

1. no usable learner pair        -> INSUFFICIENT_DATA (link kept, flagged)
2. cpr >= alpha and cpr >= rpr   -> KEPT
3. rpr >= alpha and rpr > cpr    -> REVERSED (link flipped)
4. otherwise                     -> DROPPED

Ties go to KEPT: the expert's original direction outranks a data-driven
flip of equal strength. Reversals that would make the final graph cyclic
are revoked in lexicographic order of the original link and demoted to
DROPPED with a diagnostic, so the final model is always a DAG.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import AlphaOutOfRange, CourseMatrixMismatch, InvalidAlphaSweep, NonFinite
from .graph import ConceptGraph, find_cycle
from .ingestion import Course, GradeMatrix, PrerequisiteLink
from .membership import FuzzyThresholds, mu_cpr, mu_rpr

__all__ = [
    "AlphaCut",
    "validate_alpha",
    "Verdict",
    "LinkStrength",
    "LinkReport",
    "FinalDomainModel",
    "link_deltas",
    "link_strength",
    "classify",
    "refine_model",
    "sweep_alpha",
]

LOW_SUPPORT_WARNING = 10


@dataclass(frozen=True)
class AlphaCut:
    """Minimum strength for a relationship to count as meaningful."""

    alpha: float

    def __post_init__(self):
        if isinstance(self.alpha, bool) or not isinstance(self.alpha, (int, float)):
            raise NonFinite(f"alpha must be a number, got {self.alpha!r}")
        if not math.isfinite(self.alpha):
            raise NonFinite(f"alpha must be finite, got {self.alpha!r}")
        if not 0.0 <= self.alpha <= 1.0:
            raise AlphaOutOfRange(f"alpha must be in [0, 1], got {self.alpha}")


def validate_alpha(alpha: float) -> AlphaCut:
    if isinstance(alpha, bool) or not isinstance(alpha, (int, float)):
        raise NonFinite(f"alpha must be a number, got {alpha!r}")
    return AlphaCut(float(alpha))


class Verdict(str, enum.Enum):
    KEPT = "kept"
    REVERSED = "reversed"
    DROPPED = "dropped"
    INSUFFICIENT_DATA = "insufficient_data"


@dataclass(frozen=True)
class LinkStrength:
    """Cohort-aggregated memberships for one link.

    cpr and rpr are arithmetic means of the per-learner memberships;
    support_count is the number of learners with both grades present.
    """

    link: PrerequisiteLink
    cpr: float
    rpr: float
    support_count: int


@dataclass(frozen=True)
class LinkReport:
    strength: LinkStrength
    verdict: Verdict

    @property
    def link(self) -> PrerequisiteLink:
        return self.strength.link


@dataclass(frozen=True)
class FinalDomainModel:
    course_id: str
    thresholds: FuzzyThresholds
    alpha_cut: AlphaCut
    verdicts: tuple[LinkReport, ...]
    final_links: tuple[PrerequisiteLink, ...]
    diagnostics: tuple[str, ...]


def link_deltas(matrix: GradeMatrix, link: PrerequisiteLink, course: Course) -> list[float]:
    """Per-learner grade variations for one link, in learner order.

    Learners missing either endpoint grade contribute nothing.
    """
    index = course.concept_index()
    src_col, tgt_col = index[link.source], index[link.target]
    deltas = []
    for row in matrix.grades:
        src, tgt = row[src_col], row[tgt_col]
        if src is None or tgt is None:
            continue
        deltas.append(tgt - src)
    return deltas


def link_strength(link: PrerequisiteLink, deltas: list[float],
                  t: FuzzyThresholds) -> LinkStrength:
    """Mean membership of the deltas in each fuzzy set.

    The mean runs over per-learner memberships, not over the deltas
    themselves: +5 and -5 must report incoherence, not average out to a
    perfect delta of 0. Empty input yields zero strengths.
    """
    if not deltas:
        return LinkStrength(link, 0.0, 0.0, 0)
    n = len(deltas)
    cpr = sum(mu_cpr(d, t) for d in deltas) / n
    rpr = sum(mu_rpr(d, t) for d in deltas) / n
    return LinkStrength(link, cpr, rpr, n)


def classify(strength: LinkStrength, cut: AlphaCut) -> Verdict:
    """Apply the alpha-cut decision rules, in order."""
    if strength.support_count == 0:
        return Verdict.INSUFFICIENT_DATA
    if strength.cpr >= cut.alpha and strength.cpr >= strength.rpr:
        return Verdict.KEPT
    if strength.rpr >= cut.alpha and strength.rpr > strength.cpr:
        return Verdict.REVERSED
    return Verdict.DROPPED


def compute_link_strengths(course: Course, matrix: GradeMatrix,
                           t: FuzzyThresholds) -> list[LinkStrength]:
    """Strengths for every initial link, in the course's link order.

    Strengths do not depend on alpha, so a sweep computes them once.
    """
    if matrix.course_id != course.id:
        raise CourseMatrixMismatch(
            f"matrix belongs to course {matrix.course_id!r}, not {course.id!r}")
    width = len(course.concepts)
    for row in matrix.grades:
        if len(row) != width:
            raise CourseMatrixMismatch(
                f"matrix rows have {len(row)} columns, course has {width} concepts")
    return [link_strength(link, link_deltas(matrix, link, course), t)
            for link in course.initial_links]


def _assemble(course: Course, strengths: list[LinkStrength],
              t: FuzzyThresholds, cut: AlphaCut) -> FinalDomainModel:
    diagnostics: list[str] = []
    verdict_of: dict[PrerequisiteLink, Verdict] = {}
    for s in strengths:
        verdict = classify(s, cut)
        verdict_of[s.link] = verdict
        if verdict is Verdict.INSUFFICIENT_DATA:
            diagnostics.append(
                f"link {s.link}: no learner has both grades; kept unchanged")
        elif 0 < s.support_count < LOW_SUPPORT_WARNING:
            diagnostics.append(
                f"link {s.link}: only {s.support_count} usable learner(s); "
                "strengths may be unreliable")

    scale = course.grade_scale_max
    if -t.s1 > scale or t.s2 > scale or t.s3 > scale:
        diagnostics.append(
            f"thresholds ({t.s1:g}, {t.s2:g}, {t.s3:g}) exceed the grade scale "
            f"maximum of {scale:g}; some branches are unreachable")

    # assemble, then revoke cycle-forming reversals in lexicographic order
    def edges() -> list[tuple[str, str]]:
        out = []
        for link, verdict in verdict_of.items():
            if verdict in (Verdict.KEPT, Verdict.INSUFFICIENT_DATA):
                out.append((link.source, link.target))
            elif verdict is Verdict.REVERSED:
                out.append((link.target, link.source))
        return out

    nodes = course.concept_ids()
    while True:
        edge_list = edges()
        if find_cycle(ConceptGraph(nodes, edge_list)) is None:
            break
        # any cycle must contain a flipped edge (kept edges are a DAG subset)
        culprit = None
        for link in sorted(l for l, v in verdict_of.items()
                           if v is Verdict.REVERSED):
            if _on_some_cycle(nodes, edge_list, (link.target, link.source)):
                culprit = link
                break
        assert culprit is not None, "cycle without any reversed edge"
        verdict_of[culprit] = Verdict.DROPPED
        diagnostics.append(
            f"reversal of {culprit} revoked: flipping it would leave the model "
            "cyclic; link dropped")

    final = sorted(
        link if verdict_of[link] in (Verdict.KEPT, Verdict.INSUFFICIENT_DATA)
        else link.flipped
        for link in verdict_of
        if verdict_of[link] is not Verdict.DROPPED)
    reports = tuple(LinkReport(s, verdict_of[s.link]) for s in strengths)
    return FinalDomainModel(
        course_id=course.id,
        thresholds=t,
        alpha_cut=cut,
        verdicts=reports,
        final_links=tuple(final),
        diagnostics=tuple(diagnostics),
    )


def _on_some_cycle(nodes, edge_list, edge: tuple[str, str]) -> bool:
    """True when ``edge`` lies on a directed cycle: target reaches source."""
    adj: dict[str, list[str]] = {n: [] for n in nodes}
    for s, t in edge_list:
        adj[s].append(t)
    start, goal = edge[1], edge[0]
    seen = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        if node == goal:
            return True
        for nxt in adj[node]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


def refine_model(course: Course, matrix: GradeMatrix, t: FuzzyThresholds,
                 cut: AlphaCut) -> FinalDomainModel:
    """Run the full pipeline: deltas, strengths, verdicts, cycle-safe assembly."""
    strengths = compute_link_strengths(course, matrix, t)
    return _assemble(course, strengths, t, cut)


def sweep_alpha(course: Course, matrix: GradeMatrix, t: FuzzyThresholds,
                alphas: list[float]) -> list[FinalDomainModel]:
    """One model per alpha, over strengths computed once.

    alphas must be nonempty and ascending; each is validated like a
    single-run alpha.
    """
    if not alphas:
        raise InvalidAlphaSweep("alpha list is empty")
    if any(b < a for a, b in zip(alphas, alphas[1:])):
        raise InvalidAlphaSweep(f"alphas must be ascending, got {list(alphas)}")
    cuts = [validate_alpha(a) for a in alphas]
    strengths = compute_link_strengths(course, matrix, t)
    return [_assemble(course, strengths, t, cut) for cut in cuts]
