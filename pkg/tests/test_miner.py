import random

import pytest
from hypothesis import given, strategies as st

from prereqminer.errors import (
    AlphaOutOfRange,
    CourseMatrixMismatch,
    InvalidAlphaSweep,
    NonFinite,
)
from prereqminer.export import export_model_json
from prereqminer.graph import ConceptGraph, find_cycle
from prereqminer.ingestion import GradeMatrix, PrerequisiteLink
from prereqminer.membership import validate_thresholds
from prereqminer.miner import (
    AlphaCut,
    LinkStrength,
    Verdict,
    classify,
    compute_link_strengths,
    link_deltas,
    link_strength,
    refine_model,
    sweep_alpha,
    validate_alpha,
)

from conftest import make_course, make_matrix, random_instance, reversal_cycle_instance
from oracle_support import oracle_classify, oracle_strengths

T = validate_thresholds(-5, 5, 10)
HALF = validate_alpha(0.5)
LINK = PrerequisiteLink("A", "B")


# --- alpha validation ---

def test_alpha_bounds_accepted():
    assert validate_alpha(0).alpha == 0.0
    assert validate_alpha(1).alpha == 1.0


@pytest.mark.parametrize("alpha", [1.5, -0.1, 2])
def test_alpha_out_of_range(alpha):
    with pytest.raises(AlphaOutOfRange):
        validate_alpha(alpha)


@pytest.mark.parametrize("alpha", [float("nan"), float("inf"), "0.5", True])
def test_alpha_must_be_a_finite_number(alpha):
    with pytest.raises(NonFinite):
        validate_alpha(alpha)


# --- deltas ---

def test_deltas_are_target_minus_source():
    course = make_course(["A", "B"], [("A", "B")])
    matrix = make_matrix(course, [(10, 12), (12, 12), (8, 6)])
    assert link_deltas(matrix, LINK, course) == [2, 0, -2]


def test_learners_missing_either_grade_are_skipped():
    course = make_course(["A", "B"], [("A", "B")])
    matrix = make_matrix(course, [(10, 13), (7, None), (None, 4)])
    assert link_deltas(matrix, LINK, course) == [3]


def test_no_learners_no_deltas():
    course = make_course(["A", "B"], [("A", "B")])
    assert link_deltas(make_matrix(course, []), LINK, course) == []


def test_deltas_follow_course_concept_order_not_csv_order():
    course = make_course(["B", "A"], [("A", "B")])
    matrix = make_matrix(course, [(12, 10)])  # columns are B, A
    assert link_deltas(matrix, LINK, course) == [2]


# --- strengths ---

def test_all_zero_deltas_peak_cpr():
    s = link_strength(LINK, [0, 0, 0], T)
    assert (s.cpr, s.rpr, s.support_count) == (1.0, 0.0, 3)


def test_all_s2_deltas_peak_rpr():
    s = link_strength(LINK, [5, 5], T)
    assert (s.cpr, s.rpr, s.support_count) == (0.0, 1.0, 2)


def test_mixed_deltas_average_memberships():
    s = link_strength(LINK, [0, 5], T)
    assert s.cpr == pytest.approx(0.5, abs=1e-12)
    assert s.rpr == pytest.approx(0.5, abs=1e-12)


def test_empty_deltas_give_zero_strength():
    s = link_strength(LINK, [], T)
    assert (s.cpr, s.rpr, s.support_count) == (0.0, 0.0, 0)


def test_opposite_deltas_do_not_cancel():
    # +5 and -5 average to 0; membership-of-mean would report cpr = 1
    s = link_strength(LINK, [5, -5], T)
    assert s.cpr == 0.0
    assert s.rpr == 0.5


# --- classification ---

def _strength(cpr, rpr, support=48):
    return LinkStrength(LINK, cpr, rpr, support)


def test_classification_rules():
    assert classify(_strength(0.6, 0.1), HALF) is Verdict.KEPT
    assert classify(_strength(0.1, 0.7), HALF) is Verdict.REVERSED
    assert classify(_strength(0.3, 0.2), HALF) is Verdict.DROPPED
    assert classify(_strength(0.0, 0.0, support=0), HALF) is Verdict.INSUFFICIENT_DATA


def test_tie_favors_the_original_direction():
    assert classify(_strength(0.6, 0.6), HALF) is Verdict.KEPT


def test_zero_support_wins_over_everything():
    assert classify(_strength(0.0, 0.0, support=0), validate_alpha(0.0)) \
        is Verdict.INSUFFICIENT_DATA


@given(st.floats(min_value=0, max_value=1), st.floats(min_value=0, max_value=1),
       st.floats(min_value=0, max_value=1), st.floats(min_value=0, max_value=1))
def test_non_dropped_classification_is_alpha_monotone(cpr, rpr, a1, a2):
    lo, hi = sorted((a1, a2))
    s = _strength(cpr, rpr)
    if classify(s, AlphaCut(hi)) is not Verdict.DROPPED:
        assert classify(s, AlphaCut(lo)) is not Verdict.DROPPED


# --- refine_model ---

def test_identical_grades_keep_the_chain():
    course = make_course(["A", "B", "C"], [("A", "B"), ("B", "C")])
    matrix = make_matrix(course, [(g, g, g) for g in range(6, 18)])
    model = refine_model(course, matrix, T, HALF)
    assert all(r.verdict is Verdict.KEPT for r in model.verdicts)
    assert model.final_links == course.initial_links
    assert model.diagnostics == ()


def test_constant_positive_shift_reverses_the_link():
    course = make_course(["A", "B"], [("A", "B")])
    matrix = make_matrix(course, [(5, 10), (8, 13), (10, 15)])
    model = refine_model(course, matrix, T, HALF)
    assert model.verdicts[0].verdict is Verdict.REVERSED
    assert model.final_links == (PrerequisiteLink("B", "A"),)


def test_huge_shift_drops_the_link():
    course = make_course(["A", "B"], [("A", "B")])
    matrix = make_matrix(course, [(2, 17), (1, 16)])
    model = refine_model(course, matrix, T, HALF)
    assert model.verdicts[0].verdict is Verdict.DROPPED
    assert model.final_links == ()


def test_no_usable_learners_keeps_link_with_diagnostic():
    course = make_course(["A", "B"], [("A", "B")])
    matrix = make_matrix(course, [(None, 12), (7, None)])
    model = refine_model(course, matrix, T, HALF)
    assert model.verdicts[0].verdict is Verdict.INSUFFICIENT_DATA
    assert model.final_links == (LINK,)
    assert any("A -> B" in note and "both grades" in note
               for note in model.diagnostics)


def test_small_cohort_gets_a_low_support_note():
    course = make_course(["A", "B"], [("A", "B")])
    matrix = make_matrix(course, [(10, 10), (11, 11), (12, 12)])
    model = refine_model(course, matrix, T, HALF)
    assert model.verdicts[0].verdict is Verdict.KEPT
    assert any("only 3 usable" in note for note in model.diagnostics)


def test_thresholds_beyond_scale_get_a_note():
    course = make_course(["A", "B"], [("A", "B")], scale=10.0)
    matrix = make_matrix(course, [(5, 5)] * 12)
    model = refine_model(course, matrix, validate_thresholds(-5, 5, 12), HALF)
    assert any("exceed the grade scale" in note for note in model.diagnostics)


def test_course_matrix_mismatch_on_wrong_course_id():
    course = make_course(["A", "B"], [("A", "B")])
    matrix = GradeMatrix("other", ("s00",), ((10.0, 10.0),))
    with pytest.raises(CourseMatrixMismatch):
        refine_model(course, matrix, T, HALF)


def test_course_matrix_mismatch_on_wrong_width():
    course = make_course(["A", "B"], [("A", "B")])
    matrix = GradeMatrix(course.id, ("s00",), ((10.0, 10.0, 10.0),))
    with pytest.raises(CourseMatrixMismatch):
        compute_link_strengths(course, matrix, T)


# --- cycle repair ---

def test_cycle_forming_reversal_is_revoked():
    rng = random.Random(7)
    course, matrix, doomed = reversal_cycle_instance(rng)
    model = refine_model(course, matrix, T, HALF)
    by_link = {r.link: r for r in model.verdicts}
    assert by_link[doomed].verdict is Verdict.DROPPED
    # the raw classification wanted a reversal; repair demoted it
    assert classify(by_link[doomed].strength, HALF) is Verdict.REVERSED
    assert any(f"reversal of {doomed} revoked" in note
               for note in model.diagnostics)
    graph = ConceptGraph(course.concept_ids(),
                         [(l.source, l.target) for l in model.final_links])
    assert find_cycle(graph) is None
    assert doomed not in model.final_links
    assert doomed.flipped not in model.final_links


def test_lexicographically_first_reversal_is_revoked_first():
    # A->B and B->C both want reversal, A->C holds; flipping all three
    # closes the cycle A->C->B->A, and revoking (A, B) alone breaks it
    course = make_course(["A", "B", "C"], [("A", "B"), ("B", "C"), ("A", "C")])
    rows = [(0, 5, 10)] * 3 + [(10, 10, 10)] * 2
    matrix = make_matrix(course, rows)
    model = refine_model(course, matrix, T, validate_alpha(0.4))
    by_link = {r.link: r.verdict for r in model.verdicts}
    assert by_link[PrerequisiteLink("A", "B")] is Verdict.DROPPED
    assert by_link[PrerequisiteLink("B", "C")] is Verdict.REVERSED
    assert by_link[PrerequisiteLink("A", "C")] is Verdict.KEPT
    assert model.final_links == (PrerequisiteLink("A", "C"),
                                 PrerequisiteLink("C", "B"))
    assert sum("revoked" in note for note in model.diagnostics) == 1


def test_independent_cycles_each_lose_one_reversal():
    course = make_course(
        ["A1", "B1", "C1", "A2", "B2", "C2"],
        [("A1", "B1"), ("B1", "C1"), ("A1", "C1"),
         ("A2", "B2"), ("B2", "C2"), ("A2", "C2")])
    rows = [(b, b + 2.5, b + 5.0, b, b + 2.5, b + 5.0)
            for b in (3.0, 6.0, 9.0)]
    matrix = make_matrix(course, rows)
    model = refine_model(course, matrix, T, HALF)
    revoked = [note for note in model.diagnostics if "revoked" in note]
    assert len(revoked) == 2
    assert "A1 -> C1" in revoked[0]
    assert "A2 -> C2" in revoked[1]
    graph = ConceptGraph(course.concept_ids(),
                         [(l.source, l.target) for l in model.final_links])
    assert find_cycle(graph) is None


# --- sweeps ---

def test_sweep_shares_strengths_and_matches_single_runs(java_course, java_matrix):
    models = sweep_alpha(java_course, java_matrix, T, [0.2, 0.5])
    assert models[0] == refine_model(java_course, java_matrix, T, validate_alpha(0.2))
    assert models[1] == refine_model(java_course, java_matrix, T, HALF)
    for a, b in zip(models[0].verdicts, models[1].verdicts):
        assert a.strength == b.strength


def test_sweep_rejects_empty_and_descending_lists(java_course, java_matrix):
    with pytest.raises(InvalidAlphaSweep):
        sweep_alpha(java_course, java_matrix, T, [])
    with pytest.raises(InvalidAlphaSweep):
        sweep_alpha(java_course, java_matrix, T, [0.5, 0.2])


def test_sweep_validates_each_alpha(java_course, java_matrix):
    with pytest.raises(AlphaOutOfRange):
        sweep_alpha(java_course, java_matrix, T, [0.5, 1.5])


def test_alpha_zero_never_drops_supported_links(java_course, java_matrix):
    model = refine_model(java_course, java_matrix, T, validate_alpha(0.0))
    assert all(r.verdict in (Verdict.KEPT, Verdict.REVERSED)
               for r in model.verdicts)


def test_alpha_one_drops_everything_imperfect(java_course, java_matrix):
    model = refine_model(java_course, java_matrix, T, validate_alpha(1.0))
    for r in model.verdicts:
        if r.verdict not in (Verdict.DROPPED, Verdict.INSUFFICIENT_DATA):
            assert r.strength.cpr == 1.0 or r.strength.rpr == 1.0


def test_fixture_final_edges_shrink_as_alpha_rises(java_course, java_matrix):
    lenient, strict = sweep_alpha(java_course, java_matrix, T, [0.2, 0.5])
    assert set(strict.final_links) <= set(lenient.final_links)
    assert len(strict.final_links) < len(lenient.final_links)


# --- instance-level properties ---

def test_strengths_match_oracle_on_random_instances(java_course, java_matrix):
    rng = random.Random(42)
    for _ in range(40):
        course, matrix = random_instance(rng)
        strengths = compute_link_strengths(course, matrix, T)
        index = course.concept_index()
        for s in strengths:
            cpr, rpr, support = oracle_strengths(
                matrix.column(index[s.link.source]),
                matrix.column(index[s.link.target]),
                T.s1, T.s2, T.s3)
            assert s.cpr == pytest.approx(cpr, abs=1e-12)
            assert s.rpr == pytest.approx(rpr, abs=1e-12)
            assert s.support_count == support
            alpha = rng.choice([0.0, 0.2, 0.5, 0.8, 1.0])
            assert classify(s, validate_alpha(alpha)).value == \
                oracle_classify(s.cpr, s.rpr, s.support_count, alpha)


def test_random_instances_always_end_acyclic():
    rng = random.Random(99)
    for _ in range(30):
        course, matrix = random_instance(rng)
        model = refine_model(course, matrix, T, HALF)
        graph = ConceptGraph(course.concept_ids(),
                             [(l.source, l.target) for l in model.final_links])
        assert find_cycle(graph) is None


def test_refinement_is_deterministic():
    rng = random.Random(5)
    course, matrix = random_instance(rng)
    first = refine_model(course, matrix, T, HALF)
    second = refine_model(course, matrix, T, HALF)
    assert first == second
    assert export_model_json(first) == export_model_json(second)


_grade = st.integers(min_value=0, max_value=15)


@given(st.lists(st.tuples(_grade, _grade), min_size=1, max_size=6),
       st.integers(min_value=0, max_value=5))
def test_shift_invariance_on_integer_grades(rows, shift):
    course = make_course(["A", "B"], [("A", "B")])
    base = make_matrix(course, [(float(a), float(b)) for a, b in rows])
    moved = make_matrix(course, [(float(a + shift), float(b + shift))
                                 for a, b in rows])
    assert compute_link_strengths(course, base, T) == \
        compute_link_strengths(course, moved, T)


@given(st.lists(st.tuples(_grade, _grade), min_size=2, max_size=6),
       st.randoms(use_true_random=False))
def test_learner_permutation_leaves_strengths_unchanged(rows, rng):
    course = make_course(["A", "B"], [("A", "B")])
    shuffled = rows[:]
    rng.shuffle(shuffled)
    original = compute_link_strengths(
        course, make_matrix(course, [(float(a), float(b)) for a, b in rows]), T)[0]
    permuted = compute_link_strengths(
        course, make_matrix(course, [(float(a), float(b)) for a, b in shuffled]), T)[0]
    assert permuted.cpr == pytest.approx(original.cpr, abs=1e-12)
    assert permuted.rpr == pytest.approx(original.rpr, abs=1e-12)
    assert permuted.support_count == original.support_count
