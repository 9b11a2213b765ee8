import json
import random

import pytest

from prereqminer.fixtures import (
    java_course_text,
    java_grades_text,
    load_java_course,
    load_java_grades,
)
from prereqminer.ingestion import Concept, Course, GradeMatrix, PrerequisiteLink


@pytest.fixture(scope="session")
def java_course():
    return load_java_course()


@pytest.fixture(scope="session")
def java_matrix():
    return load_java_grades()


@pytest.fixture(scope="session")
def java_course_doc():
    return java_course_text()


@pytest.fixture(scope="session")
def java_grades_doc():
    return java_grades_text()


def make_course(concept_ids, links, course_id="c1", scale=20.0):
    """Small in-memory course; names are derived from the ids."""
    concepts = tuple(Concept(cid, cid.upper()) for cid in concept_ids)
    return Course(course_id, "Test course", scale, concepts,
                  tuple(PrerequisiteLink(s, t) for s, t in links))


def make_matrix(course, rows, learner_prefix="s"):
    """Matrix from a list of per-learner grade tuples, aligned to the course."""
    learners = tuple(f"{learner_prefix}{i:02d}" for i in range(len(rows)))
    return GradeMatrix(course.id, learners, tuple(tuple(row) for row in rows))


def course_doc(**overrides):
    """A valid 3-concept course document, with overridable fields."""
    doc = {
        "id": "c1",
        "title": "Test course",
        "grade_scale_max": 20,
        "concepts": [
            {"id": "A", "name": "Alpha"},
            {"id": "B", "name": "Beta"},
            {"id": "C", "name": "Gamma"},
        ],
        "links": [
            {"source": "A", "target": "B"},
            {"source": "B", "target": "C"},
        ],
    }
    doc.update(overrides)
    return json.dumps(doc)


def random_instance(rng: random.Random, max_concepts=5, max_learners=6,
                    absent_rate=0.1):
    """Random small course + integer-grade matrix, links forming a DAG."""
    n = rng.randint(2, max_concepts)
    ids = [f"c{i}" for i in range(n)]
    order = ids[:]
    rng.shuffle(order)
    links = [(order[i], order[j])
             for i in range(n) for j in range(i + 1, n)
             if rng.random() < 0.5]
    if not links:
        links = [(order[0], order[1])]
    course = make_course(ids, links, course_id="rand")
    rows = []
    for _ in range(rng.randint(0, max_learners)):
        rows.append(tuple(
            None if rng.random() < absent_rate else float(rng.randint(0, 20))
            for _ in ids))
    return course, make_matrix(course, rows)


def reversal_cycle_instance(rng: random.Random):
    """Instance engineered so a reversal must be revoked to stay acyclic.

    Triangle X->Y, Y->Z, X->Z where every learner scores Y at X+2.5 and
    Z at X+5: the two short links tie at cpr = rpr = 0.5 (kept), the long
    one hits rpr = 1 (reversed). Flipping Z->X closes a cycle, so that
    reversal gets revoked. Node names are randomized so the lexicographic
    revocation order is exercised from different positions.
    """
    names = [f"n{rng.randint(0, 99):02d}{c}" for c in "abc"]
    rng.shuffle(names)
    x, y, z = names
    course = make_course(sorted(names), [(x, y), (y, z), (x, z)],
                         course_id="adv")
    rows = []
    for _ in range(rng.randint(2, 6)):
        base = float(rng.randint(0, 15))
        rows.append((base, base + 2.5, base + 5.0))
    aligned = [tuple(row[(x, y, z).index(cid)] for cid in sorted(names))
               for row in rows]
    return course, make_matrix(course, aligned), PrerequisiteLink(x, z)
