#!/usr/bin/env python3
"""Regenerate the bundled Java-course fixture.

The grades are synthetic (the real cohort's table is not public). They are
constructed so the reference parameters (s1=-5, s2=5, s3=10, alpha=0.5)
produce all three verdict classes, and so lowering alpha to 0.2 strictly
enlarges the final edge set:

* most links: per-learner deltas in [-2, 2]  -> kept at both alphas
* objects-classes -> packages: deltas around -8 -> dropped at both alphas
* io-streams -> serialization: deltas around +5 -> reversed at both alphas
* objects-classes -> inner-classes: deltas split between 0 and +/-6
  -> kept at alpha=0.2 but dropped at alpha=0.5

Run from the repo root: python3 scripts/make_fixture.py
"""

import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from prereqminer.ingestion import (
    course_to_json,
    parse_course,
    parse_grades_csv,
    write_grades_csv,
)

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "prereqminer" / "data"

CONCEPTS = [
    ("elementary-java", "Elementary of Java"),
    ("objects-classes", "Objects and Classes"),
    ("packages", "Packages"),
    ("inner-classes", "Inner Classes"),
    ("io-streams", "Flux I/O"),
    ("exceptions", "Exceptions"),
    ("inheritance", "Inheritance"),
    ("serialization", "Serialization"),
    ("interfaces", "Interfaces"),
    ("polymorphism", "Polymorphism"),
    ("threads", "Threads"),
    ("collections", "Collections"),
]

LINKS = [
    ("elementary-java", "objects-classes"),
    ("objects-classes", "packages"),
    ("objects-classes", "inner-classes"),
    ("objects-classes", "exceptions"),
    ("objects-classes", "inheritance"),
    ("exceptions", "io-streams"),
    ("exceptions", "threads"),
    ("io-streams", "serialization"),
    ("inheritance", "interfaces"),
    ("inheritance", "polymorphism"),
    ("interfaces", "polymorphism"),
    ("interfaces", "collections"),
    ("polymorphism", "collections"),
]

# additive offset per concept on top of learner ability
BASE = {cid: 0 for cid, _ in CONCEPTS}
BASE["packages"] = -8        # dependent concept scored far lower -> dropped
BASE["serialization"] = 5    # dependent concept scored ~5 higher -> reversed

N_LEARNERS = 48


def course_json() -> str:
    import json

    doc = {
        "id": "java-101",
        "title": "Java programming language",
        "grade_scale_max": 20,
        "concepts": [{"id": cid, "name": name} for cid, name in CONCEPTS],
        "links": [{"source": s, "target": t} for s, t in LINKS],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def grades_csv(course) -> str:
    rng = random.Random(20120715)
    rows = []
    for i in range(N_LEARNERS):
        ability = rng.randint(9, 13)
        noise = {cid: rng.choice((-1, 0, 1)) for cid, _ in CONCEPTS}
        grades = {cid: ability + BASE[cid] + noise[cid] for cid, _ in CONCEPTS}
        # inner-classes: controlled delta vs objects-classes, cycling 0/+6/-6
        planned = (0, 6, -6)[i % 3]
        grades["inner-classes"] = grades["objects-classes"] + planned
        for cid, value in grades.items():
            if not 0 <= value <= 20:
                raise AssertionError(f"grade {value} for {cid} out of scale")
        rows.append((f"s{i + 1:02d}", grades))

    lines = ["learner," + ",".join(cid for cid, _ in CONCEPTS)]
    for learner, grades in rows:
        lines.append(learner + "," + ",".join(
            str(grades[cid]) for cid, _ in CONCEPTS))
    text = "\n".join(lines) + "\n"
    # normalize through the canonical writer so the file round-trips
    return write_grades_csv(parse_grades_csv(text, course), course)


def main():
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    course = parse_course(course_json())
    (DATA_DIR / "java_course.json").write_text(course_to_json(course), encoding="utf-8")
    (DATA_DIR / "java_grades.csv").write_text(grades_csv(course), encoding="utf-8")
    print(f"wrote fixture to {DATA_DIR}")


if __name__ == "__main__":
    main()
