"""Deterministic serializations of a refined model: DOT and JSON.

The DOT output sticks to a small Graphviz subset (``digraph``, node
``label``, edge ``style``/``color``) so any stock renderer can draw the
counterpart of the paper-style model figures. The JSON document is the
wire format shared by the CLI, the HTTP service and the tuning UI; key
order is fixed and a serialize -> parse -> serialize round trip is
byte-identical.

Model JSON layout::

    {
      "course_id": str,
      "parameters": {"s1": num, "s2": num, "s3": num, "alpha": num},
      "verdicts": [{"source", "target", "cpr", "rpr", "support", "verdict"}, ...],
      "final_links": [{"source", "target"}, ...],
      "diagnostics": [str, ...]
    }

verdicts follow the course's initial link order; final_links are sorted
lexicographically by (source, target).
"""

from __future__ import annotations

import json

from .errors import MalformedDocument
from .ingestion import Course, PrerequisiteLink
from .membership import validate_thresholds
from .miner import (
    FinalDomainModel,
    LinkReport,
    LinkStrength,
    Verdict,
    validate_alpha,
)

__all__ = ["export_dot", "export_model_json", "parse_model_json"]


def _num(value: float):
    return int(value) if value == int(value) else value


def export_model_json(model: FinalDomainModel) -> str:
    doc = {
        "course_id": model.course_id,
        "parameters": {
            "s1": _num(model.thresholds.s1),
            "s2": _num(model.thresholds.s2),
            "s3": _num(model.thresholds.s3),
            "alpha": _num(model.alpha_cut.alpha),
        },
        "verdicts": [
            {
                "source": r.link.source,
                "target": r.link.target,
                "cpr": r.strength.cpr,
                "rpr": r.strength.rpr,
                "support": r.strength.support_count,
                "verdict": r.verdict.value,
            }
            for r in model.verdicts
        ],
        "final_links": [
            {"source": l.source, "target": l.target} for l in model.final_links
        ],
        "diagnostics": list(model.diagnostics),
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def parse_model_json(text: str) -> FinalDomainModel:
    """Inverse of export_model_json; raises MalformedDocument on schema errors."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from exc
    try:
        params = doc["parameters"]
        thresholds = validate_thresholds(params["s1"], params["s2"], params["s3"])
        cut = validate_alpha(params["alpha"])
        reports = []
        for entry in doc["verdicts"]:
            link = PrerequisiteLink(entry["source"], entry["target"])
            strength = LinkStrength(
                link, float(entry["cpr"]), float(entry["rpr"]), int(entry["support"]))
            reports.append(LinkReport(strength, Verdict(entry["verdict"])))
        final = [PrerequisiteLink(e["source"], e["target"]) for e in doc["final_links"]]
        return FinalDomainModel(
            course_id=doc["course_id"],
            thresholds=thresholds,
            alpha_cut=cut,
            verdicts=tuple(reports),
            final_links=tuple(final),
            diagnostics=tuple(str(d) for d in doc["diagnostics"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"model document does not match schema: {exc}") from exc


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(model: FinalDomainModel, course: Course,
               include_dropped: bool = False) -> str:
    """Render the final model as a Graphviz digraph.

    Kept edges are plain, reversed edges (drawn in their new direction)
    are bold red, and with ``include_dropped`` the dropped links appear as
    dashed gray ghosts in their original direction. Nodes carry concept
    names as labels. Output is deterministic: nodes and edges are emitted
    in lexicographic order.
    """
    names = course.concept_names()
    flipped = {
        r.link.flipped
        for r in model.verdicts
        if r.verdict is Verdict.REVERSED
    }
    lines = ["digraph domain_model {"]
    for cid in sorted(names):
        lines.append(f"  {_quote(cid)} [label={_quote(names[cid])}];")
    for link in sorted(model.final_links):
        attrs = ' [style=bold, color="crimson"]' if link in flipped else ""
        lines.append(f"  {_quote(link.source)} -> {_quote(link.target)}{attrs};")
    if include_dropped:
        dropped = sorted(r.link for r in model.verdicts
                         if r.verdict is Verdict.DROPPED)
        for link in dropped:
            lines.append(
                f"  {_quote(link.source)} -> {_quote(link.target)}"
                ' [style=dashed, color="gray"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
