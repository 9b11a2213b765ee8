/**
 * Pure view construction. The returned markup is a function of the model
 * response and the course document alone: no DOM reads, no clocks, no
 * randomness. Identical inputs must produce identical strings, and every
 * number shown is echoed verbatim from the server.
 */

import {
  layoutLevels,
  longestPathLevels,
  NODE_HEIGHT,
  NODE_WIDTH,
  type NodePosition,
} from "./layout.js";
import { isReferenceConfig } from "./session.js";
import type { CourseDocument, ModelDocument, SchemaMismatch, Verdict } from "./types.js";

export type EdgeKind = "kept" | "reversed" | "dropped" | "insufficient";

const KIND_OF: Record<Verdict, EdgeKind> = {
  kept: "kept",
  reversed: "reversed",
  dropped: "dropped",
  insufficient_data: "insufficient",
};

const EDGE_COLOR: Record<EdgeKind, string> = {
  kept: "#2f6f4f",
  reversed: "#c0392b",
  dropped: "#9a9a9a",
  insufficient: "#8a8a65",
};

const EDGE_ATTRS: Record<EdgeKind, string> = {
  kept: 'stroke-width="1.6"',
  reversed: 'stroke-width="2.6"',
  dropped: 'stroke-width="1.4" stroke-dasharray="7 5" opacity="0.55"',
  insufficient: 'stroke-width="1.6" stroke-dasharray="2 3"',
};

export interface VerdictCounts {
  kept: number;
  reversed: number;
  dropped: number;
  insufficient: number;
}

export function verdictCounts(model: ModelDocument): VerdictCounts {
  const counts: VerdictCounts = { kept: 0, reversed: 0, dropped: 0, insufficient: 0 };
  for (const v of model.verdicts) counts[KIND_OF[v.verdict]] += 1;
  return counts;
}

/** Count edges of one kind in a rendered view string. */
export function countRenderedEdges(view: string, kind: EdgeKind): number {
  return view.split(`class="edge ${kind}"`).length - 1;
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fmt(n: number): string {
  return String(Math.round(n * 100) / 100);
}

/** Trim a center-to-center segment back to the node box borders. */
function trimmedSegment(from: NodePosition, to: NodePosition) {
  const dx = to.x - from.x;
  const dy = to.y - from.y;
  const length = Math.hypot(dx, dy);
  const tx = dx === 0 ? Infinity : NODE_WIDTH / 2 / Math.abs(dx);
  const ty = dy === 0 ? Infinity : NODE_HEIGHT / 2 / Math.abs(dy);
  const exit = Math.min(tx, ty);
  // cap below one half so overlapping boxes cannot invert the segment, and
  // leave a little room so the arrowhead stays outside the target box
  const tFrom = Math.min(0.45, exit);
  const tTo = Math.min(0.45, exit + 4 / Math.max(length, 1));
  return {
    x1: from.x + dx * tFrom,
    y1: from.y + dy * tFrom,
    x2: to.x - dx * tTo,
    y2: to.y - dy * tTo,
  };
}

function arrowMarkers(): string {
  const marker = (kind: EdgeKind) =>
    `<marker id="arrow-${kind}" viewBox="0 0 10 10" refX="9" refY="5" ` +
    `markerWidth="7" markerHeight="7" orient="auto-start-reverse">` +
    `<path d="M0,0 L10,5 L0,10 z" fill="${EDGE_COLOR[kind]}"/></marker>`;
  return `<defs>${(Object.keys(EDGE_COLOR) as EdgeKind[]).map(marker).join("")}</defs>`;
}

export function renderModelView(model: ModelDocument, course: CourseDocument): string {
  const names = new Map(course.concepts.map((c) => [c.id, c.name]));
  const nodes = course.concepts.map((c) => c.id);
  const layout = layoutLevels(longestPathLevels(nodes, model.final_links));

  const edges: string[] = [];
  for (const v of model.verdicts) {
    // reversed links are drawn in their corrected direction
    const fromId = v.verdict === "reversed" ? v.target : v.source;
    const toId = v.verdict === "reversed" ? v.source : v.target;
    const from = layout.positions.get(fromId);
    const to = layout.positions.get(toId);
    if (from === undefined || to === undefined) continue;
    const kind = KIND_OF[v.verdict];
    const seg = trimmedSegment(from, to);
    const tooltip =
      `${v.source} -> ${v.target} (${v.verdict})\n` +
      `cpr=${v.cpr} rpr=${v.rpr} support=${v.support}`;
    edges.push(
      `<g class="edge ${kind}" data-from="${escapeXml(fromId)}" data-to="${escapeXml(toId)}">` +
        `<title>${escapeXml(tooltip)}</title>` +
        `<line x1="${fmt(seg.x1)}" y1="${fmt(seg.y1)}" x2="${fmt(seg.x2)}" y2="${fmt(seg.y2)}" ` +
        `stroke="${EDGE_COLOR[kind]}" ${EDGE_ATTRS[kind]} marker-end="url(#arrow-${kind})"/>` +
        `</g>`,
    );
  }

  const nodeMarkup = layout.levels.flat().map((id) => {
    const p = layout.positions.get(id)!;
    const label = names.get(id) ?? id;
    return (
      `<g class="node" data-id="${escapeXml(id)}">` +
      `<title>${escapeXml(id)}</title>` +
      `<rect x="${fmt(p.x - NODE_WIDTH / 2)}" y="${fmt(p.y - NODE_HEIGHT / 2)}" ` +
      `width="${NODE_WIDTH}" height="${NODE_HEIGHT}" rx="8" ` +
      `fill="#ffffff" stroke="#55606e"/>` +
      `<text x="${fmt(p.x)}" y="${fmt(p.y)}" text-anchor="middle" ` +
      `dominant-baseline="central" font-size="12">${escapeXml(label)}</text>` +
      `</g>`
    );
  });

  const counts = verdictCounts(model);
  const counters =
    `<span class="counter kept">kept ${counts.kept}</span>` +
    `<span class="counter reversed">reversed ${counts.reversed}</span>` +
    `<span class="counter dropped">dropped ${counts.dropped}</span>` +
    (counts.insufficient > 0
      ? `<span class="counter insufficient">insufficient ${counts.insufficient}</span>`
      : "");
  const badge = isReferenceConfig(model.parameters)
    ? `<span class="badge reference">reference configuration</span>`
    : "";

  const diagnostics =
    model.diagnostics.length === 0
      ? ""
      : `<ul class="diagnostics">` +
        model.diagnostics.map((d) => `<li>${escapeXml(d)}</li>`).join("") +
        `</ul>`;

  return (
    `<div class="model-view">` +
    `<div class="model-summary">${counters}${badge}</div>` +
    `<svg xmlns="http://www.w3.org/2000/svg" width="${layout.width}" height="${layout.height}" ` +
    `viewBox="0 0 ${layout.width} ${layout.height}" role="img">` +
    `${arrowMarkers()}${edges.join("")}${nodeMarkup.join("")}</svg>` +
    diagnostics +
    `</div>`
  );
}

/** Diagnostic panel for a response that failed shape validation. */
export function renderSchemaProblem(problem: SchemaMismatch): string {
  const raw = JSON.stringify(problem.raw, null, 2) ?? "undefined";
  return (
    `<div class="schema-problem">` +
    `<p>${escapeXml(problem.message)}</p>` +
    `<pre>${escapeXml(raw)}</pre>` +
    `</div>`
  );
}
