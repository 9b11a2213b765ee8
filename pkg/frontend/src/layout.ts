/**
 * Layered drawing positions for a refined model. Levels mirror the
 * service's layering rule (longest incoming path, lexicographic within a
 * level) so the picture agrees with the exported graph ordering without
 * asking the server.
 */

import type { Link } from "./types.js";

export const NODE_WIDTH = 150;
export const NODE_HEIGHT = 44;
export const COLUMN_GAP = 40;
export const ROW_GAP = 70;
export const MARGIN = 24;

export interface NodePosition {
  x: number;
  y: number;
}

export interface Layout {
  levels: string[][];
  /** box centers keyed by node id */
  positions: Map<string, NodePosition>;
  width: number;
  height: number;
}

export function longestPathLevels(
  nodes: readonly string[],
  edges: readonly Link[],
): string[][] {
  const indegree = new Map<string, number>();
  const successors = new Map<string, string[]>();
  for (const node of nodes) {
    indegree.set(node, 0);
    successors.set(node, []);
  }
  for (const edge of edges) {
    if (!indegree.has(edge.source) || !indegree.has(edge.target)) {
      throw new Error(`edge ${edge.source} -> ${edge.target} references an unknown node`);
    }
    successors.get(edge.source)!.push(edge.target);
    indegree.set(edge.target, indegree.get(edge.target)! + 1);
  }

  const level = new Map<string, number>();
  for (const node of nodes) level.set(node, 0);
  const ready = nodes.filter((node) => indegree.get(node) === 0).sort();
  let placed = 0;
  while (ready.length > 0) {
    const node = ready.shift()!;
    placed += 1;
    for (const next of successors.get(node)!) {
      level.set(next, Math.max(level.get(next)!, level.get(node)! + 1));
      indegree.set(next, indegree.get(next)! - 1);
      if (indegree.get(next) === 0) ready.push(next);
    }
    ready.sort();
  }
  if (placed < nodes.length) throw new Error("graph contains a cycle");

  const depth = Math.max(-1, ...level.values());
  const groups: string[][] = Array.from({ length: depth + 1 }, () => []);
  for (const node of nodes) groups[level.get(node)!]!.push(node);
  for (const group of groups) group.sort();
  return groups;
}

export function layoutLevels(levels: string[][]): Layout {
  const span = NODE_WIDTH + COLUMN_GAP;
  const widest = Math.max(1, ...levels.map((row) => row.length));
  const width =
    levels.length === 0 ? 2 * MARGIN : 2 * MARGIN + widest * span - COLUMN_GAP;
  const height =
    levels.length === 0
      ? 2 * MARGIN
      : 2 * MARGIN + levels.length * (NODE_HEIGHT + ROW_GAP) - ROW_GAP;

  const positions = new Map<string, NodePosition>();
  levels.forEach((row, levelIndex) => {
    const rowWidth = row.length * span - COLUMN_GAP;
    const left = MARGIN + (width - 2 * MARGIN - rowWidth) / 2;
    row.forEach((node, column) => {
      positions.set(node, {
        x: left + column * span + NODE_WIDTH / 2,
        y: MARGIN + levelIndex * (NODE_HEIGHT + ROW_GAP) + NODE_HEIGHT / 2,
      });
    });
  });
  return { levels, positions, width, height };
}
