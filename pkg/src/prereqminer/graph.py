"""Directed-graph plumbing: cycle detection and longest-path layering.

Nodes are plain strings (concept ids). Both operations are deterministic:
traversal always follows lexicographic node order, so the same graph
yields the same witness cycle and the same level assignment every run.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GraphCyclic

__all__ = ["ConceptGraph", "find_cycle", "topological_levels"]


@dataclass(frozen=True)
class ConceptGraph:
    """A directed graph over concept ids.

    Endpoints must be known nodes, self-loops are rejected, and duplicate
    edges are rejected. Construction errors are programming errors
    (ValueError), not user-input errors; user input is validated upstream.
    """

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __init__(self, nodes, edges):
        object.__setattr__(self, "nodes", tuple(nodes))
        object.__setattr__(self, "edges", tuple((s, t) for s, t in edges))
        known = set(self.nodes)
        if len(known) != len(self.nodes):
            raise ValueError("duplicate node ids")
        seen = set()
        for s, t in self.edges:
            if s not in known or t not in known:
                raise ValueError(f"edge ({s}, {t}) references unknown node")
            if s == t:
                raise ValueError(f"self-loop on {s}")
            if (s, t) in seen:
                raise ValueError(f"duplicate edge ({s}, {t})")
            seen.add((s, t))

    def successors(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {n: [] for n in self.nodes}
        for s, t in self.edges:
            adj[s].append(t)
        for targets in adj.values():
            targets.sort()
        return adj


def find_cycle(g: ConceptGraph) -> list[str] | None:
    """Return a witness cycle as a node list with first == last, or None.

    Iterative DFS from each node in sorted order with sorted adjacency,
    so the witness is deterministic for identical input.
    """
    adj = g.successors()
    done: set[str] = set()
    for root in sorted(g.nodes):
        if root in done:
            continue
        path = [root]
        on_path = {root}
        # each stack frame mirrors path: iterator over remaining successors
        iters = [iter(adj[root])]
        while iters:
            try:
                nxt = next(iters[-1])
            except StopIteration:
                iters.pop()
                finished = path.pop()
                on_path.discard(finished)
                done.add(finished)
                continue
            if nxt in on_path:
                start = path.index(nxt)
                return path[start:] + [nxt]
            if nxt in done:
                continue
            path.append(nxt)
            on_path.add(nxt)
            iters.append(iter(adj[nxt]))
    return None


def topological_levels(g: ConceptGraph) -> list[list[str]]:
    """Group nodes by length of their longest incoming path.

    Level 0 holds the sources; a node's level is 1 + max over its
    predecessors. Nodes within a level are sorted lexicographically, and
    concatenating the levels yields a topological order. Raises GraphCyclic
    when the graph has a cycle.
    """
    cycle = find_cycle(g)
    if cycle is not None:
        raise GraphCyclic(
            "graph contains a cycle: " + " -> ".join(cycle), detail=cycle
        )
    adj = g.successors()
    indegree = {n: 0 for n in g.nodes}
    for _, t in g.edges:
        indegree[t] += 1
    level = {n: 0 for n in g.nodes}
    ready = sorted(n for n in g.nodes if indegree[n] == 0)
    while ready:
        node = ready.pop(0)
        for nxt in adj[node]:
            level[nxt] = max(level[nxt], level[node] + 1)
            indegree[nxt] -= 1
            if indegree[nxt] == 0:
                ready.append(nxt)
        ready.sort()
    depth = max(level.values(), default=-1)
    groups: list[list[str]] = [[] for _ in range(depth + 1)]
    for node in g.nodes:
        groups[level[node]].append(node)
    for group in groups:
        group.sort()
    return groups
