"""Exact graph analyses for geometric families: intersection graphs,
girth, colorability, chromatic number, and expected-graph comparison.

Coloring searches are budgeted by node expansions and are deterministic:
the same graph and budget always explore the same tree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .budget import Budget, as_budget
from .errors import BudgetExhausted, SceneFormatError


class GeoGraph:
    """A simple undirected graph whose vertices carry labels referring to
    their source geometric objects."""

    def __init__(self, labels: Sequence, edges: Iterable[tuple[int, int]]):
        self.labels = tuple(labels)
        n = len(self.labels)
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            seen.add((min(u, v), max(u, v)))
        self.edges = frozenset(seen)
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self.adj = tuple(frozenset(s) for s in adj)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        return isinstance(other, GeoGraph) and self.n == other.n and self.edges == other.edges

    def __repr__(self) -> str:
        return f"GeoGraph(n={self.n}, m={self.m})"


def cycle_graph(n: int, labels: Sequence | None = None) -> GeoGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return GeoGraph(labels or range(n), [(i, (i + 1) % n) for i in range(n)])


def intersection_graph(family) -> GeoGraph:
    """Exact intersection graph of a geometric family.

    The family supplies its own pairwise predicate through
    ``intersection_edges()`` and vertex labels through ``labels()``;
    vertex order is the family order.
    """
    return GeoGraph(family.labels(), family.intersection_edges())


# ---------------------------------------------------------------------------
# girth


def girth(graph: GeoGraph) -> int | float:
    """Length of a shortest cycle, math.inf for forests.

    Per-vertex BFS: every non-tree edge (u, w) seen from a root yields a
    closed walk of length dist(u) + dist(w) + 1 through that root, which
    never undercuts a shortest cycle, and is tight for some root on one.
    """
    best: int | float = math.inf
    adj = graph.adj
    for root in range(graph.n):
        if best == 3:
            break
        dist = {root: 0}
        parent = {root: -1}
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                du = dist[u]
                if 2 * du >= best:
                    continue
                for w in adj[u]:
                    if w not in dist:
                        dist[w] = du + 1
                        parent[w] = u
                        nxt.append(w)
                    elif parent[u] != w and parent[w] != u:
                        cand = du + dist[w] + 1
                        if cand < best:
                            best = cand
            frontier = nxt
    return best


# ---------------------------------------------------------------------------
# coloring


@dataclass
class ColoringCertificate:
    """Outcome of a k-colorability search.

    status is "colorable" with a checked proper assignment, "refuted"
    after an exhaustive backtracking run, or "inconclusive" when the node
    budget ran out first.
    """

    colors: int
    status: str
    assignment: tuple[int, ...] | None
    nodes: int

    @property
    def ok(self) -> bool:
        return self.status != "inconclusive"


def _check_proper(graph: GeoGraph, assignment: Sequence[int]) -> bool:
    return all(assignment[u] != assignment[v] for u, v in graph.edges)


def is_k_colorable(graph: GeoGraph, k: int, budget: Budget | int | None = None) -> ColoringCertificate:
    """Proper k-coloring or exhaustive refutation, by backtracking with
    saturation-degree vertex ordering and color-symmetry breaking (each
    vertex may use at most one color beyond those already introduced)."""
    budget = as_budget(budget, label=f"{k}-coloring")
    n = graph.n
    if n == 0:
        return ColoringCertificate(k, "colorable", (), 0)
    if k <= 0:
        return ColoringCertificate(k, "refuted", None, 0)
    adj = graph.adj
    colors = [-1] * n
    counts = [[0] * k for _ in range(n)]  # counts[w][c]: colored neighbors of w using c
    sat = [0] * n                         # distinct colors among colored neighbors
    nodes = 0

    def select() -> int:
        best_v, best_key = -1, (-1, -1, 1)
        for v in range(n):
            if colors[v] == -1:
                key = (sat[v], len(adj[v]), -v)
                if key > best_key:
                    best_key, best_v = key, v
        return best_v

    def assign(v: int, c: int) -> None:
        colors[v] = c
        for w in adj[v]:
            cw = counts[w]
            if cw[c] == 0:
                sat[w] += 1
            cw[c] += 1

    def unassign(v: int, c: int) -> None:
        colors[v] = -1
        for w in adj[v]:
            cw = counts[w]
            cw[c] -= 1
            if cw[c] == 0:
                sat[w] -= 1

    # frames: [vertex, color currently assigned (-1 if none), colors introduced above]
    stack: list[list[int]] = [[select(), -1, 0]]
    while stack:
        frame = stack[-1]
        v, cur, intro = frame
        if cur != -1:
            unassign(v, cur)
        cap = min(k - 1, intro)
        c = cur + 1
        while c <= cap and counts[v][c] > 0:
            c += 1
        if c > cap:
            stack.pop()
            continue
        nodes += 1
        try:
            budget.spend()
        except BudgetExhausted:
            return ColoringCertificate(k, "inconclusive", None, nodes)
        assign(v, c)
        frame[1] = c
        if len(stack) == n:
            assignment = tuple(colors)
            assert _check_proper(graph, assignment)
            return ColoringCertificate(k, "colorable", assignment, nodes)
        stack.append([select(), -1, max(intro, c + 1)])
    return ColoringCertificate(k, "refuted", None, nodes)


@dataclass
class ChromaticResult:
    """Exact chromatic number with its two certificates: an optimal proper
    coloring and the exhaustive refutation one color below (when any)."""

    value: int | None
    lower: int
    upper: int | None
    coloring: ColoringCertificate | None
    refutation: ColoringCertificate | None
    status: str  # "exact" or "inconclusive"


def chromatic_number(graph: GeoGraph, budget: Budget | int | None = None) -> ChromaticResult:
    """Exact chromatic number, refutation-first: colorability at k is
    decided only after every smaller color count has been refuted."""
    budget = as_budget(budget, label="chromatic")
    if graph.n == 0:
        empty = ColoringCertificate(0, "colorable", (), 0)
        return ChromaticResult(0, 0, 0, empty, None, "exact")
    refutation = None
    k = 1
    while True:
        cert = is_k_colorable(graph, k, budget)
        if cert.status == "colorable":
            return ChromaticResult(k, k, k, cert, refutation, "exact")
        if cert.status == "inconclusive":
            return ChromaticResult(None, k, None, None, refutation, "inconclusive")
        refutation = cert
        k += 1


# ---------------------------------------------------------------------------
# expected-graph comparison


def graph_equals_expected(
    graph: GeoGraph, expected: GeoGraph, bijection: Sequence[int] | dict
) -> tuple[bool, tuple[str, tuple[int, int]] | None]:
    """Edge-set equality under a vertex bijection graph -> expected.

    Returns (True, None) on exact correspondence, else (False, witness):
    witness names one "missing" edge (in expected, absent from graph) or
    one "spurious" edge (in graph, absent from expected), in sorted order.
    """
    if graph.n != expected.n:
        raise ValueError("vertex counts differ")
    if isinstance(bijection, dict):
        mapping = [bijection[i] for i in range(graph.n)]
    else:
        mapping = list(bijection)
    if sorted(mapping) != list(range(graph.n)):
        raise ValueError("bijection is not a permutation of the vertices")
    mapped = {(min(mapping[u], mapping[v]), max(mapping[u], mapping[v])) for u, v in graph.edges}
    spurious = sorted(mapped - expected.edges)
    missing = sorted(expected.edges - mapped)
    if not spurious and not missing:
        return True, None
    if spurious and (not missing or spurious[0] <= missing[0]):
        return False, ("spurious", spurious[0])
    return False, ("missing", missing[0])


# ---------------------------------------------------------------------------
# DIMACS export / import


def to_dimacs(graph: GeoGraph) -> str:
    """DIMACS edge format, 1-indexed, vertices in family order."""
    lines = [f"p edge {graph.n} {graph.m}"]
    for u, v in sorted(graph.edges):
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> GeoGraph:
    n = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "edge":
                raise SceneFormatError(f"bad problem line {lineno}: {raw!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            if len(parts) != 3:
                raise SceneFormatError(f"bad edge line {lineno}: {raw!r}")
            edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
        else:
            raise SceneFormatError(f"unknown line {lineno}: {raw!r}")
    if n is None:
        raise SceneFormatError("missing 'p edge' header")
    return GeoGraph(range(n), edges)
