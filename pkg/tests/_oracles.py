"""Independent brute-force oracles used only by the tests.

These deliberately take different routes from the library: cycle
enumeration instead of BFS, plain vertex-order color enumeration instead
of saturation-ordered backtracking, ratio tests instead of map
construction.  They are slow and only run at oracle scale.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def brute_girth(n: int, edges: set[tuple[int, int]]) -> int | float:
    """Shortest cycle by exhaustive simple-path extension from each least
    vertex, closing back to the start."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    best = math.inf

    def extend(start: int, path: list[int], seen: set[int]):
        nonlocal best
        if len(path) >= best:
            return
        for w in sorted(adj[path[-1]]):
            if w == start and len(path) >= 3:
                best = min(best, len(path))
            elif w > start and w not in seen:
                seen.add(w)
                path.append(w)
                extend(start, path, seen)
                path.pop()
                seen.remove(w)

    for s in range(n):
        extend(s, [s], {s})
    return best


def brute_is_colorable(n: int, edges: set[tuple[int, int]], k: int) -> bool:
    """Colorings enumerated in plain vertex order, no symmetry breaking."""
    if n == 0:
        return True
    if k <= 0:
        return False
    adj = [[] for _ in range(n)]
    for u, v in edges:
        if v < u:
            u, v = v, u
        adj[v].append(u)  # only earlier neighbors matter in order

    colors = [0] * n

    def place(i: int) -> bool:
        if i == n:
            return True
        for c in range(k):
            if all(colors[j] != c for j in adj[i]):
                colors[i] = c
                if place(i + 1):
                    return True
        return False

    return place(0)


def brute_chromatic(n: int, edges: set[tuple[int, int]]) -> int:
    k = 0
    while not brute_is_colorable(n, edges, k):
        k += 1
    return k


def brute_coloring_search(n: int, k: int, copy_indices) -> tuple[int, ...] | None:
    """Full enumeration of all k**n colorings; first one avoiding every
    monochromatic copy, in lexicographic order."""
    for assignment in itertools.product(range(k), repeat=n):
        if all(len({assignment[i] for i in copy}) > 1 for copy in copy_indices):
            return assignment
    return None


def brute_copies(ground, elements) -> set[tuple[Fraction, ...]]:
    """Images of the ground set inside elements, recognized by equality of
    normalized difference ratios rather than by constructing maps."""
    pts = list(ground.points)
    span = pts[-1] - pts[0]
    shape = tuple((t - pts[0]) / span for t in pts)
    out = set()
    for subset in itertools.combinations(sorted(elements), len(pts)):
        sub_span = subset[-1] - subset[0]
        if sub_span == 0:
            continue
        if tuple((x - subset[0]) / sub_span for x in subset) == shape:
            out.add(tuple(subset))
    return out


def all_graphs(n: int):
    """Every labeled graph on n vertices, as (n, edge set)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield n, {pairs[i] for i in range(len(pairs)) if (mask >> i) & 1}
