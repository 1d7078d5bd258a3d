"""Coloring certificates over finite rational sets.

A certificate packages a ground set T, a finite set X, and the complete
list of scaled-and-shifted copies of T inside X, together with three
verified properties: every k-coloring of X leaves some copy monochromatic
(checked by exhaustive refutation search), no small collection of copies
chains into a cycle, and the copy list is complete.  Providers construct
candidate certificates; the verifier re-derives everything from scratch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .budget import Budget, as_budget
from .errors import BudgetExhausted, ProviderFailure, ProviderRefusal
from .geometry import Homothety1D, Rat, format_rat, rat


@dataclass(frozen=True)
class GroundSet:
    """A strictly increasing tuple of at least two rationals."""

    points: tuple[Rat, ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("ground set needs at least two points")
        if any(a >= b for a, b in zip(self.points, self.points[1:])):
            raise ValueError("ground set must be strictly increasing")

    @classmethod
    def of(cls, values) -> "GroundSet":
        return cls(tuple(sorted(rat(v) for v in values)))

    @property
    def size(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class HomotheticCopy:
    """An image of the ground set inside X, with the witnessing map."""

    map: Homothety1D
    image: tuple[Rat, ...]


@dataclass(frozen=True)
class CopyCycleWitness:
    """Distinct copies C_0..C_{j-1} and distinct elements x_0..x_{j-1}
    with x_i in C_i and in C_{i+1} (indices cyclic)."""

    copies: tuple[HomotheticCopy, ...]
    elements: tuple[Rat, ...]


def validate_cycle_witness(witness: CopyCycleWitness) -> None:
    j = len(witness.copies)
    if j < 2 or len(witness.elements) != j:
        raise ValueError("witness needs >= 2 copies and one element per copy pair")
    images = [set(c.image) for c in witness.copies]
    if len({c.image for c in witness.copies}) != j:
        raise ValueError("witness copies are not distinct")
    if len(set(witness.elements)) != j:
        raise ValueError("witness elements are not distinct")
    for i, x in enumerate(witness.elements):
        if x not in images[i] or x not in images[(i + 1) % j]:
            raise ValueError(f"element {x} not shared by copies {i} and {(i + 1) % j}")


@dataclass
class CertificateFlags:
    """Verification state; None means not yet decided (budget-gated)."""

    coloring_ok: bool | None = None
    sparsity_ok: bool | None = None
    copies_complete: bool | None = None
    note: str = ""

    def all_true(self) -> bool:
        return self.coloring_ok is True and self.sparsity_ok is True and self.copies_complete is True


@dataclass
class GallaiCertificate:
    ground: GroundSet
    elements: tuple[Rat, ...]
    copies: tuple[HomotheticCopy, ...]
    colors: int
    girth: int
    flags: CertificateFlags = field(default_factory=CertificateFlags)

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.elements, self.elements[1:])):
            raise ValueError("certificate elements must be strictly increasing")
        if self.colors < 1:
            raise ValueError("colors must be positive")
        if self.girth < 3:
            raise ValueError("girth parameter must be at least 3")


# ---------------------------------------------------------------------------
# normalization and copy enumeration


def normalize_ground_set(ground: GroundSet) -> tuple[tuple[int, ...], Homothety1D]:
    """Rescale a rational ground set onto integers with minimum 0 and
    difference gcd 1; the returned map sends those integers back exactly."""
    pts = ground.points
    base = pts[0]
    diffs = [p - base for p in pts]
    denom = math.lcm(*(d.denominator for d in diffs))
    raw = [int(d * denom) for d in diffs]
    g = math.gcd(*raw)
    ints = tuple(r // g for r in raw)
    return ints, Homothety1D(Fraction(g, denom), base)


def enumerate_copies(ground: GroundSet, elements: tuple[Rat, ...]) -> tuple[HomotheticCopy, ...]:
    """All images of the ground set under positive scale-and-shift maps
    that land inside ``elements``, in ascending image order.

    A map with positive scale sends min to min and max to max, so each
    candidate is determined by the images of the two extremes; interior
    points are then membership-tested.
    """
    pts = ground.points
    span = pts[-1] - pts[0]
    interior = pts[1:-1]
    universe = set(elements)
    out: list[HomotheticCopy] = []
    for i, a in enumerate(elements):
        for b in elements[i + 1:]:
            scale = (b - a) / span
            shift = a - scale * pts[0]
            mids = tuple(scale * t + shift for t in interior)
            if all(v in universe for v in mids):
                image = (a, *mids, b)
                out.append(HomotheticCopy(Homothety1D(scale, shift), image))
    return tuple(out)


# ---------------------------------------------------------------------------
# copy-cycle search

_COPY, _ELEM = 0, 1


def find_copy_cycle(copies, max_copies: int) -> CopyCycleWitness | None:
    """Exhaustively decide whether at most ``max_copies`` distinct copies
    chain into a cycle; return a shortest witness if so.

    A cycle through j copies is exactly a 2j-cycle of the bipartite
    incidence graph between copies and elements, so this is a shortest
    cycle scan over that graph.
    """
    if max_copies < 2:
        raise ValueError("a cycle involves at least two copies")
    copies = tuple(copies)
    elem_ids: dict[Rat, int] = {}
    for c in copies:
        for x in c.image:
            elem_ids.setdefault(x, len(elem_ids))
    # vertices: (kind, index); adjacency from incidences
    adj: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for ci, c in enumerate(copies):
        cv = (_COPY, ci)
        for x in c.image:
            ev = (_ELEM, elem_ids[x])
            adj.setdefault(cv, []).append(ev)
            adj.setdefault(ev, []).append(cv)
    for v in adj:
        adj[v].sort()

    best_len: float = math.inf
    best_cycle: list[tuple[int, int]] | None = None
    for ci in range(len(copies)):
        root = (_COPY, ci)
        if root not in adj:
            continue
        dist = {root: 0}
        parent: dict[tuple[int, int], tuple[int, int] | None] = {root: None}
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                if 2 * dist[u] >= best_len:
                    continue
                for w in adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif parent[u] != w and parent.get(w) != u:
                        cycle = _extract_cycle(u, w, parent)
                        if cycle is not None and len(cycle) < best_len:
                            best_len = len(cycle)
                            best_cycle = cycle
            frontier = nxt
        if best_len == 4:
            break
    if best_cycle is None or best_len > 2 * max_copies:
        return None
    # rotate so the cycle starts at a copy vertex, then read off the pairs
    start = next(i for i, v in enumerate(best_cycle) if v[0] == _COPY)
    ring = best_cycle[start:] + best_cycle[:start]
    ids_to_elem = {i: x for x, i in elem_ids.items()}
    wit_copies = tuple(copies[v[1]] for v in ring[0::2])
    wit_elems = tuple(ids_to_elem[v[1]] for v in ring[1::2])
    witness = CopyCycleWitness(wit_copies, wit_elems)
    validate_cycle_witness(witness)
    return witness


def _extract_cycle(u, w, parent) -> list | None:
    """Simple cycle through the non-tree edge (u, w): both tree paths up
    to their lowest common ancestor, closed by the edge."""
    path_u = [u]
    while parent[path_u[-1]] is not None:
        path_u.append(parent[path_u[-1]])
    index_u = {v: i for i, v in enumerate(path_u)}
    path_w = [w]
    while path_w[-1] not in index_u:
        nxt = parent[path_w[-1]]
        if nxt is None:
            return None
        path_w.append(nxt)
    lca = path_w[-1]
    cycle = path_u[: index_u[lca] + 1] + path_w[-2::-1]
    if len(cycle) < 3:
        return None
    return cycle


# ---------------------------------------------------------------------------
# coloring refutation


def find_avoiding_coloring(
    n: int, colors: int, copy_indices: list[tuple[int, ...]], budget: Budget
) -> tuple[int, ...] | None:
    """Search for a coloring of n points avoiding a monochromatic copy;
    None after exhausting the (symmetry-reduced) tree.

    Colors are tried in ascending order with a first-use canonical cap, so
    the first hit is the lexicographically least avoiding coloring; the
    least avoiding coloring is itself in canonical form, so the cap never
    skips it and exhaustion refutes all colorings.
    """
    by_last: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for idx in copy_indices:
        by_last[idx[-1]].append(idx[:-1])
    assigned = [-1] * n
    limit = budget.max_nodes - budget.used
    nodes = 0
    # frames: [color currently tried at this position, colors introduced above]
    stack: list[list[int]] = [[-1, 0]]
    try:
        while stack:
            pos = len(stack) - 1
            frame = stack[-1]
            cur, intro = frame
            forbidden = 0
            for prefix in by_last[pos]:
                c0 = assigned[prefix[0]]
                for j in prefix[1:]:
                    if assigned[j] != c0:
                        break
                else:
                    forbidden |= 1 << c0
            cap = min(colors - 1, intro)
            c = cur + 1
            while c <= cap and (forbidden >> c) & 1:
                c += 1
            if c > cap:
                assigned[pos] = -1
                stack.pop()
                continue
            nodes += 1
            if nodes > limit:
                raise BudgetExhausted(
                    "coloring search budget exhausted", budget.used + nodes, budget.max_nodes
                )
            frame[0] = c
            assigned[pos] = c
            if pos + 1 == n:
                return tuple(assigned)
            stack.append([-1, max(intro, c + 1)])
        return None
    finally:
        budget.used += nodes


# ---------------------------------------------------------------------------
# verification


@dataclass
class CertificateReport:
    coloring_ok: bool | None
    sparsity_ok: bool
    copies_complete: bool
    counterexample: tuple[int, ...] | None
    cycle: CopyCycleWitness | None
    nodes: int
    budget_exhausted: bool

    def all_ok(self) -> bool:
        return bool(self.coloring_ok) and self.sparsity_ok and self.copies_complete


def verify_certificate(cert: GallaiCertificate, budget: Budget | int | None = None) -> CertificateReport:
    """Re-derive all three certificate properties from scratch.

    The coloring property is decided by refutation search over the true
    (recomputed) copy list; a found avoiding coloring is returned as the
    counterexample.  Budget exhaustion leaves coloring_ok as None, which
    is reported distinctly from False.
    """
    budget = as_budget(budget, label="certificate verification")
    for copy in cert.copies:
        image = tuple(copy.map.apply(t) for t in cert.ground.points)
        if image != copy.image:
            raise ValueError(f"stored copy image does not match its map: {copy}")
        if not set(copy.image) <= set(cert.elements):
            raise ValueError(f"copy image escapes the certificate elements: {copy}")
    expected = enumerate_copies(cert.ground, cert.elements)
    copies_complete = {c.image for c in cert.copies} == {c.image for c in expected}

    max_cycle_copies = cert.girth // 3
    cycle = None
    if max_cycle_copies >= 2 and len(expected) >= 2:
        cycle = find_copy_cycle(expected, max_cycle_copies)
    sparsity_ok = cycle is None

    index = {x: i for i, x in enumerate(cert.elements)}
    copy_indices = [tuple(index[x] for x in c.image) for c in expected]
    coloring_ok: bool | None
    counterexample = None
    exhausted = False
    try:
        bad = find_avoiding_coloring(len(cert.elements), cert.colors, copy_indices, budget)
        coloring_ok = bad is None
        counterexample = bad
    except BudgetExhausted:
        coloring_ok = None
        exhausted = True
    return CertificateReport(
        coloring_ok=coloring_ok,
        sparsity_ok=sparsity_ok,
        copies_complete=copies_complete,
        counterexample=counterexample,
        cycle=cycle,
        nodes=budget.used,
        budget_exhausted=exhausted,
    )


# ---------------------------------------------------------------------------
# providers

# Least N such that every coloring of {1..N} with the given number of
# colors has a monochromatic arithmetic progression of the given length.
# Only entries the in-repo refutation search reproduces are listed;
# 2-term progressions reduce to the pigeonhole value colors + 1.
VDW_TABLE: dict[tuple[int, int], int] = {
    (2, 3): 9,
    (3, 3): 27,
}


def _certify(cert: GallaiCertificate, budget: Budget) -> CertificateReport:
    report = verify_certificate(cert, budget)
    cert.flags.coloring_ok = report.coloring_ok
    cert.flags.sparsity_ok = report.sparsity_ok
    cert.flags.copies_complete = report.copies_complete
    return report


def pigeonhole_certificate(ground: GroundSet, colors: int, girth: int) -> GallaiCertificate:
    """Degenerate base provider for two-point ground sets: X = {1..k+1}.

    Any two points form a copy of a two-point set, so some pair is always
    monochromatic.  Pairs of copies share at most one element, hence no
    2-cycles; but any three points chain into a 3-cycle of pairs, so the
    provider refuses once 3-cycles start to matter (girth >= 9).
    """
    if ground.size != 2:
        raise ProviderRefusal("pigeonhole provider needs a two-point ground set")
    if girth >= 9:
        raise ProviderRefusal(
            "pigeonhole provider refuses girth >= 9: any three points give a "
            "3-cycle of pair copies"
        )
    elements = tuple(Fraction(i) for i in range(1, colors + 2))
    copies = enumerate_copies(ground, elements)
    cert = GallaiCertificate(ground, elements, copies, colors, girth)
    report = _certify(cert, Budget(max_nodes=200_000, label="pigeonhole"))
    if not report.all_ok():
        raise ProviderFailure(f"pigeonhole certificate failed verification: {report}")
    return cert


def vdw_certificate(
    ground: GroundSet,
    colors: int,
    girth: int,
    length_hint: int | None = None,
    budget: Budget | int | None = None,
) -> GallaiCertificate:
    """Arithmetic-progression provider: X = {1..N} for an N long enough
    that a monochromatic progression covering the normalized ground set
    is unavoidable.

    N comes from the built-in table (or colors+1 for two-point sets)
    unless a ``length_hint`` is supplied.  The coloring property is
    verified within the budget; if the budget runs out the certificate is
    returned with the flag left undecided and a note, never silently.
    """
    if girth >= 9:
        raise ProviderRefusal(
            "dense progression sets contain short copy cycles; refusing girth >= 9"
        )
    ints, _ = normalize_ground_set(ground)
    terms = ints[-1] + 1
    if length_hint is not None:
        n_elems = length_hint
    elif terms == 2:
        n_elems = colors + 1
    elif (colors, terms) in VDW_TABLE:
        n_elems = VDW_TABLE[(colors, terms)]
    else:
        raise ProviderRefusal(
            f"no table entry for {colors} colors and {terms}-term progressions; "
            f"pass a length hint"
        )
    elements = tuple(Fraction(i) for i in range(1, n_elems + 1))
    copies = enumerate_copies(ground, elements)
    cert = GallaiCertificate(ground, elements, copies, colors, girth)
    budget = as_budget(budget, label="vdw verification")
    report = _certify(cert, budget)
    if not report.sparsity_ok:
        raise ProviderRefusal(
            "progression set contains a short copy cycle at this girth; "
            f"witness uses {len(report.cycle.copies)} copies"
        )
    if report.coloring_ok is False:
        raise ProviderFailure(
            f"set of {n_elems} elements admits an avoiding coloring: "
            f"{report.counterexample}"
        )
    if report.coloring_ok is None:
        cert.flags.note = "unverified-by-table: coloring search exceeded budget"
    return cert


def search_certificate(
    ground: GroundSet, colors: int, girth: int, budget: Budget | int | None = None
) -> GallaiCertificate:
    """Explicit search for a valid certificate over subsets of {1..N} for
    growing N, smallest sets first.

    Candidates violating the cycle condition are rejected before the
    coloring refutation runs.  Exhausting the budget raises; that is a
    statement about the budget, never about nonexistence.
    """
    from itertools import combinations

    if girth >= 9 and ground.size == 2:
        raise ProviderRefusal("two-point ground sets cannot reach girth >= 9")
    budget = as_budget(budget, label="certificate search")
    max_cycle_copies = girth // 3
    top = 0
    while True:
        top += 1
        for size in range(1, top + 1):
            for rest in combinations(range(1, top), size - 1):
                budget.spend()
                elements = tuple(Fraction(v) for v in rest + (top,))
                copies = enumerate_copies(ground, elements)
                if not copies:
                    continue
                if max_cycle_copies >= 2 and len(copies) >= 2:
                    if find_copy_cycle(copies, max_cycle_copies) is not None:
                        continue
                index = {x: i for i, x in enumerate(elements)}
                copy_indices = [tuple(index[x] for x in c.image) for c in copies]
                bad = find_avoiding_coloring(len(elements), colors, copy_indices, budget)
                if bad is None:
                    cert = GallaiCertificate(ground, elements, copies, colors, girth)
                    report = _certify(cert, Budget(max_nodes=budget.max_nodes, label="recheck"))
                    if not report.all_ok():
                        raise ProviderFailure(f"search produced an invalid certificate: {report}")
                    return cert


# ---------------------------------------------------------------------------
# provider selection


@dataclass
class ProviderPolicy:
    """How the recursive constructions acquire their certificates.

    name: "auto" picks pigeonhole for two-point ground sets (small girth)
    and falls back to explicit search; the other names force one provider.
    Budgets are node counts; the hint feeds the progression provider.
    """

    name: str = "auto"  # auto | pigeonhole | vdw | search
    vdw_length_hint: int | None = None
    certificate_budget: int = 2_000_000
    chroma_budget: int = 2_000_000

    def provider(self):
        def acquire(ground: GroundSet, colors: int, girth: int) -> GallaiCertificate:
            return make_certificate(self, ground, colors, girth)

        return acquire


def make_certificate(
    policy: ProviderPolicy, ground: GroundSet, colors: int, girth: int
) -> GallaiCertificate:
    name = policy.name
    if name == "auto":
        name = "pigeonhole" if ground.size == 2 and girth <= 8 else "search"
    if name == "pigeonhole":
        return pigeonhole_certificate(ground, colors, girth)
    if name == "vdw":
        return vdw_certificate(
            ground, colors, girth, policy.vdw_length_hint, Budget(policy.certificate_budget, "vdw")
        )
    if name == "search":
        return search_certificate(ground, colors, girth, Budget(policy.certificate_budget, "search"))
    raise ValueError(f"unknown provider name: {policy.name!r}")


# ---------------------------------------------------------------------------
# document form


def certificate_to_doc(cert: GallaiCertificate) -> dict:
    return {
        "kind": "gallai-certificate",
        "ground_set": [format_rat(t) for t in cert.ground.points],
        "elements": [format_rat(x) for x in cert.elements],
        "copies": [
            {
                "scale": format_rat(c.map.scale),
                "shift": format_rat(c.map.shift),
                "image": [format_rat(x) for x in c.image],
            }
            for c in cert.copies
        ],
        "colors": cert.colors,
        "girth": cert.girth,
        "flags": {
            "coloring_ok": cert.flags.coloring_ok,
            "sparsity_ok": cert.flags.sparsity_ok,
            "copies_complete": cert.flags.copies_complete,
            "note": cert.flags.note,
        },
    }


def certificate_from_doc(doc: dict) -> GallaiCertificate:
    if doc.get("kind") != "gallai-certificate":
        raise ValueError(f"not a certificate document: kind={doc.get('kind')!r}")
    ground = GroundSet(tuple(rat(v) for v in doc["ground_set"]))
    elements = tuple(rat(v) for v in doc["elements"])
    copies = tuple(
        HomotheticCopy(
            Homothety1D(rat(c["scale"]), rat(c["shift"])),
            tuple(rat(x) for x in c["image"]),
        )
        for c in doc["copies"]
    )
    flags_doc = doc.get("flags", {})
    flags = CertificateFlags(
        coloring_ok=flags_doc.get("coloring_ok"),
        sparsity_ok=flags_doc.get("sparsity_ok"),
        copies_complete=flags_doc.get("copies_complete"),
        note=flags_doc.get("note", ""),
    )
    return GallaiCertificate(ground, elements, copies, int(doc["colors"]), int(doc["girth"]), flags)
