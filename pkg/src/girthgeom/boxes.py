"""Grounded square boxes: axis-aligned boxes with square horizontal
cross-section touching the x = y plane along one vertical edge, lying in
the half-space x >= y.

Two such boxes intersect iff their trace distance is at most the smaller
side and their vertical extents overlap, which is what makes the cycle
bases and the certificate-driven recursion work.  Every construction here
re-verifies its own structural claims exactly before returning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import graphs
from .budget import Budget, as_budget
from .errors import ConstructionError
from .gallai import (
    GallaiCertificate,
    GroundSet,
    HomotheticCopy,
    ProviderPolicy,
    certificate_to_doc,
)
from .geometry import AxisMap3, Box3, Homothety1D, Interval, Rat, format_rat, rat
from .structure import StructureReport


@dataclass(frozen=True)
class GroundedSquareBox:
    """A closed box [t, t+s] x [t-s, t] x [zlo, zhi] with side s > 0.

    The minimum x equals the maximum y, so the box touches the plane
    x = y exactly in the vertical edge above (t, t); every interior point
    has x > y.  The trace is that contact coordinate t.
    """

    box: Box3

    def __post_init__(self):
        b = self.box
        if b.xr.lo != b.yr.hi:
            raise ValueError("box does not touch the x = y plane in an edge")
        if b.xr.length != b.yr.length or b.xr.length == 0:
            raise ValueError("horizontal cross-section must be a non-degenerate square")
        if b.zr.length == 0:
            raise ValueError("box must have non-empty interior")

    @classmethod
    def of(cls, trace, side, zlo, zhi) -> "GroundedSquareBox":
        t, s = rat(trace), rat(side)
        return cls(Box3.from_bounds(t, t + s, t - s, t, zlo, zhi))

    @property
    def trace(self) -> Rat:
        return self.box.xr.lo

    @property
    def side(self) -> Rat:
        return self.box.xr.length

    def translated_diag(self, delta: Rat) -> "GroundedSquareBox":
        """Translate along the x = y diagonal; preserves groundedness."""
        b = self.box
        return GroundedSquareBox(
            Box3(
                Interval(b.xr.lo + delta, b.xr.hi + delta),
                Interval(b.yr.lo + delta, b.yr.hi + delta),
                b.zr,
            )
        )


def ground_trace(b: GroundedSquareBox) -> Rat:
    """The x-coordinate of the box's contact edge with the x = y plane."""
    return b.trace


def box_to_doc(b: GroundedSquareBox) -> dict:
    bb = b.box
    return {
        "x": [format_rat(bb.xr.lo), format_rat(bb.xr.hi)],
        "y": [format_rat(bb.yr.lo), format_rat(bb.yr.hi)],
        "z": [format_rat(bb.zr.lo), format_rat(bb.zr.hi)],
    }


def box_from_doc(doc: dict) -> GroundedSquareBox:
    return GroundedSquareBox(
        Box3.from_bounds(doc["x"][0], doc["x"][1], doc["y"][0], doc["y"][1], doc["z"][0], doc["z"][1])
    )


# ---------------------------------------------------------------------------
# families


@dataclass
class BoxFamily:
    """A finite collection of grounded square boxes with its claimed graph
    properties.  Claims are never trusted: girth and chromatic number are
    recomputed exactly whenever they matter."""

    boxes: tuple[GroundedSquareBox, ...]
    claimed_girth: int | None  # None: the construction claims no finite cycle
    claimed_chromatic: int
    provenance: dict = field(default_factory=dict)

    def traces(self) -> list[Rat]:
        return [b.trace for b in self.boxes]

    def labels(self) -> list[dict]:
        return [box_to_doc(b) for b in self.boxes]

    def intersection_edges(self) -> list[tuple[int, int]]:
        return box_intersection_edges(self.boxes)

    def blocks(self) -> list[list[int]]:
        """Rigid sub-collections for trace perturbation: the ground boxes
        as one block and each embedded copy as one block; otherwise every
        box is its own block."""
        prov = self.provenance
        if prov.get("kind") == "recursion":
            return [list(prov["blocks"]["ground"])] + [list(c) for c in prov["blocks"]["copies"]]
        return [[i] for i in range(len(self.boxes))]


def box_intersection_edges(boxes) -> list[tuple[int, int]]:
    """All intersecting index pairs, decided exactly.

    Coordinates are moved onto a common integer grid first (a uniform
    scaling, which preserves every intersection), so the quadratic sweep
    runs on machine integers.
    """
    rows = _integer_rows(boxes)
    edges = []
    for i in range(len(rows)):
        xl, xh, yl, yh, zl, zh = rows[i]
        for j in range(i + 1, len(rows)):
            xl2, xh2, yl2, yh2, zl2, zh2 = rows[j]
            if xl <= xh2 and xl2 <= xh and yl <= yh2 and yl2 <= yh and zl <= zh2 and zl2 <= zh:
                edges.append((i, j))
    return edges


def _integer_rows(boxes) -> list[tuple[int, int, int, int, int, int]]:
    denoms = set()
    for b in boxes:
        bb = b.box
        for iv in (bb.xr, bb.yr, bb.zr):
            denoms.add(iv.lo.denominator)
            denoms.add(iv.hi.denominator)
    scale = math.lcm(*denoms) if denoms else 1
    rows = []
    for b in boxes:
        bb = b.box
        rows.append(
            tuple(
                int(v * scale)
                for v in (bb.xr.lo, bb.xr.hi, bb.yr.lo, bb.yr.hi, bb.zr.lo, bb.zr.hi)
            )
        )
    return rows


# ---------------------------------------------------------------------------
# base families


def single_box_family() -> BoxFamily:
    box = GroundedSquareBox.of(0, 1, 0, 1)
    return BoxFamily((box,), None, 1, {"kind": "base-single"})


def meeting_pair_family() -> BoxFamily:
    """Two overlapping grounded square boxes: the smallest base whose
    intersection graph needs two colors."""
    a = GroundedSquareBox(Box3.from_bounds(0, 2, -2, 0, 0, 1))
    b = GroundedSquareBox(Box3.from_bounds(1, 3, -1, 1, 0, 1))
    fam = BoxFamily((a, b), None, 2, {"kind": "base-pair"})
    if fam.intersection_edges() != [(0, 1)]:
        raise ConstructionError("pair base is not a single edge")
    return fam


def odd_cycle_boxes(n: int) -> BoxFamily:
    """Realize the n-cycle (n odd, >= 5) as grounded square boxes.

    Vertices 0..n-2 sit on a path of traces 0, 10, ..., 10(n-2): interior
    boxes are small so only consecutive traces are within reach, and the
    wide end boxes are kept apart by distance.  Vertex n-1 closes the
    cycle from the midpoint trace; its vertical extent meets only the two
    end boxes, which kills every chord through it.  The resulting edge set
    is checked against the abstract cycle before returning.
    """
    if n < 5 or n % 2 == 0:
        raise ValueError("need an odd cycle length of at least 5")
    far = 5 * (n - 2)
    end_side = max(15, far)
    bridge_side = max(20, far)
    boxes = []
    for i in range(n - 1):
        if i == 0 or i == n - 2:
            boxes.append(GroundedSquareBox.of(10 * i, end_side, 0, 20))
        else:
            boxes.append(GroundedSquareBox.of(10 * i, 10, 0, 10))
    boxes.append(GroundedSquareBox.of(far, bridge_side, 15, 20))
    fam = BoxFamily(tuple(boxes), n, 3, {"kind": "base-odd-cycle", "n": n})
    got = graphs.intersection_graph(fam)
    same, witness = graphs.graph_equals_expected(got, graphs.cycle_graph(n), list(range(n)))
    if not same:
        raise ConstructionError(f"odd cycle realization failed for n={n}", witness)
    return fam


# ---------------------------------------------------------------------------
# recursion machinery


def make_ground_boxes(values, eps) -> list[GroundedSquareBox]:
    """One thin box [x, x+eps] x [x-eps, x] x [0, 1] per value; requires
    0 < eps strictly below the least gap so the boxes stay disjoint."""
    values = sorted(rat(v) for v in values)
    eps = rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    gaps = [b - a for a, b in zip(values, values[1:])]
    if gaps and eps >= min(gaps):
        raise ValueError(f"eps {eps} is not below the least value gap {min(gaps)}")
    return [GroundedSquareBox.of(x, eps, 0, 1) for x in values]


@dataclass(frozen=True)
class CopyEmbedding:
    """How one copy is realized: its 1-D map on traces, its private slice
    of [0, 1] in z, and the combined axis-wise box map."""

    copy: HomotheticCopy
    z_interval: Interval
    axis_map: AxisMap3


def plan_embeddings(parent: BoxFamily, cert: GallaiCertificate) -> list[CopyEmbedding]:
    """Disjoint z-slots for the copies: [0, 1] cut into equal closed
    pieces, each shrunk at both ends so distinct slots cannot touch; the
    parent's full vertical extent is mapped onto each slot."""
    count = len(cert.copies)
    zlo = min(b.box.zr.lo for b in parent.boxes)
    zhi = max(b.box.zr.hi for b in parent.boxes)
    margin = Fraction(1, 4 * count)
    out = []
    for j, copy in enumerate(cert.copies):
        slot = Interval(Fraction(j, count) + margin, Fraction(j + 1, count) - margin)
        vertical = Homothety1D(slot.length / (zhi - zlo), slot.lo - slot.length / (zhi - zlo) * zlo)
        out.append(CopyEmbedding(copy, slot, AxisMap3.of(copy.map, vertical)))
    return out


def embed_copy_boxes(parent: BoxFamily, emb: CopyEmbedding) -> list[GroundedSquareBox]:
    """The image of the parent family under one embedding, box for box."""
    mapped = tuple(emb.copy.map.apply(t) for t in sorted(set(parent.traces())))
    if mapped != emb.copy.image:
        raise ConstructionError(
            "copy domain mismatch: parent traces do not map onto the copy image",
            {"mapped": mapped, "image": emb.copy.image},
        )
    return [GroundedSquareBox(emb.axis_map.apply_box(b.box)) for b in parent.boxes]


def normalize_traces(fam: BoxFamily) -> BoxFamily:
    """Make all traces pairwise distinct without changing the graph.

    Whole blocks (the ground boxes, each embedded copy) are slid rigidly
    along the x = y diagonal by distinct offsets below half the least
    critical quantity, so every strict overlap, gap, and grazing contact
    survives.  The graph is re-swept afterwards and must match exactly.
    """
    traces = fam.traces()
    if len(set(traces)) == len(traces):
        return fam
    blocks = fam.blocks()
    block_of = {}
    for bi, members in enumerate(blocks):
        for i in members:
            block_of[i] = bi
    before = fam.intersection_edges()

    critical = []
    for a, b in ((x, y) for i, x in enumerate(traces) for y in traces[i + 1:]):
        if a != b:
            critical.append(abs(a - b))
    n = len(fam.boxes)
    for i in range(n):
        for j in range(i + 1, n):
            if block_of[i] == block_of[j]:
                continue
            bi, bj = fam.boxes[i].box, fam.boxes[j].box
            for ri, rj in ((bi.xr, bj.xr), (bi.yr, bj.yr)):
                for q in (ri.hi - rj.lo, rj.hi - ri.lo):
                    if q != 0:
                        critical.append(abs(q))
    if not critical:
        raise ConstructionError("cannot normalize traces: no safe perturbation size exists")
    quantum = min(critical) / (2 * (len(blocks) + 1))

    used: set[Rat] = set()
    shifted: list[GroundedSquareBox | None] = [None] * n
    for bi, members in enumerate(blocks):
        own = [fam.boxes[i].trace for i in members]
        for j in range(len(blocks) + 1):
            delta = j * quantum
            if all(t + delta not in used for t in own):
                break
        else:
            raise ConstructionError("trace normalization ran out of offsets")
        used.update(t + delta for t in own)
        for i in members:
            shifted[i] = fam.boxes[i].translated_diag(delta)

    out = BoxFamily(
        tuple(shifted),
        fam.claimed_girth,
        fam.claimed_chromatic,
        {**fam.provenance, "traces_normalized": True},
    )
    new_traces = out.traces()
    if len(set(new_traces)) != len(new_traces):
        raise ConstructionError("trace normalization left duplicate traces")
    if out.intersection_edges() != before:
        raise ConstructionError("trace normalization changed the intersection graph")
    return out


def recursion_step_boxes(
    parent: BoxFamily,
    colors: int,
    girth: int,
    provider,
    verify_parent: bool = True,
    budget: Budget | int | None = None,
) -> BoxFamily:
    """One chromatic lift: thin ground boxes at the certificate elements
    plus one scaled copy of the parent per certificate copy, each in its
    own z-slot.

    The parent must actually have girth >= girth and (when verification is
    on) no proper coloring with colors-1 colors.  All structural claims of
    the construction are asserted exactly before returning; any violation
    is a fatal construction bug reported with the offending pair.
    """
    parent_graph = graphs.intersection_graph(parent)
    parent_girth = graphs.girth(parent_graph)
    if parent_girth < girth:
        raise ConstructionError(
            f"parent girth {parent_girth} is below the target {girth}"
        )
    if verify_parent and colors > 1:
        budget = as_budget(budget, label="parent chromatic verification")
        refutation = graphs.is_k_colorable(parent_graph, colors - 1, budget)
        if refutation.status == "colorable":
            raise ConstructionError(
                f"parent admits a {colors - 1}-coloring; it does not need {colors} colors"
            )
        if refutation.status == "inconclusive":
            raise ConstructionError(
                f"could not verify the parent needs {colors} colors within budget"
            )

    parent = normalize_traces(parent)
    ground_set = GroundSet.of(parent.traces())
    cert = provider(ground_set, colors, girth)

    elements = cert.elements
    if len(elements) >= 2:
        eps = min(b - a for a, b in zip(elements, elements[1:])) / 3
    else:
        eps = Fraction(1, 3)
    ground = make_ground_boxes(elements, eps)

    boxes: list[GroundedSquareBox] = list(ground)
    copy_blocks: list[list[int]] = []
    for emb in plan_embeddings(parent, cert):
        images = embed_copy_boxes(parent, emb)
        start = len(boxes)
        boxes.extend(images)
        copy_blocks.append(list(range(start, start + len(images))))

    lift_certified = cert.flags.all_true()
    out = BoxFamily(
        tuple(boxes),
        girth,
        colors + 1 if lift_certified else colors,
        {
            "kind": "recursion",
            "geometry": "boxes",
            "girth_param": girth,
            "colors_before": colors,
            "blocks": {"ground": list(range(len(ground))), "copies": copy_blocks},
            "parent_edges": [list(e) for e in sorted(parent_graph.edges)],
            "parent_size": len(parent.boxes),
            "certificate": certificate_to_doc(cert),
            "chromatic_lift_certified": lift_certified,
            "parent": parent.provenance,
        },
    )
    report = check_box_structure(out)
    if not report.ok:
        fail = report.first_failure()
        raise ConstructionError(f"structural assertion failed: {fail.name}", fail.detail)

    out_girth = graphs.girth(graphs.intersection_graph(out))
    floor_bound = min(parent_girth, 3 * math.ceil(girth / 3))
    if out_girth < floor_bound:
        raise ConstructionError(
            f"girth lift violated: got {out_girth}, expected at least {floor_bound}"
        )
    return out


def check_box_structure(fam: BoxFamily) -> StructureReport:
    """Exact structural sweep of a family against its construction model.

    Recursion outputs must satisfy: ground boxes pairwise disjoint; every
    copy box meets exactly one ground box, namely the one at its own
    trace; no box from one copy meets a box from another; no box meets
    two ground boxes; and each copy's internal graph matches the parent's.
    Base families must match their expected graph exactly.
    """
    report = StructureReport()
    prov = fam.provenance
    kind = prov.get("kind")
    if kind == "recursion":
        edges = fam.intersection_edges()
        _check_recursion_structure(report, fam.traces(), edges, prov)
    elif kind == "base-odd-cycle":
        got = graphs.intersection_graph(fam)
        same, witness = graphs.graph_equals_expected(
            got, graphs.cycle_graph(prov["n"]), list(range(prov["n"]))
        )
        report.add("graph-equals-cycle", same, "" if same else str(witness))
    elif kind == "base-pair":
        report.add("graph-is-single-edge", fam.intersection_edges() == [(0, 1)])
    elif kind == "base-single":
        report.add("graph-is-single-vertex", fam.intersection_edges() == [])
    elif kind == "ground-only":
        edges = fam.intersection_edges()
        report.add(
            "ground-pairwise-disjoint",
            not edges,
            "" if not edges else f"intersecting pair {edges[0]}",
        )
    else:
        report.add("structure-model", True, "no construction model; invariants only")
    return report


def _check_recursion_structure(report: StructureReport, traces, edges, prov) -> None:
    ground = set(prov["blocks"]["ground"])
    copy_blocks = [list(c) for c in prov["blocks"]["copies"]]
    owner = {}
    for ci, members in enumerate(copy_blocks):
        for i in members:
            owner[i] = ci

    ground_ground = [e for e in edges if e[0] in ground and e[1] in ground]
    report.add(
        "ground-pairwise-disjoint",
        not ground_ground,
        "" if not ground_ground else f"intersecting ground pair {ground_ground[0]}",
    )

    cross: list[tuple[int, int]] = []
    ground_meets: dict[int, list[int]] = {i: [] for i in owner}
    intra: dict[int, list[tuple[int, int]]] = {ci: [] for ci in range(len(copy_blocks))}
    for u, v in edges:
        if u in ground and v in ground:
            continue
        if u in ground or v in ground:
            g, c = (u, v) if u in ground else (v, u)
            ground_meets[c].append(g)
        else:
            if owner[u] == owner[v]:
                intra[owner[u]].append((u, v))
            else:
                cross.append((u, v))

    bad_count = next((i for i in owner if len(ground_meets[i]) != 1), None)
    report.add(
        "copy-meets-exactly-one-ground",
        bad_count is None,
        "" if bad_count is None else f"box {bad_count} meets {len(ground_meets[bad_count])} ground boxes",
    )
    if bad_count is None:
        mismatched = next(
            (i for i in owner if traces[ground_meets[i][0]] != traces[i]), None
        )
        report.add(
            "copy-meets-own-ground",
            mismatched is None,
            ""
            if mismatched is None
            else f"box {mismatched} meets ground box at trace {traces[ground_meets[mismatched][0]]}",
        )
    report.add(
        "no-cross-copy-intersections",
        not cross,
        "" if not cross else f"intersecting cross-copy pair {cross[0]}",
    )

    parent_edges = {tuple(e) for e in prov["parent_edges"]}
    bad_block = None
    for ci, members in enumerate(copy_blocks):
        pos = {v: p for p, v in enumerate(members)}
        got = {tuple(sorted((pos[u], pos[v]))) for u, v in intra[ci]}
        if got != parent_edges:
            bad_block = (ci, sorted(got ^ parent_edges)[:1])
            break
    report.add(
        "copy-graph-matches-parent",
        bad_block is None,
        "" if bad_block is None else f"copy {bad_block[0]} differs at {bad_block[1]}",
    )


# ---------------------------------------------------------------------------
# top-level construction


def build_box_family(girth: int, colors: int, policy: ProviderPolicy | None = None) -> BoxFamily:
    """A grounded square box family with girth >= girth whose graph needs
    at least ``colors`` colors (certified when the certificates verify).

    Small color counts come from explicit bases: one box, a meeting pair,
    or an odd cycle of length max(5, girth).  Larger counts iterate the
    recursion; with the pigeonhole policy the iteration starts from the
    pair base instead, which is how the nine-box cycle family arises.
    """
    if girth < 3 or colors < 1:
        raise ValueError("need girth >= 3 and colors >= 1")
    policy = policy or ProviderPolicy()
    if colors == 1:
        return single_box_family()
    if colors == 2:
        return meeting_pair_family()
    if policy.name == "pigeonhole":
        fam = meeting_pair_family()
        start = 2
    else:
        n = max(5, girth)
        if n % 2 == 0:
            n += 1
        fam = odd_cycle_boxes(n)
        start = 3
    for k in range(start, colors):
        provider = policy.provider()
        fam = recursion_step_boxes(fam, k, girth, provider, budget=policy.chroma_budget)
    return fam
