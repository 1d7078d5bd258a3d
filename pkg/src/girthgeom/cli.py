"""Command-line front door: build families, re-verify stored scenes, and
manage coloring certificates.

Every claim in a report is backed by a recomputed certificate or flagged
inconclusive; reports and scenes contain no wall-clock data, so identical
inputs, seeds, and budgets produce byte-identical files.

Exit codes: 0 ok, 2 check or assertion failure, 3 budget exhausted,
4 provider refusal or failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from . import boxes as boxmod
from . import graphs
from . import lines as linemod
from . import scenes
from .budget import Budget
from .errors import (
    BudgetExhausted,
    ConstructionError,
    GirthGeomError,
    ProviderFailure,
    ProviderRefusal,
    SceneFormatError,
)
from .gallai import (
    GroundSet,
    ProviderPolicy,
    certificate_to_doc,
    pigeonhole_certificate,
    search_certificate,
    vdw_certificate,
    verify_certificate,
)
from .geometry import rat

EXIT_OK = 0
EXIT_CHECK_FAILED = 2
EXIT_BUDGET = 3
EXIT_REFUSED = 4

_BUDGET_NAMES = {"small": 20_000, "default": 2_000_000, "large": 100_000_000}


def parse_budget(text: str) -> int:
    """A node count, or one of the named sizes, scaled by the
    GIRTHGEOM_BUDGET_SCALE environment variable."""
    base = _BUDGET_NAMES.get(text)
    if base is None:
        try:
            base = int(text)
        except ValueError:
            raise SceneFormatError(f"not a budget: {text!r} (use a node count or {sorted(_BUDGET_NAMES)})")
    scale = float(os.environ.get("GIRTHGEOM_BUDGET_SCALE", "1"))
    return max(1, int(base * scale))


def _girth_value(g) -> int | str:
    return "infinity" if g == math.inf else int(g)


# ---------------------------------------------------------------------------
# shared report pieces


def _graph_report(graph, claimed_girth, claimed_chromatic, chroma_budget: int) -> tuple[dict, bool, bool]:
    """Recompute girth and chromatic facts; returns (doc, hard_failure,
    budget_flag)."""
    hard_fail = False
    budget_flag = False

    computed_girth = graphs.girth(graph)
    girth_ok = claimed_girth is None or computed_girth >= claimed_girth
    hard_fail |= not girth_ok

    chroma: dict = {"claimed_at_least": claimed_chromatic}
    refutation_nodes = 0
    if claimed_chromatic > 1:
        refutation = graphs.is_k_colorable(graph, claimed_chromatic - 1, Budget(chroma_budget, "claim refutation"))
        refutation_nodes = refutation.nodes
        if refutation.status == "refuted":
            chroma["refuted_below"] = True
        elif refutation.status == "colorable":
            chroma["refuted_below"] = False
            hard_fail = True
        else:
            chroma["refuted_below"] = None
            budget_flag = True
    else:
        chroma["refuted_below"] = True
    exact = graphs.chromatic_number(graph, Budget(chroma_budget, "exact chromatic"))
    chroma["exact"] = exact.value
    chroma["status"] = exact.status
    chroma["nodes"] = refutation_nodes + (exact.coloring.nodes if exact.coloring else 0)
    if exact.status == "inconclusive":
        budget_flag = True

    doc = {
        "graph": {"vertices": graph.n, "edges": graph.m},
        "girth": {
            "computed": _girth_value(computed_girth),
            "claimed_at_least": claimed_girth,
            "ok": girth_ok,
        },
        "chromatic": chroma,
    }
    return doc, hard_fail, budget_flag


def _structure_report(obj) -> tuple[list[dict], bool]:
    if isinstance(obj, boxmod.BoxFamily):
        report = boxmod.check_box_structure(obj)
    elif isinstance(obj, linemod.ShiftSystem):
        ok, diagnostic = linemod.verify_shift_system(obj)
        return [{"name": "shift-system-exact", "ok": ok, "detail": "" if ok else str(diagnostic)}], not ok
    else:
        report = linemod.check_line_structure(obj)
    return report.to_doc(), not report.ok


def _recursion_levels(provenance: dict) -> list[dict]:
    levels = []
    node = provenance
    while node.get("kind") == "recursion":
        cert = node["certificate"]
        levels.append(
            {
                "colors_before": node["colors_before"],
                "girth_param": node["girth_param"],
                "elements": len(cert["elements"]),
                "copies": len(cert["copies"]),
                "chromatic_lift_certified": node["chromatic_lift_certified"],
            }
        )
        node = node.get("parent", {})
    levels.append({"base": node.get("kind", "unknown")})
    levels.reverse()
    return levels


def _status(hard_fail: bool, budget_flag: bool, refused: bool = False) -> tuple[str, int]:
    if refused:
        return "refused", EXIT_REFUSED
    if hard_fail:
        return "check-failed", EXIT_CHECK_FAILED
    if budget_flag:
        return "budget-exhausted", EXIT_BUDGET
    return "ok", EXIT_OK


def _emit(report: dict, out_prefix: str | None, footer: list[str]) -> None:
    if out_prefix is not None:
        scenes.write_doc(f"{out_prefix}.report.json", report)
    for line in footer:
        print(line)
    print(f"status: {report['status']}")


# ---------------------------------------------------------------------------
# build


def cmd_build(args) -> int:
    policy = ProviderPolicy(
        name=args.provider,
        vdw_length_hint=args.vdw_hint,
        certificate_budget=parse_budget(args.budget),
        chroma_budget=parse_budget(args.chroma_budget),
    )
    if args.kind == "shift":
        if args.n is None:
            raise SceneFormatError("build shift needs --n")
        obj = linemod.build_shift_system(args.n, seed=args.seed)
        claimed_girth, claimed_chromatic = None, 1
        params = {"kind": "shift", "n": args.n, "seed": args.seed}
    else:
        if args.g is None or args.k is None:
            raise SceneFormatError(f"build {args.kind} needs --g and --k")
        build = boxmod.build_box_family if args.kind == "boxes" else linemod.build_line_family
        obj = build(args.g, args.k, policy)
        claimed_girth, claimed_chromatic = obj.claimed_girth, obj.claimed_chromatic
        params = {"kind": args.kind, "g": args.g, "k": args.k, "provider": args.provider, "seed": args.seed}

    graph = graphs.intersection_graph(obj)
    structure, structure_fail = _structure_report(obj)
    graph_doc, hard_fail, budget_flag = _graph_report(
        graph, claimed_girth, claimed_chromatic, parse_budget(args.chroma_budget)
    )
    if args.k is not None and claimed_chromatic < args.k:
        # an uncertified certificate kept the chromatic claim below the
        # requested target: inconclusive, not a verified build
        budget_flag = True
    if isinstance(obj, linemod.ShiftSystem):
        expected = linemod.double_shift_graph(len(obj.values))
        same, witness = graphs.graph_equals_expected(graph, expected, list(range(graph.n)))
        structure.append(
            {"name": "graph-equals-double-shift", "ok": same, "detail": "" if same else str(witness)}
        )
        structure_fail |= not same
    hard_fail |= structure_fail

    status, code = _status(hard_fail, budget_flag)
    out = args.out
    summary = [
        f"girthgeom build {args.kind}: {graph.n} objects, {graph.m} edges",
        f"girth {graph_doc['girth']['computed']}"
        + (f" (claimed at least {claimed_girth})" if claimed_girth else ""),
        f"chromatic exact={graph_doc['chromatic']['exact']} status={graph_doc['chromatic']['status']}",
        f"structure {'OK' if not structure_fail else 'FAILED'}",
    ]
    report = {
        "kind": "run-report",
        "command": "build",
        "parameters": {**params, "budget": args.budget, "chroma_budget": args.chroma_budget},
        "results": {
            "objects": graph.n,
            **graph_doc,
            "structure": structure,
            "levels": _recursion_levels(obj.provenance if not isinstance(obj, linemod.ShiftSystem) else {}),
        },
        "summary": summary,
        "status": status,
    }

    Path(out).parent.mkdir(parents=True, exist_ok=True)
    scenes.save_scene(f"{out}.scene.json", obj)
    Path(f"{out}.dimacs").write_text(graphs.to_dimacs(graph))
    scenes.write_doc(f"{out}.labels.json", {"labels": obj.labels()})
    footer = summary + [f"files: {out}.scene.json {out}.dimacs {out}.labels.json {out}.report.json"]
    _emit(report, out, footer)
    return code


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    obj = scenes.load_scene(args.scene)
    requested = set(args.checks.split(","))
    if "all" in requested:
        requested = {"geometry", "girth", "chroma"}
    unknown = requested - {"geometry", "girth", "chroma"}
    if unknown:
        raise SceneFormatError(f"unknown checks: {sorted(unknown)}")

    hard_fail = False
    budget_flag = False
    results: dict = {"objects": len(obj.labels())}
    graph = graphs.intersection_graph(obj)
    results["graph"] = {"vertices": graph.n, "edges": graph.m}

    if "geometry" in requested:
        structure, structure_fail = _structure_report(obj)
        if isinstance(obj, linemod.ShiftSystem):
            expected = linemod.double_shift_graph(len(obj.values))
            same, witness = graphs.graph_equals_expected(graph, expected, list(range(graph.n)))
            structure.append(
                {"name": "graph-equals-double-shift", "ok": same, "detail": "" if same else str(witness)}
            )
            structure_fail |= not same
        results["structure"] = structure
        hard_fail |= structure_fail

    claimed_girth = getattr(obj, "claimed_girth", None)
    claimed_chromatic = getattr(obj, "claimed_chromatic", 1)
    if "girth" in requested:
        computed = graphs.girth(graph)
        ok = claimed_girth is None or computed >= claimed_girth
        results["girth"] = {
            "computed": _girth_value(computed),
            "claimed_at_least": claimed_girth,
            "ok": ok,
        }
        hard_fail |= not ok

    if "chroma" in requested:
        chroma_budget = parse_budget(args.chroma_budget)
        if claimed_chromatic > 1:
            refutation = graphs.is_k_colorable(graph, claimed_chromatic - 1, Budget(chroma_budget))
            if refutation.status == "refuted":
                refuted = True
            elif refutation.status == "colorable":
                refuted = False
                hard_fail = True
            else:
                refuted = None
                budget_flag = True
        else:
            refuted = True
        results["chromatic"] = {"claimed_at_least": claimed_chromatic, "refuted_below": refuted}

    status, code = _status(hard_fail, budget_flag)
    report = {
        "kind": "run-report",
        "command": "verify",
        "parameters": {"scene": str(args.scene), "checks": sorted(requested)},
        "results": results,
        "status": status,
    }
    out = args.out
    if out is None:
        print(scenes.dumps_doc(report), end="")
        print(f"status: {status}")
    else:
        _emit(report, out, [f"girthgeom verify {args.scene}: checks {sorted(requested)}"])
    return code


# ---------------------------------------------------------------------------
# gallai


def _parse_ground(text: str) -> GroundSet:
    return GroundSet.of([rat(v) for v in text.split(",")])


def cmd_gallai(args) -> int:
    budget_nodes = parse_budget(args.budget)
    if args.action == "make":
        ground = _parse_ground(args.T)
        if args.provider == "pigeonhole" or (args.provider == "auto" and ground.size == 2):
            cert = pigeonhole_certificate(ground, args.k, args.g)
        else:
            cert = vdw_certificate(ground, args.k, args.g, args.vdw_hint, Budget(budget_nodes))
        doc = certificate_to_doc(cert)
        if args.out:
            scenes.write_doc(args.out, doc)
            print(f"wrote {args.out}")
        else:
            print(scenes.dumps_doc(doc), end="")
        print(f"elements: {len(cert.elements)} copies: {len(cert.copies)} flags: {cert.flags}")
        budget_flag = not cert.flags.all_true()
        status, code = _status(False, budget_flag)
        print(f"status: {status}")
        return code

    if args.action == "check":
        cert = scenes.load_certificate(args.path)
        report = verify_certificate(cert, Budget(budget_nodes))
        doc = {
            "kind": "run-report",
            "command": "gallai-check",
            "parameters": {"path": str(args.path), "budget": args.budget},
            "results": {
                "coloring_ok": report.coloring_ok,
                "sparsity_ok": report.sparsity_ok,
                "copies_complete": report.copies_complete,
                "counterexample": list(report.counterexample) if report.counterexample else None,
                "nodes": report.nodes,
            },
            "status": "ok" if report.all_ok() else ("budget-exhausted" if report.budget_exhausted else "check-failed"),
        }
        print(scenes.dumps_doc(doc), end="")
        print(f"status: {doc['status']}")
        if report.all_ok():
            return EXIT_OK
        return EXIT_BUDGET if report.budget_exhausted else EXIT_CHECK_FAILED

    if args.action == "search":
        ground = _parse_ground(args.T)
        try:
            cert = search_certificate(ground, args.k, args.g, Budget(budget_nodes, "certificate search"))
        except BudgetExhausted as exc:
            doc = {
                "kind": "run-report",
                "command": "gallai-search",
                "parameters": {"T": args.T, "k": args.k, "g": args.g, "budget": args.budget},
                "results": {"found": False, "nodes": exc.used, "limit": exc.limit},
                "status": "budget-exhausted",
            }
            if args.out:
                scenes.write_doc(args.out, doc)
            print(scenes.dumps_doc(doc), end="")
            print("status: budget-exhausted")
            return EXIT_BUDGET
        if args.out:
            scenes.write_doc(args.out, certificate_to_doc(cert))
            print(f"wrote {args.out}")
        print(f"found certificate with {len(cert.elements)} elements, {len(cert.copies)} copies")
        print("status: ok")
        return EXIT_OK

    raise SceneFormatError(f"unknown gallai action: {args.action!r}")


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="girthgeom", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a family, write scene + graph + report")
    b.add_argument("kind", choices=["boxes", "lines", "shift"])
    b.add_argument("--g", type=int, default=None, help="girth target (boxes/lines)")
    b.add_argument("--k", type=int, default=None, help="chromatic target (boxes/lines)")
    b.add_argument("--n", type=int, default=None, help="ground set size (shift)")
    b.add_argument("--provider", default="auto", choices=["auto", "pigeonhole", "vdw", "search"])
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--vdw-hint", type=int, default=None, dest="vdw_hint")
    b.add_argument("--budget", default="default", help="certificate search budget (nodes or small/default/large)")
    b.add_argument("--chroma-budget", default="default", dest="chroma_budget")
    b.add_argument("--out", required=True, help="output path prefix")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="recompute properties of a stored scene from raw coordinates")
    v.add_argument("scene")
    v.add_argument("--checks", default="all", help="comma list of geometry,girth,chroma or all")
    v.add_argument("--chroma-budget", default="default", dest="chroma_budget")
    v.add_argument("--out", default=None, help="optional report path prefix")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gallai", help="make, check, or search coloring certificates")
    g.add_argument("action", choices=["make", "check", "search"])
    g.add_argument("path", nargs="?", help="certificate file (check)")
    g.add_argument("--T", help="comma-separated ground set, e.g. 0,1,2")
    g.add_argument("--k", type=int, help="number of colors")
    g.add_argument("--g", type=int, help="girth parameter")
    g.add_argument("--provider", default="auto", choices=["auto", "pigeonhole", "vdw"])
    g.add_argument("--vdw-hint", type=int, default=None, dest="vdw_hint")
    g.add_argument("--budget", default="default")
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gallai)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ProviderRefusal, ProviderFailure) as exc:
        print(f"provider error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConstructionError, SceneFormatError) as exc:
        detail = getattr(exc, "detail", None)
        print(f"check failed: {exc}" + (f" [{detail}]" if detail else ""), file=sys.stderr)
        return EXIT_CHECK_FAILED
    except GirthGeomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
