"""JSON-ready report dictionaries shared by the CLI and the tool servers."""

from __future__ import annotations

from dataclasses import asdict
from fractions import Fraction
from typing import Any, Dict, Optional, Union

from rac.charge import ChargeLedger, audit, e1_bound, face_bound_audit
from rac.drawing import BoundVerdict, Drawing, ValidationReport, partition_edges
from rac.generator import FamilyReport
from rac.geom import format_coord
from rac.planarize import (
    AugmentResult,
    GoodnessReport,
    Planarization,
    Scope,
    good_edges,
    planarize,
)
from rac.removal import PotentialReport, RemovalTrace, coarse_optimum, refined_optimum


def number(value: Union[Fraction, int, float]) -> Union[int, float, str]:
    """Integers stay integers, other fractions become ``"p/q"`` strings."""
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else format_coord(value)
    return value


def validation_report(report: ValidationReport) -> Dict[str, Any]:
    return {
        "is_rac": report.is_rac,
        "crossing_count": len(report.crossings),
        "crossings": [
            {
                "edges": [c.edge_a, c.edge_b],
                "pieces": [c.piece_a, c.piece_b],
                "point": [format_coord(c.point.x), format_coord(c.point.y)],
                "angle": c.angle,
            }
            for c in report.crossings
        ],
        "violations": [
            {"kind": v.kind.value, "edges": list(v.edges), "details": v.details} for v in report.violations
        ],
    }


def partition_report(d: Drawing, report: ValidationReport) -> Dict[str, Any]:
    part = partition_edges(d, report)
    return {"e0": sorted(part.e0), "e1": sorted(part.e1), "planar_ok": part.planar_ok}


def bound_report(verdict: BoundVerdict) -> Dict[str, Any]:
    return {
        "n": verdict.n,
        "m": verdict.m,
        "bound": number(verdict.bound),
        "slack": number(verdict.slack),
        "satisfied": verdict.satisfied,
    }


def planarization_report(p: Planarization) -> Dict[str, Any]:
    return {
        "nodes": len(p.nodes),
        "dummy_nodes": len(p.dummy_nodes()),
        "arcs": len(p.active_arcs()),
        "faces": len(p.faces),
        "components": p.component_count(),
        "euler_ok": p.euler_ok(),
        "crossed_edges": sorted(p.crossed_edges),
    }


def goodness_report(goodness: GoodnessReport, p_all: Optional[Planarization] = None) -> Dict[str, Any]:
    audits = {a.face: a for a in face_bound_audit(p_all, goodness)} if p_all is not None else {}
    faces = []
    for fg in goodness.faces:
        s = fg.stats
        entry: Dict[str, Any] = {
            "face": fg.face,
            "outer": fg.outer,
            "triangle": fg.triangle,
            "good": fg.good,
            "stats": {"d": s.d, "l": s.l, "m": s.m, "i": s.i, "b": s.b},
            "identity_holds": s.identity_holds(),
            "bad_edges": sorted(e for e, ok in fg.edges.items() if not ok),
        }
        if fg.face in audits:
            a = audits[fg.face]
            entry["crossed_inside"] = a.actual
            entry["face_bound"] = a.bound
            entry["within_face_bound"] = a.ok
        faces.append(entry)
    return {"all_good": goodness.all_good, "faces": faces}


def face_stats_report(d: Drawing) -> Dict[str, Any]:
    p_all = planarize(d, Scope.ALL)
    return goodness_report(good_edges(d, p_all), p_all)


def ledger_report(ledger: ChargeLedger, n: int) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "verdict": ledger.verdict.describe() if ledger.verdict else None,
        "certified": bool(ledger.verdict and ledger.verdict.certified),
        "totals": {phase: number(ledger.total(phase)) for phase in ledger.vertex_charge},
        "components": ledger.component_count,
        "convex_bends": len(ledger.bends),
        "lenses": len(ledger.lenses),
        "matched_lenses": len(ledger.lens_matching),
        "vertex_floor_ok": ledger.vertex_floor_ok,
    }
    if out["certified"]:
        bound = e1_bound(ledger, n)
        out["e1_bound"] = {"e1": bound.e1, "bound": bound.bound, "holds": bound.holds}
    return out


def charge_audit_report(d: Drawing) -> Dict[str, Any]:
    p_crossed = planarize(d, Scope.CROSSED)
    return ledger_report(audit(d, p_crossed), d.n)


def augment_report(result: AugmentResult) -> Dict[str, Any]:
    return {
        "added": list(result.added),
        "self_loops": [list(pair) for pair in result.self_loops],
        "passes": result.passes,
        "faces": len(result.planarization.faces),
    }


def family_report_dict(report: FamilyReport) -> Dict[str, Any]:
    return asdict(report)


def removal_report(trace: RemovalTrace, bound: PotentialReport) -> Dict[str, Any]:
    return {
        "trace": trace.to_dict(),
        "coarse_holds": trace.coarse_holds,
        "bounds": {
            "f1": bound.f1,
            "f2": bound.f2,
            "face_bound_terms": bound.face_bound_terms,
            "eq4": number(bound.eq4),
            "tau": number(bound.tau),
            "refined_ok": bound.refined_ok,
            "coarse": bound.coarse,
            "coarse_ok": bound.coarse_ok,
            "planar_edges": bound.planar_edges,
            "charge_bound": bound.charge_bound,
            "coarse_bound": bound.coarse_bound,
            "refined_bound": number(bound.refined_bound),
        },
    }


def bookend_report(n: int) -> Dict[str, Any]:
    ck, cb = coarse_optimum(n)
    rk, rb = refined_optimum(n)
    return {
        "n": n,
        "coarse": {"k": number(ck), "bound": number(cb)},
        "refined": {"k": number(rk), "bound": number(rb)},
    }

