import logging
from typing import Any, Dict, List

from fastmcp import FastMCP
from fastmcp.exceptions import ToolError

from rac import reports
from rac.errors import RacError
from rac.export import DrawingModel, drawing_from_model, drawing_to_dict
from rac.planarize import Scope, augment_to_good, good_edges, planarize
from rac.planarize import small_face_catalogue as catalogue
from shared.auth import auth_provider

logger = logging.getLogger(__name__)

# Define the audit MCP server
audit_mcp = FastMCP(name="AuditService", auth=auth_provider)


@audit_mcp.tool
def face_statistics(drawing: DrawingModel) -> Dict[str, Any]:
    """
    Statistics of every face of the crossing-free subdrawing.

    For each face: d (distinct vertices), l (walk length), m (repeated occurrences),
    i (isolated vertices) and b (blocks), whether it is good, and for good faces the
    per-face bound 2d - 2m + 2i + 4b - 8 next to the crossed edges drawn inside it.

    Raises:
        ToolError: If the drawing is malformed or not RAC1.
    """
    try:
        return reports.face_stats_report(drawing_from_model(drawing))
    except RacError as e:
        raise ToolError(f"Face statistics failed: {e}")


@audit_mcp.tool
def charge_audit(drawing: DrawingModel) -> Dict[str, Any]:
    """
    Runs the discharging certificate on the crossed part of a RAC1 drawing.

    Returns the verdict (certified or failed with a reason), the total charge after
    each phase and, when certified, the |E1| <= 4n - 8 check.
    """
    try:
        return reports.charge_audit_report(drawing_from_model(drawing))
    except RacError as e:
        raise ToolError(f"Charge audit failed: {e}")


@audit_mcp.tool
def augment_drawing(drawing: DrawingModel) -> Dict[str, Any]:
    """Adds crossing-free auxiliary edges until every crossing-free face is good."""
    try:
        d = drawing_from_model(drawing)
        p_all = planarize(d, Scope.ALL)
        result = augment_to_good(d, p_all)
        after = good_edges(result.drawing, result.planarization)
    except RacError as e:
        raise ToolError(f"Augmentation failed: {e}")
    report = reports.augment_report(result)
    report["all_good"] = after.all_good
    report["drawing"] = drawing_to_dict(result.drawing)
    return report


@audit_mcp.tool
def small_face_catalogue() -> List[Dict[str, Any]]:
    """The faces obtainable by removing one, two or three edges from a triangulation."""
    return [
        {"label": entry.label, "t": entry.t, "d": entry.shape[0], "m": entry.shape[1], "i": entry.shape[2], "b": entry.shape[3]}
        for entry in catalogue()
    ]
