import logging
from typing import Any, Dict, Optional

from fastmcp import FastMCP
from fastmcp.exceptions import ToolError

from rac import reports
from rac.drawing import Drawing, density_check as check_density, validate
from rac.errors import RacError
from rac.export import DrawingModel, drawing_from_dict, drawing_from_model, drawing_to_dict, svg_string
from shared.auth import auth_provider
from shared.config import settings
from shared.drawing_store import drawing_store

logger = logging.getLogger(__name__)

# Define the drawing MCP server
drawing_mcp = FastMCP(name="DrawingService", auth=auth_provider)


def _drawing(model: DrawingModel) -> Drawing:
    try:
        return drawing_from_model(model)
    except RacError as e:
        raise ToolError(f"Invalid drawing document: {e}")


def load_stored(drawing_id: str) -> Drawing:
    stored = drawing_store.load(drawing_id)
    if stored is None:
        raise ToolError(f"Drawing {drawing_id} not found or expired.")
    try:
        return drawing_from_dict(stored.drawing)
    except RacError as e:
        raise ToolError(f"Stored drawing {drawing_id} is unreadable: {e}")


@drawing_mcp.tool
def validate_drawing(drawing: DrawingModel, epsilon: Optional[float] = None) -> Dict[str, Any]:
    """
    Checks a drawing against the RAC1 conditions.

    Every pair of edge pieces is tested: crossings must be proper and at right angles,
    no edge may have more than the bend limit, pass through a vertex, overlap another
    edge, or share a crossing point with two other edges.

    Args:
        drawing (DrawingModel): Drawing document. Coordinates are strings, "p/q" or
                                integers for exact rationals, decimals for floats.
        epsilon (float, optional): Tolerance on the normalized dot product for floating
                                   drawings. Defaults to RAC_EPSILON.

    Returns:
        Dict[str, Any]: is_rac, crossing_count, crossings and violations.

    Example:
        validate_drawing({"vertices": [...], "edges": [...]}) returns {"is_rac": true, ...}
    """
    d = _drawing(drawing)
    report = validate(d, eps=epsilon if epsilon is not None else settings.epsilon)
    return reports.validation_report(report)


@drawing_mcp.tool
def partition_edges(drawing: DrawingModel) -> Dict[str, Any]:
    """Splits the edges of a RAC1 drawing into crossing-free (e0) and crossed (e1) edges."""
    d = _drawing(drawing)
    try:
        return reports.partition_report(d, validate(d, eps=settings.epsilon))
    except RacError as e:
        raise ToolError(f"Partition failed: {e}")


@drawing_mcp.tool
def density_check(drawing: DrawingModel) -> Dict[str, Any]:
    """
    Compares the edge count with the 5.5n - 11 bound for connected drawings.

    Raises:
        ToolError: If the drawing is not RAC1, has fewer than five vertices or is disconnected.
    """
    d = _drawing(drawing)
    report = validate(d, eps=settings.epsilon, collinear_eps=settings.collinear_epsilon)
    if not report.is_rac:
        raise ToolError(f"Drawing is not RAC1: {len(report.violations)} violations.")
    try:
        return reports.bound_report(check_density(d))
    except RacError as e:
        raise ToolError(f"Density check failed: {e}")


@drawing_mcp.tool
def export_svg(drawing: DrawingModel, mark_crossings: bool = True) -> str:
    """Renders the drawing as an SVG document string (crossings marked in red)."""
    d = _drawing(drawing)
    return svg_string(d, validate(d, eps=settings.epsilon), mark_crossings=mark_crossings)


@drawing_mcp.tool
def store_drawing(drawing: DrawingModel, label: str = "") -> Dict[str, Any]:
    """
    Stores a drawing in Redis so that later calls can refer to it by id.

    Returns:
        Dict[str, Any]: drawing_id and the expiry in seconds.
    """
    d = _drawing(drawing)
    drawing_id = drawing_store.save(drawing_to_dict(d), label=label)
    if drawing_id is None:
        raise ToolError("Drawing store is unavailable.")
    return {"drawing_id": drawing_id, "expires_in": drawing_store.default_expiry}


@drawing_mcp.tool
def validate_stored(drawing_id: str) -> Dict[str, Any]:
    """Validates a drawing previously stored with store_drawing or generate_family."""
    d = load_stored(drawing_id)
    report = reports.validation_report(validate(d, eps=settings.epsilon))
    report["drawing_id"] = drawing_id
    return report
