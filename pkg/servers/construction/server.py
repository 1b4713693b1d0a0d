import logging
from typing import Any, Dict

from fastmcp import FastMCP
from fastmcp.exceptions import ToolError

from rac import reports
from rac.errors import RacError
from rac.export import drawing_to_dict
from rac.generator import family_report as build_family_report, generate
from rac.removal import potential_bound, removal_sim
from shared.auth import auth_provider
from shared.drawing_store import drawing_store

logger = logging.getLogger(__name__)

# Define the construction MCP server
construction_mcp = FastMCP(name="ConstructionService", auth=auth_provider)

MAX_LEVELS = 8
MAX_REMOVAL_VERTICES = 40


@construction_mcp.tool
def generate_family(levels: int = 1, scale: float = 1.0) -> Dict[str, Any]:
    """
    Builds the nested dodecahedral drawing with 15 * levels + 5 vertices and
    5n - 10 edges, and stores it.

    Args:
        levels (int): Number of nested levels, 1 to 8.
        scale (float): Side length of the outer pentagon.

    Returns:
        Dict[str, Any]: drawing_id (usable with validate_stored), n and m.
    """
    if not 1 <= levels <= MAX_LEVELS:
        raise ToolError(f"levels must be between 1 and {MAX_LEVELS}.")
    try:
        d = generate(levels, scale)
    except RacError as e:
        raise ToolError(f"Construction failed: {e}")
    drawing_id = drawing_store.save(drawing_to_dict(d), label=f"family-k{levels}")
    if drawing_id is None:
        raise ToolError("Drawing store is unavailable.")
    return {"drawing_id": drawing_id, "n": d.n, "m": d.m}


@construction_mcp.tool
def family_report(levels: int = 1) -> Dict[str, Any]:
    """Counts, crossing angles and density slack of the nested family."""
    if not 1 <= levels <= MAX_LEVELS:
        raise ToolError(f"levels must be between 1 and {MAX_LEVELS}.")
    try:
        return reports.family_report_dict(build_family_report(levels))
    except RacError as e:
        raise ToolError(f"Family report failed: {e}")


@construction_mcp.tool
def removal_simulation(n: int, k: int, seed: int = 0) -> Dict[str, Any]:
    """
    Removes k random edges from a seeded random triangulation on n vertices in dual
    BFS order and tracks the crossed-edge potential after every step.
    """
    if not 4 <= n <= MAX_REMOVAL_VERTICES:
        raise ToolError(f"n must be between 4 and {MAX_REMOVAL_VERTICES}.")
    try:
        state, trace = removal_sim(n, k, seed)
    except RacError as e:
        raise ToolError(f"Removal simulation failed: {e}")
    return reports.removal_report(trace, potential_bound(state, trace))


@construction_mcp.tool
def bookend_bounds(n: int) -> Dict[str, Any]:
    """Maximising removal count k and global edge bound, coarse and refined accounting."""
    if n < 3:
        raise ToolError("n must be at least 3.")
    return reports.bookend_report(n)
