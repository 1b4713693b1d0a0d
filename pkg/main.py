import asyncio
import logging
import sys
import uuid
from typing import Any, Dict, List

from fastmcp import Context, FastMCP

# Import shared components and subservers
from shared.config import settings
from shared.drawing_store import drawing_store
from servers.audit.server import audit_mcp
from servers.construction.server import construction_mcp
from servers.drawing.server import drawing_mcp

logger = logging.getLogger(__name__)

# Create the main MCP server
main_mcp = FastMCP(
    "RAC1 Toolkit",
    mask_error_details=True
)

SUBSERVERS = {
    "drawing": drawing_mcp,
    "audit": audit_mcp,
    "construction": construction_mcp,
}


# Resource returning JSON data (dict is auto-serialized)
@main_mcp.resource("data://config")
def get_config() -> dict:
    """Numeric tolerances and storage settings in effect."""
    return {
        "epsilon": settings.epsilon,
        "collinear_epsilon": settings.collinear_epsilon,
        "drawing_ttl": settings.drawing_ttl,
        "auth": settings.jwt_public_key is not None,
    }


# Health check endpoint
@main_mcp.tool
async def health_check(ctx: Context) -> Dict[str, Any]:
    """Health check endpoint for load balancer with drawing store info"""
    store_health = drawing_store.health_check()
    return {
        "status": "healthy" if store_health.get("redis_connection") == "ok" else "unhealthy",
        "server_id": str(uuid.uuid4())[:8],
        "drawing_store": store_health,
    }


# Tool list endpoint for server composition
@main_mcp.tool
async def list_all_tools(ctx: Context) -> Dict[str, List[str]]:
    """List all available tools across all imported servers"""
    tools = {"main_server": ["health_check", "list_all_tools"]}
    for prefix, server in SUBSERVERS.items():
        registered = await server.get_tools()
        tools[prefix] = sorted(registered)
    return tools


async def import_subservers():
    for prefix, server in SUBSERVERS.items():
        await main_mcp.import_server(prefix=prefix, server=server)


if __name__ == "__main__":
    logging.basicConfig(level=settings.log_level.upper(), stream=sys.stderr)
    asyncio.run(import_subservers())
    main_mcp.run(transport="sse", host=settings.mcp_host, port=settings.mcp_port)
