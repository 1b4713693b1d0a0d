import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

load_dotenv()


@dataclass(frozen=True)
class Settings:
    """Runtime settings read from the environment (and ``.env``)."""

    epsilon: float = 1e-9
    collinear_epsilon: float = 1e-12
    log_level: str = "INFO"
    redis_url: str = "redis://localhost:6379"
    drawing_ttl: int = 3600
    mcp_host: str = "0.0.0.0"
    mcp_port: int = 9100
    jwt_public_key: Optional[str] = None
    jwt_issuer: str = "https://dev.example.com"
    jwt_audience: str = "rac1-toolkit"


def load_settings() -> Settings:
    return Settings(
        epsilon=float(os.getenv("RAC_EPSILON", "1e-9")),
        collinear_epsilon=float(os.getenv("RAC_COLLINEAR_EPSILON", "1e-12")),
        log_level=os.getenv("RAC_LOG_LEVEL", "INFO"),
        redis_url=os.getenv("REDIS_URL", "redis://localhost:6379"),
        drawing_ttl=int(os.getenv("RAC_DRAWING_TTL", "3600")),
        mcp_host=os.getenv("MCP_HOST", "0.0.0.0"),
        mcp_port=int(os.getenv("MCP_PORT", "9100")),
        jwt_public_key=os.getenv("JWT_PUBLIC_KEY") or None,
        jwt_issuer=os.getenv("JWT_ISSUER", "https://dev.example.com"),
        jwt_audience=os.getenv("JWT_AUDIENCE", "rac1-toolkit"),
    )


# Create a single instance to be shared across the application
settings = load_settings()
