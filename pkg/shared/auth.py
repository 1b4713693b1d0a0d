import logging
from typing import Optional

from fastmcp.server.auth import BearerAuthProvider

from shared.config import Settings, settings

logger = logging.getLogger(__name__)


def get_auth_provider(config: Settings = settings) -> Optional[BearerAuthProvider]:
    """
    Creates a BearerAuthProvider from the JWT settings, or returns None when
    JWT_PUBLIC_KEY is not configured (the tool servers then run without auth).
    """
    if not config.jwt_public_key:
        logger.warning("JWT_PUBLIC_KEY is not set; tool servers run without bearer auth")
        return None

    return BearerAuthProvider(
        public_key=config.jwt_public_key,
        issuer=config.jwt_issuer,
        audience=config.jwt_audience,
    )


# Create a single instance to be shared across the application
auth_provider = get_auth_provider()
