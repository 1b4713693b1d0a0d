import json
import logging
import uuid
from dataclasses import dataclass
from datetime import datetime
from typing import Any, Dict, List, Optional

import redis

from shared.config import settings

logger = logging.getLogger(__name__)


@dataclass
class StoredDrawing:
    drawing_id: str
    created_at: datetime
    label: str
    drawing: Dict[str, Any]


class RedisDrawingStore:
    """Drawing documents kept in Redis under ``rac_drawing:<id>`` with a TTL."""

    def __init__(self, redis_url: Optional[str] = None, client: Optional[redis.Redis] = None, ttl: Optional[int] = None):
        self.redis_url = redis_url or settings.redis_url
        self.redis_client = client if client is not None else redis.from_url(self.redis_url, decode_responses=True)
        self.key_prefix = "rac_drawing:"
        self.default_expiry = ttl or settings.drawing_ttl

    def _key(self, drawing_id: str) -> str:
        return f"{self.key_prefix}{drawing_id}"

    def save(self, drawing: Dict[str, Any], drawing_id: Optional[str] = None, label: str = "") -> Optional[str]:
        """Store a drawing document; returns its id or None on failure"""
        drawing_id = drawing_id or uuid.uuid4().hex[:12]
        payload = json.dumps({
            "drawing_id": drawing_id,
            "created_at": datetime.now().isoformat(),
            "label": label,
            "drawing": drawing,
        })
        try:
            self.redis_client.setex(self._key(drawing_id), self.default_expiry, payload)
            logger.info(f"Stored drawing {drawing_id} ({label or 'unlabelled'})")
            return drawing_id
        except Exception as e:
            logger.error(f"Failed to store drawing {drawing_id}: {e}")
            return None

    def load(self, drawing_id: str) -> Optional[StoredDrawing]:
        try:
            payload = self.redis_client.get(self._key(drawing_id))
            if not payload:
                logger.warning(f"Drawing {drawing_id} not found")
                return None
            data = json.loads(payload)
            return StoredDrawing(
                drawing_id=data["drawing_id"],
                created_at=datetime.fromisoformat(data["created_at"]),
                label=data.get("label", ""),
                drawing=data["drawing"],
            )
        except Exception as e:
            logger.error(f"Failed to load drawing {drawing_id}: {e}")
            return None

    def delete(self, drawing_id: str) -> bool:
        try:
            return bool(self.redis_client.delete(self._key(drawing_id)))
        except Exception as e:
            logger.error(f"Failed to delete drawing {drawing_id}: {e}")
            return False

    def extend(self, drawing_id: str, expiry_seconds: Optional[int] = None) -> bool:
        """Reset the TTL of a stored drawing"""
        try:
            return bool(self.redis_client.expire(self._key(drawing_id), expiry_seconds or self.default_expiry))
        except Exception as e:
            logger.error(f"Failed to extend drawing {drawing_id}: {e}")
            return False

    def list_ids(self) -> List[str]:
        try:
            return sorted(key[len(self.key_prefix):] for key in self.redis_client.scan_iter(f"{self.key_prefix}*"))
        except Exception as e:
            logger.error(f"Failed to list drawings: {e}")
            return []

    def health_check(self) -> Dict[str, Any]:
        try:
            self.redis_client.ping()
            return {"redis_connection": "ok", "stored_drawings": len(self.list_ids())}
        except Exception as e:
            logger.error(f"Drawing store health check failed: {e}")
            return {"redis_connection": "error", "error": str(e)}


# Global drawing store instance
drawing_store = RedisDrawingStore()
