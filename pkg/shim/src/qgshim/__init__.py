from .app import create_app
from .config import ShimConfig

__all__ = ["ShimConfig", "create_app"]
