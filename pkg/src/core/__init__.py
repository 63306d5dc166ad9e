from src.core.config import settings

__all__ = ["settings"]
