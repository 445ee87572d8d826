"""HTTP facade: pydantic request/response models, handlers, FastAPI app."""

from .app import app

__all__ = ["app"]
