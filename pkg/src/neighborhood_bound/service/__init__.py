"""HTTP face of the package: ``uvicorn neighborhood_bound.service:app``."""

from .app import app, create_app

__all__ = ["app", "create_app"]
