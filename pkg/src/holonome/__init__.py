"""Holonomic quantum gates from isospectral deformations of Ising dimers."""

__version__ = "0.1.0"

from holonome.errors import DomainError

__all__ = ["DomainError", "__version__"]
