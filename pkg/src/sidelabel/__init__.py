"""Label recovery from noisy pairwise measurements with vertex side information."""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
