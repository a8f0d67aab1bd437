"""Exact computation in bounded homotopy categories of quiver projectives."""

__version__ = "0.1.0"

from ._kernel import IMPL as KERNEL_IMPL

__all__ = ["KERNEL_IMPL", "__version__"]
