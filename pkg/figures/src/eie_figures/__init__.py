"""Publication-style plots from sweep CSVs."""

from .render import (BOUND_GID, EXPECTED_HEADER, KINDS, FigureError, FigureJob,
                     render)

__version__ = "0.1.0"

__all__ = ["BOUND_GID", "EXPECTED_HEADER", "KINDS", "FigureError", "FigureJob",
           "render", "__version__"]
