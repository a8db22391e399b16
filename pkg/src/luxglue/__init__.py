"""Numerical verification toolkit: gauge norms of log-type weights, level-set
iteration thresholds, smooth convex gluing, and radial plurisubharmonic
potentials with a bounded-entropy / unbounded-oscillation family."""

__version__ = "0.1.0"

from . import cli, degiorgi, gluing, numgrid, orlicz, radialpsh, youngfn
from .errors import LuxglueError

__all__ = [
    "cli",
    "degiorgi",
    "gluing",
    "numgrid",
    "orlicz",
    "radialpsh",
    "youngfn",
    "LuxglueError",
]
