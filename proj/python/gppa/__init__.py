"""Proximal-point solver for objectives f = g1 + g2 - h.

The heavy lifting lives in the compiled extension; this package re-exports
its surface: gallery problem builders (trust region, set feasibility), the
solver loop with its trace, projection/prox operators, and post-hoc
diagnostics (descent verification, convergence-rate classification).
"""

from ._gppa import *  # noqa: F401,F403
from ._gppa import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
