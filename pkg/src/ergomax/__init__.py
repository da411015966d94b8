"""
ergomax - Ergodic optimization on subshifts of finite type.
Maximum ergodic averages, sub-actions, pressure functions and convex duality.
"""

__version__ = "0.1.0"

from ergomax.core.report import RunReport
from ergomax.dispatcher import Dispatcher, default_dispatcher

__all__ = [
    "RunReport",
    "Dispatcher",
    "default_dispatcher",
    "__version__",
]
