"""Exact finite models of fiber orders, dominance orders on probability
simplices, and direct-product factorisation of finite posets.

All arithmetic is rational (:class:`fractions.Fraction`).
"""

from .errors import *  # noqa: F401,F403
from .order import *  # noqa: F401,F403
from .flow import *  # noqa: F401,F403
from .dominance import *  # noqa: F401,F403
from .factorization import *  # noqa: F401,F403
from .lifting import *  # noqa: F401,F403
from .fibers import *  # noqa: F401,F403
from .rational import as_rational, format_rational, size_cap

from . import errors, order, flow, dominance, factorization, lifting, fibers

__version__ = "0.1.0"
