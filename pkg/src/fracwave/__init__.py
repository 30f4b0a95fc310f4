"""fracwave: forward models for the space-time fractional wave equation
sampled on a sphere or a hyperplane, and Mellin-transform reconstruction
of the initial function from that boundary data.
"""

__version__ = "0.1.0"

from .specfun import FractionalOrder, bessel_j, gamma, mittag_leffler  # noqa: F401
