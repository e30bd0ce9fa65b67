"""Arbitrary-precision checks of closed forms for zeta({2}^r, 3, {2}^s) and t-values."""

from .numerics import PrecisionContext, make_context
from .oracle import mzv_direct, tvalue_direct, hurwitz_mzv_direct
from .identities import h_closed, h_closed_r0, t_closed

__all__ = [
    "PrecisionContext", "make_context",
    "mzv_direct", "tvalue_direct", "hurwitz_mzv_direct",
    "h_closed", "h_closed_r0", "t_closed",
]
__version__ = "0.1.0"
