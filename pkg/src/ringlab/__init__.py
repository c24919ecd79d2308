"""Exhaustive computation with finite rings.

Rings are finite carriers indexed 0..|R|-1 with vectorised operations; see
``ringlab.expr`` for the expression language used by the command line.
"""

from .classify import (RingProfile, classify_element, classify_ring, nil_clean,
                       potent_nilpotent_decompose, q_bound, strongly_m_nil_clean,
                       uniform_period)
from .expr import ParseError, SizeError, build, parse_expr, print_expr, ring_from_text
from .ring import CapExceeded, FiniteRing, RingError, Subset
from .structure import characteristic, jacobson_radical, quotient_ring

__version__ = "0.1.0"

__all__ = [
    "CapExceeded", "FiniteRing", "ParseError", "RingError", "RingProfile", "SizeError", "Subset",
    "build", "characteristic", "classify_element", "classify_ring", "jacobson_radical",
    "nil_clean", "parse_expr", "potent_nilpotent_decompose", "print_expr", "q_bound",
    "quotient_ring", "ring_from_text", "strongly_m_nil_clean", "uniform_period",
]
