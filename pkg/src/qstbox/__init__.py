"""Satisfiability checking for TBoxes whose concepts denote time intervals
carrying propositional literals and qualitative spatial constraints."""

from .reasoner import Verdict, decide
from .tbox import TBox, TBoxError, parse_tbox, validate
from .witness import Witness, verify_witness

__all__ = ["TBox", "TBoxError", "Verdict", "Witness", "decide", "parse_tbox", "validate", "verify_witness"]
__version__ = "0.1.0"
