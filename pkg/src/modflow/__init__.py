"""Lehner and Farey continued fractions, their natural extensions, and geodesics on the modular surface."""
from .cf_core import DigitSequence, FareyDigit, LehnerDigit, evaluate_word, rcf_expand, value_of_periodic
from .errors import ModflowError
from .farey_cf import farey_expand, farey_from_rcf
from .geodesics import Geodesic, lift_to_A, theorem1_decode
from .lehner import lehner_expand, lehner_from_rcf
from .numeric import INF, Surd, UnimodularMap, format_exact, parse_exact, surd

__all__ = [
    "DigitSequence", "FareyDigit", "LehnerDigit", "evaluate_word", "rcf_expand", "value_of_periodic",
    "ModflowError", "farey_expand", "farey_from_rcf", "Geodesic", "lift_to_A", "theorem1_decode",
    "lehner_expand", "lehner_from_rcf", "INF", "Surd", "UnimodularMap", "format_exact", "parse_exact", "surd",
]
