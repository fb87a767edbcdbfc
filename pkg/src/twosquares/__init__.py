"""Decide whether an integer of Q(sqrt(p)) or Q(sqrt(-p)) is a sum of two integral squares."""

from .constructions import epsilon_obstruction, minus_one_witness
from .criteria import builtin_descriptors, evaluate, factor_norm, hasse_field_list, weighted_sum
from .decider import SearchBounds, Verdict, batch_decide, decide, find_witness
from .local import local_table
from .pell import fundamental_unit, solve_pm, yokoi_check
from .quadfield import FieldDesc, QuadInt, field, make, parse_alpha, render

__all__ = [
    "FieldDesc",
    "QuadInt",
    "SearchBounds",
    "Verdict",
    "batch_decide",
    "builtin_descriptors",
    "decide",
    "epsilon_obstruction",
    "evaluate",
    "factor_norm",
    "field",
    "find_witness",
    "fundamental_unit",
    "hasse_field_list",
    "local_table",
    "make",
    "minus_one_witness",
    "parse_alpha",
    "render",
    "solve_pm",
    "weighted_sum",
    "yokoi_check",
]

__version__ = "0.1.0"
