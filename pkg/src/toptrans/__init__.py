"""Transitivity properties (IN, TT, TT+, TT++, DO, DO+, DO++) of topological dynamical systems.

Finite spaces are handled exactly through minimal neighbourhoods; the full
shift and a few countable families are handled symbolically.
"""
from .epset import EPSet
from .findyn import PROPERTIES, FinSystem, PropertyReport, classify_isolated, properties
from .fintop import FinSpace, discrete_space, indiscrete_space, space_from_min_nbhds
from .io import load_system, system_from_dict, system_to_dict

__all__ = [
    "EPSet", "FinSpace", "FinSystem", "PROPERTIES", "PropertyReport", "classify_isolated",
    "discrete_space", "indiscrete_space", "load_system", "properties", "space_from_min_nbhds",
    "system_from_dict", "system_to_dict",
]
__version__ = "0.1.0"
