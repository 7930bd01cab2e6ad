"""Exact enumeration and counting for semigroups of partial isometries of a
finite chain, with brute-force cross-checks."""

from .families import (
    Family,
    FamilySlice,
    construct_reflection,
    construct_translation,
    count,
    enumerate_family,
    naive_enumerate,
)
from .green import dstar_related, gap_vector, lstar_related, reverse_gap, rstar_related, span
from .ptransform import MapFlag, PartialInjection, Statistics, classify, compose, make, statistics

__all__ = [
    "Family",
    "FamilySlice",
    "MapFlag",
    "PartialInjection",
    "Statistics",
    "classify",
    "compose",
    "construct_reflection",
    "construct_translation",
    "count",
    "dstar_related",
    "enumerate_family",
    "gap_vector",
    "lstar_related",
    "make",
    "naive_enumerate",
    "reverse_gap",
    "rstar_related",
    "span",
    "statistics",
]

__version__ = "0.1.0"
