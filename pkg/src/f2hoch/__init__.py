"""Hochschild cohomology, Koszul resolutions and Massey products over F_2."""

from .algebra import build_table, builtin, paper_presentation, parse_presentation
from .gf2 import GF2Matrix, GF2Vector, Subspace, intersect, kernel_basis, rank, solve
from .hochschild import hh_dimension, koszul_window
from .massey import cohomology, kadeishvili_m3, massey_triple, parse_dga, witness_dga
from .resolutions import koszul_spaces

__all__ = [
    "GF2Matrix", "GF2Vector", "Subspace", "build_table", "builtin", "cohomology",
    "hh_dimension", "intersect", "kadeishvili_m3", "kernel_basis", "koszul_spaces",
    "koszul_window", "massey_triple", "paper_presentation", "parse_dga",
    "parse_presentation", "rank", "solve", "witness_dga",
]
