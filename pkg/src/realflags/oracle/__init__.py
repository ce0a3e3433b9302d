"""Floating-point certification of the exact results in concrete matrix models."""

from .algebra import RealLieAlgebra
from .extract import extract_triad, intersection_dimension, predicted_dimension
from .pairs import MatrixPair, build_pair, direct_sum_pairs

__all__ = [
    "MatrixPair",
    "RealLieAlgebra",
    "build_pair",
    "direct_sum_pairs",
    "extract_triad",
    "intersection_dimension",
    "predicted_dimension",
]
