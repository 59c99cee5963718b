"""Algebra engine: graded bases, normal forms, the bilinear form."""
from .algebra import MINUS, PLUS, AlgebraElement, AlgebraHandle, GradedSlice, degrees_up_to

__all__ = ["AlgebraHandle", "AlgebraElement", "GradedSlice", "PLUS", "MINUS", "degrees_up_to"]
