"""Exact symbolic engine for multiparameter quantum groups U(D_red, l)."""
__version__ = "0.1.0"
