"""Exact computations with graded quadratic forms, Witt classes and duality-defect data."""
__version__ = "0.1.0"
