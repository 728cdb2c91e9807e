"""Exact computations around triality on Spin(8) and twisted endoscopy for PGSO8."""

__version__ = "0.1.0"
