"""Sparse-grid Gauss-Hermite versus quasi-Monte Carlo quadrature for Gaussian integrals."""

__version__ = "0.1.0"
