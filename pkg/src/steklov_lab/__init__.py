"""Hyperbolic surfaces with geodesic boundary: meshes, Steklov spectra, isoperimetric constants and volume polynomials."""

__version__ = "0.1.0"
