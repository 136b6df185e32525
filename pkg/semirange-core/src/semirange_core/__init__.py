"""Numerical ranges, radii and spectra of matrices on semi-Hilbertian spaces."""

__version__ = "0.1.0"
