"""Matrix polynomial eigenvalues and eigenvalue-location verification."""

__version__ = "1.0.0"
__description__ = "Companion-linearization eigenvalues and annulus/disc bound checks for matrix polynomials"
