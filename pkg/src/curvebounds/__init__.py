"""curvebounds: exact bounds, feasibility regions and genus spectra for
curves over small finite fields, cross-checked by brute-force point counts."""

__version__ = "0.1.0"
