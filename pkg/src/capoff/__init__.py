"""Fractional Dehn twist coefficients and capping off for open books on small surfaces."""

__version__ = "0.1.0"
