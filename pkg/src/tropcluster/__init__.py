"""Exact tools for cluster mutation, Groebner degenerations and tropical
certificates, with applications to flag varieties."""

__all__ = [
    "exactmath",
    "poly",
    "groebner",
    "cluster",
    "trop",
    "present",
    "flag",
    "fflv",
]

__version__ = "1.0.0"
