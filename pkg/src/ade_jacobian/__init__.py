"""Compactified Jacobians of extended ADE curves.

Combinatorial models of type-m sheaves on curves whose dual graph is an
extended Dynkin graph, their stability, and the resulting description of
the moduli space.
"""
from .curve import ExtendedADECurve, genus, make_curve, validate
from .dynkin import ExtendedDynkinGraph, build_graph, cartan_matrix, supported_graphs
from .errors import AdeJacobianError
from .polarisation import Polarisation, b_vector, check_assumption_H, make_polarisation
from .sheaves import (
    MarkedSheaf,
    enumerate_stable,
    make_marking,
    presentation,
    stability_test,
)

__version__ = "0.1.0"

__all__ = [
    "AdeJacobianError",
    "ExtendedADECurve",
    "ExtendedDynkinGraph",
    "MarkedSheaf",
    "Polarisation",
    "b_vector",
    "build_graph",
    "cartan_matrix",
    "check_assumption_H",
    "enumerate_stable",
    "genus",
    "make_curve",
    "make_marking",
    "make_polarisation",
    "presentation",
    "stability_test",
    "supported_graphs",
    "validate",
]
