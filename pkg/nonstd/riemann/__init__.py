"""
Riemann package.

Partitions, certified Darboux sums, Taylor quadrature, moduli of
integrability and the integrability and fundamental theorem checks.
"""

from nonstd.riemann.integrability import IntegralEngine, classical_integral, ftc_check, nsa_integral
from nonstd.riemann.moduli import CellKind, ModulusCertificate, classify_cell, modulus_certificate
from nonstd.riemann.partition import Partition, parse_partition
from nonstd.riemann.quadrature import TaylorQuadrature, quadrature
from nonstd.riemann.sums import DarbouxBounds, cells_to_csv, darboux_bounds, riemann_sum

__all__ = [
    "CellKind",
    "DarbouxBounds",
    "IntegralEngine",
    "ModulusCertificate",
    "Partition",
    "TaylorQuadrature",
    "cells_to_csv",
    "classical_integral",
    "classify_cell",
    "darboux_bounds",
    "ftc_check",
    "modulus_certificate",
    "nsa_integral",
    "parse_partition",
    "quadrature",
    "riemann_sum",
]
