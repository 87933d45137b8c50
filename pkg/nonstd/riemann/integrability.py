"""
Integrability verdicts and the fundamental theorem check.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from nonstd.checks.classical import as_schedule
from nonstd.checks.probes import ProbeSet
from nonstd.core.lc_number import format_lc, is_infinitesimal
from nonstd.core.rat_interval import RatInterval
from nonstd.core.rational import as_rat, format_rat
from nonstd.core.verdict import Status, Verdict
from nonstd.errors import PartitionError
from nonstd.expr.diff import symbolic_diff
from nonstd.expr.evaluate import eval_rat
from nonstd.expr.nodes import Expr
from nonstd.riemann.moduli import ModulusCertificate, modulus_certificate
from nonstd.riemann.partition import Partition
from nonstd.riemann.quadrature import quadrature
from nonstd.riemann.sums import DarbouxBounds, darboux_bounds

logger = logging.getLogger(__name__)


class IntegralEngine:
    """
    Darboux refinement, modulus certificate and Taylor quadrature of one integrand.

    Attributes:
        f (Expr): The integrand
        a (Fraction): Left end
        b (Fraction): Right end
    """

    def __init__(self, f: Expr, a, b, prec: Optional[int] = None, max_cells_log2: Optional[int] = None):
        from nonstd.config import get_settings
        settings = get_settings()
        self.f = f
        self.a, self.b = as_rat(a), as_rat(b)
        if self.a >= self.b:
            raise PartitionError(f"integration needs a < b, got [{self.a}, {self.b}]")
        self.prec = settings.prec if prec is None else prec
        self.max_cells_log2 = settings.darboux_max_cells_log2 if max_cells_log2 is None else max_cells_log2
        self._darboux: Dict[int, DarbouxBounds] = {}
        self._modulus: Optional[ModulusCertificate] = None

    def darboux(self, k: int) -> DarbouxBounds:
        """Bounds on the uniform partition with 2**k cells."""
        if k not in self._darboux:
            self._darboux[k] = darboux_bounds(self.f, Partition.uniform(self.a, self.b, 2 ** k), self.prec)
        return self._darboux[k]

    def modulus(self, target: Fraction) -> ModulusCertificate:
        if self._modulus is None:
            self._modulus = modulus_certificate(self.f, self.a, self.b, self.prec, target)
        return self._modulus

    def delta_for(self, eps: Fraction, start_k: int, target: Fraction) -> Tuple[Optional[Dict[str, object]], int]:
        """
        A mesh bound for eps: 3 * gap < eps on a uniform partition certifies its
        mesh for every finer-meshed partition; otherwise the modulus certificate.
        """
        for k in range(start_k, self.max_cells_log2 + 1):
            bounds = self.darboux(k)
            if 3 * bounds.gap < eps:
                mesh = (self.b - self.a) / 2 ** k
                return {"eps": eps, "delta": mesh, "method": "darboux", "cells": 2 ** k}, k
        modulus = self.modulus(target)
        delta = modulus.delta_for(eps)
        if delta is None:
            return None, self.max_cells_log2
        return {"eps": eps, "delta": delta, "method": "modulus", "cells": len(modulus.cells)}, self.max_cells_log2

    def enclosure(self, width: Fraction) -> RatInterval:
        """The finest Darboux sandwich intersected with the Taylor quadrature."""
        finest = max(self._darboux) if self._darboux else 0
        sandwich = self.darboux(finest).sandwich
        taylor = quadrature(self.f, self.a, self.b, width, prec=self.prec)
        return taylor.intersect(sandwich) or taylor


def _result(enclosure: RatInterval, **kwargs) -> Verdict:
    value = enclosure.lo if enclosure.is_point() else None
    return Verdict.proved(value=value, enclosure=enclosure, **kwargs)


def classical_integral(f: Expr, a, b, sched=None, prec: Optional[int] = None,
                       max_cells_log2: Optional[int] = None) -> Verdict:
    """
    For every eps a delta such that every tagged partition of mesh at most
    delta has its Riemann sum within eps of L.

    Returns:
        Verdict: PROVED with the L-enclosure and one delta per eps, UNDECIDED
        when neither Darboux refinement nor the modulus certificate reaches eps

    Raises:
        DomainError: If f may be undefined anywhere on [a, b]
    """
    schedule = as_schedule(sched)
    engine = IntegralEngine(f, a, b, prec, max_cells_log2)
    certificates: List[Dict[str, object]] = []
    k = 0
    for eps in schedule:
        certificate, k = engine.delta_for(eps, k, schedule.last / 2)
        if certificate is None:
            logger.info(f"classical_integral({f}): UNDECIDED at eps={eps}")
            return Verdict.undecided(note=f"no mesh bound certified for eps={format_rat(eps)}",
                                     enclosure=engine.enclosure(schedule.last / 4))
        certificates.append(certificate)
    enclosure = engine.enclosure(schedule.last / 4)
    logger.info(f"classical_integral({f}) on [{engine.a}, {engine.b}]: PROVED, L in {enclosure}")
    return _result(enclosure, certificate=certificates, note=f"delta certified for every eps down to {format_rat(schedule.last)}")


def nsa_integral(f: Expr, a, b, mesh_probes: Optional[Sequence] = None, prec: Optional[int] = None,
                 width: Optional[Fraction] = None) -> Verdict:
    """
    small(mesh) implies Riemann sum ~ L.

    The modulus certificate bounds the error by delta * V when there are no
    irregular cells, which is infinitesimal at every infinitesimal mesh.
    """
    engine = IntegralEngine(f, a, b, prec)
    probes = list(ProbeSet.default().offsets if mesh_probes is None else mesh_probes)
    probes = [h for h in probes if h.sign() > 0]
    if not probes or not all(is_infinitesimal(h) for h in probes):
        raise ValueError("mesh probes must be positive infinitesimals")
    width = Fraction(1, 10 ** 6) if width is None else as_rat(width)
    modulus = engine.modulus(width)
    errors = {format_lc(h): modulus.error_bound_lc(h) for h in probes}
    if not modulus.regular or not all(is_infinitesimal(e) for e in errors.values()):
        return Verdict.undecided(note=f"no modulus certificate: cells {modulus.counts()}")
    engine.darboux(0)
    enclosure = engine.enclosure(width)
    logger.info(f"nsa_integral({f}): PROVED, error bound {format_rat(modulus.variation)} * mesh")
    return _result(
        enclosure,
        certificate={"modulus": modulus.variation, "cells": modulus.counts(),
                     "errors": {label: format_lc(e) for label, e in errors.items()}},
        note="Riemann sums at infinitesimal meshes are infinitely close to L",
    )


def ftc_check(F: Expr, a, b, sched=None, prec: Optional[int] = None) -> Verdict:
    """
    The integral of F' over [a, b] is F(b) - F(a).

    Raises:
        NotDifferentiable: If F contains abs
        DomainError: If F' may be undefined on [a, b]
    """
    schedule = as_schedule(sched)
    f = symbolic_diff(F)
    integral = classical_integral(f, a, b, schedule, prec)
    expected = eval_rat(F, as_rat(b), prec) - eval_rat(F, as_rat(a), prec)
    enclosure = integral.enclosure
    if enclosure is not None and enclosure.intersect(expected) is None:
        return Verdict.refuted(witness={"integral": enclosure, "F(b) - F(a)": expected},
                               note="integral of F' differs from F(b) - F(a)")
    if integral.status is not Status.PROVED:
        return integral
    if enclosure.width >= schedule.last:
        return Verdict.undecided(enclosure=enclosure, note=f"enclosure wider than {format_rat(schedule.last)}")
    value = expected.lo if expected.is_point() else None
    logger.info(f"ftc_check({F}): PROVED")
    return Verdict.proved(value=value, enclosure=enclosure, certificate=integral.certificate,
                          note=f"integral of {f} contains F(b) - F(a)")
