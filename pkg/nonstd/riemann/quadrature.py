"""
Taylor cell quadrature.

On a cell with midpoint m and half width h, the integral of f is the
integral of its Taylor polynomial of order K at m plus a remainder bounded
by an enclosure of the (K+1)-th derivative over the cell. Exact for
polynomials of degree at most K.
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional

from nonstd.core.rat_interval import RatInterval
from nonstd.errors import ExprError, NotDifferentiable
from nonstd.expr.diff import nth_derivative
from nonstd.expr.evaluate import eval_interval, eval_rat
from nonstd.expr.nodes import Expr

logger = logging.getLogger(__name__)

MAX_SPLIT_DEPTH = 12


class TaylorQuadrature:
    """
    Certified enclosure of the integral of f over [a, b].

    Attributes:
        f (Expr): The integrand
        order (int): Taylor order K
        prec (int): Bits for transcendental enclosures
    """

    def __init__(self, f: Expr, order: int, prec: int):
        self.f = f
        self.order = order
        self.prec = prec
        self.derivatives: Optional[List[Expr]] = self._derivatives()

    def _derivatives(self) -> Optional[List[Expr]]:
        try:
            return [nth_derivative(self.f, k) for k in range(self.order + 2)]
        except NotDifferentiable:
            logger.debug(f"No Taylor quadrature for {self.f}: not differentiable")
            return None

    def _darboux_cell(self, cell: RatInterval) -> RatInterval:
        return eval_interval(self.f, cell, self.prec, strict=True) * cell.width

    def _taylor_cell(self, cell: RatInterval) -> RatInterval:
        m, h = cell.mid, cell.radius
        total = RatInterval.point(0)
        for k in range(0, self.order + 1, 2):
            moment = 2 * h ** (k + 1) / (k + 1)
            total = total + eval_rat(self.derivatives[k], m, self.prec) * (moment / math.factorial(k))
        K1 = self.order + 1
        remainder = eval_interval(self.derivatives[K1], cell, self.prec, strict=True).magnitude
        spread = remainder * 2 * h ** (K1 + 1) / ((K1 + 1) * math.factorial(K1))
        return total + RatInterval(-spread, spread)

    def cell(self, cell: RatInterval) -> RatInterval:
        """Taylor enclosure, falling back to the range enclosure times the width."""
        darboux = self._darboux_cell(cell)
        if self.derivatives is None:
            return darboux
        try:
            taylor = self._taylor_cell(cell)
        except ExprError:
            return darboux
        return taylor.intersect(darboux) or taylor

    def integrate(self, a: Fraction, b: Fraction, cells: int, width: Fraction) -> RatInterval:
        """
        Sum of cell enclosures, splitting cells whose share of the width is exceeded.

        Raises:
            DomainError: If f may be undefined anywhere on [a, b]
        """
        total = RatInterval.point(0)
        length = b - a
        step = length / cells
        stack = [(RatInterval(a + step * i, a + step * (i + 1)), 0) for i in range(cells)]
        while stack:
            cell, depth = stack.pop()
            enclosure = self.cell(cell)
            if enclosure.width > width * cell.width / length and depth < MAX_SPLIT_DEPTH:
                left, right = cell.bisect()
                stack.extend(((right, depth + 1), (left, depth + 1)))
                continue
            total = total + enclosure
        return total


def quadrature(f: Expr, a, b, width: Fraction, order: Optional[int] = None, cells: Optional[int] = None,
               prec: Optional[int] = None) -> RatInterval:
    """Certified enclosure of the integral of f over [a, b] aiming at the given width."""
    from nonstd.config import get_settings
    settings = get_settings()
    order = settings.quadrature_order if order is None else order
    cells = settings.quadrature_cells if cells is None else cells
    prec = settings.prec if prec is None else prec
    return TaylorQuadrature(f, order, prec).integrate(Fraction(a), Fraction(b), cells, width)
