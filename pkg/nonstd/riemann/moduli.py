"""
Moduli of Riemann integrability.

[a, b] is covered by cells of three kinds. On a MONOTONE cell the total
variation is |f(r) - f(l)|; on a LIPSCHITZ cell it is at most sup|f'| times
the width; an IRREGULAR cell only has an oscillation bound. For every tagged
partition of mesh at most delta the Riemann sum is within

    delta * V + sum over irregular cells of (w + 2 delta) * osc

of the integral, V being the summed variation of the regular cells.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from nonstd.core.lc_number import LCNumber, lc_add, lc_mul
from nonstd.core.rat_interval import RatInterval
from nonstd.errors import ExprError, LCError
from nonstd.expr.evaluate import eval_dual, eval_interval, eval_rat
from nonstd.expr.monotone import monotone_on
from nonstd.expr.nodes import Expr

logger = logging.getLogger(__name__)

INITIAL_CELLS = 16
MAX_IRREGULAR_SPLITS = 12


class CellKind(str, Enum):
    MONOTONE = "monotone"
    LIPSCHITZ = "lipschitz"
    IRREGULAR = "irregular"


@dataclass(frozen=True)
class ModulusCell:
    """
    Attributes:
        cell (RatInterval): The cell
        kind (CellKind): How the cell is bounded
        measure (Fraction): Variation bound (regular) or oscillation bound (irregular)
    """
    cell: RatInterval
    kind: CellKind
    measure: Fraction


@dataclass(frozen=True)
class ModulusCertificate:
    """
    Attributes:
        cells (Tuple[ModulusCell, ...]): Cover of [a, b]
        variation (Fraction): Summed variation V of the regular cells
        irregular_mass (Fraction): Sum of w * osc over irregular cells
        irregular_oscillation (Fraction): Sum of osc over irregular cells
    """
    cells: Tuple[ModulusCell, ...]
    variation: Fraction
    irregular_mass: Fraction
    irregular_oscillation: Fraction

    @property
    def regular(self) -> bool:
        return not any(c.kind is CellKind.IRREGULAR for c in self.cells)

    def error_bound(self, delta: Fraction) -> Fraction:
        """Riemann sum error for any tagged partition of mesh at most delta."""
        return delta * self.variation + self.irregular_mass + 2 * delta * self.irregular_oscillation

    def error_bound_lc(self, delta: LCNumber) -> LCNumber:
        """The same bound at an infinitesimal mesh."""
        order = delta.order
        regular = lc_mul(delta, LCNumber.constant(self.variation + 2 * self.irregular_oscillation, order))
        return lc_add(regular, LCNumber.constant(self.irregular_mass, order))

    def delta_for(self, eps: Fraction) -> Optional[Fraction]:
        """A mesh bound with error_bound(delta) < eps, if the irregular mass allows one."""
        room = eps - self.irregular_mass
        if room <= 0:
            return None
        slope = self.variation + 2 * self.irregular_oscillation
        if slope == 0:
            return min(c.cell.width for c in self.cells)
        return min(room / slope / 2, min(c.cell.width for c in self.cells))

    def counts(self) -> dict:
        return {kind.value: sum(1 for c in self.cells if c.kind is kind) for kind in CellKind}


def classify_cell(f: Expr, cell: RatInterval, prec: int) -> ModulusCell:
    """
    Classify one cell.

    Raises:
        DomainError: If f may be undefined on the cell
    """
    direction = monotone_on(f, cell, prec)
    if direction is not None:
        change = eval_rat(f, cell.hi, prec) - eval_rat(f, cell.lo, prec)
        return ModulusCell(cell, CellKind.MONOTONE, change.magnitude)
    try:
        slope = eval_dual(f, cell, prec).slope
        return ModulusCell(cell, CellKind.LIPSCHITZ, slope.magnitude * cell.width)
    except (ExprError, LCError, ZeroDivisionError):
        pass
    values = eval_interval(f, cell, prec, strict=True)
    return ModulusCell(cell, CellKind.IRREGULAR, values.width)


def modulus_certificate(f: Expr, a: Fraction, b: Fraction, prec: int, target: Fraction) -> ModulusCertificate:
    """
    Cover [a, b] and bisect irregular cells until their mass is below target.

    Raises:
        DomainError: If f may be undefined anywhere on [a, b]
    """
    step = (b - a) / INITIAL_CELLS
    cells: List[ModulusCell] = [
        classify_cell(f, RatInterval(a + step * i, a + step * (i + 1)), prec) for i in range(INITIAL_CELLS)
    ]
    for _ in range(MAX_IRREGULAR_SPLITS):
        mass = sum(c.cell.width * c.measure for c in cells if c.kind is CellKind.IRREGULAR)
        if mass < target:
            break
        refined: List[ModulusCell] = []
        for c in cells:
            if c.kind is CellKind.IRREGULAR:
                refined.extend(classify_cell(f, half, prec) for half in c.cell.bisect())
            else:
                refined.append(c)
        cells = refined
    irregular = [c for c in cells if c.kind is CellKind.IRREGULAR]
    certificate = ModulusCertificate(
        cells=tuple(cells),
        variation=sum((c.measure for c in cells if c.kind is not CellKind.IRREGULAR), Fraction(0)),
        irregular_mass=sum((c.cell.width * c.measure for c in irregular), Fraction(0)),
        irregular_oscillation=sum((c.measure for c in irregular), Fraction(0)),
    )
    logger.debug(f"Modulus of {f} on [{a}, {b}]: {certificate.counts()} V={certificate.variation}")
    return certificate
