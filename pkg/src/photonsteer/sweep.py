"""Two-parameter sweeps over the feasibility quantities, with contour extraction.

A sweep evaluates one output quantity on a rectangular grid over two
experiment parameters, holding the rest fixed.  Threshold sweeps mark the
region where no physical preparation efficiency suffices with an
``unreachable`` sentinel, and a single iso-level contour can be traced by
linear interpolation (the published contour of interest sits at eta = 0.64).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import pi

import numpy as np

from .errors import DomainError
from .states import ExperimentParams
from .steering import evaluate_inequality

SWEEPABLE = ("eta", "chi", "eta_h", "eta_p")
QUANTITIES = ("sufficient_lhs", "necessary_lhs", "eta_threshold", "margin")

FLAG_OK = "ok"
FLAG_UNREACHABLE = "unreachable"


@dataclass(frozen=True)
class SweepAxis:
    param: str
    start: float
    stop: float
    steps: int

    def __post_init__(self) -> None:
        if self.param not in SWEEPABLE:
            raise DomainError(f"cannot sweep {self.param!r}; choose from {SWEEPABLE}")
        if self.steps < 2:
            raise DomainError(f"axis needs at least 2 steps, got {self.steps}")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    axis1: SweepAxis
    axis2: SweepAxis
    fixed: ExperimentParams
    quantity: str
    contour_level: float | None = None

    def __post_init__(self) -> None:
        if self.axis1.param == self.axis2.param:
            raise DomainError("sweep axes must be distinct parameters")
        if self.quantity not in QUANTITIES:
            raise DomainError(f"unknown sweep quantity {self.quantity!r}; choose from {QUANTITIES}")


@dataclass(frozen=True)
class SweepCell:
    value1: float
    value2: float
    value: float | None
    flag: str


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    cells: tuple[SweepCell, ...]
    contour: tuple[tuple[float, float], ...] | None


def eta_threshold(chi: float, eta_h: float, eta_p: float) -> float:
    """Preparation efficiency above which the unlimited-settings test violates.

    Solves the sufficient condition for eta; at chi = 0.5 this reduces to
    4 / (2 + pi*eta_h + 2*eta_p).  Returns +inf when the measurement terms
    vanish entirely.
    """
    denominator = chi + (1.0 - chi) * (eta_p + 0.5 * pi * eta_h)
    if denominator <= 0.0:
        return float("inf")
    return 1.0 / denominator


def _cell_value(quantity: str, params: ExperimentParams) -> tuple[float | None, str]:
    if quantity == "eta_threshold":
        threshold = eta_threshold(params.chi, params.eta_h, params.eta_p)
        if threshold > 1.0:
            return None, FLAG_UNREACHABLE
        return threshold, FLAG_OK
    report = evaluate_inequality(params)
    if quantity == "sufficient_lhs":
        return report.sufficient.lhs_value, FLAG_OK
    if quantity == "necessary_lhs":
        return report.necessary.lhs_value, FLAG_OK
    return report.margin, FLAG_OK


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate the grid cell by cell (deterministically, row-major)."""
    cells = []
    for v1 in spec.axis1.values():
        base = replace(spec.fixed, **{spec.axis1.param: float(v1)})
        for v2 in spec.axis2.values():
            params = replace(base, **{spec.axis2.param: float(v2)})
            value, flag = _cell_value(spec.quantity, params)
            cells.append(SweepCell(value1=float(v1), value2=float(v2), value=value, flag=flag))
    contour = None
    if spec.contour_level is not None:
        contour = extract_iso_contour(spec, tuple(cells), spec.contour_level)
    return SweepResult(spec=spec, cells=tuple(cells), contour=contour)


def extract_iso_contour(
    spec: SweepSpec, cells: tuple[SweepCell, ...], level: float
) -> tuple[tuple[float, float], ...]:
    """Trace quantity == level by linear interpolation along the second axis.

    One crossing is reported per first-axis column (the feasibility quantities
    are monotone along each axis, so this captures the whole curve); columns
    whose crossing falls in or beside an unreachable cell are skipped.
    """
    n2 = spec.axis2.steps
    points = []
    for column in range(spec.axis1.steps):
        column_cells = cells[column * n2 : (column + 1) * n2]
        for a, b in zip(column_cells, column_cells[1:]):
            if a.value is None or b.value is None:
                continue
            lo, hi = sorted((a.value, b.value))
            if not (lo <= level <= hi) or a.value == b.value:
                continue
            fraction = (level - a.value) / (b.value - a.value)
            points.append((a.value1, a.value2 + fraction * (b.value2 - a.value2)))
            break
    return tuple(points)


def sweep_csv_text(result: SweepResult) -> str:
    """Grid as CSV with the fixed header ``param1,param2,value,flag``.

    Unreachable cells carry ``nan`` in the value column so the file stays
    rectangular and numeric parsers degrade gracefully.
    """
    lines = ["param1,param2,value,flag"]
    for cell in result.cells:
        value = "nan" if cell.value is None else repr(cell.value)
        lines.append(f"{cell.value1!r},{cell.value2!r},{value},{cell.flag}")
    return "\n".join(lines) + "\n"
