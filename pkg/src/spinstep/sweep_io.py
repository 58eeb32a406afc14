"""Energy-grid sweeps and deterministic CSV/JSON/SVG emission.

A sweep evaluates the spin-resolved step coefficients over a grid of E/V0
ratios and emits the rows as data files.  Emission is deterministic: the
same spec always produces byte-identical output.  Numbers are printed with
17 significant digits, which round-trips IEEE doubles exactly, so emitted
files double as golden files.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .eigensystem import ELECTRON_MASS_EV, Spin
from .scattering import (
    Branch,
    StepProblem,
    ThresholdDegeneracyError,
    coefficients,
    qm_reference,
    solve_amplitudes_linear,
)

__all__ = [
    "ROW_SUM_TOL",
    "THRESHOLD_BAND",
    "Spacing",
    "Regime",
    "SweepSpec",
    "PropagatingRow",
    "EvanescentRow",
    "SweepResult",
    "run_sweep",
    "format_float",
    "emit_csv",
    "emit_json",
    "emit_svg",
    "PROPAGATING_CSV_HEADER",
    "EVANESCENT_CSV_HEADER",
]

# Every emitted row must satisfy its unit-sum invariant this tightly.
ROW_SUM_TOL = 1e-12

# Grid points with |E/V0 - 1| inside this band are skipped, not errors.
THRESHOLD_BAND = 1e-9

PROPAGATING_CSV_HEADER = "E_eV,E_over_V0,T1,T2,R1,R2,sum,T_QM,R_QM"
EVANESCENT_CSV_HEADER = "E_eV,E_over_V0,R1_prime,R2_prime,sum"


class Spacing(Enum):
    LINEAR = "linear"
    LOG = "log"


class Regime(Enum):
    PROPAGATING = "propagating"
    EVANESCENT = "evanescent"
    AUTO = "auto"


@dataclass(frozen=True)
class SweepSpec:
    """Description of one energy sweep.

    The grid ranges over x = E/V0 from e_over_v0_min to e_over_v0_max with
    `points` samples.  An explicit regime constrains the range to its side
    of x = 1; AUTO admits ranges straddling 1 and splits the rows.
    """

    v0: float
    mass: float = ELECTRON_MASS_EV
    e_over_v0_min: float = 1.001
    e_over_v0_max: float = 10.0
    points: int = 100
    spacing: Spacing = Spacing.LOG
    regime: Regime = Regime.AUTO
    incident_spin: Spin = Spin.UP

    def __post_init__(self):
        if not (self.v0 > 0 and np.isfinite(self.v0)):
            raise ValueError(f"v0 must be positive and finite, got {self.v0}")
        if not (self.mass > 0 and np.isfinite(self.mass)):
            raise ValueError(f"mass must be positive and finite, got {self.mass}")
        if not self.e_over_v0_min < self.e_over_v0_max:
            raise ValueError(
                f"grid range is empty: [{self.e_over_v0_min}, {self.e_over_v0_max}]"
            )
        if self.e_over_v0_min <= 0:
            raise ValueError("e_over_v0_min must be positive")
        if self.points < 2:
            raise ValueError(f"points must be >= 2, got {self.points}")
        if self.regime is Regime.PROPAGATING and self.e_over_v0_min <= 1.0:
            raise ValueError("propagating sweeps require e_over_v0_min > 1")
        if self.regime is Regime.EVANESCENT and self.e_over_v0_max >= 1.0:
            raise ValueError("evanescent sweeps require e_over_v0_max < 1")

    def grid(self) -> np.ndarray:
        if self.spacing is Spacing.LINEAR:
            return np.linspace(self.e_over_v0_min, self.e_over_v0_max, self.points)
        return np.logspace(
            np.log10(self.e_over_v0_min), np.log10(self.e_over_v0_max), self.points
        )


@dataclass(frozen=True)
class PropagatingRow:
    e_ev: float
    e_over_v0: float
    t1: float
    t2: float
    r1: float
    r2: float
    total: float
    t_qm: float
    r_qm: float

    CSV_HEADER = PROPAGATING_CSV_HEADER

    def csv_values(self):
        return (
            self.e_ev, self.e_over_v0, self.t1, self.t2, self.r1, self.r2,
            self.total, self.t_qm, self.r_qm,
        )

    def json_dict(self) -> dict:
        return {
            "e_ev": self.e_ev,
            "e_over_v0": self.e_over_v0,
            "t1": self.t1,
            "t2": self.t2,
            "r1": self.r1,
            "r2": self.r2,
            "sum": self.total,
            "t_qm": self.t_qm,
            "r_qm": self.r_qm,
        }


@dataclass(frozen=True)
class EvanescentRow:
    e_ev: float
    e_over_v0: float
    r1_prime: float
    r2_prime: float
    total: float

    CSV_HEADER = EVANESCENT_CSV_HEADER

    def csv_values(self):
        return (self.e_ev, self.e_over_v0, self.r1_prime, self.r2_prime, self.total)

    def json_dict(self) -> dict:
        return {
            "e_ev": self.e_ev,
            "e_over_v0": self.e_over_v0,
            "r1_prime": self.r1_prime,
            "r2_prime": self.r2_prime,
            "sum": self.total,
        }


@dataclass(frozen=True)
class SweepResult:
    """Rows in strictly increasing energy plus grid bookkeeping."""

    spec: SweepSpec
    rows: tuple
    skipped: int

    @property
    def propagating_rows(self) -> tuple:
        return tuple(r for r in self.rows if isinstance(r, PropagatingRow))

    @property
    def evanescent_rows(self) -> tuple:
        return tuple(r for r in self.rows if isinstance(r, EvanescentRow))


def _evaluate_point(spec: SweepSpec, x: float):
    energy = x * spec.v0
    problem = StepProblem(
        energy=energy, v0=spec.v0, mass=spec.mass, incident_spin=spec.incident_spin
    )
    amps = solve_amplitudes_linear(problem)
    coeff = coefficients(problem, amps)
    if problem.branch is Branch.PROPAGATING:
        t_qm, r_qm = qm_reference(energy, spec.v0)
        row = PropagatingRow(
            e_ev=energy,
            e_over_v0=x,
            t1=coeff.t1,
            t2=coeff.t2,
            r1=coeff.r1,
            r2=coeff.r2,
            total=coeff.t1 + coeff.t2 + coeff.r1 + coeff.r2,
            t_qm=t_qm,
            r_qm=r_qm,
        )
    else:
        row = EvanescentRow(
            e_ev=energy,
            e_over_v0=x,
            r1_prime=coeff.r1_prime,
            r2_prime=coeff.r2_prime,
            total=coeff.r1_prime + coeff.r2_prime,
        )
    if abs(row.total - 1.0) > ROW_SUM_TOL:
        raise ValueError(
            f"row at E/V0 = {x!r} violates the unit-sum invariant: {row.total!r}"
        )
    return row


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate the sweep grid through the linear-solve scattering path.

    Grid points inside the threshold band |E/V0 - 1| <= THRESHOLD_BAND are
    skipped and counted; a sweep whose every point is degenerate raises
    ThresholdDegeneracyError.  Rows come out in strictly increasing energy,
    each satisfying its unit-sum invariant to ROW_SUM_TOL.
    """
    rows = []
    skipped = 0
    for x in spec.grid():
        x = float(x)
        if abs(x - 1.0) <= THRESHOLD_BAND:
            skipped += 1
            continue
        rows.append(_evaluate_point(spec, x))
    if not rows:
        raise ThresholdDegeneracyError(
            "every grid point fell inside the threshold band around E = V0"
        )
    return SweepResult(spec=spec, rows=tuple(rows), skipped=skipped)


def format_float(value: float) -> str:
    """17-significant-digit decimal rendering (lossless double round-trip)."""
    return format(float(value), ".17g")


def _homogeneous_rows(rows) -> type:
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to emit")
    kind = type(rows[0])
    if kind not in (PropagatingRow, EvanescentRow):
        raise TypeError(f"unsupported row type {kind.__name__}")
    if any(type(r) is not kind for r in rows):
        raise ValueError(
            "mixed propagating/evanescent rows cannot share one file; "
            "emit each regime separately"
        )
    return kind


def _validate_rows(rows):
    for row in rows:
        if abs(row.total - 1.0) > ROW_SUM_TOL:
            raise ValueError(
                f"row at E = {row.e_ev!r} violates the unit-sum invariant; "
                "emission aborted"
            )


def _write_text(path, text: str):
    Path(path).write_text(text, encoding="utf-8")


def emit_csv(rows, path) -> None:
    """Write rows as CSV with the exact per-regime header line.

    All rows are validated before anything is written, so a violating row
    never leaves a partial file behind.
    """
    kind = _homogeneous_rows(rows)
    _validate_rows(rows)
    lines = [kind.CSV_HEADER]
    lines.extend(",".join(format_float(v) for v in row.csv_values()) for row in rows)
    _write_text(path, "\n".join(lines) + "\n")


def emit_json(rows, path) -> None:
    """Write rows as a JSON array of row objects (17-significant-digit
    numbers, deterministic key order)."""
    _homogeneous_rows(rows)
    _validate_rows(rows)
    parts = []
    for row in rows:
        fields = ", ".join(
            f'"{key}": {format_float(value)}' for key, value in row.json_dict().items()
        )
        parts.append("  {" + fields + "}")
    _write_text(path, "[\n" + ",\n".join(parts) + "\n]\n")


_SPIN_UP_COLOR = "red"
_SPIN_DOWN_COLOR = "blue"
_NEUTRAL_COLORS = ("black", "green", "orange", "purple")

_COLUMN_COLOR = {
    "t1": _SPIN_UP_COLOR,
    "r1": _SPIN_UP_COLOR,
    "r1_prime": _SPIN_UP_COLOR,
    "t2": _SPIN_DOWN_COLOR,
    "r2": _SPIN_DOWN_COLOR,
    "r2_prime": _SPIN_DOWN_COLOR,
}


def emit_svg(rows, path, columns) -> None:
    """Write a self-contained SVG line chart of the selected columns against
    E/V0 (fixed 800x600 viewBox, no external assets).

    Spin-up columns (t1, r1, r1_prime) draw in red, spin-down columns in
    blue, anything else in neutral colors.
    """
    kind = _homogeneous_rows(rows)
    _validate_rows(rows)
    columns = [c.lower() for c in columns]
    if not columns:
        raise ValueError("no columns selected")
    valid = set(rows[0].json_dict()) - {"e_ev", "e_over_v0"}
    unknown = [c for c in columns if c not in valid]
    if unknown:
        raise ValueError(f"unknown columns for {kind.__name__}: {unknown}")

    width, height = 800, 600
    margin_left, margin_right, margin_top, margin_bottom = 70, 20, 40, 50
    plot_w = width - margin_left - margin_right
    plot_h = height - margin_top - margin_bottom

    xs = [row.e_over_v0 for row in rows]
    x_min, x_max = min(xs), max(xs)
    x_span = (x_max - x_min) or 1.0
    series = {c: [row.json_dict()[c] for row in rows] for c in columns}
    y_min = min(min(v) for v in series.values())
    y_max = max(max(v) for v in series.values())
    y_min = min(y_min, 0.0)
    y_max = max(y_max, 1.0)
    y_span = (y_max - y_min) or 1.0

    def px(x):
        return margin_left + (x - x_min) / x_span * plot_w

    def py(y):
        return margin_top + plot_h - (y - y_min) / y_span * plot_h

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{margin_left}" y1="{margin_top + plot_h}" '
        f'x2="{margin_left + plot_w}" y2="{margin_top + plot_h}" stroke="black"/>',
        f'<line x1="{margin_left}" y1="{margin_top}" '
        f'x2="{margin_left}" y2="{margin_top + plot_h}" stroke="black"/>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        y_val = y_min + frac * y_span
        y_pix = py(y_val)
        x_val = x_min + frac * x_span
        x_pix = px(x_val)
        lines.append(
            f'<line x1="{margin_left - 4}" y1="{y_pix:.2f}" x2="{margin_left}" '
            f'y2="{y_pix:.2f}" stroke="black"/>'
        )
        lines.append(
            f'<text x="{margin_left - 8}" y="{y_pix + 4:.2f}" text-anchor="end" '
            f'font-size="12">{y_val:.2f}</text>'
        )
        lines.append(
            f'<line x1="{x_pix:.2f}" y1="{margin_top + plot_h}" x2="{x_pix:.2f}" '
            f'y2="{margin_top + plot_h + 4}" stroke="black"/>'
        )
        lines.append(
            f'<text x="{x_pix:.2f}" y="{margin_top + plot_h + 18}" '
            f'text-anchor="middle" font-size="12">{x_val:.3g}</text>'
        )
    lines.append(
        f'<text x="{margin_left + plot_w / 2:.0f}" y="{height - 12}" '
        f'text-anchor="middle" font-size="13">E / V0</text>'
    )
    neutral = iter(_NEUTRAL_COLORS)
    for idx, column in enumerate(columns):
        color = _COLUMN_COLOR.get(column) or next(neutral, "gray")
        points = " ".join(
            f"{px(x):.3f},{py(y):.3f}" for x, y in zip(xs, series[column])
        )
        lines.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{points}"/>'
        )
        legend_y = margin_top + 16 * (idx + 1)
        lines.append(
            f'<line x1="{margin_left + plot_w - 90}" y1="{legend_y - 4}" '
            f'x2="{margin_left + plot_w - 64}" y2="{legend_y - 4}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        lines.append(
            f'<text x="{margin_left + plot_w - 58}" y="{legend_y}" '
            f'font-size="12">{column}</text>'
        )
    lines.append("</svg>")
    _write_text(path, "\n".join(lines) + "\n")
