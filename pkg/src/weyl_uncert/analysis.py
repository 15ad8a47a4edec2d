"""Parameter sweeps, extremum location, and figure datasets.

Scans evaluate the certainty functionals row by row over a family
parameter grid; extrema are located by a coarse grid followed by
golden-section refinement (the functionals are smooth but no derivative
formulas are assumed).  The figure datasets fix the grids and
configurations behind the four standard sweeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import families, fock
from .families import FamilySpec

FUNCTIONALS = ("U", "Uprime", "Udoubleprime", "V")

_COARSE_POINTS = 64
_PARAM_TOL = 1e-6
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ScanRow:
    param: float
    u: float
    u_prime: float
    u_double_prime: float
    v: float
    abs_number_char: float
    abs_phase_char: float
    abs_cross_char: float
    pi_k: float
    nbar: float


@dataclass(frozen=True)
class ScanTable:
    """Rows of functional values over a strictly ascending parameter grid."""

    family: str
    swept_parameter: str
    k: int
    phase_arg: float
    rows: tuple[ScanRow, ...]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows])

    def params(self) -> np.ndarray:
        return self.column("param")


@dataclass(frozen=True)
class ExtremumResult:
    param: float
    value: float
    kind: str
    functional: str
    bracket: tuple[float, float]
    iterations: int
    boundary: bool


def _row_at(
    template: FamilySpec,
    param_name: str,
    value: float,
    k: int,
    phi: float,
    max_nmax: int | None,
) -> ScanRow:
    try:
        spec = families.with_param(template, param_name, value)
        state = families.build(spec, max_nmax)
    except ValueError as err:
        raise ValueError(f"family build failed at {param_name} = {float(value)!r}: {err}") from err
    cs = fock.char_set(state, k, phi)
    rep = fock.report(state, k, phi)
    return ScanRow(
        param=float(value),
        u=rep.u,
        u_prime=rep.u_prime,
        u_double_prime=rep.u_double_prime,
        v=rep.v,
        abs_number_char=abs(cs.number_char),
        abs_phase_char=abs(cs.phase_char),
        abs_cross_char=abs(cs.cross_char),
        pi_k=cs.pi_k,
        nbar=fock.mean_photon(state),
    )


def scan(
    family_template: FamilySpec,
    param_name: str,
    lo: float,
    hi: float,
    steps: int,
    k: int,
    phi: float,
    log_spaced: bool = False,
    max_nmax: int | None = None,
) -> ScanTable:
    """Uniform sweep (linear, or log-spaced on request) with one row per grid point."""
    if steps < 2:
        raise ValueError(f"need at least 2 steps, got {steps}")
    if not lo < hi:
        raise ValueError(f"need lo < hi, got {lo!r} >= {hi!r}")
    grid = np.geomspace(lo, hi, steps) if log_spaced else np.linspace(lo, hi, steps)
    rows = tuple(_row_at(family_template, param_name, x, k, phi, max_nmax) for x in grid)
    return ScanTable(
        family=families.format_spec(family_template),
        swept_parameter=param_name,
        k=int(k),
        phase_arg=float(phi),
        rows=rows,
    )


_FIELD_OF_FUNCTIONAL = {
    "U": "u",
    "Uprime": "u_prime",
    "Udoubleprime": "u_double_prime",
    "V": "v",
}


def find_extremum(
    family_template: FamilySpec,
    param_name: str,
    functional: str,
    kind: str,
    lo: float,
    hi: float,
    k: int,
    phi: float,
    max_nmax: int | None = None,
) -> ExtremumResult:
    """Locate a min or max of one functional over [lo, hi].

    A 64-point coarse grid brackets the extremum (assumed unimodal on the
    interval), then golden-section refinement narrows the parameter to
    1e-6.  An extremum sitting on the interval boundary is reported with
    the boundary flag set instead of failing.
    """
    if functional not in _FIELD_OF_FUNCTIONAL:
        raise ValueError(f"functional must be one of {FUNCTIONALS}, got {functional!r}")
    if kind not in ("min", "max"):
        raise ValueError(f"kind must be 'min' or 'max', got {kind!r}")
    field = _FIELD_OF_FUNCTIONAL[functional]
    sign = 1.0 if kind == "min" else -1.0

    def f(x: float) -> float:
        return sign * getattr(_row_at(family_template, param_name, x, k, phi, max_nmax), field)

    grid = np.linspace(lo, hi, _COARSE_POINTS)
    values = [f(x) for x in grid]
    best = int(np.argmin(values))
    boundary = best in (0, _COARSE_POINTS - 1)
    a = grid[max(best - 1, 0)]
    b = grid[min(best + 1, _COARSE_POINTS - 1)]

    iterations = 0
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > _PARAM_TOL:
        iterations += 1
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
    param = (a + b) / 2.0
    value = sign * f(param)
    return ExtremumResult(
        param=float(param),
        value=float(value),
        kind=kind,
        functional=functional,
        bracket=(float(lo), float(hi)),
        iterations=iterations,
        boundary=boundary,
    )


FIGURE_IDS = (1, 2, 3, 4)

# Figure 2 sweeps the dimensionless product a*k^2.  Realizing it at k = 16
# with nbar = 400 keeps a <= 20/256 inside the family's validity window over
# the whole axis; at k = 1 the upper half of the axis would leave the wide,
# smooth regime the closed forms (and the figure) describe.
_FIG2_K = 16
_FIG2_NBAR = 400.0
_FIG3_A = 1.0 / 40.0  # number variance 10 = 1/(4a)
_FIG3_NBAR = 400.0


def figure_dataset(figure_id: int, max_nmax: int | None = None) -> ScanTable:
    """The dataset behind one of the four standard figures.

    1: phase-coherent sweep of |xi| in [0.01, 0.995], k=1, phi=pi.
    2: Gaussian b=0 sweep of a*k^2, log-spaced in [0.05, 20].
    3: Gaussian with number variance 10, sweep of b in [-0.5, 2.5], k=1.
    4: Bessel-eigenstate sweep of lambda in [0.1, 3], k=1, phi=pi.
    """
    if figure_id == 1:
        return scan(
            families.PhaseCoherent(0.5), "xi", 0.01, 0.995, 199, 1, math.pi, max_nmax=max_nmax
        )
    if figure_id == 2:
        kk = float(_FIG2_K * _FIG2_K)
        table = scan(
            families.GaussianNumber(_FIG2_NBAR, 0.01, 0.0),
            "a",
            0.05 / kk,
            20.0 / kk,
            160,
            _FIG2_K,
            math.pi / _FIG2_K,
            log_spaced=True,
            max_nmax=max_nmax,
        )
        rows = tuple(replace(r, param=r.param * kk) for r in table.rows)
        return replace(table, swept_parameter="ak2", rows=rows)
    if figure_id == 3:
        return scan(
            families.GaussianNumber(_FIG3_NBAR, _FIG3_A, 0.0),
            "b",
            -0.5,
            2.5,
            151,
            1,
            math.pi,
            max_nmax=max_nmax,
        )
    if figure_id == 4:
        return scan(
            families.BesselEigenstate(1.0), "lambda", 0.1, 3.0, 146, 1, math.pi, max_nmax=max_nmax
        )
    raise ValueError(f"unknown figure id {figure_id!r}; expected one of {FIGURE_IDS}")
