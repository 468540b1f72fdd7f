"""Finite-difference residuals of the damped Timoshenko system on uniform grids.

    eq1 = rho1 phi_tt - k (phi_xx + psi_x)
    eq2 = rho2 psi_tt - chi'(psi_x) psi_xx + k (phi_x + psi) + d psi_t

All derivatives are second-order central differences; the norms are taken
over interior points only.
"""

from dataclasses import dataclass, field
import json
import math
from pathlib import Path

import numpy as np
from scipy.interpolate import RectBivariateSpline

from . import jsonio
from .chi import ChiSpec
from .errors import ConfigError, GridTooCoarse
from .fields import SolutionField

MIN_POINTS = 5
EXACT_FLOOR = 1e-9


@dataclass
class GridSolution:
    t0: float
    t1: float
    x0: float
    x1: float
    phi: np.ndarray
    psi: np.ndarray
    margin: int = 1

    def __post_init__(self):
        self.phi = np.asarray(self.phi, float)
        self.psi = np.asarray(self.psi, float)
        if self.phi.ndim != 2 or self.phi.shape != self.psi.shape:
            raise ConfigError("phi and psi must be equal-shaped 2-D arrays")
        if min(self.phi.shape) < MIN_POINTS:
            raise GridTooCoarse(f"grid {self.phi.shape} has fewer than {MIN_POINTS} points per axis")
        if not (self.t1 > self.t0 and self.x1 > self.x0):
            raise ConfigError("window must satisfy t0 < t1 and x0 < x1")
        if not (np.all(np.isfinite(self.phi)) and np.all(np.isfinite(self.psi))):
            raise ConfigError("grid values must be finite")

    @property
    def nt(self):
        return self.phi.shape[0]

    @property
    def nx(self):
        return self.phi.shape[1]

    @property
    def t(self):
        return np.linspace(self.t0, self.t1, self.nt)

    @property
    def x(self):
        return np.linspace(self.x0, self.x1, self.nx)

    @property
    def ht(self):
        return (self.t1 - self.t0) / (self.nt - 1)

    @property
    def hx(self):
        return (self.x1 - self.x0) / (self.nx - 1)

    @property
    def window(self):
        return (self.t0, self.t1, self.x0, self.x1)

    def meta(self):
        return {"t0": self.t0, "t1": self.t1, "x0": self.x0, "x1": self.x1, "nt": self.nt, "nx": self.nx}


@dataclass
class ResidualReport:
    eq1_max: float
    eq1_l2: float
    eq2_max: float
    eq2_l2: float
    h_t: float
    h_x: float
    margin: int
    nt: int = 0
    nx: int = 0

    @property
    def max(self):
        return max(self.eq1_max, self.eq2_max)

    def to_dict(self):
        return {k: getattr(self, k) for k in
                ("eq1_max", "eq1_l2", "eq2_max", "eq2_l2", "h_t", "h_x", "margin", "nt", "nx")}


def sample(fld, window, nt, nx):
    """Sample a SolutionField on a uniform grid including the window edges."""
    t0, t1, x0, x1 = (float(v) for v in window)
    if nt < MIN_POINTS or nx < MIN_POINTS:
        raise GridTooCoarse(f"need at least {MIN_POINTS} points per axis")
    t = np.linspace(t0, t1, nt)
    x = np.linspace(x0, x1, nx)
    tt, xx = np.meshgrid(t, x, indexing="ij")
    phi, psi = fld(tt, xx)
    return GridSolution(t0, t1, x0, x1, np.array(phi), np.array(psi), margin=max(1, fld.margin))


def grid_field(g):
    """Bicubic interpolant of a GridSolution, valid on the grid window."""
    sp_phi = RectBivariateSpline(g.t, g.x, g.phi, kx=3, ky=3, s=0)
    sp_psi = RectBivariateSpline(g.t, g.x, g.psi, kx=3, ky=3, s=0)
    return SolutionField(lambda t, x: sp_phi.ev(t, x), lambda t, x: sp_psi.ev(t, x),
                         window=g.window, provenance="grid", margin=2)


def derivatives(g):
    """Central differences on indices 1..n-2 of each axis."""
    ht, hx = g.ht, g.hx
    phi, psi = g.phi, g.psi
    c = (slice(1, -1), slice(1, -1))
    out = {
        "phi_tt": (phi[2:, 1:-1] - 2.0 * phi[c] + phi[:-2, 1:-1]) / ht ** 2,
        "phi_xx": (phi[1:-1, 2:] - 2.0 * phi[c] + phi[1:-1, :-2]) / hx ** 2,
        "phi_x": (phi[1:-1, 2:] - phi[1:-1, :-2]) / (2.0 * hx),
        "psi_tt": (psi[2:, 1:-1] - 2.0 * psi[c] + psi[:-2, 1:-1]) / ht ** 2,
        "psi_xx": (psi[1:-1, 2:] - 2.0 * psi[c] + psi[1:-1, :-2]) / hx ** 2,
        "psi_x": (psi[1:-1, 2:] - psi[1:-1, :-2]) / (2.0 * hx),
        "psi_t": (psi[2:, 1:-1] - psi[:-2, 1:-1]) / (2.0 * ht),
        "psi": psi[c],
    }
    return out


def residual_fields(g, chi, params, margin=None):
    """Pointwise residual arrays (eq1, eq2) on the interior."""
    margin = g.margin if margin is None else int(margin)
    if margin < 1:
        raise ConfigError("margin must be >= 1")
    if min(g.nt, g.nx) < 2 * margin + 1 or min(g.nt, g.nx) < MIN_POINTS:
        raise GridTooCoarse("grid too small for the requested margin")
    dv = derivatives(g)
    eq1 = params.rho1 * dv["phi_tt"] - params.k * (dv["phi_xx"] + dv["psi_x"])
    eq2 = (params.rho2 * dv["psi_tt"] - chi.d1(dv["psi_x"]) * dv["psi_xx"]
           + params.k * (dv["phi_x"] + dv["psi"]) + params.d * dv["psi_t"])
    trim = margin - 1
    if trim:
        eq1 = eq1[trim:-trim, trim:-trim]
        eq2 = eq2[trim:-trim, trim:-trim]
    return eq1, eq2


def _rms(r):
    # np.mean uses pairwise summation, so the result does not depend on thread count
    return float(math.sqrt(np.mean(r * r)))


def pde_residual(g, chi=None, params=None, margin=None):
    if params is None:
        raise ConfigError("params are required")
    chi = ChiSpec.linear(params.b) if chi is None else chi
    eq1, eq2 = residual_fields(g, chi, params, margin)
    m = g.margin if margin is None else int(margin)
    return ResidualReport(float(np.max(np.abs(eq1))), _rms(eq1), float(np.max(np.abs(eq2))), _rms(eq2),
                          g.ht, g.hx, m, g.nt, g.nx)


@dataclass
class ConvergenceStudy:
    reports: list
    sizes: list
    orders: list = field(default_factory=list)
    richardson: list = field(default_factory=list)
    exact: bool = False
    floor: float = EXACT_FLOOR

    @property
    def finest(self):
        return self.reports[-1]

    @property
    def last_order(self):
        return self.orders[-1] if self.orders else None

    def to_dict(self):
        return {
            "sizes": [list(s) for s in self.sizes],
            "reports": [r.to_dict() for r in self.reports],
            "orders": ["exact" if o is None else o for o in self.orders],
            "richardson_orders": [None if o is None else o for o in self.richardson],
            "exact": self.exact,
            "floor": self.floor,
        }

    def table(self):
        lines = [f"{'nt':>6} {'nx':>6} {'eq1_max':>12} {'eq2_max':>12} {'order':>8}"]
        for i, (r, (nt, nx)) in enumerate(zip(self.reports, self.sizes)):
            o = "" if i == 0 else ("exact" if self.orders[i - 1] is None else f"{self.orders[i - 1]:.3f}")
            lines.append(f"{nt:>6} {nx:>6} {r.eq1_max:>12.4e} {r.eq2_max:>12.4e} {o:>8}")
        return "\n".join(lines)


def noise_floor(g):
    """Round-off level of a second difference on this grid."""
    scale = max(1.0, float(np.max(np.abs(g.phi))), float(np.max(np.abs(g.psi))))
    h = min(g.ht, g.hx)
    return max(EXACT_FLOOR, 64.0 * np.finfo(float).eps * scale / (h * h))


def convergence_study(fld, chi, params, window, levels=3, base=(101, 101), metric="max"):
    """Residuals on grids n, 2n-1, 4n-3, ... and the observed orders.

    ``orders`` are log2 ratios of successive residual norms (toward zero);
    None marks a pair that is already below the round-off floor. When at
    least three levels exist, ``richardson`` holds log2((r1-r2)/(r2-r3)),
    the order toward an unknown nonzero limit.
    """
    if levels < 3:
        raise ConfigError("convergence study needs at least 3 levels")
    nt, nx = base
    reports, sizes, values, floors = [], [], [], []
    for _ in range(levels):
        g = sample(fld, window, nt, nx)
        r = pde_residual(g, chi, params)
        reports.append(r)
        sizes.append((nt, nx))
        values.append(r.max if metric == "max" else max(r.eq1_l2, r.eq2_l2))
        floors.append(noise_floor(g))
        nt, nx = 2 * nt - 1, 2 * nx - 1
    orders = []
    for i in range(levels - 1):
        if values[i] <= floors[i] or values[i + 1] <= floors[i + 1]:
            orders.append(None)
        else:
            orders.append(float(math.log2(values[i] / values[i + 1])))
    rich = []
    for i in range(levels - 2):
        d1, d2 = values[i] - values[i + 1], values[i + 1] - values[i + 2]
        rich.append(float(math.log2(d1 / d2)) if d1 > 0 and d2 > 0 else None)
    exact = all(v <= f for v, f in zip(values, floors))
    return ConvergenceStudy(reports, sizes, orders, rich, exact, max(floors))


# ----------------------------------------------------------------------- I/O

def sidecar_path(path):
    path = Path(path)
    return path.with_name(path.stem + ".meta.json")


def write_grid_csv(g, path):
    """CSV with header t,x,phi,psi (row-major in t then x) plus a metadata sidecar."""
    path = Path(path)
    tt, xx = np.meshgrid(g.t, g.x, indexing="ij")
    data = np.column_stack([tt.ravel(), xx.ravel(), g.phi.ravel(), g.psi.ravel()])
    np.savetxt(path, data, delimiter=",", header="t,x,phi,psi", comments="", fmt="%.17g")
    jsonio.dump(g.meta(), sidecar_path(path))
    return path


def read_grid_csv(path, meta_path=None):
    path = Path(path)
    meta_path = sidecar_path(path) if meta_path is None else Path(meta_path)
    try:
        meta = json.loads(meta_path.read_text())
    except FileNotFoundError as exc:
        raise ConfigError(f"field 'grid': missing metadata sidecar {meta_path}") from exc
    for key in ("t0", "t1", "x0", "x1", "nt", "nx"):
        if key not in meta:
            raise ConfigError(f"field '{key}': missing from {meta_path}")
    with open(path) as fh:
        header = fh.readline().strip().replace(" ", "")
    if header != "t,x,phi,psi":
        raise ConfigError(f"field 'grid': bad CSV header {header!r}")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    nt, nx = int(meta["nt"]), int(meta["nx"])
    if data.shape != (nt * nx, 4):
        raise ConfigError(f"field 'grid': expected {nt * nx} rows, found {data.shape[0]}")
    g = GridSolution(float(meta["t0"]), float(meta["t1"]), float(meta["x0"]), float(meta["x1"]),
                     data[:, 2].reshape(nt, nx), data[:, 3].reshape(nt, nx))
    tol = 1e-9 * max(1.0, abs(g.t1 - g.t0), abs(g.x1 - g.x0))
    if (np.max(np.abs(data[:, 0].reshape(nt, nx) - g.t[:, None])) > tol
            or np.max(np.abs(data[:, 1].reshape(nt, nx) - g.x[None, :])) > tol):
        raise ConfigError("field 'grid': coordinates are not the uniform grid described by the sidecar")
    return g


def write_report_json(report, path):
    jsonio.dump(report.to_dict(), path)
