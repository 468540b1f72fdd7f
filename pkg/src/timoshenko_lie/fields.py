"""Solution fields (phi, psi) as callables of (t, x)."""

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import WindowExceeded

WINDOW_SLACK = 1e-12


@dataclass(frozen=True)
class SolutionField:
    """A pair of vectorised callables phi(t, x), psi(t, x).

    ``window`` (t0, t1, x0, x1) is the region the field is defined on; None
    means everywhere. ``margin`` is the number of boundary cells a residual
    check should skip (2 for interpolated data).
    """

    phi: Callable
    psi: Callable
    window: Optional[Tuple[float, float, float, float]] = None
    provenance: str = "closed-form"
    margin: int = 1
    meta: dict = field(default_factory=dict, compare=False)

    def check_window(self, t, x):
        if self.window is None:
            return
        t0, t1, x0, x1 = self.window
        t, x = np.asarray(t, float), np.asarray(x, float)
        st = WINDOW_SLACK * max(1.0, abs(t0), abs(t1))
        sx = WINDOW_SLACK * max(1.0, abs(x0), abs(x1))
        if t.size and (t.min() < t0 - st or t.max() > t1 + st):
            raise WindowExceeded(f"t range [{t.min()}, {t.max()}] outside [{t0}, {t1}]")
        if x.size and (x.min() < x0 - sx or x.max() > x1 + sx):
            raise WindowExceeded(f"x range [{x.min()}, {x.max()}] outside [{x0}, {x1}]")

    def __call__(self, t, x):
        self.check_window(t, x)
        t, x = np.broadcast_arrays(np.asarray(t, float), np.asarray(x, float))
        phi = np.broadcast_to(np.asarray(self.phi(t, x), float), t.shape)
        psi = np.broadcast_to(np.asarray(self.psi(t, x), float), t.shape)
        return phi, psi


def constant_field(phi0=0.0, psi0=0.0):
    return SolutionField(lambda t, x: np.full_like(t, phi0), lambda t, x: np.full_like(t, psi0),
                         provenance="constant")


def add_fields(f, g):
    """Pointwise sum; the window is the intersection of both windows."""
    win = _intersect(f.window, g.window)
    return SolutionField(lambda t, x: f(t, x)[0] + g(t, x)[0], lambda t, x: f(t, x)[1] + g(t, x)[1],
                         win, f"sum({f.provenance},{g.provenance})", max(f.margin, g.margin))


def _intersect(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return (max(a[0], b[0]), min(a[1], b[1]), max(a[2], b[2]), min(a[3], b[3]))
