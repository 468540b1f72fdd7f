"""Symmetry groups acting on points and on solutions.

Generators of the nonlinear system (all three damping cases):

    X1 = d/dt, X2 = d/dx, X3 = d/dphi, X4 = t d/dphi,
    X5 = x d/dphi - d/dpsi, X6 = t x d/dphi + (d/k - t) d/dpsi,
    X7 = h7(t) d/dpsi, X8 = h8(t) d/dpsi

where h7, h8 span the solutions of rho2 h'' + d h' + k h = 0.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .algebra import DIM, EQUAL, GREATER, mode_basis
from .chi import ChiSpec
from .errors import RequiresLinearChi
from .fields import SolutionField

GENERATOR = "generator"
PRINTED = "printed"


def modes(params, t, reading=GENERATOR):
    """(h7, h8) at t. ``reading="printed"`` uses the exponent e^{-d t / rho2}
    that appears in the one-parameter groups of the two non-critical cases."""
    if reading == GENERATOR or params.kind == EQUAL:
        return mode_basis(params, t, 0)
    t = np.asarray(t, float)
    e = np.exp(-params.d * t / params.rho2)
    bt = params.b_hat * t
    if params.kind == GREATER:
        return e * np.cosh(bt), e * np.sinh(bt)
    return e * np.cos(bt), e * np.sin(bt)


@dataclass(frozen=True)
class GeneratorSpec:
    """Infinitesimals (xi1, xi2, eta1, eta2) of X_index for the active case."""

    index: int
    params: object

    def __post_init__(self):
        if not 1 <= self.index <= DIM:
            raise IndexError(f"generator index must be in 1..{DIM}")

    @property
    def kind(self):
        return self.params.kind

    def evaluate(self, t, x, phi, psi, reading=GENERATOR):
        t, x = np.asarray(t, float), np.asarray(x, float)
        zero = np.zeros(np.broadcast(t, x, np.asarray(phi), np.asarray(psi)).shape)
        one = zero + 1.0
        i = self.index
        if i == 1:
            return one, zero, zero, zero
        if i == 2:
            return zero, one, zero, zero
        if i == 3:
            return zero, zero, one, zero
        if i == 4:
            return zero, zero, zero + t, zero
        if i == 5:
            return zero, zero, zero + x, -one
        if i == 6:
            return zero, zero, zero + t * x, zero + self.params.d / self.params.k - t
        h7, h8 = modes(self.params, t, reading)
        return zero, zero, zero, zero + (h7 if i == 7 else h8)


def transform_point(i, eps, p, params, reading=GENERATOR):
    """Apply the one-parameter group G_i(eps) to p = (t, x, phi, psi)."""
    if not 1 <= i <= DIM:
        raise IndexError(f"generator index must be in 1..{DIM}")
    t, x, phi, psi = (np.asarray(v, float) for v in p)
    if i == 1:
        return t + eps, x, phi, psi
    if i == 2:
        return t, x + eps, phi, psi
    if i == 3:
        return t, x, phi + eps, psi
    if i == 4:
        return t, x, phi + eps * t, psi
    if i == 5:
        return t, x, phi + eps * x, psi - eps
    if i == 6:
        return t, x, phi + eps * t * x, psi + eps * (params.d / params.k - t)
    h7, h8 = modes(params, t, reading)
    return t, x, phi, psi + eps * (h7 if i == 7 else h8)


def compose_point(eps, p, params, reading=GENERATOR):
    """G8(eps8) o ... o G1(eps1) applied to p (G1 acts first)."""
    for i in range(1, DIM + 1):
        p = transform_point(i, float(eps[i - 1]), p, params, reading)
    return p


def _composed_psi_modes(params, t, e1, reading):
    """mode contribution in the psi formula of the composed group."""
    big_t = t + e1
    if reading == PRINTED and params.kind == GREATER:
        # exponent printed as e^{-(d t + eps1)/(2 rho2)}
        e = np.exp(-(params.d * t + e1) / (2.0 * params.rho2))
        bt = params.b_hat * big_t
        return e * np.cosh(bt), e * np.sinh(bt)
    return mode_basis(params, big_t, 0)


def transform_solution(sol, eps, params, reading="derived"):
    """Closed-form image of a solution under the eight-parameter group.

    phi -> f(T, X) + e3 + e4 T + e5 X + e6 T X
    psi -> g(T, X) - e5 + e6 (d/k - T) + e7 h7(T) + e8 h8(T)

    with T = t + e1 and X = x + e2. ``reading="printed"`` reproduces the
    exponent exactly as stated for the supercritical case.
    """
    e1, e2, e3, e4, e5, e6, e7, e8 = (float(v) for v in np.asarray(eps, float))
    dk = params.d / params.k

    def both(t, x):
        t, x = np.asarray(t, float), np.asarray(x, float)
        big_t, big_x = t + e1, x + e2
        f, g = sol(big_t, big_x)
        h7, h8 = _composed_psi_modes(params, t, e1, reading)
        phi = f + e3 + e4 * big_t + e5 * big_x + e6 * big_t * big_x
        psi = g - e5 + e6 * (dk - big_t) + e7 * h7 + e8 * h8
        return phi, psi

    window = None
    if sol.window is not None:
        t0, t1, x0, x1 = sol.window
        window = (t0 - e1, t1 - e1, x0 - e2, x1 - e2)
    return SolutionField(lambda t, x: both(t, x)[0], lambda t, x: both(t, x)[1], window,
                         f"transformed({sol.provenance})", sol.margin,
                         {"eps": [e1, e2, e3, e4, e5, e6, e7, e8], "reading": reading})


def transform_solution_by_points(sol, eps, params, reading=GENERATOR):
    """Same image computed by pushing (t, x, f(T, X), g(T, X)) through compose_point."""
    e = np.asarray(eps, float)

    def both(t, x):
        t, x = np.asarray(t, float), np.asarray(x, float)
        f, g = sol(t + e[0], x + e[1])
        _, _, phi, psi = compose_point(e, (t, x, f, g), params, reading)
        return phi, psi

    return SolutionField(lambda t, x: both(t, x)[0], lambda t, x: both(t, x)[1], None,
                         f"composed({sol.provenance})", sol.margin)


def scale_solution(sol, eps, chi):
    """(phi, psi) -> (e^eps phi, e^eps psi); a symmetry only for chi(s) = b s."""
    if not (isinstance(chi, ChiSpec) and chi.is_linear and chi.offset == 0.0):
        raise RequiresLinearChi("scaling needs the linear law chi(s) = b s with zero offset")
    f = float(np.exp(eps))
    return SolutionField(lambda t, x: f * sol(t, x)[0], lambda t, x: f * sol(t, x)[1], sol.window,
                         f"scaled({sol.provenance})", sol.margin)


# ------------------------------------------------------------- exact solutions

def shear_solution():
    """(phi, psi) = (x, -1): phi_x + psi = 0 and every derivative is constant."""
    return SolutionField(lambda t, x: np.asarray(x, float) + 0.0 * t,
                         lambda t, x: -1.0 + 0.0 * (t + x), provenance="exact:(x,-1)")


def drift_solution(c=1.0):
    """(phi, psi) = (c t, 0)."""
    return SolutionField(lambda t, x: c * np.asarray(t, float) + 0.0 * x,
                         lambda t, x: 0.0 * (t + x), provenance=f"exact:({c}t,0)")


def linear_mode_matrix(params, kappa, b=None):
    """First-order matrix for (P, P', Q, Q') of phi = P cos(kappa x), psi = Q sin(kappa x)."""
    b = params.b if b is None else b
    r1, r2, k, d = params.rho1, params.rho2, params.k, params.d
    return np.array([
        [0.0, 1.0, 0.0, 0.0],
        [-k * kappa * kappa / r1, 0.0, k * kappa / r1, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [k * kappa / r2, 0.0, -(b * kappa * kappa + k) / r2, -d / r2],
    ])


def manufactured_linear(params, kappa, y0, b=None):
    """Exact solution of the linear system (chi = b s) built from one Fourier mode."""
    m = linear_mode_matrix(params, kappa, b)
    y0 = np.asarray(y0, float)

    def state(t):
        t = np.asarray(t, float)
        uniq, inv = np.unique(t, return_inverse=True)
        vals = np.array([expm(s * m) @ y0 for s in uniq])
        return vals[inv].reshape(t.shape + (4,))

    def phi(t, x):
        return state(t)[..., 0] * np.cos(kappa * np.asarray(x, float))

    def psi(t, x):
        return state(t)[..., 2] * np.sin(kappa * np.asarray(x, float))

    return SolutionField(phi, psi, provenance=f"manufactured:kappa={kappa}")
