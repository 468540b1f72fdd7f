"""Physical parameters and the three eight-dimensional symmetry algebras.

The nonlinear damped Timoshenko system

    rho1 phi_tt - k (phi_x + psi)_x = 0
    rho2 psi_tt - (chi(psi_x))_x + k (phi_x + psi) + d psi_t = 0

admits an eight-dimensional algebra X1..X8 whose structure depends on the
sign of the discriminant d**2 - 4 k rho2 of rho2 r**2 + d r + k = 0.
Basis indices are 1-based in the public API and 0-based in arrays.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import ConfigError

EQUAL = "equal"
GREATER = "greater"
LESS = "less"
CASE_KINDS = (EQUAL, GREATER, LESS)

# |d^2 - 4 k rho2| below this fraction of max(d^2, 4 k rho2) counts as critical damping
CASE_BAND = 1e-9

DIM = 8


def case_of(rho2, k, d, band=CASE_BAND):
    """Classify the damping discriminant.

    Returns ``(kind, disc)`` where ``disc`` is lambda for ``"greater"``, mu for
    ``"less"`` and 0.0 for ``"equal"``.
    """
    for name, value in (("rho2", rho2), ("k", k), ("d", d)):
        if not value > 0:
            raise ConfigError(f"field '{name}': must be positive, got {value!r}")
    d2 = d * d
    four = 4.0 * k * rho2
    delta = d2 - four
    if abs(delta) <= band * max(d2, four):
        return EQUAL, 0.0
    if delta > 0:
        return GREATER, math.sqrt(delta)
    return LESS, math.sqrt(-delta)


@dataclass(frozen=True)
class CaseParams:
    """Physical constants plus the discriminant data of the active case.

    Build with :meth:`from_damping` (d given) or :meth:`from_case`
    (case kind plus lambda/mu given, d derived). ``disc`` holds lambda or mu.
    """

    rho1: float
    rho2: float
    k: float
    d: float
    b: float
    kind: str
    disc: float = 0.0
    a_hat: float = field(init=False)
    b_hat: float = field(init=False)

    def __post_init__(self):
        for name in ("rho1", "rho2", "k", "d", "b"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ConfigError(f"field '{name}': must be a positive finite number, got {value!r}")
        if self.kind not in CASE_KINDS:
            raise ConfigError(f"field 'case': must be one of {CASE_KINDS}, got {self.kind!r}")
        d2, four = self.d ** 2, 4.0 * self.k * self.rho2
        if self.kind == EQUAL:
            if abs(d2 - four) > 1e-12 * max(d2, four):
                raise ConfigError("field 'd': equal case requires d**2 == 4 k rho2")
            a_hat, b_hat = math.sqrt(self.k / self.rho2), 0.0
        else:
            if not self.disc > 0:
                raise ConfigError("field 'lambda'/'mu': must be positive")
            target = four + self.disc ** 2 if self.kind == GREATER else four - self.disc ** 2
            if abs(d2 - target) > 1e-9 * max(d2, four):
                raise ConfigError(f"field 'd': inconsistent with the {self.kind} case discriminant")
            a_hat = self.d / (2.0 * self.rho2)
            b_hat = self.disc / (2.0 * self.rho2)
        object.__setattr__(self, "a_hat", a_hat)
        object.__setattr__(self, "b_hat", b_hat)

    @classmethod
    def from_damping(cls, rho1=1.0, rho2=1.0, k=1.0, d=2.0, b=1.0):
        kind, disc = case_of(rho2, k, d)
        if kind == EQUAL:
            # snap into the band so the exact-equality invariant holds
            d = 2.0 * math.sqrt(k * rho2)
        return cls(float(rho1), float(rho2), float(k), float(d), float(b), kind, float(disc))

    @classmethod
    def from_case(cls, kind, rho1=1.0, rho2=1.0, k=1.0, b=1.0, lam=None, mu=None):
        kind = str(kind).lower()
        for name, value in (("rho1", rho1), ("rho2", rho2), ("k", k), ("b", b)):
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ConfigError(f"field '{name}': must be a positive finite number, got {value!r}")
        if kind == EQUAL:
            return cls(float(rho1), float(rho2), float(k), 2.0 * math.sqrt(k * rho2), float(b), EQUAL, 0.0)
        if kind == GREATER:
            lam = 1.0 if lam is None else float(lam)
            if not lam > 0:
                raise ConfigError("field 'lambda': must be positive")
            d = math.sqrt(4.0 * k * rho2 + lam * lam)
            return cls(float(rho1), float(rho2), float(k), d, float(b), GREATER, lam)
        if kind == LESS:
            mu = 1.0 if mu is None else float(mu)
            if not 0 < mu * mu < 4.0 * k * rho2:
                raise ConfigError("field 'mu': must satisfy 0 < mu**2 < 4 k rho2")
            d = math.sqrt(4.0 * k * rho2 - mu * mu)
            return cls(float(rho1), float(rho2), float(k), d, float(b), LESS, mu)
        raise ConfigError(f"field 'case': must be one of {CASE_KINDS}, got {kind!r}")

    @property
    def lam(self):
        return self.disc if self.kind == GREATER else None

    @property
    def mu(self):
        return self.disc if self.kind == LESS else None

    def to_dict(self):
        return {
            "case": self.kind, "rho1": self.rho1, "rho2": self.rho2, "k": self.k,
            "d": self.d, "b": self.b, "disc": self.disc,
            "a_hat": self.a_hat, "b_hat": self.b_hat,
        }


@dataclass(frozen=True)
class StructureConstants:
    """c[i, j, m] = coefficient of X_{m+1} in [X_{i+1}, X_{j+1}]."""

    c: np.ndarray
    kind: str

    def __post_init__(self):
        self.c.setflags(write=False)


def structure_constants(params):
    a, b = params.a_hat, params.b_hat
    c = np.zeros((DIM, DIM, DIM))

    def put(i, j, coeffs):
        for m, value in coeffs.items():
            c[i - 1, j - 1, m - 1] = value
            c[j - 1, i - 1, m - 1] = -value

    put(1, 4, {3: 1.0})
    put(1, 6, {5: 1.0})
    put(2, 5, {3: 1.0})
    put(2, 6, {4: 1.0})
    if params.kind == EQUAL:
        put(1, 7, {7: -a})
        put(1, 8, {7: 1.0, 8: -a})
    elif params.kind == GREATER:
        put(1, 7, {7: -a, 8: b})
        put(1, 8, {7: b, 8: -a})
    else:
        put(1, 7, {7: -a, 8: -b})
        put(1, 8, {7: b, 8: -a})
    return StructureConstants(c, params.kind)


def basis(i):
    """Unit coefficient vector of X_i (1-based)."""
    e = np.zeros(DIM)
    e[i - 1] = 1.0
    return e


def bracket(x, y, sc):
    return np.einsum("i,j,ijm->m", np.asarray(x, float), np.asarray(y, float), sc.c)


def ad_matrix(x, sc):
    """Matrix of ad_x for row vectors: ``y @ ad_matrix(x) == bracket(x, y)``.

    Row j holds the coefficients of [x, X_{j+1}].
    """
    return np.einsum("i,ijm->jm", np.asarray(x, float), sc.c)


def killing_form(x, y, sc):
    """trace(ad_x ad_y)."""
    return float(np.trace(ad_matrix(x, sc) @ ad_matrix(y, sc)))


def killing_coefficient(params):
    """kappa with K(x, y) = kappa * x1 * y1 for the active case."""
    a, b = params.a_hat, params.b_hat
    if params.kind == EQUAL:
        return 2.0 * a * a
    if params.kind == GREATER:
        return 2.0 * (a * a + b * b)
    return 2.0 * (a * a - b * b)


def killing_closed_form(x, y, params):
    return killing_coefficient(params) * float(x[0]) * float(y[0])


def _span_basis(vectors, rtol=1e-12):
    if len(vectors) == 0:
        return np.zeros((0, DIM))
    m = np.asarray(vectors, float)
    u, s, vt = np.linalg.svd(m)
    if s.size == 0 or s[0] == 0:
        return np.zeros((0, DIM))
    rank = int(np.sum(s > rtol * s[0]))
    return vt[:rank]


def derived_series(sc, max_steps=8):
    """Dimensions of g, [g, g], [[g, g], [g, g]], ... until zero or stationary."""
    current = np.eye(DIM)
    dims = [DIM]
    for _ in range(max_steps):
        images = [bracket(u, v, sc) for idx, u in enumerate(current) for v in current[idx + 1:]]
        nxt = _span_basis(images)
        dims.append(nxt.shape[0])
        if nxt.shape[0] == 0 or nxt.shape[0] == current.shape[0]:
            break
        current = nxt
    return dims


def is_solvable(sc):
    return derived_series(sc)[-1] == 0


def characteristic_roots(params):
    """Roots of rho2 r**2 + d r + k = 0 in the closed form of each case."""
    a, b = params.a_hat, params.b_hat
    if params.kind == EQUAL:
        return np.array([-a, -a], dtype=complex)
    if params.kind == GREATER:
        return np.array([-a + b, -a - b], dtype=complex)
    return np.array([-a + 1j * b, -a - 1j * b])


def mode_basis(params, t, order=0):
    """The two homogeneous solutions behind X7 and X8 and their derivatives.

    Returns ``(u7, u8)`` evaluated at ``t`` differentiated ``order`` times
    (0, 1 or 2). These solve rho2 u'' + d u' + k u = 0.
    """
    t = np.asarray(t, float)
    a, b = params.a_hat, params.b_hat
    e = np.exp(-a * t)
    if params.kind == EQUAL:
        if order == 0:
            return e, t * e
        if order == 1:
            return -a * e, (1.0 - a * t) * e
        if order == 2:
            return a * a * e, (a * a * t - 2.0 * a) * e
    else:
        if params.kind == GREATER:
            c, s, sgn = np.cosh(b * t), np.sinh(b * t), 1.0
        else:
            c, s, sgn = np.cos(b * t), np.sin(b * t), -1.0
        if order == 0:
            return e * c, e * s
        if order == 1:
            return e * (-a * c + sgn * b * s), e * (-a * s + b * c)
        if order == 2:
            w = a * a + sgn * b * b
            return e * (w * c - 2.0 * sgn * a * b * s), e * (w * s - 2.0 * a * b * c)
    raise ValueError(f"order must be 0, 1 or 2, got {order}")


def x6_shift(params, t):
    """psi-component of X6: d/k - t (equals 2 sqrt(rho2/k) - t at critical damping)."""
    return params.d / params.k - np.asarray(t, float)
