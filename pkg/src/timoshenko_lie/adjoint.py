"""Adjoint action of the symmetry group on the algebra.

Convention: an element is a row vector of coefficients ``a`` and a group
element acts on the right, ``a_new = a @ A``. Row j of ``A`` holds the image
of the basis vector X_{j+1}.
"""

import math

import numpy as np
from scipy.linalg import expm

from .algebra import DIM, EQUAL, GREATER, ad_matrix, basis, bracket, structure_constants


def _check_index(i):
    if not (isinstance(i, (int, np.integer)) and 1 <= i <= DIM):
        raise IndexError(f"basis index must be in 1..{DIM}, got {i!r}")


def _x1_block(eps, params):
    """Image of (X7, X8) under Ad(exp(eps X1)), rows in the (X7, X8) basis."""
    a, b = params.a_hat, params.b_hat
    if params.kind == EQUAL:
        g = math.exp(eps * a)
        return np.array([[g, 0.0], [-eps * g, g]])
    if params.kind == GREATER:
        # cosh/sinh written through the two real exponentials
        up, down = math.exp(eps * (a + b)), math.exp(eps * (a - b))
        c, s = 0.5 * (up + down), 0.5 * (up - down)
        return np.array([[c, -s], [-s, c]])
    g = math.exp(eps * a)
    c, s = math.cos(eps * b), math.sin(eps * b)
    return np.array([[g * c, g * s], [-g * s, g * c]])


def adjoint_single(i, eps, params):
    """Closed-form matrix of Ad(exp(eps X_i))."""
    _check_index(i)
    eps = float(eps)
    if i == 1:
        m = np.eye(DIM)
        m[3, 2] = -eps  # X4 -> X4 - eps X3
        m[5, 4] = -eps  # X6 -> X6 - eps X5
        m[6:8, 6:8] = _x1_block(eps, params)
        return m
    # every other generator acts nilpotently with ad^2 = 0
    sc = structure_constants(params)
    return np.eye(DIM) - eps * ad_matrix(basis(i), sc)


def adjoint_exact(i, eps, params):
    """expm(-eps ad_{X_i}); a generic reference for :func:`adjoint_single`."""
    _check_index(i)
    sc = structure_constants(params)
    return expm(-float(eps) * ad_matrix(basis(i), sc))


def adjoint_product(eps, params):
    """Ordered product of the eight single-generator factors.

    Ad(exp(-eps8 X8)) is applied last as an operator, which under the
    row-vector convention makes the X1 factor the leftmost matrix.
    """
    eps = np.asarray(eps, float)
    m = np.eye(DIM)
    for i in range(1, DIM + 1):
        m = m @ adjoint_single(i, -eps[i - 1], params)
    return m


def adjoint_composed(eps, params):
    """Closed form of the composed eight-parameter adjoint matrix."""
    e1, e2, e3, e4, e5, e6, e7, e8 = (float(v) for v in np.asarray(eps, float))
    a, b = params.a_hat, params.b_hat
    m = np.eye(DIM)
    m[0, 2] = -e4
    m[0, 4] = -e6
    if params.kind == EQUAL:
        m[0, 6] = a * e7 - e8
        m[0, 7] = a * e8
    elif params.kind == GREATER:
        m[0, 6] = a * e7 - b * e8
        m[0, 7] = a * e8 - b * e7
    else:
        m[0, 6] = a * e7 - b * e8
        m[0, 7] = a * e8 + b * e7
    m[1, 2] = -e5
    m[1, 3] = -e6
    m[3, 2] = e1
    m[4, 2] = e2
    m[5, 2] = e1 * e2
    m[5, 3] = e2
    m[5, 4] = e1
    m[6:8, 6:8] = composed_block(e1, params)
    return m


def composed_block(e1, params):
    """Lower-right (X7, X8) block of the composed matrix."""
    a, b = params.a_hat, params.b_hat
    if params.kind == EQUAL:
        g = math.exp(-a * e1)
        return np.array([[g, 0.0], [e1 * g, g]])
    if params.kind == GREATER:
        p, q = math.exp(-e1 * (a - b)), math.exp(-e1 * (a + b))
        y1, y2 = 0.5 * (p + q), 0.5 * (p - q)
        return np.array([[y1, y2], [y2, y1]])
    g = math.exp(-a * e1)
    y1, y2 = g * math.cos(b * e1), g * math.sin(b * e1)
    return np.array([[y1, -y2], [y2, y1]])


def adjoint_series(x, y, eps, terms, sc):
    """Truncated series y - eps[x, y] + eps^2/2! [x, [x, y]] - ... with ``terms`` summands."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    term = np.asarray(y, float).copy()
    total = term.copy()
    for n in range(1, terms):
        term = (-eps / n) * bracket(x, term, sc)
        total = total + term
    return total


def series_matrix(i, eps, params, terms=30):
    """Matrix whose rows are adjoint_series of each basis vector."""
    sc = structure_constants(params)
    x = basis(i)
    return np.array([adjoint_series(x, basis(j), eps, terms, sc) for j in range(1, DIM + 1)])


def act(a, m):
    """Apply an adjoint matrix to a coefficient row vector."""
    return np.asarray(a, float) @ m
