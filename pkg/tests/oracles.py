"""Closed-form frames, composition, action and coordinate transitions.

Six-dimensional algebra: paper6 in the catalog. Vectors are 0-based, so x[3] is x⁴.
Matrices of fields hold fields as columns; matrices of forms hold forms as rows.
"""
import numpy as np


def nil6_omega(x):
    x1, x2, x3, x4, x5, x6 = x
    e = np.exp(2 * x4)
    w = np.eye(6)
    w[0, 2] = -x2
    w[0, 3] = x1 - 2 * x2 * x3
    w[0, 4] = x3 * e * (x2 * x3 - x1)
    w[1, 3] = -x2
    w[1, 4] = e * (x2 * x3 - x1)
    w[2, 3] = 2 * x3
    w[2, 4] = -x3 ** 2 * e
    w[3, 4] = -x3 * e
    w[4, 4] = e
    w[5, 1] = -x1
    w[5, 2] = -0.5 * x2 ** 2
    w[5, 3] = x2 * (x1 - x2 * x3)
    w[5, 4] = 0.5 * e * (x1 - x2 * x3) ** 2
    return w


def nil6_xi(x):
    x1, x2, x3, x4, x5, x6 = x
    xi = np.eye(6)
    xi[5, 1] = x1
    xi[0, 2] = x2
    xi[5, 2] = 0.5 * x2 ** 2
    xi[0, 3], xi[1, 3], xi[2, 3] = -x1, x2, -2 * x3
    xi[1, 4], xi[2, 4], xi[3, 4], xi[4, 4], xi[5, 4] = x1, -x3 ** 2, x3, np.exp(-2 * x4), 0.5 * x1 ** 2
    return xi


def nil6_eta(x):
    x1, x2, x3, x4, x5, x6 = x
    a = np.exp(-x4) + x3 * x5 * np.exp(x4)
    eta = -np.eye(6)
    eta[0, 0], eta[1, 0], eta[5, 0] = -a, -x5 * np.exp(x4), -x2 * a
    eta[0, 1], eta[1, 1], eta[5, 1] = -np.exp(x4) * x3, -np.exp(x4), -np.exp(x4) * x2 * x3
    eta[2, 2], eta[3, 2], eta[4, 2] = -np.exp(-2 * x4), -x5, x5 ** 2
    eta[4, 3] = 2 * x5
    return eta


def nil6_compose(x, y):
    x1, x2, x3, x4, x5, x6 = x
    y1, y2, y3, y4, y5, y6 = y
    d = 1 + x3 * y5
    u = x2 + x1 * y5
    return np.array([
        x1 * np.exp(-y4) + y1 + y3 * np.exp(y4) * u,
        np.exp(y4) * u + y2,
        (np.exp(-2 * y4) * x3 + y3 * d) / d,
        x4 + y4 + np.log(d),
        (x5 + np.exp(-2 * x4) * y5 + x3 * x5 * y5) / d,
        x6 + y6 + 0.5 * x1 ** 2 * y5 + y2 * y3 * np.exp(y4) * u + x1 * y2 * np.exp(-y4)
        + 0.5 * y3 * np.exp(2 * y4) * u ** 2,
    ])


def nil6_action(q, z):
    """Ψ(q, z) for the isotropy subalgebra span{e4, e5}; z in the source chart."""
    q1, q2, q3, q4 = q
    full = nil6_compose(np.array([q1, q2, q3, 0.0, 0.0, q4]), z)
    return full[[0, 1, 2, 5]]


def nil6_generators(q):
    """Columns X_1..X_6 on the coset space with coordinates (x¹, x², x³, x⁶)."""
    q1, q2, q3, q4 = q
    return np.array([
        [1.0, 0.0, q2, -q1, 0.0, 0.0],
        [0.0, 1.0, 0.0, q2, q1, 0.0],
        [0.0, 0.0, 1.0, -2 * q3, -q3 ** 2, 0.0],
        [0.0, q1, 0.5 * q2 ** 2, 0.0, 0.5 * q1 ** 2, 1.0],
    ])


def nil6_to_second(y):
    """x = X(y); valid for y⁴² + y³y⁵ away from 0 (J may be imaginary)."""
    y1, y2, y3, y4, y5, y6 = y
    J = np.emath.sqrt(y4 ** 2 + y3 * y5) + 0j
    sh, ch = np.sinh(J), np.cosh(J)
    sh2 = np.sinh(J / 2) ** 2
    base = ch + y4 * sh / J
    x1 = y1 * sh / J + 2 * (y2 * y3 - y1 * y4) * sh2 / J ** 2
    # second-order term: x² = y² + (y¹y⁵ + y²y⁴)/2 + O(|y|³)
    x2 = y2 * sh / J + 2 * (y2 * y4 + y1 * y5) * sh2 / J ** 2
    x3 = y3 * (np.sinh(2 * J) / (2 * J) + y4 * sh ** 2 / J ** 2) / base ** 2
    x4 = np.log(base)
    x5 = y5 * sh / (J * ch + y4 * sh)
    x6 = (y6
          + (y1 * y2 * ch - y1 * y2 - y2 ** 2 * y3 / 2 + y1 ** 2 * y5 / 2 + y1 * y2 * y4) / J ** 2
          + (np.sinh(2 * J) * (y2 ** 2 * y3 + y1 ** 2 * y5) / 4 - sh * (y1 * y2 * y4 + y1 ** 2 * y5)) / J ** 3
          + (-2 * y1 * y2 * y3 * y5 - y2 ** 2 * y3 * y4 + y1 ** 2 * y4 * y5)
          * (ch - np.cosh(2 * J) / 4 - 0.75) / J ** 4)
    return np.real(np.array([x1, x2, x3, x4, x5, x6]))


def poincare_generators(q, alpha, b):
    """Columns X_1..X_4 for the isotropy subalgebra span{e3 + b·e4}."""
    q1, q2, q3 = q
    return np.array([
        [1.0, 0.0, -q2, 0.0],
        [0.0, 1.0, q1, 0.0],
        [0.0, 0.0, 1.0, -np.exp(-alpha * q3) / b],
    ])


def poincare_xi(q1, q2, q3, y, alpha, b):
    """Left-invariant fields ξ_1..ξ_4 in coordinates (q¹, q², q³, y)."""
    s = np.exp(-alpha * q3) / b
    return np.array([
        [1.0, 0.0, -q2, 0.0],
        [0.0, 1.0, q1, 0.0],
        [0.0, 0.0, 1.0, -s],
        [0.0, 0.0, 0.0, s],
    ])


def heisenberg_compose(x, y):
    return np.array([x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]])


def heisenberg_inverse(x):
    return np.array([-x[0], -x[1], -x[2] + x[0] * x[1]])


def heisenberg_to_second(y):
    return np.array([y[0], y[1], y[2] + 0.5 * y[0] * y[1]])


def heisenberg_rep():
    """τ(e1) = E12, τ(e2) = E23, τ(e3) = E13."""
    images = np.zeros((3, 3, 3))
    images[0, 0, 1] = 1.0
    images[1, 1, 2] = 1.0
    images[2, 0, 2] = 1.0
    return images
