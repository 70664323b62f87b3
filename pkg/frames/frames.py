"""Adjoint matrices and invariant frames at a point.

Second canonical coordinates use one ordering throughout:
g_x = exp(x^n e_n)·exp(x^{n-1} e_{n-1})···exp(x^1 e_1).
Vector-field matrices are stored column-wise (column i = components of the field for e_i),
so xi is the plain inverse of omega.
"""
import enum
import logging
from dataclasses import dataclass

import numpy as np

from algebra.algebra import ad_of
from algebra.models import LieAlgebra
from numerics.errors import ChartExitError, InvalidInputError
from numerics.numerics import as_vector, mat_exp, omega_of

log = logging.getLogger(__name__)

MAX_OMEGA_CONDITION = 1e12


class Chart(enum.Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True, eq=False)
class GroupPoint:
    chart: Chart
    coords: np.ndarray

    def __post_init__(self):
        coords = as_vector(self.coords, name="group point").copy()
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def second(cls, coords) -> "GroupPoint":
        return cls(Chart.SECOND, coords)

    @classmethod
    def first(cls, coords) -> "GroupPoint":
        return cls(Chart.FIRST, coords)

    @property
    def dim(self) -> int:
        return self.coords.shape[0]

    def expect(self, chart: Chart, alg: LieAlgebra) -> np.ndarray:
        """Coordinates, after checking chart kind and dimension."""
        if self.chart is not chart:
            raise InvalidInputError(f"expected a point in the {chart.value} chart, got {self.chart.value}")
        if self.dim != alg.dim:
            raise InvalidInputError(f"point has {self.dim} coordinates, algebra has dimension {alg.dim}")
        return self.coords


@dataclass(frozen=True, eq=False)
class Frame:
    omega: np.ndarray      # ω^i_j, left-invariant 1-forms
    xi: np.ndarray         # ξ^j_i, left-invariant fields (columns)
    sigma: np.ndarray      # σ^i_j, right-invariant 1-forms
    eta: np.ndarray        # η^j_i, right-invariant fields (columns)
    ad_point: np.ndarray   # Ad_{g_x}


def _factor_exponentials(alg: LieAlgebra, x: np.ndarray, sign: float):
    identity = np.eye(alg.dim)
    return [mat_exp(sign * x[k] * alg.ad_basis[k]) if x[k] != 0.0 else identity for k in range(alg.dim)]


def adjoint_at(alg: LieAlgebra, p: GroupPoint) -> np.ndarray:
    """Ad_{g_x} = exp(x^n ad e_n)···exp(x^1 ad e_1)."""
    x = p.expect(Chart.SECOND, alg)
    out = np.eye(alg.dim)
    for k in range(alg.dim):
        if x[k] != 0.0:
            out = mat_exp(x[k] * alg.ad_basis[k]) @ out
    return out


def _invert(omega: np.ndarray, point: np.ndarray) -> np.ndarray:
    cond = np.linalg.cond(omega)
    if not np.isfinite(cond) or cond > MAX_OMEGA_CONDITION:
        where = np.array2string(point, precision=4)
        raise ChartExitError(f"invariant 1-forms degenerate at {where} (condition number {cond:.3e})")
    return np.linalg.inv(omega)


def _complete(omega: np.ndarray, ad_point: np.ndarray, point: np.ndarray) -> Frame:
    sigma = -ad_point @ omega
    return Frame(omega=omega, xi=_invert(omega, point), sigma=sigma,
                 eta=_invert(sigma, point), ad_point=ad_point)


def omega_second(alg: LieAlgebra, p: GroupPoint) -> np.ndarray:
    """Left-invariant 1-forms in second canonical coordinates.

    Column k is exp(−x^1 ad e_1)···exp(−x^{k−1} ad e_{k−1}) e_k, so it depends on x^1..x^{k−1} only.
    """
    x = p.expect(Chart.SECOND, alg)
    n = alg.dim
    inverse_factors = _factor_exponentials(alg, x, -1.0)
    omega = np.empty((n, n))
    partial = np.eye(n)
    for k in range(n):
        omega[:, k] = partial[:, k]
        if k < n - 1:
            partial = partial @ inverse_factors[k]
    return omega


def xi_second(alg: LieAlgebra, p: GroupPoint) -> np.ndarray:
    """Left-invariant fields (columns) in second canonical coordinates."""
    return _invert(omega_second(alg, p), p.coords)


def frame_second(alg: LieAlgebra, p: GroupPoint) -> Frame:
    """Frame in second canonical coordinates; σ = −Ad_{g_x}·ω."""
    return _complete(omega_second(alg, p), adjoint_at(alg, p), p.coords)


def omega_first(alg: LieAlgebra, p: GroupPoint) -> np.ndarray:
    """ω(x) = Ω(ad_x) in first canonical coordinates."""
    x = p.expect(Chart.FIRST, alg)
    return omega_of(ad_of(alg, x))


def frame_first(alg: LieAlgebra, p: GroupPoint) -> Frame:
    """Frame in first canonical coordinates; Ad_{g_y} = exp(ad_y)."""
    y = p.expect(Chart.FIRST, alg)
    ad_y = ad_of(alg, y)
    return _complete(omega_of(ad_y), mat_exp(ad_y), y)
