"""Transitions between first and second canonical coordinates, one-parameter subgroups."""
import logging
from dataclasses import dataclass

import numpy as np

from algebra.algebra import ad_of, split_indices
from algebra.models import LieAlgebra
from frames.frames import Chart, GroupPoint, frame_second, omega_first, xi_second
from numerics.config import SolverConfig
from numerics.errors import ChartExitError, InvalidInputError
from numerics.numerics import as_vector, mat_exp
from numerics.solvers import DecompositionTrack, decompose_product, ode_solve, product_residual, quadrature

log = logging.getLogger(__name__)

TRANSITION_TOL = 1e-10
MIN_DAMPING = 1.0 / 1024


@dataclass(frozen=True, eq=False)
class TransitionResult:
    point: GroupPoint
    residual: float

    def as_dict(self) -> dict:
        return {"chart": self.point.chart.value, "point": self.point.coords.tolist(), "residual": self.residual}


def to_second(alg: LieAlgebra, y: GroupPoint, cfg: SolverConfig) -> TransitionResult:
    """x = X(y): second-chart coordinates of exp(y^i e_i).

    Non-central part from exp(ad_y) = Ad_{g_x}; central part x^μ = ∫₀¹ y^i ξ^μ_i(X(ty)) dt.
    """
    ys = y.expect(Chart.FIRST, alg)
    nonzero = np.flatnonzero(ys)
    if len(nonzero) <= 1:
        # a single exponential is already a second-chart point
        return TransitionResult(GroupPoint.second(ys), 0.0)

    noncentral, central = split_indices(alg)
    ad_y = ad_of(alg, ys)
    target = mat_exp(ad_y)
    generators = [alg.ad_basis[a] for a in noncentral]
    try:
        guess = one_param_ode(alg, ys, 1.0, cfg.coarse()).coords[noncentral]
    except ChartExitError as exc:
        log.info("Coarse trajectory failed (%s); starting decomposition from y", exc)
        guess = ys[noncentral]
    xbar = decompose_product(target, generators, cfg, guess,
                             path=lambda s: mat_exp(s * ad_y), path_start=np.zeros(len(noncentral)))
    x = np.zeros(alg.dim)
    x[noncentral] = xbar

    if central:
        track = DecompositionTrack(lambda t: mat_exp(t * ad_y), generators, cfg, 0.0, np.zeros(len(noncentral)))

        def integrand(t):
            point = np.zeros(alg.dim)
            point[noncentral] = track.solve(t)
            return xi_second(alg, GroupPoint.second(point))[central, :] @ ys

        x[central] = quadrature(integrand, cfg)
    return TransitionResult(GroupPoint.second(x), product_residual(target, generators, xbar))


def to_first(alg: LieAlgebra, x: GroupPoint, cfg: SolverConfig) -> TransitionResult:
    """y = Y(x), inverting to_second by damped Newton with dX/dy = ξ_II(X(y))·Ω(ad_y)."""
    xs = x.expect(Chart.SECOND, alg)
    if len(np.flatnonzero(xs)) <= 1:
        return TransitionResult(GroupPoint.first(xs), 0.0)

    y = xs.copy()
    X = to_second(alg, GroupPoint.first(y), cfg).point.coords
    r = X - xs
    res = float(np.linalg.norm(r))
    for it in range(cfg.max_iter):
        if res <= TRANSITION_TOL:
            return TransitionResult(GroupPoint.first(y), res)
        J = xi_second(alg, GroupPoint.second(X)) @ omega_first(alg, GroupPoint.first(y))
        step = np.linalg.solve(J, -r)
        alpha = 1.0
        while True:
            trial = y + alpha * step
            try:
                trial_X = to_second(alg, GroupPoint.first(trial), cfg).point.coords
                trial_res = float(np.linalg.norm(trial_X - xs))
            except ChartExitError:
                trial_res = np.inf
            if trial_res < res:
                break
            alpha *= 0.5
            if alpha < MIN_DAMPING:
                raise ChartExitError(f"first-chart inversion stalled (residual {res:.3e})")
        y, X, r, res = trial, trial_X, trial_X - xs, trial_res
        log.debug("to_first iteration %d: residual %.3e (step %.3g)", it, res, alpha)
    if res > TRANSITION_TOL:
        raise ChartExitError(f"first-chart inversion did not converge (residual {res:.3e})")
    return TransitionResult(GroupPoint.first(y), res)


def one_param_point(alg: LieAlgebra, y, t: float, cfg: SolverConfig) -> GroupPoint:
    """Second-chart coordinates of exp(t·Y)."""
    y = as_vector(y, alg.dim, "direction")
    return to_second(alg, GroupPoint.first(t * y), cfg).point


def one_param_ode(alg: LieAlgebra, y, t: float, cfg: SolverConfig, side: str = "left") -> GroupPoint:
    """exp(t·Y) as the trajectory of dx/dt = y^i ξ_i(x) ("left") or −y^i η_i(x) ("right") from 0."""
    y = as_vector(y, alg.dim, "direction")
    if side == "left":
        field = lambda x: xi_second(alg, GroupPoint.second(x)) @ y
    elif side == "right":
        field = lambda x: -(frame_second(alg, GroupPoint.second(x)).eta @ y)
    else:
        raise InvalidInputError(f"side must be 'left' or 'right', got {side!r}")
    return GroupPoint.second(ode_solve(field, np.zeros(alg.dim), t, cfg))


def integrals_of_motion(alg: LieAlgebra, y, x: GroupPoint) -> np.ndarray:
    """y^i(ξ_i(x) + η_i(x)); zero exactly when Ad_{g_x}Y = Y."""
    y = as_vector(y, alg.dim, "direction")
    frame = frame_second(alg, x)
    return (frame.xi + frame.eta) @ y
