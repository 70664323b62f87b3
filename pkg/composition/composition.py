"""Composition function Φ(x, y) in second canonical coordinates.

The quotient by the center is faithfully represented by Ad, so the non-central
components come from a product decomposition of Ad_x·Ad_y; the central components
are x^μ + y^μ + Θ^μ with Θ^μ a line integral of left-invariant data.
"""
import logging
from typing import List, Optional

import numpy as np

from algebra.algebra import split_indices
from algebra.models import LieAlgebra
from frames.frames import Chart, GroupPoint, adjoint_at, frame_second, omega_second, xi_second
from numerics.config import SolverConfig
from numerics.errors import ChartExitError, CompositionUndefinedError, InvalidInputError
from numerics.numerics import mat_exp
from numerics.solvers import DecompositionTrack, decompose_product, ode_solve, product_residual, quadrature
from .models import METHOD_ADJOINT, METHOD_ODE, METHOD_REP, CompositionResult, MatrixRepresentation

log = logging.getLogger(__name__)

INVERSE_TOL = 1e-10
INVERSE_CHECK_TOL = 1e-9


def _second(alg: LieAlgebra, p: GroupPoint) -> np.ndarray:
    return p.expect(Chart.SECOND, alg)


def _ad(alg: LieAlgebra, coords: np.ndarray) -> np.ndarray:
    return adjoint_at(alg, GroupPoint.second(coords))


def _ad_generators(alg: LieAlgebra, noncentral: List[int]) -> List[np.ndarray]:
    return [alg.ad_basis[a] for a in noncentral]


def theta(alg: LieAlgebra, x: GroupPoint, y: GroupPoint, cfg: SolverConfig,
          via: Optional[GroupPoint] = None) -> np.ndarray:
    """Θ^μ(x, y) = ∫ ξ^μ_j(Φ̄(x, z)) ω^j_a(z) dz^a, summed over non-central a.

    Integrates along the straight path 0 → y, or 0 → via → y when via is given.
    Components follow the central indices in ascending order.
    """
    xs, ys = _second(alg, x), _second(alg, y)
    noncentral, central = split_indices(alg)
    if not central:
        return np.zeros(0)
    corners = [np.zeros(alg.dim)]
    if via is not None:
        corners.append(_second(alg, via))
    corners.append(ys)

    ad_x = _ad(alg, xs)
    track = DecompositionTrack(lambda z: ad_x @ _ad(alg, z), _ad_generators(alg, noncentral), cfg,
                               np.zeros(alg.dim), xs[noncentral])
    total = np.zeros(len(central))
    for start, end in zip(corners[:-1], corners[1:]):
        d = (end - start)[noncentral]
        if not np.any(d):
            continue

        def integrand(t, start=start, end=end, d=d):
            z = start + t * (end - start)
            point = np.zeros(alg.dim)
            point[noncentral] = track.solve(z)
            xi_rows = xi_second(alg, GroupPoint.second(point))[central, :]
            return xi_rows @ (omega_second(alg, GroupPoint.second(z))[:, noncentral] @ d)

        total += quadrature(integrand, cfg)
    return total


def _quotient(alg: LieAlgebra, xs: np.ndarray, ys: np.ndarray, noncentral: List[int], cfg: SolverConfig):
    ad_x = _ad(alg, xs)
    target = ad_x @ _ad(alg, ys)
    generators = _ad_generators(alg, noncentral)
    try:
        guess = compose_ode(alg, GroupPoint.second(xs), GroupPoint.second(ys), cfg.coarse()).z.coords[noncentral]
    except ChartExitError as exc:
        log.info("Coarse ODE pass failed (%s); starting decomposition from x + y", exc)
        guess = (xs + ys)[noncentral]
    zbar = decompose_product(target, generators, cfg, guess,
                             path=lambda s: ad_x @ _ad(alg, s * ys), path_start=xs[noncentral])
    return zbar, product_residual(target, generators, zbar)


def compose(alg: LieAlgebra, x: GroupPoint, y: GroupPoint, cfg: SolverConfig) -> CompositionResult:
    """z = Φ(x, y) with g_z = g_x·g_y. The algebra must be center-adapted."""
    xs, ys = _second(alg, x), _second(alg, y)
    if not np.any(ys):
        return CompositionResult(GroupPoint.second(xs), METHOD_ADJOINT, 0.0)
    if not np.any(xs):
        return CompositionResult(GroupPoint.second(ys), METHOD_ADJOINT, 0.0)

    noncentral, central = split_indices(alg)
    try:
        zbar, residual = _quotient(alg, xs, ys, noncentral, cfg)
        z = np.zeros(alg.dim)
        z[noncentral] = zbar
        if central:
            z[central] = xs[central] + ys[central] + theta(alg, x, y, cfg)
    except ChartExitError as exc:
        raise CompositionUndefinedError(f"product left the chart: {exc}") from exc
    log.debug("compose: residual %.3e", residual)
    return CompositionResult(GroupPoint.second(z), METHOD_ADJOINT, residual)


def compose_ode(alg: LieAlgebra, x: GroupPoint, y: GroupPoint, cfg: SolverConfig,
                side: str = "left") -> CompositionResult:
    """Φ(x, y) by integrating an invariance equation.

    side="left": dΦ/dt = ξ(Φ)·ω(ty)·y from Φ = x.
    side="right": dΦ/dt = η(Φ)·σ(tx)·x from Φ = y.
    The residual is ‖Ad_z − Ad_x·Ad_y‖_F.
    """
    xs, ys = _second(alg, x), _second(alg, y)
    if side == "left":
        def field(t, phi):
            return xi_second(alg, GroupPoint.second(phi)) @ (omega_second(alg, GroupPoint.second(t * ys)) @ ys)
        start = xs
    elif side == "right":
        def field(t, phi):
            sigma = frame_second(alg, GroupPoint.second(t * xs)).sigma
            return frame_second(alg, GroupPoint.second(phi)).eta @ (sigma @ xs)
        start = ys
    else:
        raise InvalidInputError(f"side must be 'left' or 'right', got {side!r}")

    z = ode_solve(field, start, 1.0, cfg, with_time=True)
    residual = float(np.linalg.norm(_ad(alg, z) - _ad(alg, xs) @ _ad(alg, ys)))
    return CompositionResult(GroupPoint.second(z), METHOD_ODE, residual)


def _rep_product(rep: MatrixRepresentation, coords: np.ndarray) -> np.ndarray:
    out = np.eye(rep.m)
    for i in range(rep.dim):
        if coords[i] != 0.0:
            out = mat_exp(coords[i] * rep.images[i]) @ out
    return out


def compose_via_rep(rep: MatrixRepresentation, alg: LieAlgebra, x: GroupPoint, y: GroupPoint,
                    cfg: SolverConfig) -> CompositionResult:
    """Φ(x, y) from a faithful matrix representation; all n coordinates are decomposed."""
    rep.check(alg)
    xs, ys = _second(alg, x), _second(alg, y)
    if not np.any(ys):
        return CompositionResult(GroupPoint.second(xs), METHOD_REP, 0.0)
    if not np.any(xs):
        return CompositionResult(GroupPoint.second(ys), METHOD_REP, 0.0)

    t_x = _rep_product(rep, xs)
    target = t_x @ _rep_product(rep, ys)
    generators = list(rep.images)
    try:
        z = decompose_product(target, generators, cfg, xs + ys,
                              path=lambda s: t_x @ _rep_product(rep, s * ys), path_start=xs)
    except ChartExitError as exc:
        raise CompositionUndefinedError(f"product left the chart: {exc}") from exc
    return CompositionResult(GroupPoint.second(z), METHOD_REP, product_residual(target, generators, z))


def inverse_point(alg: LieAlgebra, x: GroupPoint, cfg: SolverConfig) -> GroupPoint:
    """κ(x) with g_κ = g_x⁻¹, by Newton on Φ(x, κ) = 0 using ∂Φ/∂y = ξ(Φ)·ω(y)."""
    xs = _second(alg, x)
    if not np.any(xs):
        return GroupPoint.second(np.zeros(alg.dim))

    kappa = -xs
    residual = np.inf
    for it in range(cfg.max_iter):
        phi = compose(alg, x, GroupPoint.second(kappa), cfg).z.coords
        residual = float(np.linalg.norm(phi))
        log.debug("inverse_point iteration %d: ‖Φ(x, κ)‖ = %.3e", it, residual)
        if residual <= INVERSE_TOL:
            break
        J = xi_second(alg, GroupPoint.second(phi)) @ omega_second(alg, GroupPoint.second(kappa))
        kappa = kappa - np.linalg.solve(J, phi)
    else:
        raise ChartExitError(f"inverse element did not converge (‖Φ(x, κ)‖ = {residual:.3e})")

    back = float(np.linalg.norm(compose(alg, GroupPoint.second(kappa), x, cfg).z.coords))
    if back > INVERSE_CHECK_TOL:
        raise ChartExitError(f"inverse element is one-sided (‖Φ(κ, x)‖ = {back:.3e})")
    return GroupPoint.second(kappa)
