"""Iterative solvers: product decomposition, ODE integration and quadrature."""
import logging
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .config import SolverConfig
from .errors import AmbiguityError, ChartExitError, DecompositionError, InvalidInputError
from .numerics import RANK_RCOND, as_square, as_vector, mat_exp, smallest_singular_ratio

log = logging.getLogger(__name__)

MIN_LINE_STEP = 1e-10


# --- ODE integration ---
def ode_solve(field: Callable, start, t_end: float, cfg: SolverConfig, *, with_time: bool = False) -> np.ndarray:
    """Integrates dx/dt = field(x) (or field(t, x) when with_time) from t=0 to t_end.

    Any failure of the integrator means the trajectory left the region where the
    field is defined and is reported as ChartExitError.
    """
    x0 = as_vector(start, name="ODE start")
    if t_end == 0.0:
        return x0.copy()

    def rhs(t, x):
        v = np.asarray(field(t, x) if with_time else field(x), dtype=float)
        if not np.all(np.isfinite(v)):
            raise ChartExitError(f"non-finite vector field value at t={t:.6g}")
        return v

    sol = solve_ivp(rhs, (0.0, float(t_end)), x0, method="DOP853",
                    rtol=cfg.ode_rel_tol, atol=cfg.ode_abs_tol)
    if not sol.success:
        raise ChartExitError(f"ODE integration stopped: {sol.message}")
    log.debug("ODE solved to t=%g in %d evaluations", t_end, sol.nfev)
    return sol.y[:, -1]


# --- Quadrature ---
def quadrature_nodes(cfg: SolverConfig, a: float = 0.0, b: float = 1.0):
    """Ascending composite Gauss–Legendre nodes and weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(cfg.quadrature_order)
    edges = np.linspace(a, b, cfg.quadrature_panels + 1)
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        nodes.append(lo + half * (x + 1.0))
        weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)


def quadrature(f: Callable[[float], np.ndarray], cfg: SolverConfig, a: float = 0.0, b: float = 1.0) -> np.ndarray:
    """∫_a^b f(t) dt for vector-valued f; nodes are visited in ascending order."""
    nodes, weights = quadrature_nodes(cfg, a, b)
    total = None
    for t, w in zip(nodes, weights):
        value = np.asarray(f(float(t)), dtype=float)
        if not np.all(np.isfinite(value)):
            raise ChartExitError(f"non-finite integrand at t={t:.6g}")
        total = w * value if total is None else total + w * value
    return total


# --- Product decomposition ---
def _factors(generators, z):
    return [mat_exp(c * G) for c, G in zip(z, generators)]


def _product(factors, dim):
    P = np.eye(dim)
    for F in factors:
        P = F @ P
    return P


def _jacobian(generators, factors, dim):
    """Column a = vec(L_a·G_a·F_a·R_a) for the descending product F_N···F_1."""
    count = len(factors)
    suffix = [np.eye(dim)]
    for F in factors[:-1]:
        suffix.append(F @ suffix[-1])
    prefix = [np.eye(dim)] * count
    for a in range(count - 2, -1, -1):
        prefix[a] = prefix[a + 1] @ factors[a + 1]
    cols = [(prefix[a] @ generators[a] @ factors[a] @ suffix[a]).ravel() for a in range(count)]
    return np.column_stack(cols)


def product_residual(M, generators: Sequence, z) -> float:
    """‖Π exp(z^a G_a) − M‖_F with the product in descending order."""
    M = np.asarray(M, dtype=float)
    return float(np.linalg.norm(_product(_factors(generators, z), M.shape[0]) - M))


def _gauss_newton(M, generators, z0, cfg: SolverConfig):
    """Returns (z, residual, converged). Backtracking on the residual norm."""
    dim = M.shape[0]
    target = cfg.residual_tol * max(1.0, np.linalg.norm(M))
    z = np.array(z0, dtype=float)
    factors = _factors(generators, z)
    r = _product(factors, dim) - M
    res = np.linalg.norm(r)
    for it in range(cfg.max_iter):
        if res <= target:
            return z, res, True
        J = _jacobian(generators, factors, dim)
        step = np.linalg.lstsq(J, -r.ravel(), rcond=None)[0]
        alpha = 1.0
        while True:
            trial = z + alpha * step
            trial_factors = _factors(generators, trial)
            trial_r = _product(trial_factors, dim) - M
            trial_res = np.linalg.norm(trial_r)
            if np.isfinite(trial_res) and trial_res < res:
                break
            alpha *= 0.5
            if alpha < MIN_LINE_STEP:
                log.debug("Gauss-Newton stalled at iteration %d, residual %.3e", it, res)
                return z, res, res <= target
        z, factors, r, res = trial, trial_factors, trial_r, trial_res
        log.debug("Gauss-Newton iteration %d: residual %.3e (step %.3g)", it, res, alpha)
    return z, res, res <= target


def decompose_product(M, generators: Sequence, cfg: SolverConfig, initial_guess,
                      path: Optional[Callable[[float], np.ndarray]] = None,
                      path_start=None) -> np.ndarray:
    """Finds z with exp(z^N G_N)···exp(z^1 G_1) = M.

    Gauss–Newton least squares over all matrix entries, started from initial_guess.
    On failure the target is approached through homotopy_steps intermediate targets
    path(s), s ∈ (0, 1], warm-starting each solve; path(0) must be solved by path_start.
    Without a path the targets interpolate linearly from the product at initial_guess to M.
    """
    M = as_square(M, "target")
    generators = [as_square(G, "generator") for G in generators]
    for G in generators:
        if G.shape != M.shape:
            raise InvalidInputError(f"generator shape {G.shape} does not match target {M.shape}")
    guess = as_vector(initial_guess, len(generators), "initial guess")
    dim = M.shape[0]

    if not generators:
        res = np.linalg.norm(np.eye(dim) - M)
        if res > cfg.residual_tol * max(1.0, np.linalg.norm(M)):
            raise DecompositionError(f"empty product cannot match target (residual {res:.3e})")
        return guess

    z, res, ok = _gauss_newton(M, generators, guess, cfg)
    if not ok:
        log.info("Direct decomposition failed (residual %.3e); retrying with homotopy", res)
        if path is None:
            start_matrix = _product(_factors(generators, guess), dim)
            path = lambda s: (1.0 - s) * start_matrix + s * M
            path_start = guess
        z = guess if path_start is None else as_vector(path_start, len(generators), "path start")
        for k in range(1, cfg.homotopy_steps + 1):
            s = k / cfg.homotopy_steps
            z, res, ok = _gauss_newton(path(s) if k < cfg.homotopy_steps else M, generators, z, cfg)
        if not ok:
            raise DecompositionError(f"product decomposition did not converge (residual {res:.3e})")

    J = _jacobian(generators, _factors(generators, z), dim)
    ratio = smallest_singular_ratio(J)
    if ratio < RANK_RCOND:
        raise AmbiguityError(f"decomposition Jacobian is rank deficient (σmin/σmax = {ratio:.3e})")
    return z


class DecompositionTrack:
    """Solves decompose_product along a family of targets, warm-starting each solve.

    target_at maps a parameter (scalar or vector) to a matrix; the homotopy between
    consecutive solves interpolates the parameter linearly.
    """

    def __init__(self, target_at: Callable, generators: Sequence, cfg: SolverConfig, start, solution):
        self.target_at = target_at
        self.generators = list(generators)
        self.cfg = cfg
        self.param = np.array(start, dtype=float)
        self.z = np.array(solution, dtype=float)

    def solve(self, param) -> np.ndarray:
        previous = self.param
        param = np.array(param, dtype=float)
        path = lambda s: self.target_at(previous + s * (param - previous))
        self.z = decompose_product(self.target_at(param), self.generators, self.cfg, self.z,
                                   path=path, path_start=self.z)
        self.param = param
        return self.z
